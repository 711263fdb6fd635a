import math

import numpy as np
import pytest

from dunkl import (
    Order,
    QuadratureRule,
    RadiusGrid,
    Spectrum,
    decomposed_partial_sum,
    dunkl_partial_sum,
    hankel_maximal,
    hankel_partial_sum,
    hankel_partial_sums_at_radii,
    hankel_transform,
    maximal_operator,
    sample_function,
    symmetric_grid,
)
from dunkl.funcspace import halfline_grid

from oracles import dirichlet_partial_sum_oracle

RULE = QuadratureRule()


def test_radius_grid_default():
    rg = RadiusGrid.default()
    assert rg.radii[0] == pytest.approx(0.25)
    assert rg.rmax == pytest.approx(64.0)
    assert np.all(np.diff(rg.radii) > 0)
    with pytest.raises(ValueError):
        RadiusGrid(np.array([1.0, 1.0]))
    with pytest.raises(ValueError):
        RadiusGrid(np.array([-1.0, 2.0]))


def test_zero_spectrum_partial_sums():
    freqs = np.linspace(0.0, 8.0, 65)
    spec = Spectrum(freqs, np.zeros(65, dtype=complex), Order(0.0))
    assert hankel_partial_sum(0.0, spec, 4.0, 1.0, RULE) == 0.0
    sym = Spectrum(np.linspace(-8.0, 8.0, 129), np.zeros(129, dtype=complex), Order(0.0))
    assert dunkl_partial_sum(0.0, sym, 4.0, 1.0, RULE) == 0.0


def test_hankel_partial_sum_gaussian_inversion():
    g = sample_function(lambda x: np.exp(-(x**2) / 2.0), halfline_grid(1024, 12.0))
    spec = hankel_transform(0.0, g, np.linspace(0.0, 10.0, 641), RULE)
    val = hankel_partial_sum(0.0, spec, 10.0, 1.0, RULE)
    assert abs(val - math.exp(-0.5)) < 1e-5


def test_hankel_partial_sum_classical_cosine_case():
    # at order -1/2 the partial sum is the classical cosine-transform
    # partial integral; for the gaussian it recovers g(1) quickly
    g = sample_function(lambda x: np.exp(-(x**2) / 2.0), halfline_grid(1024, 12.0))
    spec = hankel_transform(-0.5, g, np.linspace(0.0, 8.0, 513), RULE)
    val = hankel_partial_sum(-0.5, spec, 8.0, 1.0, RULE)
    assert abs(val - math.exp(-0.5)) < 1e-4


def test_partial_sum_coverage_error():
    freqs = np.linspace(0.0, 4.0, 33)
    spec = Spectrum(freqs, np.exp(-freqs), Order(0.0))
    with pytest.raises(ValueError):
        hankel_partial_sum(0.0, spec, 5.0, 1.0, RULE)
    sym = Spectrum(np.linspace(-4.0, 4.0, 65), np.zeros(65, complex), Order(0.0))
    with pytest.raises(ValueError):
        dunkl_partial_sum(0.0, sym, 4.5, 1.0, RULE)


def test_dunkl_partial_sum_gaussian():
    from dunkl import dunkl_transform

    f = sample_function(lambda x: np.exp(-(x**2) / 2.0), symmetric_grid(1024, 12.0))
    spec = dunkl_transform(0.5, f, np.linspace(-10.0, 10.0, 1281), RULE)
    val = dunkl_partial_sum(0.5, spec, 10.0, 0.8, RULE)
    assert abs(val - math.exp(-0.32)) < 1e-5


def test_dunkl_partial_sum_matches_classical_dirichlet(battery_sampled, dunkl_spectrum_cache):
    fn = battery_sampled["shifted_gaussian"]
    spec = dunkl_spectrum_cache("shifted_gaussian", -0.5)
    xs = symmetric_grid(8, 2.0)
    for R in (2.0, 8.0):
        ours = np.array([dunkl_partial_sum(-0.5, spec, R, x, RULE) for x in xs])
        oracle = dirichlet_partial_sum_oracle(lambda t: np.exp(-((t - 1.0) ** 2)), R, xs)
        assert np.max(np.abs(ours - oracle)) < 1e-6


@pytest.mark.parametrize("alpha", [0.0, 1.3])
@pytest.mark.parametrize("name", ["gaussian", "odd_gaussian", "shifted_gaussian", "cosine_gaussian"])
def test_decomposition_identity_for_partial_sums(alpha, name, battery_sampled,
                                                 spectra_cache, dunkl_spectrum_cache):
    f = battery_sampled[name]
    sym = dunkl_spectrum_cache(name, alpha)
    spectra = spectra_cache(name, alpha)
    xs = symmetric_grid(8, 3.0)
    for R in (2.0, 8.0):
        for x in xs:
            direct = dunkl_partial_sum(alpha, sym, R, x, RULE)
            decomposed = decomposed_partial_sum(alpha, f, R, x, RULE, spectra=spectra)
            assert abs(direct - decomposed) < 1e-6


def test_decomposed_even_function_has_no_odd_term(battery_sampled, spectra_cache):
    f = battery_sampled["gaussian"]
    he, ho = spectra_cache("gaussian", 0.5)
    assert np.max(np.abs(ho.values)) < 1e-12
    s_pos = decomposed_partial_sum(0.5, f, 4.0, 1.2, RULE, spectra=(he, ho))
    s_neg = decomposed_partial_sum(0.5, f, 4.0, -1.2, RULE, spectra=(he, ho))
    assert s_pos == pytest.approx(s_neg, abs=1e-12)


def test_sign_flip_flips_only_odd_term(battery_sampled, spectra_cache):
    f = battery_sampled["shifted_gaussian"]
    spectra = spectra_cache("shifted_gaussian", 1.3)
    x = 1.7
    he, ho = spectra
    even = hankel_partial_sums_at_radii(1.3, he, [4.0], x, RULE)[0]
    odd = hankel_partial_sums_at_radii(2.3, ho, [4.0], x, RULE)[0]
    plus = decomposed_partial_sum(1.3, f, 4.0, x, RULE, spectra=spectra)
    minus = decomposed_partial_sum(1.3, f, 4.0, -x, RULE, spectra=spectra)
    assert plus == pytest.approx(even + x * odd, abs=1e-12)
    assert minus == pytest.approx(even - x * odd, abs=1e-12)


def test_partial_sum_rejects_origin(battery_sampled, spectra_cache):
    with pytest.raises(ValueError):
        decomposed_partial_sum(0.0, battery_sampled["gaussian"], 2.0, 0.0, RULE,
                               spectra=spectra_cache("gaussian", 0.0))


def test_maximal_zero_function():
    grid = symmetric_grid(64, 6.0)
    zero = sample_function(lambda x: np.zeros_like(x), grid)
    radii = RadiusGrid.default(0.25, 4.0, 16, 16)
    assert maximal_operator(0.0, zero, 1.0, radii, RULE) == 0.0


def test_maximal_dominates_every_radius(battery_sampled, spectra_cache):
    f = battery_sampled["cosine_gaussian"]
    spectra = spectra_cache("cosine_gaussian", 0.0)
    radii = RadiusGrid.default(0.25, 16.0, 32, 32)
    x = 0.9
    sup = maximal_operator(0.0, f, x, radii, RULE, spectra=spectra)
    for R in (0.25, 1.0, 5.5, 16.0):
        assert sup >= abs(decomposed_partial_sum(0.0, f, R, x, RULE, spectra=spectra)) - 1e-12


def test_monotone_exhaustion(battery_sampled, spectra_cache):
    f = battery_sampled["shifted_gaussian"]
    he, ho = spectra_cache("shifted_gaussian", 0.0)
    radii = RadiusGrid.default(0.25, 16.0, 32, 32)
    x = 1.3
    even = hankel_partial_sums_at_radii(0.0, he, radii.radii, x, RULE)
    odd = hankel_partial_sums_at_radii(1.0, ho, radii.radii, x, RULE)
    running = np.maximum.accumulate(np.abs(even + x * odd))
    assert np.all(np.diff(running) >= 0.0)


@pytest.mark.parametrize("alpha", [0.0, 1.3])
@pytest.mark.parametrize("name", ["gaussian", "odd_gaussian", "shifted_gaussian", "cosine_gaussian"])
def test_maximal_bounded_by_halfline_maximals(alpha, name, battery_sampled, spectra_cache):
    f = battery_sampled[name]
    spectra = spectra_cache(name, alpha)
    he, ho = spectra
    radii = RadiusGrid.default(0.25, 8.0, 64, 64)
    for x in (-2.4, 0.7, 1.9):
        lhs = maximal_operator(alpha, f, x, radii, RULE, spectra=spectra)
        rhs = hankel_maximal(alpha, he, abs(x), radii, RULE) + abs(x) * hankel_maximal(
            alpha + 1.0, ho, abs(x), radii, RULE
        )
        assert lhs <= rhs + 1e-9


def test_classical_reduction_of_maximal_operator(battery_sampled, spectra_cache):
    # at alpha = -1/2 the maximal operator over a shared radius grid must
    # match the running max of the classical Dirichlet partial integrals
    name = "shifted_gaussian"
    f = battery_sampled[name]
    spectra = spectra_cache(name, -0.5)
    radii = RadiusGrid(np.linspace(0.5, 8.0, 16))
    for x in (0.7, -1.9):
        ours = maximal_operator(-0.5, f, x, radii, RULE, spectra=spectra)
        classical = max(
            abs(dirichlet_partial_sum_oracle(lambda t: np.exp(-((t - 1.0) ** 2)), R, [x])[0])
            for R in radii.radii
        )
        assert ours == pytest.approx(classical, abs=1e-6)


@pytest.mark.parametrize("name", ["gaussian", "cosine_gaussian"])
def test_convergence_of_partial_sums(name, battery_sampled, spectra_cache):
    f = battery_sampled[name]
    spectra = spectra_cache(name, 1.3)
    he, ho = spectra
    xs = symmetric_grid(16, 3.0)
    sups = []
    for R in (2.0, 4.0, 8.0, 16.0):
        errs = [
            abs(decomposed_partial_sum(1.3, f, R, x, RULE, spectra=spectra) - f(x))
            for x in xs
        ]
        sups.append(max(errs))
    assert sups[-1] < 1e-3
    assert all(b < a for a, b in zip(sups, sups[1:]))
