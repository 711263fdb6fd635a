"""Spherical partial sums of the inverse transforms and their maximal operators.

For a Hankel spectrum G = H_beta g the partial sum is

    s_R g(x) = int_0^R G(y) J_beta(xy)/(xy)^beta y^(2 beta + 1) dy,

and for a Dunkl spectrum F = D_alpha f

    S_R f(x) = c_alpha int_{|y| <= R} F(y) E_alpha(i x y) |y|^(2 alpha + 1) dy.

The two are tied together by the decomposition

    S_R f(x) = s_R^alpha(f_e)(|x|) + x s_R^{alpha+1}(f_o(r)/r)(|x|),

whose two sides are computed by independent quadrature routes here and serve
as each other's oracle.  The maximal operator takes the max of |S_R| over a
fixed radius grid, a documented lower estimate of the continuous supremum;
it is built from the decomposition so the triangle-inequality bound against
the two half-line maximal functions holds to roundoff on a shared grid.

Spectra are interpolated between their nodes; partial sums over many radii
share work through cumulative prefix integrals, reduced in ascending radius
order so runs are bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .funcspace import SampledFunction, even_odd_split
from .quadrature import QuadratureRule, integrate_finite, integrate_segments
from .specfun import as_order, dunkl_kernel, normalized_bessel
from .transforms import Spectrum, hankel_transform, measure_constant

__all__ = [
    "RadiusGrid",
    "decomposition_spectra",
    "hankel_partial_sum",
    "hankel_partial_sums_at_radii",
    "hankel_maximal",
    "dunkl_partial_sum",
    "decomposed_partial_sum",
    "maximal_operator",
]

_COVERAGE_SLACK = 1e-9


@dataclass(frozen=True, eq=False)
class RadiusGrid:
    """Strictly increasing positive truncation radii discretizing sup_{R>0}."""

    radii: np.ndarray

    def __post_init__(self):
        radii = np.asarray(self.radii, dtype=float)
        if radii.ndim != 1 or radii.size == 0:
            raise ValueError("radii must be a nonempty 1-D array")
        if radii[0] <= 0.0 or not np.all(np.diff(radii) > 0.0):
            raise ValueError("radii must be positive and strictly increasing")
        object.__setattr__(self, "radii", radii)

    @classmethod
    def default(cls, rmin: float = 0.25, rmax: float = 64.0, n_log: int = 64, n_lin: int = 64) -> "RadiusGrid":
        """Merged log/linear grid; the density is a config knob, not a result."""
        log = np.geomspace(rmin, rmax, n_log)
        lin = np.linspace(rmin, rmax, n_lin)
        return cls(np.unique(np.concatenate([log, lin])))

    @property
    def rmax(self) -> float:
        return float(self.radii[-1])


def _check_coverage(spec: Spectrum, rmax: float) -> None:
    if rmax > spec.fmax + _COVERAGE_SLACK:
        raise ValueError(
            f"radius {rmax} exceeds the spectrum's frequency coverage [{spec.fmin}, {spec.fmax}]"
        )
    if spec.fmin > _COVERAGE_SLACK:
        raise ValueError("partial sums need a spectrum sampled from frequency 0")


def hankel_partial_sums_at_radii(beta, spec: Spectrum, radii, x: float, rule: QuadratureRule) -> np.ndarray:
    """Cumulative partial sums int_0^{R_k} for every radius in ascending order."""
    b = as_order(beta).value
    radii = np.asarray(radii, dtype=float)
    _check_coverage(spec, float(radii[-1]))
    x = float(x)
    if x <= 0.0:
        raise ValueError("hankel partial sums are evaluated at x > 0")
    w = 2.0 * b + 1.0
    r = rule.with_hint(x)

    def integrand(y):
        return spec(y) * normalized_bessel(b, x * y) * y**w

    bounds = np.concatenate([[0.0], radii])
    return np.cumsum(integrate_segments(integrand, bounds, r))


def hankel_partial_sum(beta, spec: Spectrum, R: float, x: float, rule: QuadratureRule = QuadratureRule()) -> complex:
    """Partial Hankel inversion s_R g(x) truncated at frequency R."""
    if R <= 0.0:
        raise ValueError("R must be > 0")
    return complex(hankel_partial_sums_at_radii(beta, spec, [float(R)], x, rule)[0])


def hankel_maximal(beta, spec: Spectrum, x: float, radii: RadiusGrid, rule: QuadratureRule = QuadratureRule()) -> float:
    """Discretized maximal function: max over the radius grid of |s_R g(x)|."""
    sums = hankel_partial_sums_at_radii(beta, spec, radii.radii, x, rule)
    return float(np.max(np.abs(sums)))


def dunkl_partial_sum(alpha, spec: Spectrum, R: float, x: float, rule: QuadratureRule = QuadratureRule()) -> complex:
    """Partial Dunkl inversion S_R f(x) from a symmetric spectrum."""
    a = as_order(alpha).value
    R = float(R)
    if R <= 0.0:
        raise ValueError("R must be > 0")
    if -R < spec.fmin - _COVERAGE_SLACK or R > spec.fmax + _COVERAGE_SLACK:
        raise ValueError(
            f"radius {R} exceeds the spectrum's frequency coverage [{spec.fmin}, {spec.fmax}]"
        )
    c = measure_constant(a)
    w = 2.0 * a + 1.0
    x = float(x)
    r = rule.with_hint(x)

    def integrand(y):
        return spec(y) * dunkl_kernel(a, x * y) * np.abs(y) ** w

    return complex(
        c * (integrate_finite(integrand, -R, 0.0, r) + integrate_finite(integrand, 0.0, R, r))
    )


def decomposition_spectra(alpha, f: SampledFunction, fmax: float, n: int = 1025,
                          rule: QuadratureRule = QuadratureRule()) -> tuple[Spectrum, Spectrum]:
    """Hankel spectra of the even part and the odd quotient, on [0, fmax].

    These feed the decomposed partial sums; computing them once and passing
    them around avoids re-transforming f for every (x, R) pair.
    """
    a = as_order(alpha).value
    fe, fo = even_odd_split(f)
    quot = SampledFunction(fo.grid, fo.values / fo.grid)
    freqs = np.linspace(0.0, float(fmax), int(n))
    return (
        hankel_transform(a, fe, freqs, rule),
        hankel_transform(a + 1.0, quot, freqs, rule),
    )


def _decomposed_prefix(alpha, spectra, radii, x: float, rule: QuadratureRule) -> np.ndarray:
    a = as_order(alpha).value
    he, ho = spectra
    ax = abs(float(x))
    even = hankel_partial_sums_at_radii(a, he, radii, ax, rule)
    odd = hankel_partial_sums_at_radii(a + 1.0, ho, radii, ax, rule)
    return even + x * odd


def decomposed_partial_sum(alpha, f: SampledFunction, R: float, x: float,
                           rule: QuadratureRule = QuadratureRule(), spectra=None) -> complex:
    """S_R f(x) assembled from the even/odd Hankel partial sums.

    Equals s_R^alpha(f_e)(|x|) + x s_R^{alpha+1}(f_o(r)/r)(|x|); with
    precomputed `spectra` (from :func:`decomposition_spectra`) this is the
    cheap route to partial sums at many (x, R) pairs.
    """
    if float(x) == 0.0:
        raise ValueError("partial sums are evaluated away from x = 0")
    if spectra is None:
        spectra = decomposition_spectra(alpha, f, fmax=float(R), rule=rule)
    return complex(_decomposed_prefix(alpha, spectra, [float(R)], float(x), rule)[0])


def maximal_operator(alpha, f: SampledFunction, x: float, radii: RadiusGrid,
                     rule: QuadratureRule = QuadratureRule(), spectra=None) -> float:
    """Discretized maximal operator: max over the radius grid of |S_R f(x)|.

    A lower estimate of the continuous supremum; refine the radius grid to
    tighten it.  Uses the decomposition route, so the bound by the two
    half-line maximal functions on the same grid holds to roundoff.
    """
    if float(x) == 0.0:
        raise ValueError("the maximal operator is evaluated away from x = 0")
    if spectra is None:
        spectra = decomposition_spectra(alpha, f, fmax=radii.rmax, rule=rule)
    sums = _decomposed_prefix(alpha, spectra, radii.radii, float(x), rule)
    return float(np.max(np.abs(sums)))
