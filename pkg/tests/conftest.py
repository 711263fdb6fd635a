import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dunkl import QuadratureRule, sample_function, symmetric_grid
from dunkl.experiments import BATTERY
from dunkl.summation import decomposition_spectra
from dunkl.transforms import dunkl_transform


@pytest.fixture(scope="session")
def rule():
    return QuadratureRule()


@pytest.fixture(scope="session")
def battery_sampled():
    grid = symmetric_grid(1024, 12.0)
    return {name: sample_function(fn, grid) for name, fn in BATTERY.items()}


@pytest.fixture(scope="session")
def spectra_cache(battery_sampled, rule):
    """Even/odd Hankel spectra per (function, alpha), computed once."""
    cache = {}

    def get(name, alpha, fmax=16.0, n=1025):
        key = (name, alpha, fmax, n)
        if key not in cache:
            cache[key] = decomposition_spectra(
                alpha, battery_sampled[name], fmax=fmax, n=n, rule=QuadratureRule()
            )
        return cache[key]

    return get


@pytest.fixture(scope="session")
def dunkl_spectrum_cache(battery_sampled, rule):
    """Symmetric direct-route Dunkl spectra per (function, alpha)."""
    cache = {}

    def get(name, alpha, fmax=8.2, n=2047):
        key = (name, alpha, fmax, n)
        if key not in cache:
            freqs = np.linspace(-fmax, fmax, n)
            cache[key] = dunkl_transform(alpha, battery_sampled[name], freqs, rule)
        return cache[key]

    return get
