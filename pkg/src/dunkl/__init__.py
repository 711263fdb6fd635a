"""Dunkl and Hankel transforms on the real line, at desk scale.

Direct-quadrature transforms, spherical partial sums, discretized maximal
operators, and the weighted-measure / Lorentz-norm machinery needed to probe
their boundedness and almost-everywhere convergence numerically.
"""

from .funcspace import (
    LorentzIndex,
    SampledFunction,
    WeightedMeasure,
    ap_power_weight_check,
    endpoint_exponents,
    even_odd_split,
    halfline_grid,
    lorentz_norm,
    lp_norm,
    measure_of_sublevel,
    rearrangement,
    read_sampled_csv,
    sample_function,
    symmetric_grid,
    write_sampled_csv,
)
from .quadrature import (
    HalfLineResult,
    IntegrandEvaluationError,
    QuadratureRule,
    integrate_finite,
    integrate_halfline,
)
from .specfun import Order, as_order, bessel_j, dunkl_kernel, gamma, normalized_bessel
from .summation import (
    RadiusGrid,
    decomposed_partial_sum,
    decomposition_spectra,
    dunkl_partial_sum,
    hankel_maximal,
    hankel_partial_sum,
    hankel_partial_sums_at_radii,
    maximal_operator,
)
from .transforms import (
    Spectrum,
    dunkl_transform,
    dunkl_via_hankel,
    hankel_transform,
    inverse_dunkl,
    read_spectrum_csv,
    write_spectrum_csv,
)

__all__ = [
    "Order",
    "as_order",
    "gamma",
    "bessel_j",
    "normalized_bessel",
    "dunkl_kernel",
    "QuadratureRule",
    "HalfLineResult",
    "IntegrandEvaluationError",
    "integrate_finite",
    "integrate_halfline",
    "WeightedMeasure",
    "LorentzIndex",
    "SampledFunction",
    "symmetric_grid",
    "halfline_grid",
    "sample_function",
    "measure_of_sublevel",
    "rearrangement",
    "lp_norm",
    "lorentz_norm",
    "even_odd_split",
    "endpoint_exponents",
    "ap_power_weight_check",
    "write_sampled_csv",
    "read_sampled_csv",
    "Spectrum",
    "hankel_transform",
    "dunkl_transform",
    "dunkl_via_hankel",
    "inverse_dunkl",
    "write_spectrum_csv",
    "read_spectrum_csv",
    "RadiusGrid",
    "decomposition_spectra",
    "hankel_partial_sum",
    "hankel_partial_sums_at_radii",
    "hankel_maximal",
    "dunkl_partial_sum",
    "decomposed_partial_sum",
    "maximal_operator",
]

__version__ = "0.1.0"
