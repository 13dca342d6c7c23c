"""Special functions: gamma, erf, Kummer 1F1, Hermite, Bessel-type."""

from ._elementary import SeriesControl, cospi, erf, erfc, gamma, hermite_h, rgamma, sinpi
from .bessel import (
    BESSEL_CONTROL,
    bessel_i,
    bessel_j,
    bessel_j_complex_order,
    bessel_k,
    bessel_y,
    derivative,
    hankel1,
    hankel2,
)
from .kummer import DEFAULT_CONTROL, kummer_1f1, kummer_1f1_scaled, kummer_asymptotic, kummer_series

__all__ = [
    "SeriesControl", "DEFAULT_CONTROL", "BESSEL_CONTROL",
    "gamma", "rgamma", "erf", "erfc", "sinpi", "cospi", "hermite_h",
    "kummer_1f1", "kummer_1f1_scaled", "kummer_series", "kummer_asymptotic",
    "bessel_i", "bessel_k", "bessel_j", "bessel_y", "hankel1", "hankel2",
    "derivative", "bessel_j_complex_order",
]
