"""The Omega constant, Lambert W, the Artin-Hasse exponential and p-adic Omega.

Real values come back as certified balls, series coefficients as exact
rationals, p-adic values as residues with explicit precision.
"""

__version__ = "0.1.0"

from .ball import Ball, to_decimal
from .omega_real import OmegaResult, omega_iterate, omega_newton
from .padic import PadicInt
from .powser import TruncSeries

__all__ = [
    "Ball",
    "OmegaResult",
    "PadicInt",
    "TruncSeries",
    "omega_iterate",
    "omega_newton",
    "to_decimal",
    "__version__",
]
