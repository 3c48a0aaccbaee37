"""Exact construction of vector-valued Siegel modular forms of degree two
from covariants of binary sextics."""

from .fseries2 import FSeries2, NonDivisible, PrecisionError
from .siegel import SiegelForm, construct_named, mu
from .theta2 import base_form

__all__ = ["FSeries2", "NonDivisible", "PrecisionError", "SiegelForm", "base_form", "construct_named", "mu"]
__version__ = "0.1.0"
