"""Exact Clifford-algebra tools for Pin groups, discrete symmetries and pinor fields."""

from .exact_core import ExactMatrix, GaussScalar
from .clifford_builder import GammaRep, Signature, base_rep, build_rep, classify

__version__ = "0.1.0"

__all__ = ["ExactMatrix", "GaussScalar", "GammaRep", "Signature", "base_rep", "build_rep", "classify", "__version__"]
