"""Exact homological algebra for partial actions of group Hopf algebras."""
from .linalg import F2, F3, QQ, FieldSpec, SparseMat

__version__ = "0.1.0"

__all__ = ["FieldSpec", "QQ", "F2", "F3", "SparseMat", "__version__"]
