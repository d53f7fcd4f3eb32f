"""Exact-arithmetic toolkit for Lie algebras with abelian complex structures."""
from acslie._kernel import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
