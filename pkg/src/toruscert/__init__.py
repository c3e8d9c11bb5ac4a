"""Certificates for non-projective complex tori and torus realizations
of even-rank abelian-group homomorphisms."""

from .exact import (
    FgAbelianGroup,
    IntMatrix,
    IntPolynomial,
    SNFDecomposition,
    charpoly,
    companion,
    rank,
    snf,
)

__all__ = [
    "FgAbelianGroup",
    "IntMatrix",
    "IntPolynomial",
    "SNFDecomposition",
    "charpoly",
    "companion",
    "rank",
    "snf",
]

__version__ = "0.1.0"
