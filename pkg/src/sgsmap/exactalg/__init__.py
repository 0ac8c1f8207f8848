"""Exact linear algebra over Z and Z/2."""

from .matrix import IntMatrix, Ring, determinant
from .modules import ChainConditionError, FGModule, HomologyGroup, cokernel_presentation, homology_of_pair
from .snf import NotUnimodularError, SNFDecomposition, rank, smith_normal_form, unimodular_inverse

__all__ = [
    "ChainConditionError",
    "FGModule",
    "HomologyGroup",
    "IntMatrix",
    "Ring",
    "SNFDecomposition",
    "cokernel_presentation",
    "determinant",
    "homology_of_pair",
    "rank",
    "smith_normal_form",
    "unimodular_inverse",
    "NotUnimodularError",
]
