"""Symmetric functions in noncommuting variables and the chromatic function Y_G."""
from .algebra import (
    Basis,
    CExpr,
    EClassExpr,
    NCExpr,
    UniPoly,
    act,
    amalgamate,
    basis_element,
    commutative_image,
    disjoint_product,
    e,
    expand_words,
    induce,
    induce_at,
    m,
    p,
    specialize_ones,
    to_basis,
)
from .config import GuardExceeded, use_guards
from .graphs import Graph
from .lattice import Perm, SetPartition

__version__ = "0.1.0"
