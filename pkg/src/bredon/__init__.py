"""Representation-graded Bredon homology rings of elementary abelian 2-groups.

The package models the mod-2 ring H(A, *) of the group A = C^r as a quotient of
the polynomial ring on pre-Euler classes a_l and inverse Thom classes t_l, and
computes its graded pieces two ways: by degreewise GF(2) linear algebra on the
presentation, and by an independent recursion over index-2 subgroups.
"""

__version__ = "0.1.0"

from bredon.errors import DimensionMismatchError, InvalidInputError, ResourceError

__all__ = [
    "DimensionMismatchError",
    "InvalidInputError",
    "ResourceError",
    "__version__",
]
