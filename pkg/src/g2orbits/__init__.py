"""Split octonions, their automorphism group G2, and canonical forms of
G2-orbits of one and two octonions."""

from .field import GF, QQ, Field, FieldElement, NoRootInField, FieldMismatch
from .octonion import Octonion, multiply, conjugate, trace, norm, bilinear_form
from .g2 import G2Element, apply, apply_pair, compose, delta1, delta2, elementary, hbar, sl3
from .canon import (
    Reduction, canonical_one, canonical_pair, canonical_traceless_pair, classify_type,
    reduce_second_given_K1, reduce_vector,
)
from .oracle import orbit_bfs, orbit_partition, same_orbit

__all__ = [
    "GF", "QQ", "Field", "FieldElement", "NoRootInField", "FieldMismatch",
    "Octonion", "multiply", "conjugate", "trace", "norm", "bilinear_form",
    "G2Element", "apply", "apply_pair", "compose", "delta1", "delta2", "elementary", "hbar", "sl3",
    "Reduction", "canonical_one", "canonical_pair", "canonical_traceless_pair", "classify_type",
    "reduce_second_given_K1", "reduce_vector",
    "orbit_bfs", "orbit_partition", "same_orbit",
]
