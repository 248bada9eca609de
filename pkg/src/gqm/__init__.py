"""Galois field quantum mechanics over GF(q) and its q = 1 limit over F1."""

__version__ = "0.1.0"

from .gf import FieldCtx, FieldElement, enumerate_elements, field_new, field_of_order
from .qcount import gaussian_binomial, q_factorial, q_int, subspace_count
from .projective import DualVector, ProjVector, bra, bracket, canonicalize, enumerate_points, ket
from .measurement import Observable, abs_map, expectation, probability, spin_observable
from .composite import chsh_max, chsh_value, singlet, table1, tensor_ket
from .lhv import JointTable, Scenario, lhv_feasible

__all__ = [
    "FieldCtx", "FieldElement", "enumerate_elements", "field_new", "field_of_order",
    "gaussian_binomial", "q_factorial", "q_int", "subspace_count",
    "DualVector", "ProjVector", "bra", "bracket", "canonicalize", "enumerate_points", "ket",
    "Observable", "abs_map", "expectation", "probability", "spin_observable",
    "chsh_max", "chsh_value", "singlet", "table1", "tensor_ket",
    "JointTable", "Scenario", "lhv_feasible",
]
