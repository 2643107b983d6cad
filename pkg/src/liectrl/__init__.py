"""Lie-algebraic controllability analysis of bilinear quantum control systems."""

from .bilinear_form import FormClassification, classify_form, local_parity_check
from .catalog import AlgebraId, IrrepRecord, build_lattice, enumerate_irreps, irrep_dimension, weyl_dimension
from .closure import AlgebraBasis, lie_closure, span_contains
from .decide import ModelSpec, Verdict, assess, check_simulates, make_model, pure_state_note
from .fermion import MajoranaOp, QuadraticSpec, hubbard_spinful, hubbard_spinless, jordan_wigner, quadratic_to_pauli
from .graph import coupling_graph, is_connected_general, is_directly_connected, is_weakly_connected
from .matrep import NumericalInconsistency, ResourceCapError
from .pauli import PauliExpr, PauliTerm, bracket, parse_expr
from .symmetry import centraliser, tensor_square_commutant_dim
from .system import ControlSystem, TensorStructure

__all__ = [
    "AlgebraBasis",
    "AlgebraId",
    "ControlSystem",
    "FormClassification",
    "IrrepRecord",
    "MajoranaOp",
    "ModelSpec",
    "NumericalInconsistency",
    "PauliExpr",
    "PauliTerm",
    "QuadraticSpec",
    "ResourceCapError",
    "TensorStructure",
    "Verdict",
    "assess",
    "bracket",
    "build_lattice",
    "centraliser",
    "check_simulates",
    "classify_form",
    "coupling_graph",
    "enumerate_irreps",
    "hubbard_spinful",
    "hubbard_spinless",
    "irrep_dimension",
    "is_connected_general",
    "is_directly_connected",
    "is_weakly_connected",
    "jordan_wigner",
    "lie_closure",
    "local_parity_check",
    "make_model",
    "parse_expr",
    "pure_state_note",
    "quadratic_to_pauli",
    "span_contains",
    "tensor_square_commutant_dim",
    "weyl_dimension",
]
