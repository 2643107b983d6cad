"""Controllability pipeline, algebra identification and simulability.

``assess`` runs the cheap necessary conditions first (trivial centraliser,
connectivity, no invariant bilinear form) and only then the optional
expensive checks (tensor-square commutant, Lie closure).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import catalog
from .bilinear_form import NOFORM, ORTHOGONAL, SYMPLECTIC, FormClassification, classify_form
from .catalog import IrrepRecord
from .closure import AlgebraBasis, lie_closure, span_contains
from .graph import GraphError, coupling_graph, is_connected_graph, weak_connectivity
from .matrep import DEFAULT_TOL, KRON_CAP
from .pauli import PauliExpr, local_term
from .symmetry import centraliser, tensor_square_commutant_dim
from .system import ControlSystem, TensorStructure

MODEL_FAMILIES = (
    "xx-one-end",
    "xx-two-ends",
    "xx-second-site",
    "xx-first-two-sites",
    "ising-antisym",
    "ising-collective",
    "example-counter1",
    "example-counter2",
    "example-ex1",
    "appendixA-zzz",
)
_FIXED_SIZE = {"example-counter1": 4, "example-counter2": 3, "example-ex1": 2, "appendixA-zzz": 3}

PROVED = "proved-by-closure"
CONSISTENT = "consistent-by-dim-and-type"

# closure and tensor-square run automatically only on small registers
AUTO_CLOSURE_QUBITS = 4
AUTO_TENSOR_SQUARE_QUBITS = 3
MAX_CLOSURE_QUBITS = 6

# numbering of the necessary conditions in reports
COND_CENTRALISER, COND_CONNECTED, COND_FORM, COND_CATALOG = 1, 2, 3, 4

_KIND_TO_MALCEV = {ORTHOGONAL: "o", SYMPLECTIC: "s", NOFORM: "u"}


# ------------------------------------------------------------------ models


@dataclass(frozen=True)
class ModelSpec:
    """A named model family; ``size`` is n for the XX chains and k (n = 2k+1) for the Ising chains."""

    family: str
    size: int | None = None

    def __post_init__(self):
        if self.family not in MODEL_FAMILIES:
            raise ValueError(f"unknown model family {self.family!r}")


def _sum(n: int, labels: Sequence[tuple[int, str]]) -> PauliExpr:
    total = PauliExpr.zero(n)
    for q, letter in labels:
        total = total + local_term(n, q, letter)
    return total


def xx_chain(n: int) -> PauliExpr:
    """``sum_k X_k X_(k+1) + Y_k Y_(k+1)`` on an open chain."""
    if n < 2:
        raise ValueError("a chain needs n >= 2")
    items = []
    for k in range(n - 1):
        for letter in "XY":
            items.append((1, "I" * k + letter * 2 + "I" * (n - k - 2)))
    return PauliExpr.from_terms(items)


def antisym_ising(n: int) -> PauliExpr:
    """``sum_(j<=k) Z_j Z_(j+1) - sum_(j>k) Z_j Z_(j+1)`` for n = 2k+1."""
    k = (n - 1) // 2
    items = []
    for j in range(n - 1):
        items.append((1 if j < k else -1, "I" * j + "ZZ" + "I" * (n - j - 2)))
    return PauliExpr.from_terms(items)


def _locals(n: int, qubits: Sequence[int], letters: str = "XY") -> list[PauliExpr]:
    return [local_term(n, q, a) for q in qubits for a in letters]


def make_model(spec: ModelSpec) -> ControlSystem:
    f = spec.family
    if f in _FIXED_SIZE:
        if spec.size not in (None, _FIXED_SIZE[f]):
            raise ValueError(f"{f} has fixed size {_FIXED_SIZE[f]}")
        return _fixed_model(f)
    if spec.size is None:
        raise ValueError(f"{f} needs a size")
    size = int(spec.size)
    if f.startswith("ising"):
        if size < 1:
            raise ValueError("ising chains need k >= 1")
        n = 2 * size + 1
        drift = antisym_ising(n)
        if f == "ising-collective":
            controls = [_sum(n, [(q, "X") for q in range(n)]), _sum(n, [(q, "Y") for q in range(n)])]
        else:
            # mirror pairs (j, n+1-j) are driven together, the middle qubit on its own
            controls = []
            for j in range(size):
                for a in "XY":
                    controls.append(_sum(n, [(j, a), (n - 1 - j, a)]))
            controls += _locals(n, [size])
        return ControlSystem(n, drift, controls, label=f"{f} k={size}")
    n = size
    if n < 2:
        raise ValueError(f"{f} needs n >= 2")
    if f == "xx-one-end":
        controls = _locals(n, [0])
    elif f == "xx-two-ends":
        controls = _locals(n, [0, n - 1])
    elif f == "xx-second-site":
        controls = _locals(n, [1])
    else:
        controls = _locals(n, [0, 1])
    return ControlSystem(n, xx_chain(n), controls, label=f"{f} n={n}")


def _fixed_model(f: str) -> ControlSystem:
    if f == "example-counter1":
        return ControlSystem(4, xx_chain(4), _locals(4, [0, 3], "XYZ"), label=f)
    if f == "example-counter2":
        return ControlSystem(3, xx_chain(3), _locals(3, [0], "XYZ"), label=f)
    if f == "example-ex1":
        return ControlSystem(2, PauliExpr.zero(2), _locals(2, [0, 1], "XYZ"), label=f)
    return ControlSystem(3, PauliExpr.term("ZZZ"), _locals(3, [0, 1, 2], "XYZ"), label=f)


def zzz_full_local(n: int = 5) -> ControlSystem:
    """Three-body ZZZ couplings on overlapping triples (every second qubit) with full local control."""
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be odd and >= 3")
    items = [(1, "I" * j + "ZZZ" + "I" * (n - j - 3)) for j in range(0, n - 2, 2)]
    return ControlSystem(n, PauliExpr.from_terms(items), _locals(n, range(n), "XYZ"), label=f"zzz-full-local n={n}")


def split_structure_example() -> ControlSystem:
    """Two factors C^4 (x) C^2; qubits 1,2 and qubit 3 fully local, drift IZZ."""
    return ControlSystem(
        3, PauliExpr.term("IZZ"), _locals(3, [0, 1, 2], "XYZ"), label="split-structure",
        structure=TensorStructure((4, 2)),
    )


# ---------------------------------------------------------- identification


@dataclass(frozen=True)
class Identification:
    candidates: tuple[IrrepRecord, ...]
    confidence: str

    @property
    def record(self) -> IrrepRecord | None:
        return self.candidates[0] if len(self.candidates) == 1 else None

    @property
    def algebra(self) -> catalog.AlgebraId | None:
        return self.record.algebra if self.record else None

    def label(self) -> str:
        return " | ".join(r.label() for r in self.candidates)

    def to_json(self) -> dict:
        return {"confidence": self.confidence, "candidates": [r.to_json() for r in self.candidates]}


def identify(N: int, form_kind: str, closure_dim: int | None) -> Identification | None:
    """Catalog lookup among the dimension-N irreps whose type matches the form kind."""
    malcev = _KIND_TO_MALCEV.get(form_kind)
    if malcev is None or N < 2:
        return None
    recs = [r for r in catalog.irreps_of_dim(N) if r.malcev == malcev]
    if closure_dim is not None:
        recs = [r for r in recs if r.algebra.dimension == closure_dim]
        if not recs:
            return None
        return Identification(tuple(recs), PROVED if len(recs) == 1 else CONSISTENT)
    return Identification(tuple(recs), CONSISTENT) if recs else None


# ------------------------------------------------------------------ verdict


@dataclass(frozen=True)
class Verdict:
    label: str
    n: int
    N: int
    centraliser_dim: int
    commutant_dim: int
    connected: bool | None
    connectivity_method: str
    form: FormClassification
    tensor_square_dim: int | None = None
    closure_dim: int | None = None
    identified: Identification | None = None
    fully_controllable: bool | None = None
    failed_conditions: tuple[int, ...] = ()
    notes: tuple[str, ...] = ()
    basis: AlgebraBasis | None = field(default=None, repr=False, compare=False)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "n": self.n,
            "N": self.N,
            "centraliser_dim": self.centraliser_dim,
            "commutant_dim": self.commutant_dim,
            "connected": self.connected,
            "connectivity_method": self.connectivity_method,
            "form": self.form.to_json(include_matrix=False),
            "tensor_square_dim": self.tensor_square_dim,
            "closure_dim": self.closure_dim,
            "identified": self.identified.to_json() if self.identified else None,
            "fully_controllable": self.fully_controllable,
            "failed_conditions": list(self.failed_conditions),
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class AssessOptions:
    """``None`` means automatic: run only on small registers."""

    closure: bool | None = None
    tensor_square: bool | None = None
    tol: float = DEFAULT_TOL
    tensor_square_cap: int = KRON_CAP
    closure_dim_cap: int | None = None


def _connectivity(system: ControlSystem, basis: AlgebraBasis | None) -> tuple[bool | None, str]:
    if basis is not None:
        return weak_connectivity(system, basis).value, "closure"
    try:
        return is_connected_graph(coupling_graph(system)), "coupling-graph"
    except GraphError:
        return None, "undetermined"


def assess(system: ControlSystem, options: AssessOptions | None = None) -> Verdict:
    opts = options or AssessOptions()
    gens = system.generators()
    n, N = system.n, system.N
    sym = centraliser(gens, opts.tol)
    irreducible = sym.centraliser_dim == 0
    form = classify_form(gens, irreducible=irreducible or None, tol=opts.tol)

    run_ts = opts.tensor_square if opts.tensor_square is not None else n <= AUTO_TENSOR_SQUARE_QUBITS
    ts = tensor_square_commutant_dim(gens, opts.tol, cap=opts.tensor_square_cap) if run_ts else None

    run_cl = opts.closure if opts.closure is not None else n <= AUTO_CLOSURE_QUBITS
    if run_cl and n > MAX_CLOSURE_QUBITS and opts.closure_dim_cap is None:
        raise ValueError(f"closure above {MAX_CLOSURE_QUBITS} qubits needs an explicit dim cap")
    basis = lie_closure(gens, dim_cap=opts.closure_dim_cap) if run_cl else None
    closure_dim = basis.dim if basis is not None and not basis.capped else None

    connected, method = _connectivity(system, basis)

    failed = []
    if not irreducible:
        failed.append(COND_CENTRALISER)
    if connected is False:
        failed.append(COND_CONNECTED)
    if form.kind != NOFORM:
        failed.append(COND_FORM)

    full_dim = N * N - 1
    if ts is not None:
        fully = ts == 2
    elif closure_dim is not None:
        fully = closure_dim == full_dim
    elif failed:
        fully = False
    else:
        fully = None

    identified = None
    if irreducible and form.exclusive:
        identified = identify(N, form.kind, closure_dim)
        if fully is False and form.kind == NOFORM and identified is not None and not failed:
            # a proper unitary subalgebra: the catalog condition is the one that fails
            if identified.record is None or identified.record.algebra != catalog.su(N):
                failed.append(COND_CATALOG)

    verdict = Verdict(
        label=system.label, n=n, N=N, centraliser_dim=sym.centraliser_dim, commutant_dim=sym.commutant_dim,
        connected=connected, connectivity_method=method, form=form, tensor_square_dim=ts,
        closure_dim=closure_dim, identified=identified, fully_controllable=fully,
        failed_conditions=tuple(failed), basis=basis,
    )
    note = pure_state_note(verdict)
    if note:
        verdict = _with_notes(verdict, (note,))
    return verdict


def _with_notes(v: Verdict, notes: tuple[str, ...]) -> Verdict:
    from dataclasses import replace

    return replace(v, notes=v.notes + notes)


PURE_STATE_ONLY = "pure-state controllable but not operator controllable (symplectic algebra sp(N/2))"
PURE_AND_OPERATOR = "operator controllable, hence also pure-state controllable"


def pure_state_note(verdict: Verdict) -> str | None:
    """Annotate sp(N/2) verdicts (pure-state only) and su(N) verdicts (both)."""
    N = verdict.N
    if verdict.fully_controllable:
        return PURE_AND_OPERATOR
    if verdict.form.kind == SYMPLECTIC and verdict.closure_dim == N * (N + 1) // 2 and verdict.centraliser_dim == 0:
        return PURE_STATE_ONLY
    return None


# -------------------------------------------------------------- simulation

SIMULATES, SIMULATED_BY, EQUIVALENT, INCOMPARABLE = "simulates", "simulated_by", "equivalent", "incomparable"


@dataclass(frozen=True)
class SimulationResult:
    relation: str
    a_contains_b: bool
    b_contains_a: bool
    # True when the relation rests on equal catalog records rather than span containment
    by_isomorphism: bool = False

    def to_json(self) -> dict:
        return {
            "relation": self.relation,
            "a_contains_b": self.a_contains_b,
            "b_contains_a": self.b_contains_a,
            "by_isomorphism": self.by_isomorphism,
        }


def _contains_all(big: AlgebraBasis, small: AlgebraBasis) -> bool:
    return all(span_contains(big, e) for e in small.elements)


def check_simulates(
    a: AlgebraBasis,
    b: AlgebraBasis,
    ident_a: Identification | None = None,
    ident_b: Identification | None = None,
) -> SimulationResult:
    """Does system a reproduce all dynamics of system b (same qubit count)?

    Containment is decided exactly in the common Pauli ambient.  If neither
    span contains the other but both algebras were identified as the same
    catalog irrep, they are unitarily conjugate and reported equivalent.
    """
    if a.n != b.n:
        raise ValueError(f"ambient mismatch: {a.n} vs {b.n} qubits")
    ab, ba = _contains_all(a, b), _contains_all(b, a)
    if ab and ba:
        return SimulationResult(EQUIVALENT, ab, ba)
    if ab:
        return SimulationResult(SIMULATES, ab, ba)
    if ba:
        return SimulationResult(SIMULATED_BY, ab, ba)
    ra = ident_a.record if ident_a else None
    rb = ident_b.record if ident_b else None
    if ra is not None and rb is not None and ra.key == rb.key and a.dim == b.dim:
        return SimulationResult(EQUIVALENT, ab, ba, by_isomorphism=True)
    return SimulationResult(INCOMPARABLE, ab, ba)


def simulate_systems(a: ControlSystem, b: ControlSystem, options: AssessOptions | None = None) -> SimulationResult:
    """Assess both systems with the closure forced on, then compare."""
    opts = options or AssessOptions()
    from dataclasses import replace

    opts = replace(opts, closure=True, tensor_square=False)
    va, vb = assess(a, opts), assess(b, opts)
    return check_simulates(va.basis, vb.basis, va.identified, vb.identified)
