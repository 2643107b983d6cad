"""Jordan-Wigner front-end for quadratic fermionic Hamiltonians and Hubbard models.

Levels ``p = 1..d`` map to qubits ``1..d`` (leftmost first).  Majorana
operators carry a Z-string on the levels before them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .pauli import PauliExpr, PauliTerm, Rational, _to_fraction
from .system import ControlSystem

QUADRATIC_FAMILIES = ("quadratic", "quadratic-linear", "number-preserving", "diagonal")


@dataclass(frozen=True)
class MajoranaOp:
    """Majorana operator ``c_index`` (1-based) on ``d`` levels."""

    index: int
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be positive")
        if not 1 <= self.index <= 2 * self.d:
            raise ValueError(f"Majorana index {self.index} outside 1..{2 * self.d}")


def jordan_wigner(op: MajoranaOp) -> PauliTerm:
    """``c_p -> Z^(p-1) X I^(d-p)`` and ``c_(p+d) -> Z^(p-1) Y I^(d-p)``."""
    d = op.d
    p, letter = (op.index, "X") if op.index <= d else (op.index - d, "Y")
    return PauliTerm.from_label("Z" * (p - 1) + letter + "I" * (d - p))


def _string(d: int, q: int, p: int, end: str) -> str:
    """``I^(q-1) end Z^(p-q-1) end I^(d-p)`` for levels ``q < p`` (1-based)."""
    return "I" * (q - 1) + end + "Z" * (p - q - 1) + end + "I" * (d - p)


def hopping(d: int, q: int, p: int) -> PauliExpr:
    """``XZ..ZX + YZ..ZY`` between levels ``q < p``."""
    return PauliExpr.from_terms([(1, _string(d, q, p, "X")), (1, _string(d, q, p, "Y"))])


def pairing(d: int, q: int, p: int) -> PauliExpr:
    """``XZ..ZX - YZ..ZY`` between levels ``q < p``."""
    return PauliExpr.from_terms([(1, _string(d, q, p, "X")), (-1, _string(d, q, p, "Y"))])


def site_z(d: int, p: int) -> PauliExpr:
    return PauliExpr.term("I" * (p - 1) + "Z" + "I" * (d - p))


@dataclass(frozen=True)
class QuadraticSpec:
    """``H = sum(-B_pq)[f+_p f_q - f_p f+_q] + (-A_pq)[f+_p f+_q - f_p f_q]``.

    ``A`` is antisymmetric and ``B`` symmetric, both with exact rational entries.
    """

    d: int
    A: tuple[tuple[Fraction, ...], ...]
    B: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        d = self.d
        if d < 1:
            raise ValueError("d must be positive")
        a = tuple(tuple(_to_fraction(v) for v in row) for row in self.A)
        b = tuple(tuple(_to_fraction(v) for v in row) for row in self.B)
        for name, m in (("A", a), ("B", b)):
            if len(m) != d or any(len(row) != d for row in m):
                raise ValueError(f"{name} must be {d}x{d}")
        for i in range(d):
            for j in range(d):
                if a[i][j] != -a[j][i]:
                    raise ValueError("A must be antisymmetric")
                if b[i][j] != b[j][i]:
                    raise ValueError("B must be symmetric")
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "B", b)

    @classmethod
    def from_entries(
        cls, d: int, a: dict[tuple[int, int], Rational] | None = None, b: dict[tuple[int, int], Rational] | None = None
    ) -> "QuadraticSpec":
        """Build from 1-based ``(p, q)`` entries; the mirrored entry is filled in."""
        am = [[Fraction(0)] * d for _ in range(d)]
        bm = [[Fraction(0)] * d for _ in range(d)]
        for (p, q), v in (a or {}).items():
            if p == q:
                raise ValueError("A has a zero diagonal")
            am[p - 1][q - 1], am[q - 1][p - 1] = _to_fraction(v), -_to_fraction(v)
        for (p, q), v in (b or {}).items():
            bm[p - 1][q - 1] = bm[q - 1][p - 1] = _to_fraction(v)
        return cls(d, tuple(map(tuple, am)), tuple(map(tuple, bm)))


def quadratic_to_pauli(spec: QuadraticSpec, lump: bool = False) -> list[PauliExpr]:
    """Qubit form of a quadratic Hamiltonian, one generator per nonzero independent entry.

    Diagonal ``B_pp`` gives ``-B_pp Z_p``; ``B_pq`` (p > q) gives
    ``B_pq (XZ..ZX + YZ..ZY)``; ``A_pq`` (p > q) gives ``-A_pq (XZ..ZX - YZ..ZY)``.
    With ``lump`` the whole Hamiltonian is returned as a single expression.
    """
    d = spec.d
    out: list[PauliExpr] = []
    for p in range(1, d + 1):
        if spec.B[p - 1][p - 1]:
            out.append(site_z(d, p) * (-spec.B[p - 1][p - 1]))
    for p in range(1, d + 1):
        for q in range(1, p):
            if spec.B[p - 1][q - 1]:
                out.append(hopping(d, q, p) * spec.B[p - 1][q - 1])
    for p in range(1, d + 1):
        for q in range(1, p):
            if spec.A[p - 1][q - 1]:
                out.append(pairing(d, q, p) * (-spec.A[p - 1][q - 1]))
    if lump:
        total = PauliExpr.zero(d)
        for e in out:
            total = total + e
        return [total]
    return out


def linear_to_pauli(j: Sequence[Rational]) -> PauliExpr:
    """``sum_p j_p Z..Z X I..I`` (the image of the linear Majorana terms)."""
    d = len(j)
    if d < 1:
        raise ValueError("need at least one level")
    return PauliExpr.from_terms(
        [(v, "Z" * (p - 1) + "X" + "I" * (d - p)) for p, v in enumerate(j, start=1) if v]
    ) if any(j) else PauliExpr.zero(d)


def linear_generators(d: int) -> list[PauliExpr]:
    return [linear_to_pauli([int(p == q) for q in range(d)]) for p in range(d)]


def full_quadratic_spec(d: int, pairing_terms: bool = True) -> QuadraticSpec:
    """Every independent entry set to one (A only if ``pairing_terms``)."""
    b = {(p, q): 1 for p in range(1, d + 1) for q in range(1, p + 1)}
    a = {(p, q): 1 for p in range(1, d + 1) for q in range(1, p)} if pairing_terms else {}
    return QuadraticSpec.from_entries(d, a, b)


def fermion_generators(kind: str, d: int) -> list[PauliExpr]:
    """Generator sets for the quadratic families.

    ``quadratic``: all A and B entries; ``quadratic-linear``: plus the linear
    terms; ``number-preserving``: B entries only; ``diagonal``: the mode
    energies ``-Z_p`` only.
    """
    if d < 1:
        raise ValueError("d must be positive")
    if kind == "quadratic":
        return quadratic_to_pauli(full_quadratic_spec(d))
    if kind == "quadratic-linear":
        return quadratic_to_pauli(full_quadratic_spec(d)) + linear_generators(d)
    if kind == "number-preserving":
        return quadratic_to_pauli(full_quadratic_spec(d, pairing_terms=False))
    if kind == "diagonal":
        return [site_z(d, p) * -1 for p in range(1, d + 1)]
    raise ValueError(f"unknown quadratic family {kind!r}; choose from {QUADRATIC_FAMILIES}")


def ring_hopping(d: int) -> PauliExpr:
    """``sum_p (Y_p Y_(p+1) + X_p X_(p+1)) + (XZ..ZX + YZ..ZY)`` on a ring of d levels."""
    if d < 2:
        raise ValueError("a ring needs d >= 2")
    total = PauliExpr.zero(d)
    for p in range(1, d):
        total = total + hopping(d, p, p + 1)
    return total + hopping(d, 1, d)


def hubbard_spinless(d: int, t: Rational = 1) -> ControlSystem:
    """Periodic spinless Hubbard model: drift ``(t/2)`` ring hopping, controls ``Z_p``."""
    t = _to_fraction(t)
    if t == 0:
        raise ValueError("t must be nonzero")
    drift = ring_hopping(d) * (t / 2)
    controls = [site_z(d, p) for p in range(1, d + 1)]
    return ControlSystem(d, drift, controls, label=f"hubbard-spinless d={d}")


def hubbard_spinful(d: int, t: Rational = 1) -> ControlSystem:
    """Periodic Hubbard model with spin on 2d qubits (spin + first, then spin -).

    Drift ``A0 (x) 1 + 1 (x) A0`` with ``A0`` the ring hopping; controls
    ``Z_p (x) Z_p``.
    """
    t = _to_fraction(t)
    if t == 0:
        raise ValueError("t must be nonzero")
    a0 = ring_hopping(d) * (t / 2)
    shift = 2 * d
    terms: dict[int, Fraction] = {}
    for code, c in a0.terms.items():
        for k in (code << shift, code):
            terms[k] = terms.get(k, 0) + c
    drift = PauliExpr(2 * d, terms)
    controls = []
    for p in range(1, d + 1):
        z = "I" * (p - 1) + "Z" + "I" * (d - p)
        controls.append(PauliExpr.term(z + z))
    return ControlSystem(2 * d, drift, controls, label=f"hubbard-spinful d={d}")


def fermion_system(kind: str, d: int, t: Rational = 1) -> ControlSystem:
    """A ``ControlSystem`` for any supported family (generators become controls)."""
    if kind == "hubbard":
        return hubbard_spinless(d, t)
    if kind == "hubbard-spin":
        return hubbard_spinful(d, t)
    gens = fermion_generators(kind, d)
    return ControlSystem(d, PauliExpr.zero(d), gens, label=f"{kind} d={d}")
