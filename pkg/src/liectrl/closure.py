"""Lie closure of drift and control Hamiltonians.

Qubit systems are closed exactly: every bracket is a rational Pauli
combination and linear independence is decided by rational row reduction.
A floating-point path exists for systems given only as dense matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .matrep import DEFAULT_TOL
from .pauli import PauliExpr, bracket


class ClosureError(ValueError):
    pass


class RationalEchelon:
    """Reduced row echelon form of sparse rational vectors.

    Vectors are dicts ``key -> Fraction``.  Each stored row has a pivot key
    with coefficient 1 that no other stored row contains, so reducing a vector
    is a single pass over its keys.
    """

    __slots__ = ("rows", "ambient")

    def __init__(self, ambient: int | None = None):
        self.rows: dict[int, dict[int, Fraction]] = {}
        self.ambient = ambient

    def __len__(self) -> int:
        return len(self.rows)

    def copy(self) -> "RationalEchelon":
        e = RationalEchelon(self.ambient)
        e.rows = {p: dict(r) for p, r in self.rows.items()}
        return e

    def reduce(self, v: dict) -> dict[int, Fraction]:
        out = dict(v)
        rows = self.rows
        for p in [k for k in v if k in rows]:
            c = out.pop(p, None)
            if c is None:
                continue
            for k, x in rows[p].items():
                if k == p:
                    continue
                s = out.get(k, 0) - c * x
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return out

    def insert_reduced(self, r: dict) -> int:
        """Store an already reduced nonzero vector; returns its pivot."""
        p = min(r)
        inv = 1 / Fraction(r[p])
        row = {k: x * inv for k, x in r.items()}
        for q, other in self.rows.items():
            c = other.get(p)
            if c is None:
                continue
            for k, x in row.items():
                s = other.get(k, 0) - c * x
                if s:
                    other[k] = s
                else:
                    del other[k]
        self.rows[p] = row
        return p

    def add(self, v: dict) -> bool:
        """Insert ``v`` if it is independent of the stored rows."""
        r = self.reduce(v)
        if not r:
            return False
        self.insert_reduced(r)
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def pivots(self) -> list[int]:
        return sorted(self.rows)


@dataclass(frozen=True)
class AlgebraBasis:
    """Basis of a dynamic Lie algebra.

    ``elements`` are the brackets actually found (in discovery order), which
    keeps them readable; membership tests use the internal echelon form.
    """

    n: int
    elements: tuple
    generator_count: int
    closed: bool
    sweeps: int = 0
    capped: bool = False
    dense: bool = False
    _echelon: RationalEchelon | None = field(default=None, repr=False, compare=False)
    _dense_q: np.ndarray | None = field(default=None, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def contains(self, e) -> bool:
        return span_contains(self, e)

    def reduced_rows(self) -> list[PauliExpr]:
        """Echelon basis as Pauli expressions (canonical, independent of input order)."""
        if self._echelon is None:
            raise ValueError("dense bases have no rational echelon form")
        return [PauliExpr(self.n, self._echelon.rows[p]) for p in self._echelon.pivots()]


def _validate(generators: Sequence[PauliExpr]) -> int:
    if not generators:
        raise ClosureError("at least one generator is required")
    ns = {g.n for g in generators}
    if len(ns) != 1:
        raise ClosureError(f"generators have inconsistent qubit counts {sorted(ns)}")
    return ns.pop()


def lie_closure(
    generators: Iterable[PauliExpr], dim_cap: int | None = None, strategy: str = "generators"
) -> AlgebraBasis:
    """Exact Lie closure in the Pauli basis (breadth-first bracket sweeps).

    ``strategy="full"`` brackets the elements found in the previous sweep with
    every element known at the start of the sweep.  The default
    ``"generators"`` brackets them with the generators only; left-normed
    brackets of generators already span the generated algebra, so both give
    the same space, but this one needs far fewer products.

    The search stops when a sweep adds nothing (``closed``) or the dimension
    reaches ``dim_cap``.  Reaching the ambient dimension ``4^n - 1`` also
    certifies closure.
    """
    if strategy not in ("generators", "full"):
        raise ClosureError(f"unknown strategy {strategy!r}")
    gens = [g for g in generators]
    n = _validate(gens)
    ambient = 4**n - 1
    cap = ambient if dim_cap is None else int(dim_cap)
    if cap < 1:
        raise ClosureError("dim_cap must be positive")
    ech = RationalEchelon(ambient)
    elements: list[PauliExpr] = []
    for g in gens:
        if g.terms.get(0):
            # the identity part is central and drops out of every bracket
            g = PauliExpr(n, {k: v for k, v in g.terms.items() if k})
        if g and ech.add(g.terms):
            elements.append(g)
            if len(elements) >= cap:
                return _finish(n, elements, len(gens), 0, ech)
    seeds = list(elements)
    frontier = list(elements)
    sweeps = 0
    while frontier:
        sweeps += 1
        known = seeds if strategy == "generators" else list(elements)
        fresh: list[PauliExpr] = []
        for b in frontier:
            for o in known:
                if o is b:
                    continue
                c = bracket(o, b)
                if c and ech.add(c.terms):
                    elements.append(c)
                    fresh.append(c)
                    if len(elements) >= cap:
                        return _finish(n, elements, len(gens), sweeps, ech)
        frontier = fresh
    return AlgebraBasis(n, tuple(elements), len(gens), closed=True, sweeps=sweeps, _echelon=ech)


def _finish(n, elements, gcount, sweeps, ech) -> AlgebraBasis:
    full = len(elements) == 4**n - 1
    return AlgebraBasis(
        n, tuple(elements), gcount, closed=full, sweeps=sweeps, capped=not full, _echelon=ech
    )


def span_contains(basis: AlgebraBasis, e) -> bool:
    """Exact (qubit) or tolerance-based (dense) linear membership."""
    if basis.dense:
        m = np.asarray(e, dtype=complex).reshape(-1)
        q = basis._dense_q
        if q is None or q.shape[1] == 0:
            return bool(np.linalg.norm(m) <= DEFAULT_TOL)
        resid = m - q @ (q.conj().T @ m)
        return bool(np.linalg.norm(resid) <= DEFAULT_TOL * max(1.0, np.linalg.norm(m)))
    if not isinstance(e, PauliExpr):
        raise TypeError("qubit bases test PauliExpr membership")
    if e.n != basis.n:
        raise ValueError(f"qubit count mismatch: {e.n} vs {basis.n}")
    terms = {k: v for k, v in e.terms.items() if k}
    if e.terms.get(0):
        return False
    return basis._echelon.contains(terms)


def closure_certificate(basis: AlgebraBasis) -> bool:
    """Check exactly that every pairwise bracket lies in the span."""
    els = basis.elements
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            if not span_contains(basis, bracket(els[i], els[j])):
                return False
    return True


def lie_closure_dense(
    generators: Sequence[np.ndarray], dim_cap: int | None = None, tol: float = DEFAULT_TOL
) -> AlgebraBasis:
    """Floating-point closure for skew-Hermitian matrices of any size.

    Independence is decided by Gram-Schmidt residual norms relative to each
    candidate's norm; the basis is orthonormal in the Hilbert-Schmidt product.
    """
    gens = [np.asarray(g, dtype=complex) for g in generators]
    if not gens:
        raise ClosureError("at least one generator is required")
    shapes = {g.shape for g in gens}
    if len(shapes) != 1:
        raise ClosureError(f"generators have inconsistent shapes {sorted(shapes)}")
    d = gens[0].shape[0]
    ambient = d * d - 1
    cap = ambient if dim_cap is None else int(dim_cap)
    q = np.zeros((d * d, 0), dtype=complex)
    elements: list[np.ndarray] = []

    def try_add(m: np.ndarray) -> bool:
        nonlocal q
        v = m.reshape(-1)
        nv = np.linalg.norm(v)
        if nv == 0:
            return False
        r = v - q @ (q.conj().T @ v)
        r = r - q @ (q.conj().T @ r)
        nr = np.linalg.norm(r)
        if nr <= tol * max(1.0, nv) * 1e3:
            return False
        q = np.column_stack([q, r / nr])
        elements.append((r / nr).reshape(d, d))
        return True

    for g in gens:
        g = g - np.trace(g) / d * np.eye(d)
        try_add(g)
    frontier = list(elements)
    sweeps = 0
    while frontier and len(elements) < cap:
        sweeps += 1
        known = list(elements)
        fresh = []
        for b in frontier:
            for o in known:
                if try_add(o @ b - b @ o):
                    fresh.append(elements[-1])
                    if len(elements) >= cap:
                        break
            if len(elements) >= cap:
                break
        frontier = fresh
    full = len(elements) == ambient
    closed = full or not frontier
    return AlgebraBasis(
        n=d, elements=tuple(elements), generator_count=len(gens), closed=closed, sweeps=sweeps,
        capped=not closed, dense=True, _dense_q=q,
    )
