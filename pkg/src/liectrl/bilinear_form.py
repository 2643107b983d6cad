"""Invariant bilinear forms ``S H + H^t S = 0`` and the symplectic/orthogonal test.

A nonzero joint solution S means the generated algebra preserves a bilinear
form.  Under irreducibility S is unique up to a scalar, can be scaled to a
unitary, and ``S conj(S) = +1`` (orthogonal) or ``-1`` (symplectic).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .matrep import (
    DEFAULT_TOL,
    NumericalInconsistency,
    check_kron_cap,
    form_operator,
    joint_kernel,
    rank,
    vec,
)
from .pauli import PauliExpr, local_term, to_matrix

ORTHOGONAL = "Orthogonal"
SYMPLECTIC = "Symplectic"
NOFORM = "NoForm"
# reducible input with both symmetric and antisymmetric invariant forms
MIXED = "Mixed"

FORM_TOL = 1e-8


@dataclass(frozen=True)
class FormClassification:
    kind: str
    S: np.ndarray | None = field(default=None, repr=False)
    s_sbar_sign: int | None = None
    residual: float = 0.0
    scalar_normalized: bool = False
    kernel_dim: int = 0
    kinds: frozenset = frozenset()
    exclusive: bool = True
    tolerance_used: float = DEFAULT_TOL

    def to_json(self, include_matrix: bool = True) -> dict:
        out = {
            "kind": self.kind,
            "s_sbar_sign": self.s_sbar_sign,
            "residual": self.residual,
            "scalar_normalized": self.scalar_normalized,
            "kernel_dim": self.kernel_dim,
            "kinds": sorted(self.kinds),
            "exclusive": self.exclusive,
            "tolerance_used": self.tolerance_used,
        }
        if include_matrix and self.S is not None:
            s = np.round(self.S, 12) + 0.0
            out["S"] = {"re": s.real.tolist(), "im": s.imag.tolist()}
        return out


def _dense(g) -> np.ndarray:
    return to_matrix(g) if isinstance(g, PauliExpr) else np.asarray(g, dtype=complex)


def normalize_form(s: np.ndarray, tol: float = FORM_TOL) -> np.ndarray:
    """Scale to spectral norm one and rotate the first nonzero entry (column-major) to phase 0."""
    s = np.asarray(s, dtype=complex)
    s = s / np.linalg.norm(s, 2)
    flat = vec(s)
    idx = int(np.argmax(np.abs(flat) > tol))
    z = flat[idx]
    return s * (abs(z) / z)


def invariance_residual(s: np.ndarray, generators: Sequence) -> float:
    """max_H ||S H + H^t S|| / ||H||."""
    worst = 0.0
    for g in generators:
        h = _dense(g)
        nh = np.linalg.norm(h)
        if nh == 0:
            continue
        worst = max(worst, float(np.linalg.norm(s @ h + h.T @ s) / nh))
    return worst


def form_space(generators: Sequence, tol: float = DEFAULT_TOL):
    """Joint solution space of ``S H + H^t S = 0`` as a NullspaceResult of d x d matrices."""
    mats = [_dense(g) for g in generators]
    if not mats:
        raise ValueError("at least one generator is required")
    d = mats[0].shape[0]
    check_kron_cap(d)
    return joint_kernel([form_operator(h) for h in mats], tol, shape=(d, d))


def _kinds_of_space(basis: Sequence[np.ndarray], tol: float) -> frozenset:
    kinds = set()
    sym = [vec(b + b.T) for b in basis]
    anti = [vec(b - b.T) for b in basis]
    if rank(np.column_stack(sym), tol) if sym else 0:
        kinds.add(ORTHOGONAL)
    if rank(np.column_stack(anti), tol) if anti else 0:
        kinds.add(SYMPLECTIC)
    return frozenset(kinds)


def _kind_label(kinds: frozenset) -> str:
    if len(kinds) == 2:
        return MIXED
    return next(iter(kinds)) if kinds else NOFORM


def classify_form(
    generators: Sequence, irreducible: bool | None = None, tol: float = DEFAULT_TOL
) -> FormClassification:
    """Find and classify a joint invariant bilinear form.

    ``irreducible`` is the certificate from the centraliser test.  With it, a
    solution space of dimension above one is a numerical contradiction.
    Without it, every kind present in the solution space is reported and
    ``exclusive`` is False.
    """
    gens = list(generators)
    res = form_space(gens, tol)
    d = _dense(gens[0]).shape[0]
    if res.dim == 0:
        return FormClassification(NOFORM, kernel_dim=0, tolerance_used=res.tolerance_used)
    if res.dim > 1:
        if irreducible:
            raise NumericalInconsistency(
                f"invariant form space has dim {res.dim} although the centraliser is trivial"
            )
        kinds = _kinds_of_space(res.basis, tol)
        return FormClassification(
            _kind_label(kinds), kernel_dim=res.dim, kinds=kinds, exclusive=False,
            residual=res.residual_max, tolerance_used=res.tolerance_used,
        )
    s = normalize_form(res.basis[0])
    ssbar = s @ s.conj()
    sign = 1 if np.trace(ssbar).real / d > 0 else -1
    unitary = np.linalg.norm(s @ s.conj().T - np.eye(d)) <= FORM_TOL * d
    clean = unitary and np.linalg.norm(ssbar - sign * np.eye(d)) <= FORM_TOL * d
    resid = invariance_residual(s, gens)
    if not clean:
        if irreducible:
            raise NumericalInconsistency("invariant form is not a scaled unitary with S conj(S) = +-1")
        kinds = _kinds_of_space(res.basis, tol)
        return FormClassification(
            _kind_label(kinds), S=s, residual=resid, kernel_dim=1, kinds=kinds,
            exclusive=False, tolerance_used=res.tolerance_used,
        )
    kind = ORTHOGONAL if sign == 1 else SYMPLECTIC
    return FormClassification(
        kind, S=s, s_sbar_sign=sign, residual=resid, scalar_normalized=True,
        kernel_dim=1, kinds=frozenset({kind}), exclusive=True, tolerance_used=res.tolerance_used,
    )


def local_generators(n: int) -> list[PauliExpr]:
    """The 3n single-qubit generators of su(2) + ... + su(2) acting on n qubits."""
    if n < 1:
        raise ValueError("n must be positive")
    return [local_term(n, q, a) for q in range(n) for a in "XYZ"]


def local_parity_check(n: int) -> FormClassification:
    """Form type of the fully local algebra: symplectic for odd n, orthogonal for even n."""
    return classify_form(local_generators(n), irreducible=True)


def match_up_to_phase(s: np.ndarray, ref: np.ndarray) -> float:
    """``min_phi ||s - e^{i phi} ref||`` after scaling ``ref`` to the norm of ``s``."""
    ref = np.asarray(ref, dtype=complex)
    ref = ref * (np.linalg.norm(s) / np.linalg.norm(ref))
    ip = np.vdot(ref, s)
    phase = ip / abs(ip) if abs(ip) > 0 else 1.0
    return float(np.linalg.norm(s - phase * ref))
