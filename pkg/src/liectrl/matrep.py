"""Dense complex linear algebra: vec/unvec, commutation matrix, SVD kernels and ranks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

DEFAULT_TOL = 1e-9
# largest N for which N^2 x N^2 operators may be formed explicitly
KRON_CAP = 64


class ResourceCapError(RuntimeError):
    """Raised when a requested computation exceeds a configured size cap."""


class NumericalInconsistency(RuntimeError):
    """Raised when a numerical certificate contradicts an exact one."""


def vec(a: np.ndarray) -> np.ndarray:
    """Stack the columns of ``a`` into one vector."""
    return np.asarray(a).reshape(-1, order="F")


def unvec(v: np.ndarray, rows: int, cols: int | None = None) -> np.ndarray:
    cols = rows if cols is None else cols
    return np.asarray(v).reshape((rows, cols), order="F")


def commutation_matrix(n: int) -> np.ndarray:
    """Permutation ``K`` with ``K @ vec(A) == vec(A.T)`` for ``n x n`` matrices."""
    if n < 1:
        raise ValueError("N must be positive")
    idx = np.arange(n * n)
    # position i + n*j holds A[i, j]; after transposing it moves to j + n*i
    i, j = idx % n, idx // n
    k = np.zeros((n * n, n * n))
    k[j + n * i, idx] = 1.0
    return k


def check_kron_cap(n: int, cap: int = KRON_CAP):
    if n > cap:
        raise ResourceCapError(f"refusing to form {n * n}x{n * n} operators (N={n} > {cap})")


@dataclass(frozen=True)
class NullspaceResult:
    """Orthonormal kernel basis plus the numbers needed to audit it."""

    basis: list = field(default_factory=list)
    tolerance_used: float = DEFAULT_TOL
    residual_max: float = 0.0
    shape: tuple[int, int] | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> np.ndarray:
        """Kernel vectors as the columns of one matrix."""
        if not self.basis:
            return np.zeros((0, 0))
        return np.column_stack([vec(b) if b.ndim == 2 else b for b in self.basis])


def _check_finite(m: np.ndarray):
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")


def _kernel_columns(m: np.ndarray, tol: float) -> tuple[np.ndarray, float]:
    """Orthonormal kernel basis (as columns) and the absolute threshold used."""
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return np.eye(cols, dtype=complex), 0.0
    if rows > cols:
        # same singular values and right vectors, much smaller SVD
        m = np.linalg.qr(m, mode="r")
    _, s, vh = np.linalg.svd(m, full_matrices=True)
    smax = s[0] if s.size else 0.0
    if smax == 0.0:
        return np.eye(cols, dtype=complex), 0.0
    thresh = tol * smax
    rank = int(np.sum(s > thresh))
    return vh[rank:].conj().T, thresh


def nullspace(m: np.ndarray, tol: float = DEFAULT_TOL, shape: tuple[int, int] | None = None) -> NullspaceResult:
    """Numerical kernel of ``m``: right singular vectors with sigma <= tol * sigma_max.

    If ``shape`` is given the kernel vectors are reshaped (column-major) into
    matrices of that shape.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    m = np.atleast_2d(np.asarray(m, dtype=complex))
    _check_finite(m)
    ker, thresh = _kernel_columns(m, tol)
    residual = float(np.max(np.linalg.norm(m @ ker, axis=0))) if ker.shape[1] else 0.0
    if shape is None:
        basis = [ker[:, i].copy() for i in range(ker.shape[1])]
    else:
        basis = [unvec(ker[:, i], *shape) for i in range(ker.shape[1])]
    return NullspaceResult(basis, tolerance_used=max(thresh, tol), residual_max=residual, shape=shape)


def rank(m: np.ndarray, tol: float = DEFAULT_TOL) -> int:
    m = np.atleast_2d(np.asarray(m, dtype=complex))
    _check_finite(m)
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > tol * s[0]))


def orthonormalize(vectors: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the column span of ``vectors``."""
    if vectors.size == 0:
        return vectors.reshape(vectors.shape[0], 0)
    u, s, _ = np.linalg.svd(vectors, full_matrices=False)
    if s[0] == 0:
        return u[:, :0]
    return u[:, : int(np.sum(s > tol * s[0]))]


def intersect_subspaces(bases: Sequence[np.ndarray], tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the intersection of column spans.

    Each span V is turned into the constraint ``P_perp(V) x = 0``; all
    constraints are stacked and solved with one kernel computation.
    """
    if not bases:
        raise ValueError("need at least one subspace")
    dims = {b.shape[0] for b in bases}
    if len(dims) != 1:
        raise ValueError(f"ambient dimension mismatch: {sorted(dims)}")
    (ambient,) = dims
    constraints = []
    for b in bases:
        q = orthonormalize(np.asarray(b, dtype=complex).reshape(ambient, -1), tol)
        constraints.append(np.eye(ambient) - q @ q.conj().T)
    ker, _ = _kernel_columns(np.vstack(constraints), tol)
    return ker


def kron_sum(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``a (x) 1 + 1 (x) b``."""
    return np.kron(a, np.eye(b.shape[0])) + np.kron(np.eye(a.shape[0]), b)


def commutator_operator(h: np.ndarray) -> np.ndarray:
    """Matrix of ``s -> [s, h]`` on column-major vec: ``(h^t (x) 1 - 1 (x) h)``."""
    n = h.shape[0]
    eye = np.eye(n)
    return np.kron(h.T, eye) - np.kron(eye, h)


def form_operator(h: np.ndarray) -> np.ndarray:
    """Matrix of ``S -> S h + h^t S`` on column-major vec: ``(h^t (x) 1 + 1 (x) h^t)``."""
    n = h.shape[0]
    eye = np.eye(n)
    return np.kron(h.T, eye) + np.kron(eye, h.T)


def joint_kernel(operators: Sequence[np.ndarray], tol: float = DEFAULT_TOL, shape=None) -> NullspaceResult:
    """Kernel common to every operator, via one stacked SVD."""
    if not operators:
        raise ValueError("need at least one operator")
    stacked = np.vstack([np.asarray(o, dtype=complex) for o in operators])
    scale = max(1.0, max(float(np.linalg.norm(o)) for o in operators))
    res = nullspace(stacked / scale, tol, shape=shape)
    return NullspaceResult(res.basis, res.tolerance_used, res.residual_max * scale, shape)
