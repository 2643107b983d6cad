"""Centraliser, commutant and the tensor-square commutant test.

For qubit systems the centraliser is solved exactly in Pauli coordinates:
``[s, H] = 0`` is a sparse rational linear system in the coefficients of s.
The commutant of a set of skew-Hermitian matrices is a *-algebra containing
the identity, so its complex dimension is the centraliser dimension plus one.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .closure import RationalEchelon
from .matrep import (
    DEFAULT_TOL,
    KRON_CAP,
    ResourceCapError,
    check_kron_cap,
    commutation_matrix,
    commutator_operator,
    joint_kernel,
    orthonormalize,
    rank,
)
from .pauli import PauliExpr, _low_mask, to_matrix

Generator = Union[PauliExpr, np.ndarray]

# exact Pauli centralisers are solved up to this many qubits
EXACT_QUBIT_CAP = 6


@dataclass(frozen=True)
class SymmetryReport:
    centraliser_dim: int
    centraliser_basis: list = field(default_factory=list, repr=False)
    commutant_dim: int = 1
    irreducible: bool = True
    tensor_square_commutant_dim: int = -1
    exact: bool = True

    def to_json(self) -> dict:
        basis = [
            b.to_json() if isinstance(b, PauliExpr) else np.asarray(b).round(12).tolist()
            for b in self.centraliser_basis
        ]
        if basis and not isinstance(self.centraliser_basis[0], PauliExpr):
            basis = [{"re": np.real(b).tolist(), "im": np.imag(b).tolist()} for b in self.centraliser_basis]
        return {
            "centraliser_dim": self.centraliser_dim,
            "commutant_dim": self.commutant_dim,
            "irreducible": self.irreducible,
            "tensor_square_commutant_dim": self.tensor_square_commutant_dim,
            "exact": self.exact,
            "centraliser_basis": basis,
        }


def _is_pauli(gens: Sequence[Generator]) -> bool:
    return all(isinstance(g, PauliExpr) for g in gens)


def _dense(g: Generator) -> np.ndarray:
    return to_matrix(g) if isinstance(g, PauliExpr) else np.asarray(g, dtype=complex)


def pauli_centraliser(generators: Sequence[PauliExpr]) -> list[PauliExpr]:
    """Exact basis of ``{s in su(2^n) : [s, H] = 0 for all H}`` in Pauli coordinates."""
    n = generators[0].n
    if any(g.n != n for g in generators):
        raise ValueError("generators have inconsistent qubit counts")
    if n > EXACT_QUBIT_CAP:
        raise ResourceCapError(f"exact centraliser limited to {EXACT_QUBIT_CAP} qubits")
    low = _low_mask(n)
    gterms = []
    for g in generators:
        gterms.append([((q ^ (q >> 1)) & low, (q >> 1) & low, q, c) for q, c in g.terms.items() if q])
    rows: dict[tuple[int, int], dict[int, Fraction]] = defaultdict(dict)
    for p in range(1, 4**n):
        xp, zp = (p ^ (p >> 1)) & low, (p >> 1) & low
        wp = (xp & zp).bit_count()
        for gi, terms in enumerate(gterms):
            for xq, zq, q, c in terms:
                if ((xp & zq).bit_count() + (zp & xq).bit_count()) & 1 == 0:
                    continue
                xr, zr = xp ^ xq, zp ^ zq
                k = (wp + (xq & zq).bit_count() + 2 * (zp & xq).bit_count() - (xr & zr).bit_count()) % 4
                row = rows[(gi, p ^ q)]
                row[p] = row.get(p, 0) + (c if k == 1 else -c)
    ech = RationalEchelon()
    for key in sorted(rows):
        r = {k: v for k, v in rows[key].items() if v}
        if r:
            ech.add(r)
    cols: dict[int, list[tuple[int, Fraction]]] = defaultdict(list)
    for p, row in ech.rows.items():
        for k, x in row.items():
            if k != p:
                cols[k].append((p, x))
    basis = []
    for f in range(1, 4**n):
        if f in ech.rows:
            continue
        v = {f: Fraction(1)}
        for p, x in cols.get(f, ()):
            v[p] = -x
        basis.append(PauliExpr(n, v))
    return basis


def _skew_traceless_basis(mats: Sequence[np.ndarray], tol: float) -> list[np.ndarray]:
    """Real basis of the traceless skew-Hermitian parts spanned by ``mats``."""
    if not mats:
        return []
    d = mats[0].shape[0]
    cands = []
    for b in mats:
        for m in ((b - b.conj().T) / 2, 1j * (b + b.conj().T) / 2):
            m = m - np.trace(m) / d * np.eye(d)
            cands.append(np.concatenate([m.real.ravel(), m.imag.ravel()]))
    q = orthonormalize(np.column_stack(cands), tol)
    out = []
    for i in range(q.shape[1]):
        v = q[:, i].real
        out.append((v[: d * d] + 1j * v[d * d :]).reshape(d, d))
    return out


def dense_commutant(generators: Sequence[Generator], tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    """Basis of the commutant in gl(N), via the joint kernel of ``s -> [s, H]``."""
    mats = [_dense(g) for g in generators]
    d = mats[0].shape[0]
    check_kron_cap(d)
    res = joint_kernel([commutator_operator(h) for h in mats], tol, shape=(d, d))
    return res.basis


def centraliser(generators: Sequence[Generator], tol: float = DEFAULT_TOL) -> SymmetryReport:
    """Centraliser of the generators in su(N) (exact for Pauli input)."""
    gens = list(generators)
    if not gens:
        raise ValueError("at least one generator is required")
    if _is_pauli(gens):
        basis = pauli_centraliser(gens)
        dim = len(basis)
        return SymmetryReport(dim, basis, dim + 1, dim == 0, exact=True)
    comm = dense_commutant(gens, tol)
    basis = _skew_traceless_basis(comm, tol)
    return SymmetryReport(len(basis), basis, len(comm), len(comm) == 1, exact=False)


def tensor_square_generators(generators: Sequence[PauliExpr]) -> list[PauliExpr]:
    """``H (x) 1 + 1 (x) H`` on 2n qubits for each Pauli generator."""
    out = []
    for g in generators:
        n = g.n
        terms: dict[int, Fraction] = {}
        for q, c in g.terms.items():
            if not q:
                continue
            left, right = q << (2 * n), q
            terms[left] = terms.get(left, 0) + c
            terms[right] = terms.get(right, 0) + c
        out.append(PauliExpr(2 * n, terms))
    return out


def swap_expr(n: int) -> PauliExpr:
    """Traceless part of the swap K = 2^-n sum_P P (x) P, as a Hermitian Pauli sum."""
    return PauliExpr(2 * n, {(p << (2 * n)) | p: Fraction(1, 2**n) for p in range(1, 4**n)})


# relative singular-value threshold for the block Gram kernel
BLOCK_KERNEL_TOL = 1e-6
# refuse block Gram systems with more unknowns than this
BLOCK_UNKNOWN_CAP = 6000


def _hermitian(m: np.ndarray, tol: float) -> np.ndarray:
    if np.allclose(m, m.conj().T, atol=tol):
        return m
    if np.allclose(m, -m.conj().T, atol=tol):
        return 1j * m
    raise ValueError("generators must be Hermitian or skew-Hermitian")


def _tensor_square_dense_dim(mats: Sequence[np.ndarray], tol: float, seed: int = 0) -> int:
    """Commutant dimension of ``{H (x) 1 + 1 (x) H}`` without forming N^4 x N^4 operators.

    Any commutant element commutes with ``R (x) 1 + 1 (x) R`` for a random real
    combination R, so it is block diagonal over clusters of equal eigenvalues
    of that sum.  Merging nearly equal clusters only adds unknowns.  The
    remaining constraints are assembled as a Gram matrix in closed form.
    """
    d = mats[0].shape[0]
    check_kron_cap(d)
    hs = [_hermitian(np.asarray(m, dtype=complex), 1e-10) for m in mats]
    rng = np.random.default_rng(seed)
    r = sum(c * h for c, h in zip(rng.standard_normal(len(hs)), hs))
    evals, vecs = np.linalg.eigh(r)
    pair = (evals[:, None] + evals[None, :]).reshape(-1)
    order = np.argsort(pair, kind="stable")
    scale = max(1.0, float(np.max(np.abs(pair))))
    breaks = np.flatnonzero(np.diff(pair[order]) > 1e-8 * scale) + 1
    clusters = np.split(order, breaks)
    unknowns = sum(len(c) ** 2 for c in clusters)
    if unknowns > BLOCK_UNKNOWN_CAP:
        raise ResourceCapError(f"tensor-square block system has {unknowns} unknowns > {BLOCK_UNKNOWN_CAP}")
    rows = np.concatenate([np.repeat(c, len(c)) for c in clusters])
    cols = np.concatenate([np.tile(c, len(c)) for c in clusters])
    same_row = rows[:, None] == rows[None, :]
    same_col = cols[:, None] == cols[None, :]
    eye = np.eye(d)
    gram = np.zeros((unknowns, unknowns), dtype=complex)
    for h in hs:
        hv = vecs.conj().T @ h @ vecs
        t = np.kron(hv, eye) + np.kron(eye, hv)
        tt = t.conj().T @ t
        t_rr = t[np.ix_(rows, rows)]
        t_cc = t[np.ix_(cols, cols)]
        gram += same_col * tt[np.ix_(rows, rows)]
        gram -= t_rr.conj().T * t_cc.T
        gram -= t_rr * t_cc.conj()
        gram += same_row * (t @ t.conj().T)[np.ix_(cols, cols)].T
    lam = np.linalg.eigvalsh((gram + gram.conj().T) / 2)
    sig = np.sqrt(np.clip(lam, 0, None))
    top = float(sig.max()) if sig.size else 0.0
    if top == 0.0:
        return unknowns
    return int(np.sum(sig <= max(BLOCK_KERNEL_TOL, tol) * top))


def tensor_square_commutant_dim(generators: Sequence[Generator], tol: float = DEFAULT_TOL, cap: int = KRON_CAP) -> int:
    """Dimension of the joint commutant of ``{H (x) 1 + 1 (x) H}`` in gl(N^2)."""
    gens = list(generators)
    if not gens:
        raise ValueError("at least one generator is required")
    if _is_pauli(gens):
        n = gens[0].n
        if 2**n > cap:
            raise ResourceCapError(f"tensor-square test refused for N={2**n} > {cap}")
        if 2 * n <= EXACT_QUBIT_CAP:
            return len(pauli_centraliser(tensor_square_generators(gens))) + 1
    mats = [_dense(g) for g in gens]
    if mats[0].shape[0] > cap:
        raise ResourceCapError(f"tensor-square test refused for N={mats[0].shape[0]} > {cap}")
    return _tensor_square_dense_dim(mats, tol)


def tensor_square_commutant(generators: Sequence[Generator], tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    """Dense basis (N^2 x N^2 matrices) of the tensor-square commutant, including 1."""
    gens = list(generators)
    if _is_pauli(gens) and 2 * gens[0].n <= EXACT_QUBIT_CAP:
        n = gens[0].n
        check_kron_cap(2**n, 8)
        basis = [2j * to_matrix(b) for b in pauli_centraliser(tensor_square_generators(gens))]
        return [np.eye(4**n, dtype=complex)] + basis
    mats = [_dense(g) for g in gens]
    d = mats[0].shape[0]
    check_kron_cap(d, 8)
    eye = np.eye(d)
    ts = [np.kron(h, eye) + np.kron(eye, h) for h in mats]
    return joint_kernel([commutator_operator(t) for t in ts], tol, shape=(d * d, d * d)).basis


def alt_sym_commutant_dims(generators: Sequence[Generator], tol: float = DEFAULT_TOL) -> tuple[int, int]:
    """Commutant dimensions of the tensor square restricted to Alt^2 and Sym^2."""
    gens = list(generators)
    d = 2 ** gens[0].n if isinstance(gens[0], PauliExpr) else np.asarray(gens[0]).shape[0]
    comm = tensor_square_commutant(gens, tol)
    k = commutation_matrix(d)
    eye = np.eye(d * d)
    out = []
    for proj in ((eye - k) / 2, (eye + k) / 2):
        if np.trace(proj).real < 0.5:
            # an empty subspace still counts as one (trivial) block
            out.append(0)
            continue
        comp = np.column_stack([(proj @ c @ proj).reshape(-1) for c in comm])
        out.append(rank(comp, tol))
    return out[0], out[1]


def commutes_with_all(element: PauliExpr, others: Sequence[PauliExpr]) -> bool:
    from .pauli import bracket

    return all(bracket(element, o).is_zero() for o in others)
