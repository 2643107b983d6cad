"""Acceptance suite: one marker per criterion, summarised at the end of the run."""

import random
import time

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import expr_tuples, pauli_exprs
from golden import IRREPS_UP_TO_16, J2, LATTICE_EDGES, S2, S3_ISING
from liectrl.bilinear_form import NOFORM, ORTHOGONAL, SYMPLECTIC, classify_form, match_up_to_phase
from liectrl.catalog import (
    AlgebraId,
    build_lattice,
    conventional_name,
    enumerate_irreps,
    explicit_dimension,
    irrep_dimension,
    weyl_dimension,
)
from liectrl.closure import closure_certificate, lie_closure
from liectrl.decide import ModelSpec, assess, make_model
from liectrl.fermion import MajoranaOp, fermion_generators, hubbard_spinful, hubbard_spinless, jordan_wigner
from liectrl.graph import is_connected_general, is_directly_connected, is_weakly_connected
from liectrl.matrep import commutation_matrix
from liectrl.pauli import PauliExpr, bracket, commutes, multiply_terms, parse_expr
from liectrl.symmetry import centraliser, commutes_with_all, tensor_square_commutant, tensor_square_commutant_dim
from liectrl.system import ControlSystem

FORM_TOL = 1e-8
EIG_TOL = 1e-8


def gens(family, size=None):
    return make_model(ModelSpec(family, size)).generators()


def closure_dim(family, size=None):
    return lie_closure(gens(family, size)).dim


# ------------------------------------------------------------------ 1


@pytest.mark.criterion(1)
def test_orthogonal_closure_series():
    start = time.perf_counter()
    one_end = {n: closure_dim("xx-one-end", n) for n in (2, 3, 4, 5)}
    two_ends = {n: closure_dim("xx-two-ends", n) for n in (2, 3, 4)}
    elapsed = time.perf_counter() - start
    assert one_end == {n: n * (2 * n + 1) for n in (2, 3, 4, 5)} == {2: 10, 3: 21, 4: 36, 5: 55}
    assert two_ends == {n: (n + 1) * (2 * n + 1) for n in (2, 3, 4)} == {2: 15, 3: 28, 4: 45}
    assert elapsed < 60


# ------------------------------------------------------------------ 2


@pytest.mark.criterion(2)
def test_symplectic_three_qubits():
    g = gens("ising-antisym", 1)
    assert lie_closure(g).dim == 36
    f = classify_form(g, irreducible=True)
    assert f.kind == SYMPLECTIC and f.s_sbar_sign == -1
    assert match_up_to_phase(f.S, S3_ISING) < FORM_TOL


@pytest.mark.criterion(2)
def test_symplectic_five_qubits():
    g = gens("ising-antisym", 2)
    assert centraliser(g).centraliser_dim == 0
    assert classify_form(g, irreducible=True).kind == SYMPLECTIC
    assert lie_closure(g).dim == 528


# ------------------------------------------------------------------ 3


@pytest.mark.criterion(3)
@pytest.mark.parametrize("n,dim,kind", [(2, 10, SYMPLECTIC), (4, 120, ORTHOGONAL), (5, 496, ORTHOGONAL)])
def test_alternating_series(n, dim, kind):
    g = gens("xx-second-site", n)
    assert classify_form(g, irreducible=True).kind == kind
    assert lie_closure(g).dim == dim


@pytest.mark.criterion(3)
def test_alternating_series_reducible_case():
    rep = centraliser(gens("xx-second-site", 3))
    assert rep.centraliser_dim > 0 and not rep.irreducible


# ------------------------------------------------------------------ 4


@pytest.mark.criterion(4)
@pytest.mark.parametrize("n,dim", [(2, 15), (3, 63), (4, 255)])
def test_fully_controllable_closure(n, dim):
    assert closure_dim("xx-first-two-sites", n) == dim == 4**n - 1


@pytest.mark.criterion(4)
@pytest.mark.parametrize("n", [2, 3])
def test_fully_controllable_tensor_square(n):
    assert tensor_square_commutant_dim(gens("xx-first-two-sites", n)) == 2


# ------------------------------------------------------------------ 5


@pytest.mark.criterion(5)
@pytest.mark.parametrize(
    "family,dim,kind,algebra",
    [
        ("example-counter1", 45, NOFORM, "so(10)"),
        ("example-counter2", 21, ORTHOGONAL, "so(7)"),
        ("appendixA-zzz", 36, SYMPLECTIC, "sp(4)"),
    ],
)
def test_named_examples(family, dim, kind, algebra):
    v = assess(make_model(ModelSpec(family)))
    assert v.closure_dim == dim and v.form.kind == kind
    assert v.identified is not None and v.identified.algebra.name == algebra
    assert v.fully_controllable is False


@pytest.mark.criterion(5)
def test_named_disconnected_example():
    v = assess(make_model(ModelSpec("example-ex1")))
    assert v.closure_dim == 6 and v.centraliser_dim == 0
    assert v.connected is False and 2 in v.failed_conditions


# ------------------------------------------------------------------ 6


@pytest.mark.criterion(6)
@pytest.mark.parametrize(
    "family,n,golden,sign",
    [("xx-one-end", 2, J2, -1), ("xx-one-end", 3, S2, 1), ("xx-two-ends", 3, S2, 1)],
)
def test_golden_forms(family, n, golden, sign):
    f = classify_form(gens(family, n), irreducible=True)
    assert f.s_sbar_sign == sign
    assert match_up_to_phase(f.S, golden) < FORM_TOL


# ------------------------------------------------------------------ 7


@pytest.mark.criterion(7)
def test_catalog_golden_tables():
    start = time.perf_counter()
    got = sorted(
        (r.dim, name, r.malcev, tuple(sorted(weights, reverse=True)))
        for r in enumerate_irreps(16)
        for name, weights in [conventional_name(r)]
    )
    want = sorted((d, name, t, tuple(sorted(w, reverse=True))) for d, name, t, w in IRREPS_UP_TO_16)
    assert got == want
    for n, edges in LATTICE_EDGES.items():
        assert build_lattice(n).labelled_edges() == edges
    for n in range(2, 17):
        lat = build_lattice(n)
        assert len(lat.nodes) == sum(1 for d, *_ in IRREPS_UP_TO_16 if d == n)
        assert sum(1 for node in lat.nodes if not lat.parents(node.key)) == 1
    assert time.perf_counter() - start < 10


# ------------------------------------------------------------------ 8

EXPLICIT_FAMILIES = [("A", 1, 8), ("B", 2, 8), ("C", 3, 8), ("D", 4, 8), ("G", 2, 2), ("F", 4, 4)]


@pytest.mark.criterion(8)
def test_explicit_formulas_match_weyl():
    rng = random.Random(2024)
    for _ in range(200):
        fam, lo, hi = rng.choice(EXPLICIT_FAMILIES)
        alg = AlgebraId(fam, rng.randint(lo, hi))
        weight = tuple(rng.randint(0, 3) for _ in range(alg.rank))
        assert explicit_dimension(alg, weight) == weyl_dimension(alg, weight), (alg, weight)


# Bourbaki node carrying the standard representation, when it is not the first.
STANDARD_NODE = {("E", 7): 6, ("E", 8): 7, ("F", 4): 3}


@pytest.mark.criterion(8)
@pytest.mark.parametrize(
    "family,rank,dim",
    [("A", 4, 5), ("B", 3, 7), ("C", 3, 6), ("D", 5, 10), ("E", 6, 27), ("E", 7, 56), ("E", 8, 248), ("F", 4, 26), ("G", 2, 7)],
)
def test_standard_representations(family, rank, dim):
    alg = AlgebraId(family, rank)
    weight = [0] * rank
    weight[STANDARD_NODE.get((family, rank), 0)] = 1
    assert irrep_dimension(alg, weight) == weyl_dimension(alg, weight) == dim


# ------------------------------------------------------------------ 9


@pytest.mark.criterion(9)
@pytest.mark.parametrize("d", range(1, 7))
def test_jordan_wigner_anticommutation(d):
    ops = [jordan_wigner(MajoranaOp(a, d)) for a in range(1, 2 * d + 1)]
    for i, a in enumerate(ops):
        for j, b in enumerate(ops):
            if i == j:
                phase, prod = multiply_terms(a, b)
                assert prod.code == 0 and phase.value == 1
            else:
                assert not commutes(a.code, b.code, d)


@pytest.mark.criterion(9)
@pytest.mark.parametrize("d", [2, 3, 4])
def test_fermionic_closures(d):
    quad = fermion_generators("quadratic", d)
    assert lie_closure(quad).dim == d * (2 * d - 1)
    rep = centraliser(quad)
    assert rep.centraliser_dim == 1 and rep.commutant_dim == 2
    assert lie_closure(fermion_generators("quadratic-linear", d)).dim == d * (2 * d + 1)
    assert lie_closure(hubbard_spinless(d).generators()).dim == d * d


@pytest.mark.criterion(9)
def test_spinful_hubbard():
    assert lie_closure(hubbard_spinful(2).generators()).dim == 7


# ------------------------------------------------------------------ 10


@pytest.mark.criterion(10)
@pytest.mark.parametrize("N", [2, 4, 8, 16])
def test_commutation_matrix_spectrum(N):
    eig = np.linalg.eigvalsh(commutation_matrix(N))
    assert np.all(np.abs(np.abs(eig) - 1) < EIG_TOL)
    assert int(np.sum(np.abs(eig - 1) < EIG_TOL)) == N * (N + 1) // 2
    assert int(np.sum(np.abs(eig + 1) < EIG_TOL)) == N * (N - 1) // 2


@pytest.mark.criterion(10)
@pytest.mark.parametrize(
    "family,size",
    [("xx-one-end", 2), ("xx-first-two-sites", 2), ("xx-first-two-sites", 3), ("example-ex1", None),
     ("example-counter2", None), ("appendixA-zzz", None), ("xx-second-site", 3)],
)
def test_swap_in_tensor_square_commutant(family, size):
    g = gens(family, size)
    basis = tensor_square_commutant(g)
    k = commutation_matrix(2 ** g[0].n)
    a = np.column_stack([b.reshape(-1) for b in basis])
    coeffs, *_ = np.linalg.lstsq(a, k.reshape(-1), rcond=None)
    assert np.linalg.norm(a @ coeffs - k.reshape(-1)) < EIG_TOL


# ------------------------------------------------------------------ 11
# 200 cases each across five properties.

CASES = settings(max_examples=200, deadline=None)


@pytest.mark.criterion(11)
@CASES
@given(expr_tuples(3))
def test_jacobi(triple):
    a, b, c = triple
    total = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))
    assert total.is_zero()


def generator_sets(max_n=3):
    return st.integers(1, max_n).flatmap(lambda n: st.lists(pauli_exprs(n=n, max_terms=2), min_size=1, max_size=3))


@pytest.mark.criterion(11)
@CASES
@given(generator_sets())
def test_closure_idempotent(g):
    basis = lie_closure(g)
    assert lie_closure(list(basis.elements)).dim == basis.dim


@pytest.mark.criterion(11)
@CASES
@given(generator_sets())
def test_closure_certificate(g):
    assert closure_certificate(lie_closure(g))


@pytest.mark.criterion(11)
@CASES
@given(generator_sets())
def test_centraliser_commutes_with_closure(g):
    elements = list(lie_closure(g).elements)
    for s in centraliser(g).centraliser_basis:
        assert commutes_with_all(s, elements)


LOCAL = ("X", "Y", "Z")


@st.composite
def local_systems(draw):
    """Qubit systems with pair couplings in the drift and single-site controls."""
    n = draw(st.integers(2, 3))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=0, max_size=len(pairs), unique=True))
    drift = PauliExpr.zero(n)
    for i, j in chosen:
        letters = ["I"] * n
        letters[i], letters[j] = draw(st.sampled_from(LOCAL)), draw(st.sampled_from(LOCAL))
        drift = drift + parse_expr("".join(letters))
    sites = draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=2 * n))
    controls = []
    for site in sites:
        letters = ["I"] * n
        letters[site] = draw(st.sampled_from(LOCAL))
        controls.append(parse_expr("".join(letters)))
    if drift.is_zero():
        drift = controls.pop()
    return ControlSystem(n, drift, tuple(controls))


@pytest.mark.criterion(11)
@CASES
@given(local_systems())
def test_connectivity_chain(system):
    basis = lie_closure(system.generators())
    direct = is_directly_connected(system, basis)
    general = is_connected_general(system, basis)
    weak = is_weakly_connected(system, basis)
    assert (not direct or general) and (not general or weak)
