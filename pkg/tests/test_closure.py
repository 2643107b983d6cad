import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import pauli_exprs
from liectrl.closure import (
    ClosureError,
    RationalEchelon,
    closure_certificate,
    lie_closure,
    lie_closure_dense,
    span_contains,
)
from liectrl.pauli import PauliExpr, bracket, parse_expr, to_matrix


def generator_sets(max_n: int = 3):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(pauli_exprs(n=n, max_terms=2), min_size=1, max_size=3)
    )


class TestEchelon:
    def test_add_and_contains(self):
        ech = RationalEchelon()
        assert ech.add({1: 1, 2: 1})
        assert ech.add({2: 1})
        assert not ech.add({1: 3, 2: -2})
        assert ech.contains({1: 1})
        assert not ech.contains({3: 1})
        assert sorted(ech.pivots()) == [1, 2]


class TestLieClosure:
    def test_su2(self):
        basis = lie_closure([PauliExpr.term("X"), PauliExpr.term("Y")])
        assert basis.dim == 3 and basis.closed

    def test_commuting_generators(self):
        basis = lie_closure([parse_expr("ZI"), parse_expr("IZ"), parse_expr("ZZ")])
        assert basis.dim == 3

    def test_identity_part_dropped(self):
        basis = lie_closure([parse_expr("II + XI"), parse_expr("YI")])
        assert basis.dim == 3

    def test_dim_cap(self):
        basis = lie_closure([parse_expr("XI"), parse_expr("YI"), parse_expr("XX")], dim_cap=4)
        assert basis.dim == 4 and basis.capped and not basis.closed

    def test_errors(self):
        with pytest.raises(ClosureError):
            lie_closure([])
        with pytest.raises(ClosureError):
            lie_closure([parse_expr("X"), parse_expr("XX")])
        with pytest.raises(ClosureError):
            lie_closure([parse_expr("X")], strategy="bogus")

    def test_full_su4(self):
        gens = [parse_expr(s) for s in ("XI", "YI", "IX", "IY", "ZZ")]
        assert lie_closure(gens).dim == 15

    def test_reduced_rows_independent_of_order(self):
        gens = [parse_expr(s) for s in ("XX + YY", "XI", "YI")]
        a = lie_closure(gens).reduced_rows()
        b = lie_closure(gens[::-1]).reduced_rows()
        assert a == b

    @given(generator_sets())
    @settings(max_examples=60)
    def test_strategies_agree(self, gens):
        assert lie_closure(gens).dim == lie_closure(gens, strategy="full").dim

    @given(generator_sets())
    @settings(max_examples=60)
    def test_idempotent_and_certified(self, gens):
        basis = lie_closure(gens)
        assert closure_certificate(basis)
        assert lie_closure(list(basis.elements)).dim == basis.dim
        for g in gens:
            assert span_contains(basis, g)

    def test_span_contains_rejects_identity_and_mismatch(self):
        basis = lie_closure([parse_expr("XI"), parse_expr("YI")])
        assert not span_contains(basis, parse_expr("II"))
        assert span_contains(basis, parse_expr("ZI"))
        with pytest.raises(ValueError):
            span_contains(basis, parse_expr("X"))


class TestDenseClosure:
    @pytest.mark.parametrize("labels,dim", [(("XI", "YI", "XX"), 6), (("XI", "YI", "IX", "IY", "ZZ"), 15)])
    def test_matches_exact(self, labels, dim):
        gens = [parse_expr(s) for s in labels]
        dense = lie_closure_dense([to_matrix(g) for g in gens])
        assert dense.dense and dense.dim == dim == lie_closure(gens).dim
        assert span_contains(dense, to_matrix(bracket(gens[0], gens[-1])))

    def test_shape_mismatch(self):
        with pytest.raises(ClosureError):
            lie_closure_dense([np.eye(2), np.eye(3)])
