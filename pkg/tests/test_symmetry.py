import numpy as np
import pytest

from liectrl.closure import lie_closure
from liectrl.decide import ModelSpec, make_model
from liectrl.matrep import ResourceCapError, commutation_matrix
from liectrl.pauli import PauliExpr, bracket, parse_expr, to_matrix
from liectrl.symmetry import (
    EXACT_QUBIT_CAP,
    _tensor_square_dense_dim,
    alt_sym_commutant_dims,
    centraliser,
    swap_expr,
    tensor_square_commutant,
    tensor_square_commutant_dim,
)


def model_gens(family, size):
    return make_model(ModelSpec(family, size)).generators()


class TestCentraliser:
    def test_irreducible_chain(self):
        rep = centraliser(model_gens("xx-one-end", 3))
        assert rep.centraliser_dim == 0 and rep.commutant_dim == 1 and rep.irreducible and rep.exact

    def test_local_z_has_symmetries(self):
        rep = centraliser([parse_expr("ZI")])
        # span{ZI, IX, IY, IZ, ZX, ZY, ZZ}
        assert rep.centraliser_dim == 7
        for b in rep.centraliser_basis:
            assert bracket(b, parse_expr("ZI")).is_zero()

    def test_two_local_z(self):
        assert centraliser([parse_expr("ZI"), parse_expr("IZ")]).centraliser_dim == 3

    def test_local_example_is_irreducible(self):
        assert centraliser(model_gens("example-ex1", None)).centraliser_dim == 0

    def test_second_site_n3_is_reducible(self):
        rep = centraliser(model_gens("xx-second-site", 3))
        assert rep.centraliser_dim >= 1 and not rep.irreducible

    def test_dense_path_agrees(self):
        gens = [parse_expr("ZI"), parse_expr("XX")]
        exact = centraliser(gens)
        dense = centraliser([to_matrix(g) for g in gens])
        assert not dense.exact
        assert dense.centraliser_dim == exact.centraliser_dim
        assert dense.commutant_dim == exact.commutant_dim

    def test_centraliser_commutes_with_closure(self):
        gens = model_gens("xx-second-site", 3)
        basis = lie_closure(gens)
        for s in centraliser(gens).centraliser_basis:
            for e in basis.elements:
                assert bracket(s, e).is_zero()

    def test_exact_cap(self):
        n = EXACT_QUBIT_CAP + 1
        with pytest.raises(ResourceCapError):
            centraliser([PauliExpr.term("X" * n)])

    def test_json(self):
        data = centraliser([parse_expr("ZI")]).to_json()
        assert data["centraliser_dim"] == 7 and len(data["centraliser_basis"]) == 7


class TestTensorSquare:
    @pytest.mark.parametrize(
        "family,size,dim",
        [("xx-first-two-sites", 2, 2), ("xx-first-two-sites", 3, 2), ("xx-one-end", 2, 3), ("xx-one-end", 3, 4),
         ("xx-two-ends", 3, 3), ("xx-second-site", 3, 11)],
    )
    def test_exact_and_block_paths_agree(self, family, size, dim):
        gens = model_gens(family, size)
        assert tensor_square_commutant_dim(gens) == dim
        assert _tensor_square_dense_dim([to_matrix(g) for g in gens], 1e-9) == dim

    def test_block_path_beyond_exact_cap(self):
        # so(9) spinor: its square splits into five forms; so(10) chiral spinor: 10 + 120 + 126
        assert tensor_square_commutant_dim(model_gens("xx-one-end", 4)) == 5
        assert tensor_square_commutant_dim(model_gens("xx-two-ends", 4)) == 3
        assert tensor_square_commutant_dim(model_gens("xx-first-two-sites", 4)) == 2

    def test_single_qubit(self):
        assert tensor_square_commutant_dim([parse_expr("X"), parse_expr("Y")]) == 2

    def test_local_example(self):
        gens = model_gens("example-ex1", None)
        assert tensor_square_commutant_dim(gens) == 4
        assert alt_sym_commutant_dims(gens) == (2, 2)

    def test_cap_refusal(self):
        with pytest.raises(ResourceCapError):
            tensor_square_commutant_dim(model_gens("xx-one-end", 3), cap=4)

    def test_swap_is_in_commutant(self):
        gens = model_gens("xx-one-end", 2)
        k = commutation_matrix(4)
        comm = np.column_stack([c.reshape(-1) for c in tensor_square_commutant(gens)])
        coeff, *_ = np.linalg.lstsq(comm, k.reshape(-1), rcond=None)
        assert np.linalg.norm(comm @ coeff - k.reshape(-1)) < 1e-8

    def test_swap_expr_matches_commutation_matrix(self):
        n = 2
        k = commutation_matrix(2**n)
        traceless = k - np.eye(4**n) / 2**n
        np.testing.assert_allclose(2j * to_matrix(swap_expr(n)), traceless, atol=1e-12)

    def test_alt_sym_split_full_control(self):
        # su(N) acts irreducibly on both the alternating and the symmetric square
        assert alt_sym_commutant_dims(model_gens("xx-first-two-sites", 2)) == (1, 1)
