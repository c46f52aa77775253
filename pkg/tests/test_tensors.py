import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from convac_lab import (
    CpFactors,
    HtFactors,
    cp_reconstruct,
    ht_reconstruct,
    outer_product,
    validate_simplex,
)

from helpers import expand_tree_to_rank_terms


def random_cp(rng, n_modes, rank, dim, probabilistic=False):
    if probabilistic:
        top = rng.dirichlet(np.ones(rank))
        site = rng.dirichlet(np.ones(dim), size=(n_modes, rank))
    else:
        top = rng.standard_normal(rank)
        site = rng.standard_normal((n_modes, rank, dim))
    return CpFactors(top=top, site=site, probabilistic=probabilistic)


def random_ht(rng, depth, dim, ranks, probabilistic=False):
    n = 2**depth
    levels = []
    in_dim = dim
    nodes = n
    for r in ranks:
        if probabilistic:
            levels.append(rng.dirichlet(np.ones(in_dim), size=(nodes, r)))
        else:
            levels.append(rng.standard_normal((nodes, r, in_dim)))
        in_dim = r
        nodes //= 2
    top = rng.dirichlet(np.ones(ranks[-1])) if probabilistic else rng.standard_normal(ranks[-1])
    return HtFactors(levels=tuple(levels), top=top, probabilistic=probabilistic)


class TestOuterProduct:
    def test_indicator(self):
        assert_allclose(outer_product([[1, 0], [0, 1]]), [[0, 1], [0, 0]])

    def test_identity_case(self):
        assert_allclose(outer_product([[1], [1], [1]]), np.ones((1, 1, 1)))

    def test_hand_enumeration(self):
        out = outer_product([[0.5, 0.5], [0.5, 0.5]])
        assert_allclose(out, np.full((2, 2), 0.25))
        assert abs(out.sum() - 1.0) < 1e-12

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            outer_product([])
        with pytest.raises(ValueError):
            outer_product([[1.0], []])

    @settings(max_examples=50, deadline=None)
    @given(
        st.lists(
            st.lists(st.floats(-2, 2, allow_nan=False), min_size=1, max_size=4),
            min_size=1,
            max_size=4,
        )
    )
    def test_total_sum_is_product_of_sums(self, vectors):
        out = outer_product(vectors)
        expected = math.prod(sum(v) for v in vectors)
        assert abs(out.sum() - expected) < 1e-12 * max(1.0, abs(expected))


class TestValidateSimplex:
    @pytest.mark.parametrize(
        "vector,ok",
        [([0.5, 0.5], True), ([1.0], True), ([0.6, 0.6], False), ([-0.1, 1.1], False)],
    )
    def test_cases(self, vector, ok):
        assert validate_simplex(vector, 1e-12) is ok

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            validate_simplex([])


class TestCpReconstruct:
    def test_rank_one_indicator(self):
        f = CpFactors(top=[1.0], site=[[[1.0, 0.0]], [[0.0, 1.0]]])
        assert_allclose(cp_reconstruct(f), [[0, 1], [0, 0]])

    def test_convexity_of_identical_terms(self):
        uniform = [[0.5, 0.5], [0.5, 0.5]]
        f = CpFactors(top=[0.5, 0.5], site=[uniform, uniform], probabilistic=True)
        assert_allclose(cp_reconstruct(f), np.full((2, 2), 0.25))

    def test_probabilistic_mass(self):
        rng = np.random.default_rng(5)
        f = random_cp(rng, 4, 3, 2, probabilistic=True)
        tensor = cp_reconstruct(f)
        assert tensor.min() >= 0.0
        assert abs(tensor.sum() - 1.0) < 1e-12

    def test_linearity_in_terms(self):
        rng = np.random.default_rng(6)
        f1 = random_cp(rng, 3, 2, 2)
        f2 = random_cp(rng, 3, 3, 2)
        combined = CpFactors(
            top=np.concatenate([f1.top, f2.top]),
            site=np.concatenate([f1.site, f2.site], axis=1),
        )
        assert_allclose(
            cp_reconstruct(combined), cp_reconstruct(f1) + cp_reconstruct(f2), atol=1e-12
        )

    def test_rejects_inconsistent_rank(self):
        with pytest.raises(ValueError, match="rank mismatch"):
            CpFactors(top=[1.0, 0.0], site=[[[1.0, 0.0]]])

    def test_rejects_bad_simplex(self):
        with pytest.raises(ValueError, match="simplex"):
            CpFactors(top=[0.6, 0.6], site=[[[1, 0], [0, 1]]] , probabilistic=True)


class TestHtReconstruct:
    def test_degenerate_rank_one_tree(self):
        f = HtFactors(levels=(np.array([[[1.0, 0.0]], [[0.0, 1.0]]]),), top=[1.0])
        assert_allclose(ht_reconstruct(f), [[0, 1], [0, 0]])

    def test_one_hot_mixing_selects_single_branch(self):
        # every weight one-hot on channel 0: tensor = outer product of the
        # four selected leaf vectors
        rng = np.random.default_rng(7)
        leaves = rng.dirichlet(np.ones(2), size=(4, 2))
        level1 = np.zeros((2, 2, 2))
        level1[:, :, 0] = 1.0
        f = HtFactors(
            levels=(leaves, level1),
            top=[1.0, 0.0],
            probabilistic=True,
        )
        expected = outer_product([leaves[j][0] for j in range(4)])
        assert_allclose(ht_reconstruct(f), expected, atol=1e-15)

    def test_probabilistic_mass(self):
        rng = np.random.default_rng(8)
        f = random_ht(rng, 3, 2, (2, 3, 2), probabilistic=True)
        tensor = ht_reconstruct(f)
        assert tensor.min() >= 0.0
        assert abs(tensor.sum() - 1.0) < 1e-10

    @pytest.mark.parametrize(
        "depth,dim,ranks",
        [
            (1, 2, (2,)),
            (1, 4, (3,)),
            (2, 2, (2, 2)),
            (2, 3, (2, 3)),
            (2, 4, (3, 2)),
            (3, 2, (2, 3, 2)),
        ],
    )
    @pytest.mark.parametrize("probabilistic", [False, True])
    def test_matches_rank_expansion(self, depth, dim, ranks, probabilistic):
        # all M**N <= 4096 here
        rng = np.random.default_rng(depth * 100 + dim * 10 + len(ranks))
        f = random_ht(rng, depth, dim, ranks, probabilistic=probabilistic)
        expanded = expand_tree_to_rank_terms(f)
        assert_allclose(cp_reconstruct(expanded), ht_reconstruct(f), atol=1e-12)

    def test_rejects_non_power_of_two(self):
        rng = np.random.default_rng(9)
        with pytest.raises(ValueError, match="power of two"):
            HtFactors(levels=(rng.standard_normal((3, 2, 2)),), top=[1.0, 0.0])

    def test_rejects_rank_mismatch(self):
        rng = np.random.default_rng(10)
        with pytest.raises(ValueError, match="rank mismatch"):
            HtFactors(
                levels=(
                    rng.standard_normal((4, 2, 2)),
                    rng.standard_normal((2, 2, 3)),
                ),
                top=[1.0, 0.0],
            )

    def test_arrays_are_immutable(self):
        f = CpFactors(top=[1.0], site=[[[1.0, 0.0]]])
        with pytest.raises(ValueError):
            f.top[0] = 2.0
