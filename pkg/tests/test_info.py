import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from convac_lab import (
    ConditionalFamily,
    DiscreteDist,
    JointDist,
    condition_on_axes,
    conditional_entropy,
    entropy,
    joint_entropy,
    marginalize,
    mutual_information,
    product_joint,
)

from helpers import brute_entropy, random_joint

LN2 = math.log(2.0)


class TestEntropy:
    def test_deterministic_is_zero(self):
        assert entropy(DiscreteDist([1.0, 0.0, 0.0])) == 0.0

    def test_zero_log_zero_convention(self):
        # explicit zeros contribute nothing
        with_zeros = entropy(DiscreteDist([0.5, 0.5, 0.0, 0.0]))
        without = entropy(DiscreteDist([0.5, 0.5]))
        assert with_zeros == without == pytest.approx(LN2, abs=1e-15)

    def test_uniform_four(self):
        assert entropy(DiscreteDist([0.25] * 4)) == pytest.approx(math.log(4), abs=1e-12)

    def test_bits_conversion(self):
        # hand computation: 0.5*1 + 0.25*2 + 0.25*2 = 1.5 bits
        d = DiscreteDist([0.5, 0.25, 0.25])
        assert entropy(d, base="bits") == pytest.approx(1.5, abs=1e-12)
        assert entropy(d) == pytest.approx(1.5 * LN2, abs=1e-12)

    def test_rejects_unknown_base(self):
        with pytest.raises(ValueError):
            entropy(DiscreteDist([1.0]), base="hartleys")

    def test_rejects_invalid_pmf(self):
        with pytest.raises(ValueError):
            DiscreteDist([0.5, 0.4])
        with pytest.raises(ValueError):
            DiscreteDist([1.5, -0.5])

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.floats(1e-9, 1.0), min_size=1, max_size=12))
    def test_bounds(self, raw):
        p = np.asarray(raw) / np.sum(raw)
        p = p / p.sum()
        h = entropy(DiscreteDist(p))
        assert -1e-12 <= h <= math.log(len(raw)) + 1e-12


class TestJointEntropy:
    def test_two_fair_coins(self):
        j = JointDist(np.full((2, 2), 0.25))
        assert joint_entropy(j) == pytest.approx(2 * LN2, abs=1e-12)

    def test_perfectly_correlated_pair(self):
        j = JointDist([[0.5, 0.0], [0.0, 0.5]])
        assert joint_entropy(j) == pytest.approx(LN2, abs=1e-12)

    def test_equals_flattened_entropy(self):
        j = random_joint(np.random.default_rng(0), (3, 3))
        assert joint_entropy(j) == pytest.approx(brute_entropy(j.pmf), abs=1e-12)


class TestConditionalEntropy:
    def test_identical_members(self):
        member = DiscreteDist([0.25, 0.75])
        fam = ConditionalFamily(DiscreteDist([0.3, 0.7]), (member, member))
        assert conditional_entropy(fam) == pytest.approx(entropy(member), abs=1e-14)

    def test_deterministic_members(self):
        fam = ConditionalFamily(
            DiscreteDist([0.5, 0.5]),
            (DiscreteDist([1.0, 0.0]), DiscreteDist([0.0, 1.0])),
        )
        assert conditional_entropy(fam) == 0.0

    def test_hand_value(self):
        fam = ConditionalFamily(
            DiscreteDist([0.5, 0.5]),
            (DiscreteDist([1.0, 0.0]), DiscreteDist([0.5, 0.5])),
        )
        assert conditional_entropy(fam) == pytest.approx(0.5 * LN2, abs=1e-12)

    def test_rejects_shape_mismatch(self):
        with pytest.raises(ValueError):
            ConditionalFamily(
                DiscreteDist([0.5, 0.5]),
                (DiscreteDist([1.0, 0.0]), DiscreteDist([0.2, 0.3, 0.5])),
            )

    def test_rejects_count_mismatch(self):
        with pytest.raises(ValueError):
            ConditionalFamily(DiscreteDist([0.5, 0.5]), (DiscreteDist([1.0]),))


class TestMarginalize:
    def test_product_recovers_factor(self):
        x = DiscreteDist([0.2, 0.8])
        y = DiscreteDist([0.3, 0.3, 0.4])
        j = product_joint([x, y])
        assert_allclose(marginalize(j, [0]).pmf, x.pmf, atol=1e-15)
        assert_allclose(marginalize(j, [1]).pmf, y.pmf, atol=1e-15)

    def test_diagonal(self):
        j = JointDist([[0.5, 0.0], [0.0, 0.5]])
        assert_allclose(marginalize(j, [0]).pmf, [0.5, 0.5])

    def test_random_marginal_mass(self):
        j = random_joint(np.random.default_rng(1), (2, 2, 2))
        m = marginalize(j, [0, 2])
        assert m.shape == (2, 2)
        assert abs(m.pmf.sum() - 1.0) < 1e-12

    def test_rejects_bad_axes(self):
        j = random_joint(np.random.default_rng(2), (2, 2))
        with pytest.raises(ValueError):
            marginalize(j, [])
        with pytest.raises(ValueError):
            marginalize(j, [2])
        with pytest.raises(ValueError):
            marginalize(j, [0, 0])


class TestProductJoint:
    def test_two_fair_coins(self):
        j = product_joint([DiscreteDist([0.5, 0.5])] * 2)
        assert joint_entropy(j) == pytest.approx(2 * LN2, abs=1e-12)

    def test_single_factor_identity(self):
        d = DiscreteDist([0.1, 0.9])
        assert joint_entropy(product_joint([d])) == pytest.approx(entropy(d), abs=1e-15)

    def test_additivity_three_factors(self):
        rng = np.random.default_rng(3)
        factors = [DiscreteDist(rng.dirichlet(np.ones(k))) for k in (2, 3, 4)]
        total = joint_entropy(product_joint(factors))
        assert total == pytest.approx(sum(entropy(f) for f in factors), abs=1e-10)

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            product_joint([])


class TestMutualInformation:
    def test_independent_is_zero(self):
        j = product_joint([DiscreteDist([0.3, 0.7]), DiscreteDist([0.6, 0.4])])
        assert abs(mutual_information(j)) < 1e-14

    def test_determined_pair(self):
        j = JointDist([[0.5, 0.0], [0.0, 0.5]])
        assert mutual_information(j) == pytest.approx(LN2, abs=1e-12)

    def test_two_formulas_agree(self):
        j = random_joint(np.random.default_rng(4), (2, 3))
        direct = mutual_information(j)
        fam = condition_on_axes(j, [1])  # members p(x | y), prior p(y)
        hx = entropy(DiscreteDist(marginalize(j, [0]).pmf))
        assert direct == pytest.approx(hx - conditional_entropy(fam), abs=1e-12)

    def test_grouped_axes(self):
        j = random_joint(np.random.default_rng(5), (2, 2, 3))
        value = mutual_information(j, split=2)
        flat = JointDist(j.pmf.reshape(4, 3))
        assert value == pytest.approx(mutual_information(flat), abs=1e-14)

    def test_rejects_bad_split(self):
        j = random_joint(np.random.default_rng(6), (2, 2))
        with pytest.raises(ValueError):
            mutual_information(j, split=0)


class TestDefinitionProperties:
    """The four classic identities on random joints (seeded, 200 here;
    the acceptance suite runs 1000)."""

    def test_conditioning_does_not_increase_entropy(self):
        rng = np.random.default_rng(100)
        for _ in range(200):
            j = random_joint(rng, (rng.integers(2, 4), rng.integers(2, 4)))
            hx = entropy(DiscreteDist(marginalize(j, [0]).pmf))
            hxy = conditional_entropy(condition_on_axes(j, [1]))
            assert hxy <= hx + 1e-10

    def test_conditioning_equality_for_products(self):
        rng = np.random.default_rng(101)
        for _ in range(50):
            x = DiscreteDist(rng.dirichlet(np.ones(3)))
            y = DiscreteDist(rng.dirichlet(np.ones(2)))
            j = product_joint([x, y])
            hxy = conditional_entropy(condition_on_axes(j, [1]))
            assert abs(hxy - entropy(x)) < 1e-10

    def test_subadditivity(self):
        rng = np.random.default_rng(102)
        for _ in range(200):
            n = int(rng.integers(2, 5))
            shape = tuple(int(rng.integers(2, 4)) for _ in range(n))
            j = random_joint(rng, shape)
            marginal_sum = sum(
                entropy(DiscreteDist(marginalize(j, [a]).pmf)) for a in range(n)
            )
            assert joint_entropy(j) <= marginal_sum + 1e-10

    def test_subadditivity_equality_for_independent(self):
        rng = np.random.default_rng(103)
        for _ in range(50):
            factors = [DiscreteDist(rng.dirichlet(np.ones(2))) for _ in range(3)]
            j = product_joint(factors)
            assert abs(joint_entropy(j) - sum(entropy(f) for f in factors)) < 1e-10

    def test_mutual_information_consistency(self):
        rng = np.random.default_rng(104)
        for _ in range(200):
            j = random_joint(rng, (rng.integers(2, 4), rng.integers(2, 4)))
            direct = mutual_information(j)
            hx = entropy(DiscreteDist(marginalize(j, [0]).pmf))
            hxy = conditional_entropy(condition_on_axes(j, [1]))
            assert direct == pytest.approx(hx - hxy, abs=1e-10)
            assert direct >= -1e-12
            swapped = JointDist(j.pmf.T)
            assert mutual_information(swapped) == pytest.approx(direct, abs=1e-12)
