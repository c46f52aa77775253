import math

import numpy as np
import pytest

from convac_lab import (
    DensitySpec,
    MonotoneMap,
    density_from_config,
    differential_entropy,
    gaussian_density,
    gaussian_mixture_density,
    laplace_density,
    pushforward_entropy,
    sigmoid_entropy_shift,
    uniform_density,
)

from helpers import histogram_entropy, sigmoid

LN4 = math.log(4.0)
GAUSS_H = 0.5 * math.log(2 * math.pi * math.e)


class TestDifferentialEntropy:
    def test_uniform_unit(self):
        assert differential_entropy(uniform_density(0, 1)).value == pytest.approx(0.0, abs=1e-9)

    def test_uniform_two(self):
        assert differential_entropy(uniform_density(0, 2)).value == pytest.approx(
            math.log(2), abs=1e-9
        )

    def test_standard_normal_closed_form(self):
        est = differential_entropy(gaussian_density(0, 1))
        assert est.value == pytest.approx(GAUSS_H, abs=1e-4)
        assert est.error_bound <= 1e-6

    def test_scaled_normal_closed_form(self):
        est = differential_entropy(gaussian_density(1, 0.5))
        assert est.value == pytest.approx(GAUSS_H + math.log(0.5), abs=1e-4)

    def test_laplace_closed_form(self):
        est = differential_entropy(laplace_density(0, 1))
        assert est.value == pytest.approx(1 + math.log(2), abs=1e-6)

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError, match="integrate to 1"):
            DensitySpec(pdf=lambda x: 2.0, support=(0.0, 1.0))

    def test_rejects_unbounded_support(self):
        with pytest.raises(ValueError, match="finite interval"):
            DensitySpec(pdf=lambda x: 1.0, support=(0.0, math.inf))


class TestPushforward:
    def test_relu_is_identity_on_nonnegative_support(self):
        d = uniform_density(0, 2)
        assert pushforward_entropy(d, "relu").value == differential_entropy(d).value

    def test_relu_rejects_support_crossing_zero(self):
        with pytest.raises(ValueError, match="nonnegative support"):
            pushforward_entropy(gaussian_density(0, 1), "relu")

    def test_sigmoid_shift_is_below_minus_log4(self):
        for d in (uniform_density(0, 1), gaussian_density(0, 1), laplace_density(0, 1)):
            shift = sigmoid_entropy_shift(d)
            assert shift.value <= -LN4 + 1e-9

    def test_sigmoid_equals_entropy_plus_shift(self):
        d = gaussian_density(0, 1)
        pushed = pushforward_entropy(d, "sigmoid")
        expected = differential_entropy(d).value + sigmoid_entropy_shift(d).value
        assert pushed.value == pytest.approx(expected, abs=1e-12)

    def test_sigmoid_against_monte_carlo(self):
        d = gaussian_density(0, 1)
        rng = np.random.default_rng(20240813)
        mc = histogram_entropy(sigmoid(d.sample(rng, 10**6)))
        assert pushforward_entropy(d, "sigmoid").value == pytest.approx(mc, abs=2e-3)

    def test_doubling_map_adds_log2(self):
        d = uniform_density(0, 1)
        double = MonotoneMap(fn=lambda x: 2 * x, derivative=lambda x: 2.0, name="double")
        assert pushforward_entropy(d, double).value == pytest.approx(math.log(2), abs=1e-6)

    def test_decreasing_map_allowed(self):
        d = uniform_density(0, 1)
        neg = MonotoneMap(fn=lambda x: -x, derivative=lambda x: -1.0, name="negate")
        assert pushforward_entropy(d, neg).value == pytest.approx(0.0, abs=1e-9)

    def test_rejects_non_monotone_map(self):
        d = gaussian_density(0, 1)
        square = MonotoneMap(fn=lambda x: x * x, derivative=lambda x: 2 * x, name="square")
        with pytest.raises(ValueError, match="monotone"):
            pushforward_entropy(d, square)

    def test_rejects_unknown_transform(self):
        with pytest.raises(ValueError, match="unknown transform"):
            pushforward_entropy(uniform_density(0, 1), "tanh")


class TestFamilies:
    def test_mixture_normalizes_and_samples(self):
        d = gaussian_mixture_density([0.4, 0.6], [-1.0, 1.25], [0.8, 0.5])
        samples = d.sample(np.random.default_rng(0), 10000)
        assert samples.shape == (10000,)
        assert differential_entropy(d).value > 0.0

    def test_mixture_rejects_bad_weights(self):
        with pytest.raises(ValueError, match="simplex"):
            gaussian_mixture_density([0.5, 0.6], [0.0, 1.0], [1.0, 1.0])

    def test_from_config(self):
        d = density_from_config({"family": "gaussian", "mean": 0.0, "std": 1.0})
        assert d.family == "gaussian"
        with pytest.raises(ValueError, match="unknown density family"):
            density_from_config({"family": "cauchy"})

    def test_laplace_truncation_keeps_mass_requirement(self):
        d = laplace_density(0, 1)
        lo, hi = d.support
        # tail mass beyond the support must be far below the 1e-9 budget
        assert math.exp(lo) / 1.0 < 1e-9 and math.exp(-hi) < 1e-9
