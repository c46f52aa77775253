"""Exact Shannon quantities on finite distributions.

Everything here is computed by direct summation over explicit probability
tables, so the classic identities (conditioning reduces entropy,
subadditivity, the two mutual-information formulas, additivity over
independent products) hold to floating-point accuracy and are asserted as
such in the test suite. Values are in nats unless a base is requested.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from . import backend
from .tensors import MASS_TOL, _frozen_array

LN2 = math.log(2.0)

_BASES = ("nats", "bits")


def _convert(value_nats: float, base: str) -> float:
    if base == "nats":
        return value_nats
    if base == "bits":
        return value_nats / LN2
    raise ValueError(f"unknown base {base!r}; choose one of {_BASES}")


def _check_pmf(arr: np.ndarray, what: str) -> None:
    if arr.size == 0:
        raise ValueError(f"{what} must be nonempty")
    if arr.min() < -MASS_TOL:
        raise ValueError(f"{what} has negative entries (min={arr.min():g})")
    total = arr.sum()
    if abs(total - 1.0) > MASS_TOL:
        raise ValueError(f"{what} must sum to 1 within {MASS_TOL:g} (got {total!r})")


@dataclass(frozen=True, eq=False)
class DiscreteDist:
    """A pmf over a finite outcome set."""

    pmf: np.ndarray

    def __post_init__(self):
        pmf = _frozen_array(self.pmf)
        if pmf.ndim != 1:
            raise ValueError("DiscreteDist takes a 1-D pmf; use JointDist for tables")
        _check_pmf(pmf, "pmf")
        object.__setattr__(self, "pmf", pmf)

    @property
    def n_outcomes(self) -> int:
        return self.pmf.shape[0]


@dataclass(frozen=True, eq=False)
class JointDist:
    """A joint pmf over one axis per variable."""

    pmf: np.ndarray

    def __post_init__(self):
        pmf = _frozen_array(self.pmf)
        if pmf.ndim == 0:
            raise ValueError("joint pmf needs at least one axis")
        _check_pmf(pmf, "joint pmf")
        object.__setattr__(self, "pmf", pmf)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.pmf.shape

    @property
    def n_axes(self) -> int:
        return self.pmf.ndim


Distribution = Union[DiscreteDist, JointDist]


@dataclass(frozen=True, eq=False)
class ConditionalFamily:
    """Distributions indexed by a finite condition with its own prior.

    ``members[j]`` is the distribution given condition value j; the prior
    weighs the members when computing the conditional entropy.
    """

    prior: DiscreteDist
    members: tuple[Distribution, ...]

    def __post_init__(self):
        members = tuple(self.members)
        if len(members) != self.prior.n_outcomes:
            raise ValueError(
                f"{len(members)} members for a prior over {self.prior.n_outcomes} values"
            )
        shapes = {np.shape(m.pmf) for m in members}
        if len(shapes) != 1:
            raise ValueError(f"members must share one shape, got {sorted(shapes)}")
        object.__setattr__(self, "members", members)

    @property
    def n_conditions(self) -> int:
        return self.prior.n_outcomes

    def member_matrix(self) -> np.ndarray:
        """Members stacked as rows of a (conditions, outcomes) matrix."""
        return np.ascontiguousarray([np.ravel(m.pmf) for m in self.members])


def entropy(dist: DiscreteDist, base: str = "nats") -> float:
    """Shannon entropy -sum(p log p), with 0 log 0 = 0."""
    return _convert(backend.entropy_nats(dist.pmf), base)


def joint_entropy(joint: JointDist, base: str = "nats") -> float:
    """Entropy of the flattened joint table."""
    return _convert(backend.entropy_nats(np.ravel(joint.pmf)), base)


def conditional_entropy(family: ConditionalFamily, base: str = "nats") -> float:
    """Prior-weighted average of the member entropies."""
    member_h = backend.row_entropies_nats(family.member_matrix())
    return _convert(float(family.prior.pmf @ member_h), base)


def marginalize(joint: JointDist, keep_axes: Sequence[int]) -> JointDist:
    """Sum out every axis not listed in ``keep_axes`` (original order kept)."""
    requested = [int(a) for a in keep_axes]
    if not requested:
        raise ValueError("keep_axes must be nonempty")
    if len(set(requested)) != len(requested):
        raise ValueError("keep_axes must not repeat axes")
    axes = sorted(requested)
    if axes[0] < 0 or axes[-1] >= joint.n_axes:
        raise ValueError(f"keep_axes out of range for a {joint.n_axes}-axis joint")
    drop = tuple(a for a in range(joint.n_axes) if a not in axes)
    return JointDist(joint.pmf.sum(axis=drop)) if drop else joint


def product_joint(factors: Sequence[DiscreteDist]) -> JointDist:
    """Independent joint of the given marginals (entropies add exactly)."""
    if len(factors) == 0:
        raise ValueError("need at least one factor")
    pmf = factors[0].pmf
    for f in factors[1:]:
        pmf = np.multiply.outer(pmf, f.pmf)
    return JointDist(pmf)


def mutual_information(joint: JointDist, split: int = 1, base: str = "nats") -> float:
    """I(X;Y) = sum p(x,y) log(p(x,y) / (p(x) p(y))).

    Axes before ``split`` form X, the rest form Y (grouped axes allowed).
    The test suite checks this against H(X) - H(X|Y) computed independently.
    """
    if not 0 < split < joint.n_axes:
        raise ValueError("split must leave at least one axis on each side")
    nx = int(np.prod(joint.shape[:split]))
    ny = int(np.prod(joint.shape[split:]))
    p = joint.pmf.reshape(nx, ny)
    px = p.sum(axis=1)
    py = p.sum(axis=0)
    mask = p > 0.0
    ratio = p[mask] / (np.outer(px, py)[mask])
    value = float((p[mask] * np.log(ratio)).sum())
    return _convert(value, base)


def condition_on_axes(joint: JointDist, condition_axes: Sequence[int]) -> ConditionalFamily:
    """Family of conditionals p(rest | condition axes), prior = their marginal.

    Condition values with zero marginal probability are not representable as
    conditional distributions and are rejected.
    """
    cond = sorted(set(int(a) for a in condition_axes))
    if not cond or cond[0] < 0 or cond[-1] >= joint.n_axes:
        raise ValueError("condition_axes must be a nonempty subset of the axes")
    if len(cond) == joint.n_axes:
        raise ValueError("at least one axis must remain unconditioned")
    keep = [a for a in range(joint.n_axes) if a not in cond]
    moved = np.moveaxis(joint.pmf, cond, range(len(cond)))
    table = moved.reshape(int(np.prod([joint.shape[a] for a in cond])), -1)
    prior = table.sum(axis=1)
    if prior.min() <= 0.0:
        raise ValueError("cannot condition on a zero-probability value")
    rest_shape = tuple(joint.shape[a] for a in keep)
    members = tuple(JointDist((row / row.sum()).reshape(rest_shape)) for row in table)
    return ConditionalFamily(prior=DiscreteDist(prior), members=members)
