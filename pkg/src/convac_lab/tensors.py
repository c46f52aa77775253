"""Dense tensors and factored containers with exact reconstruction.

Full tensors are plain ``numpy.ndarray`` objects. Two factored forms are
provided: :class:`CpFactors`, a weighted sum of rank-1 terms, and
:class:`HtFactors`, a balanced binary-tree format whose node count halves
per level. Either container can be marked *probabilistic*, which constrains
every weight vector to the probability simplex so that reconstructions are
joint probability tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from . import backend

SIMPLEX_TOL = 1e-12
MASS_TOL = 1e-10


def _frozen_array(values, dtype=np.float64) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    if not np.all(np.isfinite(arr)):
        raise ValueError("entries must be finite")
    arr.setflags(write=False)
    return arr


def validate_simplex(vector, tol: float = SIMPLEX_TOL) -> bool:
    """True when every entry is >= -tol and the total is 1 within tol."""
    v = np.asarray(vector, dtype=np.float64)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("simplex check needs a nonempty 1-D vector")
    return bool(v.min() >= -tol and abs(v.sum() - 1.0) <= tol)


def _require_simplex(vector, what: str, tol: float = SIMPLEX_TOL) -> None:
    if not validate_simplex(vector, tol):
        raise ValueError(f"{what} must lie on the probability simplex (tol={tol})")


def outer_product(factors: Sequence[np.ndarray]) -> np.ndarray:
    """Outer product of 1-D vectors; entry (d_1..d_N) = prod_i factors[i][d_i]."""
    if len(factors) == 0:
        raise ValueError("need at least one factor vector")
    arrays = []
    for f in factors:
        a = np.asarray(f, dtype=np.float64)
        if a.ndim != 1 or a.size == 0:
            raise ValueError("factor vectors must be nonempty and 1-D")
        arrays.append(a)
    return reduce(np.multiply.outer, arrays)


@dataclass(frozen=True, eq=False)
class CpFactors:
    """Weighted sum of Z rank-1 terms for an order-N tensor.

    ``top`` holds the Z term weights; ``site[i, z]`` is the length-M vector
    contributed by mode i to term z, so the reconstruction is
    ``A[d_1..d_N] = sum_z top[z] * prod_i site[i, z, d_i]``. In
    probabilistic mode ``top`` and every ``site[i, z]`` must lie on the
    simplex, making the reconstruction a joint pmf.
    """

    top: np.ndarray
    site: np.ndarray
    probabilistic: bool = False

    def __post_init__(self):
        top = _frozen_array(self.top)
        site = _frozen_array(self.site)
        if top.ndim != 1 or top.size == 0:
            raise ValueError("top weights must be a nonempty vector")
        if site.ndim != 3:
            raise ValueError("site factors must have shape (n_modes, rank, mode_dim)")
        if site.shape[1] != top.shape[0]:
            raise ValueError(
                f"rank mismatch: top has {top.shape[0]} weights, "
                f"site factors have {site.shape[1]} terms"
            )
        if site.shape[0] == 0 or site.shape[2] == 0:
            raise ValueError("need at least one mode and a positive mode dimension")
        if self.probabilistic:
            _require_simplex(top, "top weight vector")
            for i in range(site.shape[0]):
                for z in range(site.shape[1]):
                    _require_simplex(site[i, z], f"site factor ({i}, {z})")
        object.__setattr__(self, "top", top)
        object.__setattr__(self, "site", site)

    @property
    def rank(self) -> int:
        return self.top.shape[0]

    @property
    def n_modes(self) -> int:
        return self.site.shape[0]

    @property
    def mode_dim(self) -> int:
        return self.site.shape[2]


@dataclass(frozen=True, eq=False)
class HtFactors:
    """Balanced binary-tree factored form of an order-N tensor, N = 2^L.

    ``levels[l]`` stacks the mixing vectors of tree level l as an array of
    shape (N / 2^l, r_l, r_{l-1}) with r_{-1} = M, the leaf dimension.
    ``top`` (length r_{L-1}) combines the two level-(L-1) blocks into the
    full tensor:

        block(l, i, g) = sum_a levels[l][i, g, a] *
                         block(l-1, 2i, a) (x) block(l-1, 2i+1, a)
        A = sum_a top[a] * block(L-1, 0, a) (x) block(L-1, 1, a)

    with block(-1, j, d) read as the unit vector e_d (so levels[0][j] holds
    plain length-M leaf vectors).
    """

    levels: tuple[np.ndarray, ...]
    top: np.ndarray
    probabilistic: bool = False

    def __post_init__(self):
        levels = tuple(_frozen_array(m) for m in self.levels)
        top = _frozen_array(self.top)
        if len(levels) == 0:
            raise ValueError("need at least one level of mixing vectors")
        n = levels[0].shape[0]
        if n < 2 or n & (n - 1) != 0:
            raise ValueError("number of modes must be a power of two (and >= 2)")
        if len(levels) != n.bit_length() - 1:
            raise ValueError(
                f"expected {n.bit_length() - 1} levels for {n} modes, got {len(levels)}"
            )
        prev_rank = levels[0].shape[2]  # leaf dimension M
        nodes = n
        for l, mats in enumerate(levels):
            if mats.ndim != 3:
                raise ValueError("each level must have shape (nodes, r_out, r_in)")
            if mats.shape[0] != nodes:
                raise ValueError(f"level {l} must hold {nodes} nodes, got {mats.shape[0]}")
            if l > 0 and mats.shape[2] != prev_rank:
                raise ValueError(
                    f"rank mismatch at level {l}: expected r_in={prev_rank}, got {mats.shape[2]}"
                )
            prev_rank = mats.shape[1]
            nodes //= 2
        if top.ndim != 1 or top.shape[0] != prev_rank:
            raise ValueError(f"top vector must have length r_[L-1]={prev_rank}")
        if self.probabilistic:
            _require_simplex(top, "top weight vector")
            for l, mats in enumerate(levels):
                for i in range(mats.shape[0]):
                    for g in range(mats.shape[1]):
                        _require_simplex(mats[i, g], f"weight vector (level {l}, node {i}, channel {g})")
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "top", top)

    @property
    def depth(self) -> int:
        return len(self.levels)

    @property
    def n_modes(self) -> int:
        return self.levels[0].shape[0]

    @property
    def mode_dim(self) -> int:
        return self.levels[0].shape[2]

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(m.shape[1] for m in self.levels)


def cp_reconstruct(factors: CpFactors) -> np.ndarray:
    """Dense tensor of shape (M,)*N from a rank-factored container."""
    flat = backend.cp_rank_one_sum(factors.top, factors.site)
    return flat.reshape((factors.mode_dim,) * factors.n_modes)


def ht_reconstruct(factors: HtFactors) -> np.ndarray:
    """Dense tensor of shape (M,)*N from a tree-factored container."""
    m = factors.mode_dim
    # blocks[i]: (r_l, m**2**l) matrix of the node's channel tensors, flattened
    blocks = [np.asarray(factors.levels[0][j]) for j in range(factors.n_modes)]
    for mats in factors.levels[1:]:
        paired = []
        for i in range(mats.shape[0]):
            left, right = blocks[2 * i], blocks[2 * i + 1]
            joined = np.einsum("ax,ay->axy", left, right).reshape(left.shape[0], -1)
            paired.append(mats[i] @ joined)
        blocks = paired
    full = np.einsum("a,ax,ay->xy", factors.top, blocks[0], blocks[1])
    return full.reshape((m,) * factors.n_modes)
