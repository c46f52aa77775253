"""Shared test oracles, independent of the library paths they check."""

from __future__ import annotations

import math

import numpy as np

from convac_lab import CpFactors, HtFactors, JointDist


def expand_tree_to_rank_terms(factors: HtFactors) -> CpFactors:
    """Brute-force expansion of a tree-factored tensor into rank-1 terms.

    Walks every channel path through the tree and collects one
    (weight, leaf vectors) term per path, yielding an unconstrained
    rank-factored container whose reconstruction must match the tree's.
    """

    def node_terms(layer: int, index: int, channel: int):
        if layer == 0:
            return [(1.0, [np.asarray(factors.levels[0][index][channel])])]
        terms = []
        weights = factors.levels[layer][index][channel]
        for alpha, w in enumerate(weights):
            for wl, vl in node_terms(layer - 1, 2 * index, alpha):
                for wr, vr in node_terms(layer - 1, 2 * index + 1, alpha):
                    terms.append((w * wl * wr, vl + vr))
        return terms

    depth = factors.depth
    terms = []
    for alpha, w in enumerate(factors.top):
        for wl, vl in node_terms(depth - 1, 0, alpha):
            for wr, vr in node_terms(depth - 1, 1, alpha):
                terms.append((w * wl * wr, vl + vr))
    top = np.array([t[0] for t in terms])
    site = np.array([[t[1][i] for t in terms] for i in range(factors.n_modes)])
    return CpFactors(top=top, site=site, probabilistic=False)


def random_joint(rng: np.random.Generator, shape) -> JointDist:
    """Flat-Dirichlet joint over the given outcome grid."""
    flat = rng.dirichlet(np.ones(int(np.prod(shape))))
    return JointDist(flat.reshape(shape))


def sigmoid(x):
    return 1.0 / (1.0 + np.exp(-np.asarray(x, dtype=np.float64)))


def histogram_entropy(samples) -> float:
    """Plug-in differential entropy from a histogram with ceil(n^(1/3)) bins."""
    samples = np.asarray(samples)
    bins = math.ceil(len(samples) ** (1.0 / 3.0))
    counts, edges = np.histogram(samples, bins=bins)
    widths = np.diff(edges)
    p = counts / counts.sum()
    nz = p > 0
    return float(-(p[nz] * np.log(p[nz] / widths[nz])).sum())


def brute_entropy(pmf) -> float:
    """Entropy by direct python-loop summation (independent of the kernels)."""
    total = 0.0
    for v in np.ravel(pmf):
        if v > 0.0:
            total -= v * math.log(v)
    return total
