"""NumPy implementations of the hot kernels.

Signatures mirror the compiled ``_fastcore`` module; this is the backend of
record when the extension is unavailable (or forced via
``CONVAC_LAB_BACKEND=reference``).
"""

from __future__ import annotations

from functools import reduce

import numpy as np

NAME = "reference"


def entropy_nats(pmf) -> float:
    """-sum(p log p) with the 0 log 0 = 0 convention."""
    p = np.asarray(pmf, dtype=np.float64).ravel()
    nz = p[p > 0.0]
    return float(-(nz * np.log(nz)).sum())


def row_entropies_nats(rows) -> np.ndarray:
    """Entropy of each row of a 2-D array, in nats."""
    rows = np.asarray(rows, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(rows > 0.0, rows * np.log(np.where(rows > 0.0, rows, 1.0)), 0.0)
    return -terms.sum(axis=1)


def cp_forward_batch(top, site_mix, assignments) -> np.ndarray:
    """Factored evaluation of a rank-Z mixture on a batch of assignments.

    ``site_mix[i]`` is the (Z, S) per-term symbol-likelihood table of site i;
    the result is top @ prod_i site_mix[i][:, x_i] for each assignment row.
    """
    top = np.asarray(top, dtype=np.float64)
    assignments = np.asarray(assignments)
    z_prod = np.ones((top.shape[0], assignments.shape[0]))
    for i in range(assignments.shape[1]):
        z_prod *= site_mix[i][:, assignments[:, i]]
    return top @ z_prod


def ht_forward_batch(levels, top, bank, assignments) -> np.ndarray:
    """Bottom-up tree evaluation on a batch of assignments.

    ``bank`` is the (N, M, S) per-site component table, ``levels[l]`` the
    (nodes, r_out, r_in) stack of mixing matrices feeding tree level l+1.
    """
    assignments = np.asarray(assignments)
    n_sites = assignments.shape[1]
    u = [bank[j][:, assignments[:, j]] for j in range(n_sites)]
    for mats in levels:
        u = [
            (mats[2 * i] @ u[2 * i]) * (mats[2 * i + 1] @ u[2 * i + 1])
            for i in range(len(u) // 2)
        ]
    return np.asarray(top, dtype=np.float64) @ u[0]


def cp_rank_one_sum(top, site_factors) -> np.ndarray:
    """Flattened sum of weighted rank-1 outer products.

    ``site_factors`` has shape (N, Z, M); term z contributes
    top[z] * outer(site_factors[0, z], ..., site_factors[N-1, z]).
    """
    top = np.asarray(top, dtype=np.float64)
    site_factors = np.asarray(site_factors, dtype=np.float64)
    n_modes = site_factors.shape[0]
    out = np.zeros((site_factors.shape[2],) * n_modes)
    for z in range(top.shape[0]):
        out += top[z] * reduce(np.multiply.outer, list(site_factors[:, z, :]))
    return out.ravel()
