"""Generative mixture models over a finite alphabet in two tensor formats.

A model assigns each of N sites a symbol from an alphabet of size S by
first drawing latent mixture components and then drawing each site's symbol
from the selected component. The component-assignment prior is stored in
factored form: a rank-Z sum of products (:class:`CpModel`, a shallow
mixture-of-products) or a balanced binary tree (:class:`HtModel`, repeated
mix-then-multiply fusions). Both support exact factored evaluation of any
outcome probability and exact enumeration of the full joint, which the test
suite plays against each other as independent routes.

Layer/channel conventions for the tree model: layer 0 holds the N sites
with channels indexed by the M components; layer l in 1..L holds N/2^l
nodes whose channels are indexed by the incoming rank r_{l-1}; the single
layer-L node is mixed by the top weight vector to give the output joint.
Channel priors default to the generative marginals induced by the model's
own weights (top vector at the root, pushed through each child's mixing
matrix on the way down); a per-layer override is available, but the
entropy-growth guarantees verified by the test suite hold only for the
induced priors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from . import backend
from .info import ConditionalFamily, DiscreteDist, JointDist
from .tensors import (
    CpFactors,
    HtFactors,
    _frozen_array,
    _require_simplex,
    cp_reconstruct,
    ht_reconstruct,
)

DEFAULT_ENUM_BUDGET = 2**20


class BudgetExceededError(RuntimeError):
    """An exact-enumeration request exceeds the configured cap."""


def _check_budget(size: int, budget: int, what: str) -> None:
    if size > budget:
        raise BudgetExceededError(
            f"{what} needs {size} entries, above the enumeration budget {budget}"
        )


@dataclass(frozen=True, eq=False)
class ComponentBank:
    """M categorical components over an alphabet of size S.

    ``table`` is (M, S) when all sites share the bank, or (N, M, S) for
    per-site components. Every row must be a valid pmf.
    """

    table: np.ndarray

    def __post_init__(self):
        table = _frozen_array(self.table)
        if table.ndim not in (2, 3):
            raise ValueError("bank table must be (M, S) or (N, M, S)")
        rows = table.reshape(-1, table.shape[-1])
        for k in range(rows.shape[0]):
            _require_simplex(rows[k], f"component row {k}", tol=1e-10)
        object.__setattr__(self, "table", table)

    @property
    def shared(self) -> bool:
        return self.table.ndim == 2

    @property
    def n_components(self) -> int:
        return self.table.shape[-2]

    @property
    def alphabet_size(self) -> int:
        return self.table.shape[-1]

    def site(self, i: int) -> np.ndarray:
        """(M, S) component table at site i."""
        return self.table if self.shared else self.table[i]

    def expanded(self, n_sites: int) -> np.ndarray:
        """(N, M, S) table with the shared bank broadcast if needed."""
        if self.shared:
            return np.ascontiguousarray(
                np.broadcast_to(self.table, (n_sites,) + self.table.shape)
            )
        if self.table.shape[0] != n_sites:
            raise ValueError("per-site bank does not match the number of sites")
        return np.ascontiguousarray(self.table)


@dataclass(frozen=True, eq=False)
class CpModel:
    """Shallow mixture: Z weighted product-terms over per-site component mixes."""

    bank: ComponentBank
    factors: CpFactors
    component_prior: np.ndarray | None = None
    seed: int | None = None

    def __post_init__(self):
        if not self.factors.probabilistic:
            raise ValueError("model factors must be in probabilistic mode")
        if self.factors.mode_dim != self.bank.n_components:
            raise ValueError(
                f"factors mix {self.factors.mode_dim} components, "
                f"bank holds {self.bank.n_components}"
            )
        if not self.bank.shared and self.bank.table.shape[0] != self.n_sites:
            raise ValueError("per-site bank does not match the number of sites")
        if self.component_prior is not None:
            prior = _frozen_array(self.component_prior)
            _require_simplex(prior, "component prior override", tol=1e-10)
            if prior.shape[0] != self.bank.n_components:
                raise ValueError("component prior override must have one entry per component")
            object.__setattr__(self, "component_prior", prior)

    @property
    def n_sites(self) -> int:
        return self.factors.n_modes

    @property
    def n_components(self) -> int:
        return self.factors.mode_dim

    @property
    def alphabet_size(self) -> int:
        return self.bank.alphabet_size

    @property
    def rank(self) -> int:
        return self.factors.rank


@dataclass(frozen=True, eq=False)
class HtModel:
    """Deep mixture: a binary tree of mix-then-multiply fusions over N = 2^L sites."""

    bank: ComponentBank
    factors: HtFactors
    latent_priors: tuple[np.ndarray, ...] | None = None
    seed: int | None = None

    def __post_init__(self):
        if not self.factors.probabilistic:
            raise ValueError("model factors must be in probabilistic mode")
        if self.factors.mode_dim != self.bank.n_components:
            raise ValueError(
                f"factors mix {self.factors.mode_dim} components, "
                f"bank holds {self.bank.n_components}"
            )
        if not self.bank.shared and self.bank.table.shape[0] != self.n_sites:
            raise ValueError("per-site bank does not match the number of sites")
        if self.latent_priors is not None:
            priors = tuple(_frozen_array(p) for p in self.latent_priors)
            expected = self.channel_sizes
            if len(priors) != len(expected):
                raise ValueError(f"need one prior per layer 0..{self.depth}")
            for layer, (p, size) in enumerate(zip(priors, expected)):
                _require_simplex(p, f"latent prior override for layer {layer}", tol=1e-10)
                if p.shape[0] != size:
                    raise ValueError(
                        f"layer {layer} prior must have {size} entries, got {p.shape[0]}"
                    )
            object.__setattr__(self, "latent_priors", priors)

    @property
    def n_sites(self) -> int:
        return self.factors.n_modes

    @property
    def n_components(self) -> int:
        return self.factors.mode_dim

    @property
    def alphabet_size(self) -> int:
        return self.bank.alphabet_size

    @property
    def depth(self) -> int:
        return self.factors.depth

    @property
    def ranks(self) -> tuple[int, ...]:
        return self.factors.ranks

    @property
    def channel_sizes(self) -> tuple[int, ...]:
        """Channel count per layer 0..L: (M, r_0, ..., r_{L-1})."""
        return (self.n_components,) + self.ranks


Model = Union[CpModel, HtModel]


def model_dims(model: Model) -> dict:
    dims = {
        "kind": "cp" if isinstance(model, CpModel) else "ht",
        "n_sites": model.n_sites,
        "n_components": model.n_components,
        "alphabet_size": model.alphabet_size,
    }
    if isinstance(model, CpModel):
        dims["rank"] = model.rank
    else:
        dims["ranks"] = list(model.ranks)
    if model.seed is not None:
        dims["seed"] = model.seed
    return dims


# --- seeded generation -------------------------------------------------------

_STREAM_BANK = 0
_STREAM_SITE = 1
_STREAM_TOP = 2
_STREAM_LEVEL = 3
_STREAM_MEMBER = 9


def _vector_rng(seed: int, *path: int) -> np.random.Generator:
    # one PCG64 stream per parameter vector, keyed by a structural path so
    # draws are independent of generation order
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(path)))


def _simplex_draw(seed: int, path: tuple[int, ...], size: int) -> np.ndarray:
    return _vector_rng(seed, *path).dirichlet(np.ones(size))


def _random_bank(seed, n_sites, n_components, alphabet_size, shared) -> ComponentBank:
    if shared:
        table = np.array(
            [_simplex_draw(seed, (_STREAM_BANK, 0, d), alphabet_size) for d in range(n_components)]
        )
    else:
        table = np.array(
            [
                [
                    _simplex_draw(seed, (_STREAM_BANK, 1 + i, d), alphabet_size)
                    for d in range(n_components)
                ]
                for i in range(n_sites)
            ]
        )
    return ComponentBank(table)


def random_cp_model(
    n_sites: int,
    n_components: int,
    alphabet_size: int,
    rank: int,
    seed: int,
    shared_bank: bool = True,
) -> CpModel:
    """Seeded model with every weight vector drawn flat on its simplex."""
    if min(n_sites, n_components, alphabet_size, rank) < 1:
        raise ValueError("all dimensions must be positive")
    top = _simplex_draw(seed, (_STREAM_TOP, 0, 0), rank)
    site = np.array(
        [
            [_simplex_draw(seed, (_STREAM_SITE, i, z), n_components) for z in range(rank)]
            for i in range(n_sites)
        ]
    )
    bank = _random_bank(seed, n_sites, n_components, alphabet_size, shared_bank)
    return CpModel(
        bank=bank,
        factors=CpFactors(top=top, site=site, probabilistic=True),
        seed=seed,
    )


def random_ht_model(
    n_sites: int,
    n_components: int,
    alphabet_size: int,
    ranks: Sequence[int],
    seed: int,
    shared_bank: bool = True,
) -> HtModel:
    """Seeded tree model with every weight vector drawn flat on its simplex."""
    if n_sites < 2 or n_sites & (n_sites - 1) != 0:
        raise ValueError("n_sites must be a power of two (and >= 2)")
    depth = n_sites.bit_length() - 1
    ranks = tuple(int(r) for r in ranks)
    if len(ranks) != depth:
        raise ValueError(f"need {depth} ranks for {n_sites} sites, got {len(ranks)}")
    if min(n_components, alphabet_size, *ranks) < 1:
        raise ValueError("all dimensions must be positive")
    levels = []
    in_dim = n_components
    nodes = n_sites
    for l, r in enumerate(ranks):
        levels.append(
            np.array(
                [
                    [_simplex_draw(seed, (_STREAM_LEVEL, l, j, g), in_dim) for g in range(r)]
                    for j in range(nodes)
                ]
            )
        )
        in_dim = r
        nodes //= 2
    top = _simplex_draw(seed, (_STREAM_TOP, 0, 0), ranks[-1])
    bank = _random_bank(seed, n_sites, n_components, alphabet_size, shared_bank)
    return HtModel(
        bank=bank,
        factors=HtFactors(levels=tuple(levels), top=top, probabilistic=True),
        seed=seed,
    )


def random_model(kind: str, dims: dict, seed: int) -> Model:
    """Dispatch on ``kind`` in {"cp", "ht"} with a dims mapping (see CLI schema)."""
    common = dict(
        n_sites=dims["n_sites"],
        n_components=dims["n_components"],
        alphabet_size=dims["alphabet_size"],
        seed=seed,
        shared_bank=dims.get("shared_bank", True),
    )
    if kind == "cp":
        return random_cp_model(rank=dims["rank"], **common)
    if kind == "ht":
        return random_ht_model(ranks=dims["ranks"], **common)
    raise ValueError(f"unknown model kind {kind!r}; choose 'cp' or 'ht'")


def ensemble_seed(root_seed: int, index: int) -> int:
    """Derived seed of ensemble member ``index`` (independently reproducible)."""
    return int(np.random.SeedSequence(root_seed, spawn_key=(_STREAM_MEMBER, index)).generate_state(1)[0])


# --- forward evaluation ------------------------------------------------------


def _check_assignments(model: Model, assignments) -> np.ndarray:
    x = np.atleast_2d(np.asarray(assignments, dtype=np.intp))
    if x.ndim != 2 or x.shape[1] != model.n_sites:
        raise ValueError(f"assignments must have {model.n_sites} symbols per row")
    if x.size and (x.min() < 0 or x.max() >= model.alphabet_size):
        raise ValueError(f"symbols must lie in [0, {model.alphabet_size})")
    return np.ascontiguousarray(x)


def cp_site_mixtures(model: CpModel) -> np.ndarray:
    """(N, Z, S) per-term symbol distributions: site[i] weights applied to the bank."""
    bank = model.bank.expanded(model.n_sites)
    return np.ascontiguousarray(np.einsum("nzm,nms->nzs", model.factors.site, bank))


def forward_batch(model: Model, assignments) -> np.ndarray:
    """Outcome probabilities by factored evaluation (no joint enumeration)."""
    x = _check_assignments(model, assignments)
    if isinstance(model, CpModel):
        return backend.cp_forward_batch(model.factors.top, cp_site_mixtures(model), x)
    levels = [np.ascontiguousarray(m) for m in model.factors.levels]
    return backend.ht_forward_batch(
        levels, model.factors.top, model.bank.expanded(model.n_sites), x
    )


def cp_forward(model: CpModel, assignment) -> float:
    """P(x) for one assignment via the factored rank-Z evaluation."""
    if not isinstance(model, CpModel):
        raise TypeError("cp_forward expects a CpModel")
    return float(forward_batch(model, [assignment])[0])


def ht_forward(model: HtModel, assignment) -> float:
    """P(x) for one assignment via the bottom-up tree evaluation."""
    if not isinstance(model, HtModel):
        raise TypeError("ht_forward expects an HtModel")
    return float(forward_batch(model, [assignment])[0])


def all_assignments(n_sites: int, alphabet_size: int, budget: int = DEFAULT_ENUM_BUDGET) -> np.ndarray:
    """(S^N, N) array of all outcomes in row-major (last site fastest) order."""
    _check_budget(alphabet_size**n_sites, budget, "outcome enumeration")
    prod = itertools.product(range(alphabet_size), repeat=n_sites)
    return np.array(list(prod), dtype=np.intp).reshape(-1, n_sites)


# --- exact enumeration -------------------------------------------------------


def priors_tensor(model: Model, budget: int = DEFAULT_ENUM_BUDGET) -> np.ndarray:
    """Dense component-assignment prior of shape (M,)*N; sums to 1."""
    _check_budget(model.n_components**model.n_sites, budget, "priors tensor")
    if isinstance(model, CpModel):
        return cp_reconstruct(model.factors)
    return ht_reconstruct(model.factors)


def bruteforce_joint(model: Model, budget: int = DEFAULT_ENUM_BUDGET) -> JointDist:
    """Exact outcome joint over [S]^N via the reconstructed priors tensor.

    This is the enumeration route (contract the dense prior with every
    site's component table); the factored route is :func:`forward_batch`.
    """
    _check_budget(model.alphabet_size**model.n_sites, budget, "joint enumeration")
    table = priors_tensor(model, budget=budget)
    for i in range(model.n_sites):
        # consume the leading component axis, append the site's symbol axis
        table = np.tensordot(table, model.bank.site(i), axes=([0], [0]))
    return JointDist(table)


# --- channel priors and per-node conditionals --------------------------------


def site_component_prior(model: Model, i: int) -> np.ndarray:
    """Marginal component prior at site i induced by the model's weights."""
    if isinstance(model, CpModel):
        if model.component_prior is not None:
            return np.asarray(model.component_prior)
        return model.factors.top @ model.factors.site[i]
    return node_prior(model, 0, i)


def node_prior(model: HtModel, layer: int, index: int) -> np.ndarray:
    """Channel prior of tree node (layer, index).

    By default this is the generative marginal: the top weight vector at the
    root, pushed through each child's mixing matrix on the way down. With a
    ``latent_priors`` override, the layer's configured prior is returned.
    """
    _check_node(model, layer, index)
    if model.latent_priors is not None:
        return np.asarray(model.latent_priors[layer])
    prior = np.asarray(model.factors.top)
    for t in range(model.depth - 1, layer - 1, -1):
        child = index >> (t - layer)
        prior = prior @ model.factors.levels[t][child]
    return prior


def _check_node(model: HtModel, layer: int, index: int) -> None:
    if not 0 <= layer <= model.depth:
        raise ValueError(f"layer must lie in 0..{model.depth}")
    nodes = model.n_sites >> layer
    if not 0 <= index < nodes:
        raise ValueError(f"layer {layer} has {nodes} nodes; got index {index}")


def node_distributions(
    model: HtModel, layer: int, index: int, budget: int = DEFAULT_ENUM_BUDGET
) -> np.ndarray:
    """(channels, S^(2^layer)) exact per-channel distributions of a tree node."""
    _check_node(model, layer, index)
    block = model.alphabet_size ** (1 << layer)
    _check_budget(block, budget, f"node (layer {layer}, index {index}) enumeration")
    if layer == 0:
        return np.asarray(model.bank.site(index))
    left = node_distributions(model, layer - 1, 2 * index, budget)
    right = node_distributions(model, layer - 1, 2 * index + 1, budget)
    mixed_left = model.factors.levels[layer - 1][2 * index] @ left
    mixed_right = model.factors.levels[layer - 1][2 * index + 1] @ right
    channels = mixed_left.shape[0]
    return np.einsum("ga,gb->gab", mixed_left, mixed_right).reshape(channels, -1)


def node_conditional(
    model: HtModel, layer: int, index: int, budget: int = DEFAULT_ENUM_BUDGET
) -> ConditionalFamily:
    """Exact conditional family of a tree node: one member per channel."""
    dists = node_distributions(model, layer, index, budget)
    prior = DiscreteDist(node_prior(model, layer, index))
    block_shape = (model.alphabet_size,) * (1 << layer)
    if layer == 0:
        members = tuple(DiscreteDist(row) for row in dists)
    else:
        members = tuple(JointDist(row.reshape(block_shape)) for row in dists)
    return ConditionalFamily(prior=prior, members=members)


def leaf_conditional_entropy_sum(model: Model) -> float:
    """Sum over sites of the component-conditional symbol entropy (nats)."""
    total = 0.0
    for i in range(model.n_sites):
        prior = site_component_prior(model, i)
        total += float(prior @ backend.row_entropies_nats(np.ascontiguousarray(model.bank.site(i))))
    return total
