"""Entropy growth through channel mixtures and its additive/ratio bounds.

Every place a model mixes child channels into parent channels is a "mapping"
u = A v of conditional-distribution stacks; mixing can only increase the
prior-weighted conditional entropy (entropy is concave), and product nodes
add the two sides exactly. Summing the per-mapping entropy gaps therefore
telescopes to the total growth H(X) - sum_i H(x_i | component), which is
bounded by (mapping count) * C additively and by beta^(stages)
multiplicatively, where C and beta are the largest per-mapping gap and
ratio. This module measures every mapping of a model, estimates (C, beta),
checks both bound forms, and runs seeded ensembles of such checks.

Tree models expose 2^(L+1) - 1 mappings (two sides per fusion at each of
the N-1 internal nodes, plus the top mixture); shallow rank models expose
N + 1 (one per site plus the top mixture).
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import backend
from .info import ConditionalFamily, DiscreteDist, JointDist, joint_entropy
from .models import (
    DEFAULT_ENUM_BUDGET,
    CpModel,
    HtModel,
    Model,
    bruteforce_joint,
    cp_site_mixtures,
    ensemble_seed,
    leaf_conditional_entropy_sum,
    model_dims,
    node_distributions,
    node_prior,
    random_model,
    site_component_prior,
)
from .tensors import _frozen_array, _require_simplex

RATIO_EPS = 1e-9
PASS_SLACK = 1e-9


@dataclass(frozen=True, eq=False)
class MappingMatrix:
    """Row-stochastic matrix sending child channels to parent channels."""

    matrix: np.ndarray
    layer: int
    node: int
    side: str

    def __post_init__(self):
        matrix = _frozen_array(self.matrix)
        if matrix.ndim != 2:
            raise ValueError("mapping must be a 2-D matrix")
        for j in range(matrix.shape[0]):
            _require_simplex(matrix[j], f"mapping row {j}")
        object.__setattr__(self, "matrix", matrix)

    @property
    def matrix_rank(self) -> int:
        return int(np.linalg.matrix_rank(self.matrix))


def mapping_matrix(model: HtModel, layer: int, node: int, side: str) -> MappingMatrix:
    """Mixing matrix applied to one child of fusion (layer, node).

    ``layer`` ranges over 1..L (the parent's layer); row g of the result is
    the weight vector that parent channel g applies to that child.
    """
    if not 1 <= layer <= model.depth:
        raise ValueError(f"fusion layer must lie in 1..{model.depth}")
    nodes = model.n_sites >> layer
    if not 0 <= node < nodes:
        raise ValueError(f"layer {layer} has {nodes} fusions; got node {node}")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    child = 2 * node + (0 if side == "left" else 1)
    return MappingMatrix(
        matrix=model.factors.levels[layer - 1][child], layer=layer, node=node, side=side
    )


def consistent_child_prior(mapping, parent_prior) -> np.ndarray:
    """Child-channel prior induced by a parent prior through the mapping."""
    matrix = mapping.matrix if isinstance(mapping, MappingMatrix) else np.asarray(mapping)
    return np.asarray(parent_prior) @ matrix


def apply_mapping(mapping, family: ConditionalFamily, output_prior) -> ConditionalFamily:
    """Mix a conditional family's members into a new family u = A v.

    Output member j is sum_a A[j, a] * member_a (a convex mixture, hence a
    valid distribution); the output prior is supplied by the caller. The
    growth inequality H(output) >= H(input) holds whenever the input prior
    is :func:`consistent_child_prior` of the output prior.
    """
    matrix = mapping.matrix if isinstance(mapping, MappingMatrix) else np.asarray(mapping)
    members = family.member_matrix()
    if matrix.shape[1] != members.shape[0]:
        raise ValueError(
            f"mapping has {matrix.shape[1]} columns but the family has "
            f"{members.shape[0]} members"
        )
    mixed = matrix @ members
    shape = np.shape(family.members[0].pmf)
    if len(shape) == 1:
        out_members = tuple(DiscreteDist(row) for row in mixed)
    else:
        out_members = tuple(JointDist(row.reshape(shape)) for row in mixed)
    return ConditionalFamily(prior=DiscreteDist(np.asarray(output_prior)), members=out_members)


@dataclass(frozen=True)
class MappingMeasurement:
    """Entropy bookkeeping of one mapping (all entropies in nats)."""

    layer: int
    node: int
    side: str  # left | right | site | top
    source_entropy_nats: float
    mapped_entropy_nats: float
    gap_nats: float
    ratio: Optional[float]  # None when the source entropy is below eps
    skipped: bool
    matrix_rank: int


@dataclass(frozen=True)
class FusionRecord:
    """Both side mappings of one fusion plus the parent product check."""

    layer: int
    node: int
    left: MappingMeasurement
    right: MappingMeasurement
    parent_entropy_nats: float
    product_rule_residual_nats: float  # parent - (left.mapped + right.mapped)


@dataclass(frozen=True)
class ConstantsEstimate:
    """Per-model maxima over every mapping's gap and ratio."""

    c_hat: float
    beta_hat: Optional[float]  # None when every ratio was skipped
    skipped: int
    measurements: tuple[MappingMeasurement, ...]


def _measure(layer, node, side, source, mapped, rank, eps) -> MappingMeasurement:
    skipped = source < eps
    return MappingMeasurement(
        layer=layer,
        node=node,
        side=side,
        source_entropy_nats=source,
        mapped_entropy_nats=mapped,
        gap_nats=mapped - source,
        ratio=None if skipped else mapped / source,
        skipped=skipped,
        matrix_rank=rank,
    )


def _ht_side_measurement(model, layer, node, side, parent_prior, eps, budget):
    child = 2 * node + (0 if side == "left" else 1)
    dists = node_distributions(model, layer - 1, child, budget)
    matrix = np.asarray(model.factors.levels[layer - 1][child])
    child_prior = node_prior(model, layer - 1, child)
    source = float(child_prior @ backend.row_entropies_nats(np.ascontiguousarray(dists)))
    mixed = matrix @ dists
    mapped = float(parent_prior @ backend.row_entropies_nats(np.ascontiguousarray(mixed)))
    rank = int(np.linalg.matrix_rank(matrix))
    return _measure(layer, node, side, source, mapped, rank, eps)


def fusion_record(
    model: HtModel, layer: int, node: int, eps: float = RATIO_EPS, budget: int = DEFAULT_ENUM_BUDGET
) -> FusionRecord:
    """Measure both side mappings of fusion (layer, node), layer in 1..L."""
    if not 1 <= layer <= model.depth:
        raise ValueError(f"fusion layer must lie in 1..{model.depth}")
    parent_prior = node_prior(model, layer, node)
    left = _ht_side_measurement(model, layer, node, "left", parent_prior, eps, budget)
    right = _ht_side_measurement(model, layer, node, "right", parent_prior, eps, budget)
    parent_dists = node_distributions(model, layer, node, budget)
    parent_entropy = float(
        parent_prior @ backend.row_entropies_nats(np.ascontiguousarray(parent_dists))
    )
    return FusionRecord(
        layer=layer,
        node=node,
        left=left,
        right=right,
        parent_entropy_nats=parent_entropy,
        product_rule_residual_nats=parent_entropy
        - (left.mapped_entropy_nats + right.mapped_entropy_nats),
    )


def _ht_measurements(model: HtModel, eps, budget):
    """All 2^(L+1)-1 mapping measurements plus (H(X) by top mixture, leaf sum)."""
    measurements = []
    for layer in range(1, model.depth + 1):
        for node in range(model.n_sites >> layer):
            parent_prior = node_prior(model, layer, node)
            for side in ("left", "right"):
                measurements.append(
                    _ht_side_measurement(model, layer, node, side, parent_prior, eps, budget)
                )
    root_dists = node_distributions(model, model.depth, 0, budget)
    root_prior = node_prior(model, model.depth, 0)
    root_entropy = float(
        root_prior @ backend.row_entropies_nats(np.ascontiguousarray(root_dists))
    )
    # the output joint is always mixed by the model's own top vector, whatever
    # prior override is in force for the conditional entropies
    joint_pmf = np.asarray(model.factors.top) @ root_dists
    h_x = float(backend.entropy_nats(joint_pmf))
    measurements.append(
        _measure(model.depth, 0, "top", root_entropy, h_x, 1, eps)
    )
    return measurements, h_x


def _cp_measurements(model: CpModel, eps, budget):
    """All N+1 mapping measurements plus (H(X) by enumeration, leaf sum)."""
    top = np.asarray(model.factors.top)
    mixtures = cp_site_mixtures(model)  # (N, Z, S)
    measurements = []
    mixed_row_entropies = np.empty((model.n_sites, model.rank))
    for i in range(model.n_sites):
        component_rows = np.ascontiguousarray(model.bank.site(i))
        source = float(
            site_component_prior(model, i) @ backend.row_entropies_nats(component_rows)
        )
        mixed_row_entropies[i] = backend.row_entropies_nats(mixtures[i])
        mapped = float(top @ mixed_row_entropies[i])
        rank = int(np.linalg.matrix_rank(model.factors.site[i]))
        measurements.append(_measure(0, i, "site", source, mapped, rank, eps))
    # top mixture: per-term joints are products, so their entropies add by site
    source_top = float(top @ mixed_row_entropies.sum(axis=0))
    h_x = joint_entropy(bruteforce_joint(model, budget=budget))
    measurements.append(_measure(1, 0, "top", source_top, h_x, 1, eps))
    return measurements, h_x


def estimate_constants(
    model: Model, eps: float = RATIO_EPS, budget: int = DEFAULT_ENUM_BUDGET
) -> ConstantsEstimate:
    """(C_hat, beta_hat) = max gap and max ratio over every mapping.

    Mappings whose source entropy is below ``eps`` are excluded from the
    ratio statistic and counted in ``skipped``; a model where everything is
    skipped reports beta_hat = None (not an error).
    """
    if isinstance(model, CpModel):
        measurements, _ = _cp_measurements(model, eps, budget)
    else:
        measurements, _ = _ht_measurements(model, eps, budget)
    ratios = [m.ratio for m in measurements if not m.skipped]
    return ConstantsEstimate(
        c_hat=max(m.gap_nats for m in measurements),
        beta_hat=max(ratios) if ratios else None,
        skipped=sum(1 for m in measurements if m.skipped),
        measurements=tuple(measurements),
    )


@dataclass(frozen=True)
class ScalingReport:
    """One model's entropy-growth bound check, in both bound forms."""

    kind: str  # "cp" | "ht"
    dims: dict
    mapping_count: int
    constants_mode: str  # "in_model" | "external"
    c_hat_nats: float  # the model's own max gap
    beta_hat: Optional[float]  # the model's own max ratio (None if all skipped)
    skipped: int
    c_bound_nats: float  # constant used in the additive bound
    beta_bound: Optional[float]  # constant used in the ratio bound
    ratio_exponent: int
    h_x_nats: float
    leaf_entropy_sum_nats: float
    additive_lhs_nats: float
    additive_rhs_nats: float
    additive_pass: bool
    ratio_applicable: bool
    ratio_lhs: Optional[float]
    ratio_rhs: Optional[float]
    ratio_pass: Optional[bool]
    telescoping_residual_nats: float
    measurements: tuple[MappingMeasurement, ...]


def _build_report(model, kind, measurements, constants, eps, budget):
    estimate = ConstantsEstimate(
        c_hat=max(m.gap_nats for m in measurements),
        beta_hat=max((m.ratio for m in measurements if not m.skipped), default=None),
        skipped=sum(1 for m in measurements if m.skipped),
        measurements=tuple(measurements),
    )
    if kind == "ht":
        mapping_count = 2 ** (model.depth + 1) - 1
        ratio_exponent = model.depth + 1
    else:
        mapping_count = model.n_sites + 1
        ratio_exponent = 2
    if len(measurements) != mapping_count:
        raise AssertionError(
            f"expected {mapping_count} mappings, measured {len(measurements)}"
        )

    h_x = joint_entropy(bruteforce_joint(model, budget=budget))
    leaf_sum = leaf_conditional_entropy_sum(model)

    if constants is None:
        mode = "in_model"
        c_bound, beta_bound = estimate.c_hat, estimate.beta_hat
    else:
        mode = "external"
        c_bound, beta_bound = float(constants[0]), (
            None if constants[1] is None else float(constants[1])
        )

    additive_lhs = h_x - leaf_sum
    additive_rhs = mapping_count * c_bound
    gap_total = sum(m.gap_nats for m in measurements)

    ratio_applicable = leaf_sum >= eps and beta_bound is not None
    if ratio_applicable:
        ratio_lhs = h_x / leaf_sum
        ratio_rhs = beta_bound**ratio_exponent
        ratio_pass = ratio_lhs <= ratio_rhs + PASS_SLACK
    else:
        ratio_lhs = ratio_rhs = ratio_pass = None

    return ScalingReport(
        kind=kind,
        dims=model_dims(model),
        mapping_count=mapping_count,
        constants_mode=mode,
        c_hat_nats=estimate.c_hat,
        beta_hat=estimate.beta_hat,
        skipped=estimate.skipped,
        c_bound_nats=c_bound,
        beta_bound=beta_bound,
        ratio_exponent=ratio_exponent,
        h_x_nats=h_x,
        leaf_entropy_sum_nats=leaf_sum,
        additive_lhs_nats=additive_lhs,
        additive_rhs_nats=additive_rhs,
        additive_pass=additive_lhs <= additive_rhs + PASS_SLACK,
        ratio_applicable=ratio_applicable,
        ratio_lhs=ratio_lhs,
        ratio_rhs=ratio_rhs,
        ratio_pass=ratio_pass,
        telescoping_residual_nats=additive_lhs - gap_total,
        measurements=tuple(measurements),
    )


def verify_ht_law(
    model: HtModel,
    constants: Optional[tuple] = None,
    eps: float = RATIO_EPS,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> ScalingReport:
    """Check the tree model's growth bounds: gap <= (2^(L+1)-1) C, ratio <= beta^(L+1).

    ``constants=None`` uses the model's own (C_hat, beta_hat); a
    ``(C, beta)`` tuple checks externally supplied constants instead.
    """
    measurements, _ = _ht_measurements(model, eps, budget)
    return _build_report(model, "ht", measurements, constants, eps, budget)


def verify_cp_law(
    model: CpModel,
    constants: Optional[tuple] = None,
    eps: float = RATIO_EPS,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> ScalingReport:
    """Check the shallow model's growth bounds: gap <= (N+1) C, ratio <= beta^2."""
    measurements, _ = _cp_measurements(model, eps, budget)
    return _build_report(model, "cp", measurements, constants, eps, budget)


def verify_law(model: Model, **kwargs) -> ScalingReport:
    if isinstance(model, CpModel):
        return verify_cp_law(model, **kwargs)
    return verify_ht_law(model, **kwargs)


def entropy_chain(model: Model, budget: int = DEFAULT_ENUM_BUDGET) -> list[dict]:
    """Stage-by-stage conditional entropies from components up to the joint."""
    rows = []
    if isinstance(model, CpModel):
        rows.append({"stage": "components", "entropy_nats": leaf_conditional_entropy_sum(model)})
        top = np.asarray(model.factors.top)
        mixtures = cp_site_mixtures(model)
        site_mix_sum = sum(
            float(top @ backend.row_entropies_nats(mixtures[i])) for i in range(model.n_sites)
        )
        rows.append({"stage": "site_mixtures", "entropy_nats": site_mix_sum})
    else:
        for layer in range(model.depth + 1):
            total = 0.0
            for node in range(model.n_sites >> layer):
                dists = node_distributions(model, layer, node, budget)
                prior = node_prior(model, layer, node)
                total += float(prior @ backend.row_entropies_nats(np.ascontiguousarray(dists)))
            rows.append({"stage": f"layer_{layer}", "entropy_nats": total})
    rows.append(
        {"stage": "joint", "entropy_nats": joint_entropy(bruteforce_joint(model, budget=budget))}
    )
    return rows


# --- ensembles ----------------------------------------------------------------


@dataclass(frozen=True)
class EnsembleReport:
    """Aggregate of per-model bound checks over a seeded ensemble."""

    kind: str
    dims: dict
    seed: int
    n_models: int
    split: str  # "in_model" | "train_test"
    constants_mode: str
    c_constant_nats: Optional[float]
    beta_constant: Optional[float]
    reports: tuple[ScalingReport, ...]
    roles: tuple[str, ...]  # per report: "member" | "train" | "eval"
    n_evaluated: int
    additive_violations: int
    ratio_evaluated: int
    ratio_violations: int
    all_pass: bool


def ensemble_study(
    kind: str,
    dims: dict,
    n_models: int,
    seed: int,
    split: str = "in_model",
    constants: Optional[tuple] = None,
    eps: float = RATIO_EPS,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> EnsembleReport:
    """Bound checks over ``n_models`` seeded models.

    ``split="in_model"`` verifies each model against its own constants (or
    against ``constants`` when given, the external mode). ``"train_test"``
    estimates (C, beta) as the maxima over the first half and reports the
    violation rate of the second half against them -- a rate, not an
    assertion.
    """
    if n_models < 1:
        raise ValueError("n_models must be at least 1")
    if split not in ("in_model", "train_test"):
        raise ValueError("split must be 'in_model' or 'train_test'")
    if split == "train_test" and n_models < 2:
        raise ValueError("train_test needs at least 2 models")

    members = [
        random_model(kind, dims, ensemble_seed(seed, k)) for k in range(n_models)
    ]

    reports: list[ScalingReport] = []
    roles: list[str] = []
    if split == "in_model":
        mode = "external" if constants is not None else "in_model"
        for m in members:
            reports.append(verify_law(m, constants=constants, eps=eps, budget=budget))
            roles.append("member")
        evaluated = reports
        c_used = constants[0] if constants is not None else None
        beta_used = constants[1] if constants is not None else None
    else:
        n_train = n_models // 2
        train_reports = [
            verify_law(m, constants=None, eps=eps, budget=budget) for m in members[:n_train]
        ]
        c_train = max(r.c_hat_nats for r in train_reports)
        betas = [r.beta_hat for r in train_reports if r.beta_hat is not None]
        beta_train = max(betas) if betas else None
        eval_reports = [
            verify_law(m, constants=(c_train, beta_train), eps=eps, budget=budget)
            for m in members[n_train:]
        ]
        reports = train_reports + eval_reports
        roles = ["train"] * len(train_reports) + ["eval"] * len(eval_reports)
        evaluated = eval_reports
        mode = "train_test"
        c_used, beta_used = c_train, beta_train

    additive_violations = sum(1 for r in evaluated if not r.additive_pass)
    ratio_eval = [r for r in evaluated if r.ratio_applicable]
    ratio_violations = sum(1 for r in ratio_eval if not r.ratio_pass)
    return EnsembleReport(
        kind=kind,
        dims=dict(dims),
        seed=seed,
        n_models=n_models,
        split=split,
        constants_mode=mode,
        c_constant_nats=c_used,
        beta_constant=beta_used,
        reports=tuple(reports),
        roles=tuple(roles),
        n_evaluated=len(evaluated),
        additive_violations=additive_violations,
        ratio_evaluated=len(ratio_eval),
        ratio_violations=ratio_violations,
        all_pass=additive_violations == 0 and ratio_violations == 0,
    )


# --- serialization -------------------------------------------------------------

MAPPING_CSV_COLUMNS = (
    "layer",
    "node",
    "side",
    "source_entropy_nats",
    "mapped_entropy_nats",
    "gap_nats",
    "ratio_gain",
    "skipped",
    "matrix_rank",
)


def mapping_rows(report: ScalingReport) -> list[dict]:
    """One dict per mapping, keyed by :data:`MAPPING_CSV_COLUMNS`."""
    rows = []
    for m in report.measurements:
        rows.append(
            {
                "layer": m.layer,
                "node": m.node,
                "side": m.side,
                "source_entropy_nats": m.source_entropy_nats,
                "mapped_entropy_nats": m.mapped_entropy_nats,
                "gap_nats": m.gap_nats,
                "ratio_gain": "" if m.ratio is None else m.ratio,
                "skipped": m.skipped,
                "matrix_rank": m.matrix_rank,
            }
        )
    return rows


def write_mappings_csv(report: ScalingReport, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=MAPPING_CSV_COLUMNS)
        writer.writeheader()
        writer.writerows(mapping_rows(report))


def report_summary(report: ScalingReport) -> dict:
    return {
        "kind": report.kind,
        "dims": report.dims,
        "mapping_count": report.mapping_count,
        "constants_mode": report.constants_mode,
        "c_hat_nats": report.c_hat_nats,
        "beta_hat": report.beta_hat,
        "skipped_mappings": report.skipped,
        "c_bound_nats": report.c_bound_nats,
        "beta_bound": report.beta_bound,
        "ratio_exponent": report.ratio_exponent,
        "h_x_nats": report.h_x_nats,
        "leaf_entropy_sum_nats": report.leaf_entropy_sum_nats,
        "additive": {
            "lhs_nats": report.additive_lhs_nats,
            "rhs_nats": report.additive_rhs_nats,
            "pass": report.additive_pass,
        },
        "ratio": {
            "applicable": report.ratio_applicable,
            "lhs": report.ratio_lhs,
            "rhs": report.ratio_rhs,
            "pass": report.ratio_pass,
        },
        "telescoping_residual_nats": report.telescoping_residual_nats,
    }


def write_summary_json(report: ScalingReport, path) -> None:
    with open(path, "w") as fh:
        json.dump(report_summary(report), fh, indent=2, sort_keys=True, allow_nan=False)
        fh.write("\n")


ENSEMBLE_CSV_COLUMNS = (
    "index",
    "seed",
    "role",
    "c_hat_nats",
    "beta_hat",
    "skipped",
    "h_x_nats",
    "leaf_entropy_sum_nats",
    "additive_lhs_nats",
    "additive_rhs_nats",
    "additive_pass",
    "ratio_applicable",
    "ratio_lhs",
    "ratio_rhs",
    "ratio_pass",
)


def ensemble_rows(ensemble: EnsembleReport) -> list[dict]:
    rows = []
    for k, (report, role) in enumerate(zip(ensemble.reports, ensemble.roles)):
        rows.append(
            {
                "index": k,
                "seed": report.dims.get("seed", ""),
                "role": role,
                "c_hat_nats": report.c_hat_nats,
                "beta_hat": "" if report.beta_hat is None else report.beta_hat,
                "skipped": report.skipped,
                "h_x_nats": report.h_x_nats,
                "leaf_entropy_sum_nats": report.leaf_entropy_sum_nats,
                "additive_lhs_nats": report.additive_lhs_nats,
                "additive_rhs_nats": report.additive_rhs_nats,
                "additive_pass": report.additive_pass,
                "ratio_applicable": report.ratio_applicable,
                "ratio_lhs": "" if report.ratio_lhs is None else report.ratio_lhs,
                "ratio_rhs": "" if report.ratio_rhs is None else report.ratio_rhs,
                "ratio_pass": "" if report.ratio_pass is None else report.ratio_pass,
            }
        )
    return rows


def write_ensemble_csv(ensemble: EnsembleReport, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=ENSEMBLE_CSV_COLUMNS)
        writer.writeheader()
        writer.writerows(ensemble_rows(ensemble))


def ensemble_summary(ensemble: EnsembleReport) -> dict:
    n_eval = ensemble.n_evaluated
    return {
        "kind": ensemble.kind,
        "dims": ensemble.dims,
        "seed": ensemble.seed,
        "n_models": ensemble.n_models,
        "split": ensemble.split,
        "constants_mode": ensemble.constants_mode,
        "c_constant_nats": ensemble.c_constant_nats,
        "beta_constant": ensemble.beta_constant,
        "n_evaluated": n_eval,
        "additive_violations": ensemble.additive_violations,
        "additive_violation_rate": ensemble.additive_violations / n_eval if n_eval else None,
        "ratio_evaluated": ensemble.ratio_evaluated,
        "ratio_violations": ensemble.ratio_violations,
        "ratio_violation_rate": (
            ensemble.ratio_violations / ensemble.ratio_evaluated
            if ensemble.ratio_evaluated
            else None
        ),
        "all_pass": ensemble.all_pass,
    }


def write_ensemble_json(ensemble: EnsembleReport, path) -> None:
    with open(path, "w") as fh:
        json.dump(ensemble_summary(ensemble), fh, indent=2, sort_keys=True, allow_nan=False)
        fh.write("\n")
