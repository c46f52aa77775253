"""Command-line driver: seeded generation, entropy reports, bound checks.

Subcommands: ``gen-model``, ``entropy``, ``verify-law``, ``activation``,
``ensemble``. Every run reads one JSON config (flags override file values),
writes deterministic CSV/JSON artifacts into the output directory, and
finishes with a ``manifest.json`` echoing the effective config and the
sha256 of every artifact. Feeding a manifest back as ``--config``
reproduces the run byte-for-byte.

Exit codes: 0 success, 2 config error, 3 enumeration budget exceeded,
4 bound violations detected (``ensemble`` with external or train/test
constants under ``--strict``).
"""

from __future__ import annotations

import argparse
import copy
import csv
import hashlib
import json
import math
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__, serialize
from .backend import active_backend
from .densities import density_from_config, differential_entropy, pushforward_entropy, sigmoid_entropy_shift
from .models import (
    DEFAULT_ENUM_BUDGET,
    BudgetExceededError,
    model_dims,
    random_model,
)
from .scaling import (
    ENSEMBLE_CSV_COLUMNS,
    MAPPING_CSV_COLUMNS,
    RATIO_EPS,
    ensemble_rows,
    ensemble_study,
    ensemble_summary,
    entropy_chain,
    mapping_rows,
    report_summary,
    verify_law,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_BUDGET = 3
EXIT_VIOLATION = 4

LN2 = math.log(2.0)

DEFAULT_MODEL = {
    "kind": "ht",
    "n_sites": 8,
    "n_components": 2,
    "alphabet_size": 2,
    "ranks": [2, 2, 2],
}

DEFAULT_DENSITIES = [
    {"family": "uniform", "lo": 0.0, "hi": 1.0},
    {"family": "gaussian", "mean": 0.0, "std": 1.0},
    {"family": "gaussian", "mean": 1.0, "std": 0.5},
    {"family": "laplace", "loc": 0.0, "scale": 1.0},
    {
        "family": "gaussian_mixture",
        "weights": [0.4, 0.6],
        "means": [-1.0, 1.25],
        "stds": [0.8, 0.5],
    },
]


class ConfigError(Exception):
    """Invalid configuration; the message carries the offending field path."""


def _fail(path: str, message: str):
    raise ConfigError(f"{path}: {message}")


def _expect(mapping, path, key, types, default=None, required=False):
    if key not in mapping:
        if required:
            _fail(f"{path}.{key}", "missing required field")
        return copy.deepcopy(default)
    value = mapping[key]
    if types is not None and not isinstance(value, types):
        names = types.__name__ if isinstance(types, type) else "/".join(t.__name__ for t in types)
        _fail(f"{path}.{key}", f"expected {names}, got {type(value).__name__}")
    return value


def _validate_model(model_cfg: dict) -> dict:
    if "file" in model_cfg:
        extra = set(model_cfg) - {"file"}
        if extra:
            _fail("model", f"'file' cannot be combined with {sorted(extra)}")
        if not isinstance(model_cfg["file"], str):
            _fail("model.file", "expected a path string")
        return {"file": model_cfg["file"]}
    kind = _expect(model_cfg, "model", "kind", str, required=True)
    if kind not in ("cp", "ht"):
        _fail("model.kind", f"expected 'cp' or 'ht', got {kind!r}")
    out = {"kind": kind}
    for key in ("n_sites", "n_components", "alphabet_size"):
        value = _expect(model_cfg, "model", key, (int,), required=True)
        if isinstance(value, bool) or value < 1:
            _fail(f"model.{key}", "expected a positive integer")
        out[key] = value
    if kind == "cp":
        rank = _expect(model_cfg, "model", "rank", (int,), required=True)
        if isinstance(rank, bool) or rank < 1:
            _fail("model.rank", "expected a positive integer")
        out["rank"] = rank
    else:
        n = out["n_sites"]
        if n < 2 or n & (n - 1) != 0:
            _fail("model.n_sites", "N must be a power of two for the tree model")
        ranks = _expect(model_cfg, "model", "ranks", list, required=True)
        depth = n.bit_length() - 1
        if len(ranks) != depth or any(
            isinstance(r, bool) or not isinstance(r, int) or r < 1 for r in ranks
        ):
            _fail("model.ranks", f"expected {depth} positive integers for N={n}")
        out["ranks"] = list(ranks)
    out["shared_bank"] = bool(_expect(model_cfg, "model", "shared_bank", bool, default=True))
    return out


def _load_config_file(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        _fail("config", f"cannot read {path!r} ({exc})")
    except json.JSONDecodeError as exc:
        _fail("config", f"{path!r} is not valid JSON ({exc})")
    if not isinstance(doc, dict):
        _fail("config", "top level must be a JSON object")
    # a manifest from a previous run reproduces that run
    if doc.get("tool") == "convac-lab" and isinstance(doc.get("config"), dict):
        inner = dict(doc["config"])
        inner.pop("command", None)
        return inner
    return doc


def resolve_config(command: str, args) -> dict:
    """Merge defaults, the config file, and flag overrides; validate."""
    raw = _load_config_file(args.config) if args.config else {}
    known = {
        "model", "seed", "ensemble", "constants", "eps", "budget",
        "densities", "log_base", "out", "strict",
    }
    unknown = set(raw) - known
    if unknown:
        _fail(sorted(unknown)[0], "unknown config field")

    cfg: dict = {"command": command}
    cfg["model"] = _validate_model(dict(_expect(raw, "", "model", dict, default=DEFAULT_MODEL)))

    seed = _expect(raw, "", "seed", (int,))
    if args.seed is not None:
        seed = args.seed
    needs_seed = command in ("gen-model", "ensemble") or (
        command in ("entropy", "verify-law") and "file" not in cfg["model"]
    )
    if needs_seed and seed is None:
        _fail("seed", f"a seed is required for the randomized command {command!r}")
    if seed is not None and (isinstance(seed, bool) or seed < 0):
        _fail("seed", "expected a nonnegative integer")
    cfg["seed"] = seed

    ens = dict(_expect(raw, "", "ensemble", dict, default={}))
    size = _expect(ens, "ensemble", "size", (int,), default=1)
    if isinstance(size, bool) or size < 1:
        _fail("ensemble.size", "expected a positive integer")
    split = _expect(ens, "ensemble", "split", str, default="in_model")
    if split not in ("in_model", "train_test"):
        _fail("ensemble.split", "expected 'in_model' or 'train_test'")
    if split == "train_test" and size < 2:
        _fail("ensemble.size", "train_test needs at least 2 models")
    cfg["ensemble"] = {"size": size, "split": split}

    cons = dict(_expect(raw, "", "constants", dict, default={"mode": "in_model"}))
    mode = _expect(cons, "constants", "mode", str, default="in_model")
    if mode not in ("in_model", "external"):
        _fail("constants.mode", "expected 'in_model' or 'external'")
    if mode == "external":
        c = _expect(cons, "constants", "c", (int, float), required=True)
        beta = _expect(cons, "constants", "beta", (int, float))
        cfg["constants"] = {"mode": "external", "c": float(c), "beta": None if beta is None else float(beta)}
    else:
        cfg["constants"] = {"mode": "in_model"}

    eps = _expect(raw, "", "eps", (int, float), default=RATIO_EPS)
    if eps < 0:
        _fail("eps", "must be nonnegative")
    cfg["eps"] = float(eps)

    budget = _expect(raw, "", "budget", (int,), default=DEFAULT_ENUM_BUDGET)
    if isinstance(budget, bool) or budget < 1:
        _fail("budget", "expected a positive integer")
    cfg["budget"] = budget

    densities = _expect(raw, "", "densities", list, default=DEFAULT_DENSITIES)
    for k, d in enumerate(densities):
        if not isinstance(d, dict) or "family" not in d:
            _fail(f"densities[{k}]", "expected an object with a 'family' field")
    cfg["densities"] = densities

    log_base = _expect(raw, "", "log_base", str, default="nats")
    if log_base not in ("nats", "bits"):
        _fail("log_base", "expected 'nats' or 'bits'")
    cfg["log_base"] = log_base

    out = _expect(raw, "", "out", str, default="convac-lab-out")
    if args.out is not None:
        out = args.out
    cfg["out"] = out

    cfg["strict"] = bool(raw.get("strict", False)) or bool(getattr(args, "strict", False))
    return cfg


def _resolve_model(cfg: dict):
    model_cfg = cfg["model"]
    if "file" in model_cfg:
        return serialize.load(model_cfg["file"])
    return random_model(model_cfg["kind"], model_cfg, cfg["seed"])


# --- unit conversion ---------------------------------------------------------


def _convert_units(value, base: str):
    """Rename *_nats keys/columns to *_bits and rescale when base='bits'."""
    if base == "nats":
        return value
    if isinstance(value, dict):
        out = {}
        for key, val in value.items():
            if key.endswith("_nats"):
                out[key[: -len("_nats")] + "_bits"] = _convert_units(val, base)
            else:
                out[key] = _convert_units(val, base)
        return out
    if isinstance(value, (list, tuple)):
        return [_convert_units(v, base) for v in value]
    if isinstance(value, float):
        return value / LN2
    return value


def _convert_row(row: dict, base: str) -> dict:
    if base == "nats":
        return row
    out = {}
    for key, val in row.items():
        if key.endswith("_nats"):
            out[key[: -len("_nats")] + "_bits"] = val / LN2 if isinstance(val, float) else val
        else:
            out[key] = val
    return out


def _columns_for(columns, base: str):
    if base == "nats":
        return list(columns)
    return [c[: -len("_nats")] + "_bits" if c.endswith("_nats") else c for c in columns]


# --- artifact writing --------------------------------------------------------


def _write_json(path: Path, payload) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, allow_nan=False)
        fh.write("\n")


def _write_csv(path: Path, columns, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(columns))
        writer.writeheader()
        writer.writerows(rows)


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _write_manifest(out_dir: Path, cfg: dict, outputs: list[Path]) -> Path:
    manifest = {
        "tool": "convac-lab",
        "version": __version__,
        "backend": active_backend(),
        "command": cfg["command"],
        "created_utc": datetime.now(timezone.utc).isoformat(),
        "config": dict(cfg),
        "outputs": {p.name: _sha256(p) for p in outputs},
    }
    path = out_dir / "manifest.json"
    _write_json(path, manifest)
    return path


# --- subcommands -------------------------------------------------------------


def _cmd_gen_model(cfg: dict, out_dir: Path) -> tuple[list[Path], int]:
    model = _resolve_model(cfg)
    path = out_dir / "model.json"
    serialize.save(model, path)
    return [path], EXIT_OK


def _cmd_entropy(cfg: dict, out_dir: Path) -> tuple[list[Path], int]:
    model = _resolve_model(cfg)
    base = cfg["log_base"]
    chain = entropy_chain(model, budget=cfg["budget"])
    summary = {
        "dims": model_dims(model),
        "stages": chain,
        "h_x_nats": chain[-1]["entropy_nats"],
        "leaf_entropy_sum_nats": chain[0]["entropy_nats"],
    }
    json_path = out_dir / "entropy_summary.json"
    csv_path = out_dir / "entropy_chain.csv"
    _write_json(json_path, _convert_units(summary, base))
    _write_csv(
        csv_path,
        _columns_for(("stage", "entropy_nats"), base),
        [_convert_row(r, base) for r in chain],
    )
    return [json_path, csv_path], EXIT_OK


def _constants_tuple(cfg: dict):
    if cfg["constants"]["mode"] == "external":
        return (cfg["constants"]["c"], cfg["constants"]["beta"])
    return None


def _cmd_verify_law(cfg: dict, out_dir: Path) -> tuple[list[Path], int]:
    model = _resolve_model(cfg)
    report = verify_law(
        model, constants=_constants_tuple(cfg), eps=cfg["eps"], budget=cfg["budget"]
    )
    base = cfg["log_base"]
    json_path = out_dir / "law_summary.json"
    csv_path = out_dir / "law_mappings.csv"
    _write_json(json_path, _convert_units(report_summary(report), base))
    _write_csv(
        csv_path,
        _columns_for(MAPPING_CSV_COLUMNS, base),
        [_convert_row(r, base) for r in mapping_rows(report)],
    )
    return [json_path, csv_path], EXIT_OK


def _cmd_activation(cfg: dict, out_dir: Path) -> tuple[list[Path], int]:
    base = cfg["log_base"]
    rows = []
    for spec in cfg["densities"]:
        density = density_from_config(spec)
        h_x = differential_entropy(density)
        shift = sigmoid_entropy_shift(density)
        h_sigmoid = pushforward_entropy(density, "sigmoid")
        row = {
            "family": density.family,
            "parameters": json.dumps({k: v for k, v in spec.items() if k != "family"}, sort_keys=True),
            "h_x_nats": h_x.value,
            "sigmoid_shift_nats": shift.value,
            "h_sigmoid_nats": h_sigmoid.value,
        }
        if density.support[0] >= 0.0:
            row["h_relu_nats"] = pushforward_entropy(density, "relu").value
            row["relu_status"] = "ok"
        else:
            row["h_relu_nats"] = ""
            row["relu_status"] = "rejected: support crosses zero"
        rows.append(row)
    columns = (
        "family",
        "parameters",
        "h_x_nats",
        "sigmoid_shift_nats",
        "h_sigmoid_nats",
        "h_relu_nats",
        "relu_status",
    )
    csv_path = out_dir / "activation.csv"
    json_path = out_dir / "activation_summary.json"
    _write_csv(csv_path, _columns_for(columns, base), [_convert_row(r, base) for r in rows])
    _write_json(json_path, _convert_units({"densities": rows}, base))
    return [csv_path, json_path], EXIT_OK


def _cmd_ensemble(cfg: dict, out_dir: Path) -> tuple[list[Path], int]:
    model_cfg = cfg["model"]
    if "file" in model_cfg:
        _fail("model.file", "ensemble generates its own models; give dims, not a file")
    report = ensemble_study(
        kind=model_cfg["kind"],
        dims=model_cfg,
        n_models=cfg["ensemble"]["size"],
        seed=cfg["seed"],
        split=cfg["ensemble"]["split"],
        constants=_constants_tuple(cfg),
        eps=cfg["eps"],
        budget=cfg["budget"],
    )
    base = cfg["log_base"]
    csv_path = out_dir / "ensemble_models.csv"
    json_path = out_dir / "ensemble_summary.json"
    _write_csv(
        csv_path,
        _columns_for(ENSEMBLE_CSV_COLUMNS, base),
        [_convert_row(r, base) for r in ensemble_rows(report)],
    )
    _write_json(json_path, _convert_units(ensemble_summary(report), base))
    code = EXIT_OK
    violations = report.additive_violations + report.ratio_violations
    if cfg["strict"] and report.constants_mode in ("external", "train_test") and violations:
        code = EXIT_VIOLATION
    return [csv_path, json_path], code


_COMMANDS = {
    "gen-model": _cmd_gen_model,
    "entropy": _cmd_entropy,
    "verify-law": _cmd_verify_law,
    "activation": _cmd_activation,
    "ensemble": _cmd_ensemble,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convac-lab",
        description="Seeded tensor-format mixture models: entropy reports and growth-bound checks.",
    )
    parser.add_argument("--version", action="version", version=f"convac-lab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    help_lines = {
        "gen-model": "generate and serialize a seeded model",
        "entropy": "entropy chain H(components) .. H(joint) of one model",
        "verify-law": "per-mapping gaps/ratios and both growth bounds for one model",
        "activation": "differential entropy table under sigmoid/ramp transforms",
        "ensemble": "bound checks over a seeded ensemble (in-model or train/test)",
    }
    for name, fn in _COMMANDS.items():
        p = sub.add_parser(name, help=help_lines[name])
        p.add_argument("--config", help="JSON config file (or a previous run's manifest.json)")
        p.add_argument("--seed", type=int, help="override the config seed")
        p.add_argument("--out", help="output directory (default: convac-lab-out)")
        p.add_argument(
            "--strict",
            action="store_true",
            help="exit 4 when an ensemble with external/train-test constants finds violations",
        )
        p.set_defaults(func=fn)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args.command, args)
        out_dir = Path(cfg["out"])
        out_dir.mkdir(parents=True, exist_ok=True)
        outputs, code = args.func(cfg, out_dir)
        manifest = _write_manifest(out_dir, cfg, outputs)
        for p in outputs + [manifest]:
            print(p)
        return code
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BudgetExceededError as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
