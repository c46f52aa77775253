"""Kernel backend selection.

The hot kernels exist twice: a Cython extension (``_fastcore``) and a numpy
fallback (``reference``) with identical signatures. The compiled core is
preferred when importable; set ``CONVAC_LAB_BACKEND=reference`` (or
``=compiled``) to force a choice before import.
"""

from __future__ import annotations

import os

from ._kernels import reference as _reference

try:
    from ._kernels import _fastcore as _compiled
except ImportError:  # extension not built; numpy fallback carries the load
    _compiled = None

_BACKENDS = {"reference": _reference}
if _compiled is not None:
    _BACKENDS["compiled"] = _compiled


def _select():
    choice = os.environ.get("CONVAC_LAB_BACKEND", "auto")
    if choice == "auto":
        return _BACKENDS.get("compiled", _reference)
    try:
        return _BACKENDS[choice]
    except KeyError:
        raise ImportError(
            f"CONVAC_LAB_BACKEND={choice!r} is not available; "
            f"choices: {sorted(_BACKENDS)} or 'auto'"
        ) from None


_active = _select()

entropy_nats = _active.entropy_nats
row_entropies_nats = _active.row_entropies_nats
cp_forward_batch = _active.cp_forward_batch
ht_forward_batch = _active.ht_forward_batch
cp_rank_one_sum = _active.cp_rank_one_sum


def active_backend() -> str:
    """Name of the kernel set selected at import ('compiled' or 'reference')."""
    return _active.NAME


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def get_backend(name: str):
    """Kernel module by name, for side-by-side comparison and benchmarks."""
    return _BACKENDS[name]
