"""Kernel backend selection.

The compiled extension is used when it imports and the graph fits in 64-bit
masks; otherwise the pure-Python kernels run.  Set ``SMALLCUTS_BACKEND`` to
``python`` to force the fallback.
"""
from __future__ import annotations

import math
import os

import numpy as np

from . import _kernel_py

try:
    from . import _kernel as _compiled
except ImportError:  # extension not built
    _compiled = None

if os.environ.get("SMALLCUTS_BACKEND", "").lower() == "python":
    _compiled = None

mix_seed = _kernel_py.mix_seed


def available() -> list[str]:
    return ["compiled", "python"] if _compiled is not None else ["python"]


def default() -> str:
    return available()[0]


def _pick(n: int, backend: str | None):
    if backend is None:
        backend = default()
    if backend == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernel is not available")
        if n <= 64:
            return _compiled, True
        return _kernel_py, False
    if backend == "python":
        return _kernel_py, False
    raise ValueError(f"unknown backend {backend!r}")


def _as_input(weights: np.ndarray, compiled: bool):
    if compiled:
        return np.ascontiguousarray(weights, dtype=np.float64)
    return np.asarray(weights, dtype=np.float64).tolist()


def recursive_contract(weights: np.ndarray, reduction: float, base: int, seed: int,
                       weighted: bool = True, threshold: float = math.inf,
                       backend: str | None = None) -> list[int]:
    mod, compiled = _pick(len(weights), backend)
    return mod.recursive_contract(_as_input(weights, compiled), float(reduction), int(base),
                                  int(seed), bool(weighted), float(threshold))


def contract_state(weights: np.ndarray, origins: list[int], target: int, seed: int,
                   weighted: bool = True, backend: str | None = None):
    mod, compiled = _pick(max(len(weights), max(origins).bit_length()), backend)
    return mod.contract_state(_as_input(weights, compiled), list(origins), int(target),
                              int(seed), bool(weighted))


def cut_weights(weights: np.ndarray, masks, backend: str | None = None) -> list[float]:
    mod, compiled = _pick(len(weights), backend)
    return mod.cut_weights(_as_input(weights, compiled), list(masks))
