"""Persistence of per-group multiplication and sliding memo tables.

Cache files live under the directory named by the GARSIDE_CACHE_DIR
environment variable (no caching when unset).  Files are versioned and keyed
by a fingerprint of the Coxeter matrix; anything with a stale version or a
mismatched fingerprint is ignored, never misread.
"""

from __future__ import annotations

import hashlib
import os
import pickle
from pathlib import Path

from .coxeter import CoxeterGraph

CACHE_VERSION = 1
ENV_VAR = "GARSIDE_CACHE_DIR"


def cache_dir() -> Path | None:
    val = os.environ.get(ENV_VAR)
    return Path(val) if val else None


def group_fingerprint(graph: CoxeterGraph) -> str:
    blob = repr((graph.generators, graph.matrix)).encode()
    return hashlib.sha256(blob).hexdigest()[:20]


def _cache_path(base: Path, graph: CoxeterGraph) -> Path:
    return base / f"memo-{group_fingerprint(graph)}.pkl"


def load_memos(graph: CoxeterGraph) -> bool:
    """Warm the group's memo tables from disk; False if nothing usable."""
    base = cache_dir()
    if base is None:
        return False
    path = _cache_path(base, graph)
    if not path.exists():
        return False
    try:
        payload = pickle.loads(path.read_bytes())
    except Exception:
        return False
    if not isinstance(payload, dict):
        return False
    if payload.get("version") != CACHE_VERSION:
        return False
    if payload.get("fingerprint") != group_fingerprint(graph):
        return False
    tab = graph.table()
    tab._mult_memo.update(payload.get("mult", {}))
    tab._renorm_memo.update(payload.get("renorm", {}))
    return True


def save_memos(graph: CoxeterGraph) -> bool:
    """Persist the group's memo tables; False when caching is disabled."""
    base = cache_dir()
    if base is None:
        return False
    base.mkdir(parents=True, exist_ok=True)
    tab = graph.table()
    payload = {
        "version": CACHE_VERSION,
        "fingerprint": group_fingerprint(graph),
        "mult": tab._mult_memo,
        "renorm": tab._renorm_memo,
    }
    _cache_path(base, graph).write_bytes(pickle.dumps(payload))
    return True
