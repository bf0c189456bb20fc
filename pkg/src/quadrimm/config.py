"""Run configuration: search budgets and worker count.

Config files are plain ``key = value`` text (one per line, ``#``
comments); the ``QUADRIMM_WORKERS`` environment variable overrides the
worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from .errors import StructureError

_INT_KEYS = {
    "enum_max_n", "oracle_max_n",
    "disk_max_boundary", "disk_max_vertices",
    "multigraph_canon_bound", "workers",
}


@dataclass(frozen=True)
class Config:
    enum_max_n: int = 16
    oracle_max_n: int = 12
    disk_max_boundary: int = 12
    disk_max_vertices: int = 30
    multigraph_canon_bound: int = 12
    workers: int = 1

    def with_env(self) -> "Config":
        w = os.environ.get("QUADRIMM_WORKERS")
        if w:
            try:
                return replace(self, workers=max(1, int(w)))
            except ValueError:
                raise StructureError("QUADRIMM_WORKERS must be an integer, got %r" % w)
        return self


def load_config(path=None) -> Config:
    cfg = Config()
    if path is not None:
        values = {}
        with open(path, "r", encoding="utf-8") as fh:
            for i, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise StructureError("config line %d is not key = value" % i)
                key, val = (s.strip() for s in line.split("=", 1))
                if key not in _INT_KEYS:
                    raise StructureError("unknown config key %r (line %d)" % (key, i))
                try:
                    values[key] = int(val)
                except ValueError:
                    raise StructureError("config value for %s must be an integer" % key)
        cfg = replace(cfg, **values)
    return cfg.with_env()


def parallel_map(fn, items, workers: int = 1):
    """Order-preserving map, fanned out over processes when workers > 1.

    Tasks must be picklable top-level callables; results come back in
    input order so runs stay reproducible.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
