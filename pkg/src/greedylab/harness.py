"""Run configuration, seeded sampling and CSV/JSON emission shared by the CLI
and the acceptance suite."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .spaces import SparseVector

__all__ = ["RunConfig", "random_sample", "parse_vectors", "emit", "format_value"]


@dataclass(frozen=True)
class RunConfig:
    seed: int = 7
    horizon: int = 16
    cap: int = 10_000
    window: int | None = None
    output: str | None = None
    format: str = "csv"


def random_sample(seed: int, count: int = 200, max_support: int = 8, horizon: int = 16,
                  tie_fraction: float = 0.5) -> list[SparseVector]:
    """Seeded random sparse vectors on [1, horizon].

    About ``tie_fraction`` of them use small integer coefficients so that
    modulus ties, and hence several greedy sets, are common.
    """
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        k = int(rng.integers(1, max_support + 1))
        idx = np.sort(rng.choice(np.arange(1, horizon + 1), size=k, replace=False))
        if rng.random() < tie_fraction:
            vals = rng.choice(np.array([-2.0, -1.0, 1.0, 2.0]), size=k)
        else:
            vals = np.round(rng.normal(size=k), 6)
        x = SparseVector(zip(idx.tolist(), vals.tolist()))
        if len(x):
            out.append(x)
    return out


def parse_vectors(text: str) -> list[SparseVector]:
    """A JSON vector ``[[i, a], ...]`` or a list of them."""
    data = json.loads(text)
    if data and isinstance(data[0], list) and data[0] and isinstance(data[0][0], (int, float)):
        data = [data]
    return [SparseVector((int(i), float(a)) for i, a in v) for v in data]


def format_value(v):
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(v)
    if isinstance(v, (list, tuple)):
        return " ".join(format_value(t) for t in v)
    return str(v)


def emit(rows: list[dict], columns: list[str], fmt: str = "csv", out: str | None = None) -> str:
    """Render rows as CSV or JSON and write them to ``out`` (or return the text)."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(row.get(c, "")) for c in columns])
        text = buf.getvalue()
    elif fmt == "json":
        clean = [{c: row.get(c) for c in columns} for row in rows]
        text = json.dumps(clean, indent=2, sort_keys=True, default=str) + "\n"
    else:
        raise ValueError("format must be csv or json")
    if out:
        Path(out).write_text(text)
    return text


def config_dict(config: RunConfig) -> dict:
    return asdict(config)
