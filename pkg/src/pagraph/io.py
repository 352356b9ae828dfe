"""File formats and deterministic emission.

Graph files ("pagraph v1") carry the model parameters and the full draw log,
so a file regenerates its graph exactly. Pattern files ("pattern v1") are a
header `k e` plus one `i j` line per edge. CSV and JSON emitters stamp every
artifact with the config hash that produced it and write deterministically,
so equal configs give byte-identical files.
"""

from __future__ import annotations

import hashlib
import json
import os
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .census import OrderedPattern
from .core import ArrivalGraph
from .generator import ModelParams

__all__ = [
    "write_graph",
    "read_graph",
    "write_pattern",
    "read_pattern",
    "config_hash",
    "load_config_file",
    "write_csv",
    "write_json",
]

_GRAPH_MAGIC = "pagraph"
_GRAPH_VERSION = "1"


def write_graph(path: str, g: ArrivalGraph, params: ModelParams) -> None:
    """Emit pagraph v1: header, then one `child parent` line per draw."""
    if params.m != g.m:
        raise ValueError("params.m does not match the graph")
    p, q = params.scaled
    lines = [
        f"{_GRAPH_MAGIC} {_GRAPH_VERSION} m={g.m} delta={p}/{q} "
        f"n={g.last_index} seed={params.seed}"
    ]
    for child, parent in g.draws():
        lines.append(f"{child} {parent}")
    lines.append("")
    _atomic_write(path, "\n".join(lines))


def read_graph(path: str) -> tuple[ArrivalGraph, ModelParams]:
    """Parse and validate a pagraph v1 file.

    Rejects malformed headers, draw counts that disagree with the header,
    children out of arrival order, and parents not older than their child.
    """
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().rstrip("\n")
        fields = header.split()
        if len(fields) != 6 or fields[0] != _GRAPH_MAGIC or fields[1] != _GRAPH_VERSION:
            raise ValueError(f"malformed pagraph header: {header!r}")
        try:
            m = int(_expect_key(fields[2], "m"))
            delta = _parse_delta(_expect_key(fields[3], "delta"))
            n = int(_expect_key(fields[4], "n"))
            seed = int(_expect_key(fields[5], "seed"))
        except ValueError as exc:
            raise ValueError(f"malformed pagraph header: {exc}") from exc
        params = ModelParams(m=m, delta=delta, seed=seed)
        parents = []
        expected = m * n
        for t, line in enumerate(fh):
            line = line.strip()
            if not line:
                continue
            if t >= expected:
                raise ValueError(f"more than the {expected} draws announced in the header")
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"draw line {t}: expected `child parent`, got {line!r}")
            child, parent = int(parts[0]), int(parts[1])
            if child != t // m + 1:
                raise ValueError(f"draw line {t}: child {child} out of arrival order")
            if parent >= child:
                raise ValueError(f"draw line {t}: parent {parent} not older than child {child}")
            parents.append(parent)
        if len(parents) != expected:
            raise ValueError(
                f"draw count {len(parents)} disagrees with header n={n} (expected {expected})"
            )
    g = ArrivalGraph.from_parents(m, parents)
    g.validate()
    return g, params


def _expect_key(field: str, key: str) -> str:
    prefix = key + "="
    if not field.startswith(prefix):
        raise ValueError(f"expected {key}=..., got {field!r}")
    return field[len(prefix):]


def _parse_delta(text: str) -> Fraction:
    if "/" not in text:
        raise ValueError(f"delta must be written p/q, got {text!r}")
    p, q = text.split("/", 1)
    return Fraction(int(p), int(q))


def write_pattern(path: str, pattern: OrderedPattern) -> None:
    """Emit pattern v1: `k e` then the edges as `i j` with i < j, sorted."""
    lines = [f"{pattern.k} {pattern.edge_count}"]
    for i, j in sorted(pattern.edges):
        lines.append(f"{i} {j}")
    lines.append("")
    _atomic_write(path, "\n".join(lines))


def read_pattern(path: str) -> OrderedPattern:
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError("pattern header must be `k e`")
        k, e = int(header[0]), int(header[1])
        edges = []
        for line in fh:
            line = line.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"bad edge line: {line!r}")
            i, j = int(parts[0]), int(parts[1])
            if not (1 <= i < j <= k):
                raise ValueError(f"edge ({i},{j}) violates 1 <= i < j <= {k}")
            edges.append((i, j))
    if len(edges) != e or len(set(edges)) != e:
        raise ValueError(f"expected {e} distinct edges, found {len(set(edges))}")
    return OrderedPattern(k, edges)


def config_hash(mapping: Mapping) -> str:
    """sha256 over the canonical JSON of a flat config mapping."""
    canon = {str(k): _canon_value(v) for k, v in mapping.items()}
    blob = json.dumps(canon, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("ascii")).hexdigest()


def _canon_value(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, (list, tuple)):
        return [_canon_value(x) for x in v]
    if isinstance(v, (str, int, float, bool)) or v is None:
        return v
    return str(v)


def load_config_file(path: str) -> dict[str, str]:
    """key = value lines; # starts a comment; later keys win."""
    out: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, value = line.split("=", 1)
            out[key.strip()] = value.strip()
    return out


def write_csv(
    path: str,
    fieldnames: Sequence[str],
    rows: Iterable[Mapping],
    cfg_hash: str,
) -> bool:
    """Write a hash-stamped CSV; returns False when the file already carries
    this hash (nothing is appended or rewritten, keeping re-runs byte-stable)."""
    if _existing_hash(path) == cfg_hash:
        return False
    lines = [f"# config_hash={cfg_hash}", ",".join(fieldnames)]
    for row in rows:
        lines.append(",".join(_format_cell(row[f]) for f in fieldnames))
    lines.append("")
    _atomic_write(path, "\n".join(lines))
    return True


def _format_cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return str(v)


def write_json(path: str, obj, cfg_hash: Optional[str] = None) -> bool:
    """Write a JSON report, stamped with the config hash when given."""
    payload = dict(obj)
    if cfg_hash is not None:
        if payload.get("config_hash") not in (None, cfg_hash):
            raise ValueError("record already carries a different config hash")
        payload["config_hash"] = cfg_hash
        if _existing_hash_json(path) == cfg_hash:
            return False
    _atomic_write(path, json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return True


def _existing_hash(path: str) -> Optional[str]:
    if not os.path.exists(path):
        return None
    try:
        with open(path, "r", encoding="ascii") as fh:
            first = fh.readline().strip()
    except OSError:
        return None
    prefix = "# config_hash="
    return first[len(prefix):] if first.startswith(prefix) else None


def _existing_hash_json(path: str) -> Optional[str]:
    if not os.path.exists(path):
        return None
    try:
        with open(path, "r", encoding="ascii") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError):
        return None
    return data.get("config_hash") if isinstance(data, dict) else None


def _atomic_write(path: str, text: str) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)
