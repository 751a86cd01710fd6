"""Readers and writers: hypergraph files, ScHoLP simplex lists, CSV datasets, JSON.

Files use 1-based vertex ids; everything in memory is 0-based.

Hypergraph file::

    uniform <m+1> <n> <directed|undirected>
    1 2 3
    2 3 4 w=0.5

Blank lines and lines starting with ``#`` are ignored. For directed files the
last id on a line is the head.
"""

from __future__ import annotations

import csv
import json
import sys
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from .eigenmap import Dataset
from .hypergraph import Hypergraph, Multigraph

SCHEMA_VERSION = 1


class InputError(ValueError):
    """Malformed input; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"line {line}: "
        elif where:
            where += " "
        super().__init__(where + message)


@contextmanager
def _open_text(path, mode="r"):
    if str(path) == "-":
        yield sys.stdin if "r" in mode else sys.stdout
        return
    try:
        fh = open(path, mode, newline="" if "r" in mode else None)
    except OSError as exc:
        raise InputError(f"cannot open {path}: {exc.strerror}") from None
    with fh:
        yield fh


# --------------------------------------------------------------------------
# Hypergraph files


def parse_hypergraph(text: str, source: str | None = None) -> Hypergraph:
    header = None
    edges, weights, any_weight = [], [], False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 4 or parts[0] != "uniform" or parts[3] not in ("directed", "undirected"):
                raise InputError("header must be 'uniform <m+1> <n> <directed|undirected>'", lineno, source)
            try:
                size, n = int(parts[1]), int(parts[2])
            except ValueError:
                raise InputError("header sizes must be integers", lineno, source) from None
            if size < 2 or n < 0:
                raise InputError("need m+1 >= 2 and n >= 0", lineno, source)
            header = (size, n, parts[3] == "directed")
            continue
        size, n, directed = header
        tokens = line.split()
        w = 1.0
        if tokens and tokens[-1].startswith("w="):
            try:
                w = float(tokens[-1][2:])
            except ValueError:
                raise InputError(f"bad weight {tokens[-1]!r}", lineno, source) from None
            if not np.isfinite(w) or w < 0:
                raise InputError("weights must be finite and non-negative", lineno, source)
            any_weight = True
            tokens = tokens[:-1]
        try:
            ids = [int(t) for t in tokens]
        except ValueError:
            raise InputError(f"non-integer vertex id in {line!r}", lineno, source) from None
        if len(ids) != size:
            raise InputError(f"expected {size} vertex ids, found {len(ids)}", lineno, source)
        bad = [v for v in ids if not 1 <= v <= n]
        if bad:
            raise InputError(f"vertex id {bad[0]} outside 1..{n}", lineno, source)
        if len(set(ids)) != len(ids):
            raise InputError(f"duplicate vertex in hyperedge {line!r}", lineno, source)
        edges.append(tuple(v - 1 for v in ids))
        weights.append(w)
    if header is None:
        raise InputError("missing header line", 1, source)
    size, n, directed = header
    return Hypergraph(n, size, tuple(edges), directed, tuple(weights) if any_weight else None)


def read_hypergraph(path) -> Hypergraph:
    with _open_text(path) as fh:
        text = fh.read()
    return parse_hypergraph(text, None if str(path) == "-" else str(path))


def format_hypergraph(G: Hypergraph) -> str:
    G = G.canonical()
    out = [f"uniform {G.size} {G.n} {'directed' if G.directed else 'undirected'}"]
    for k, e in enumerate(G.edges):
        line = " ".join(str(v + 1) for v in e)
        if G.weights is not None:
            line += f" w={G.weights[k]:.17g}"
        out.append(line)
    return "\n".join(out) + "\n"


def write_hypergraph(G: Hypergraph, path) -> None:
    with _open_text(path, "w") as fh:
        fh.write(format_hypergraph(G))


def format_multigraph(M: Multigraph) -> str:
    kind = "directed" if M.directed else "undirected"
    lines = [f"multigraph {M.n} {kind}"] + [f"{i + 1} {j + 1}" for i, j in M.edges]
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# ScHoLP


def _read_ints(path: Path) -> list[int]:
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot open {path}: {exc.strerror}") from None
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        for tok in line.split():
            try:
                out.append(int(tok))
            except ValueError:
                raise InputError(f"non-integer token {tok!r}", lineno, str(path)) from None
    return out


def read_scholp(prefix, size: int = 3, return_ids: bool = False):
    """Hyperedges of exactly ``size`` vertices from ``<prefix>-nverts.txt`` and
    ``<prefix>-simplices.txt``, kept with multiplicity.

    Vertex ids are compacted to ``0..k-1`` in increasing original order over the
    kept simplices. With ``return_ids`` the original ids are returned too.
    """
    prefix = str(prefix)
    nverts = _read_ints(Path(prefix + "-nverts.txt"))
    simplices = _read_ints(Path(prefix + "-simplices.txt"))
    if any(k < 1 for k in nverts):
        raise InputError("simplex sizes must be positive", source=prefix + "-nverts.txt")
    if sum(nverts) != len(simplices):
        raise InputError(f"nverts sums to {sum(nverts)} but the simplex stream has {len(simplices)} ids",
                         source=prefix + "-simplices.txt")
    kept, pos = [], 0
    for k in nverts:
        s = simplices[pos:pos + k]
        pos += k
        if k == size:
            if len(set(s)) != k:
                raise InputError(f"simplex {s} repeats a vertex", source=prefix + "-simplices.txt")
            kept.append(s)
    ids = sorted({v for s in kept for v in s})
    index = {v: i for i, v in enumerate(ids)}
    G = Hypergraph(len(ids), size, tuple(tuple(index[v] for v in s) for s in kept))
    return (G, ids) if return_ids else G


# --------------------------------------------------------------------------
# CSV datasets


def read_csv_dataset(path, label_col: str | None = None) -> Dataset:
    """Numeric features plus labels integer-encoded in first-appearance order."""
    src = None if str(path) == "-" else str(path)
    with _open_text(path) as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise InputError("empty CSV", 1, src)
    header = [h.strip() for h in rows[0]]
    if label_col is not None and label_col not in header:
        raise InputError(f"label column {label_col!r} not in header", 1, src)
    li = header.index(label_col) if label_col is not None else None
    feats = [h for k, h in enumerate(header) if k != li]
    if not feats:
        raise InputError("no feature columns", 1, src)
    X, raw_labels = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(header):
            raise InputError(f"expected {len(header)} fields, found {len(row)}", lineno, src)
        vals = []
        for k, cell in enumerate(row):
            if k == li:
                raw_labels.append(cell.strip())
                continue
            try:
                v = float(cell)
            except ValueError:
                raise InputError(f"non-numeric value {cell!r} in column {header[k]!r}", lineno, src) from None
            if not np.isfinite(v):
                raise InputError(f"non-finite value in column {header[k]!r}", lineno, src)
            vals.append(v)
        X.append(vals)
    if not X:
        raise InputError("CSV has no data rows", 2, src)
    labels = names = None
    if li is not None:
        codes: dict[str, int] = {}
        labels = np.array([codes.setdefault(s, len(codes)) for s in raw_labels])
        names = tuple(codes)
    return Dataset(np.array(X), labels, tuple(feats), names or ())


def write_csv(path, header: list[str], rows) -> None:
    with _open_text(path, "w") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([f"{v:.17g}" if isinstance(v, float) else v for v in r])


# --------------------------------------------------------------------------
# JSON


def _default(o):
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    raise TypeError(f"not JSON serialisable: {type(o).__name__}")


def to_json(obj: dict) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, **obj}, default=_default, indent=2)


def write_json(obj: dict, path) -> None:
    with _open_text(path, "w") as fh:
        fh.write(to_json(obj) + "\n")


def read_json(path) -> dict:
    with _open_text(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc.msg}", exc.lineno, None if str(path) == "-" else str(path)) from None


def read_arccc_instance(path):
    """``{n, candidates: [{vertices: [1-based ids], cost}], budget}``."""
    from .arccc import ArcccInstance

    d = read_json(path)
    try:
        n = int(d["n"])
        cands = [tuple(int(v) - 1 for v in c["vertices"]) for c in d["candidates"]]
        costs = [float(c["cost"]) for c in d["candidates"]]
        budget = float(d["budget"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed ARCCC instance: {exc}") from None
    try:
        return ArcccInstance(n, tuple(cands), np.array(costs), budget)
    except ValueError as exc:
        raise InputError(str(exc)) from None
