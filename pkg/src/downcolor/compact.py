"""Compact closure tables: one row per vertex, one column per color.

Cell ``(u, c)`` holds the unique member of ``D[u]`` colored ``c``, when
a valid down-coloring backs the table.  The full transitive closure is
recoverable from the non-empty cells, at n*k cells instead of n^2.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from . import _kernels
from .coloring import Coloring, find_down_violation
from .digraph import Digraph
from .errors import ColoringError


@dataclass(frozen=True)
class CompactMatrix:
    """k columns; rows keyed and ordered by vertex label."""

    k: int
    labels: tuple[str, ...]
    rows: dict[str, tuple[str | None, ...]]

    def __post_init__(self):
        if set(self.labels) != set(self.rows):
            raise ValueError("row keys must match the label list")
        if tuple(sorted(self.labels)) != self.labels:
            raise ValueError("rows must be ordered by label")
        for lab, cells in self.rows.items():
            if len(cells) != self.k:
                raise ValueError(f"row {lab!r} has {len(cells)} cells, expected {self.k}")

    def column_of(self, label: str) -> int | None:
        """1-based column in which ``label`` occurs, scanning rows in order.

        None when it occurs nowhere; a valid table places each vertex in
        exactly one column, so the first hit is the column.
        """
        for lab in self.labels:
            cells = self.rows[lab]
            for j, cell in enumerate(cells):
                if cell == label:
                    return j + 1
        return None


def build_compact(g: Digraph, c: Coloring) -> CompactMatrix:
    """Lay the closed down-sets out by color; rejects invalid colorings
    with the offending pair and witness ancestor."""
    violation = find_down_violation(g, c)
    if violation is not None:
        u, v, w = violation
        raise ColoringError(
            f"not a down-coloring: {u} and {v} share a color inside the "
            f"closed down-set of {w}", witness=violation)
    bits = g._closure_bits()
    labels = tuple(sorted(g.labels))
    rows: dict[str, tuple[str | None, ...]] = {}
    for lab in labels:
        u = g.id_of(lab)
        cells: list[str | None] = [None] * c.k
        for v in _kernels.row_ids(bits[u]):
            member = g.label_of(int(v))
            cells[c.colors[member] - 1] = member
        rows[lab] = tuple(cells)
    return CompactMatrix(c.k, labels, rows)


# ------------------------------------------------------------ validation

@dataclass(frozen=True)
class AcCheck:
    """Falsy on failure; names the first violated clause and a witness."""

    ok: bool
    clause: int | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_ac_property(m: CompactMatrix, g: Digraph) -> AcCheck:
    """Check the three clauses of a valid compact table against ``g``:
    (1) every vertex sits in one column wherever it appears, (2) the
    non-empty cells of row u are exactly D[u], (3) vertices sharing a
    column have disjoint closed ancestor sets (via the reversed closure).
    """
    column: dict[str, int] = {}
    for lab in m.labels:
        for j, cell in enumerate(m.rows[lab]):
            if cell is None:
                continue
            if cell in column and column[cell] != j:
                return AcCheck(False, 1,
                               f"{cell} appears in columns {column[cell] + 1} "
                               f"and {j + 1}")
            column.setdefault(cell, j)

    if set(m.labels) != set(g.labels):
        return AcCheck(False, 2, "row labels differ from the digraph's vertices")
    bits = g._closure_bits()
    for lab in m.labels:
        u = g.id_of(lab)
        want = {g.label_of(int(v)) for v in _kernels.row_ids(bits[u])}
        got = {cell for cell in m.rows[lab] if cell is not None}
        if got != want:
            extra = sorted(got - want)
            missing = sorted(want - got)
            return AcCheck(False, 2,
                           f"row {lab}: extra {extra}, missing {missing}")

    rg = Digraph(g.labels, [(v, u) for u, v in g.edges()])
    anc = rg._closure_bits()
    by_col: dict[int, list[str]] = {}
    for lab, j in column.items():
        by_col.setdefault(j, []).append(lab)
    for j in sorted(by_col):
        members = sorted(by_col[j])
        for a in range(len(members)):
            ua = g.id_of(members[a])
            for b in range(a + 1, len(members)):
                ub = g.id_of(members[b])
                meet = anc[ua] & anc[ub]
                if meet.any():
                    w = int(_kernels.row_ids(meet)[0])
                    return AcCheck(False, 3,
                                   f"column {j + 1}: {members[a]} and "
                                   f"{members[b]} share ancestor {g.label_of(w)}")
    return AcCheck(True)


# --------------------------------------------------------- serialization

def to_csv(m: CompactMatrix) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["vertex"] + [f"c{i}" for i in range(1, m.k + 1)])
    for lab in m.labels:
        writer.writerow([lab] + ["" if x is None else x for x in m.rows[lab]])
    return buf.getvalue()


def from_csv(text: str) -> CompactMatrix:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ValueError("empty CSV document") from None
    if not header or header[0] != "vertex":
        raise ValueError("first CSV column must be 'vertex'")
    k = len(header) - 1
    if header[1:] != [f"c{i}" for i in range(1, k + 1)]:
        raise ValueError("CSV columns must be named c1..ck")
    rows: dict[str, tuple[str | None, ...]] = {}
    for rec in reader:
        if not rec:
            continue
        if len(rec) != k + 1:
            raise ValueError(f"row {rec[0]!r} has {len(rec) - 1} cells, expected {k}")
        if rec[0] in rows:
            raise ValueError(f"duplicate row {rec[0]!r}")
        rows[rec[0]] = tuple(x if x else None for x in rec[1:])
    return CompactMatrix(k, tuple(sorted(rows)), rows)


def to_json(m: CompactMatrix) -> str:
    doc = {"k": m.k, "rows": {lab: list(m.rows[lab]) for lab in m.labels}}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def from_json(text: str) -> CompactMatrix:
    doc = json.loads(text)
    if not isinstance(doc, dict) or "k" not in doc or "rows" not in doc:
        raise ValueError("compact document needs 'k' and 'rows'")
    k = doc["k"]
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise ValueError("'k' must be a natural number")
    rows = {lab: tuple(cells) for lab, cells in doc["rows"].items()}
    return CompactMatrix(k, tuple(sorted(rows)), rows)


def serialize(m: CompactMatrix, fmt: str = "csv") -> str:
    if fmt == "csv":
        return to_csv(m)
    if fmt == "json":
        return to_json(m)
    raise ValueError(f"unknown format {fmt!r}")


def parse_compact(text: str, fmt: str = "csv") -> CompactMatrix:
    if fmt == "csv":
        return from_csv(text)
    if fmt == "json":
        return from_json(text)
    raise ValueError(f"unknown format {fmt!r}")


# ----------------------------------------------------------------- stats

@dataclass(frozen=True)
class CompressionStats:
    n: int
    k: int
    dense_cells: int
    compact_cells: int
    fill_ratio: float


def stats(m: CompactMatrix) -> CompressionStats:
    n = len(m.labels)
    compact_cells = n * m.k
    nonempty = sum(1 for lab in m.labels
                   for cell in m.rows[lab] if cell is not None)
    fill = nonempty / compact_cells if compact_cells else 1.0
    return CompressionStats(n=n, k=m.k, dense_cells=n * n,
                            compact_cells=compact_cells, fill_ratio=fill)


def canonical_columns(m: CompactMatrix) -> CompactMatrix:
    """Permute columns into first-use order.

    Scanning rows by label and cells left to right, columns are
    renumbered in order of first occupied appearance; empty columns
    trail in their old order.  Tables that differ only by a color
    permutation canonicalize identically.
    """
    perm: list[int] = []
    for lab in m.labels:
        for j, cell in enumerate(m.rows[lab]):
            if cell is not None and j not in perm:
                perm.append(j)
    perm += [j for j in range(m.k) if j not in perm]
    rows = {lab: tuple(m.rows[lab][j] for j in perm) for lab in m.labels}
    return CompactMatrix(m.k, m.labels, rows)
