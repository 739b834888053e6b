"""Hypergraphs, their digraph dictionary, and degeneracy peeling.

A hypergraph here is a labeled vertex set plus a list of hyperedges.
The list may be a proper multiset, and edges of cardinality below two
may be present; :meth:`Hypergraph.simplify` merges duplicates and drops
the trivial edges.  Degrees count the non-trivial edges containing a
vertex, with multiplicity.

The dictionary with digraphs: ``down_hypergraph`` collects the open (or
closed) down-sets of the maximal vertices, ``up_digraph`` goes back by
hanging a fresh top vertex over every hyperedge.  On simple hypergraphs
and on height-two digraphs with distinct tops these are inverse to each
other.
"""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator

from . import _kernels
from .digraph import Digraph, UndirectedGraph, _check_labels, max_vertices
from .errors import ParseError


class Hypergraph:
    """Immutable hypergraph; edges are stored sorted, in list order."""

    __slots__ = ("_labels", "_index", "_edges", "_sigma", "_simple")

    def __init__(self, labels: Iterable[str], edges: Iterable[Iterable[int]],
                 simple: bool | None = None):
        """``simple=None`` detects simplicity; ``simple=True`` asserts it."""
        self._labels = tuple(labels)
        self._index = _check_labels(self._labels)
        n = len(self._labels)
        normalized: list[tuple[int, ...]] = []
        for e in edges:
            members = tuple(sorted(e))
            for u in members:
                if not 0 <= u < n:
                    raise ValueError(f"edge member {u} out of range for {n} vertices")
            if len(set(members)) != len(members):
                raise ValueError(f"repeated vertex inside edge {members}")
            normalized.append(members)
        self._edges = tuple(normalized)
        self._sigma = max((len(e) for e in self._edges), default=0)
        is_simple = (len(set(self._edges)) == len(self._edges)
                     and all(len(e) >= 2 for e in self._edges))
        if simple is None:
            self._simple = is_simple
        elif simple and not is_simple:
            raise ValueError("hypergraph declared simple has duplicate or trivial edges")
        else:
            self._simple = bool(simple) and is_simple

    @property
    def n(self) -> int:
        return len(self._labels)

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    @property
    def edges(self) -> tuple[tuple[int, ...], ...]:
        return self._edges

    @property
    def sigma(self) -> int:
        """Largest edge cardinality (0 when there are no edges)."""
        return self._sigma

    @property
    def simple(self) -> bool:
        return self._simple

    def id_of(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ValueError(f"unknown vertex label {label!r}") from None

    def label_of(self, u: int) -> str:
        return self._labels[u]

    def edge_label_sets(self) -> Iterator[frozenset[str]]:
        for e in self._edges:
            yield frozenset(self._labels[u] for u in e)

    def degree(self, u: int) -> int:
        """Number of non-trivial edges containing ``u``, with multiplicity."""
        if not 0 <= u < self.n:
            raise ValueError(f"vertex id {u} out of range")
        return sum(1 for e in self._edges if len(e) >= 2 and u in e)

    def simplify(self) -> "Hypergraph":
        """Merge duplicate edges and drop edges of cardinality < 2."""
        seen: set[tuple[int, ...]] = set()
        kept: list[tuple[int, ...]] = []
        for e in self._edges:
            if len(e) >= 2 and e not in seen:
                seen.add(e)
                kept.append(e)
        return Hypergraph(self._labels, kept, simple=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (set(self._labels) == set(other._labels)
                and Counter(self.edge_label_sets()) == Counter(other.edge_label_sets()))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, m={self.m}, sigma={self._sigma})"


def degree(h: Hypergraph, u: int) -> int:
    return h.degree(u)


def sigma(h: Hypergraph) -> int:
    return h.sigma


# ------------------------------------------------------------------ text

def parse_hypergraph(text: str) -> Hypergraph:
    """Parse the edge-per-line format: whitespace-separated member labels,
    single-token lines declaring isolated vertices, ``#`` comments."""
    labels: list[str] = []
    index: dict[str, int] = {}
    edges: list[tuple[int, ...]] = []

    def vid(tok: str) -> int:
        if tok not in index:
            index[tok] = len(labels)
            labels.append(tok)
        return index[tok]

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(set(toks)) != len(toks):
            raise ParseError("repeated vertex inside an edge", lineno)
        ids = [vid(t) for t in toks]
        if len(ids) >= 2:
            edges.append(tuple(ids))
    return Hypergraph(labels, edges)


def format_hypergraph(h: Hypergraph) -> str:
    """Serialize to the edge-per-line format, members and lines sorted;
    vertices in no edge appear on trailing single-token lines."""
    lines = sorted(" ".join(sorted(h.label_of(u) for u in e)) for e in h.edges)
    covered = {u for e in h.edges for u in e}
    lines += sorted(h.label_of(u) for u in range(h.n) if u not in covered)
    return "".join(line + "\n" for line in lines)


# ------------------------------------------------------------- dictionary

def down_hypergraph(g: Digraph, closed: bool = False,
                    simplify: bool = True) -> Hypergraph:
    """Hypergraph of the down-sets of the maximal vertices of ``g``.

    Open variant: vertex set is everything below some maximal vertex's
    level (all non-maximal vertices), edges are the open down-sets.
    Closed variant: vertex set is all of ``g``, edges are the closed
    down-sets.  Empty down-sets are never kept; ``simplify`` additionally
    merges duplicates and drops singletons.
    """
    bits = g._closure_bits()
    maxes = sorted(max_vertices(g))
    if closed:
        labels = g.labels
        remap = {u: u for u in range(g.n)}
    else:
        keep = [u for u in range(g.n) if g.parents(u)]
        labels = tuple(g.label_of(u) for u in keep)
        remap = {u: i for i, u in enumerate(keep)}
    edges: list[tuple[int, ...]] = []
    for w in maxes:
        members = [int(v) for v in _kernels.row_ids(bits[w])]
        if not closed:
            members.remove(w)
        if members:
            edges.append(tuple(remap[v] for v in members))
    h = Hypergraph(labels, edges, simple=None)
    return h.simplify() if simplify else h


def up_digraph(h: Hypergraph) -> Digraph:
    """Digraph with a fresh top vertex ``w<i>`` over the i-th hyperedge."""
    if not h.simple:
        raise ValueError("up_digraph requires a simple hypergraph")
    tops = tuple(f"w{i}" for i in range(h.m))
    clash = set(tops) & set(h.labels)
    if clash:
        raise ValueError(f"vertex labels collide with top labels: {sorted(clash)}")
    labels = h.labels + tops
    edges = [(h.n + i, u) for i, e in enumerate(h.edges) for u in e]
    return Digraph(labels, edges)


def clique_graph(h: Hypergraph) -> UndirectedGraph:
    """Graph joining every two vertices that share a hyperedge."""
    pairs: set[tuple[int, int]] = set()
    for e in h.edges:
        for i in range(len(e)):
            for j in range(i + 1, len(e)):
                pairs.add((e[i], e[j]))
    return UndirectedGraph(h.labels, sorted(pairs))


def intersection_graph(h: Hypergraph) -> UndirectedGraph:
    """Graph on the hyperedges, joined when they share a vertex."""
    labels = tuple(f"e{i}" for i in range(h.m))
    byv: list[list[int]] = [[] for _ in range(h.n)]
    for ei, e in enumerate(h.edges):
        for u in e:
            byv[u].append(ei)
    pairs: set[tuple[int, int]] = set()
    for lst in byv:
        for i in range(len(lst)):
            for j in range(i + 1, len(lst)):
                pairs.add((lst[i], lst[j]))
    return UndirectedGraph(labels, sorted(pairs))


def induced_subhypergraph(h: Hypergraph, s: Iterable[int]) -> Hypergraph:
    """Restriction to ``s``: edge intersections of cardinality >= 2,
    kept with multiplicity."""
    ids = sorted(set(s))
    for u in ids:
        if not 0 <= u < h.n:
            raise ValueError(f"vertex id {u} out of range")
    smask = set(ids)
    remap = {u: i for i, u in enumerate(ids)}
    labels = tuple(h.label_of(u) for u in ids)
    edges: list[tuple[int, ...]] = []
    for e in h.edges:
        cut = tuple(remap[x] for x in e if x in smask)
        if len(cut) >= 2:
            edges.append(cut)
    return Hypergraph(labels, edges, simple=False)


# ------------------------------------------------------------- degeneracy

@dataclass(frozen=True)
class DegeneracyResult:
    """Peeling outcome: the degeneracy and the removal order (vertex ids)."""

    value: int
    order: tuple[int, ...]


def degeneracy(h: Hypergraph) -> DegeneracyResult:
    """Iterated min-degree peeling; ties break on the smallest vertex id.

    Removing a vertex shrinks every incident edge; an edge dies when a
    single member remains, at which point that member loses one degree.
    The returned value is the largest degree seen at a removal, which
    equals the maximum over induced subhypergraphs of their minimum
    degree.
    """
    n = h.n
    edges = [e for e in h.edges if len(e) >= 2]
    size = [len(e) for e in edges]
    inc: list[list[int]] = [[] for _ in range(n)]
    for ei, e in enumerate(edges):
        for u in e:
            inc[u].append(ei)
    deg = [len(inc[u]) for u in range(n)]
    alive = [True] * n
    heap: list[tuple[int, int]] = [(deg[u], u) for u in range(n)]
    heapq.heapify(heap)
    order: list[int] = []
    value = 0
    while len(order) < n:
        d, u = heapq.heappop(heap)
        if not alive[u] or d != deg[u]:
            continue
        alive[u] = False
        value = max(value, d)
        order.append(u)
        for ei in inc[u]:
            if size[ei] <= 1:
                continue
            size[ei] -= 1
            if size[ei] == 1:
                for w in edges[ei]:
                    if alive[w]:
                        deg[w] -= 1
                        heapq.heappush(heap, (deg[w], w))
                        break
    return DegeneracyResult(value, tuple(order))


def graph_degeneracy(g: UndirectedGraph) -> DegeneracyResult:
    """Degeneracy of a graph via the same peeling, viewed 2-uniform."""
    return degeneracy(Hypergraph(g.labels, g.edges()))
