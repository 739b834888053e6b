"""Labeled digraphs, reachability order, and derived conflict graphs.

An edge ``(u, v)`` points from ancestor to descendant: ``v`` is below
``u``.  The closed down-set ``D[u]`` collects ``u`` and everything
reachable from it; the open down-set ``D(u)`` drops ``u`` itself.
Vertices carry string labels and dense integer ids (0..n-1, in label
registration order); the library works on ids internally and uses labels
at every textual boundary.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator

import numpy as np

from . import _kernels
from .errors import CyclicGraphError, ParseError


def _check_labels(labels: tuple[str, ...]) -> dict[str, int]:
    index: dict[str, int] = {}
    for i, lab in enumerate(labels):
        if not isinstance(lab, str) or lab.split() != [lab]:
            raise ValueError(
                f"bad vertex label {lab!r}: labels are non-empty strings "
                "without whitespace")
        if lab in index:
            raise ValueError(f"duplicate vertex label {lab!r}")
        index[lab] = i
    return index


class Digraph:
    """Immutable digraph; edges run ancestor -> descendant."""

    __slots__ = ("_labels", "_index", "_children", "_parents", "_m",
                 "_topo", "_closure", "_csr")

    def __init__(self, labels: Iterable[str], edges: Iterable[tuple[int, int]]):
        self._labels = tuple(labels)
        self._index = _check_labels(self._labels)
        n = len(self._labels)
        children: list[list[int]] = [[] for _ in range(n)]
        parents: list[list[int]] = [[] for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                raise ValueError(f"self-loop at {self._labels[u]!r}")
            if (u, v) in seen:
                raise ValueError(
                    f"duplicate edge {self._labels[u]!r} -> {self._labels[v]!r}")
            seen.add((u, v))
            children[u].append(v)
            parents[v].append(u)
        self._children = tuple(tuple(sorted(c)) for c in children)
        self._parents = tuple(tuple(sorted(p)) for p in parents)
        self._m = len(seen)
        self._topo: tuple[int, ...] | None = None
        self._closure: np.ndarray | None = None
        self._csr: tuple[np.ndarray, np.ndarray] | None = None

    @classmethod
    def from_label_pairs(cls, pairs: Iterable[tuple[str, str]],
                         isolated: Iterable[str] = ()) -> "Digraph":
        """Build from labeled edges; vertices appear in first-mention order."""
        labels: list[str] = []
        index: dict[str, int] = {}

        def vid(lab: str) -> int:
            if lab not in index:
                index[lab] = len(labels)
                labels.append(lab)
            return index[lab]

        edges = [(vid(u), vid(v)) for u, v in pairs]
        for lab in isolated:
            vid(lab)
        return cls(labels, edges)

    @property
    def n(self) -> int:
        return len(self._labels)

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    @property
    def edge_count(self) -> int:
        return self._m

    def id_of(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ValueError(f"unknown vertex label {label!r}") from None

    def label_of(self, u: int) -> str:
        return self._labels[u]

    def children(self, u: int) -> tuple[int, ...]:
        return self._children[u]

    def parents(self, u: int) -> tuple[int, ...]:
        return self._parents[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self._children[u]:
                yield (u, v)

    def edge_labels(self) -> Iterator[tuple[str, str]]:
        for u, v in self.edges():
            yield (self._labels[u], self._labels[v])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return (set(self._labels) == set(other._labels)
                and set(self.edge_labels()) == set(other.edge_labels()))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, edges={self._m})"

    # internal machinery -------------------------------------------------

    def _csr_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        if self._csr is None:
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            for u in range(self.n):
                indptr[u + 1] = indptr[u] + len(self._children[u])
            indices = np.fromiter(
                (v for u in range(self.n) for v in self._children[u]),
                dtype=np.int64, count=self._m)
            self._csr = (indptr, indices)
        return self._csr

    def topological_order(self) -> tuple[int, ...]:
        """Ancestors-first order of all vertices; raises on a cycle."""
        if self._topo is None:
            indeg = [len(p) for p in self._parents]
            queue = deque(u for u in range(self.n) if indeg[u] == 0)
            order: list[int] = []
            while queue:
                u = queue.popleft()
                order.append(u)
                for v in self._children[u]:
                    indeg[v] -= 1
                    if indeg[v] == 0:
                        queue.append(v)
            if len(order) != self.n:
                raise CyclicGraphError(self._find_cycle(set(range(self.n)) - set(order)))
            self._topo = tuple(order)
        return self._topo

    def _find_cycle(self, residue: set[int]) -> list[str]:
        # Every vertex of the residue has a parent inside it, so walking
        # parents must revisit a vertex.
        start = min(residue)
        path = [start]
        pos = {start: 0}
        while True:
            u = path[-1]
            p = min(w for w in self._parents[u] if w in residue)
            if p in pos:
                cyc = path[pos[p]:] + [p]
                cyc.reverse()  # parent walk records edges backwards
                return [self._labels[v] for v in cyc]
            pos[p] = len(path)
            path.append(p)

    def _closure_bits(self) -> np.ndarray:
        """Closed down-set bitsets for all vertices (acyclic input only)."""
        if self._closure is None:
            order = np.array(self.topological_order()[::-1], dtype=np.int64)
            indptr, indices = self._csr_arrays()
            self._closure = _kernels.closure_bits(self.n, indptr, indices, order)
        return self._closure


class UndirectedGraph:
    """Immutable undirected graph with the same label discipline."""

    __slots__ = ("_labels", "_index", "_adj", "_edges", "_eset", "_csr")

    def __init__(self, labels: Iterable[str], edges: Iterable[tuple[int, int]]):
        self._labels = tuple(labels)
        self._index = _check_labels(self._labels)
        n = len(self._labels)
        adj: list[list[int]] = [[] for _ in range(n)]
        eset: set[tuple[int, int]] = set()
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge ({a}, {b}) out of range for {n} vertices")
            if a == b:
                raise ValueError(f"self-loop at {self._labels[a]!r}")
            key = (a, b) if a < b else (b, a)
            if key in eset:
                raise ValueError(
                    f"duplicate edge {self._labels[key[0]]!r} -- {self._labels[key[1]]!r}")
            eset.add(key)
            adj[a].append(b)
            adj[b].append(a)
        self._adj = tuple(tuple(sorted(x)) for x in adj)
        self._edges = tuple(sorted(eset))
        self._eset = frozenset(eset)
        self._csr: tuple[np.ndarray, np.ndarray] | None = None

    @property
    def n(self) -> int:
        return len(self._labels)

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def id_of(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ValueError(f"unknown vertex label {label!r}") from None

    def label_of(self, u: int) -> str:
        return self._labels[u]

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self._adj[u]

    def degree(self, u: int) -> int:
        return len(self._adj[u])

    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    def edge_labels(self) -> Iterator[tuple[str, str]]:
        for a, b in self._edges:
            yield (self._labels[a], self._labels[b])

    def has_edge(self, a: int, b: int) -> bool:
        return ((a, b) if a < b else (b, a)) in self._eset

    def is_complete(self) -> bool:
        return 2 * self.edge_count == self.n * (self.n - 1)

    def connected_components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps: list[list[int]] = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for v in self._adj[u]:
                    if not seen[v]:
                        seen[v] = True
                        comp.append(v)
                        queue.append(v)
            comps.append(sorted(comp))
        return comps

    def is_forest(self) -> bool:
        return self.edge_count == self.n - len(self.connected_components())

    def _csr_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        if self._csr is None:
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            for u in range(self.n):
                indptr[u + 1] = indptr[u] + len(self._adj[u])
            indices = np.fromiter(
                (v for u in range(self.n) for v in self._adj[u]),
                dtype=np.int64, count=2 * self.edge_count)
            self._csr = (indptr, indices)
        return self._csr

    def __eq__(self, other) -> bool:
        if not isinstance(other, UndirectedGraph):
            return NotImplemented
        mine = {frozenset(e) for e in self.edge_labels()}
        theirs = {frozenset(e) for e in other.edge_labels()}
        return set(self._labels) == set(other._labels) and mine == theirs

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"UndirectedGraph(n={self.n}, edges={self.edge_count})"


# ------------------------------------------------------------------ text

def parse_digraph(text: str) -> Digraph:
    """Parse the edge-list format: one ``ancestor descendant`` pair per
    line, single-token lines declaring isolated vertices, ``#`` comments.
    """
    labels: list[str] = []
    index: dict[str, int] = {}
    edges: list[tuple[int, int]] = []
    eset: set[tuple[int, int]] = set()

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
        if len(toks) == 1:
            vid(toks[0])
        elif len(toks) == 2:
            u, v = vid(toks[0]), vid(toks[1])
            if u == v:
                raise ParseError(f"self-loop at {toks[0]!r}", lineno)
            if (u, v) in eset:
                raise ParseError(f"duplicate edge {toks[0]} -> {toks[1]}", lineno)
            eset.add((u, v))
            edges.append((u, v))
        else:
            raise ParseError(f"expected 1 or 2 tokens, got {len(toks)}", lineno)
    return Digraph(labels, edges)


def format_digraph(g: Digraph) -> str:
    """Serialize to the edge-list format, edges sorted by label pair,
    isolated vertices on trailing single-token lines."""
    lines = sorted(f"{lu} {lv}" for lu, lv in g.edge_labels())
    lines += sorted(g.label_of(u) for u in range(g.n)
                    if not g.children(u) and not g.parents(u))
    return "".join(line + "\n" for line in lines)


# ------------------------------------------------------------ basic order

def is_acyclic(g: Digraph) -> bool:
    try:
        g.topological_order()
        return True
    except CyclicGraphError:
        return False


def down_set(g: Digraph, u: int, closed: bool = True) -> frozenset[int]:
    """Vertices reachable from ``u``; ``closed`` keeps ``u`` itself."""
    g.topological_order()  # acyclicity gate
    if not 0 <= u < g.n:
        raise ValueError(f"vertex id {u} out of range")
    seen = {u}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for v in g.children(x):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    if not closed:
        seen.discard(u)
    return frozenset(seen)


def max_vertices(g: Digraph) -> frozenset[int]:
    """Maximal elements of the reachability order: the in-degree-0 vertices."""
    g.topological_order()
    return frozenset(u for u in range(g.n) if not g.parents(u))


def big_d(g: Digraph) -> int:
    """Largest closed down-set size; 0 on the empty digraph."""
    if g.n == 0:
        return 0
    return int(_kernels.popcounts(g._closure_bits()).max())


# ------------------------------------------------------- transformations

def _scc(g: Digraph) -> tuple[list[int], list[list[int]]]:
    """Iterative Tarjan; returns (component id per vertex, components)."""
    n = g.n
    index = [-1] * n
    low = [0] * n
    onstack = [False] * n
    stack: list[int] = []
    comp = [-1] * n
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work: list[tuple[int, int]] = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                onstack[v] = True
            descend = False
            ch = g.children(v)
            for i in range(pi, len(ch)):
                w = ch[i]
                if index[w] == -1:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    descend = True
                    break
                if onstack[w]:
                    low[v] = min(low[v], index[w])
            if descend:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                members: list[int] = []
                while True:
                    w = stack.pop()
                    onstack[w] = False
                    comp[w] = len(comps)
                    members.append(w)
                    if w == v:
                        break
                comps.append(sorted(members))
    return comp, comps


def condense_to_acyclic(g: Digraph) -> Digraph:
    """Collapse every strongly connected component onto a representative.

    The representative is the lexicographically smallest label of the
    component; it keeps an edge to every other member, and component-
    crossing edges are rerouted between representatives.  The result is
    acyclic on the same vertex set, and its down-graph coincides with
    the reachability-based conflict graph of the input.
    """
    comp, comps = _scc(g)
    reps = [min(members, key=g.label_of) for members in comps]
    edges: set[tuple[int, int]] = set()
    for ci, members in enumerate(comps):
        r = reps[ci]
        for v in members:
            if v != r:
                edges.add((r, v))
    for x, y in g.edges():
        if comp[x] != comp[y]:
            edges.add((reps[comp[x]], reps[comp[y]]))
    return Digraph(g.labels, sorted(edges))


def height_two_reduction(g: Digraph) -> Digraph:
    """Rewire every maximal vertex directly onto its open down-set.

    The result has the same vertex set and the same down-graph, with all
    ancestor chains flattened to height two.
    """
    bits = g._closure_bits()
    edges: list[tuple[int, int]] = []
    for u in sorted(max_vertices(g)):
        for v in _kernels.row_ids(bits[u]):
            if int(v) != u:
                edges.append((u, int(v)))
    return Digraph(g.labels, edges)


def transitive_closure(g: Digraph) -> Digraph:
    """Edge (u, v) for every v strictly below u."""
    bits = g._closure_bits()
    edges: list[tuple[int, int]] = []
    for u in range(g.n):
        for v in _kernels.row_ids(bits[u]):
            if int(v) != u:
                edges.append((u, int(v)))
    return Digraph(g.labels, edges)


def down_graph(g: Digraph) -> UndirectedGraph:
    """Conflict graph: u ~ v when some closed down-set holds both.

    Only maximal vertices need scanning, since every closed down-set is
    contained in a maximal one.
    """
    bits = g._closure_bits()
    rows = np.fromiter(sorted(max_vertices(g)), dtype=np.int64)
    adj = _kernels.clique_union_bits(bits, rows)
    pairs: list[tuple[int, int]] = []
    for u in range(g.n):
        for v in _kernels.row_ids(adj[u]):
            if int(v) > u:
                pairs.append((u, int(v)))
    return UndirectedGraph(g.labels, pairs)
