"""Strong colorings of hypergraphs and down-colorings of digraphs.

A strong coloring gives distinct colors to the vertices inside every
hyperedge, i.e. properly colors the clique graph.  A down-coloring of an
acyclic digraph gives distinct colors to any two vertices that share a
closed down-set.  The two meet through the down-hypergraph: color it
strongly, then hand each maximal vertex the smallest color missing from
its open down-set.

The exact solver is a DSATUR-style branch and bound over the clique
graph, seeded with a greedy upper bound and a greedily grown clique.  It
refuses graphs above a vertex cap (default 30) and can be given a node
budget; a budget-exhausted search reports its bracketing bounds instead
of failing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from .digraph import (Digraph, UndirectedGraph, big_d, down_graph, down_set,
                      max_vertices)
from .errors import CapExceededError, ColoringError
from .hypergraph import (Hypergraph, clique_graph, degeneracy, down_hypergraph,
                         graph_degeneracy)

DEFAULT_EXACT_CAP = 30


@dataclass(frozen=True)
class Coloring:
    """Total color assignment by vertex label, colors 1..k, all used."""

    colors: dict[str, int]
    k: int
    method: str

    def __post_init__(self):
        if not self.colors:
            if self.k != 0:
                raise ValueError(f"empty coloring must have k = 0, got {self.k}")
            return
        if self.k < 1:
            raise ValueError("k must be >= 1 for a nonempty coloring")
        used = set()
        for lab, c in self.colors.items():
            if not isinstance(c, int) or isinstance(c, bool) or not 1 <= c <= self.k:
                raise ValueError(f"color of {lab!r} must lie in 1..{self.k}, got {c!r}")
            used.add(c)
        if used != set(range(1, self.k + 1)):
            missing = sorted(set(range(1, self.k + 1)) - used)
            raise ValueError(f"colors {missing} are declared but never used")


class ExactResult(NamedTuple):
    """Outcome of an exact search; ``exact`` is False on budget exhaustion,
    in which case ``k`` and ``lower`` bracket the true optimum."""

    k: int
    coloring: Coloring
    lower: int
    exact: bool


# ------------------------------------------------------------------ JSON

def coloring_to_json(c: Coloring) -> str:
    doc = {"k": c.k, "method": c.method,
           "colors": {lab: int(col) for lab, col in c.colors.items()}}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def coloring_from_json(text: str) -> Coloring:
    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise ValueError("coloring document must be a JSON object")
    try:
        k, method, colors = doc["k"], doc["method"], doc["colors"]
    except KeyError as exc:
        raise ValueError(f"coloring document missing key {exc}") from None
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise ValueError("'k' must be a natural number")
    if not isinstance(method, str):
        raise ValueError("'method' must be a string")
    if not isinstance(colors, dict):
        raise ValueError("'colors' must be an object")
    return Coloring(dict(colors), k, method)


# ------------------------------------------------------- greedy coloring

def _greedy_graph_colors(g: UndirectedGraph) -> np.ndarray:
    """First-fit along the reversed degeneracy elimination order.

    Uses at most one more color than the graph's degeneracy.
    """
    order = np.array(list(reversed(graph_degeneracy(g).order)), dtype=np.int64)
    indptr, indices = g._csr_arrays()
    return _kernels.greedy_color(order, indptr, indices)


def greedy_strong_coloring(h: Hypergraph) -> Coloring:
    """Strong coloring via the clique graph; k <= its degeneracy + 1."""
    g = clique_graph(h)
    if g.n == 0:
        return Coloring({}, 0, "greedy")
    arr = _greedy_graph_colors(g)
    return Coloring({g.label_of(u): int(arr[u]) for u in range(g.n)},
                    int(arr.max()), "greedy")


# -------------------------------------------------------- exact coloring

def _greedy_clique(n: int, adj: list[int]) -> list[int]:
    """Grow a clique greedily from every start vertex, keep the largest."""
    best: list[int] = []
    for s in range(n):
        clique = [s]
        cand = adj[s]
        while cand:
            pick, pick_score = -1, -1
            m = cand
            while m:
                v = (m & -m).bit_length() - 1
                m &= m - 1
                score = (adj[v] & cand).bit_count()
                if score > pick_score:
                    pick, pick_score = v, score
            clique.append(pick)
            cand &= adj[pick]
        if len(clique) > len(best):
            best = clique
    return best


def exact_chromatic(g: UndirectedGraph, cap: int | None = None,
                    budget: int | None = None) -> ExactResult:
    """Exact chromatic number by DSATUR branch and bound.

    Complete graphs are answered without search regardless of size;
    otherwise the vertex count must not exceed ``cap`` (default 30).
    """
    n = g.n
    if n == 0:
        return ExactResult(0, Coloring({}, 0, "exact"), 0, True)
    if g.is_complete():
        colors = {g.label_of(u): u + 1 for u in range(n)}
        return ExactResult(n, Coloring(colors, n, "exact"), n, True)
    limit = DEFAULT_EXACT_CAP if cap is None else cap
    if n > limit:
        raise CapExceededError(
            f"exact solver cap exceeded: {n} vertices > cap {limit}")

    adj = [0] * n
    for a, b in g.edges():
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    deg = [adj[v].bit_count() for v in range(n)]

    ub_arr = _greedy_graph_colors(g)
    best_k = int(ub_arr.max())
    best = [int(c) for c in ub_arr]
    clique = _greedy_clique(n, adj)
    lb = len(clique)

    exact = True
    if lb < best_k:
        colors = [0] * n
        sat = [0] * n
        nodes = 0
        aborted = False

        def stamp(v: int, c: int) -> list[int]:
            colors[v] = c
            bit = 1 << (c - 1)
            touched = []
            m = adj[v]
            while m:
                w = (m & -m).bit_length() - 1
                m &= m - 1
                if colors[w] == 0 and not sat[w] & bit:
                    sat[w] |= bit
                    touched.append(w)
            return touched

        def unstamp(v: int, c: int, touched: list[int]) -> None:
            bit = ~(1 << (c - 1))
            for w in touched:
                sat[w] &= bit
            colors[v] = 0

        k_seed = 0
        for i, v in enumerate(clique):
            stamp(v, i + 1)
            k_seed = i + 1

        def dfs(done: int, k_cur: int) -> None:
            nonlocal best_k, best, nodes, aborted
            if aborted or k_cur >= best_k:
                return
            if done == n:
                best_k = k_cur
                best = colors[:]
                return
            nodes += 1
            if budget is not None and nodes > budget:
                aborted = True
                return
            pick, key = -1, (-1, -1, 0)
            for v in range(n):
                if colors[v] == 0:
                    kv = (sat[v].bit_count(), deg[v], -v)
                    if kv > key:
                        pick, key = v, kv
            top = min(k_cur + 1, best_k - 1)
            for c in range(1, top + 1):
                if sat[pick] & (1 << (c - 1)):
                    continue
                touched = stamp(pick, c)
                dfs(done + 1, max(k_cur, c))
                unstamp(pick, c, touched)
                if aborted:
                    return

        dfs(len(clique), k_seed)
        exact = not aborted

    coloring = Coloring({g.label_of(u): best[u] for u in range(n)},
                        best_k, "exact" if exact else "greedy")
    return ExactResult(best_k, coloring, best_k if exact else lb, exact)


def exact_strong_chromatic(h: Hypergraph, cap: int | None = None,
                           budget: int | None = None) -> ExactResult:
    """Exact strong chromatic number: exact coloring of the clique graph."""
    return exact_chromatic(clique_graph(h), cap=cap, budget=budget)


# --------------------------------------------------------- down-coloring

def _extend_to_maximal(g: Digraph, colors: dict[str, int]) -> dict[str, int]:
    # ascending label order; each maximal vertex conflicts exactly with
    # its open down-set, no two maximal vertices ever share a down-set
    for w in sorted(max_vertices(g), key=g.label_of):
        used = {colors[g.label_of(v)] for v in down_set(g, w, closed=False)}
        c = 1
        while c in used:
            c += 1
        colors[g.label_of(w)] = c
    return colors


def down_coloring(g: Digraph, mode: str = "greedy", *, cap: int | None = None,
                  budget: int | None = None) -> Coloring:
    """Color ``g`` so that each closed down-set is rainbow.

    Strong-colors the open down-hypergraph, then extends to the maximal
    vertices.  In exact mode the result size is the down-chromatic
    number; a budget-exhausted exact run raises :class:`CapExceededError`
    carrying the best valid coloring found.
    """
    if mode not in ("greedy", "exact"):
        raise ValueError(f"unknown mode {mode!r}")
    g.topological_order()
    h = down_hypergraph(g, closed=False, simplify=True)
    if mode == "exact":
        res = exact_strong_chromatic(h, cap=cap, budget=budget)
        base = dict(res.coloring.colors)
        if not res.exact:
            full = _extend_to_maximal(g, base)
            k = max(full.values(), default=0)
            partial = Coloring(full, k, "greedy")
            raise CapExceededError(
                f"exact search budget exhausted between {res.lower} and {k} colors",
                partial=partial, lower=res.lower, upper=k)
    else:
        base = dict(greedy_strong_coloring(h).colors)
    full = _extend_to_maximal(g, base)
    k = max(full.values(), default=0)
    return Coloring(full, k, mode)


def _check_total(g: Digraph, c: Coloring) -> None:
    have = set(c.colors)
    want = set(g.labels)
    if want - have:
        raise ColoringError(
            f"coloring misses vertices: {sorted(want - have)[:5]}")
    if have - want:
        raise ColoringError(
            f"coloring names unknown vertices: {sorted(have - want)[:5]}")


def find_down_violation(g: Digraph, c: Coloring) -> tuple[str, str, str] | None:
    """First same-colored pair inside a closed down-set, with the witness
    ancestor, or None when the coloring is a valid down-coloring."""
    _check_total(g, c)
    dg = down_graph(g)
    bits = g._closure_bits()
    maxes = sorted(max_vertices(g))
    for u, v in dg.edges():
        if c.colors[g.label_of(u)] == c.colors[g.label_of(v)]:
            for w in maxes:
                row = bits[w]
                if (int(row[u >> 6]) >> (u & 63)) & 1 and \
                        (int(row[v >> 6]) >> (v & 63)) & 1:
                    return (g.label_of(u), g.label_of(v), g.label_of(w))
    return None


def verify_down_coloring(g: Digraph, c: Coloring) -> bool:
    """True iff no two vertices of any closed down-set share a color."""
    return find_down_violation(g, c) is None


# ----------------------------------------------------------------- bounds

@dataclass(frozen=True)
class BoundReport:
    """Degeneracy-based bracket on the down-chromatic number.

    ``sigma_h`` is the largest open down-set of a maximal vertex, which
    is ``big_d - 1``.  ``ind_h`` is the degeneracy of the simplified
    down-hypergraph.  With ``ind_h <= 1`` the down-chromatic number is
    exactly ``big_d``; otherwise it is at most ``ind_h*(big_d - 2) + 1``
    and at least ``big_d``.
    """

    big_d: int
    sigma_h: int
    ind_h: int
    cor1_bound: int
    lower_bound: int


def bound_report(g: Digraph) -> BoundReport:
    g.topological_order()
    if g.edge_count == 0:
        raise ValueError("bound_report requires at least one edge")
    d = big_d(g)
    h = down_hypergraph(g, closed=False, simplify=True)
    ind = degeneracy(h).value
    cor1 = d if ind <= 1 else ind * (d - 2) + 1
    return BoundReport(big_d=d, sigma_h=d - 1, ind_h=ind,
                       cor1_bound=cor1, lower_bound=d)
