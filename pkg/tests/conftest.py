"""Shared corpus generators and brute-force oracles.

Oracles here use plain Python sets and backtracking only, so they share
no code path with the package internals they check.
"""
from __future__ import annotations

import random
from itertools import combinations

from downcolor import Digraph, Hypergraph


# ---------------------------------------------------------------- corpora

def random_dag(rng: random.Random, n: int, density: float) -> Digraph:
    """DAG on v0..v{n-1} with edges sampled along a random topological order."""
    labels = [f"v{i}" for i in range(n)]
    order = labels[:]
    rng.shuffle(order)
    pairs = []
    for i, j in combinations(range(n), 2):
        if rng.random() < density:
            pairs.append((order[i], order[j]))
    return Digraph.from_label_pairs(pairs, isolated=labels)


def random_digraph(rng: random.Random, n: int, density: float) -> Digraph:
    """Arbitrary digraph, cycles allowed, no self-loops or parallel edges."""
    labels = [f"v{i}" for i in range(n)]
    pairs = []
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < density:
                pairs.append((labels[i], labels[j]))
    return Digraph.from_label_pairs(pairs, isolated=labels)


def random_hypergraph(rng: random.Random, max_n: int = 10,
                      max_m: int = 8) -> Hypergraph:
    """Small hypergraph; duplicate and nested edges are allowed."""
    n = rng.randint(1, max_n)
    m = rng.randint(0, max_m)
    labels = [f"u{i}" for i in range(n)]
    edges = []
    for _ in range(m):
        size = rng.randint(1, min(4, n))
        edges.append(tuple(sorted(rng.sample(range(n), size))))
    return Hypergraph(labels, edges, simple=False)


# ---------------------------------------------------------------- oracles

def reach_closed(g: Digraph) -> dict[str, frozenset[str]]:
    """Closed reachability sets by label, via DFS on label adjacency."""
    kids = {u: [g.label_of(c) for c in g.children(g.id_of(u))] for u in g.labels}
    out = {}
    for start in g.labels:
        seen = {start}
        stack = [start]
        while stack:
            for w in kids[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out[start] = frozenset(seen)
    return out


def brute_down_edges(g: Digraph) -> set[frozenset[str]]:
    """Pairs that co-occur in some closed reachability set (cycles allowed)."""
    reach = reach_closed(g)
    out = set()
    for rs in reach.values():
        for a, b in combinations(sorted(rs), 2):
            out.add(frozenset((a, b)))
    return out


def brute_chromatic(n: int, edges: list[tuple[int, int]]) -> int:
    """Smallest k admitting a proper coloring, by backtracking."""
    if n == 0:
        return 0
    adj = [0] * n
    for a, b in edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a

    def colorable(k: int) -> bool:
        colors = [0] * n

        def place(v: int) -> bool:
            if v == n:
                return True
            used = {colors[u] for u in range(v) if adj[v] >> u & 1}
            # cap new colors at one above the current maximum to kill
            # permutation-equivalent branches
            top = min(k, max(colors[:v], default=0) + 1)
            for c in range(1, top + 1):
                if c not in used:
                    colors[v] = c
                    if place(v + 1):
                        return True
            colors[v] = 0
            return False

        return place(0)

    k = 1
    while not colorable(k):
        k += 1
    return k


def induced_min_degree(edges: list[tuple[int, ...]], s: int) -> int:
    """Minimum degree of the subhypergraph induced on bitmask ``s``.

    Degree counts, with multiplicity, induced edge parts of size >= 2.
    """
    masks = []
    for e in edges:
        em = 0
        for v in e:
            if s >> v & 1:
                em |= 1 << v
        if em.bit_count() >= 2:
            masks.append(em)
    best = None
    t = s
    while t:
        v = (t & -t).bit_length() - 1
        t &= t - 1
        d = sum(1 for em in masks if em >> v & 1)
        best = d if best is None else min(best, d)
    return 0 if best is None else best


def brute_degeneracy(h: Hypergraph) -> int:
    """max over nonempty vertex subsets of the induced minimum degree."""
    edges = list(h.edges)
    best = 0
    for s in range(1, 1 << h.n):
        best = max(best, induced_min_degree(edges, s))
    return best
