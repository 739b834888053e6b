"""Hot inner loops, compiled with numba when available.

Three kernels carry most of the work on large digraphs: packed-bitset
reachability closure, clique marking for the derived conflict graph, and
greedy sequential coloring over a CSR adjacency.  Each has a numba
``@njit`` build and an equivalent pure-numpy build.  The active backend
is chosen at import time from the ``DOWNCOLOR_NUMBA`` environment
variable (``0``/``false`` forces the numpy path) and can be switched at
runtime with :func:`set_backend`.

Vertex ``u`` maps to bit ``u & 63`` of word ``u >> 6``.  The numpy path
decodes bit positions through a ``uint8`` view, which assumes a
little-endian host.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAS_NUMBA = False


def _initial_backend() -> str:
    flag = os.environ.get("DOWNCOLOR_NUMBA", "").strip().lower()
    if flag in ("0", "false", "off", "no"):
        return "numpy"
    return "numba" if HAS_NUMBA else "numpy"


_BACKEND = _initial_backend()


def available_backends() -> tuple[str, ...]:
    return ("numba", "numpy") if HAS_NUMBA else ("numpy",)


def get_backend() -> str:
    return _BACKEND


def set_backend(name: str) -> None:
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAS_NUMBA:
        raise ValueError("numba backend requested but numba is not importable")
    global _BACKEND
    _BACKEND = name


def words_for(n: int) -> int:
    return (n + 63) >> 6


def row_ids(row: np.ndarray) -> np.ndarray:
    """Decode one bitset row into the sorted array of set bit positions."""
    if row.size == 0:
        return np.empty(0, dtype=np.int64)
    flat = np.unpackbits(row.view(np.uint8), bitorder="little")
    return np.nonzero(flat)[0].astype(np.int64)


def popcounts(bits: np.ndarray) -> np.ndarray:
    """Per-row population counts of a bitset matrix."""
    if bits.size == 0:
        return np.zeros(bits.shape[0], dtype=np.int64)
    return np.bitwise_count(bits).sum(axis=1, dtype=np.int64)


# ---------------------------------------------------------------- closure

def _closure_np(n, indptr, indices, order):
    W = words_for(n)
    bits = np.zeros((n, W), dtype=np.uint64)
    shifts = np.uint64(1) << (np.arange(n, dtype=np.uint64) & np.uint64(63))
    for u in order:
        row = bits[u]
        row[u >> 6] |= shifts[u]
        for k in range(indptr[u], indptr[u + 1]):
            np.bitwise_or(row, bits[indices[k]], out=row)
    return bits


if HAS_NUMBA:

    @njit(cache=True)
    def _closure_nb(n, indptr, indices, order):  # pragma: no cover - compiled
        W = (n + 63) >> 6
        bits = np.zeros((n, W), dtype=np.uint64)
        one = np.uint64(1)
        for i in range(n):
            u = order[i]
            bits[u, u >> 6] |= one << np.uint64(u & 63)
            for k in range(indptr[u], indptr[u + 1]):
                v = indices[k]
                for w in range(W):
                    bits[u, w] |= bits[v, w]
        return bits


def closure_bits(n: int, indptr: np.ndarray, indices: np.ndarray,
                 order: np.ndarray) -> np.ndarray:
    """Closed reachability bitsets, one row per vertex.

    ``order`` must list every vertex after all of its out-neighbours
    (reverse topological order), so each row is its own bit OR-ed with
    the finished rows of its children.
    """
    if n == 0:
        return np.zeros((0, 0), dtype=np.uint64)
    if _BACKEND == "numba":
        return _closure_nb(n, indptr, indices, order)
    return _closure_np(n, indptr, indices, order)


# ----------------------------------------------------------- clique union

def _clique_union_np(bits, rows):
    n, W = bits.shape
    adj = np.zeros((n, W), dtype=np.uint64)
    for r in rows:
        row = bits[r]
        members = row_ids(row)
        adj[members] |= row
    ids = np.arange(n, dtype=np.uint64)
    adj[np.arange(n), ids >> np.uint64(6)] &= ~(np.uint64(1) << (ids & np.uint64(63)))
    return adj


if HAS_NUMBA:

    @njit(cache=True)
    def _clique_union_nb(bits, rows):  # pragma: no cover - compiled
        n, W = bits.shape
        adj = np.zeros((n, W), dtype=np.uint64)
        one = np.uint64(1)
        for ri in range(rows.shape[0]):
            r = rows[ri]
            for w in range(W):
                word = bits[r, w]
                if word == np.uint64(0):
                    continue
                base = w << 6
                for b in range(64):
                    if (word >> np.uint64(b)) & one:
                        u = base + b
                        for w2 in range(W):
                            adj[u, w2] |= bits[r, w2]
        for u in range(n):
            adj[u, u >> 6] &= ~(one << np.uint64(u & 63))
        return adj


def clique_union_bits(bits: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """Symmetric adjacency bitsets of the union of cliques.

    Each entry of ``rows`` selects a bitset row of ``bits``; the vertices
    set in that row become pairwise adjacent.  The diagonal is cleared.
    """
    n = bits.shape[0]
    if n == 0:
        return np.zeros((0, 0), dtype=np.uint64)
    if _BACKEND == "numba":
        return _clique_union_nb(bits, rows.astype(np.int64))
    return _clique_union_np(bits, rows)


# --------------------------------------------------------- greedy coloring

def _greedy_color_np(order, indptr, indices):
    n = order.shape[0]
    colors = np.zeros(n, dtype=np.int64)
    for v in order:
        nc = colors[indices[indptr[v]:indptr[v + 1]]]
        nc = np.unique(nc[nc > 0])
        free = np.nonzero(nc != np.arange(1, nc.size + 1))[0]
        colors[v] = nc.size + 1 if free.size == 0 else free[0] + 1
    return colors


if HAS_NUMBA:

    @njit(cache=True)
    def _greedy_color_nb(order, indptr, indices):  # pragma: no cover - compiled
        n = order.shape[0]
        colors = np.zeros(n, dtype=np.int64)
        mark = np.zeros(n + 2, dtype=np.int64)
        stamp = 0
        for i in range(n):
            v = order[i]
            stamp += 1
            for k in range(indptr[v], indptr[v + 1]):
                c = colors[indices[k]]
                if c > 0:
                    mark[c] = stamp
            c = 1
            while mark[c] == stamp:
                c += 1
            colors[v] = c
        return colors


def greedy_color(order: np.ndarray, indptr: np.ndarray,
                 indices: np.ndarray) -> np.ndarray:
    """First-fit coloring along ``order``; returns 1-based colors.

    Both backends assign each vertex the smallest color not used by an
    already-colored neighbour, so their outputs are identical.
    """
    if order.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    if _BACKEND == "numba":
        return _greedy_color_nb(order, indptr, indices)
    return _greedy_color_np(order, indptr, indices)
