import random

import numpy as np
import pytest

from downcolor._kernels import (
    available_backends,
    clique_union_bits,
    closure_bits,
    get_backend,
    greedy_color,
    popcounts,
    row_ids,
    set_backend,
    words_for,
)

NEED_NUMBA = pytest.mark.skipif("numba" not in available_backends(),
                                reason="numba backend unavailable")


@pytest.fixture
def restore_backend():
    old = get_backend()
    yield
    set_backend(old)


def csr(n, adj):
    indptr = np.zeros(n + 1, dtype=np.int64)
    indices = []
    for u in range(n):
        indices.extend(sorted(adj.get(u, ())))
        indptr[u + 1] = len(indices)
    return indptr, np.asarray(indices, dtype=np.int64)


def random_dag_csr(rng, n, p):
    # ids are already topological: edges only run small -> large
    adj = {}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                adj.setdefault(i, []).append(j)
    indptr, indices = csr(n, adj)
    order = np.arange(n - 1, -1, -1, dtype=np.int64)
    return indptr, indices, order, adj


def reach_sets(n, adj):
    out = []
    for u in range(n):
        seen = {u}
        stack = [u]
        while stack:
            for w in adj.get(stack.pop(), ()):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(seen)
    return out


def test_words_for():
    assert [words_for(k) for k in (0, 1, 63, 64, 65, 128)] == [0, 1, 1, 1, 2, 2]


def test_row_ids_and_popcounts():
    rng = random.Random(5)
    for n in (1, 7, 64, 200):
        members = sorted(rng.sample(range(n), rng.randint(0, n)))
        row = np.zeros(words_for(n), dtype=np.uint64)
        for v in members:
            row[v >> 6] |= np.uint64(1) << np.uint64(v & 63)
        assert row_ids(row).tolist() == members
        assert popcounts(row[None, :]).tolist() == [len(members)]


def test_closure_matches_reachability():
    rng = random.Random(7)
    for _ in range(25):
        n = rng.randint(1, 90)
        indptr, indices, order, adj = random_dag_csr(rng, n, 0.15)
        bits = closure_bits(n, indptr, indices, order)
        want = reach_sets(n, adj)
        for u in range(n):
            assert set(row_ids(bits[u]).tolist()) == want[u]


def test_clique_union_matches_pair_oracle():
    rng = random.Random(11)
    for _ in range(25):
        n = rng.randint(1, 80)
        indptr, indices, order, adj = random_dag_csr(rng, n, 0.15)
        bits = closure_bits(n, indptr, indices, order)
        maxes = np.asarray(
            sorted(set(range(n)) - {v for vs in adj.values() for v in vs}),
            dtype=np.int64)
        out = clique_union_bits(bits, maxes)
        want = {frozenset((a, b))
                for w in maxes.tolist()
                for a in row_ids(bits[w]).tolist()
                for b in row_ids(bits[w]).tolist() if a != b}
        got = {frozenset((u, v))
               for u in range(n) for v in row_ids(out[u]).tolist()}
        assert got == want
        # diagonal stays clear
        for u in range(n):
            assert u not in row_ids(out[u]).tolist()


def test_greedy_color_first_fit():
    rng = random.Random(13)
    for _ in range(25):
        n = rng.randint(1, 60)
        sym = {}
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.2:
                    sym.setdefault(i, []).append(j)
                    sym.setdefault(j, []).append(i)
        indptr, indices = csr(n, sym)
        perm = list(range(n))
        rng.shuffle(perm)
        order = np.asarray(perm, dtype=np.int64)
        got = greedy_color(order, indptr, indices)
        colors = {}
        for v in perm:
            used = {colors[w] for w in sym.get(v, ()) if w in colors}
            c = 1
            while c in used:
                c += 1
            colors[v] = c
        assert got.tolist() == [colors[v] for v in range(n)]


@NEED_NUMBA
def test_backends_agree(restore_backend):
    rng = random.Random(17)
    for _ in range(10):
        n = rng.randint(1, 120)
        indptr, indices, order, adj = random_dag_csr(rng, n, 0.1)
        maxes = np.asarray(
            sorted(set(range(n)) - {v for vs in adj.values() for v in vs}),
            dtype=np.int64)
        results = {}
        for backend in ("numpy", "numba"):
            set_backend(backend)
            bits = closure_bits(n, indptr, indices, order)
            out = clique_union_bits(bits, maxes)
            cols = greedy_color(order, indptr, indices)
            results[backend] = (bits, out, cols)
        for a, b in zip(results["numpy"], results["numba"]):
            assert np.array_equal(a, b)


def test_set_backend_rejects_unknown(restore_backend):
    with pytest.raises(ValueError):
        set_backend("cuda")
    set_backend("numpy")
    assert get_backend() == "numpy"
