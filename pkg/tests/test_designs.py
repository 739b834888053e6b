import math
import random
from itertools import combinations

import pytest

from downcolor import (
    BibdError,
    Hypergraph,
    affine_design,
    build_field,
    cor3_point,
    cor4_point,
    degeneracy,
    ds_bounds,
    hkm_design,
    is_prime,
    prime_power,
    r_plus,
    validate_bibd,
)


# ------------------------------------------------------------ number theory

def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
    for n in range(-3, 50):
        assert is_prime(n) == (n in primes)


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    assert prime_power(1) is None
    assert prime_power(12) is None
    assert prime_power(100) is None


# ------------------------------------------------------------ finite fields

def test_field_rejects_bad_parameters():
    with pytest.raises(ValueError):
        build_field(4)
    with pytest.raises(ValueError):
        build_field(2, 0)
    with pytest.raises(ValueError):
        build_field(2, 25)


def test_field_moduli():
    # first monic irreducible in the fixed candidate order
    assert build_field(2, 2).modulus == (1, 1, 1)       # x^2 + x + 1
    assert build_field(2, 3).modulus == (1, 1, 0, 1)    # x^3 + x + 1
    assert build_field(3, 2).modulus == (1, 0, 1)       # x^2 + 1


@pytest.mark.parametrize("p,k", [(2, 1), (5, 1), (2, 2), (2, 3), (3, 2)])
def test_field_laws(p, k):
    f = build_field(p, k)
    q = p ** k
    els = list(f.elements())
    assert len(els) == q
    assert len({e.value for e in els}) == q
    one, zero = f.one, f.zero
    for a in els:
        assert a + zero == a and a * one == a
        assert a - a == zero
        assert a ** q == a          # Frobenius fixed point
        if a != zero:
            assert a * a.inverse() == one
    rng = random.Random(q)
    for _ in range(40):
        a, b, c = (rng.choice(els) for _ in range(3))
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert (a + b) ** p == a ** p + b ** p


def test_field_element_construction():
    f = build_field(3, 2)
    assert f.element(5).value == 5
    assert f.element([2, 1]).value == 2 + 1 * 3
    assert f.element(0) == f.zero


def test_field_division():
    f = build_field(2, 3)
    els = [e for e in f.elements() if e != f.zero]
    for a in els:
        for b in els:
            assert (a / b) * b == a


# ------------------------------------------------------------ block designs

@pytest.mark.parametrize("p,k,m,v,b,r,blk", [
    (2, 1, 2, 4, 6, 3, 2),
    (3, 1, 2, 9, 12, 4, 3),
    (2, 1, 3, 8, 28, 7, 2),
    (2, 2, 2, 16, 20, 5, 4),
])
def test_affine_design_parameters(p, k, m, v, b, r, blk):
    h, params = affine_design(build_field(p, k), m)
    assert (params.v, params.b, params.r, params.block_size) == (v, b, r, blk)
    assert params.lambda_ == 1
    assert h.n == v and h.m == b
    assert validate_bibd(h) == params
    # every pair of points lies on exactly one line
    cover = {}
    for e in h.edges:
        for pair in combinations(sorted(e), 2):
            cover[pair] = cover.get(pair, 0) + 1
    assert set(cover.values()) == {1}
    assert len(cover) == v * (v - 1) // 2


def test_affine_design_point_labels():
    h, _ = affine_design(build_field(2), 2)
    assert sorted(h.labels) == ["0.0", "0.1", "1.0", "1.1"]


def test_affine_design_cap():
    with pytest.raises(ValueError):
        affine_design(build_field(2), 13)


def test_hkm_design_shape():
    h = hkm_design(3, 2)
    assert h.n == 6 and h.m == 3
    assert h.sigma == 4
    assert sorted(h.labels)[:2] == ["a1_1", "a1_2"]
    assert degeneracy(h).value == 2  # ind(H(k,m)) = k - 1
    for kk in range(2, 6):
        assert degeneracy(hkm_design(kk, 1)).value == kk - 1


def test_validate_bibd_rejections():
    with pytest.raises(BibdError) as ei:
        validate_bibd(Hypergraph(list("abcd"), [(0, 1, 2), (0, 1)]))
    assert ei.value.reason == "non-uniform-block-size"
    with pytest.raises(BibdError) as ei:
        validate_bibd(Hypergraph(list("abc"), [(0, 1), (1, 2)]))
    assert ei.value.reason == "non-constant-replication"
    # 4-cycle: r = 2 everywhere but pair coverage 0 or 1
    with pytest.raises(BibdError) as ei:
        validate_bibd(Hypergraph(list("abcd"), [(0, 1), (1, 2), (2, 3), (0, 3)]))
    assert ei.value.reason == "non-constant-pair-coverage"
    with pytest.raises(ValueError):
        validate_bibd(Hypergraph(list("ab"), [(0, 1)]))  # k = v is trivial


def test_validate_bibd_counts_isolated_vertices():
    with pytest.raises(BibdError):
        validate_bibd(Hypergraph(list("abcde"), [(0, 1), (2, 3)]))


# ------------------------------------------------------------ discrepancy

def quad_root(sigma, n):
    s = sigma * (sigma - 1)
    return (-(s - 1) + math.sqrt((s - 1) ** 2 + 4 * s * n)) / 2


def test_r_plus_pinned_values():
    assert r_plus(2, 10) == pytest.approx(4, abs=1e-9)
    assert r_plus(3, 21) == pytest.approx(9, abs=1e-9)
    assert r_plus(3, 4) == pytest.approx(3, abs=1e-9)


def test_r_plus_agrees_with_quadratic_formula():
    for sigma in range(2, 7):
        for n in range(1, 200):
            x = r_plus(sigma, n)
            assert x == pytest.approx(quad_root(sigma, n), rel=1e-9)
            s = sigma * (sigma - 1)
            assert abs(x + x * (x - 1) / s - n) <= 1e-9 * n


def test_ds_bounds():
    b = ds_bounds(3, 21)
    assert b.thm4 == pytest.approx(9 / 4, abs=1e-12)
    assert b.cor2 == pytest.approx(math.sqrt(6 * 21) / 4, abs=1e-12)
    # thm4 refines cor2 from below
    for sigma in (2, 3, 4):
        for n in (5, 50, 500):
            bb = ds_bounds(sigma, n)
            assert bb.thm4 <= bb.cor2 + 1e-12


def test_cor4_point_values():
    pt = cor4_point(2, 1, 2)
    assert pt.n == 10 and pt.ratio == pytest.approx(4 / 3, abs=1e-12)
    assert pt.thm4_bound == pytest.approx(pt.ratio, abs=1e-9)
    assert pt.witness is not None and pt.witness.n == 4
    pt = cor4_point(3, 1, 2)
    assert pt.n == 21 and pt.ratio == pytest.approx(9 / 4, abs=1e-12)


def test_cor4_point_cap():
    with pytest.raises(ValueError):
        cor4_point(2, 1, 13)
    # a raised cap admits the same point, formula-only
    pt = cor4_point(2, 1, 13, cap=1 << 13, attach_witness=False)
    assert pt.n == 2 ** 13 + 2 ** 12 * (2 ** 13 - 1)


def test_cor3_point_congruence_gate():
    assert cor3_point(3, 5) is None       # 5*4 not divisible by 3
    pt = cor3_point(3, 4)
    assert pt is not None
    assert pt.n == 21 and pt.ratio == pytest.approx(9 / 4, abs=1e-12)
    assert pt.witness is not None         # k = sigma + 1, sigma a prime power


def test_cor3_matches_cor4_at_affine_plane():
    for sigma in (2, 3, 4):
        p3 = cor3_point(sigma, sigma + 1)
        p, k = prime_power(sigma)
        p4 = cor4_point(p, k, 2)
        assert p3 is not None
        assert p3.n == p4.n
        assert p3.ratio == pytest.approx(p4.ratio, abs=1e-12)
