import pytest

from dcohom.bicomplex import direct_sum, dual
from dcohom.generators import make_dot, make_square, p1_synthetic
from dcohom.invariants import aeppli_direct, bott_chern_direct, de_rham
from dcohom.schweitzer import (
    aeppli_via_L,
    bott_chern_via_L,
    build_L,
    degree_range,
    duality_dim_check,
    euler_chi_pq,
    pairing_matrix,
    region_tags,
    s_dims,
)
from conftest import named, random_complexes


def test_region_for_n3_p2_q1():
    a = named("torus(3)")
    g = build_L(a, 2, 1)
    tags = {t for k in g.degrees() for t in g.tags(k)}
    assert tags == {(0, 0), (1, 0)} | {(r, s) for r in (2, 3) for s in (1, 2, 3)}


def test_degenerate_regions():
    n = 2
    for k in degree_range(n):
        assert region_tags(n, 0, 0, k) == [(r, k + 1 - r) for r in range(n + 1) if 0 <= k + 1 - r <= n]
        assert region_tags(n, n + 1, n + 1, k) == [(r, k - r) for r in range(n + 1) if 0 <= k - r <= n]


def test_dot_table():
    n = 2
    for a, b in [(x, y) for x in range(n + 1) for y in range(n + 1)]:
        dot = make_dot(a, b, n)
        for p in range(-1, n + 3):
            for q in range(-1, n + 3):
                s = {k: v for k, v in s_dims(dot, p, q).items() if v}
                if a < p and b < q:
                    assert s == {a + b: 1}
                elif a >= p and b >= q:
                    assert s == {a + b - 1: 1}
                else:
                    assert s == {}


def test_squares_vanish_small():
    for c in range(2):
        for d in range(2):
            sq = make_square(c, d, 2)
            for p in range(-1, 5):
                for q in range(-1, 5):
                    assert not any(s_dims(sq, p, q).values())
                    assert euler_chi_pq(sq, p, q) == 0


def test_bott_chern_and_aeppli_examples():
    assert bott_chern_via_L(named("torus(1)"), 1, 1) == 1
    assert bott_chern_via_L(named("iwasawa"), 0, 1) == 2
    assert bott_chern_direct(named("iwasawa"))[(0, 1)] == 2
    assert aeppli_via_L(make_dot(0, 0, 1), 1, 1) == 1
    assert aeppli_via_L(named("torus(1)"), 2, 2) == 1
    assert bott_chern_via_L(make_square(0, 0, 1), 1, 1) == 0
    assert aeppli_via_L(make_square(0, 0, 1), 1, 1) == 0


def test_identification_on_builtins(builtin_complex):
    a = builtin_complex
    bc, ae = bott_chern_direct(a), aeppli_direct(a)
    for p in range(a.n + 2):
        for q in range(a.n + 2):
            assert bott_chern_via_L(a, p, q) == bc.get((p, q), 0)
            assert aeppli_via_L(a, p, q) == ae.get((p - 1, q - 1), 0)


def test_euler_examples():
    assert euler_chi_pq(p1_synthetic(), 1, 0) == -1
    for n in (1, 2, 3):
        t = named(f"torus({n})")
        assert all(euler_chi_pq(t, p, q) == 0 for p in range(n + 2) for q in range(n + 2))


def test_additivity_small():
    pairs = list(random_complexes(10, seed=21))
    for a, b in zip(pairs[::2], pairs[1::2]):
        if a.n != b.n:
            continue
        s = direct_sum(a, b)
        for p in range(a.n + 2):
            for q in range(a.n + 2):
                sa, sb, ss = s_dims(a, p, q), s_dims(b, p, q), s_dims(s, p, q)
                assert all(ss[k] == sa[k] + sb[k] for k in ss)


def test_degenerate_parameters_give_betti(builtin_complex):
    a = builtin_complex
    b = de_rham(a)
    s0, s1 = s_dims(a, 0, 0), s_dims(a, a.n + 1, a.n + 1)
    assert all(s0[k] == b.get(k + 1, 0) for k in range(0, 2 * a.n + 1))
    assert all(s1[k] == b.get(k, 0) for k in range(0, 2 * a.n + 1))


def test_duality_examples():
    dot = make_dot(0, 0, 1)
    v = duality_dim_check(dot, 1, 1, 0)
    assert v.ok and v.lhs[0] == 1
    assert s_dims(make_dot(1, 1, 1), 1, 1)[1] == 1
    sq = make_square(0, 0, 2)
    assert all(duality_dim_check(sq, p, q, k) for p in range(4) for q in range(4)
               for k in degree_range(2))
    a = next(random_complexes(1, seed=5))
    da = dual(a)
    assert all(duality_dim_check(a, p, q, k, da) for p in range(a.n + 2) for q in range(a.n + 2)
               for k in degree_range(a.n))


def test_pairing_torus1():
    res = pairing_matrix(named("torus(1)"), 1, 1, 1)
    assert res.matrix.shape == (1, 1) and res.matrix[0, 0] != 0 and res.perfect


def test_pairing_vacuous_and_errors():
    res = pairing_matrix(named("torus(1)"), 0, 0, 3)
    assert res.matrix.shape == (0, 0) and res.perfect
    with pytest.raises(TypeError):
        pairing_matrix(make_dot(0, 0, 1), 1, 1, 0)


def test_pairing_iwasawa_all_degrees():
    a = named("iwasawa")
    for p in range(5):
        for q in range(5):
            for k in degree_range(3):
                res = pairing_matrix(a, p, q, k)
                assert res.perfect
                assert res.matrix.nrows == s_dims(a, p, q)[k]
