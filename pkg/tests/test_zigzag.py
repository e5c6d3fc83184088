import random

from dcohom.bicomplex import direct_sum, dual
from dcohom.generators import make_square, make_zigzag
from dcohom.generators.shapes import MultiplicityTable, random_complex, random_multiset, scrambled_sum
from dcohom.invariants import bott_chern_direct, de_rham
from dcohom.linalg import rank
from dcohom.zigzag import (
    aggregate,
    calibration_matrix,
    enumerate_shapes,
    invariant_labels,
    invariant_vector,
    multiplicities,
    refined_vector,
)
from conftest import named, random_complexes


def test_calibration_full_rank_and_bounded():
    for n in range(4):
        m = calibration_matrix(n)
        shapes = enumerate_shapes(n)
        assert m.shape == (len(invariant_labels(n)), len(shapes))
        assert rank(m) == len(shapes)
        for j, z in enumerate(shapes):
            assert all(0 <= x <= len(z) for x in m.column(j))


def test_square_vector_and_table():
    sq = make_square(0, 0, 1)
    assert not any(refined_vector(sq))
    assert multiplicities(sq) == MultiplicityTable({}, {(0, 0): 1})


def test_pure_shapes_recovered():
    for n in range(3):
        for z in enumerate_shapes(n):
            assert multiplicities(make_zigzag(z, n)) == MultiplicityTable({z: 1}, {})


def test_roundtrip_and_aggregation():
    for seed in range(20):
        rng = random.Random(seed)
        n = 1 + seed % 3
        shapes, squares = random_multiset(n, rng)
        a, truth = scrambled_sum(shapes, squares, n, seed)
        table = multiplicities(a)
        assert table == truth
        assert aggregate(table, n) == refined_vector(a)


def test_invariance_and_additivity():
    rng = random.Random(5)
    shapes, squares = random_multiset(2, rng)
    a, _ = scrambled_sum(shapes, squares, 2, 1)
    b, _ = scrambled_sum(shapes, squares, 2, 2)
    assert invariant_vector(a) == invariant_vector(b)
    assert multiplicities(a) == multiplicities(b)
    c = random_complex(2, 77)
    s = direct_sum(a, c)
    assert invariant_vector(s) == tuple(x + y for x, y in zip(invariant_vector(a), invariant_vector(c)))


def test_duality_transport():
    for a in random_complexes(10, seed=90):
        assert multiplicities(dual(a)) == multiplicities(a).transported(a.n)


def _odd_degree(z):
    degs = [p + q for p, q in z.dots]
    return max(set(degs), key=degs.count)


def test_iwasawa_table_reaggregates():
    a = named("iwasawa")
    table = multiplicities(a)
    assert table.accounting_errors(a) == []
    b1 = sum(m for z, m in table.zigzag_mults.items() if len(z) % 2 and _odd_degree(z) == 1)
    assert b1 == de_rham(a)[1] == 4
    labels = invariant_labels(3)
    agg = dict(zip(labels, aggregate(table, 3)))
    assert agg["h_BC[0,1]"] == bott_chern_direct(a)[(0, 1)] == 2
