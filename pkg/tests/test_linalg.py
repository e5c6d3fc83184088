import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dcohom.linalg import (
    GaussianRational,
    Matrix,
    Subspace,
    format_scalar,
    image,
    kernel_basis,
    parse_scalar,
    preimage,
    rank,
    scalar,
    solve,
    subspace_ops,
)
from oracle import srank

I = scalar(0, 1)

small = st.integers(-3, 3)
entries = st.tuples(small, st.integers(1, 3), small).map(
    lambda t: scalar(f"{t[0]}/{t[1]}") + t[2] * I if t[2] % 3 == 0 else scalar(f"{t[0]}/{t[1]}"))


def matrices(max_rows=5, max_cols=5):
    return st.integers(0, max_rows).flatmap(
        lambda r: st.integers(0, max_cols).flatmap(
            lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r)
            .map(lambda rows: Matrix(rows, r, c))))


def test_rank_examples():
    assert rank(Matrix.zeros(3, 3)) == 0
    assert rank(Matrix.identity(3)) == 3
    assert rank(Matrix([[1, I], [I, -1]])) == 1


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(3)).dim == 0
    assert kernel_basis(Matrix.zeros(2, 2)).dim == 2
    k = kernel_basis(Matrix([[1, 1]]))
    assert k.dim == 1 and k.contains((1, -1))


def test_subspace_examples():
    u = Subspace(3, [(1, 0, 0), (0, 1, 0)])
    w = Subspace(3, [(1, 1, 0), (0, 0, 1)])
    ops = subspace_ops(u, w)
    assert ops["intersection"].dim == 1 and ops["intersection"].contains((1, 1, 0))
    assert ops["sum"].dim == 3
    assert ops["quotient_dim"] == 1
    assert subspace_ops(u, u)["quotient_dim"] == 0
    lines = subspace_ops(Subspace(2, [(1, 0)]), Subspace(2, [(0, 1)]))
    assert lines["intersection"].dim == 0 and lines["sum"].dim == 2


def test_mismatched_ambient_dimension():
    with pytest.raises(ValueError):
        Subspace(2, [(1, 0)]) + Subspace(3, [(1, 0, 0)])


def test_scalar_roundtrip():
    for text in ("0", "-3/4", "1/2+3/5*i", "0+1*i", "-2-1/3*i"):
        assert format_scalar(parse_scalar(text)) == text
    assert parse_scalar("i") == I
    assert parse_scalar("-2*i") == -2 * I
    assert parse_scalar("4/6") == scalar("2/3")
    for bad in ("", "1/0", "abc", "1//2", "2*j"):
        with pytest.raises(ValueError):
            parse_scalar(bad)


def test_gaussian_arithmetic():
    z = scalar(1, 2)
    assert isinstance(z, GaussianRational)
    assert z * z.conjugate() == 5
    assert (z / z) == 1
    assert not isinstance(z - scalar(0, 2), GaussianRational)
    assert 1 / I == -I


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_agrees_with_sympy(m):
    assert rank(m) == srank(m)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    k = kernel_basis(m)
    assert rank(m) + k.dim == m.ncols
    for v in k.vectors:
        assert all(x == 0 for x in m.apply(v))


def test_rank_of_product():
    rng = random.Random(11)
    for _ in range(100):
        r, m, c = rng.randint(1, 5), rng.randint(1, 5), rng.randint(1, 5)
        a = Matrix([[rng.randint(-1, 1) for _ in range(m)] for _ in range(r)])
        b = Matrix([[rng.randint(-1, 1) for _ in range(c)] for _ in range(m)])
        assert rank(a @ b) <= min(rank(a), rank(b))


def test_inclusion_exclusion_random():
    rng = random.Random(3)
    for _ in range(100):
        dim = rng.randint(1, 6)
        vec = lambda: [rng.randint(-2, 2) for _ in range(dim)]  # noqa: E731
        u = Subspace.span([vec() for _ in range(rng.randint(0, dim))], dim)
        w = Subspace.span([vec() for _ in range(rng.randint(0, dim))], dim)
        assert (u + w).dim == u.dim + w.dim - (u & w).dim


def test_solve_and_preimage():
    m = Matrix([[1, 2], [3, 4], [5, 6]])
    x = solve(m, (5, 11, 17))
    assert x == (1, 2)
    assert solve(m, (1, 0, 0)) is None
    assert image(m).dim == 2
    target = Subspace(3, [(1, 3, 5)])
    pre = preimage(m, target)
    assert pre.dim == 1 and pre.contains((1, 0))


def test_deterministic_rref_basis():
    a = Subspace.span([(2, 4, 0), (1, 1, 1)], 3)
    b = Subspace.span([(1, 1, 1), (0, 1, -1), (3, 5, 1)], 3)
    assert a == b
    assert a.vectors == b.vectors
