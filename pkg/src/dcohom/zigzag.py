"""Multiplicities of squares and zigzags in a bounded double complex.

Every refined invariant used below is additive under direct sums and zero on
squares, so on A it equals Σ_Z mult_Z · (invariant of Z).  Evaluating the
invariants on every pure zigzag gives a calibration matrix; if it has full
column rank the zigzag multiplicities are the unique solution of one exact
linear system.  Squares are then read off the leftover dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .bicomplex import DoubleComplex, require_valid
from .generators.shapes import MultiplicityTable, ZigzagShape, enumerate_shapes, make_zigzag
from .invariants import (
    COLUMN,
    ROW,
    aeppli_direct,
    bott_chern_direct,
    frolicher,
    grgr_derham,
)
from .linalg import Matrix, rank, solve
from .schweitzer import s_dims

__all__ = [
    "CalibrationError", "DecompositionError", "calibration_matrix", "enumerate_shapes",
    "invariant_labels", "invariant_vector", "multiplicities", "refined_vector",
]


class CalibrationError(RuntimeError):
    """The refined invariants do not separate the zigzag shapes."""


class DecompositionError(ValueError):
    """No nonnegative integral decomposition reproduces the invariants."""


def invariant_labels(n: int, extended: bool = False) -> tuple[str, ...]:
    grid = [(p, q) for p in range(n + 1) for q in range(n + 1)]
    labels = [f"grgr[{p},{q};{k}]" for p, q in grid for k in range(2 * n + 1)]
    for o in (COLUMN, ROW):
        for r in range(1, n + 3):
            labels += [f"{o}.e{r}[{p},{q}]" for p, q in grid]
            labels += [f"{o}.rank_d{r}[{p},{q}]" for p, q in grid]
    labels += [f"h_BC[{p},{q}]" for p, q in grid]
    labels += [f"h_A[{p},{q}]" for p, q in grid]
    if extended:
        labels += [f"s[{p},{q};{k}]" for p in range(n + 2) for q in range(n + 2)
                   for k in range(-1, 2 * n + 1)]
    return tuple(labels)


def refined_vector(a: DoubleComplex, extended: bool = False) -> tuple[int, ...]:
    """The square-blind part of the invariant vector, ordered as
    :func:`invariant_labels`."""
    require_valid(a)
    n = a.n
    grid = [(p, q) for p in range(n + 1) for q in range(n + 1)]
    gg = grgr_derham(a)
    out = [gg.get((p, q, k), 0) for p, q in grid for k in range(2 * n + 1)]
    for o in (COLUMN, ROW):
        pages = frolicher(a, o)
        for r in range(1, n + 3):
            out += [pages.dims[r][b] for b in grid]
            out += [pages.ranks[r][b] for b in grid]
    bc, ae = bott_chern_direct(a), aeppli_direct(a)
    out += [bc[b] for b in grid]
    out += [ae[b] for b in grid]
    if extended:
        for p in range(n + 2):
            for q in range(n + 2):
                s = s_dims(a, p, q)
                out += [s.get(k, 0) for k in range(-1, 2 * n + 1)]
    return tuple(out)


def invariant_vector(a: DoubleComplex, extended: bool = False) -> tuple[int, ...]:
    """Refined invariants followed by the dimension grid (lexicographic (p,q))."""
    n = a.n
    dims = tuple(a.dim(p, q) for p in range(n + 1) for q in range(n + 1))
    return refined_vector(a, extended) + dims


@dataclass(frozen=True)
class Calibration:
    n: int
    shapes: tuple[ZigzagShape, ...]
    matrix: Matrix
    extended: bool


@lru_cache(maxsize=None)
def _calibration(n: int) -> Calibration:
    shapes = enumerate_shapes(n)
    for extended in (False, True):
        cols = [refined_vector(make_zigzag(z, n), extended) for z in shapes]
        m = Matrix.from_columns(cols, len(cols[0]))
        if rank(m) == len(shapes):
            return Calibration(n, shapes, m, extended)
    raise CalibrationError(f"calibration matrix for n={n} is rank deficient")


def calibration_matrix(n: int) -> Matrix:
    """Columns are refined invariant vectors of the pure zigzags of
    :func:`enumerate_shapes`; full column rank is checked on construction."""
    return _calibration(n).matrix


def _as_int(x) -> int | None:
    if getattr(x, "denominator", None) == 1:
        return int(x)
    return None


def multiplicities(a: DoubleComplex) -> MultiplicityTable:
    require_valid(a)
    n = a.n
    cal = _calibration(n)
    v = refined_vector(a, cal.extended)
    sol = solve(cal.matrix, v)
    if sol is None:
        raise DecompositionError("invariant vector is not a combination of zigzags")
    zig = {}
    for shape, x in zip(cal.shapes, sol):
        m = _as_int(x)
        if m is None or m < 0:
            raise DecompositionError(f"multiplicity of {shape.describe()} is {x}")
        if m:
            zig[shape] = m
    table = MultiplicityTable(zig, {})
    residual = {b: a.dim(*b) - d for b, d in table.dims(n).items()}
    squares = {}
    for c in range(n):
        for d in range(n):
            m = (residual[(c, d)] - squares.get((c - 1, d - 1), 0)
                 - squares.get((c - 1, d), 0) - squares.get((c, d - 1), 0))
            if m < 0:
                raise DecompositionError(f"negative square count at corner ({c},{d})")
            if m:
                squares[(c, d)] = m
    table = MultiplicityTable(zig, squares)
    bad = table.accounting_errors(a)
    if bad:
        raise DecompositionError(f"dimension accounting fails at {bad}")
    return table


def aggregate(table: MultiplicityTable, n: int) -> tuple[int, ...]:
    """Apply the calibration forward: the refined vector implied by a table."""
    cal = _calibration(n)
    mult = [table.zigzag_mults.get(z, 0) for z in cal.shapes]
    return tuple(int(x) for x in cal.matrix.apply(mult))
