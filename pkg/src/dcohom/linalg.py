"""Exact linear algebra over the Gaussian rationals Q(i).

Scalars are either ``gmpy2.mpq`` (real values) or :class:`GaussianRational`
(values with a nonzero imaginary part).  Arithmetic on a
``GaussianRational`` whose imaginary part cancels returns a plain ``mpq``,
so real matrices never pay for the complex representation.

Row reduction is plain Gauss-Jordan elimination with the first nonzero
entry of each column (scanning rows top to bottom) as pivot.  This makes
every basis returned here a deterministic function of the input.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from fractions import Fraction

from gmpy2 import mpq

ZERO = mpq(0)
ONE = mpq(1)

_RATIONAL_TYPES = (int, Fraction, type(ZERO))


class GaussianRational:
    """A Gaussian rational ``re + im*i`` with ``im != 0``.

    Do not instantiate directly; use :func:`scalar`, which returns an
    ``mpq`` when the imaginary part vanishes.
    """

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = re
        self.im = im

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return _mk(self.re + other.re, self.im + other.im)
        if isinstance(other, _RATIONAL_TYPES):
            return GaussianRational(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return _mk(self.re - other.re, self.im - other.im)
        if isinstance(other, _RATIONAL_TYPES):
            return GaussianRational(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, _RATIONAL_TYPES):
            return GaussianRational(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return _mk(self.re * other.re - self.im * other.im,
                       self.re * other.im + self.im * other.re)
        if isinstance(other, _RATIONAL_TYPES):
            if not other:
                return ZERO
            return GaussianRational(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, GaussianRational):
            norm = other.re * other.re + other.im * other.im
            return _mk((self.re * other.re + self.im * other.im) / norm,
                       (self.im * other.re - self.re * other.im) / norm)
        if isinstance(other, _RATIONAL_TYPES):
            return GaussianRational(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _RATIONAL_TYPES):
            norm = self.re * self.re + self.im * self.im
            return _mk(other * self.re / norm, -other * self.im / norm)
        return NotImplemented

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __bool__(self):
        return True

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, _RATIONAL_TYPES):
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def _mk(re, im):
    if im:
        return GaussianRational(re, im)
    return re


def scalar(value, im=0):
    """Coerce ``value`` (+ ``im`` times i) to a canonical scalar."""
    if isinstance(value, GaussianRational):
        if im:
            return value + scalar(0, im)
        return value
    if isinstance(value, str):
        value = parse_scalar(value)
        return value + scalar(0, im) if im else value
    re_part = mpq(value)
    im_part = mpq(im)
    return _mk(re_part, im_part)


def re_part(x):
    return x.re if isinstance(x, GaussianRational) else mpq(x)


def im_part(x):
    return x.im if isinstance(x, GaussianRational) else ZERO


def conj(x):
    return x.conjugate() if isinstance(x, GaussianRational) else x


def _fmt_rational(x) -> str:
    x = mpq(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_scalar(x) -> str:
    """Serialize as ``"a/b"`` or ``"a/b+c/d*i"`` with reduced components."""
    if not isinstance(x, GaussianRational):
        return _fmt_rational(x)
    sign = "-" if x.im < 0 else "+"
    return f"{_fmt_rational(x.re)}{sign}{_fmt_rational(abs(x.im))}*i"


_TERM_RE = re.compile(r"[+-]?[^+-]+")
_REAL_TERM = re.compile(r"^[+-]?\d+(?:/\d+)?$")
_IMAG_TERM = re.compile(r"^(?P<coef>[+-]?(?:\d+(?:/\d+)?)?)\*?i$")


def parse_scalar(text: str):
    """Parse ``"a/b"``, ``"a/b+c/d*i"``, ``"i"``, ``"-2*i"`` and friends."""
    s = text.replace(" ", "")
    terms = _TERM_RE.findall(s)
    if not s or "".join(terms) != s:
        raise ValueError(f"malformed scalar {text!r}")
    real, imag = ZERO, ZERO
    for term in terms:
        if _REAL_TERM.match(term):
            real += _signed_mpq(term)
            continue
        m = _IMAG_TERM.match(term)
        if m is None:
            raise ValueError(f"malformed scalar {text!r}")
        coef = m.group("coef")
        imag += _signed_mpq(coef + "1" if coef in ("", "+", "-") else coef)
    return _mk(real, imag)


def _signed_mpq(term: str):
    try:
        if term[0] == "-":
            return -mpq(term[1:])
        return mpq(term.lstrip("+"))
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {term!r}") from None


# ---------------------------------------------------------------------------
# elimination kernels (operate on lists of lists, never on Matrix objects)


def _rref(rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form.  Returns (nonzero rows, pivot columns)."""
    rows = [list(r) for r in rows]
    nrows = len(rows)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        lead = prow[c]
        if lead != ONE:
            inv = ONE / lead
            for j in range(c, ncols):
                if prow[j]:
                    prow[j] = prow[j] * inv
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f:
                for j in nz:
                    row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _rank(rows: Sequence[Sequence], ncols: int) -> int:
    rows = [list(r) for r in rows if any(r)]
    nrows = len(rows)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        lead = prow[c]
        nz = [j for j in range(c + 1, ncols) if prow[j]]
        for i in range(r + 1, nrows):
            row = rows[i]
            f = row[c]
            if f:
                f = f / lead
                row[c] = ZERO
                for j in nz:
                    row[j] = row[j] - f * prow[j]
        r += 1
    return r


def rank_of_vectors(vectors: Iterable[Sequence], dim: int) -> int:
    """Dimension of the span of ``vectors`` (each of length ``dim``)."""
    return _rank(list(vectors), dim)


# ---------------------------------------------------------------------------


class Matrix:
    """Dense immutable matrix of scalars.

    ``rows`` is a tuple of row tuples.  Entry ``[i][j]`` is the coefficient
    of target basis vector ``i`` in the image of source basis vector ``j``.
    """

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: Iterable[Iterable], nrows: int | None = None,
                 ncols: int | None = None):
        data = tuple(tuple(scalar(x) for x in row) for row in rows)
        if nrows is None:
            nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        if len(data) != nrows or any(len(r) != ncols for r in data):
            raise ValueError(f"entry grid does not match shape {nrows}x{ncols}")
        self.nrows = nrows
        self.ncols = ncols
        self.rows = data

    @classmethod
    def _raw(cls, rows, nrows: int, ncols: int) -> Matrix:
        m = cls.__new__(cls)
        m.nrows = nrows
        m.ncols = ncols
        m.rows = tuple(tuple(r) for r in rows)
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> Matrix:
        row = (ZERO,) * ncols
        return cls._raw([row] * nrows, nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls._raw([[ONE if i == j else ZERO for j in range(n)]
                         for i in range(n)], n, n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> Matrix:
        cols = [tuple(scalar(x) for x in c) for c in columns]
        if any(len(c) != nrows for c in cols):
            raise ValueError("column length mismatch")
        return cls._raw(zip(*cols) if cols else [()] * nrows, nrows, len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def T(self) -> Matrix:
        return Matrix._raw(zip(*self.rows) if self.nrows else [()] * self.ncols,
                           self.ncols, self.nrows)

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(format_scalar(x) for x in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix._raw([[a + b for a, b in zip(r, s)]
                            for r, s in zip(self.rows, other.rows)], *self.shape)

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def __neg__(self) -> Matrix:
        return Matrix._raw([[-a for a in r] for r in self.rows], *self.shape)

    def scaled(self, c) -> Matrix:
        c = scalar(c)
        return Matrix._raw([[c * a for a in r] for r in self.rows], *self.shape)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        m = other.ncols
        brows = other.rows
        out = []
        for row in self.rows:
            acc = [ZERO] * m
            for k, a in enumerate(row):
                if a:
                    for j, b in enumerate(brows[k]):
                        if b:
                            acc[j] = acc[j] + a * b
            out.append(acc)
        return Matrix._raw(out, self.nrows, m)

    def apply(self, vector: Sequence) -> tuple:
        if len(vector) != self.ncols:
            raise ValueError("vector length mismatch")
        nz = [(j, v) for j, v in enumerate(vector) if v]
        return tuple(sum((row[j] * v for j, v in nz), ZERO) for row in self.rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        return Matrix._raw([[self.rows[i][j] for j in cols] for i in rows],
                           len(rows), len(cols))

    def conjugate(self) -> Matrix:
        return Matrix._raw([[conj(a) for a in r] for r in self.rows], *self.shape)

    def is_real(self) -> bool:
        return not any(isinstance(x, GaussianRational) for r in self.rows for x in r)

    @staticmethod
    def block(blocks: Sequence[Sequence[Matrix]]) -> Matrix:
        """Assemble a block matrix; all blocks in a row share a height."""
        rows: list[list] = []
        ncols = sum(b.ncols for b in blocks[0]) if blocks else 0
        for brow in blocks:
            h = brow[0].nrows
            if any(b.nrows != h for b in brow):
                raise ValueError("ragged block row")
            for i in range(h):
                rows.append([x for b in brow for x in b.rows[i]])
        return Matrix._raw(rows, len(rows), ncols)

    @staticmethod
    def block_diag(a: Matrix, b: Matrix) -> Matrix:
        return Matrix.block([[a, Matrix.zeros(a.nrows, b.ncols)],
                             [Matrix.zeros(b.nrows, a.ncols), b]])

    def hstack(self, other: Matrix) -> Matrix:
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return Matrix._raw([r + s for r, s in zip(self.rows, other.rows)],
                           self.nrows, self.ncols + other.ncols)

    def vstack(self, other: Matrix) -> Matrix:
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch")
        return Matrix._raw(self.rows + other.rows, self.nrows + other.nrows,
                           self.ncols)


def rank(m: Matrix) -> int:
    """Exact rank over Q(i)."""
    if m.nrows <= m.ncols:
        return _rank(m.rows, m.ncols)
    return _rank(m.T.rows, m.nrows)


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    rows, pivots = _rref(m.rows, m.ncols)
    return Matrix._raw(rows, len(rows), m.ncols), pivots


def _kernel_vectors(rows, ncols: int) -> list[tuple]:
    red, pivots = _rref(rows, ncols)
    pivset = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for row, c in zip(red, pivots):
            if row[f]:
                v[c] = -row[f]
        out.append(tuple(v))
    return out


def kernel_basis(m: Matrix) -> Subspace:
    """Basis of ``ker m``; its dimension is ``cols - rank``."""
    return Subspace._trusted(m.ncols, _kernel_vectors(m.rows, m.ncols))


def image(m: Matrix) -> Subspace:
    """Column space of ``m``."""
    return Subspace.span(m.columns(), m.nrows)


def solve(m: Matrix, b: Sequence) -> tuple | None:
    """One exact solution ``x`` of ``m x = b``, or ``None`` if inconsistent.

    Free variables are set to zero.
    """
    if len(b) != m.nrows:
        raise ValueError("right-hand side length mismatch")
    aug = [list(r) + [scalar(x)] for r, x in zip(m.rows, b)]
    red, pivots = _rref(aug, m.ncols + 1)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [ZERO] * m.ncols
    for row, c in zip(red, pivots):
        x[c] = row[m.ncols]
    return tuple(x)


class Subspace:
    """A subspace of ``Q(i)^ambient_dim`` given by independent basis vectors.

    The stored basis is the reduced row echelon basis of the span, so two
    equal subspaces have identical bases.
    """

    __slots__ = ("ambient_dim", "vectors")

    def __init__(self, ambient_dim: int, vectors: Sequence[Sequence] = ()):
        sp = Subspace.span(vectors, ambient_dim)
        self.ambient_dim = ambient_dim
        self.vectors = sp.vectors

    @classmethod
    def _trusted(cls, ambient_dim: int, vectors: list[tuple]) -> Subspace:
        s = cls.__new__(cls)
        s.ambient_dim = ambient_dim
        s.vectors = tuple(vectors)
        return s

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
        vecs = [tuple(scalar(x) for x in v) for v in vectors]
        if any(len(v) != ambient_dim for v in vecs):
            raise ValueError("vector length does not match ambient dimension")
        rows, _ = _rref(vecs, ambient_dim)
        return cls._trusted(ambient_dim, [tuple(r) for r in rows])

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls._trusted(ambient_dim, [])

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        return cls._trusted(ambient_dim, Matrix.identity(ambient_dim).rows)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def basis(self) -> Matrix:
        """Basis vectors as the columns of a matrix."""
        return Matrix.from_columns(self.vectors, self.ambient_dim)

    def _check(self, other: Subspace) -> None:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(f"ambient dimensions differ: {self.ambient_dim} "
                             f"vs {other.ambient_dim}")

    def __add__(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace.span(self.vectors + other.vectors, self.ambient_dim)

    def intersection(self, other: Subspace) -> Subspace:
        self._check(other)
        a, b = self.dim, other.dim
        if a == 0 or b == 0:
            return Subspace.zero(self.ambient_dim)
        # solve sum_i x_i u_i = sum_j y_j w_j
        rows = [[u[t] for u in self.vectors] + [-w[t] for w in other.vectors]
                for t in range(self.ambient_dim)]
        combos = _kernel_vectors(rows, a + b)
        vecs = [tuple(sum((c[i] * u[t] for i, u in enumerate(self.vectors) if c[i]), ZERO)
                      for t in range(self.ambient_dim)) for c in combos]
        return Subspace.span(vecs, self.ambient_dim)

    __and__ = intersection

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise ValueError("vector length mismatch")
        return rank_of_vectors(self.vectors + (tuple(v),), self.ambient_dim) == self.dim

    def is_subspace_of(self, other: Subspace) -> bool:
        self._check(other)
        return (self + other).dim == other.dim

    def quotient_dim(self, other: Subspace) -> int:
        """``dim(U / (U ∩ W))`` for ``U = self``, ``W = other``."""
        self._check(other)
        return (self + other).dim - other.dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.vectors == other.vectors

    def __hash__(self):
        return hash((self.ambient_dim, self.vectors))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def preimage(m: Matrix, target: Subspace) -> Subspace:
    """``{x : m x ∈ target}``."""
    if target.ambient_dim != m.nrows:
        raise ValueError("target subspace lives in the wrong space")
    t = target.dim
    rows = [list(r) + [-w[i] for w in target.vectors] for i, r in enumerate(m.rows)]
    combos = _kernel_vectors(rows, m.ncols + t)
    return Subspace.span([c[:m.ncols] for c in combos], m.ncols)


def subspace_ops(u: Subspace, w: Subspace) -> dict:
    """Sum, intersection and quotient dimension of a pair of subspaces."""
    u._check(w)
    return {
        "sum": u + w,
        "intersection": u & w,
        "quotient_dim": u.quotient_dim(w),
    }
