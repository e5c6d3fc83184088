"""Bounded double complexes and singly graded complexes with tagged summands."""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple

from .linalg import Matrix, format_scalar, parse_scalar, rank

Bidegree = tuple[int, int]


class DoubleComplexError(ValueError):
    """Structurally malformed double complex or document."""


@dataclass(frozen=True, eq=False)
class DoubleComplex:
    """A bigraded space over ``[0,n]^2`` with differentials of bidegree
    (1,0) (``d10``, the ∂ maps) and (0,1) (``d01``, the ∂̄ maps).

    ``d10[(p,q)]`` is the matrix of ∂ : A^{p,q} -> A^{p+1,q}; absent keys
    mean zero maps.  ``monomials`` is only set for Lie-algebra models, where
    it lists the wedge monomial spanning each basis vector.
    """

    n: int
    dims: Mapping[Bidegree, int]
    d10: Mapping[Bidegree, Matrix] = field(default_factory=dict)
    d01: Mapping[Bidegree, Matrix] = field(default_factory=dict)
    monomials: Mapping[Bidegree, tuple] | None = None

    def __post_init__(self):
        n = self.n
        if n < 0:
            raise DoubleComplexError("ambient dimension must be nonnegative")
        dims = {(p, q): 0 for p in range(n + 1) for q in range(n + 1)}
        for (p, q), d in self.dims.items():
            if (p, q) not in dims:
                if d:
                    raise DoubleComplexError(f"bidegree {(p, q)} outside [0,{n}]^2")
                continue
            if d < 0:
                raise DoubleComplexError(f"negative dimension at {(p, q)}")
            dims[(p, q)] = int(d)
        object.__setattr__(self, "dims", dims)
        for name, step in (("d10", (1, 0)), ("d01", (0, 1))):
            maps = {}
            for (p, q), m in getattr(self, name).items():
                src, tgt = (p, q), (p + step[0], q + step[1])
                want = (self.dim(*tgt), self.dim(*src))
                if m.shape != want:
                    raise DoubleComplexError(
                        f"{name} at {src} has shape {m.shape}, expected {want}")
                if m.nrows and m.ncols and not m.is_zero():
                    maps[src] = m
            object.__setattr__(self, name, maps)

    def dim(self, p: int, q: int) -> int:
        return self.dims.get((p, q), 0)

    def del_at(self, p: int, q: int) -> Matrix:
        """∂ : A^{p,q} -> A^{p+1,q}."""
        m = self.d10.get((p, q))
        return m if m is not None else Matrix.zeros(self.dim(p + 1, q), self.dim(p, q))

    def delbar_at(self, p: int, q: int) -> Matrix:
        """∂̄ : A^{p,q} -> A^{p,q+1}."""
        m = self.d01.get((p, q))
        return m if m is not None else Matrix.zeros(self.dim(p, q + 1), self.dim(p, q))

    def bidegrees(self) -> list[Bidegree]:
        return sorted(self.dims)

    def support(self) -> list[Bidegree]:
        return [b for b in self.bidegrees() if self.dims[b]]

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def grid(self) -> dict[Bidegree, int]:
        return dict(self.dims)

    def __eq__(self, other):
        if not isinstance(other, DoubleComplex):
            return NotImplemented
        return (self.n == other.n and self.dims == other.dims
                and self.d10 == other.d10 and self.d01 == other.d01)

    def __repr__(self):
        grid = {b: d for b, d in self.dims.items() if d}
        return f"DoubleComplex(n={self.n}, dims={grid})"


class Violation(NamedTuple):
    identity: str
    bidegree: Bidegree

    def __str__(self):
        return f"{self.identity} fails at {self.bidegree}"


def validate(a: DoubleComplex) -> list[Violation]:
    """Check ∂∂ = 0, ∂̄∂̄ = 0 and ∂∂̄ + ∂̄∂ = 0 everywhere.

    Returns the list of failures; an empty list means the input is valid.
    """
    out = []
    for p, q in a.bidegrees():
        if not a.dim(p, q):
            continue
        if not (a.del_at(p + 1, q) @ a.del_at(p, q)).is_zero():
            out.append(Violation("del^2 = 0", (p, q)))
        if not (a.delbar_at(p, q + 1) @ a.delbar_at(p, q)).is_zero():
            out.append(Violation("delbar^2 = 0", (p, q)))
        anti = a.del_at(p, q + 1) @ a.delbar_at(p, q) + a.delbar_at(p + 1, q) @ a.del_at(p, q)
        if not anti.is_zero():
            out.append(Violation("del delbar + delbar del = 0", (p, q)))
    return out


def is_valid(a: DoubleComplex) -> bool:
    return not validate(a)


def require_valid(a: DoubleComplex) -> None:
    bad = validate(a)
    if bad:
        raise DoubleComplexError("invalid double complex: " + "; ".join(map(str, bad)))


def zero_complex(n: int) -> DoubleComplex:
    return DoubleComplex(n, {})


def direct_sum(a: DoubleComplex, b: DoubleComplex) -> DoubleComplex:
    if a.n != b.n:
        raise DoubleComplexError(f"ambient dimensions differ: {a.n} vs {b.n}")
    dims = {k: a.dim(*k) + b.dim(*k) for k in a.bidegrees()}
    d10 = {k: Matrix.block_diag(a.del_at(*k), b.del_at(*k)) for k in a.bidegrees()}
    d01 = {k: Matrix.block_diag(a.delbar_at(*k), b.delbar_at(*k)) for k in a.bidegrees()}
    return DoubleComplex(a.n, dims, d10, d01)


def direct_sum_all(parts: Iterable[DoubleComplex], n: int) -> DoubleComplex:
    """Direct sum of many complexes, assembled block-diagonally in one pass."""
    parts = list(parts)
    if any(p.n != n for p in parts):
        raise DoubleComplexError("ambient dimensions differ")
    out = zero_complex(n)
    if not parts:
        return out
    dims = {k: sum(p.dim(*k) for p in parts) for k in out.bidegrees()}

    def diag(getter, k, step):
        src_off, tgt_off = 0, 0
        tgt = (k[0] + step[0], k[1] + step[1])
        rows = [[0] * dims[k] for _ in range(dims.get(tgt, 0))]
        for p in parts:
            m = getter(p, k)
            for i in range(m.nrows):
                for j in range(m.ncols):
                    rows[tgt_off + i][src_off + j] = m.rows[i][j]
            src_off += p.dim(*k)
            tgt_off += p.dim(*tgt)
        return Matrix(rows, len(rows), dims[k])

    d10 = {}
    d01 = {}
    for k in out.bidegrees():
        if any(k in p.d10 for p in parts):
            d10[k] = diag(lambda p, k: p.del_at(*k), k, (1, 0))
        if any(k in p.d01 for p in parts):
            d01[k] = diag(lambda p, k: p.delbar_at(*k), k, (0, 1))
    return DoubleComplex(n, dims, d10, d01)


def dual(a: DoubleComplex) -> DoubleComplex:
    """The dual double complex, (DA)^{r,s} = (A^{n-r,n-s})^∨.

    ∂ on DA at (r,s) is (-1)^{r+s} times the transpose of ∂ on A out of
    (n-r-1, n-s); likewise for ∂̄.
    """
    require_valid(a)
    n = a.n
    dims = {(r, s): a.dim(n - r, n - s) for r, s in a.bidegrees()}
    d10, d01 = {}, {}
    for r, s in a.bidegrees():
        sign = -1 if (r + s) % 2 else 1
        if (n - r - 1, n - s) in a.d10:
            d10[(r, s)] = a.d10[(n - r - 1, n - s)].T.scaled(sign)
        if (n - r, n - s - 1) in a.d01:
            d01[(r, s)] = a.d01[(n - r, n - s - 1)].T.scaled(sign)
    out = DoubleComplex(n, dims, d10, d01)
    require_valid(out)
    return out


def conjugate(a: DoubleComplex) -> DoubleComplex:
    """Reflect across the diagonal and swap the roles of ∂ and ∂̄.

    Entries are not conjugated; only dimensions are ever read downstream.
    """
    require_valid(a)
    dims = {(q, p): d for (p, q), d in a.dims.items()}
    d10 = {(q, p): m for (p, q), m in a.d01.items()}
    d01 = {(q, p): m for (p, q), m in a.d10.items()}
    return DoubleComplex(a.n, dims, d10, d01)


# ---------------------------------------------------------------------------


class SquareZeroError(RuntimeError):
    """d∘d != 0 in an assembled graded complex."""


@dataclass(frozen=True, eq=False)
class GradedComplex:
    """Cochain complex C^k with each C^k a direct sum of bidegree-tagged blocks.

    ``spaces[k]`` is a tuple of ``(tag, dim)`` pairs in basis order and
    ``diff[k]`` the matrix of d^k : C^k -> C^{k+1} (absent means zero).
    """

    spaces: Mapping[int, tuple[tuple[Bidegree, int], ...]]
    diff: Mapping[int, Matrix] = field(default_factory=dict)

    def __post_init__(self):
        for k, m in self.diff.items():
            if m.shape != (self.dim(k + 1), self.dim(k)):
                raise ValueError(f"d^{k} has shape {m.shape}, expected "
                                 f"{(self.dim(k + 1), self.dim(k))}")

    def dim(self, k: int) -> int:
        return sum(d for _, d in self.spaces.get(k, ()))

    def degrees(self) -> list[int]:
        return sorted(self.spaces)

    def tags(self, k: int) -> list[Bidegree]:
        return [t for t, _ in self.spaces.get(k, ())]

    def offsets(self, k: int) -> dict[Bidegree, tuple[int, int]]:
        out, pos = {}, 0
        for tag, d in self.spaces.get(k, ()):
            out[tag] = (pos, pos + d)
            pos += d
        return out

    def d(self, k: int) -> Matrix:
        m = self.diff.get(k)
        return m if m is not None else Matrix.zeros(self.dim(k + 1), self.dim(k))

    def check_square_zero(self) -> None:
        for k in self.degrees():
            if self.dim(k) and self.dim(k + 2):
                if not (self.d(k + 1) @ self.d(k)).is_zero():
                    raise SquareZeroError(f"d^{k + 1} d^{k} != 0")

    def ranks(self) -> dict[int, int]:
        return {k: rank(self.d(k)) for k in self.degrees()}

    def cohomology_dims(self) -> dict[int, int]:
        rk = self.ranks()
        return {k: self.dim(k) - rk[k] - rk.get(k - 1, 0) for k in self.degrees()}

    def euler_characteristic(self) -> int:
        return sum((-1) ** (k % 2) * self.dim(k) for k in self.degrees())


def total_complex(a: DoubleComplex) -> GradedComplex:
    """C^k = ⊕_{p+q=k} A^{p,q} (blocks ordered by p), d = ∂ + ∂̄."""
    require_valid(a)
    return _assemble(a, {k: [(p, k - p) for p in range(a.n + 1) if 0 <= k - p <= a.n]
                         for k in range(2 * a.n + 1)})


def _assemble(a: DoubleComplex, layout: Mapping[int, list[Bidegree]]) -> GradedComplex:
    spaces = {k: tuple((t, a.dim(*t)) for t in tags if a.dim(*t))
              for k, tags in layout.items()}
    diff = {}
    for k in spaces:
        if k + 1 not in spaces:
            continue
        src, tgt = spaces[k], spaces[k + 1]
        if not src or not tgt:
            continue
        blocks = [[_block(a, s, t) for s, _ in src] for t, _ in tgt]
        m = Matrix.block(blocks)
        if not m.is_zero():
            diff[k] = m
    g = GradedComplex(spaces, diff)
    g.check_square_zero()
    return g


def _block(a: DoubleComplex, src: Bidegree, tgt: Bidegree) -> Matrix:
    (p, q), (r, s) = src, tgt
    if (r, s) == (p + 1, q):
        return a.del_at(p, q)
    if (r, s) == (p, q + 1):
        return a.delbar_at(p, q)
    return Matrix.zeros(a.dim(r, s), a.dim(p, q))


# ---------------------------------------------------------------------------
# document format


def _key(b: Bidegree) -> str:
    return f"{b[0]},{b[1]}"


def to_document(a: DoubleComplex) -> dict:
    """Serialize to the JSON double-complex document (a plain dict)."""

    def blocks(maps):
        return [{"from": [p, q], "matrix": [[format_scalar(x) for x in row] for row in m.rows]}
                for (p, q), m in sorted(maps.items())]

    return {
        "n": a.n,
        "dims": {_key(b): d for b, d in sorted(a.dims.items())},
        "del": blocks(a.d10),
        "delbar": blocks(a.d01),
    }


def from_document(doc: Mapping) -> DoubleComplex:
    """Parse a double-complex document.  Absent blocks are zero maps.

    Axiom violations are *not* raised here; run :func:`validate`.
    """
    try:
        n = int(doc["n"])
        dims = {}
        for key, d in dict(doc.get("dims", {})).items():
            p, q = (int(x) for x in key.split(","))
            dims[(p, q)] = int(d)
        probe = DoubleComplex(n, dims)
        maps = {}
        for name, step in (("del", (1, 0)), ("delbar", (0, 1))):
            maps[name] = {}
            for blk in doc.get(name, []):
                p, q = (int(x) for x in blk["from"])
                entries = [[parse_scalar(str(x)) for x in row] for row in blk["matrix"]]
                nrows = probe.dim(p + step[0], q + step[1])
                ncols = probe.dim(p, q)
                maps[name][(p, q)] = Matrix(entries, nrows, ncols)
    except DoubleComplexError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise DoubleComplexError(f"malformed double-complex document: {exc}") from exc
    return DoubleComplex(n, dims, maps["del"], maps["delbar"])


def save(a: DoubleComplex, path: str | Path) -> None:
    Path(path).write_text(json.dumps(to_document(a), indent=1) + "\n", encoding="utf-8")


def load(path: str | Path) -> DoubleComplex:
    return from_document(json.loads(Path(path).read_text(encoding="utf-8")))
