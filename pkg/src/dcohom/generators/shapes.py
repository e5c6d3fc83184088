"""Indecomposable double complexes (dots, squares, zigzags) and scrambled sums.

A zigzag lives on two adjacent antidiagonals p+q = k and p+q = k+1.  Its
dots form a contiguous run of the infinite path

    ... X_{y-1} -∂-> Y_y <-∂̄- X_y -∂-> Y_{y+1} <-∂̄- X_{y+1} ...

with X_x = (x, k-x) in degree k and Y_y = (y, k+1-y) in degree k+1.  We
number the path positions so that Y_y sits at 2y and X_x at 2x+1; a shape is
then a (k, first, last) interval of positions.
"""

from __future__ import annotations

import random
from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import lru_cache

from ..bicomplex import Bidegree, DoubleComplex, direct_sum_all
from ..linalg import ONE, ZERO, Matrix

DEL, DELBAR = "del", "delbar"
FORWARD, BACKWARD = "forward", "backward"

_ARROW_TEXT = {DEL: "∂", DELBAR: "∂̄"}


@dataclass(frozen=True, order=True)
class ZigzagShape:
    """Dots in path order and, between consecutive dots, the arrow type and
    whether it points forward (from ``dots[i]`` to ``dots[i+1]``) or back.

    Construct through :meth:`from_dots` unless the arrows are at hand.
    """

    dots: tuple[Bidegree, ...]
    arrows: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        dots = tuple(tuple(d) for d in self.dots)
        object.__setattr__(self, "dots", dots)
        object.__setattr__(self, "arrows", tuple(tuple(a) for a in self.arrows))
        if not dots:
            raise ValueError("a zigzag needs at least one dot")
        if len(set(dots)) != len(dots):
            raise ValueError("repeated dot")
        if len(self.arrows) != len(dots) - 1:
            raise ValueError("need exactly one arrow between consecutive dots")
        for i, (a, b) in enumerate(zip(dots, dots[1:])):
            expected = _arrow_between(a, b)
            if expected is None or expected != self.arrows[i]:
                raise ValueError(f"arrow {self.arrows[i]} does not join {a} and {b}")
        for x, y in zip(self.arrows, self.arrows[1:]):
            if x[0] == y[0] or x[1] == y[1]:
                raise ValueError("arrow types and directions must alternate")

    @classmethod
    def from_dots(cls, dots: Iterable[Bidegree]) -> ZigzagShape:
        dots = tuple(tuple(d) for d in dots)
        arrows = []
        for a, b in zip(dots, dots[1:]):
            arr = _arrow_between(a, b)
            if arr is None:
                raise ValueError(f"{a} and {b} are not adjacent")
            arrows.append(arr)
        return cls(dots, tuple(arrows))

    def __len__(self):
        return len(self.dots)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(p + q for p, q in self.dots)

    def fits(self, n: int) -> bool:
        return all(0 <= p <= n and 0 <= q <= n for p, q in self.dots)

    def reversed(self) -> ZigzagShape:
        flip = {FORWARD: BACKWARD, BACKWARD: FORWARD}
        return ZigzagShape(self.dots[::-1],
                           tuple((t, flip[d]) for t, d in self.arrows[::-1]))

    def canonical(self) -> ZigzagShape:
        """Orientation with the lexicographically smaller endpoint first."""
        return self.reversed() if self.dots[-1] < self.dots[0] else self

    def transpose(self) -> ZigzagShape:
        """Image under (p,q) -> (q,p); ∂ and ∂̄ arrows swap."""
        swap = {DEL: DELBAR, DELBAR: DEL}
        return ZigzagShape(tuple((q, p) for p, q in self.dots),
                           tuple((swap[t], d) for t, d in self.arrows)).canonical()

    def reflect(self, n: int) -> ZigzagShape:
        """Image under (p,q) -> (n-p,n-q) with arrows reversed (the dual)."""
        flip = {FORWARD: BACKWARD, BACKWARD: FORWARD}
        return ZigzagShape(tuple((n - p, n - q) for p, q in self.dots),
                           tuple((t, flip[d]) for t, d in self.arrows)).canonical()

    def orbit(self, n: int) -> frozenset[ZigzagShape]:
        """Orbit under the group generated by transpose and reflect."""
        z = self.canonical()
        return frozenset({z, z.transpose(), z.reflect(n), z.transpose().reflect(n)})

    def touches_corner(self, n: int) -> bool:
        return any(d in {(0, 0), (n, 0), (0, n), (n, n)} for d in self.dots)

    def describe(self) -> str:
        """E.g. ``(0,1) <-∂̄- (0,0) -∂-> (1,0)``."""
        out = [f"({self.dots[0][0]},{self.dots[0][1]})"]
        for (t, d), (p, q) in zip(self.arrows, self.dots[1:]):
            sym = _ARROW_TEXT[t]
            out.append(f"-{sym}->" if d == FORWARD else f"<-{sym}-")
            out.append(f"({p},{q})")
        return " ".join(out)

    def __str__(self):
        return self.describe()


def _arrow_between(a: Bidegree, b: Bidegree) -> tuple[str, str] | None:
    step = (b[0] - a[0], b[1] - a[1])
    return {
        (1, 0): (DEL, FORWARD),
        (-1, 0): (DEL, BACKWARD),
        (0, 1): (DELBAR, FORWARD),
        (0, -1): (DELBAR, BACKWARD),
    }.get(step)


def parse_shape(text: str) -> ZigzagShape:
    """Inverse of :meth:`ZigzagShape.describe`."""
    dots = []
    for tok in text.split():
        if tok.startswith("("):
            p, q = tok.strip("()").split(",")
            dots.append((int(p), int(q)))
    return ZigzagShape.from_dots(dots)


def _path_dot(k: int, pos: int) -> Bidegree:
    if pos % 2:
        x = (pos - 1) // 2
        return (x, k - x)
    y = pos // 2
    return (y, k + 1 - y)


@lru_cache(maxsize=None)
def enumerate_shapes(n: int) -> tuple[ZigzagShape, ...]:
    """Every zigzag shape with all dots in [0,n]^2, each exactly once."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    found = set()
    for k in range(-1, 2 * n + 1):
        valid = [j for j in range(-1, 2 * n + 3)
                 if all(0 <= c <= n for c in _path_dot(k, j))]
        vset = set(valid)
        for a in valid:
            b = a
            while b in vset:
                if b > a or a % 2:
                    found.add(ZigzagShape.from_dots(
                        [_path_dot(k, j) for j in range(a, b + 1)]).canonical())
                b += 1
    return tuple(sorted(found, key=lambda z: (len(z), z.dots, z.arrows)))


# ---------------------------------------------------------------------------


def _one() -> Matrix:
    return Matrix._raw([[ONE]], 1, 1)


def make_dot(p: int, q: int, n: int) -> DoubleComplex:
    if not (0 <= p <= n and 0 <= q <= n):
        raise ValueError(f"dot {(p, q)} outside [0,{n}]^2")
    return DoubleComplex(n, {(p, q): 1})


def make_square(p: int, q: int, n: int) -> DoubleComplex:
    """Square with lower-left corner (p,q); the ∂̄ arrow on the right is -1."""
    if not (0 <= p < n and 0 <= q < n):
        raise ValueError(f"square with corner {(p, q)} does not fit in [0,{n}]^2")
    dims = {(p, q): 1, (p + 1, q): 1, (p, q + 1): 1, (p + 1, q + 1): 1}
    d10 = {(p, q): _one(), (p, q + 1): _one()}
    d01 = {(p, q): _one(), (p + 1, q): Matrix._raw([[-ONE]], 1, 1)}
    return DoubleComplex(n, dims, d10, d01)


def make_zigzag(shape: ZigzagShape, n: int) -> DoubleComplex:
    if not shape.fits(n):
        raise ValueError(f"shape {shape} does not fit in [0,{n}]^2")
    dims = {d: 1 for d in shape.dots}
    d10, d01 = {}, {}
    for (t, direction), a, b in zip(shape.arrows, shape.dots, shape.dots[1:]):
        src = a if direction == FORWARD else b
        (d10 if t == DEL else d01)[src] = _one()
    return DoubleComplex(n, dims, d10, d01)


# ---------------------------------------------------------------------------


@dataclass
class MultiplicityTable:
    """Multiplicities of zigzags (by canonical shape) and squares (by corner)."""

    zigzag_mults: dict[ZigzagShape, int] = field(default_factory=dict)
    square_mults: dict[Bidegree, int] = field(default_factory=dict)

    def __post_init__(self):
        self.zigzag_mults = {z.canonical(): m for z, m in self.zigzag_mults.items() if m}
        self.square_mults = {c: m for c, m in self.square_mults.items() if m}

    @classmethod
    def from_lists(cls, shapes: Iterable[ZigzagShape],
                   squares: Iterable[Bidegree] = ()) -> MultiplicityTable:
        return cls(dict(Counter(z.canonical() for z in shapes)),
                   dict(Counter(tuple(c) for c in squares)))

    def __eq__(self, other):
        if not isinstance(other, MultiplicityTable):
            return NotImplemented
        return (self.zigzag_mults == other.zigzag_mults
                and self.square_mults == other.square_mults)

    def dims(self, n: int) -> dict[Bidegree, int]:
        """Dimension grid implied by the table."""
        grid = {(p, q): 0 for p in range(n + 1) for q in range(n + 1)}
        for z, m in self.zigzag_mults.items():
            for d in z.dots:
                grid[d] += m
        for (c, d), m in self.square_mults.items():
            for b in ((c, d), (c + 1, d), (c, d + 1), (c + 1, d + 1)):
                grid[b] += m
        return grid

    def accounting_errors(self, a: DoubleComplex) -> list[Bidegree]:
        """Bidegrees where the table does not reproduce ``dim A^{p,q}``."""
        implied = self.dims(a.n)
        return [b for b in a.bidegrees() if implied[b] != a.dim(*b)]

    def transported(self, n: int) -> MultiplicityTable:
        """The table of the dual complex: reflect every summand through
        (p,q) -> (n-p,n-q)."""
        return MultiplicityTable(
            {z.reflect(n): m for z, m in self.zigzag_mults.items()},
            {(n - 1 - c, n - 1 - d): m for (c, d), m in self.square_mults.items()})

    def to_json(self) -> dict:
        return {
            "zigzags": {z.describe(): m for z, m in
                        sorted(self.zigzag_mults.items(), key=lambda kv: (len(kv[0]), kv[0]))},
            "squares": {f"{c},{d}": m for (c, d), m in sorted(self.square_mults.items())},
        }


def random_invertible(dim: int, rng: random.Random) -> tuple[Matrix, Matrix]:
    """A random unimodular integer matrix and its inverse.

    Built as a product of elementary operations (row additions with
    multipliers in {-2,-1,1,2}, swaps, negations), applied to the identity
    and, inverted and in reverse order, to a second identity.
    """
    g = [[ONE if i == j else ZERO for j in range(dim)] for i in range(dim)]
    h = [row[:] for row in g]
    if dim == 0:
        return Matrix._raw(g, 0, 0), Matrix._raw(h, 0, 0)
    for _ in range(3 * dim + 2):
        kind = rng.randrange(3) if dim > 1 else 2
        if kind == 0:
            i, j = rng.sample(range(dim), 2)
            c = rng.choice((-2, -1, 1, 2))
            # g <- E g with E = I + c e_ij ; h <- h E^{-1}
            g[i] = [x + c * y for x, y in zip(g[i], g[j])]
            for row in h:
                row[j] = row[j] - c * row[i]
        elif kind == 1:
            i, j = rng.sample(range(dim), 2)
            g[i], g[j] = g[j], g[i]
            for row in h:
                row[i], row[j] = row[j], row[i]
        else:
            i = rng.randrange(dim)
            g[i] = [-x for x in g[i]]
            for row in h:
                row[i] = -row[i]
    return Matrix._raw(g, dim, dim), Matrix._raw(h, dim, dim)


def change_basis(a: DoubleComplex, rng: random.Random) -> DoubleComplex:
    """Conjugate all differentials by a random invertible matrix per bidegree."""
    gs = {b: random_invertible(a.dim(*b), rng) for b in a.bidegrees()}
    d10 = {(p, q): gs[(p + 1, q)][0] @ m @ gs[(p, q)][1] for (p, q), m in a.d10.items()}
    d01 = {(p, q): gs[(p, q + 1)][0] @ m @ gs[(p, q)][1] for (p, q), m in a.d01.items()}
    return DoubleComplex(a.n, a.dims, d10, d01)


def scrambled_sum(shapes: Iterable[ZigzagShape], squares: Iterable[Bidegree], n: int,
                  seed: int) -> tuple[DoubleComplex, MultiplicityTable]:
    """Direct sum of the listed indecomposables in a random basis.

    Returns the complex together with its ground-truth multiplicity table.
    ``seed`` drives a ``random.Random`` (Mersenne Twister) instance.
    """
    shapes = [z.canonical() for z in shapes]
    squares = [tuple(c) for c in squares]
    parts = [make_zigzag(z, n) for z in shapes] + [make_square(c, d, n) for c, d in squares]
    total = direct_sum_all(parts, n)
    return change_basis(total, random.Random(seed)), MultiplicityTable.from_lists(shapes, squares)


def random_multiset(n: int, rng: random.Random, max_dim: int = 3,
                    attempts: int = 12) -> tuple[list[ZigzagShape], list[Bidegree]]:
    """Random shapes and square corners with every bidegree dimension <= max_dim."""
    pool = enumerate_shapes(n)
    corners = [(c, d) for c in range(n) for d in range(n)]
    grid: Counter = Counter()
    shapes, squares = [], []
    for _ in range(attempts):
        if corners and rng.random() < 0.3:
            c, d = rng.choice(corners)
            cells = [(c, d), (c + 1, d), (c, d + 1), (c + 1, d + 1)]
            if all(grid[x] < max_dim for x in cells):
                grid.update(cells)
                squares.append((c, d))
            continue
        z = rng.choice(pool)
        if all(grid[x] < max_dim for x in z.dots):
            grid.update(z.dots)
            shapes.append(z)
    return shapes, squares


def random_complex(n: int, seed: int, max_dim: int = 3) -> DoubleComplex:
    """A seeded random valid double complex with every dim A^{p,q} <= max_dim."""
    rng = random.Random(seed)
    shapes, squares = random_multiset(n, rng, max_dim)
    return scrambled_sum(shapes, squares, n, rng.randrange(2**32))[0]


def manifold_like_shapes(n: int) -> tuple[ZigzagShape, ...]:
    """Shapes that may occur in the Dolbeault complex of a compact manifold:
    at the four corners of [0,n]^2 only isolated dots are allowed."""
    return tuple(z for z in enumerate_shapes(n) if len(z) == 1 or not z.touches_corner(n))


def symmetric_multiset(n: int, rng: random.Random, orbits: int = 3,
                       squares: int = 2) -> tuple[list[ZigzagShape], list[Bidegree]]:
    """Random zigzags closed under transpose and reflect, plus random squares."""
    pool = manifold_like_shapes(n)
    shapes: list[ZigzagShape] = []
    for _ in range(rng.randint(1, orbits)):
        shapes.extend(sorted(rng.choice(pool).orbit(n)))
    corners = [(c, d) for c in range(n) for d in range(n)]
    sq = [rng.choice(corners) for _ in range(rng.randint(0, squares))] if corners else []
    return shapes, sq


def table_from_mapping(zigzags: Mapping[str, int], squares: Mapping[str, int]) -> MultiplicityTable:
    """Inverse of :meth:`MultiplicityTable.to_json`."""
    sq = {}
    for key, m in squares.items():
        c, d = (int(x) for x in key.split(","))
        sq[(c, d)] = m
    return MultiplicityTable({parse_shape(k): m for k, m in zigzags.items()}, sq)
