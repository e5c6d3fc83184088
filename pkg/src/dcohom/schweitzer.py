"""The Schweitzer complex L_{p,q} of a double complex and its cohomology.

For k <= p+q-2, L^k is the sum of A^{r,s} with r+s = k, r < p, s < q and
the differential is ∂+∂̄ followed by projection back into that region.
For k >= p+q-1, L^k is the sum of A^{r,s} with r+s = k+1, r >= p, s >= q
with differential ∂+∂̄.  The two halves are joined by ∂∂̄ from A^{p-1,q-1}
to A^{p,q}.  Then H^{p+q-1}(L_{p,q}) is Bott-Chern cohomology at (p,q) and
H^{p+q-2}(L_{p,q}) is Aeppli cohomology at (p-1,q-1).
"""

from __future__ import annotations

from dataclasses import dataclass

from .bicomplex import Bidegree, DoubleComplex, GradedComplex, dual, require_valid
from .generators.lie import volume_monomial, wedge
from .linalg import ONE, ZERO, Matrix, Subspace, kernel_basis, rank, rank_of_vectors
from .report import Verdict


def in_lower(r: int, s: int, p: int, q: int) -> bool:
    return r < p and s < q


def in_upper(r: int, s: int, p: int, q: int) -> bool:
    return r >= p and s >= q


def degree_range(n: int) -> range:
    """Degrees in which some L_{p,q}^k can be nonzero for support in [0,n]^2."""
    return range(-1, 2 * n + 1)


def region_tags(n: int, p: int, q: int, k: int) -> list[Bidegree]:
    """Bidegrees making up L_{p,q}^k (before discarding zero-dimensional ones)."""
    if k <= p + q - 2:
        return [(r, k - r) for r in range(n + 1)
                if 0 <= k - r <= n and in_lower(r, k - r, p, q)]
    return [(r, k + 1 - r) for r in range(n + 1)
            if 0 <= k + 1 - r <= n and in_upper(r, k + 1 - r, p, q)]


def build_L(a: DoubleComplex, p: int, q: int) -> GradedComplex:
    """Assemble L_{p,q}(A) with bidegree-tagged summands; d_L∘d_L = 0 is
    checked before returning."""
    require_valid(a)
    n = a.n
    spaces = {}
    for k in degree_range(n):
        spaces[k] = tuple((t, a.dim(*t)) for t in region_tags(n, p, q, k) if a.dim(*t))
    corner = p + q - 2
    diff = {}
    for k in degree_range(n):
        src, tgt = spaces[k], spaces.get(k + 1, ())
        if not src or not tgt:
            continue
        blocks = []
        for (r2, s2), d2 in tgt:
            row = []
            for (r, s), d in src:
                if k == corner:
                    # only A^{p-1,q-1} -> A^{p,q} can occur here
                    m = a.del_at(r, s + 1) @ a.delbar_at(r, s)
                elif (r2, s2) == (r + 1, s):
                    m = a.del_at(r, s)
                elif (r2, s2) == (r, s + 1):
                    m = a.delbar_at(r, s)
                else:
                    m = Matrix.zeros(d2, d)
                row.append(m)
            blocks.append(row)
        m = Matrix.block(blocks)
        if not m.is_zero():
            diff[k] = m
    g = GradedComplex(spaces, diff)
    g.check_square_zero()
    return g


def s_dims(a: DoubleComplex, p: int, q: int) -> dict[int, int]:
    """k -> dim H^k(L_{p,q}(A)) for every k in the degree range."""
    return build_L(a, p, q).cohomology_dims()


def bott_chern_via_L(a: DoubleComplex, p: int, q: int) -> int:
    return s_dims(a, p, q).get(p + q - 1, 0)


def aeppli_via_L(a: DoubleComplex, p: int, q: int) -> int:
    """H^{p+q-2}(L_{p,q}); this is the Aeppli group of bidegree (p-1,q-1)."""
    return s_dims(a, p, q).get(p + q - 2, 0)


def euler_chi_pq(a: DoubleComplex, p: int, q: int) -> int:
    """Alternating sum of s^k_{p,q}; checked against the alternating sum of
    dim L^k, which does not need any rank computation."""
    g = build_L(a, p, q)
    chi = sum((-1) ** (k % 2) * h for k, h in g.cohomology_dims().items())
    if chi != g.euler_characteristic():
        raise RuntimeError(f"Euler characteristic mismatch for L_{p},{q}")
    return chi


def dual_parameters(n: int, p: int, q: int, k: int) -> tuple[int, int, int]:
    return n - p + 1, n - q + 1, 2 * n - 1 - k


def duality_checks(a: DoubleComplex, p: int, q: int,
                   da: DoubleComplex | None = None) -> dict[int, Verdict]:
    """:func:`duality_dim_check` for every degree at once (each complex is
    built a single time)."""
    n = a.n
    if da is None:
        da = dual(a)
    pp, qq, _ = dual_parameters(n, p, q, 0)
    la, ld = build_L(a, p, q), build_L(da, pp, qq)
    ha, hd = la.cohomology_dims(), ld.cohomology_dims()
    comp_d, comp_a = build_L(da, p, q), build_L(a, pp, qq)
    out = {}
    for k in degree_range(n):
        kk = 2 * n - 1 - k
        lhs = (ha.get(k, 0), comp_d.dim(k))
        rhs = (hd.get(kk, 0), comp_a.dim(kk))
        out[k] = Verdict(f"duality p={p} q={q} k={k}", lhs == rhs, lhs, rhs)
    return out


def duality_dim_check(a: DoubleComplex, p: int, q: int, k: int,
                      da: DoubleComplex | None = None) -> Verdict:
    """s^k_{p,q}(A) = s^{2n-1-k}_{n-p+1,n-q+1}(DA), plus the componentwise
    identity dim L^k_{p,q}(DA) = dim L^{2n-k-1}_{n-p+1,n-q+1}(A).

    Both sides are reported as (cohomology, component) pairs.
    """
    checks = duality_checks(a, p, q, da)
    if k in checks:
        return checks[k]
    return Verdict(f"duality p={p} q={q} k={k}", True, (0, 0), (0, 0))


# ---------------------------------------------------------------------------
# the wedge pairing on Lie-algebra models


class PairingDescentError(RuntimeError):
    """The wedge pairing does not vanish on (cocycle, coboundary) pairs."""


@dataclass(frozen=True)
class PairingResult:
    matrix: Matrix
    square: bool
    invertible: bool
    descends: bool

    @property
    def perfect(self) -> bool:
        return self.square and self.invertible and self.descends


# Sign attached to the component pairing A^{r,s} x A^{n-r,n-s}.  With the
# plain pairing ∫ α ∧ β one has <d_L α, β> = ±<α, d_L β> with a sign that
# depends only on the degree, which is all descent needs; every call
# re-verifies descent on the actual cocycles and coboundaries.
def pairing_sign(tag: Bidegree, k: int) -> int:
    return 1


def _gram(a: DoubleComplex, left: GradedComplex, k: int, right: GradedComplex,
          kk: int) -> Matrix:
    n = a.n
    vol = volume_monomial(n)
    lo, ro = left.offsets(k), right.offsets(kk)
    rows = [[ZERO] * right.dim(kk) for _ in range(left.dim(k))]
    for tag, (i0, _) in lo.items():
        partner = (n - tag[0], n - tag[1])
        if partner not in ro:
            continue
        j0, _ = ro[partner]
        sign = pairing_sign(tag, k)
        for i, ma in enumerate(a.monomials[tag]):
            for j, mb in enumerate(a.monomials[partner]):
                c = wedge({ma: ONE}, {mb: ONE}).get(vol)
                if c:
                    rows[i0 + i][j0 + j] = c if sign > 0 else -c
    return Matrix(rows, left.dim(k), right.dim(kk))


def _cohomology_reps(g: GradedComplex, k: int) -> tuple[list, list, list]:
    """(cocycle basis, coboundary basis, representatives of a basis of H^k)."""
    dim = g.dim(k)
    cocycles = list(kernel_basis(g.d(k)).vectors) if dim else []
    prev = g.d(k - 1)
    coboundaries = list(Subspace.span(prev.columns(), dim).vectors) if dim else []
    reps, current = [], list(coboundaries)
    for z in cocycles:
        if rank_of_vectors(current + [z], dim) > len(current):
            current.append(z)
            reps.append(z)
    return cocycles, coboundaries, reps


def _pair(vs: list, gram: Matrix, ws: list) -> list[list]:
    return [[sum((x * y for x, y in zip(v, gram.apply(w)) if x and y), ZERO)
             for w in ws] for v in vs]


def pairing_matrix(a: DoubleComplex, p: int, q: int, k: int) -> PairingResult:
    """Pair H^k(L_{p,q}) with H^{2n-1-k}(L_{n-p+1,n-q+1}) by wedge and
    top-degree coefficient; ``a`` must come from :func:`lie_model`."""
    if a.monomials is None:
        raise TypeError("pairing_matrix needs a Lie-algebra model (no wedge product)")
    n = a.n
    pp, qq, kk = dual_parameters(n, p, q, k)
    left, right = build_L(a, p, q), build_L(a, pp, qq)
    gram = _gram(a, left, k, right, kk)
    zl, bl, hl = _cohomology_reps(left, k)
    zr, br, hr = _cohomology_reps(right, kk)
    descends = (all(x == 0 for row in _pair(bl, gram, zr) for x in row)
                and all(x == 0 for row in _pair(zl, gram, br) for x in row))
    if not descends:
        raise PairingDescentError(f"pairing does not descend at p={p} q={q} k={k}")
    m = Matrix(_pair(hl, gram, hr), len(hl), len(hr))
    square = m.nrows == m.ncols
    invertible = square and rank(m) == m.nrows
    return PairingResult(m, square, invertible, descends)
