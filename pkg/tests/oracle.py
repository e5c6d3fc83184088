"""Independent reference computations built on sympy.

Nothing here shares code with the package beyond reading matrix entries,
so agreement is a genuine cross-check of the elimination and of the
subspace bookkeeping.
"""

from __future__ import annotations

import sympy

from dcohom.linalg import im_part, re_part


def to_sympy(m) -> sympy.Matrix:
    rows = [[sympy.Rational(int(re_part(x).numerator), int(re_part(x).denominator))
             + sympy.I * sympy.Rational(int(im_part(x).numerator), int(im_part(x).denominator))
             for x in row] for row in m.rows]
    return sympy.Matrix(m.nrows, m.ncols, lambda i, j: rows[i][j])


def srank(m) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    return to_sympy(m).rank(simplify=True)


def _mat(a, kind, p, q):
    return to_sympy(a.del_at(p, q) if kind == "d" else a.delbar_at(p, q))


def _rk(m: sympy.Matrix) -> int:
    return 0 if 0 in m.shape else m.rank(simplify=True)


def bott_chern(a, p, q) -> int:
    dim = a.dim(p, q)
    if not dim:
        return 0
    stacked = _mat(a, "d", p, q).col_join(_mat(a, "db", p, q))
    ddbar_in = _mat(a, "d", p - 1, q) * _mat(a, "db", p - 1, q - 1)
    return dim - _rk(stacked) - _rk(ddbar_in)


def aeppli(a, p, q) -> int:
    dim = a.dim(p, q)
    if not dim:
        return 0
    ddbar_out = _mat(a, "d", p, q + 1) * _mat(a, "db", p, q)
    side = _mat(a, "d", p - 1, q).row_join(_mat(a, "db", p, q - 1))
    return dim - _rk(ddbar_out) - _rk(side)


def dolbeault(a, p, q) -> int:
    dim = a.dim(p, q)
    return dim - _rk(_mat(a, "db", p, q)) - _rk(_mat(a, "db", p, q - 1)) if dim else 0


def betti(a) -> dict[int, int]:
    """De Rham numbers from a separately assembled total differential."""
    n = a.n
    index = {}
    for k in range(2 * n + 1):
        pos = 0
        for p in range(n + 1):
            q = k - p
            if 0 <= q <= n:
                index[(p, q)] = (k, pos)
                pos += a.dim(p, q)
    size = {k: sum(a.dim(p, k - p) for p in range(n + 1) if 0 <= k - p <= n)
            for k in range(2 * n + 2)}
    ranks = {}
    for k in range(2 * n + 1):
        m = sympy.zeros(size.get(k + 1, 0), size[k])
        for (p, q), (kk, off) in index.items():
            if kk != k:
                continue
            for tgt, blk in (((p + 1, q), _mat(a, "d", p, q)), ((p, q + 1), _mat(a, "db", p, q))):
                if tgt in index and a.dim(*tgt) and a.dim(p, q):
                    toff = index[tgt][1]
                    m[toff:toff + blk.shape[0], off:off + blk.shape[1]] = blk
        ranks[k] = _rk(m)
    return {k: size[k] - ranks[k] - ranks.get(k - 1, 0) for k in range(2 * n + 1)}
