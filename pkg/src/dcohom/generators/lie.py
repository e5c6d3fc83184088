"""Dolbeault double complexes of complex Lie algebras from structure equations.

Generators of the exterior algebra are numbered 0..2n-1: index ``i < n``
is ω^{i+1} and index ``n + i`` is its conjugate ω̄^{i+1}.  A monomial is a
strictly increasing tuple of generator indices, so it always reads
ω^I ∧ ω̄^J.  Forms are dicts from monomials to scalars.
"""

from __future__ import annotations

import json
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from pathlib import Path

from ..bicomplex import Bidegree, DoubleComplex, validate
from ..linalg import ONE, ZERO, Matrix, conj, scalar
from .poly import Poly, parse_poly

Monomial = tuple[int, ...]
Form = dict[Monomial, object]


class LieModelError(ValueError):
    """Structure equations that do not define a complex structure."""


# ---------------------------------------------------------------------------
# exterior algebra


def merge_sign(a: Monomial, b: Monomial) -> tuple[int, Monomial] | None:
    """``a ∧ b = sign * merged``, or ``None`` when a generator repeats."""
    if set(a) & set(b):
        return None
    inversions = 0
    for x in a:
        for y in b:
            if x > y:
                inversions += 1
    return (-1 if inversions % 2 else 1), tuple(sorted(a + b))


def wedge(alpha: Mapping[Monomial, object], beta: Mapping[Monomial, object]) -> Form:
    """Wedge product of two forms."""
    out: Form = {}
    for ma, ca in alpha.items():
        for mb, cb in beta.items():
            res = merge_sign(ma, mb)
            if res is None:
                continue
            sign, m = res
            out[m] = out.get(m, ZERO) + (ca * cb if sign > 0 else -(ca * cb))
    return {m: c for m, c in out.items() if c}


def bidegree_of(m: Monomial, n: int) -> Bidegree:
    p = sum(1 for g in m if g < n)
    return p, len(m) - p


@lru_cache(maxsize=None)
def basis(n: int, p: int, q: int) -> tuple[Monomial, ...]:
    """Monomials ω^I ∧ ω̄^J spanning Λ^{p,q}, lexicographic in (I, J)."""
    if not (0 <= p <= n and 0 <= q <= n):
        return ()
    return tuple(i + tuple(n + j for j in jj)
                 for i in combinations(range(n), p)
                 for jj in combinations(range(n), q))


def volume_monomial(n: int) -> Monomial:
    return tuple(range(2 * n))


def top_coefficient(form: Mapping[Monomial, object], n: int):
    """"Integration": the coefficient of ω^{1..n} ∧ ω̄^{1..n}."""
    return form.get(volume_monomial(n), ZERO)


def conjugate_form(form: Mapping[Monomial, object], n: int) -> Form:
    """Complex conjugation: ω^i <-> ω̄^i, coefficients conjugated."""
    out: Form = {}
    for m, c in form.items():
        image = [g + n if g < n else g - n for g in m]
        sign = 1
        for i in range(len(image)):
            for j in range(i + 1, len(image)):
                if image[i] > image[j]:
                    sign = -sign
        key = tuple(sorted(image))
        val = conj(c)
        out[key] = out.get(key, ZERO) + (val if sign > 0 else -val)
    return {m: c for m, c in out.items() if c}


def one_form(coeffs10: Sequence, coeffs01: Sequence) -> Form:
    """Σ a_i ω^i + Σ b_i ω̄^i."""
    n = len(coeffs10)
    form = {(i,): scalar(c) for i, c in enumerate(coeffs10)}
    form.update({(n + i,): scalar(c) for i, c in enumerate(coeffs01)})
    return {m: c for m, c in form.items() if c}


def left_multiplication(xi: Mapping[Monomial, object], n: int, src: Bidegree,
                        tgt: Bidegree) -> Matrix:
    """Matrix of ω ↦ xi ∧ ω from Λ^src to Λ^tgt (other components dropped)."""
    sb, tb = basis(n, *src), basis(n, *tgt)
    index = {m: i for i, m in enumerate(tb)}
    rows = [[ZERO] * len(sb) for _ in tb]
    for j, m in enumerate(sb):
        for mm, c in wedge(xi, {m: ONE}).items():
            i = index.get(mm)
            if i is not None:
                rows[i][j] = rows[i][j] + c
    return Matrix(rows, len(tb), len(sb))


# ---------------------------------------------------------------------------
# structure equations


@dataclass(frozen=True)
class LieModel:
    """Structure equations of a complex Lie algebra.

    ``eq20[i]`` lists ``(j, k, c)`` meaning ``c(t) ω^j ∧ ω^k`` in dω^i and
    ``eq11[i]`` lists ``(j, k, c)`` meaning ``c(t) ω^j ∧ ω̄^k``.  Indices are
    0-based; coefficients are :class:`Poly`.  ``eq02`` exists only so that
    non-integrable input can be reported.
    """

    n: int
    eq20: Mapping[int, tuple] = field(default_factory=dict)
    eq11: Mapping[int, tuple] = field(default_factory=dict)
    eq02: Mapping[int, tuple] = field(default_factory=dict)
    name: str = ""

    def is_constant(self) -> bool:
        return all(c.is_constant() for eq in (self.eq20, self.eq11, self.eq02)
                   for terms in eq.values() for *_, c in terms)

    def structure_forms(self, t=0) -> list[Form]:
        """dω^1..dω^n followed by dω̄^1..dω̄^n, evaluated at ``t``."""
        n = self.n
        for i, terms in self.eq02.items():
            for j, k, c in terms:
                if c(t) and j != k:
                    raise LieModelError(
                        f"d omega^{i + 1} has a (0,2) component at t={t}: not integrable")
        forms = []
        for i in range(n):
            f: Form = {}
            for j, k, c in self.eq20.get(i, ()):
                _add_term(f, j, k, c(t))
            for j, k, c in self.eq11.get(i, ()):
                _add_term(f, j, n + k, c(t))
            forms.append({m: v for m, v in f.items() if v})
        return forms + [conjugate_form(f, n) for f in forms]


def _add_term(f: Form, a: int, b: int, c) -> None:
    if a == b or not c:
        return
    sign, m = (1, (a, b)) if a < b else (-1, (b, a))
    f[m] = f.get(m, ZERO) + (c if sign > 0 else -c)


def exterior_derivative(mono: Monomial, dgen: Sequence[Form]) -> Form:
    """d of a monomial by the graded Leibniz rule."""
    out: Form = {}
    for a, g in enumerate(mono):
        if not dgen[g]:
            continue
        sign = -1 if a % 2 else 1
        left, right = mono[:a], mono[a + 1:]
        for m2, c in dgen[g].items():
            r1 = merge_sign(left, m2)
            if r1 is None:
                continue
            r2 = merge_sign(r1[1], right)
            if r2 is None:
                continue
            s = sign * r1[0] * r2[0]
            out[r2[1]] = out.get(r2[1], ZERO) + (c if s > 0 else -c)
    return {m: c for m, c in out.items() if c}


def lie_model(model: LieModel, t=0) -> DoubleComplex:
    """The double complex (Λ^{•,•}, ∂, ∂̄) of the model at parameter ``t``."""
    n = model.n
    dgen = model.structure_forms(t)
    dims, d10, d01, monos = {}, {}, {}, {}
    for p in range(n + 1):
        for q in range(n + 1):
            b = basis(n, p, q)
            dims[(p, q)] = len(b)
            monos[(p, q)] = b
    for (p, q), src in monos.items():
        tgt10 = {m: i for i, m in enumerate(basis(n, p + 1, q))}
        tgt01 = {m: i for i, m in enumerate(basis(n, p, q + 1))}
        r10 = [[ZERO] * len(src) for _ in tgt10]
        r01 = [[ZERO] * len(src) for _ in tgt01]
        for j, m in enumerate(src):
            for mm, c in exterior_derivative(m, dgen).items():
                if mm in tgt10:
                    r10[tgt10[mm]][j] = c
                elif mm in tgt01:
                    r01[tgt01[mm]][j] = c
                else:
                    raise LieModelError(
                        f"d maps Λ^{p},{q} into bidegree {bidegree_of(mm, n)}: "
                        f"not integrable at t={t}")
        if tgt10 and src:
            d10[(p, q)] = Matrix(r10, len(tgt10), len(src))
        if tgt01 and src:
            d01[(p, q)] = Matrix(r01, len(tgt01), len(src))
    a = DoubleComplex(n, dims, d10, d01, monomials=monos)
    bad = validate(a)
    if bad:
        raise LieModelError(f"d^2 != 0 at t={t} ({'; '.join(map(str, bad))})")
    return a


def wedge_pairing_matrix(n: int, p: int, q: int) -> Matrix:
    """Top-coefficient pairing Λ^{p,q} x Λ^{n-p,n-q} in the monomial bases."""
    left, right = basis(n, p, q), basis(n, n - p, n - q)
    rows = [[top_coefficient(wedge({a: ONE}, {b: ONE}), n) for b in right] for a in left]
    return Matrix(rows, len(left), len(right))


# ---------------------------------------------------------------------------
# document format


def model_from_document(doc: Mapping) -> LieModel:
    """Parse a Lie-model document (1-based generator indices)."""
    try:
        n = int(doc["n"])
        eqs: dict[str, dict[int, list]] = {"terms20": {}, "terms11": {}, "terms02": {}}
        for eq in doc.get("equations", []):
            i = int(eq["d_omega"]) - 1
            if not 0 <= i < n:
                raise LieModelError(f"d_omega index {i + 1} out of range")
            for key, second in (("terms20", "j"), ("terms11", "jbar"), ("terms02", "jbar")):
                for term in eq.get(key, []):
                    j = int(term["i"]) - 1
                    k = int(term[second]) - 1
                    if not (0 <= j < n and 0 <= k < n):
                        raise LieModelError(f"generator index out of range in {term}")
                    eqs[key].setdefault(i, []).append((j, k, parse_poly(term["coeff"])))
    except LieModelError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise LieModelError(f"malformed Lie-model document: {exc}") from exc
    freeze = lambda d: {i: tuple(v) for i, v in d.items()}  # noqa: E731
    return LieModel(n, freeze(eqs["terms20"]), freeze(eqs["terms11"]),
                    freeze(eqs["terms02"]), name=str(doc.get("name", "")))


def model_to_document(model: LieModel) -> dict:
    equations = []
    for i in range(model.n):
        eq: dict = {"d_omega": i + 1}
        if model.eq20.get(i):
            eq["terms20"] = [{"i": j + 1, "j": k + 1, "coeff": str(c)}
                             for j, k, c in model.eq20[i]]
        if model.eq11.get(i):
            eq["terms11"] = [{"i": j + 1, "jbar": k + 1, "coeff": str(c)}
                             for j, k, c in model.eq11[i]]
        if model.eq02.get(i):
            eq["terms02"] = [{"i": j + 1, "jbar": k + 1, "coeff": str(c)}
                             for j, k, c in model.eq02[i]]
        if len(eq) > 1:
            equations.append(eq)
    doc = {"n": model.n, "equations": equations}
    if model.name:
        doc["name"] = model.name
    return doc


def load_model(path: str | Path) -> LieModel:
    return model_from_document(json.loads(Path(path).read_text(encoding="utf-8")))


def is_model_document(doc: Mapping) -> bool:
    return "equations" in doc


def model_at(model: LieModel, t) -> LieModel:
    """The constant model obtained by freezing the parameter at ``t``."""
    ev = lambda eq: {i: tuple((j, k, Poly(c(t))) for j, k, c in terms)  # noqa: E731
                     for i, terms in eq.items()}
    return LieModel(model.n, ev(model.eq20), ev(model.eq11), ev(model.eq02), model.name)
