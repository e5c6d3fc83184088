"""The principal symbol of L_{p,q} at a real covector, and its exactness.

At a point the symbol complex is L_{p,q} of the constant double complex
Λ^{•,•}(C^n) with ∂ replaced by ξ^{1,0}∧ and ∂̄ by ξ^{0,1}∧.  A real covector
is stored through its (1,0)-part λ; the (0,1)-part is the conjugate of λ.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .bicomplex import DoubleComplex, GradedComplex
from .generators.lie import basis, left_multiplication, one_form
from .invariants import region_euler
from .linalg import ZERO, conj, format_scalar, scalar
from .schweitzer import build_L


@dataclass(frozen=True)
class Covector:
    lam: tuple

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(scalar(x) for x in self.lam))

    @property
    def n(self) -> int:
        return len(self.lam)

    def is_zero(self) -> bool:
        return not any(self.lam)

    def part10(self) -> dict:
        return one_form(self.lam, [ZERO] * self.n)

    def part01(self) -> dict:
        return one_form([ZERO] * self.n, [conj(x) for x in self.lam])

    def conjugate(self) -> Covector:
        return Covector(tuple(conj(x) for x in self.lam))

    def scaled(self, c) -> Covector:
        c = scalar(c)
        return Covector(tuple(c * x for x in self.lam))

    def __str__(self):
        return "(" + ", ".join(format_scalar(x) for x in self.lam) + ")"


def standard_covector(n: int) -> Covector:
    """dz_1 + dz̄_1."""
    return Covector((1,) + (0,) * (n - 1))


def zero_covector(n: int) -> Covector:
    return Covector((0,) * n)


def random_covector(n: int, rng: random.Random, height: int = 3) -> Covector:
    """A nonzero covector with small Gaussian-rational entries."""
    while True:
        lam = []
        for _ in range(n):
            re = Fraction(rng.randint(-height, height), rng.randint(1, height))
            im = Fraction(rng.randint(-height, height), rng.randint(1, height))
            lam.append(scalar(re, im))
        xi = Covector(tuple(lam))
        if not xi.is_zero():
            return xi


def pointwise_complex(xi: Covector) -> DoubleComplex:
    """Λ^{•,•}(C^n) with ∂ = ξ^{1,0}∧ and ∂̄ = ξ^{0,1}∧."""
    n = xi.n
    a10, a01 = xi.part10(), xi.part01()
    dims, d10, d01 = {}, {}, {}
    for r in range(n + 1):
        for s in range(n + 1):
            dims[(r, s)] = len(basis(n, r, s))
            if r < n:
                d10[(r, s)] = left_multiplication(a10, n, (r, s), (r + 1, s))
            if s < n:
                d01[(r, s)] = left_multiplication(a01, n, (r, s), (r, s + 1))
    return DoubleComplex(n, dims, d10, d01)


def euler_precheck(n: int, p: int, q: int) -> None:
    """The symbol complex can only be exact if its Euler characteristic,
    a pure function of the dimensions, is zero."""
    if n < 1:
        return
    dims = {(r, s): len(basis(n, r, s)) for r in range(n + 1) for s in range(n + 1)}
    chi = region_euler(dims, p, q)
    if chi:
        raise RuntimeError(f"symbol complex n={n} p={p} q={q} has Euler characteristic {chi}")


def symbol_complex(n: int, p: int, q: int, xi: Covector) -> GradedComplex:
    if xi.n != n:
        raise ValueError(f"covector has {xi.n} entries, expected {n}")
    euler_precheck(n, p, q)
    return build_L(pointwise_complex(xi), p, q)


@dataclass(frozen=True)
class SymbolVerdict:
    n: int
    p: int
    q: int
    lam: str
    exact: bool
    failing_degree: int | None = None
    failing_dim: int = 0
    total_dim: int = 0
    control: bool = False

    def to_json(self) -> dict:
        return {"n": self.n, "p": self.p, "q": self.q, "lambda": self.lam,
                "control": self.control, "exact": self.exact,
                "failing_degree": self.failing_degree, "failing_dim": self.failing_dim,
                "total_dim": self.total_dim}


def exactness_check(n: int, p: int, q: int, xi: Covector) -> SymbolVerdict:
    g = symbol_complex(n, p, q, xi)
    h = g.cohomology_dims()
    total = sum(g.dim(k) for k in g.degrees())
    for k in sorted(h):
        if h[k]:
            return SymbolVerdict(n, p, q, str(xi), False, k, h[k], total, xi.is_zero())
    return SymbolVerdict(n, p, q, str(xi), True, None, 0, total, xi.is_zero())


@dataclass
class Certificate:
    n: int
    trials: int
    seed: int
    cases: list[SymbolVerdict] = field(default_factory=list)

    def failures(self) -> list[SymbolVerdict]:
        """Nonzero covectors that are not exact, and zero controls on a
        nonzero complex that are exact."""
        bad = []
        for c in self.cases:
            if c.control:
                if c.total_dim and c.exact:
                    bad.append(c)
            elif not c.exact:
                bad.append(c)
        return bad

    @property
    def ok(self) -> bool:
        return not self.failures()

    def to_json(self) -> dict:
        return {"n": self.n, "trials": self.trials, "seed": self.seed, "ok": self.ok,
                "cases": [c.to_json() for c in self.cases]}

    def render(self, fmt: str = "table") -> str:
        if fmt == "json":
            return json.dumps(self.to_json(), indent=2, ensure_ascii=False)
        lines = [f"symbol complex certificate  n={self.n} trials={self.trials} seed={self.seed}",
                 f"{'p':>2} {'q':>2}  {'kind':<8} {'verdict':<10} lambda"]
        for c in self.cases:
            kind = "control" if c.control else "covector"
            if c.exact:
                verdict = "exact"
            else:
                verdict = f"H^{c.failing_degree}={c.failing_dim}"
            lines.append(f"{c.p:>2} {c.q:>2}  {kind:<8} {verdict:<10} {c.lam}")
        nbad = len(self.failures())
        lines.append(f"summary: {len(self.cases)} cases, {nbad} unexpected")
        return "\n".join(lines)


def ellipticity_sweep(n: int, trials: int, seed: int, include_standard: bool = True,
                      pairs=None) -> Certificate:
    """Every (p,q) in [0,n+1]^2 (or only ``pairs``) against ``trials`` random
    real covectors, optionally dz_1 + dz̄_1, and the zero covector as a
    negative control."""
    if n < 1 or trials < 1:
        raise ValueError("need n >= 1 and trials >= 1")
    rng = random.Random(seed)
    cert = Certificate(n, trials, seed)
    if pairs is None:
        pairs = [(p, q) for p in range(n + 2) for q in range(n + 2)]
    for p, q in pairs:
        covs = [standard_covector(n)] if include_standard else []
        covs += [random_covector(n, rng) for _ in range(trials)]
        for xi in covs:
            cert.cases.append(exactness_check(n, p, q, xi))
        cert.cases.append(exactness_check(n, p, q, zero_covector(n)))
    return cert
