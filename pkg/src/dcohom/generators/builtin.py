"""Named models.

``iwasawa_family`` is the deformation of the Iwasawa manifold in the
direction t11 of Nakamura's Kuranishi family: the (1,0)-coframe is
ψ^1 = φ^1 + t φ̄^1, ψ^2 = φ^2, ψ^3 = (1 - |t|^2) φ^3, which gives

    dψ^1 = dψ^2 = 0,    dψ^3 = -ψ^1 ∧ ψ^2 - t ψ^2 ∧ ψ̄^1.

To first order these are the structure equations tabulated for the
Kuranishi family (σ_{12} = -1, σ_{2\\bar1} = -t11; D. Angella, Cohomological
Aspects in Complex Non-Kähler Geometry, LNM 2095, Sect. 3.2); the rescaling
of ψ^3 makes them exact and polynomial in t for |t| < 1.  The underlying
real Lie algebra is the same for every t, so Betti numbers are constant.
"""

from __future__ import annotations

import re

from ..bicomplex import DoubleComplex, direct_sum
from .lie import LieModel
from .poly import Poly
from .shapes import make_dot

BUILTIN_NAMES = ("torus(n)", "iwasawa", "kodaira_thurston", "p1_synthetic", "iwasawa_family")


def torus(n: int) -> LieModel:
    return LieModel(n, name=f"torus({n})")


def iwasawa() -> LieModel:
    return LieModel(3, eq20={2: ((0, 1, Poly(-1)),)}, name="iwasawa")


def iwasawa_family() -> LieModel:
    return LieModel(3, eq20={2: ((0, 1, Poly(-1)),)},
                    eq11={2: ((1, 0, -Poly.t()),)}, name="iwasawa_family")


def kodaira_thurston() -> LieModel:
    return LieModel(2, eq11={1: ((0, 0, Poly(1)),)}, name="kodaira_thurston")


def p1_synthetic() -> DoubleComplex:
    """dot(0,0) ⊕ dot(1,1) in n = 1: the zigzag model of the projective line."""
    return direct_sum(make_dot(0, 0, 1), make_dot(1, 1, 1))


_TORUS = re.compile(r"^torus[(:]?(\d+)\)?$")


def builtin(name: str) -> LieModel | DoubleComplex:
    key = name.strip().lower().replace("-", "_")
    m = _TORUS.match(key)
    if m:
        return torus(int(m.group(1)))
    table = {
        "iwasawa": iwasawa,
        "iwasawa_family": iwasawa_family,
        "kodaira_thurston": kodaira_thurston,
        "p1_synthetic": p1_synthetic,
    }
    if key not in table:
        raise KeyError(f"unknown builtin {name!r}; known: {', '.join(BUILTIN_NAMES)}")
    return table[key]()
