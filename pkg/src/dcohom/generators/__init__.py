"""Input constructors: elementary shapes, scrambled sums and Lie-algebra models."""

from .builtin import (
    BUILTIN_NAMES,
    builtin,
    iwasawa,
    iwasawa_family,
    kodaira_thurston,
    p1_synthetic,
    torus,
)
from .lie import (
    LieModel,
    LieModelError,
    basis,
    lie_model,
    load_model,
    model_from_document,
    model_to_document,
    top_coefficient,
    wedge,
)
from .poly import Poly, parse_poly
from .shapes import (
    MultiplicityTable,
    ZigzagShape,
    enumerate_shapes,
    make_dot,
    make_square,
    make_zigzag,
    parse_shape,
    random_complex,
    scrambled_sum,
)

__all__ = [
    "BUILTIN_NAMES", "LieModel", "LieModelError", "MultiplicityTable", "Poly",
    "ZigzagShape", "basis", "builtin", "enumerate_shapes", "iwasawa", "iwasawa_family",
    "kodaira_thurston", "lie_model", "load_model", "make_dot", "make_square",
    "make_zigzag", "model_from_document", "model_to_document", "p1_synthetic",
    "parse_poly", "parse_shape", "random_complex", "scrambled_sum", "top_coefficient",
    "torus", "wedge",
]
