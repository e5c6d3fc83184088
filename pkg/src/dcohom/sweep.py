"""Semicontinuity along a one-parameter family of Lie-algebra models.

Cohomology dimensions of the fibre at t are compared with the fibre at 0:
Schweitzer and Bott-Chern numbers may only drop, Betti numbers must stay
put, and so must not increase the Frölicher defects FD^{0,1}, FD^{0,n-1}.
"""

from __future__ import annotations

from .generators.lie import LieModel, LieModelError, lie_model
from .invariants import aeppli_direct, bott_chern_direct, de_rham, fd_defect, frolicher
from .linalg import format_scalar
from .schweitzer import s_dims


class FamilyError(ValueError):
    """The family fails to define a complex structure at some parameter."""


def sweep_family(model: LieModel, ts) -> dict:
    """Evaluate the family at each t and compare against t = 0."""
    n = model.n
    rows = {}
    for t in ts:
        try:
            a = lie_model(model, t)
        except LieModelError as exc:
            raise FamilyError(f"family is not integrable at t={format_scalar(t)}: {exc}") from None
        pages = frolicher(a)
        rows[t] = {
            "s": {(p, q): s_dims(a, p, q) for p in range(n + 2) for q in range(n + 2)},
            "h_bc": bott_chern_direct(a),
            "h_a": aeppli_direct(a),
            "b": de_rham(a),
            "fd01": fd_defect(a, 0, 1, pages),
            "fd0n": fd_defect(a, 0, n - 1, pages),
        }
    base = rows[next(t for t in ts if t == 0)]
    violations, drops = [], []
    for t, row in rows.items():
        if t == 0:
            continue
        ts_ = format_scalar(t)
        for pq, table in row["s"].items():
            for k, v in table.items():
                v0 = base["s"][pq].get(k, 0)
                if v > v0:
                    violations.append(f"t={ts_}: s^{k}_{pq} = {v} > {v0}")
                elif v < v0:
                    drops.append(f"t={ts_}: s^{k}_{{{pq[0]},{pq[1]}}} {v0} -> {v}")
        for b, v in row["h_bc"].items():
            if v > base["h_bc"][b]:
                violations.append(f"t={ts_}: h_BC^{b} = {v} > {base['h_bc'][b]}")
        for k, v in row["b"].items():
            if v != base["b"][k]:
                violations.append(f"t={ts_}: b_{k} = {v} != {base['b'][k]}")
        for key, name in (("fd01", "FD^{0,1}"), ("fd0n", f"FD^{{0,{n - 1}}}")):
            if row[key] > base[key]:
                violations.append(f"t={ts_}: {name} = {row[key]} > {base[key]}")
    return {"rows": rows, "violations": violations, "drops": drops}
