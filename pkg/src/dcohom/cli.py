"""Command-line interface.

Exit status: 0 when every check passes, 1 when a mathematical check fails,
2 for unreadable input or bad usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bicomplex import DoubleComplex, DoubleComplexError, dual, from_document, validate
from .generators.builtin import BUILTIN_NAMES, builtin
from .generators.lie import LieModel, LieModelError, is_model_document, lie_model, model_from_document
from .generators.shapes import table_from_mapping
from .invariants import (
    bott_chern_direct,
    aeppli_direct,
    chi_p,
    corollary_identities_n3,
    de_rham,
    euler_identity_check,
    fd_defect,
    frolicher,
    is_dual_symmetric,
    ktheory_dims_identity,
    report,
    serre_chi_check,
)
from .linalg import format_scalar, parse_scalar
from .report import Verdict, VerdictList, grid_to_json, render_grid
from .schweitzer import degree_range, duality_checks, euler_chi_pq, pairing_matrix, s_dims
from .sweep import FamilyError, sweep_family
from .symbol import ellipticity_sweep

OK, FAILED, USAGE = 0, 1, 2
MAX_ZIGZAG_N = 3


class InputError(Exception):
    """Bad input file or flags; reported with exit status 2."""


# ---------------------------------------------------------------------------
# input handling


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def load_source(args) -> DoubleComplex | LieModel:
    """The object named by --input / --model / --builtin."""
    try:
        if getattr(args, "builtin", None):
            return builtin(args.builtin)
        path = getattr(args, "input", None) or getattr(args, "model", None)
        if not path:
            raise InputError("one of --input, --model or --builtin is required")
        doc = _read_json(path)
        if not isinstance(doc, dict):
            raise InputError(f"{path}: expected a JSON object")
        if is_model_document(doc):
            return model_from_document(doc)
        if getattr(args, "model", None):
            raise InputError(f"{path} is not a Lie-model document")
        return from_document(doc)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    except (DoubleComplexError, LieModelError) as exc:
        raise InputError(str(exc)) from None


def _parameter(args):
    t = getattr(args, "t", None)
    if t is None:
        return 0
    try:
        return parse_scalar(t)
    except ValueError as exc:
        raise InputError(f"bad --t value {t!r}: {exc}") from None


def load_complex(args, check: bool = True) -> DoubleComplex:
    src = load_source(args)
    if isinstance(src, LieModel):
        try:
            src = lie_model(src, _parameter(args))
        except LieModelError as exc:
            raise InputError(str(exc)) from None
    if check:
        bad = validate(src)
        if bad:
            raise InputError("input is not a double complex: " + "; ".join(map(str, bad)))
    return src


def emit(args, payload, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args) -> int:
    src = load_source(args)
    if isinstance(src, LieModel):
        try:
            a = lie_model(src, _parameter(args))
        except LieModelError as exc:
            emit(args, {"valid": False, "violations": [str(exc)]}, f"invalid: {exc}")
            return FAILED
    else:
        a = src
    bad = validate(a)
    payload = {"valid": not bad, "n": a.n,
               "violations": [{"identity": v.identity, "bidegree": list(v.bidegree)} for v in bad]}
    lines = [f"n={a.n}  total dimension {a.total_dim}"]
    lines += [f"violation: {v}" for v in bad]
    lines.append("valid" if not bad else f"invalid ({len(bad)} violations)")
    emit(args, payload, "\n".join(lines))
    return OK if not bad else FAILED


def _pages_text(name: str, pages, n: int) -> list[str]:
    out = [f"-- Frölicher spectral sequence ({name}), degenerates at E_{pages.degeneration_page()}"]
    for r in range(1, len(pages.dims)):
        if r > 1 and pages.dims[r] == pages.dims[r - 1] and not any(pages.ranks[r].values()):
            continue
        out.append(render_grid(pages.dims[r], n, f"e_{r}"))
        if any(pages.ranks[r].values()):
            out.append(render_grid(pages.ranks[r], n, f"rank d_{r}"))
    out.append(render_grid(pages.e_inf, n, "e_inf"))
    return out


def cmd_invariants(args) -> int:
    a = load_complex(args)
    rep = report(a)
    n = a.n
    lines = [f"n = {n}",
             render_grid(rep.dims, n, "dimensions"),
             render_grid(rep.h_dolbeault, n, "Dolbeault h^{p,q}"),
             render_grid(rep.h_bc, n, "Bott-Chern h_BC^{p,q}"),
             render_grid(rep.h_a, n, "Aeppli h_A^{p,q}"),
             "Betti: " + " ".join(f"b_{k}={v}" for k, v in sorted(rep.betti.items())),
             "chi_p: " + " ".join(f"chi_{p}={v}" for p, v in sorted(rep.chi_p.items()))]
    lines += _pages_text("column", rep.fss_col, n)
    lines += _pages_text("row", rep.fss_row, n)
    lines.append("-- gr_F gr_Fbar H^k (nonzero entries)")
    lines += [f"  (p,q)=({p},{q}) k={k}: {v}" for (p, q, k), v in sorted(rep.grgr.items())]
    lines.append("-- Schweitzer s^k_{p,q}")
    for key, table in rep.schweitzer.items():
        vals = " ".join(f"{table.get(k, 0)}" for k in degree_range(n))
        lines.append(f"  (p,q)=({key}): k={min(degree_range(n))}..{max(degree_range(n))}: {vals}")
    emit(args, rep.to_json(), "\n".join(lines))
    return OK


def cmd_schweitzer(args) -> int:
    a = load_complex(args)
    p, q = args.p, args.q
    s = s_dims(a, p, q)
    chi = euler_chi_pq(a, p, q)
    bc_k, ae_k = p + q - 1, p + q - 2
    lines = [f"s^k_{{{p},{q}}}", " k  dim"]
    for k in sorted(s):
        note = ""
        if k == bc_k and 0 <= p <= a.n and 0 <= q <= a.n:
            note = f"  Bott-Chern H_BC^{{{p},{q}}}"
        elif k == ae_k and 1 <= p <= a.n + 1 and 1 <= q <= a.n + 1:
            note = f"  Aeppli H_A^{{{p - 1},{q - 1}}}"
        lines.append(f"{k:>2}  {s[k]}{note}")
    lines.append(f"chi_{{{p},{q}}} = {chi}")
    payload = {"p": p, "q": q, "s": {str(k): v for k, v in sorted(s.items())},
               "bott_chern": {"k": bc_k, "bidegree": [p, q], "dim": s.get(bc_k, 0)},
               "aeppli": {"k": ae_k, "bidegree": [p - 1, q - 1], "dim": s.get(ae_k, 0)},
               "chi": chi}
    emit(args, payload, "\n".join(lines))
    return OK


def cmd_dual_check(args) -> int:
    src = load_source(args)
    a = load_complex(args)
    n = a.n
    checks = VerdictList("duality s^k_{p,q}(A) = s^{2n-1-k}_{n-p+1,n-q+1}(DA)")
    da = dual(a)
    for p in range(n + 2):
        for q in range(n + 2):
            for v in duality_checks(a, p, q, da).values():
                checks.add(v)
    pairing = VerdictList("wedge pairing H^k(L_{p,q}) x H^{2n-1-k}(L_{n-p+1,n-q+1})")
    if isinstance(src, LieModel):
        for p in range(n + 2):
            for q in range(n + 2):
                for k in degree_range(n):
                    res = pairing_matrix(a, p, q, k)
                    if res.matrix.nrows or res.matrix.ncols:
                        pairing.add(Verdict(f"pairing p={p} q={q} k={k}", res.perfect,
                                            res.matrix.shape, "perfect" if res.perfect else "degenerate"))
    ok = checks.ok and pairing.ok
    lines = [f"{checks.title}: {len(checks.items) - len(checks.failures())}/{len(checks.items)} pass"]
    lines += [v.line() for v in checks.failures()]
    if isinstance(src, LieModel):
        lines.append(f"{pairing.title}: {len(pairing.items) - len(pairing.failures())}"
                     f"/{len(pairing.items)} perfect")
        lines += [v.line() for v in pairing.items]
    lines.append("all checks pass" if ok else "FAILED")
    payload = {"ok": ok, "duality": checks.to_json(), "pairing": pairing.to_json()}
    emit(args, payload, "\n".join(lines))
    return OK if ok else FAILED


def cmd_index_check(args) -> int:
    a = load_complex(args)
    n = a.n
    chi = chi_p(a)
    ident = VerdictList("chi_{p,q} = sum_{k=p}^{n-q} (-1)^{k+1} chi_k")
    failing = []
    for p in range(n + 2):
        for q in range(n + 2):
            if not ident.add(euler_identity_check(a, p, q, chi)):
                failing.append(f"({p},{q})")
    serre = serre_chi_check(a, chi)
    grid = a.grid()
    symmetric = is_dual_symmetric(grid, n)
    kth = VerdictList("K-class dimension identity")
    if symmetric:
        for p in range(n + 2):
            for q in range(n + 2):
                kth.add(ktheory_dims_identity(grid, n, p, q))
    self_dual = serre.ok and symmetric
    all_ok = ident.ok and serre.ok and kth.ok
    lines = ["chi_p: " + " ".join(f"chi_{p}={v}" for p, v in sorted(chi.items())),
             ident.render(), serre.line()]
    lines.append(kth.render() if symmetric else
                 "K-class dimension identity: skipped (dimension grid not dual-symmetric)")
    if all_ok:
        status, verdict = OK, "all identities hold"
    elif not self_dual:
        status = OK
        verdict = ("flagged: input is not self-dual, so these identities are not expected; "
                   f"failing (p,q): {', '.join(failing) or 'none'}")
    else:
        status, verdict = FAILED, "FAILED"
    lines.append(verdict)
    payload = {"ok": all_ok, "self_dual": self_dual, "failing": failing, "chi_p": {str(k): v for k, v in chi.items()},
               "identity": ident.to_json(), "serre": serre.to_json(),
               "ktheory": kth.to_json() if symmetric else None, "verdict": verdict}
    emit(args, payload, "\n".join(lines))
    return status


def cmd_zigzag(args) -> int:
    from .zigzag import DecompositionError, multiplicities
    a = load_complex(args)
    if a.n > MAX_ZIGZAG_N:
        raise InputError(f"zigzag tables are only supported for n <= {MAX_ZIGZAG_N}")
    try:
        table = multiplicities(a)
    except DecompositionError as exc:
        emit(args, {"ok": False, "error": str(exc)}, f"decomposition failed: {exc}")
        return FAILED
    implied = table.dims(a.n)
    accounting = {f"{p},{q}": [implied[(p, q)], a.dim(p, q)] for p, q in a.bidegrees()}
    ok = not table.accounting_errors(a)
    doc = table.to_json()
    lines = ["zigzags:"]
    lines += [f"  {m} x {shape}" for shape, m in doc["zigzags"].items()]
    lines.append("squares (lower-left corner):")
    lines += [f"  {m} x square at ({c})" for c, m in doc["squares"].items()]
    lines.append("dimension accounting (table vs complex):")
    lines += [f"  ({b}): {x} vs {y}" for b, (x, y) in accounting.items()]
    expect = None
    if args.expect:
        ref = _read_json(args.expect)
        try:
            expect = table_from_mapping(ref.get("zigzags", {}), ref.get("squares", {}))
        except (ValueError, KeyError) as exc:
            raise InputError(f"bad ground-truth document: {exc}") from None
        match = expect == table
        ok = ok and match
        lines.append("ground truth: " + ("match" if match else "MISMATCH"))
    lines.append("ok" if ok else "FAILED")
    payload = dict(doc, accounting=accounting, ok=ok)
    if expect is not None:
        payload["matches_expected"] = expect == table
    emit(args, payload, "\n".join(lines))
    return OK if ok else FAILED


def _t_values(text: str) -> list:
    try:
        values = [parse_scalar(x.strip()) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"bad --t-values: {exc}") from None
    if not any(v == 0 for v in values):
        raise InputError("--t-values must include 0 (the central fibre)")
    return values


def cmd_sweep(args) -> int:
    ts = _t_values(args.t_values)
    model = load_source(args)
    if not isinstance(model, LieModel):
        raise InputError("sweep needs a Lie-model family (--model or a model --builtin)")
    try:
        res = sweep_family(model, ts)
    except FamilyError as exc:
        raise InputError(str(exc)) from None
    n = model.n
    lines = [f"family {model.name or '(unnamed)'}  n={n}",
             "     t  " + " ".join(f"b_{k}" for k in range(2 * n + 1)) + "  FD01  FD0(n-1)"]
    for t, row in res["rows"].items():
        lines.append(f"{format_scalar(t):>6}  " + " ".join(f"{row['b'][k]:>3}" for k in range(2 * n + 1))
                     + f"  {row['fd01']:>4}  {row['fd0n']:>8}")
    for t, row in res["rows"].items():
        lines.append(render_grid(row["h_bc"], n, f"h_BC at t={format_scalar(t)}"))
    lines.append(f"strict drops ({len(res['drops'])}):")
    lines += ["  " + d for d in res["drops"]]
    lines.append(f"violations ({len(res['violations'])}):")
    lines += ["  " + v for v in res["violations"]]
    payload = {
        "family": model.name, "n": n, "t_values": [format_scalar(t) for t in ts],
        "rows": {format_scalar(t): {
            "betti": {str(k): v for k, v in row["b"].items()},
            "h_bc": grid_to_json(row["h_bc"]), "h_a": grid_to_json(row["h_a"]),
            "fd01": row["fd01"], "fd0n_minus_1": row["fd0n"],
            "s": {f"{p},{q}": {str(k): v for k, v in sorted(tab.items())}
                  for (p, q), tab in row["s"].items()}}
            for t, row in res["rows"].items()},
        "drops": res["drops"], "violations": res["violations"],
    }
    emit(args, payload, "\n".join(lines))
    return OK if not res["violations"] else FAILED


def cmd_symbol_check(args) -> int:
    if (args.p is None) != (args.q is None):
        raise InputError("--p and --q must be given together")
    pairs = None if args.p is None else [(args.p, args.q)]
    cert = ellipticity_sweep(args.n, args.trials, args.seed, pairs=pairs)
    print(cert.render(args.format))
    return OK if cert.ok else FAILED


def cmd_identities(args) -> int:
    a = load_complex(args)
    if a.n != 3:
        raise InputError("the Frölicher-defect identities are checked for n = 3 only")
    res = corollary_identities_n3(a)
    emit(args, res.to_json(), res.render())
    return OK if res.ok else FAILED


# ---------------------------------------------------------------------------


def _add_source(p: argparse.ArgumentParser, model_flag: bool = True) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--input", metavar="PATH", help="double-complex or Lie-model JSON document")
    if model_flag:
        g.add_argument("--model", metavar="PATH", help="Lie-model JSON document")
    g.add_argument("--builtin", metavar="NAME", help="one of: " + ", ".join(BUILTIN_NAMES))
    p.add_argument("--t", metavar="T", help="parameter value for Lie-model families (default 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dcohom", description="Exact cohomology of bounded double complexes.")
    parser.add_argument("--format", choices=("table", "json"), default="table")
    parser.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, source=True):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--format", choices=("table", "json"), default=argparse.SUPPRESS)
        p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
        if source:
            _add_source(p)
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check the double-complex axioms")
    add("invariants", cmd_invariants, "full invariant report")
    p = add("schweitzer", cmd_schweitzer, "s^k_{p,q} for one (p,q)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    add("dual-check", cmd_dual_check, "duality of Schweitzer cohomology")
    add("index-check", cmd_index_check, "Euler-characteristic identities")
    p = add("zigzag", cmd_zigzag, "zigzag and square multiplicities")
    p.add_argument("--expect", metavar="PATH", help="ground-truth multiplicity table to compare")
    add("identities", cmd_identities, "the two n=3 Frölicher-defect identities")
    p = add("sweep", cmd_sweep, "semicontinuity along a Lie-model family")
    p.add_argument("--t-values", default="0,1/10,-1/10,1/100,-1/100,1/7",
                   help="comma-separated rationals, must include 0")
    p = add("symbol-check", cmd_symbol_check, "exactness of the symbol complex", source=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--trials", type=int, default=5)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "symbol-check" and (args.n < 1 or args.trials < 1):
        parser.error("symbol-check needs --n >= 1 and --trials >= 1")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
