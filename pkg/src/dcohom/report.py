"""Verdicts and plain-text rendering shared by the checks and the CLI."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Verdict:
    """Outcome of one identity check, keeping both sides for the report."""

    name: str
    ok: bool
    lhs: object = None
    rhs: object = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def line(self) -> str:
        mark = "PASS" if self.ok else "FAIL"
        text = f"{mark}  {self.name}: {_show(self.lhs)} vs {_show(self.rhs)}"
        return f"{text}  ({self.detail})" if self.detail else text

    def to_json(self) -> dict:
        out = {"name": self.name, "ok": self.ok, "lhs": _jsonable(self.lhs),
               "rhs": _jsonable(self.rhs)}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class VerdictList:
    title: str
    items: list[Verdict] = field(default_factory=list)

    def add(self, v: Verdict) -> Verdict:
        self.items.append(v)
        return v

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.items)

    def failures(self) -> list[Verdict]:
        return [v for v in self.items if not v.ok]

    def render(self) -> str:
        lines = [f"== {self.title} =="] + [v.line() for v in self.items]
        nfail = len(self.failures())
        lines.append(f"summary: {len(self.items) - nfail}/{len(self.items)} passed")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"title": self.title, "ok": self.ok,
                "checks": [v.to_json() for v in self.items]}


def _show(x) -> str:
    if isinstance(x, tuple):
        return "(" + ", ".join(map(str, x)) + ")"
    return str(x)


def _jsonable(x):
    if isinstance(x, (tuple, list)):
        return [_jsonable(y) for y in x]
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return str(x)


def render_grid(grid: Mapping[tuple[int, int], int], n: int, title: str = "",
                lo: int = 0, hi: int | None = None) -> str:
    """Draw a (p,q) table with q increasing upward and p to the right."""
    hi = n if hi is None else hi
    cells = {k: str(v) for k, v in grid.items()}
    width = max([len(c) for c in cells.values()] + [2])
    lines = [title] if title else []
    for q in range(hi, lo - 1, -1):
        row = " ".join(cells.get((p, q), "0").rjust(width) for p in range(lo, hi + 1))
        lines.append(f"q={q:<2}| {row}")
    lines.append("    +" + "-" * ((width + 1) * (hi - lo + 1) + 1))
    lines.append("      " + " ".join(f"{p:>{width}}" for p in range(lo, hi + 1)) + "  = p")
    return "\n".join(lines)


def grid_key(pq: tuple[int, int]) -> str:
    return f"{pq[0]},{pq[1]}"


def grid_to_json(grid: Mapping[tuple[int, int], int]) -> dict[str, int]:
    return {grid_key(k): int(v) for k, v in sorted(grid.items())}
