"""Regenerate the reference tables from the case list and diff them against the fixtures.

Cells are integers, rationals ``p/q`` or affine expressions in the family
parameter ``k`` such as ``k+4`` or ``3-k``. Every cell is normalised to an
``Affine`` value before comparison, so ``-k+1`` and ``1-k`` agree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction as Q
from importlib import resources

from .casegen import CaseRecord, ConstraintSet, generate_cases
from .det import det
from .graph import Chain

TABLES = {"1": "table1.tsv", "1bis": "table1bis.tsv", "2": "table2.tsv"}
SLICES = {"1": Chain([-3]), "1bis": Chain([-3]), "2": Chain([-4])}


@dataclass(frozen=True)
class Affine:
    slope: Q
    intercept: Q

    def at(self, k: int) -> Q:
        return self.slope * k + self.intercept

    def __str__(self) -> str:
        s, c = self.slope, self.intercept
        if s == 0:
            return str(c)
        head = {1: "k", -1: "-k"}.get(s, f"{s}*k")
        if c == 0:
            return head
        return f"{head}+{c}" if c > 0 else f"{head}{c}"


_TERM = re.compile(r"([+-]?)(\d+(?:/\d+)?)?(\*?k)?")


def parse_cell(text: str) -> Affine:
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty cell")
    slope, intercept = Q(0), Q(0)
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot read cell {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        num = Q(m.group(2)) if m.group(2) else None
        if m.group(3):
            slope += sign * (num if num is not None else 1)
        elif num is not None:
            intercept += sign * num
        else:
            raise ValueError(f"cannot read cell {text!r}")
        pos = m.end()
    return Affine(slope, intercept)


def weights_label(chain: Chain) -> str:
    """``[-3, -3, -2, -2]`` becomes ``(3^2,2^2)``."""
    parts = []
    for w in chain.weights:
        if parts and parts[-1][0] == -w:
            parts[-1][1] += 1
        else:
            parts.append([-w, 1])
    return "(" + ",".join(str(a) if n == 1 else f"{a}^{n}" for a, n in parts) + ")"


def parse_weights_label(label: str) -> Chain:
    out = []
    for part in label.strip("()").split(","):
        a, _, n = part.partition("^")
        out.extend([-int(a)] * (int(n) if n else 1))
    return Chain(out)


@dataclass
class Fixture:
    name: str
    columns: list[str]
    rows: list[list[str]]
    k_range: tuple[int, int]


def load_fixture(which: str) -> Fixture:
    text = resources.files("dualgraph.data").joinpath(TABLES[which]).read_text()
    k_range = (0, 2)
    header = None
    rows = []
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            fields = line[1:].split()
            if fields and fields[0] == "k_range":
                k_range = (int(fields[1]), int(fields[2]))
            continue
        cells = line.split("\t")
        if header is None:
            header = cells
        else:
            rows.append(cells)
    return Fixture(which, header, rows, k_range)


@dataclass(frozen=True)
class Row:
    z3: str
    cells: dict[str, Affine]
    family: bool

    def key(self, columns: list[str]) -> tuple[str, str]:
        # the #E column separates several forks over the same boundary
        return (self.z3, str(self.cells["n_E"]) if "n_E" in columns else "")


def _values(case: CaseRecord) -> dict[str, Q]:
    n = case.numerology
    return {"d3": Q(0), "minus_dD": Q(-det(case.D)), "n_E": Q(n.n_E), "b2": Q(n.b2),
            "KE": Q(n.KE), "KDE2": Q(n.KDE2), "P2": n.P2, "bkD2": n.bkD2, "bkE2": n.bkE2}


def computed_rows(which: str, constraints: ConstraintSet | None = None) -> list[Row]:
    """Rows for the slice with twigs ``[-2]`` and ``SLICES[which]`` on a (-1)-center."""
    report = generate_cases(constraints)
    second = SLICES[which]
    groups: dict[tuple, list[CaseRecord]] = {}
    for case in report.cases:
        if case.D.b != 1:
            continue
        twigs = list(case.D.twigs)
        if Chain([-2]) not in twigs:
            continue
        twigs.remove(Chain([-2]))
        if second not in twigs:
            continue
        twigs.remove(second)
        (z3,) = twigs
        fam = case.E.family_base
        key = (z3.weights, fam.weights if fam is not None else None,
               None if fam is not None else (case.E.h, tuple(t.weights for t in case.E.fork.twigs)))
        groups.setdefault(key, []).append(case)
    rows = []
    for (z3w, base, _), cases in groups.items():
        z3 = Chain(z3w)
        if base is None:
            vals = _values(cases[0])
            cells = {k: Affine(Q(0), v) for k, v in vals.items()}
        else:
            by_k = {c.family_param: _values(c) for c in cases}
            k0 = min(by_k)
            cells = {}
            for col in by_k[k0]:
                slope = by_k[k0 + 1][col] - by_k[k0][col]
                cells[col] = Affine(slope, by_k[k0][col] - slope * k0)
                for k, v in by_k.items():
                    if cells[col].at(k) != v[col]:
                        raise AssertionError(f"column {col} is not affine in k")
        cells["d3"] = Affine(Q(0), Q(det(z3)))
        rows.append(Row(weights_label(z3), cells, base is not None))
    return rows


@dataclass(frozen=True)
class CellDiff:
    row: str
    column: str
    expected: str
    computed: str


@dataclass
class TableCheck:
    which: str
    rows_expected: int
    rows_computed: int
    diffs: list[CellDiff]
    missing: list[str]
    extra: list[str]

    @property
    def ok(self) -> bool:
        return not (self.diffs or self.missing or self.extra)


def reproduce_table(which: str, constraints: ConstraintSet | None = None) -> list[list[str]]:
    """Computed table as text cells, in fixture row order followed by any unlisted rows."""
    fx = load_fixture(which)
    rows = {r.key(fx.columns): r for r in computed_rows(which, constraints)}
    out = [fx.columns]
    used = set()
    for cells in fx.rows:
        key = _fixture_key(fx, cells)
        row = rows.get(key)
        if row is not None:
            used.add(key)
            out.append([cells[0]] + [str(row.cells[c]) for c in fx.columns[1:]])
    if which != "1bis":
        for key, row in rows.items():
            if key not in used:
                out.append([row.z3] + [str(row.cells[c]) for c in fx.columns[1:]])
    return out


def _fixture_key(fx: Fixture, cells: list[str]) -> tuple[str, str]:
    z3 = weights_label(parse_weights_label(cells[0]))
    if "n_E" in fx.columns:
        return (z3, str(parse_cell(cells[fx.columns.index("n_E")])))
    return (z3, "")


def check_table(which: str, constraints: ConstraintSet | None = None) -> TableCheck:
    """Compare every fixture cell with the computed value at each k in the fixture's k-range."""
    fx = load_fixture(which)
    rows = {r.key(fx.columns): r for r in computed_rows(which, constraints)}
    diffs, missing = [], []
    seen = set()
    lo, hi = fx.k_range
    for cells in fx.rows:
        key = _fixture_key(fx, cells)
        label = f"{key[0]} {key[1]}".strip()
        row = rows.get(key)
        if row is None:
            missing.append(label)
            continue
        seen.add(key)
        for col, text in zip(fx.columns[1:], cells[1:]):
            want = parse_cell(text)
            got = row.cells[col]
            if any(want.at(k) != got.at(k) for k in range(lo, hi + 1)):
                diffs.append(CellDiff(label, col, text, str(got)))
    extra = []
    if which != "1bis":
        extra = [f"{k[0]} {k[1]}".strip() for k in rows if k not in seen]
    return TableCheck(which, len(fx.rows), len(seen) + len(extra), diffs, missing, extra)


def window_rows(constraints: ConstraintSet | None = None) -> list[str]:
    """Table-one rows whose (K+D+E)^2 reaches -2 or -3 for some admissible k."""
    out = []
    for row in computed_rows("1", constraints):
        f = row.cells["KDE2"]
        hits = [v for v in (-2, -3)
                if (f.slope == 0 and f.intercept == v)
                or (f.slope != 0 and (v - f.intercept) / f.slope >= 0
                    and ((v - f.intercept) / f.slope).denominator == 1)]
        if hits:
            out.append(f"{row.z3} {row.cells['n_E']}")
    return out
