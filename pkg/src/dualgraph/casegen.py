"""Exhaustive case generation for star-shaped boundaries paired with contractible forks.

A case is a star boundary D (center ``-b``, twigs ``Z_1, ..., Z_r``) together
with a fork E with ``d(E) = -d(D)``. Every case runs through the same
elimination rules in a fixed order; a case that passes all of them is a
SURVIVOR. Constraints are named so they can be disabled one at a time.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field, replace
from fractions import Fraction as Q
from math import gcd, lcm

from .det import det, negated_matrix, solve
from .forks import ForkFamily, ForkRecord, fork_candidates
from .graph import Chain, StarBoundary, WeightedTree, blow_down
from .hj import enumerate_chains
from .numerology import SurfaceNumerology, assemble, in_window, zariski_residual
from .peeling import PeelingProfile, peeling_profile

# rule name -> reason, in the order the rules are applied
RULES: dict[str, str] = {
    "r_equals": "a star boundary with four or more twigs fails the orbifold inequality or is fibred away",
    "d2_min": "d2 = 2 yields a C*-fibration with too few singular fibres",
    "d_bounds": "orbifold inequality on the positive part bounds d1, d2, d3",
    "bmy_bound": "P^2 <= 3/|G| with |G| >= 2a, i.e. Pi beta^2 <= 3/2",
    "beta_sign": "beta >= 0 since P is nef",
    "p2_positive": "P^2 > 0 on a surface of log general type",
    "center_weights": "the center curve has self-intersection -1 or -2",
    "dD_negative": "d(D) < 0 because D + E spans a lattice of signature (1, n)",
    "a_min": "d(E) >= 7 for the remaining fork types",
    "a_excluded": "no fork of determinant 18, 25 or 35 survives the local analysis",
    "minus_two_neighbours": "a (-1)-center with a short twig starting at a (-2)-curve forces the other twigs to start at curves of weight <= -3",
    "minus_two_center": "a (-2)-center needs 1/d1 + 1/d2 + 1/d3 >= 13/14",
    "fiber_sections": "no fibre supported on D may leave two 2-sections or one 4-section behind",
    "no_fork": "no contractible fork has determinant a",
    "window": "Bk(D)^2 in [-2, -3/14] forces (K+D+E)^2 in {-2, -3}",
    "residual": "(K+D+E)^2 = P^2 + Bk(D)^2 + Bk(E)^2",
}


@dataclass(frozen=True)
class ConstraintSet:
    r_equals: int = 3
    center_weights: tuple[int, ...] = (-1, -2)
    d_bounds: tuple[int, int, int] = (3, 5, 19)
    d2_min: int = 3
    a_min: int = 7
    a_excluded: tuple[int, ...] = (18, 25, 35)
    bmy_limit: Q = Q(3, 2)
    center_reciprocal_min: Q = Q(13, 14)
    family_cap_k: int = 10
    fork_size_cap: int = 30
    disabled: frozenset[str] = field(default_factory=frozenset)

    def enabled(self, rule: str) -> bool:
        if rule not in RULES:
            raise KeyError(f"unknown rule {rule!r}")
        return rule not in self.disabled

    def disable(self, *rules: str) -> ConstraintSet:
        for r in rules:
            if r not in RULES:
                raise KeyError(f"unknown rule {r!r}")
        return replace(self, disabled=self.disabled | frozenset(rules))

    def to_json(self) -> dict:
        return {
            "r_equals": self.r_equals,
            "center_weights": list(self.center_weights),
            "d_bounds": list(self.d_bounds),
            "d2_min": self.d2_min,
            "a_min": self.a_min,
            "a_excluded": list(self.a_excluded),
            "bmy_limit": str(self.bmy_limit),
            "center_reciprocal_min": str(self.center_reciprocal_min),
            "family_cap_k": self.family_cap_k,
            "fork_size_cap": self.fork_size_cap,
            "disabled": sorted(self.disabled),
        }

    @classmethod
    def from_json(cls, data: dict) -> ConstraintSet:
        base = cls()
        kw = {}
        for key, value in data.items():
            if key in ("center_weights", "d_bounds", "a_excluded"):
                kw[key] = tuple(int(v) for v in value)
            elif key in ("bmy_limit", "center_reciprocal_min"):
                kw[key] = Q(value)
            elif key == "disabled":
                base = base.disable(*value)
            elif key in ("r_equals", "d2_min", "a_min", "family_cap_k", "fork_size_cap"):
                kw[key] = int(value)
            else:
                raise KeyError(f"unknown constraint field {key!r}")
        return replace(base, **kw)

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


def tuple_bmy_value(ds: tuple[int, ...]) -> Q:
    """``Pi beta^2`` for twig determinants ``ds`` (all twig parameters vanish)."""
    pi = 1
    for d in ds:
        pi *= d
    beta = len(ds) - 2 - sum(Q(1, d) for d in ds)
    return pi * beta * beta


def enumerate_tuples(r: int, bound: int, limit: Q = Q(3, 2)) -> list[tuple[tuple[int, ...], bool]]:
    """Sorted r-tuples of determinants ``2 <= d1 <= ... <= dr <= bound`` with ``Pi beta^2 <= limit``.

    The flag marks tuples with ``beta = 0``, where the positive part vanishes.
    """
    out = []
    for ds in itertools.combinations_with_replacement(range(2, bound + 1), r):
        beta = r - 2 - sum(Q(1, d) for d in ds)
        if beta < 0:
            continue
        if tuple_bmy_value(ds) <= limit:
            out.append((ds, beta == 0))
    return out


def enumerate_triples(bound: int = 19) -> list[tuple[tuple[int, int, int], bool]]:
    return enumerate_tuples(3, bound)


def enumerate_r4(bound: int = 19) -> list[tuple[tuple[int, ...], bool]]:
    return enumerate_tuples(4, bound)


def r4_star_determinant(b: int, d4_chain: Chain) -> int:
    """Determinant of the star with three single (-2)-twigs and a fourth twig."""
    return det(StarBoundary(b, (Chain([-2]), Chain([-2]), Chain([-2]), d4_chain)))


# -- fibres supported on the boundary ---------------------------------------

def fiber_multiplicities(t: WeightedTree) -> dict[int, int] | None:
    """Multiplicities if ``t`` is the support of a fibre of a P1-fibration, else None.

    The support of a fibre contracts, one (-1)-curve with at most two
    neighbours at a time, to a single 0-curve.
    """
    if not t.ids:
        return None
    cur = t
    while len(cur) > 1:
        v = next((u for u in cur.ids if cur.weight(u) == -1 and cur.degree(u) <= 2), None)
        if v is None:
            return None
        cur = blow_down(cur, v)
    if cur.weight(cur.ids[0]) != 0:
        return None
    return _kernel_vector(t)


def _kernel_vector(t: WeightedTree) -> dict[int, int]:
    # pin one tip to 1 and solve I m = 0 on the remaining rows
    ids = list(t.ids)
    n = len(ids)
    m = negated_matrix(t, ids)
    pin = ids.index(t.tips()[0])
    rows = [row for i, row in enumerate(m) if i != pin]
    rows.append([1 if j == pin else 0 for j in range(n)])
    x = solve(rows, [0] * (n - 1) + [1])
    den = lcm(*(q.denominator for q in x))
    ints = [int(q * den) for q in x]
    g = gcd(*ints)
    return {v: k // g for v, k in zip(ids, ints)}


def fiber_obstruction(s: StarBoundary) -> str | None:
    """Description of a fibre inside D that leaves two 2-sections or a 4-section, if any."""
    t = s.to_tree()
    twig_ids = s.twig_ids()
    for cut in itertools.product(*(range(len(z) + 1) for z in twig_ids)):
        support = [0] + [v for z, c in zip(twig_ids, cut) for v in z[:c]]
        mult = fiber_multiplicities(t.induced(support))
        if mult is None:
            continue
        rests = [z[c:] for z, c in zip(twig_ids, cut) if c < len(z)]
        sections = []
        for z, c in zip(twig_ids, cut):
            if c < len(z):
                anchor = z[c - 1] if c else 0
                sections.append(mult[anchor])
        if len(rests) == 1 and sections[0] == 4:
            return f"fibre on {len(support)} curves with a 4-section"
        if len(rests) == 2 and sections == [2, 2] and min(len(x) for x in rests) == 1:
            return f"fibre on {len(support)} curves with two 2-sections"
    return None


# -- case records -----------------------------------------------------------

@dataclass(frozen=True)
class CaseRecord:
    D: StarBoundary
    E: ForkRecord
    numerology: SurfaceNumerology
    verdict: str
    family_param: int | None = None

    @property
    def survivor(self) -> bool:
        return self.verdict == "SURVIVOR"


@dataclass(frozen=True)
class Rejection:
    subject: str
    rule: str


@dataclass
class CaseReport:
    constraints: ConstraintSet
    cases: list[CaseRecord] = field(default_factory=list)
    rejections: list[Rejection] = field(default_factory=list)
    family_notes: list[str] = field(default_factory=list)

    @property
    def survivors(self) -> list[CaseRecord]:
        return [c for c in self.cases if c.survivor]


def star_label(s: StarBoundary) -> str:
    twigs = ";".join(",".join(str(w) for w in z.weights) for z in s.twigs)
    return f"b={s.b} [{twigs}]"


def _canonical(s: StarBoundary) -> tuple:
    return (s.b, tuple(sorted((det(z), z.weights) for z in s.twigs)))


def boundary_rule(s: StarBoundary, c: ConstraintSet) -> str | None:
    """First boundary-level rule that rejects ``s``, or None."""
    d = det(s)
    if c.enabled("dD_negative") and d >= 0:
        return "dD_negative"
    a = -d
    if c.enabled("a_min") and a < c.a_min:
        return "a_min"
    if c.enabled("a_excluded") and a in c.a_excluded:
        return "a_excluded"
    if c.enabled("minus_two_neighbours") and s.b == 1:
        for i, z in enumerate(s.twigs):
            if len(z) <= 2 and z.weights[0] == -2:
                if any(y.weights[0] > -3 for j, y in enumerate(s.twigs) if j != i):
                    return "minus_two_neighbours"
    if c.enabled("minus_two_center") and s.b == 2:
        if sum(Q(1, det(z)) for z in s.twigs) < c.center_reciprocal_min:
            return "minus_two_center"
    if c.enabled("fiber_sections") and a > 4 and fiber_obstruction(s) is not None:
        return "fiber_sections"
    return None


def case_verdict(n: SurfaceNumerology, c: ConstraintSet) -> str:
    if c.enabled("window") and in_window(n) and n.KDE2 not in (-2, -3):
        return "eliminated-by:window"
    if c.enabled("residual") and zariski_residual(n) != 0:
        return "eliminated-by:residual"
    return "SURVIVOR"


def boundaries(c: ConstraintSet, report: CaseReport | None = None) -> Iterator[StarBoundary]:
    """Star boundaries that pass every tuple-level and boundary-level rule."""
    rs = [3] if c.enabled("r_equals") else [3, 4]
    bound = max(c.d_bounds) if c.enabled("d_bounds") else 19
    limit = c.bmy_limit if c.enabled("bmy_bound") else Q(10 ** 9)
    seen = set()

    def reject(subject: str, rule: str) -> None:
        if report is not None:
            report.rejections.append(Rejection(subject, rule))

    for r in rs:
        for ds, flat in enumerate_tuples(r, bound, limit):
            label = "(" + ",".join(map(str, ds)) + ")"
            if c.enabled("d2_min") and r == 3 and ds[1] < c.d2_min:
                reject(label, "d2_min")
                continue
            if c.enabled("d_bounds") and r == 3 and any(d > m for d, m in zip(ds, c.d_bounds)):
                reject(label, "d_bounds")
                continue
            if c.enabled("p2_positive") and flat:
                reject(label, "p2_positive")
                continue
            weights = c.center_weights if c.enabled("center_weights") else (-1, -2, -3)
            for cw in weights:
                for chains in itertools.product(*(enumerate_chains(d) for d in ds)):
                    s = StarBoundary(-cw, chains)
                    key = _canonical(s)
                    if key in seen:
                        continue
                    seen.add(key)
                    rule = boundary_rule(s, c)
                    if rule is not None:
                        reject(star_label(s), rule)
                        continue
                    yield s


def _family_members(fam: ForkFamily, s: StarBoundary, prof: PeelingProfile,
                    c: ConstraintSet, report: CaseReport) -> list[CaseRecord]:
    """Members up to the cap, plus the single member (if any) where the residual vanishes."""
    out = []
    ks = list(range(fam.k_min, fam.k_min + c.family_cap_k + 1))
    values = {}
    for k in ks:
        n = assemble(s, fam.member(k), prof)
        values[k] = n
    r0 = zariski_residual(values[ks[0]])
    slope = zariski_residual(values[ks[1]]) - r0
    for k in ks:
        if zariski_residual(values[k]) != r0 + slope * (k - ks[0]):
            raise AssertionError("residual is not affine along a fork family")
    extra = None
    if slope != 0:
        root = ks[0] - r0 / slope
        if root.denominator == 1 and root > ks[-1]:
            extra = int(root)
    elif r0 == 0:
        report.family_notes.append(f"{star_label(s)} base {fam.base.weights}: residual vanishes for every k")
    if extra is not None:
        values[extra] = assemble(s, fam.member(extra), prof)
        report.family_notes.append(
            f"{star_label(s)} base {fam.base.weights}: residual vanishes at k = {extra} beyond the cap")
    for k in sorted(values):
        n = values[k]
        out.append(CaseRecord(s, fam.member(k), n, case_verdict(n, c), k))
    return out


def cases_for(s: StarBoundary, c: ConstraintSet, report: CaseReport) -> list[CaseRecord]:
    prof = peeling_profile(s)
    cands = fork_candidates(prof.a)
    if not cands.sporadic and not cands.families:
        report.rejections.append(Rejection(star_label(s), "no_fork"))
        return []
    out = []
    for rec in cands.sporadic:
        if rec.size > c.fork_size_cap:
            continue
        n = assemble(s, rec, prof)
        out.append(CaseRecord(s, rec, n, case_verdict(n, c)))
    for fam in cands.families:
        out.extend(_family_members(fam, s, prof, c, report))
    return out


def generate_cases(c: ConstraintSet | None = None) -> CaseReport:
    c = c or ConstraintSet()
    report = CaseReport(c)
    for s in boundaries(c, report):
        report.cases.extend(cases_for(s, c, report))
    return report


def iter_verdicts(report: CaseReport) -> Iterable[tuple[str, str, str]]:
    for case in report.cases:
        yield star_label(case.D), fork_label(case.E), case.verdict


def fork_label(rec: ForkRecord) -> str:
    twigs = ";".join(",".join(str(w) for w in z.weights) for z in rec.fork.twigs)
    return f"h={rec.h} [{twigs}]"
