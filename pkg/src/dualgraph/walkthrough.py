"""Step-by-step elimination of the boundaries whose smallest twig has determinant 3.

Each check pairs a quoted value from the reference argument with the value
computed here. Where the two differ and the difference is understood, the
check is listed in ``KNOWN_ERRATA`` with the reason; any other mismatch is
an error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q

from .casegen import (ConstraintSet, case_verdict, enumerate_r4, enumerate_triples,
                      fiber_multiplicities, fiber_obstruction, r4_star_determinant)
from .det import det, twig_data
from .forks import feasible_a, fork_candidates
from .hj import enumerate_chains
from .graph import Chain, StarBoundary
from .numerology import assemble
from .peeling import peeling_profile


@dataclass(frozen=True)
class Check:
    step: str
    quantity: str
    quoted: str
    computed: str

    @property
    def agrees(self) -> bool:
        return self.quoted == self.computed


KNOWN_ERRATA: dict[tuple[str, str], str] = {
    ("3d", "E twigs"): "the fork with two single (-3)-curves and h = 3 has determinant 33; "
                        "the determinant-21 fork has two [-2,-2] twigs",
    ("3d", "b2"): "follows from the misidentified fork",
    ("3d", "K.E"): "follows from the misidentified fork",
    ("3d", "(K+D+E)^2"): "follows from the misidentified fork",
    ("3d", "Bk(E)^2"): "the quoted -22/15 is Bk(D)^2",
    ("4a", "Bk(E)^2"): "the quoted -7/6 is Bk(D)^2",
    ("4b", "K.E"): "the (-3)-twig contributes 1, so K.E = 2, consistent with the quoted (K+D+E)^2 = -4",
    ("4b", "Bk(E)^2"): "the quoted -3/2 is Bk(D)^2",
    ("5b", "closed form"): "the inductance term needs a factor 10: -(28n + 1 + 10 n~)/(10n)",
}


def _star(b: int, *twigs: list[int]) -> StarBoundary:
    return StarBoundary(b, tuple(Chain(t) for t in twigs))


def _fmt(x) -> str:
    return str(x)


def walkthrough_steps() -> list[Check]:
    c = ConstraintSet()
    out: list[Check] = []

    def add(step: str, quantity: str, quoted, computed) -> None:
        out.append(Check(step, quantity, _fmt(quoted), _fmt(computed)))

    # step 1: the admissible triples with d1 = 3
    triples = [(t, flat) for t, flat in enumerate_triples(19) if t[0] == 3]
    add("1", "triples", "(3,3,3)*,(3,3,4),(3,3,5),(3,3,6),(3,4,4)",
        ",".join("(" + ",".join(map(str, t)) + ")" + ("*" if f else "") for t, f in triples))

    def single_case(step: str, D: StarBoundary, quoted: dict[str, object]) -> None:
        a = -det(D)
        add(step, "d(D)", quoted.pop("d(D)"), det(D))
        cands = fork_candidates(a)
        (rec,) = cands.sporadic
        n = assemble(D, rec)
        comp = {"b2": n.b2, "K^2": n.K2, "K.D": n.KD, "K.E": n.KE, "(K+D+E)^2": n.KDE2,
                "Bk(D)^2": n.bkD2, "Bk(E)^2": n.bkE2, "P^2": n.P2,
                "E twigs": "h=%d %s" % (rec.h, [list(t.weights) for t in rec.fork.twigs]),
                "verdict": case_verdict(n, c)}
        for key, value in quoted.items():
            add(step, key, value, comp[key])

    single_case("2a", _star(1, [-2, -2], [-3], [-4]),
                {"d(D)": -9, "b2": 10, "K^2": 0, "K.D": 2, "K.E": 1, "(K+D+E)^2": -1,
                 "Bk(D)^2": Q(-5, 4), "verdict": "eliminated-by:window"})
    single_case("2b", _star(1, [-3], [-3], [-2, -2, -2]),
                {"d(D)": -15, "b2": 10, "K^2": 0, "K.E": 2, "K.D": 1, "(K+D+E)^2": -1,
                 "Bk(D)^2": Q(-17, 12), "verdict": "eliminated-by:window"})
    single_case("3a", _star(1, [-2, -2], [-3], [-5]),
                {"d(D)": -9, "b2": 10, "K^2": 0, "K.E": 1, "K.D": 3, "(K+D+E)^2": 0,
                 "Bk(D)^2": Q(-6, 5), "verdict": "eliminated-by:window"})

    # step 3b: Z3 = [-2, -3] over two single (-3)-twigs, a = 12 with three forks
    D = _star(1, [-3], [-3], [-2, -3])
    add("3b", "d(D)", -12, det(D))
    cands = fork_candidates(12)
    (first,) = cands.sporadic
    n = assemble(D, first)
    add("3b", "first #E", 4, n.n_E)
    add("3b", "first K.E", 1, n.KE)
    add("3b", "first (K+D+E)^2", 0, n.KDE2)
    add("3b", "Bk(D)^2", Q(-16, 15), n.bkD2)
    add("3b", "P^2", Q(1, 15), n.P2)
    add("3b", "first verdict", "eliminated-by:window", case_verdict(n, c))
    fam_by_kdeg = {f.k_degree: f for f in cands.families}
    second, third = fam_by_kdeg[2], fam_by_kdeg[1]
    n2 = [assemble(D, second.member(k)) for k in range(3)]
    add("3b", "second #E", "k+4", "k+%d" % (n2[0].n_E))
    add("3b", "second (K+D+E)^2", "1-k", "%d-k" % n2[0].KDE2 if n2[1].KDE2 == n2[0].KDE2 - 1 else "?")
    add("3b", "second Bk(E)^2", Q(-4, 3), second.bark_square)
    add("3b", "second residual vanishes", False, any(x.residual == 0 for x in n2))
    n3 = assemble(D, third.member(0))
    add("3b", "third #E", "k+5", "k+%d" % n3.n_E)
    add("3b", "third Bk(E)^2", Q(-5, 3), third.bark_square)
    add("3b", "third residual is an integer", False,
        (n3.P2 + n3.bkD2 + n3.bkE2).denominator == 1)

    # step 3c: the remaining orientations give excluded determinants
    add("3c", "a for [-3];[-3];[-3,-2]", 3, -det(_star(1, [-3], [-3], [-3, -2])))
    add("3c", "a for [-3];[-2,-2];[-3,-2]", 18, -det(_star(1, [-3], [-2, -2], [-3, -2])))

    single_case("3d", _star(1, [-3], [-3], [-2] * 4),
                {"d(D)": -21, "E twigs": "h=3 [[-2], [-3], [-3]]", "b2": 11, "K.E": 3, "K.D": 1,
                 "(K+D+E)^2": -1, "Bk(E)^2": Q(-22, 15), "Bk(D)^2": Q(-22, 15),
                 "verdict": "eliminated-by:window"})
    single_case("4a", _star(1, [-2, -2], [-3], [-6]),
                {"d(D)": -9, "K.E": 1, "K.D": 4, "b2": 10, "(K+D+E)^2": 1,
                 "Bk(E)^2": Q(-7, 6), "Bk(D)^2": Q(-7, 6), "verdict": "eliminated-by:window"})
    single_case("4b", _star(1, [-3], [-3], [-2] * 5),
                {"d(D)": -27, "E twigs": "h=3 [[-2], [-3], [-2, -2]]", "b2": 13, "K.E": 1,
                 "K.D": 1, "(K+D+E)^2": -4, "Bk(E)^2": Q(-3, 2), "Bk(D)^2": Q(-3, 2),
                 "verdict": "eliminated-by:window"})

    # step 5
    add("5a", "d(D) for [-3];[-4];[-4]", 8, det(_star(1, [-3], [-4], [-4])))
    D = _star(1, [-3], [-2, -2, -2], [-2, -2, -2])
    prof = peeling_profile(D)
    add("5b", "a", 40, prof.a)
    add("5b", "P^2", Q(1, 30), prof.p_squared)
    n = assemble(D, fork_candidates(40).sporadic[0])
    add("5b", "Bk(D)^2", Q(-11, 6), n.bkD2)
    forks = list(fork_candidates(40).sporadic)
    for fam in fork_candidates(40).families:
        forks.extend(fam.member(k) for k in range(12))
    add("5b", "types", "(2,2,n)", ",".join(sorted({r.type for r in forks})))
    sums = []
    closed_ok = quoted_ok = True
    for rec in forks:
        nn = assemble(D, rec)
        total = nn.P2 + nn.bkD2 + nn.bkE2
        sums.append(total)
        long_twig = max(rec.fork.twigs, key=lambda t: twig_data(t).d)
        td = twig_data(long_twig)
        closed_ok &= total == -Q(28 * td.d + 1 + 10 * td.d_tilde, 10 * td.d)
        # the quoted form drops the factor 10 on the inductance numerator
        quoted_ok &= total == -Q(28 * td.d + 1 + td.d_tilde, 10 * td.d)
    add("5b", "Zariski sum integral for some fork", False, any(s.denominator == 1 for s in sums))
    add("5b", "closed form", "-(28n+1+n~)/(10n)",
        "-(28n+1+n~)/(10n)" if quoted_ok else ("-(28n+1+10n~)/(10n)" if closed_ok else "?"))

    D = _star(1, [-3], [-4], [-2, -2, -2])
    t = D.to_tree()
    support = [0, 2, 3, 4, 5]
    mult = fiber_multiplicities(t.induced(support))
    add("5c", "fibre multiplicities Z2,B,Z31,Z32,Z33",
        "1,4,3,2,1", ",".join(str(mult[v]) for v in (2, 0, 3, 4, 5)) if mult else "none")
    add("5c", "section degree of Z1", 4, mult[0] if mult else 0)

    D = _star(1, [-2, -2], [-4], [-4])
    prof = peeling_profile(D)
    add("5d", "a", 8, prof.a)
    (fam,) = fork_candidates(8).families
    add("5d", "fork family base", "[-3]", str(list(fam.base.weights)))
    n = assemble(D, fam.member(0))
    add("5d", "P^2 + Bk(E)^2 + Bk(D)^2", "1/6-3/2-7/6", f"{n.P2}{n.bkE2}{n.bkD2}")
    add("5d", "sum is an integer", False, (n.P2 + n.bkD2 + n.bkE2).denominator == 1)
    return out


@dataclass(frozen=True)
class WalkthroughReport:
    checks: list[Check]

    @property
    def errata(self) -> list[Check]:
        return [c for c in self.checks if not c.agrees and (c.step, c.quantity) in KNOWN_ERRATA]

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks
                if c.agrees == ((c.step, c.quantity) in KNOWN_ERRATA)]


def run_walkthrough(strict: bool = True) -> WalkthroughReport:
    """Run every check; in strict mode raise on unexpected mismatches or on errata that no longer differ."""
    rep = WalkthroughReport(walkthrough_steps())
    if strict and rep.failures:
        lines = [f"step {c.step} {c.quantity}: quoted {c.quoted}, computed {c.computed}"
                 for c in rep.failures]
        raise AssertionError("walkthrough mismatch:\n" + "\n".join(lines))
    return rep


@dataclass(frozen=True)
class FourTwigCase:
    b: int
    z4: Chain
    d_D: int
    formula: int
    outcome: str


def four_twig_report(bound: int = 40, centers: range = range(1, 4)) -> tuple[list, list[FourTwigCase]]:
    """Tuples with four twigs that pass the inequality, and how each boundary dies.

    Only ``(2,2,2,2)`` (positive part zero) and ``(2,2,2,3)`` remain. For the
    latter ``d(D) = 24b - 36 - 8 dbar_4``; a center of weight 0 or more is
    blown up to weight -1 first, so ``b >= 1`` covers every case.
    """
    tuples = enumerate_r4(bound)
    cases = []
    c = ConstraintSet()
    for b in centers:
        for z4 in enumerate_chains(3):
            d = r4_star_determinant(b, z4)
            dbar = twig_data(z4).d_bar
            s = StarBoundary(b, (Chain([-2]), Chain([-2]), Chain([-2]), z4))
            if d >= 0:
                outcome = "dD_negative"
            elif -d < c.a_min:
                outcome = "a_min"
            elif not feasible_a(-d):
                outcome = "no_fork"
            elif fiber_obstruction(s) is not None:
                outcome = "fiber_sections"
            else:
                outcome = "open"
            cases.append(FourTwigCase(b, z4, d, 24 * b - 36 - 8 * dbar, outcome))
    return tuples, cases
