"""
Sweeping every case
===================

Run the full elimination, then look at what is left and at how the reference
tables compare with the recomputed ones.
"""

from collections import Counter

from dualgraph.casegen import ConstraintSet, fork_label, generate_cases, star_label
from dualgraph.tables import check_table

report = generate_cases()
print("constraint digest", report.constraints.digest())
print(Counter(r.rule for r in report.rejections).most_common())
print(Counter(c.verdict for c in report.cases).most_common())

for case in report.survivors:
    n = case.numerology
    print("left:", star_label(case.D), fork_label(case.E), "k =", case.family_param,
          " (K+D+E)^2 =", n.KDE2, " P^2 =", n.P2)

# turning one rule off shows how much work it was doing
loose = generate_cases(ConstraintSet().disable("minus_two_neighbours"))
print("without the (-2)-neighbour rule:", len(loose.cases), "cases,", len(loose.survivors), "left")

for which in ("1", "1bis", "2"):
    res = check_table(which)
    print("table", which, "ok" if res.ok else f"{len(res.diffs)} cell(s) differ")
    for d in res.diffs:
        print("   ", d.row, d.column, "printed", d.expected, "computed", d.computed)
