"""Walk through the fusion analysis of the symmetric group on four points.

The Sylow 2-subgroup is dihedral of order 8.  Its subgroups fall into seven
conjugacy classes under ambient fusion; four of them are centric, and exactly
two of those (the normal Klein four and the Sylow itself) are also radical.
"""

from flab.fusion import analyze, check_saturation, controlling_family, fusion_from_group
from flab.groups import Perm, closure, subgroup_closure

G = closure([Perm.from_cycles(4, (0, 1, 2, 3)), Perm.from_cycles(4, (0, 1))])
S = subgroup_closure(G, [Perm.from_cycles(4, (0, 1, 2, 3)), Perm.from_cycles(4, (0, 2))])
print(f"ambient group of order {G.order}, Sylow subgroup of order {S.order}")

F = fusion_from_group(G, S, 2)
report = analyze(F)
print(f"\n{'order':>6} {'size':>5} {'centric':>8} {'radical':>8} {'|Aut|':>6} {'|Out|':>6}")
for row in report.rows:
    print(
        f"{row['order']:>6} {row['class_size']:>5} {str(row['centric']):>8}"
        f" {str(row['radical']):>8} {row['aut_order']:>6} {row['out_order']:>6}"
    )

print(f"\ncentric classes: {report.centric_class_count()}")
print(f"centric radical classes: {report.centric_radical_class_count()}")

sat = check_saturation(F)
print(f"\nsaturated: {sat.passed}")
for note in sat.notes:
    print(f"  note: {note}")

family = controlling_family(F, complete=True)
print(f"\ncomplete controlling family orders: {[P.order for P in family]}")
