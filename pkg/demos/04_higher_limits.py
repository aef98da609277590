"""Centers, limits over the orbit category, and the degree-one obstruction.

The center of the amalgam always agrees with the inverse limit of the center
functor.  The degree-one limit is the interesting number: it measures how far
automorphisms of the amalgam that fix the Sylow subgroup pointwise can be from
inner, and on the alternating-group example it is genuinely nonzero.
"""

from flab.amalgam import amalgam_center
from flab.autos import exact_sequence_report
from flab.cli import entry_stack
from flab.linking import center_functor, higher_limits, inverse_limit, orbit_category

for name in ("s4-d8", "a6-d8", "pgl2-9", "inner-d8"):
    stack = entry_stack(name)
    F = stack.fusion
    cat, extra = orbit_category(F)
    Z = center_functor(F, cat, extra["reps"])
    lim0 = inverse_limit(cat, Z)
    lim1 = higher_limits(cat, Z, 1)
    zg = amalgam_center(stack.amalgam)
    print(f"{name:10s} |Z(G)| = {zg.order}  lim = {lim0.group}  lim^1 = {lim1}")

print()
stack = entry_stack("a6-d8")
report = exact_sequence_report(stack.ctx, stack.amalgam, kernel_radius=1)
print("alternating-group example, exact-sequence data at p = 2:")
print(f"  automorphisms fixing the Sylow pointwise (bounded search): {report['fixed_s_enumerated']}")
print(f"  modulo conjugation by bounded centralizer words: {report['fixed_s_mod_conjugation']}")
print(f"  of those, restricting to the trivial outer class: {report['kernel_enumerated']}")
print(f"  degree-one limit order: {report['lim1_order']}")
print(f"  sequence arithmetic consistent: {report['p2_sequence_status']}")
