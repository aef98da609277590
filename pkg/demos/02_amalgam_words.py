"""Exact word arithmetic in the amalgam of the alternating group on six points.

Here the star of groups degenerates interestingly: both edges carry the whole
hub, one leaf absorbs it, and what remains is a free product of two copies of
the symmetric group on four points amalgamated over a dihedral group of order
eight.  That group is infinite, but its normal forms are exact and unique, so
multiplication, inversion and membership in the Sylow image are all decidable.
"""

import random

from flab.amalgam import LIBMAN_SEELIGER, build_amalgam, build_setup, transporter_in_amalgam
from flab.fusion import controlling_family, fusion_from_group
from flab.groups import Perm, closure
from flab.linking import linking_from_group

A6 = closure([Perm.from_cycles(6, (0, 1, 2)), Perm.from_cycles(6, (1, 2, 3, 4, 5))])
F = fusion_from_group(A6, None, 2)
L = linking_from_group(A6, None, 2, fusion=F)
family = controlling_family(F, complete=True)
setup = build_setup(F, L, family, LIBMAN_SEELIGER)
G = build_amalgam(setup)

print(f"family orders: {[P.order for P in family]}")
print(f"leaves absorbed into the hub: {G.collapsed_leaves}")
print(f"hub vertex group order: {G.hub_group.order}")
print(f"remaining leaf orders: {[leaf.group.order for leaf in G.leaves]}")

rng = random.Random(7)
w = G.random_word(rng, 5)
print(f"\na random word: {w}")
print(f"normal-form length: {w.length()}")
print(f"its inverse:  {w.inverse()}")
print(f"w * w^-1 == 1: {w * w.inverse() == G.identity()}")

S = F.canon(F.S)
s = S.gens()[0]
print(f"\nimage of a Sylow element: {G.embed_s(s)}")
print(f"recovered from the word: {G.element_of_s(G.embed_s(s))}")

V1 = family[1]
res = transporter_in_amalgam(G, V1, V1, radius=1)
print(f"\nbounded transporter of the first Klein leaf (radius 1): {len(res['words'])} words")
print(f"truncated: {res['truncated']} (the full transporter set is infinite)")
