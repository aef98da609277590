import pytest

from flab.autos import (
    AutosError,
    conj_equivalence,
    enumerate_identity_on_s,
    exact_sequence_report,
    fusion_preserving_autos,
    homomorphism_properties,
    hub_conjugation_automorphism,
    identity_automorphism,
    induced_equivalence,
    itworks_check,
    leaf_permutation,
    only2_applies,
    section_automorphism,
    verify_split,
)
from flab.cli import entry_stack
from flab.fusion import inner_fusion
from flab.groups import Perm, closure


@pytest.fixture(scope="module")
def s4():
    return entry_stack("s4-d8")


@pytest.fixture(scope="module")
def a6():
    return entry_stack("a6-d8")


@pytest.fixture(scope="module")
def d8():
    return entry_stack("inner-d8")


def test_fusion_preserving_autos_counts(s4, a6):
    fps = fusion_preserving_autos(s4.fusion)
    assert len(fps) == 4  # Inn(D8): the outer map would swap two classes with different fusion
    S = closure([Perm.from_cycles(4, (0, 1, 2, 3)), Perm.from_cycles(4, (0, 2))])
    F_inner = inner_fusion(S, 2)
    assert len(fusion_preserving_autos(F_inner)) == 8  # every automorphism preserves inner fusion
    fps6 = fusion_preserving_autos(a6.fusion)
    assert len(fps6) == 8
    fam = a6.family
    V1, V2 = fam[1], fam[2]
    swaps = [
        a
        for a in fps6
        if frozenset(a.mapping[x] for x in V1.elements) == V2.element_set
    ]
    assert swaps  # the outer automorphism of D8 swaps the Klein fours and survives


def test_enumerate_aut_typ_is_a_group(s4):
    eqs = s4.ctx.aut_typ()
    assert len(eqs) == 8
    keys = {e.key() for e in eqs}
    assert any(e.is_identity() for e in eqs)
    for a in eqs:
        assert a.inverse().key() in keys
        for b in eqs:
            assert a.compose(b).key() in keys


def test_conjugation_equivalences_inside(s4):
    L = s4.linking
    eqs = {e.key() for e in s4.ctx.aut_typ()}
    for x in L.aut_group(L.s_index).elements:
        assert conj_equivalence(L, x).key() in eqs


def test_out_typ_counts(s4, a6, d8):
    assert len(s4.ctx.out_classes()) == 1
    assert len(a6.ctx.out_classes()) == 4
    assert len(d8.ctx.out_classes()) == 2  # Out(D8) is cyclic of order 2
    # cross-check the a6 count: image of the leaf permutation times its kernel
    classes = a6.ctx.out_classes()
    perms = [tuple(sorted(leaf_permutation(a6.ctx, c).items())) for c in classes]
    image = set(perms)
    kernel = sum(1 for p in perms if p == ((1, 1), (2, 2)))
    assert len(classes) == len(image) * kernel


def test_upsilon_values(s4, a6):
    cls = s4.ctx.out_classes()[0]
    assert leaf_permutation(s4.ctx, cls) == {1: 1}
    perms = [leaf_permutation(a6.ctx, c) for c in a6.ctx.out_classes()]
    assert {1: 2, 2: 1} in perms  # a class swapping the two Klein leaves
    assert {1: 1, 2: 2} in perms


def test_gamma_identity_class_is_inner(s4):
    ctx = s4.ctx
    identity_cls = ctx.class_of(conj_equivalence(s4.linking, s4.linking.aut_group(s4.linking.s_index).identity))
    auto = section_automorphism(ctx, identity_cls, s4.amalgam)
    assert auto.is_inner_by_hub() is not None


def test_gamma_swap_class_swaps_leaves(a6):
    ctx = a6.ctx
    swap_cls = next(c for c in ctx.out_classes() if leaf_permutation(ctx, c) == {1: 2, 2: 1})
    auto = section_automorphism(ctx, swap_cls, a6.amalgam)
    assert auto.alpha == {1: 2, 2: 1}


def test_omega_of_identity_and_hub_conjugations(s4):
    G = s4.amalgam
    ctx = s4.ctx
    eq = induced_equivalence(ctx, identity_automorphism(G))
    assert eq.is_identity()
    for x in G.setup.hub.elements:
        auto = hub_conjugation_automorphism(G, x)
        assert induced_equivalence(ctx, auto).key() == conj_equivalence(s4.linking, x).key()


def test_verify_split_s4_a6(s4, a6):
    for stack in (s4, a6):
        rep = verify_split(stack.ctx, stack.amalgam)
        assert rep["all_split"], rep
        assert rep["gamma_homomorphism"]
        assert all(row["order_independent"] for row in rep["classes"])


def test_homomorphism_properties(s4, a6):
    for stack in (s4, a6):
        rep = homomorphism_properties(stack.ctx, stack.amalgam)
        assert rep["omega_multiplicative"]
        assert rep["omega_on_hub_conjugation"]
        assert rep["upsilon_multiplicative"]


def test_exact_sequences(s4, a6, d8):
    for stack, lim1_order in ((s4, 1), (a6, 2), (d8, 1)):
        rep = exact_sequence_report(stack.ctx, stack.amalgam, kernel_radius=1)
        assert rep["passed"], rep
        assert rep["center_match"]
        assert rep["kernel_of_conjugation_is_center"]
        assert rep["exact_at_equivalences"]
        assert rep["lim1_order"] == lim1_order
        assert rep["p2_sequence_status"] == "consistent"


def test_inner_d8_center_is_c2(d8):
    rep = exact_sequence_report(d8.ctx, d8.amalgam, kernel_radius=1)
    assert rep["center_order"] == 2
    assert rep["limit_order"] == 2


def test_fixed_s_enumeration_is_bounded_subgroup(a6):
    autos = enumerate_identity_on_s(a6.ctx, a6.amalgam)
    # every member really fixes S pointwise
    G = a6.amalgam
    S = a6.fusion.canon(a6.fusion.S)
    for auto in autos:
        for s in S.gens():
            assert auto.apply(G.embed_s(s)) == G.embed_s(s)


def test_itworks_tables(s4, a6):
    for stack in (s4, a6):
        rep = itworks_check(stack.ctx, stack.setup)
        assert rep["center_is_cyclic_of_order_p"]
        for row in rep["conditions"]:
            assert row["iii_index_p"]
        assert rep["all_pass"]
        assert only2_applies(rep)


def test_itworks_pgl2_9():
    stack = entry_stack("pgl2-9")
    rep = itworks_check(stack.ctx, stack.setup)
    assert rep["all_pass"], rep
    assert only2_applies(rep)
    for row in rep["conditions"]:
        assert row["i_normalizer_of_center"]
        assert row["ii_selfnormalizing_sylow"]
        assert row["iii_index_p"]
        assert row["iv_transitive_on_frattini"]


def test_robinson_variant_splits_too(s4):
    from flab.amalgam import ROBINSON, build_amalgam, build_setup

    setup = build_setup(s4.fusion, s4.linking, s4.family, ROBINSON)
    G = build_amalgam(setup)
    rep = verify_split(s4.ctx, G)
    assert rep["all_split"]


def test_bad_restriction_data_rejected(s4):
    ctx = s4.ctx
    G = s4.amalgam
    auto = section_automorphism(ctx, ctx.out_classes()[0], G)
    hub = G.setup.hub
    broken = dict(auto.theta_hub)
    a, b = hub.elements[1], hub.elements[2]
    broken[a], broken[b] = broken[b], broken[a]
    from flab.autos import AmalgamAutomorphism

    with pytest.raises(AutosError):
        bad = AmalgamAutomorphism(G, auto.alpha, broken, auto.theta_leaf, auto.y)
        induced_equivalence(ctx, bad)
