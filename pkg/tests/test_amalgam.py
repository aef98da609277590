import random

import pytest

from flab.amalgam import (
    LIBMAN_SEELIGER,
    ROBINSON,
    AmalgamError,
    amalgam_center,
    build_amalgam,
    build_setup,
    transporter_in_amalgam,
    verify_fusion,
)
from flab.fusion import controlling_family, fusion_from_group, inner_fusion
from flab.groups import Perm, center, closure, isomorphisms, subgroup_closure, table_from_group
from flab.linking import linking_from_group


def s4_stack():
    G = closure([Perm.from_cycles(4, (0, 1, 2, 3)), Perm.from_cycles(4, (0, 1))])
    S = subgroup_closure(G, [Perm.from_cycles(4, (0, 1, 2, 3)), Perm.from_cycles(4, (0, 2))])
    F = fusion_from_group(G, S, 2)
    L = linking_from_group(G, S, 2, fusion=F)
    return F, L


def a6_stack():
    G = closure([Perm.from_cycles(6, (0, 1, 2)), Perm.from_cycles(6, (1, 2, 3, 4, 5))])
    F = fusion_from_group(G, None, 2)
    L = linking_from_group(G, None, 2, fusion=F)
    return F, L


def inner_d8_stack():
    S = closure([Perm.from_cycles(4, (0, 1, 2, 3)), Perm.from_cycles(4, (0, 2))])
    F = inner_fusion(S, 2)
    L = linking_from_group(S.full_subgroup().ambient if False else S, None, 2, fusion=F)
    return F, L


def test_setup_s4_both_variants():
    F, L = s4_stack()
    fam = controlling_family(F, complete=True)
    for variant in (ROBINSON, LIBMAN_SEELIGER):
        setup = build_setup(F, L, fam, variant)
        assert len(setup.leaves) == 1
        # N_V = delta(N_S(V)) = all of Aut_L(S) here, so the edge is degenerate
        assert set(setup.leaves[0].edge_hub) == set(setup.hub.elements)
        assert setup.is_complete


def test_setup_rejects_non_controlling_family():
    F, L = s4_stack()
    with pytest.raises(AmalgamError):
        build_setup(F, L, [F.canon(F.S)], ROBINSON)
    # but the escape hatch allows it for negative testing
    setup = build_setup(F, L, [F.canon(F.S)], ROBINSON, require_controlling=False)
    assert len(setup.leaves) == 0


def test_s4_amalgam_collapses_to_s4():
    F, L = s4_stack()
    setup = build_setup(F, L, variant=ROBINSON)
    G = build_amalgam(setup)
    assert G.collapsed_leaves == [1]
    words = G.all_elements()
    assert len(words) == 24
    assert len({w.key() for w in words}) == 24
    # multiplication table is isomorphic to S4
    table, _ = table_from_group([w.value for w in words], G.hub_group.mul)
    S4 = closure([Perm.from_cycles(4, (0, 1, 2, 3)), Perm.from_cycles(4, (0, 1))])
    t2, _ = table_from_group(S4.elements, S4.mul)
    assert isomorphisms(table, t2, limit=1)


def test_a6_amalgam_is_free_product_over_d8():
    F, L = a6_stack()
    setup = build_setup(F, L, variant=LIBMAN_SEELIGER)
    G = build_amalgam(setup)
    # both edges are degenerate over Aut_L(S) = D8; one leaf absorbs the hub
    assert len(G.collapsed_leaves) == 1
    assert len(G.leaves) == 1
    assert G.hub_group.order == 24
    assert G.leaves[0].group.order == 24
    # normal forms of length >= 2 exist: the amalgam is infinite
    long_words = [w for w in G.words_up_to_length(2) if w.length() == 2]
    assert long_words


def test_normal_form_laws_a6():
    F, L = a6_stack()
    setup = build_setup(F, L, variant=LIBMAN_SEELIGER)
    G = build_amalgam(setup)
    rng = random.Random(5)
    words = [G.random_word(rng, rng.randrange(0, 5)) for _ in range(120)]
    for i in range(0, 117, 3):
        a, b, c = words[i], words[i + 1], words[i + 2]
        assert (a * b) * c == a * (b * c)
        assert a * a.inverse() == G.identity()
        assert (a.inverse()).inverse() == a
    # reduce is idempotent: refolding the letters gives the same key
    for w in words[:40]:
        assert G.reduce(w.letters()) == w


def test_britton_property_a6():
    F, L = a6_stack()
    setup = build_setup(F, L, variant=LIBMAN_SEELIGER)
    G = build_amalgam(setup)
    rng = random.Random(11)
    seen = 0
    for _ in range(300):
        w = G.random_word(rng, 6)
        if w.length() >= 2:
            seen += 1
            assert G.element_of_s(w) is None
    assert seen > 30
    # and S embeds: every s is recovered from its word
    S = F.canon(F.S)
    for s in S.elements:
        assert G.element_of_s(G.embed_s(s)) == s


def test_element_of_s_and_conjugation_identity():
    F, L = s4_stack()
    setup = build_setup(F, L, variant=ROBINSON)
    G = build_amalgam(setup)
    V = next(P for P in setup.family if P.order == 4)
    assert G.conjugate_subgroup(G.identity(), V) == V


def test_conjugate_subgroup_partiality_a6():
    F, L = a6_stack()
    setup = build_setup(F, L, variant=LIBMAN_SEELIGER)
    G = build_amalgam(setup)
    V1 = setup.family[1]
    V2 = setup.family[2]
    # a leaf-1 letter of 3-element fusion order maps V1 to itself setwise
    leaf = G.leaves[0]
    found_fail = False
    rng = random.Random(3)
    for _ in range(200):
        w = G.random_word(rng, 4)
        if w.length() >= 2 and G.conjugate_subgroup(w, V1) is None:
            found_fail = True
            break
    assert found_fail


def test_verify_fusion_positive_and_negative():
    F, L = s4_stack()
    for variant in (ROBINSON, LIBMAN_SEELIGER):
        setup = build_setup(F, L, variant=variant)
        report = verify_fusion(build_amalgam(setup))
        assert report["equal"], report["witness"]
    broken = build_setup(F, L, [F.canon(F.S)], ROBINSON, require_controlling=False)
    report = verify_fusion(build_amalgam(broken))
    assert not report["equal"]
    assert report["witness"] is not None


def test_verify_fusion_a6_both_variants():
    F, L = a6_stack()
    for variant in (ROBINSON, LIBMAN_SEELIGER):
        setup = build_setup(F, L, variant=variant)
        report = verify_fusion(build_amalgam(setup))
        assert report["equal"], report["witness"]


def test_center_s4_trivial_and_inner_d8_c2():
    F, L = s4_stack()
    setup = build_setup(F, L, variant=ROBINSON)
    assert amalgam_center(build_amalgam(setup)).order == 1

    S = closure([Perm.from_cycles(4, (0, 1, 2, 3)), Perm.from_cycles(4, (0, 2))])
    F2 = inner_fusion(S, 2)
    L2 = linking_from_group(S, None, 2, fusion=F2)
    setup2 = build_setup(F2, L2, variant=ROBINSON)
    G2 = build_amalgam(setup2)
    assert len(G2.setup.leaves) == 0
    Z = amalgam_center(G2)
    assert Z.order == 2
    assert Z.element_set == center(F2.canon(F2.S)).element_set


def test_transporter_in_amalgam():
    F, L = s4_stack()
    setup = build_setup(F, L, variant=ROBINSON)
    G = build_amalgam(setup)
    V = next(P for P in setup.family if P.order == 4)
    res = transporter_in_amalgam(G, V, V, 1)
    assert len(res["words"]) == 24
    assert res["truncated"] is False

    F6, L6 = a6_stack()
    setup6 = build_setup(F6, L6, variant=LIBMAN_SEELIGER)
    G6 = build_amalgam(setup6)
    V1 = setup6.family[1]
    res6 = transporter_in_amalgam(G6, V1, V1, 1)
    assert res6["truncated"] is True
    assert len(res6["words"]) >= 24


def test_level2_amalgam_pgl_like():
    # a legal non-complete controlling family with two conjugate leaves gives
    # a genuine two-level word group
    F, L = a6_stack()
    fam = controlling_family(F, complete=True)
    setup = build_setup(F, L, fam, ROBINSON)
    G = build_amalgam(setup)
    rng = random.Random(19)
    for _ in range(60):
        a = G.random_word(rng, 3)
        b = G.random_word(rng, 3)
        c = G.random_word(rng, 2)
        assert (a * b) * c == a * (b * c)
        assert (a * b).inverse() == b.inverse() * a.inverse()
