import pytest

from flab.groups import (
    FiniteGroupTable,
    GroupHom,
    Perm,
    Subgroup,
    all_subgroups,
    automorphisms,
    center,
    centralizer,
    closure,
    conjugacy_classes_of_subgroups,
    isomorphisms,
    normal_p_complement,
    normalizer,
    o_p,
    p_part,
    quotient,
    subgroup_closure,
    subgroups_up_to_conjugacy,
    sylow,
    table_from_group,
    transporter,
)


def s4():
    return closure([Perm.from_cycles(4, (0, 1, 2, 3)), Perm.from_cycles(4, (0, 1))])


def d8_in_s4():
    G = s4()
    return G, subgroup_closure(G, [Perm.from_cycles(4, (0, 1, 2, 3)), Perm.from_cycles(4, (0, 2))])


def klein_v(G):
    return subgroup_closure(G, [Perm.from_cycles(4, (0, 1), (2, 3)), Perm.from_cycles(4, (0, 2), (1, 3))])


def test_perm_basics():
    p = Perm.from_cycles(4, (0, 1, 2, 3))
    q = Perm.from_cycles(4, (0, 2))
    assert (p * q)(2) == p(q(2))
    assert p * p.inverse() == Perm.identity(4)
    assert p.order() == 4
    assert repr(p) == "(1 2 3 4)"
    with pytest.raises(ValueError):
        Perm([0, 0, 1])


def test_closure_dihedral_order_8():
    G = closure([Perm.from_cycles(4, (0, 1, 2, 3)), Perm.from_cycles(4, (0, 2))])
    assert G.order == 8


def test_closure_empty_is_trivial():
    G = closure([], degree=4)
    assert G.order == 1


def test_closure_s4():
    assert s4().order == 24


def test_closure_mixed_degree_rejected():
    with pytest.raises(ValueError):
        closure([Perm.identity(3), Perm.identity(4)])


def test_sylow_s4():
    G = s4()
    P = sylow(G, 2)
    assert P.order == 8
    assert sylow(G, 5).order == 1
    # any 2-subgroup conjugates into the Sylow
    for H in all_subgroups(G):
        if H.order in (2, 4, 8):
            assert any(
                {G.conj(g, h) for h in H.elements} <= P.element_set for g in G.elements
            )


def test_sylow_a6():
    A6 = closure([Perm.from_cycles(6, (0, 1, 2)), Perm.from_cycles(6, (1, 2, 3, 4, 5))])
    assert A6.order == 360
    assert sylow(A6, 2).order == 8


def test_normalizer_centralizer_center():
    G, _ = d8_in_s4()
    V = klein_v(G)
    assert normalizer(G, V).order == 24
    assert centralizer(G, V) == V
    assert center(G).order == 1


def test_subgroups_up_to_conjugacy_counts():
    G, D8 = d8_in_s4()
    reps = subgroups_up_to_conjugacy(D8)
    # D8 subgroup classes: 1, Z, 2 reflection classes, V, V', C4, D8
    assert len(reps) == 8
    trivial = closure([], degree=3)
    assert len(subgroups_up_to_conjugacy(trivial)) == 1
    C3 = closure([Perm.from_cycles(3, (0, 1, 2))])
    assert len(subgroups_up_to_conjugacy(C3)) == 2


def test_conjugacy_classes_partition():
    G, D8 = d8_in_s4()
    classes = conjugacy_classes_of_subgroups(G)
    assert sum(len(c) for c in classes) == len(all_subgroups(G))


def test_automorphisms_d8():
    _, D8 = d8_in_s4()
    auts = automorphisms(D8)
    assert len(auts) == 8
    # closed under composition and inverse
    keys = {a.graph_key() for a in auts}
    for a in auts:
        assert a.inverse().graph_key() in keys
        for b in auts:
            assert a.compose(b).graph_key() in keys


def test_automorphisms_klein_and_trivial():
    G = closure([Perm.from_cycles(4, (0, 1)), Perm.from_cycles(4, (2, 3))])
    assert len(automorphisms(G)) == 6  # GL_2(F_2)
    assert len(automorphisms(closure([], degree=2))) == 1


def test_normal_p_complement():
    C6 = closure([Perm.from_cycles(5, (0, 1), (2, 3, 4))])
    K = normal_p_complement(C6, 2)
    assert K is not None and K.order == 3

    S3 = closure([Perm.from_cycles(3, (0, 1, 2)), Perm.from_cycles(3, (0, 1))])
    assert normal_p_complement(S3, 3) is None
    K2 = normal_p_complement(S3, 2)
    assert K2 is not None and K2.order == 3


def test_quotient_s4_by_v():
    G = s4()
    V = klein_v(G)
    res = quotient(G, V)
    assert res.table.order == 6
    assert res.projection.kernel() == V
    # isomorphic to S3
    S3 = closure([Perm.from_cycles(3, (0, 1, 2)), Perm.from_cycles(3, (0, 1))])
    t3, _ = table_from_group(S3.elements, S3.mul)
    assert isomorphisms(res.table, t3, limit=1)


def test_quotient_degenerate():
    G = s4()
    whole = quotient(G, G.full_subgroup())
    assert whole.table.order == 1
    res = quotient(G, Subgroup(G, [G.identity]))
    assert res.table.order == 24


def test_quotient_requires_normal():
    G = s4()
    H = subgroup_closure(G, [Perm.from_cycles(4, (0, 1))])
    with pytest.raises(ValueError):
        quotient(G, H)


def test_lagrange_everywhere():
    G, D8 = d8_in_s4()
    for H in all_subgroups(D8):
        assert D8.order % H.order == 0


def test_table_validation_rejects_bad_tables():
    with pytest.raises(ValueError):
        FiniteGroupTable(["e", "a"], [[0, 1], [1, 1]])


def test_o_p():
    G = s4()
    V = klein_v(G)
    assert o_p(G, 2) == V
    S3 = closure([Perm.from_cycles(3, (0, 1, 2)), Perm.from_cycles(3, (0, 1))])
    assert o_p(S3, 3).order == 3
    assert o_p(S3, 2).order == 1


def test_transporter_different_cycle_types_empty():
    G, D8 = d8_in_s4()
    V = klein_v(G)
    Vp = subgroup_closure(G, [Perm.from_cycles(4, (0, 2)), Perm.from_cycles(4, (1, 3))])
    assert transporter(G, Vp, V) == []
    assert len(transporter(G, V, V)) == 24


def test_hom_from_gen_images():
    G = s4()
    r = Perm.from_cycles(4, (0, 1, 2, 3))
    t = Perm.from_cycles(4, (0, 1))
    h = GroupHom.from_gen_images(G, G, [r, t], [r.inverse(), t])
    assert h is None or all(h(G.mul(a, b)) == G.mul(h(a), h(b)) for a in G.elements for b in G.elements)


def test_p_part():
    assert p_part(24, 2) == 8
    assert p_part(24, 3) == 3
    assert p_part(24, 5) == 1
