import pytest

from flab.fusion import (
    FusionError,
    analyze,
    check_saturation,
    controlling_family,
    f_conjugates,
    fusion_equals,
    fusion_from_group,
    generated_fusion,
    inner_fusion,
    is_f_centric,
    is_f_radical,
    is_fully_normalized,
    is_normal_in_f,
    normalizer_fusion_system,
)
from flab.groups import GroupHom, Perm, closure, subgroup_closure


def s4_fusion():
    G = closure([Perm.from_cycles(4, (0, 1, 2, 3)), Perm.from_cycles(4, (0, 1))])
    S = subgroup_closure(G, [Perm.from_cycles(4, (0, 1, 2, 3)), Perm.from_cycles(4, (0, 2))])
    return fusion_from_group(G, S, 2)


def a6_fusion():
    G = closure([Perm.from_cycles(6, (0, 1, 2)), Perm.from_cycles(6, (1, 2, 3, 4, 5))])
    return fusion_from_group(G, None, 2)


def _subgroup(F, *perms):
    return F.subgroup_from_elements(subgroup_closure(F.S, list(perms)).element_set)


def test_sylow_check():
    G = closure([Perm.from_cycles(4, (0, 1, 2, 3)), Perm.from_cycles(4, (0, 1))])
    bad = subgroup_closure(G, [Perm.from_cycles(4, (0, 1))])
    with pytest.raises(FusionError):
        fusion_from_group(G, bad, 2)


def test_aut_f_sizes_s4():
    F = s4_fusion()
    Z = _subgroup(F, Perm.from_cycles(4, (0, 2), (1, 3)))
    assert F.aut_order(Z) == 1
    V = _subgroup(F, Perm.from_cycles(4, (0, 1), (2, 3)), Perm.from_cycles(4, (0, 2), (1, 3)))
    assert F.aut_order(V) == 6  # full S3 on the normal Klein four
    assert F.aut_order(F.S) == 4  # Inn(D8)


def test_f_conjugates_transpositions():
    F = s4_fusion()
    P = _subgroup(F, Perm.from_cycles(4, (0, 2)))
    cls = f_conjugates(F, P)
    # the two reflection subgroups <(1 3)> and <(2 4)> fuse; double
    # transpositions have a different cycle type and stay apart
    assert len(cls) == 2
    assert f_conjugates(F, F.S) == (F.canon(F.S),)
    triv = F.subgroup_from_elements(frozenset([F.S.identity]))
    assert f_conjugates(F, triv) == (triv,)


def test_fully_normalized():
    F = s4_fusion()
    V = _subgroup(F, Perm.from_cycles(4, (0, 1), (2, 3)), Perm.from_cycles(4, (0, 2), (1, 3)))
    assert is_fully_normalized(F, V)
    assert is_fully_normalized(F, F.S)


def test_centric_radical_s4():
    F = s4_fusion()
    V = _subgroup(F, Perm.from_cycles(4, (0, 1), (2, 3)), Perm.from_cycles(4, (0, 2), (1, 3)))
    C4 = _subgroup(F, Perm.from_cycles(4, (0, 1, 2, 3)))
    assert is_f_centric(F, V) and is_f_radical(F, V)
    assert is_f_centric(F, C4) and not is_f_radical(F, C4)
    assert is_f_centric(F, F.S) and is_f_radical(F, F.S)
    Z = _subgroup(F, Perm.from_cycles(4, (0, 2), (1, 3)))
    assert not is_f_centric(F, Z)


def test_analyze_s4_counts():
    F = s4_fusion()
    rep = analyze(F)
    assert rep.centric_class_count() == 4
    assert rep.centric_radical_class_count() == 2


def test_saturation_s4_and_inner():
    assert check_saturation(s4_fusion()).passed
    S = closure([Perm.from_cycles(4, (0, 1, 2, 3)), Perm.from_cycles(4, (0, 2))])
    assert check_saturation(inner_fusion(S, 2)).passed


def test_saturation_failure_witnessed():
    # Klein four with one declared fusion a -> b and no automorphism of S
    # extending it: axiom II fails at that morphism.
    S = closure([Perm.from_cycles(4, (0, 1)), Perm.from_cycles(4, (2, 3))])
    a = Perm.from_cycles(4, (0, 1))
    b = Perm.from_cycles(4, (2, 3))
    Pa = subgroup_closure(S, [a])
    f = GroupHom(Pa, S.full_subgroup(), {S.identity: S.identity, a: b})
    F = generated_fusion(S, [f], 2)
    report = check_saturation(F)
    assert not report.passed
    assert report.counterexample["axiom"] == "II"


def test_normalizer_fusion_system_cases():
    F = s4_fusion()
    # N_F(S) is the inner fusion of D8
    NS = normalizer_fusion_system(F, F.S)
    assert fusion_equals(NS, inner_fusion(F.S, 2))
    # N_F(1) = F
    triv = F.subgroup_from_elements(frozenset([F.S.identity]))
    assert fusion_equals(normalizer_fusion_system(F, triv), F)
    # V is normal in F, C4 is not
    V = _subgroup(F, Perm.from_cycles(4, (0, 1), (2, 3)), Perm.from_cycles(4, (0, 2), (1, 3)))
    assert is_normal_in_f(F, V)
    C4 = _subgroup(F, Perm.from_cycles(4, (0, 1, 2, 3)))
    assert not is_normal_in_f(F, C4)


def test_controlling_family_s4():
    F = s4_fusion()
    fam = controlling_family(F, complete=True)
    assert len(fam) == 2
    assert fam[0] == F.canon(F.S)
    assert fam[1].order == 4
    assert fam[1].is_abelian()


def test_controlling_family_a6():
    F = a6_fusion()
    fam = controlling_family(F, complete=True)
    assert len(fam) == 3
    assert {P.order for P in fam[1:]} == {4}


def test_controlling_family_inner():
    S = closure([Perm.from_cycles(4, (0, 1, 2, 3)), Perm.from_cycles(4, (0, 2))])
    F = inner_fusion(S, 2)
    assert controlling_family(F, complete=True) == (F.canon(F.S),)


def test_generated_fusion_recovers_s4():
    F = s4_fusion()
    V = _subgroup(F, Perm.from_cycles(4, (0, 1), (2, 3)), Perm.from_cycles(4, (0, 2), (1, 3)))
    gens = list(F.hom(V, V))
    G2 = generated_fusion(F.S, gens, 2)
    ok, _ = fusion_equals(F, G2, witness=True)
    assert ok


def test_generated_fusion_idempotent_and_monotone():
    S = closure([Perm.from_cycles(4, (0, 1, 2, 3)), Perm.from_cycles(4, (0, 2))])
    F0 = inner_fusion(S, 2)
    again = generated_fusion(S, [], 2)
    assert fusion_equals(F0, again)


def test_generated_fusion_recovers_a6():
    F = a6_fusion()
    fam = controlling_family(F, complete=True)
    gens = []
    for P in fam[1:]:
        gens.extend(F.hom(P, P))
    G2 = generated_fusion(F.S, gens, 2)
    assert fusion_equals(F, G2)


def test_generated_fusion_rejects_bad_generator():
    S = closure([Perm.from_cycles(4, (0, 1, 2, 3)), Perm.from_cycles(4, (0, 2))])
    Ssub = S.full_subgroup()
    bad = GroupHom(Ssub, Ssub, {x: S.identity for x in S.elements})
    with pytest.raises(FusionError):
        generated_fusion(S, [bad], 2)


def test_fusion_json_roundtrip():
    import json

    from flab.fusion import fusion_from_data, fusion_to_data

    F = s4_fusion()
    data = fusion_to_data(F, name="s4-d8")
    F2 = fusion_from_data(json.loads(json.dumps(data)))
    ok, witness = fusion_equals(F, F2, witness=True)
    assert ok, witness


def test_fusion_json_bad_table_rejected():
    from flab.fusion import fusion_from_data, fusion_to_data

    F = s4_fusion()
    data = fusion_to_data(F)
    data["morphisms"] = [{"domain": [[1]], "images": [[1, 1]]}]  # order drops: no hom
    with pytest.raises(FusionError):
        fusion_from_data(data)
