"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s`.  Every tolerance is exact;
the runtime bounds are asserted against wall-clock time.
"""

import itertools
import random
import time

from flab.amalgam import LIBMAN_SEELIGER, ROBINSON, amalgam_center, build_amalgam, build_setup, verify_fusion
from flab.autos import (
    exact_sequence_report,
    homomorphism_properties,
    itworks_check,
    only2_applies,
    verify_split,
)
from flab.cli import entry_stack
from flab.fusion import analyze, check_saturation
from flab.groups import closure, isomorphisms, table_from_group
from flab.linking import center_functor, constant_functor, higher_limits, inverse_limit, orbit_category
from flab.zlinalg import FiniteAbelian


def _report(number: int, label: str, ok: bool, elapsed: float, budget: float) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"criterion {number:2d} [{label}]: {status} ({elapsed:.2f}s, budget {budget:.0f}s)")
    assert ok, f"criterion {number} failed"
    assert elapsed < budget, f"criterion {number} exceeded its {budget}s budget ({elapsed:.2f}s)"


# -- criterion 1: fusion analysis against an independent oracle --------------


def _oracle_s4_centric_radical():
    """Exhaustive scan of the order-8 Sylow inside the symmetric group on four
    points, written with nothing but tuples; kept independent of the library."""

    def mul(p, q):
        return tuple(p[i] for i in q)

    def inv(p):
        out = [0] * 4
        for i, v in enumerate(p):
            out[v] = i
        return tuple(out)

    e = (0, 1, 2, 3)
    S4 = [tuple(p) for p in itertools.permutations(range(4))]

    def close(gens):
        els = {e}
        frontier = [e]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = mul(x, g)
                    if y not in els:
                        els.add(y)
                        new.append(y)
            frontier = new
        return els

    D8 = close([(1, 2, 3, 0), (2, 1, 0, 3)])
    assert len(D8) == 8
    members = sorted(D8)
    subgroups = []
    for k in (1, 2, 4, 8):
        for comb in itertools.combinations(members, k):
            ss = set(comb)
            if e in ss and all(mul(a, b) in ss for a in ss for b in ss):
                subgroups.append(frozenset(ss))

    def conj(g, H):
        gi = inv(g)
        return frozenset(mul(mul(g, h), gi) for h in H)

    sub_set = set(subgroups)
    classes = []
    remaining = set(subgroups)
    while remaining:
        H = next(iter(remaining))
        orbit = {conj(g, H) for g in S4}
        inside = orbit & sub_set
        remaining -= inside
        classes.append(inside)

    def centralizer_in(big, H):
        return {g for g in big if all(mul(g, h) == mul(h, g) for h in H)}

    def is_centric(cls):
        return all(centralizer_in(D8, H) <= H for H in cls)

    def is_radical(H):
        N = {g for g in S4 if conj(g, H) == H}
        C = centralizer_in(S4, H)
        K = set()
        for h in H:
            for c in C:
                K.add(mul(h, c))
        K = close(list(K))
        cosets = []
        seen = set()
        for n in sorted(N):
            if n in seen:
                continue
            coset = frozenset(mul(n, k) for k in K)
            seen |= coset
            cosets.append(coset)
        reps = [min(c) for c in cosets]
        idx = {c: i for i, c in enumerate(cosets)}

        def cmul(i, j):
            prod = mul(reps[i], reps[j])
            return next(k for k, c in enumerate(cosets) if prod in c)

        n = len(cosets)
        # a nontrivial normal subgroup of 2-power order kills radicality
        elements = list(range(n))
        for k in (2, 4, 8):
            if n % k:
                continue
            for comb in itertools.combinations(elements, k):
                ss = set(comb)
                if idx[next(c for c in cosets if e in c)] not in ss:
                    continue
                if any(cmul(a, b) not in ss for a in ss for b in ss):
                    continue
                if all(cmul(cmul(g, a), _cinv(cmul, n, g)) in ss for g in elements for a in ss):
                    return False
        return True

    def _cinv(cmul, n, g):
        ident = next(i for i in range(n) if all(cmul(i, j) == j for j in range(n)))
        return next(h for h in range(n) if cmul(g, h) == ident)

    centric = [cls for cls in classes if is_centric(cls)]
    centric_radical = [cls for cls in centric if is_radical(next(iter(cls)))]
    return D8, centric, centric_radical


def test_criterion_01_fusion_analysis_oracle():
    t0 = time.time()
    D8, centric, centric_radical = _oracle_s4_centric_radical()
    assert len(centric) == 4
    assert sorted(len(next(iter(c))) for c in centric) == [4, 4, 4, 8]
    assert len(centric_radical) == 2
    cr_orders = sorted(len(next(iter(c))) for c in centric_radical)
    assert cr_orders == [4, 8]
    v_class = next(c for c in centric_radical if len(next(iter(c))) == 4)
    v = next(iter(v_class))
    # the radical Klein four is the one made of double transpositions
    assert all(p == (0, 1, 2, 3) or sorted(i for i in range(4) if p[i] != i) == [0, 1, 2, 3] for p in v)

    stack = entry_stack("s4-d8")
    rep = analyze(stack.fusion)
    assert rep.centric_class_count() == len(centric) == 4
    assert rep.centric_radical_class_count() == len(centric_radical) == 2
    lib_centric_orders = sorted(r["order"] for r in rep.rows if r["centric"])
    assert lib_centric_orders == sorted(len(next(iter(c))) for c in centric)
    lib_cr_orders = sorted(r["order"] for r in rep.rows if r["centric"] and r["radical"])
    assert lib_cr_orders == cr_orders
    _report(1, "fusion analysis vs oracle", True, time.time() - t0, 5)


def test_criterion_02_saturation():
    t0 = time.time()
    ok = True
    for name in ("s4-d8", "a6-d8", "pgl2-9", "inner-d8"):
        rep = check_saturation(entry_stack(name).fusion)
        ok = ok and rep.passed
        assert any("vacuous" in note for note in rep.notes)
    _report(2, "saturation on the catalog", ok, time.time() - t0, 60)


def test_criterion_03_amalgam_collapse():
    t0 = time.time()
    stack = entry_stack("s4-d8", variant=ROBINSON)
    G = stack.amalgam
    words = G.all_elements()
    ok = len(words) == 24 and len({w.key() for w in words}) == 24
    table, _ = table_from_group([w.value for w in words], G.hub_group.mul)
    from flab.groups import Perm

    S4 = closure([Perm.from_cycles(4, (0, 1, 2, 3)), Perm.from_cycles(4, (0, 1))])
    t2, _ = table_from_group(S4.elements, S4.mul)
    ok = ok and bool(isomorphisms(table, t2, limit=1))
    _report(3, "collapse to the symmetric group", ok, time.time() - t0, 5)


def test_criterion_04_normal_form_laws():
    t0 = time.time()
    stack = entry_stack("a6-d8")
    G = stack.amalgam
    assert G.hub_group.order == 24 and len(G.leaves) == 1  # S4 *_{D8} S4
    rng = random.Random(20240817)
    words = [G.random_word(rng, rng.randrange(0, 7)) for _ in range(10_000)]
    ok = True
    for i in range(0, len(words) - 2, 3):
        a, b, c = words[i], words[i + 1], words[i + 2]
        ok = ok and (a * b) * c == a * (b * c)
    for w in words:
        ok = ok and w * w.inverse() == G.identity()
        ok = ok and G.reduce(w.letters()) == w
    long_words = 0
    for w in words:
        if w.length() >= 2:
            long_words += 1
            ok = ok and G.element_of_s(w) is None
    assert long_words > 500
    _report(4, "normal form laws and Britton", ok, time.time() - t0, 30)


def test_criterion_05_fusion_verification():
    t0 = time.time()
    ok = True
    for name in ("s4-d8", "a6-d8", "pgl2-9"):
        for variant in (ROBINSON, LIBMAN_SEELIGER):
            stack = entry_stack(name, variant=variant)
            rep = verify_fusion(stack.amalgam)
            ok = ok and rep["equal"]
    s4 = entry_stack("s4-d8")
    broken = build_setup(s4.fusion, s4.linking, (s4.fusion.canon(s4.fusion.S),), ROBINSON, require_controlling=False)
    neg = verify_fusion(build_amalgam(broken))
    ok = ok and (not neg["equal"]) and neg["witness"] is not None
    _report(5, "vertex fusions generate the system", ok, time.time() - t0, 120)


def test_criterion_06_center_equals_limit():
    t0 = time.time()
    ok = True
    for name, expected in (("s4-d8", 1), ("a6-d8", 1), ("pgl2-9", 1), ("inner-d8", 2)):
        stack = entry_stack(name)
        zg = amalgam_center(stack.amalgam)
        cat, extra = orbit_category(stack.fusion)
        lim = inverse_limit(cat, center_functor(stack.fusion, cat, extra["reps"]))
        ok = ok and zg.order == lim.group.order == expected
        if lim.center_embedding is not None:
            ok = ok and zg.element_set == lim.center_embedding.element_set
    _report(6, "amalgam center equals the center limit", ok, time.time() - t0, 10)


def test_criterion_07_split_verification():
    t0 = time.time()
    ok = True
    for name in ("s4-d8", "a6-d8"):
        stack = entry_stack(name)
        rep = verify_split(stack.ctx, stack.amalgam)
        ok = ok and rep["all_split"] and rep["gamma_homomorphism"]
        ok = ok and all(row["order_independent"] for row in rep["classes"])
    _report(7, "the split through the amalgam", ok, time.time() - t0, 600)


def test_criterion_08_homomorphism_properties():
    t0 = time.time()
    ok = True
    for name in ("s4-d8", "a6-d8"):
        stack = entry_stack(name)
        rep = homomorphism_properties(stack.ctx, stack.amalgam)
        ok = ok and rep["omega_multiplicative"] and rep["omega_on_hub_conjugation"] and rep["upsilon_multiplicative"]
    _report(8, "restriction and leaf permutation are multiplicative", ok, time.time() - t0, 300)


def test_criterion_09_higher_limits():
    t0 = time.time()
    ok = True
    for name in ("s4-d8", "a6-d8", "pgl2-9", "inner-d8"):
        stack = entry_stack(name)
        cat, extra = orbit_category(stack.fusion)
        Z = center_functor(stack.fusion, cat, extra["reps"])
        lim = inverse_limit(cat, Z)
        ok = ok and higher_limits(cat, Z, 0) == lim.group
    # constant functor over a category with a terminal object has no higher limits
    s4 = entry_stack("s4-d8")
    cat, extra = orbit_category(s4.fusion)
    ZS = s4.fusion.c_s(s4.fusion.canon(s4.fusion.S))
    const = constant_functor(cat, ZS)
    ok = ok and higher_limits(cat, const, 1).is_trivial()
    ok = ok and higher_limits(cat, const, 2).is_trivial()
    # the degree-one values that feed the exact-sequence reports
    recorded = {}
    for name in ("s4-d8", "a6-d8"):
        stack = entry_stack(name)
        rep = exact_sequence_report(stack.ctx, stack.amalgam, kernel_radius=1)
        recorded[name] = rep["lim1_order"]
    ok = ok and recorded["s4-d8"] == 1 and recorded["a6-d8"] == 2
    cat6, extra6 = orbit_category(entry_stack("a6-d8").fusion)
    Z6 = center_functor(entry_stack("a6-d8").fusion, cat6, extra6["reps"])
    ok = ok and higher_limits(cat6, Z6, 1) == FiniteAbelian([2])
    _report(9, "higher limits", ok, time.time() - t0, 60)


def test_criterion_10_transporter_criterion():
    t0 = time.time()
    ok = True
    for name in ("a6-d8", "pgl2-9"):
        stack = entry_stack(name)
        rep = itworks_check(stack.ctx, stack.setup)
        assert rep["conditions"], "the condition table must be emitted"
        if name == "pgl2-9":
            ok = ok and rep["all_pass"] and only2_applies(rep)
            for row in rep["conditions"]:
                ok = ok and all(
                    row[k] for k in ("i_normalizer_of_center", "ii_selfnormalizing_sylow", "iii_index_p", "iv_transitive_on_frattini")
                )
    _report(10, "transporter-category criterion", ok, time.time() - t0, 300)
