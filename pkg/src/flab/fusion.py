"""Fusion systems over a finite p-group S.

A fusion system is stored through its morphism sets into S: for each subgroup
P <= S the set Hom(P, S) of injective homomorphisms that belong to the system,
each kept as a full element-level map.  Hom(P, Q) is then the subset of maps
with image inside Q.  Group-realized systems compute these sets by scanning the
ambient group; generated systems close a set of seed morphisms under
composition, restriction and inversion of isomorphisms.  Both shapes share one
representation, so saturation checks, controlling families and equality tests
never care where a system came from.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    all_subgroups,
    centralizer,
    is_prime,
    normalizer,
    o_p,
    p_part,
    quotient,
    subgroup_closure,
    sylow,
    table_from_group,
)


class FusionError(Exception):
    pass


def promote_to_subgroup(S) -> Subgroup:
    if isinstance(S, Subgroup):
        return S
    return S.full_subgroup()


class FusionSystem:
    """A fusion system over the finite p-group `sylow`."""

    def __init__(self, sylow_subgroup: Subgroup, p: int, provenance: str, ambient: Optional[FiniteGroup] = None):
        if not is_prime(p):
            raise FusionError(f"{p} is not prime")
        self.S = promote_to_subgroup(sylow_subgroup)
        if not self.S.is_p_group(p):
            raise FusionError("the base group of a fusion system must be a p-group")
        self.p = p
        self.provenance = provenance
        self.ambient = ambient
        self._subgroups: Optional[tuple[Subgroup, ...]] = None
        self._canon: Optional[dict] = None
        self._maps_cache: dict = {}
        self._aut_table_cache: dict = {}
        self._nfs_cache: dict = {}

    # -- subgroup bookkeeping ------------------------------------------------

    def subgroups(self) -> tuple[Subgroup, ...]:
        if self._subgroups is None:
            subs = all_subgroups(self.S)
            self._subgroups = tuple(subs)
            self._canon = {H.element_set: H for H in subs}
        return self._subgroups

    def canon(self, P: Subgroup) -> Subgroup:
        """The canonical instance of a subgroup of S (errors if P is not one)."""
        self.subgroups()
        got = self._canon.get(frozenset(P.elements) if not isinstance(P, Subgroup) else P.element_set)
        if got is None:
            raise FusionError("not a subgroup of S")
        return got

    def subgroup_from_elements(self, elts: Iterable) -> Subgroup:
        self.subgroups()
        got = self._canon.get(frozenset(elts))
        if got is None:
            raise FusionError("element set is not a subgroup of S")
        return got

    # -- morphism oracle -----------------------------------------------------

    def maps_from(self, P: Subgroup) -> tuple[GroupHom, ...]:
        """Hom(P, S): every morphism of the system with domain P, into S."""
        P = self.canon(P)
        cached = self._maps_cache.get(P.element_set)
        if cached is None:
            cached = self._compute_maps_from(P)
            self._maps_cache[P.element_set] = cached
        return cached

    def _compute_maps_from(self, P: Subgroup) -> tuple[GroupHom, ...]:
        raise NotImplementedError

    def hom(self, P: Subgroup, Q: Subgroup) -> tuple[GroupHom, ...]:
        """Hom(P, Q), each morphism corestricted to target Q."""
        Q = self.canon(Q)
        qset = Q.element_set
        out = []
        for f in self.maps_from(P):
            if set(f.mapping.values()) <= qset:
                out.append(GroupHom(f.source, Q, f.mapping))
        return tuple(out)

    def isos(self, P: Subgroup, Q: Subgroup) -> tuple[GroupHom, ...]:
        Q = self.canon(Q)
        return tuple(f for f in self.hom(P, Q) if set(f.mapping.values()) == Q.element_set)

    # -- conjugacy -----------------------------------------------------------

    def f_class(self, P: Subgroup) -> tuple[Subgroup, ...]:
        """The full conjugacy class of P inside S under this system."""
        P = self.canon(P)
        images = {self.subgroup_from_elements(frozenset(f.mapping.values())) for f in self.maps_from(P)}
        return tuple(sorted(images, key=lambda H: H.sort_key()))

    def are_conjugate(self, P: Subgroup, Q: Subgroup) -> bool:
        return self.canon(Q) in self.f_class(P)

    def f_classes(self) -> tuple[tuple[Subgroup, ...], ...]:
        seen = set()
        out = []
        for P in self.subgroups():
            if P.element_set in seen:
                continue
            cls = self.f_class(P)
            for Q in cls:
                seen.add(Q.element_set)
            out.append(cls)
        return tuple(out)

    # -- local structure -----------------------------------------------------

    def n_s(self, P: Subgroup) -> Subgroup:
        return normalizer(self.S, self.canon(P))

    def c_s(self, P: Subgroup) -> Subgroup:
        return centralizer(self.S, self.canon(P))

    def is_fully_normalized(self, P: Subgroup) -> bool:
        P = self.canon(P)
        n = self.n_s(P).order
        return all(self.n_s(Q).order <= n for Q in self.f_class(P))

    def is_fully_centralized(self, P: Subgroup) -> bool:
        P = self.canon(P)
        c = self.c_s(P).order
        return all(self.c_s(Q).order <= c for Q in self.f_class(P))

    def is_centric(self, P: Subgroup) -> bool:
        return all(self.c_s(Q).element_set <= Q.element_set for Q in self.f_class(self.canon(P)))

    def aut_table(self, P: Subgroup):
        """Aut(P) in this system as a table group; returns (table, homs, index)."""
        P = self.canon(P)
        cached = self._aut_table_cache.get(P.element_set)
        if cached is None:
            homs = list(self.hom(P, P))
            homs.sort(key=lambda h: h.graph_key())
            table, index = table_from_group(
                homs, lambda a, b: _find_hom(homs, a.compose(b)), labels=[f"a{i}" for i in range(len(homs))]
            )
            cached = (table, tuple(homs), {h.graph_key(): i for i, h in enumerate(homs)})
            self._aut_table_cache[P.element_set] = cached
        return cached

    def inner_auts(self, P: Subgroup) -> tuple[GroupHom, ...]:
        P = self.canon(P)
        return tuple(_conj_hom(self.S, x, P, P) for x in P.elements)

    def aut_s(self, P: Subgroup) -> tuple[GroupHom, ...]:
        """Aut_S(P): automorphisms of P induced by N_S(P)-conjugation."""
        P = self.canon(P)
        seen = {}
        for g in self.n_s(P).elements:
            h = _conj_hom(self.S, g, P, P)
            seen.setdefault(h.graph_key(), h)
        return tuple(seen[k] for k in sorted(seen))

    def out_table(self, P: Subgroup):
        """Out(P) = Aut(P)/Inn(P) as a table group; returns (table, projection index map)."""
        table, homs, index = self.aut_table(P)
        inner = {index[h.graph_key()] for h in self.inner_auts(P)}
        res = quotient(table, Subgroup(table, inner))
        return res

    def is_radical(self, P: Subgroup) -> bool:
        res = self.out_table(self.canon(P))
        return o_p(res.table, self.p).order == 1

    def aut_order(self, P: Subgroup) -> int:
        return len(self.hom(self.canon(P), self.canon(P)))

    def out_order(self, P: Subgroup) -> int:
        P = self.canon(P)
        return self.aut_order(P) // len({h.graph_key() for h in self.inner_auts(P)})

    def key(self) -> tuple:
        return (self.S.key(), self.p)

    def __repr__(self) -> str:
        return f"FusionSystem(|S|={self.S.order}, p={self.p}, {self.provenance})"


def _find_hom(homs: Sequence[GroupHom], h: GroupHom) -> GroupHom:
    key = h.graph_key()
    for g in homs:
        if g.graph_key() == key:
            return g
    raise FusionError("morphism set is not closed under composition")


def _conj_hom(S: Subgroup, g, P: Subgroup, target: Subgroup) -> GroupHom:
    return GroupHom(P, target, {x: S.mul(S.mul(g, x), S.inv(g)) for x in P.elements})


class GroupFusionSystem(FusionSystem):
    """F_S(G): morphisms are conjugations by ambient group elements."""

    def __init__(self, G: FiniteGroup, S: Subgroup, p: int):
        if S.order != p_part(G.order, p) or not S.is_p_group(p):
            raise FusionError("S is not a Sylow p-subgroup of G")
        super().__init__(S, p, "group-realized", ambient=G)

    def _compute_maps_from(self, P: Subgroup) -> tuple[GroupHom, ...]:
        G = self.ambient
        gens = P.gens()
        sset = self.S.element_set
        seen: dict = {}
        for g in G.elements:
            gi = G.inv(g)
            if all(G.mul(G.mul(g, h), gi) in sset for h in gens):
                mapping = {x: G.mul(G.mul(g, x), gi) for x in P.elements}
                key = tuple(sorted((P.element_key(a), P.element_key(b)) for a, b in mapping.items()))
                if key not in seen:
                    seen[key] = GroupHom(P, self.S, mapping)
        return tuple(seen[k] for k in sorted(seen))


class StoredFusionSystem(FusionSystem):
    """A fusion system given by explicit morphism sets (generated or from a file)."""

    def __init__(self, S: Subgroup, p: int, maps: dict, provenance: str = "generated"):
        super().__init__(S, p, provenance)
        self._stored = maps

    def _compute_maps_from(self, P: Subgroup) -> tuple[GroupHom, ...]:
        got = self._stored.get(P.element_set, ())
        return tuple(sorted(got, key=lambda h: h.graph_key()))


def fusion_from_group(G: FiniteGroup, S: Optional[Subgroup] = None, p: int = 2) -> GroupFusionSystem:
    """F_S(G) for S a Sylow p-subgroup of G (computed when not supplied)."""
    if S is None:
        S = sylow(G, p)
    return GroupFusionSystem(G, S, p)


def inner_fusion(S, p: int) -> GroupFusionSystem:
    """F_S(S): the fusion system of a p-group on itself."""
    S = promote_to_subgroup(S)
    return GroupFusionSystem(S, S.full_subgroup() if not isinstance(S, Subgroup) else S, p)


def f_conjugates(F: FusionSystem, P: Subgroup) -> tuple[Subgroup, ...]:
    return F.f_class(P)


def is_fully_normalized(F: FusionSystem, P: Subgroup) -> bool:
    return F.is_fully_normalized(P)


def is_fully_centralized(F: FusionSystem, P: Subgroup) -> bool:
    return F.is_fully_centralized(P)


def is_f_centric(F: FusionSystem, P: Subgroup) -> bool:
    return F.is_centric(P)


def is_f_radical(F: FusionSystem, P: Subgroup) -> bool:
    return F.is_radical(P)


# ---------------------------------------------------------------------------
# generated fusion systems


def generated_fusion(S, generators: Iterable[GroupHom], p: int = 2) -> StoredFusionSystem:
    """The smallest fusion system over S containing all generator morphisms.

    Seeds are the inner conjugation maps plus the given generators; the closure
    runs composition, restriction (to maximal subgroups, which reaches all) and
    inversion of isomorphisms to a fixpoint.  Termination: the morphism sets
    live inside the finite union of Inj(P, S).
    """
    S = promote_to_subgroup(S)
    subgroups = all_subgroups(S)
    canon = {H.element_set: H for H in subgroups}
    below: dict = {}
    for P in subgroups:
        below[P.element_set] = [Q for Q in subgroups if Q.element_set < P.element_set and Q.order * _min_index(P, Q) == P.order]

    maps: dict = {H.element_set: {} for H in subgroups}

    def add(P: Subgroup, mapping: dict) -> Optional[GroupHom]:
        key = tuple(sorted((P.element_key(a), P.element_key(b)) for a, b in mapping.items()))
        bucket = maps[P.element_set]
        if key in bucket:
            return None
        h = GroupHom(P, S, mapping)
        bucket[key] = h
        return h

    work: list[GroupHom] = []

    for P in subgroups:
        for g in S.elements:
            h = add(P, {x: S.mul(S.mul(g, x), S.inv(g)) for x in P.elements})
            if h is not None:
                work.append(h)

    for gen in generators:
        src_set = frozenset(gen.mapping.keys())
        img_set = frozenset(gen.mapping.values())
        if src_set not in canon:
            raise FusionError("generator domain is not a subgroup of S")
        if not gen.is_injective() or not img_set <= S.element_set:
            raise FusionError("generator must be injective and land inside S")
        P = canon[src_set]
        h = add(P, dict(gen.mapping))
        if h is not None:
            work.append(h)

    while work:
        f = work.pop()
        P = canon[frozenset(f.mapping.keys())]
        img = frozenset(f.mapping.values())
        # inversion of the iso part P -> f(P)
        Q = canon[img]
        h = add(Q, {b: a for a, b in f.mapping.items()})
        if h is not None:
            work.append(h)
        # restriction to maximal subgroups
        for R in below[P.element_set]:
            h = add(R, {x: f.mapping[x] for x in R.elements})
            if h is not None:
                work.append(h)
        # composition: g after f, for g defined on a subgroup containing f(P)
        for Qbig in subgroups:
            if img <= Qbig.element_set:
                for g in list(maps[Qbig.element_set].values()):
                    h = add(P, {x: g.mapping[y] for x, y in f.mapping.items()})
                    if h is not None:
                        work.append(h)
        # composition: f after g, for g landing inside P's domain
        for Qsmall in subgroups:
            for g in list(maps[Qsmall.element_set].values()):
                if frozenset(g.mapping.values()) <= P.element_set:
                    h = add(Qsmall, {x: f.mapping[y] for x, y in g.mapping.items()})
                    if h is not None:
                        work.append(h)

    stored = {k: tuple(sorted(v.values(), key=lambda h: h.graph_key())) for k, v in maps.items()}
    return StoredFusionSystem(S, p, stored)


def _min_index(P: Subgroup, Q: Subgroup) -> int:
    # Q maximal in P iff index is prime; for p-groups maximal means index p.
    # Restricting to maximal subgroups only is enough for closure purposes.
    return P.order // Q.order


def fusion_equals(F1: FusionSystem, F2: FusionSystem, witness: bool = False):
    """Morphism-set equality over all subgroup pairs (compared as graphs)."""
    if F1.S.element_set != F2.S.element_set or F1.p != F2.p:
        return (False, "different base data") if witness else False
    for P in F1.subgroups():
        k1 = {f.graph_key() for f in F1.maps_from(P)}
        k2 = {f.graph_key() for f in F2.maps_from(P)}
        if k1 != k2:
            if witness:
                diff = sorted(k1 ^ k2)[0]
                side = "first" if diff in k1 else "second"
                return False, {"subgroup_order": P.order, "only_in": side, "graph": diff}
            return False
    return (True, None) if witness else True


# ---------------------------------------------------------------------------
# saturation


class SaturationReport:
    def __init__(self, passed: bool, axiom1: list, axiom2: list, notes: list, counterexample=None):
        self.passed = passed
        self.axiom1 = axiom1
        self.axiom2 = axiom2
        self.notes = notes
        self.counterexample = counterexample

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "axiom_I_checked": len(self.axiom1),
            "axiom_II_checked": len(self.axiom2),
            "notes": self.notes,
            "counterexample": self.counterexample,
        }


def check_saturation(F: FusionSystem) -> SaturationReport:
    """Exhaustive saturation test.

    Axiom (I) is checked at every fully normalized class representative: fully
    centralized, and the S-induced outer automorphisms form a Sylow p-subgroup
    of the (finite) outer automorphism group.  Axiom (II) is checked for every
    morphism into a fully centralized image.  The continuity axiom is vacuous
    over a finite group and is reported as such rather than silently dropped.
    """
    p = F.p
    axiom1 = []
    axiom2 = []
    counterexample = None

    for cls in F.f_classes():
        for P in cls:
            if not F.is_fully_normalized(P):
                continue
            ok_fc = F.is_fully_centralized(P)
            aut_n = F.aut_order(P)
            inn_n = len({h.graph_key() for h in F.inner_auts(P)})
            aut_s = len({h.graph_key() for h in F.aut_s(P)})
            out_f = aut_n // inn_n
            out_s = aut_s // inn_n
            sylow_ok = out_s == p_part(out_f, p)
            entry = {"order": P.order, "fully_centralized": ok_fc, "out_f": out_f, "out_s": out_s, "sylow_ok": sylow_ok}
            axiom1.append(entry)
            if not (ok_fc and sylow_ok) and counterexample is None:
                counterexample = {"axiom": "I", **entry}

    for P in F.subgroups():
        aut_s_graphs_cache: dict = {}
        for f in F.maps_from(P):
            img = F.subgroup_from_elements(frozenset(f.mapping.values()))
            if not F.is_fully_centralized(img):
                continue
            ns = F.n_s(P)
            aut_s_target = aut_s_graphs_cache.get(img.element_set)
            if aut_s_target is None:
                aut_s_target = {h.graph_key() for h in F.aut_s(img)}
                aut_s_graphs_cache[img.element_set] = aut_s_target
            finv = {b: a for a, b in f.mapping.items()}
            nf_elements = []
            for g in ns.elements:
                conj = {y: f.mapping[F.S.conj(g, finv[y])] for y in img.elements}
                key = tuple(sorted((P.element_key(a), P.element_key(b)) for a, b in conj.items()))
                if key in aut_s_target:
                    nf_elements.append(g)
            Nf = Subgroup(F.S.ambient if isinstance(F.S, Subgroup) else F.S, nf_elements)
            Nf = F.subgroup_from_elements(Nf.element_set)
            extended = False
            fkey = f.graph_key()
            for g in F.maps_from(Nf):
                if tuple(sorted((P.element_key(a), P.element_key(g.mapping[a])) for a in P.elements)) == tuple(
                    sorted((P.element_key(a), P.element_key(b)) for a, b in f.mapping.items())
                ):
                    extended = True
                    break
            axiom2.append({"domain_order": P.order, "nf_order": Nf.order, "extended": extended})
            if not extended and counterexample is None:
                counterexample = {
                    "axiom": "II",
                    "domain_order": P.order,
                    "nf_order": Nf.order,
                    "morphism": fkey,
                }

    notes = [
        "axiom III vacuous: S is finite, every ascending chain of subgroups stabilizes",
        "order comparisons reduce to cardinality: the rank part of the order pair is zero at finite order",
    ]
    passed = counterexample is None
    return SaturationReport(passed, axiom1, axiom2, notes, counterexample)


# ---------------------------------------------------------------------------
# normalizer systems, controlling families


def normalizer_fusion_system(F: FusionSystem, P: Subgroup) -> StoredFusionSystem:
    """The normalizer system at a fully normalized P, over N_S(P).

    Seeded by restrictions of morphisms that extend over P and fix it, then
    closed to a fusion system.  The image of such a restriction normalizes the
    image of P, so it automatically lands in N_S(P).
    """
    P = F.canon(P)
    cached = F._nfs_cache.get(P.element_set)
    if cached is not None:
        return cached
    if not F.is_fully_normalized(P):
        raise FusionError("normalizer fusion system needs a fully normalized subgroup")
    N = F.subgroup_from_elements(F.n_s(P).element_set)
    pset = P.element_set
    seeds = []
    for R in all_subgroups(N):
        RP = F.subgroup_from_elements(subgroup_closure(F.S, list(R.elements) + list(P.elements)).element_set)
        Rsub = F.canon(R)
        for ftilde in F.maps_from(RP):
            if {ftilde.mapping[x] for x in pset} == pset:
                seeds.append(GroupHom(Rsub, F.S, {x: ftilde.mapping[x] for x in Rsub.elements}))
    out = generated_fusion(N, seeds, F.p)
    F._nfs_cache[P.element_set] = out
    return out


def is_normal_in_f(F: FusionSystem, P: Subgroup) -> bool:
    P = F.canon(P)
    if F.n_s(P).order != F.S.order:
        return False
    return fusion_equals(F, normalizer_fusion_system(F, P))


def centric_radical_classes(F: FusionSystem) -> tuple[tuple[Subgroup, ...], ...]:
    out = []
    for cls in F.f_classes():
        rep = cls[0]
        if F.is_centric(rep) and F.is_radical(rep):
            out.append(cls)
    return tuple(out)


def controlling_family(F: FusionSystem, complete: bool = True) -> tuple[Subgroup, ...]:
    """A fusion controlling family {P0 = S, P1, ..., Pk}.

    With `complete`, exactly one fully normalized representative is chosen per
    class of centric radical subgroups under the normalizer system at S;
    otherwise one per conjugacy class of the full system.  Representative
    choice is deterministic: largest |N_S(P)| first, then element order.
    """
    S = F.canon(F.S.full_subgroup() if not isinstance(F.S, Subgroup) else F.S)
    cr: list[Subgroup] = []
    for cls in centric_radical_classes(F):
        cr.extend(cls)
    if not any(P.element_set == S.element_set for P in cr):
        raise FusionError("S is not centric radical; the fusion system cannot be saturated")

    if complete:
        nfs = normalizer_fusion_system(F, S)
        classes: list[tuple[Subgroup, ...]] = []
        seen: set = set()
        for P in cr:
            if P.element_set in seen:
                continue
            cls = nfs.f_class(nfs.subgroup_from_elements(P.element_set))
            cls = tuple(F.subgroup_from_elements(Q.element_set) for Q in cls)
            for Q in cls:
                seen.add(Q.element_set)
            classes.append(cls)
    else:
        classes = [cls for cls in centric_radical_classes(F)]

    reps = []
    for cls in classes:
        candidates = [P for P in cls if F.is_fully_normalized(P)]
        if not candidates:
            raise FusionError("a centric radical class has no fully normalized member")
        candidates.sort(key=lambda P: (-F.n_s(P).order, P.sort_key()))
        reps.append(candidates[0])

    leaves = [P for P in reps if P.element_set != S.element_set]
    leaves.sort(key=lambda P: (-P.order, P.sort_key()))
    return tuple([S] + leaves)


# ---------------------------------------------------------------------------
# reporting


class FusionReport:
    """Per-class analysis table for a fusion system."""

    def __init__(self, rows: list[dict], p: int):
        self.rows = rows
        self.p = p

    def as_dict(self) -> dict:
        return {"prime": self.p, "classes": self.rows}

    def centric_class_count(self) -> int:
        return sum(1 for r in self.rows if r["centric"])

    def centric_radical_class_count(self) -> int:
        return sum(1 for r in self.rows if r["centric"] and r["radical"])


def analyze(F: FusionSystem) -> FusionReport:
    rows = []
    for cls in F.f_classes():
        reps = sorted(cls, key=lambda P: (-F.n_s(P).order, P.sort_key()))
        P = reps[0]
        centric = F.is_centric(P)
        rows.append(
            {
                "order": P.order,
                "class_size": len(cls),
                "representative": [_json_key(P.element_key(x)) for x in P.elements],
                "fully_normalized": F.is_fully_normalized(P),
                "fully_centralized": F.is_fully_centralized(P),
                "centric": centric,
                "radical": F.is_radical(P),
                "normal": (F.n_s(P).order == F.S.order and F.is_fully_normalized(P) and is_normal_in_f(F, P)),
                "aut_order": F.aut_order(P),
                "out_order": F.out_order(P),
            }
        )
    rows.sort(key=lambda r: (-r["order"], r["representative"]))
    return FusionReport(rows, F.p)


def _json_key(key):
    return list(key) if isinstance(key, tuple) else key


# ---------------------------------------------------------------------------
# file exchange

FUSION_FORMAT = "flab-fusion-v1"


def fusion_to_data(F: FusionSystem, name: str = "fusion") -> dict:
    """A JSON-ready description: base group plus per-domain generator tables.

    Every stored morphism is written out; reloading takes the generated
    closure, which reproduces the system exactly.
    """
    from .linking import _word_table  # shared shortest-word encoding

    S = F.canon(F.S)
    gens = S.gens()
    root = S.ambient
    words = _word_table(S, gens)
    morphisms = []
    for P in F.subgroups():
        pgens = P.gens()
        for f in F.maps_from(P):
            morphisms.append({"domain": [words[g] for g in pgens], "images": [words[f.mapping[g]] for g in pgens]})
    return {
        "format": FUSION_FORMAT,
        "name": name,
        "prime": F.p,
        "sylow": {"degree": root.degree, "generators": [list(g.images) for g in gens]},
        "morphisms": morphisms,
    }


def fusion_from_data(data: dict) -> StoredFusionSystem:
    """Rebuild a fusion system from per-pair generator-image tables."""
    from .groups import Perm, closure, extend_gen_images
    from .linking import _eval_word

    if data.get("format") != FUSION_FORMAT:
        raise FusionError(f"unknown format {data.get('format')!r}")
    p = int(data["prime"])
    degree = int(data["sylow"]["degree"])
    gens = [Perm(images) for images in data["sylow"]["generators"]]
    Sgroup = closure(gens, degree=degree)
    S = Subgroup(Sgroup, Sgroup.elements, generators=tuple(gens))
    seeds = []
    for entry in data["morphisms"]:
        dom_gens = [_eval_word(gens, w, degree) for w in entry["domain"]]
        images = [_eval_word(gens, w, degree) for w in entry["images"]]
        P = subgroup_closure(S, dom_gens)
        mapping = extend_gen_images(P, S, dom_gens, images)
        if mapping is None:
            raise FusionError("a morphism table does not define a homomorphism")
        seeds.append(GroupHom(P, S, mapping))
    out = generated_fusion(S, seeds, p)
    out.provenance = "file"
    return out
