"""Transporter categories, centric linking systems and limits over finite categories.

A linking system is stored as a fully tabulated finite category: morphisms are
integer ids with a composition dictionary, plus the two structure maps (delta
from the transporter category of S, rho onto the fusion system).  The
group-realized construction Mor(P,Q) = N_G(P,Q)/C'_G(P) and the file-loaded
abstract construction produce the same tables, so every consumer downstream
(amalgams, self-equivalences, limits) is backend-agnostic.

Validated axioms follow the transporter-system list: object closure (A1), the
free center action with rho as orbit map (A2), injectivity and conjugation
compatibility of delta (B), the naturality square (C), the Sylow condition (I)
and the extension condition (II).  The continuity axiom (III) holds vacuously
at finite order and the reports say so explicitly.
"""

from __future__ import annotations

import json
from typing import Optional, Sequence

from .fusion import FusionSystem, fusion_from_group, generated_fusion
from .groups import (
    FiniteGroup,
    FiniteGroupTable,
    GroupHom,
    Perm,
    Subgroup,
    all_subgroups,
    center,
    centralizer,
    closure,
    extend_gen_images,
    normal_p_complement,
    p_part,
    subgroup_closure,
    table_from_group,
    transporter,
)
from .zlinalg import FiniteAbelian, homology_of_pair


class LinkingError(Exception):
    pass


class AxiomFailure(LinkingError):
    def __init__(self, axiom: str, witness):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"axiom ({axiom}) fails: {witness}")


# ---------------------------------------------------------------------------
# generic finite categories


class FiniteCategory:
    """A finite category with integer morphism ids and explicit composition."""

    def __init__(self, objects: Sequence, mor_dom: Sequence[int], mor_cod: Sequence[int], comp: dict, identities: Sequence[int], validate: bool = True):
        self.objects = tuple(objects)
        self.mor_dom = tuple(mor_dom)
        self.mor_cod = tuple(mor_cod)
        self.comp = dict(comp)
        self.identities = tuple(identities)
        self._by_pair: dict = {}
        for m in range(len(self.mor_dom)):
            self._by_pair.setdefault((self.mor_dom[m], self.mor_cod[m]), []).append(m)
        if validate:
            self._validate()

    @property
    def morphism_count(self) -> int:
        return len(self.mor_dom)

    def mor(self, i: int, j: int) -> tuple[int, ...]:
        return tuple(self._by_pair.get((i, j), ()))

    def compose(self, f: int, g: int) -> int:
        """f after g."""
        return self.comp[(f, g)]

    def is_identity(self, m: int) -> bool:
        return m in self.identities

    def _validate(self) -> None:
        n_obj = len(self.objects)
        if len(self.identities) != n_obj:
            raise LinkingError("one identity per object required")
        for i, e in enumerate(self.identities):
            if self.mor_dom[e] != i or self.mor_cod[e] != i:
                raise LinkingError(f"identity of object {i} has wrong endpoints")
        for m in range(len(self.mor_dom)):
            if self.comp.get((m, self.identities[self.mor_dom[m]])) != m:
                raise LinkingError(f"right identity law fails at morphism {m}")
            if self.comp.get((self.identities[self.mor_cod[m]], m)) != m:
                raise LinkingError(f"left identity law fails at morphism {m}")
        for f in range(len(self.mor_dom)):
            for g in range(len(self.mor_dom)):
                if self.mor_cod[g] == self.mor_dom[f] and (f, g) not in self.comp:
                    raise LinkingError(f"composition missing for composable pair ({f},{g})")
        for (f, g), h in self.comp.items():
            if self.mor_cod[g] != self.mor_dom[f]:
                raise LinkingError("composition defined on a non-composable pair")
            if self.mor_dom[h] != self.mor_dom[g] or self.mor_cod[h] != self.mor_cod[f]:
                raise LinkingError("composite has wrong endpoints")
        # associativity over all composable triples
        for (f, g) in list(self.comp):
            for h in range(len(self.mor_dom)):
                if self.mor_cod[h] == self.mor_dom[g]:
                    left = self.comp.get((self.comp[(f, g)], h))
                    right = self.comp.get((f, self.comp.get((g, h))))
                    if left is None or right is None or left != right:
                        raise LinkingError(f"associativity fails at ({f},{g},{h})")


# ---------------------------------------------------------------------------
# transporter category


class TransporterCategory:
    """T_H(G): morphisms P -> Q are the ambient elements conjugating P into Q."""

    def __init__(self, G: FiniteGroup, S: Subgroup, objects: Sequence[Subgroup], fusion: Optional[FusionSystem] = None):
        self.G = G
        self.S = S
        self.objects = tuple(sorted(objects, key=lambda H: (-H.order, H.sort_key())))
        self.fusion = fusion
        if fusion is not None:
            obj_sets = {P.element_set for P in self.objects}
            for P in self.objects:
                for Q in fusion.f_class(P):
                    if Q.element_set not in obj_sets:
                        raise AxiomFailure("A1", "object collection is not closed under conjugacy")
                for R in all_subgroups(S):
                    if P.element_set <= R.element_set and R.element_set not in obj_sets:
                        raise AxiomFailure("A1", "object collection is not closed under overgroups in S")
        self._mor: dict = {}

    def mor(self, P: Subgroup, Q: Subgroup) -> tuple:
        key = (P.element_set, Q.element_set)
        if key not in self._mor:
            self._mor[key] = tuple(transporter(self.G, P, Q))
        return self._mor[key]


def transporter_category(G: FiniteGroup, S: Subgroup, objects: Sequence[Subgroup], fusion: Optional[FusionSystem] = None) -> TransporterCategory:
    return TransporterCategory(G, S, objects, fusion)


# ---------------------------------------------------------------------------
# linking systems


class MorphismGroup(FiniteGroup):
    """Aut_L(P) as a FiniteGroup whose elements are morphism ids."""

    def __init__(self, linking: "LinkingSystem", obj_index: int):
        self.linking = linking
        self.obj_index = obj_index
        self.elements = tuple(sorted(linking.mor(obj_index, obj_index)))
        self._identity = linking.identities[obj_index]
        self._inv = {}
        for m in self.elements:
            for n in self.elements:
                if linking.comp[(m, n)] == self._identity and linking.comp[(n, m)] == self._identity:
                    self._inv[m] = n
                    break
            else:
                raise LinkingError(f"automorphism {m} has no inverse")

    @property
    def identity(self):
        return self._identity

    def mul(self, a, b):
        return self.linking.comp[(a, b)]

    def inv(self, a):
        return self._inv[a]

    def carrier_key(self):
        return ("linkaut", id(self.linking), self.obj_index)


class LinkingSystem:
    """A centric linking system as a tabulated category with delta and rho."""

    def __init__(
        self,
        fusion: FusionSystem,
        objects: Sequence[Subgroup],
        mor_dom: Sequence[int],
        mor_cod: Sequence[int],
        comp: dict,
        delta: dict,
        rho: Sequence[GroupHom],
        mor_sort_keys: Sequence,
        provenance: str,
        strict: bool = True,
    ):
        self.fusion = fusion
        self.S = fusion.S
        self.p = fusion.p
        self.objects = tuple(objects)
        self.obj_index = {P.element_set: i for i, P in enumerate(self.objects)}
        self.mor_dom = tuple(mor_dom)
        self.mor_cod = tuple(mor_cod)
        self.comp = dict(comp)
        self.delta = {k: dict(v) for k, v in delta.items()}
        self.rho = tuple(rho)
        self.mor_sort_keys = tuple(mor_sort_keys)
        self.provenance = provenance

        self._by_pair: dict = {}
        for m in range(len(self.mor_dom)):
            self._by_pair.setdefault((self.mor_dom[m], self.mor_cod[m]), []).append(m)
        self.identities = tuple(self.delta[(i, i)][self.S.identity] for i in range(len(self.objects)))
        self.s_index = self.obj_index[frozenset(self.S.elements) if not isinstance(self.S, Subgroup) else self.S.element_set]

        self.rdiv: dict = {}
        self.ldiv: dict = {}
        self.cancellation_failures: list = []
        for (f, g), h in self.comp.items():
            if (g, h) in self.rdiv and self.rdiv[(g, h)] != f:
                if strict:
                    raise LinkingError("right cancellation fails: morphisms are not epimorphisms")
                self.cancellation_failures.append(("epi", g, h))
            self.rdiv[(g, h)] = f
            if (f, h) in self.ldiv and self.ldiv[(f, h)] != g:
                if strict:
                    raise LinkingError("left cancellation fails: morphisms are not monomorphisms")
                self.cancellation_failures.append(("mono", f, h))
            self.ldiv[(f, h)] = g
        self._aut_groups: dict = {}
        self._aut_tables: dict = {}

    # -- basic category interface ---------------------------------------

    @property
    def morphism_count(self) -> int:
        return len(self.mor_dom)

    def mor(self, i: int, j: int) -> tuple[int, ...]:
        return tuple(self._by_pair.get((i, j), ()))

    def object_of(self, P: Subgroup) -> int:
        got = self.obj_index.get(P.element_set)
        if got is None:
            raise LinkingError("subgroup is not an object of the linking system")
        return got

    def iota(self, i: int, j: int) -> int:
        """The distinguished inclusion delta_{P,Q}(1) for P <= Q."""
        return self.delta[(i, j)][self.S.identity]

    def aut_group(self, i: int) -> MorphismGroup:
        if i not in self._aut_groups:
            self._aut_groups[i] = MorphismGroup(self, i)
        return self._aut_groups[i]

    def aut_table(self, i: int) -> FiniteGroupTable:
        """Aut_L(P) materialized as a validated multiplication table."""
        if i not in self._aut_tables:
            A = self.aut_group(i)
            table, _ = table_from_group(A.elements, A.mul, labels=[self.morphism_label(m) for m in A.elements])
            self._aut_tables[i] = table
        return self._aut_tables[i]

    def morphism_label(self, m: int) -> str:
        return f"m{m}"

    def is_iso(self, m: int) -> bool:
        f = self.rho[m]
        return len(set(f.mapping.values())) == self.objects[self.mor_cod[m]].order

    def restrict(self, m: int, i: int, j: int) -> int:
        """The restriction of m to object i -> object j (both below dom/cod).

        The unique r with iota . r = m . iota, which exists whenever
        rho(m) maps P_i into P_j.
        """
        top = self.comp[(m, self.iota(i, self.mor_dom[m]))]
        key = (self.iota(j, self.mor_cod[m]), top)
        if key not in self.ldiv:
            raise LinkingError("restriction does not exist")
        return self.ldiv[key]

    def delta_image(self, i: int, j: int) -> frozenset:
        return frozenset(self.delta[(i, j)].values())

    def z_center(self, i: int) -> Subgroup:
        return center(self.objects[i])

    def inverse_of(self, m: int) -> int:
        i, j = self.mor_dom[m], self.mor_cod[m]
        if not self.is_iso(m):
            raise LinkingError("not an isomorphism")
        for n in self.mor(j, i):
            if self.comp.get((n, m)) == self.identities[i] and self.comp.get((m, n)) == self.identities[j]:
                return n
        raise LinkingError("iso has no categorical inverse; data is inconsistent")


def linking_from_group(G: FiniteGroup, S: Optional[Subgroup] = None, p: int = 2, fusion: Optional[FusionSystem] = None) -> LinkingSystem:
    """L_S(G) on the F-centric subgroups: Mor(P,Q) = N_G(P,Q)/C'_G(P).

    C'_G(P) is the normal complement of Z(P) in C_G(P); it exists for every
    F-centric P at a true Sylow subgroup, and its absence means the input data
    is inconsistent.
    """
    F = fusion if fusion is not None else fusion_from_group(G, S, p)
    G = F.ambient
    S = F.canon(F.S if isinstance(F.S, Subgroup) else F.S.full_subgroup())
    objects = [P for P in F.subgroups() if F.is_centric(P)]
    objects.sort(key=lambda P: (-P.order, P.sort_key()))

    complements = {}
    for P in objects:
        C = centralizer(G, P)
        K = normal_p_complement(C, p)
        if K is None:
            raise LinkingError("an F-centric subgroup has no normal complement C'_G(P); input is inconsistent")
        complements[P.element_set] = K

    mor_dom: list[int] = []
    mor_cod: list[int] = []
    cosets: list[frozenset] = []
    keys: list = []
    elt_to_mid: dict = {}
    for i, P in enumerate(objects):
        K = complements[P.element_set]
        for j, Q in enumerate(objects):
            trans = transporter(G, P, Q)
            seen_elements: set = set()
            for g in trans:
                if g in seen_elements:
                    continue
                coset = frozenset(G.mul(g, k) for k in K.elements)
                seen_elements |= coset
                mid = len(mor_dom)
                mor_dom.append(i)
                mor_cod.append(j)
                cosets.append(coset)
                keys.append((i, j, min(G.element_key(x) for x in coset)))
                for x in coset:
                    elt_to_mid[(i, j, x)] = mid

    # sort mids deterministically and rebuild the index
    order = sorted(range(len(mor_dom)), key=lambda m: keys[m])
    remap = {old: new for new, old in enumerate(order)}
    mor_dom = [mor_dom[m] for m in order]
    mor_cod = [mor_cod[m] for m in order]
    cosets = [cosets[m] for m in order]
    keys = [keys[m] for m in order]
    elt_to_mid = {k: remap[v] for k, v in elt_to_mid.items()}

    reps = [min(c, key=G.element_key) for c in cosets]
    comp: dict = {}
    for f in range(len(mor_dom)):
        for g in range(len(mor_dom)):
            if mor_cod[g] == mor_dom[f]:
                prod = G.mul(reps[f], reps[g])
                comp[(f, g)] = elt_to_mid[(mor_dom[g], mor_cod[f], prod)]

    delta: dict = {}
    for i, P in enumerate(objects):
        for j, Q in enumerate(objects):
            table = {}
            for s in S.elements:
                if (i, j, s) in elt_to_mid:
                    table[s] = elt_to_mid[(i, j, s)]
            if table:
                delta[(i, j)] = table

    rho = []
    for m in range(len(mor_dom)):
        g = reps[m]
        gi = G.inv(g)
        P = objects[mor_dom[m]]
        Q = objects[mor_cod[m]]
        rho.append(GroupHom(P, Q, {x: G.mul(G.mul(g, x), gi) for x in P.elements}))

    return LinkingSystem(F, objects, mor_dom, mor_cod, comp, delta, rho, keys, provenance="group-realized")


# ---------------------------------------------------------------------------
# axiom validation


class LinkingValidation:
    def __init__(self, failures: list, notes: list):
        self.failures = failures
        self.notes = notes

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {"passed": self.passed, "failures": self.failures, "notes": self.notes}


def validate_linking(L: LinkingSystem) -> LinkingValidation:
    failures: list = []
    F = L.fusion
    obj_sets = {P.element_set for P in L.objects}

    def fail(axiom: str, witness) -> None:
        failures.append({"axiom": axiom, "witness": witness})

    # (A1) objects = all F-centric subgroups; closure under conjugacy/overgroups follows
    centric = {P.element_set for P in F.subgroups() if F.is_centric(P)}
    if centric != obj_sets:
        fail("A1", "object set differs from the F-centric collection")
    for i in range(len(L.objects)):
        for j in range(len(L.objects)):
            expect = set(transporter(F.S, F.canon(L.objects[i]), F.canon(L.objects[j])))
            table = L.delta.get((i, j), {})
            if set(table) != expect:
                fail("B", f"delta table on pair ({i},{j}) is not defined on exactly N_S(P,Q)")

    # (B) delta injective, rho . delta = conjugation
    for (i, j), table in L.delta.items():
        if len(set(table.values())) != len(table):
            fail("B", f"delta not injective on pair ({i},{j})")
        for s, m in table.items():
            P = L.objects[i]
            expected = {x: F.S.conj(s, x) for x in P.elements}
            if L.rho[m].mapping != expected:
                fail("B", f"rho(delta(g)) is not conjugation on pair ({i},{j})")
                break

    # (A2) E(P) = delta(Z(P)), free action, rho is the orbit map
    for i, P in enumerate(L.objects):
        e_p = {m for m in L.mor(i, i) if L.rho[m].mapping == {x: x for x in P.elements}}
        z_image = {L.delta[(i, i)][z] for z in L.z_center(i).elements}
        if e_p != z_image:
            fail("A2", f"E(P) != delta(Z(P)) at object {i}")
            continue
        for j in range(len(L.objects)):
            mids = L.mor(i, j)
            if not mids:
                continue
            fibers: dict = {}
            for m in mids:
                fibers.setdefault(L.rho[m].graph_key(), []).append(m)
            hom_graphs = {h.graph_key() for h in F.hom(F.canon(P), F.canon(L.objects[j]))}
            if set(fibers) != hom_graphs:
                fail("A2", f"rho is not onto Hom_F on pair ({i},{j})")
            for graph, fiber in fibers.items():
                if len(fiber) != len(e_p):
                    fail("A2", f"fiber size != |Z(P)| on pair ({i},{j})")
                    break
                orbit = {L.comp[(fiber[0], e)] for e in e_p}
                if orbit != set(fiber):
                    fail("A2", f"E(P)-action is not transitive on a rho fiber of pair ({i},{j})")
                    break
                if len({L.comp[(m, e)] for m in [fiber[0]] for e in e_p}) != len(e_p):
                    fail("A2", f"E(P)-action is not free on pair ({i},{j})")
                    break

    if failures:
        # later sections assume a cancellative category; report what is known
        return LinkingValidation(failures, ["validation stopped after the first failing axiom group"])

    # (C) naturality square for every morphism and every g in P
    for m in range(L.morphism_count):
        i, j = L.mor_dom[m], L.mor_cod[m]
        P = L.objects[i]
        for g in P.elements:
            left = L.comp[(m, L.delta[(i, i)][g])]
            right = L.comp[(L.delta[(j, j)][L.rho[m].mapping[g]], m)]
            if left != right:
                fail("C", f"square fails at morphism {m}")
                break

    # (I) delta(S) is Sylow in Aut_L(S)
    aut_s = L.mor(L.s_index, L.s_index)
    if len(L.delta[(L.s_index, L.s_index)]) != p_part(len(aut_s), L.p):
        fail("I", "delta(S) is not a Sylow p-subgroup of Aut_L(S)")

    if failures:
        return LinkingValidation(failures, ["validation stopped after the first failing axiom group"])

    # (II) extension condition for isomorphisms
    sub_by_set = {Q.element_set: Q for Q in F.subgroups()}
    for m in range(L.morphism_count):
        if not L.is_iso(m):
            continue
        i, j = L.mor_dom[m], L.mor_cod[m]
        P, Pp = L.objects[i], L.objects[j]
        m_inv = L.inverse_of(m)
        overs_i = [k for k, R in enumerate(L.objects) if P.element_set <= R.element_set and _is_normal_in(F.S, P, R)]
        overs_j = [k for k, R in enumerate(L.objects) if Pp.element_set <= R.element_set and _is_normal_in(F.S, Pp, R)]
        for ki in overs_i:
            R = L.objects[ki]
            for kj in overs_j:
                Rp = L.objects[kj]
                ok = True
                for r in R.elements:
                    conj = L.comp[(L.comp[(m, L.delta[(i, i)][r])], m_inv)]
                    if conj not in {L.delta[(j, j)][x] for x in Rp.elements if x in L.delta[(j, j)]}:
                        ok = False
                        break
                if not ok:
                    continue
                want = L.comp[(L.iota(j, kj), m)]
                found = any(L.comp.get((mt, L.iota(i, ki))) == want for mt in L.mor(ki, kj))
                if not found:
                    fail("II", f"iso {m} does not extend to objects ({ki},{kj})")

    notes = ["axiom III vacuous: object chains in a finite category stabilize"]
    return LinkingValidation(failures, notes)


def _is_normal_in(S: Subgroup, P: Subgroup, R: Subgroup) -> bool:
    return all(S.conj(r, x) in P.element_set for r in R.elements for x in P.gens())


def aut_l_restricted(L: LinkingSystem, P: Subgroup) -> dict:
    """Aut_L(S, P): automorphisms of S in L whose fusion map preserves P.

    Returns the member morphisms, the restriction map into Aut_L(P), and
    whether that restriction is injective.
    """
    i = L.object_of(L.fusion.canon(P))
    s = L.s_index
    members = []
    restriction = {}
    pset = L.objects[i].element_set
    for m in L.mor(s, s):
        if {L.rho[m].mapping[x] for x in pset} == pset:
            members.append(m)
            restriction[m] = L.restrict(m, i, i)
    injective = len(set(restriction.values())) == len(members)
    return {"members": tuple(members), "restriction": restriction, "injective": injective}


# ---------------------------------------------------------------------------
# orbit category and functors


def orbit_category(F: FusionSystem, centric_only: bool = True) -> tuple[FiniteCategory, dict]:
    """O(F^c): morphisms are Inn(Q)-orbits of Hom_F(P,Q).

    Returns the category together with a dict carrying the orbit
    representatives (as GroupHoms) per morphism id.
    """
    if centric_only:
        objects = [P for P in F.subgroups() if F.is_centric(P)]
    else:
        objects = list(F.subgroups())
    objects.sort(key=lambda P: (-P.order, P.sort_key()))

    mor_dom: list[int] = []
    mor_cod: list[int] = []
    reps: list[GroupHom] = []
    orbit_of: dict = {}
    for i, P in enumerate(objects):
        for j, Q in enumerate(objects):
            homs = F.hom(P, Q)
            if not homs:
                continue
            remaining = {h.graph_key(): h for h in homs}
            while remaining:
                key = min(remaining)
                h = remaining.pop(key)
                orbit_keys = set()
                for q in Q.elements:
                    conj = {x: F.S.mul(F.S.mul(q, y), F.S.inv(q)) for x, y in h.mapping.items()}
                    k = tuple(sorted((P.element_key(a), P.element_key(b)) for a, b in conj.items()))
                    orbit_keys.add(k)
                    remaining.pop(k, None)
                mid = len(mor_dom)
                mor_dom.append(i)
                mor_cod.append(j)
                reps.append(h)
                for k in orbit_keys:
                    orbit_of[(i, j, k)] = mid

    comp: dict = {}
    for f in range(len(mor_dom)):
        for g in range(len(mor_dom)):
            if mor_cod[g] == mor_dom[f]:
                hf, hg = reps[f], reps[g]
                composite = {x: hf.mapping[y] for x, y in hg.mapping.items()}
                k = tuple(sorted((objects[mor_dom[g]].element_key(a), objects[mor_dom[g]].element_key(b)) for a, b in composite.items()))
                comp[(f, g)] = orbit_of[(mor_dom[g], mor_cod[f], k)]

    identities = []
    for i, P in enumerate(objects):
        k = tuple(sorted((P.element_key(x), P.element_key(x)) for x in P.elements))
        identities.append(orbit_of[(i, i, k)])

    cat = FiniteCategory(objects, mor_dom, mor_cod, comp, identities)
    return cat, {"reps": tuple(reps)}


class AbFunctor:
    """A contravariant functor from a FiniteCategory to finite abelian groups.

    `values[i]` is a Subgroup (abelian) for each object index; `maps[m]` sends
    elements of values[cod(m)] to values[dom(m)].  Functoriality is validated
    on construction.
    """

    def __init__(self, category: FiniteCategory, values: Sequence[Subgroup], maps: Sequence[dict]):
        self.category = category
        self.values = tuple(values)
        self.maps = tuple(dict(m) for m in maps)
        for A in self.values:
            if not A.is_abelian():
                raise LinkingError("functor values must be abelian groups")
        for i, e in enumerate(category.identities):
            if self.maps[e] != {x: x for x in self.values[i].elements}:
                raise LinkingError("functor does not send identities to identities")
        for (f, g), h in category.comp.items():
            mf, mg, mh = self.maps[f], self.maps[g], self.maps[h]
            for z in self.values[category.mor_cod[f]].elements:
                if mg[mf[z]] != mh[z]:
                    raise LinkingError("functor is not compatible with composition")

    def value(self, i: int) -> Subgroup:
        return self.values[i]

    def map(self, m: int) -> dict:
        return self.maps[m]


def center_functor(F: FusionSystem, category: FiniteCategory, reps: Sequence[GroupHom]) -> AbFunctor:
    """Z_F on O(F^c): each object to its center, [f] to f^{-1} on centers.

    For centric P <= Q one has Z(Q) <= C_S(Q) <= C_S(f(P)) = Z(f(P)) <= f(P),
    so pulling back along f is defined on the whole center of the target.
    """
    values = [center(P) for P in category.objects]
    maps = []
    for m in range(category.morphism_count):
        f = reps[m]
        inv = {b: a for a, b in f.mapping.items()}
        target = values[category.mor_cod[m]]
        maps.append({z: inv[z] for z in target.elements})
    return AbFunctor(category, values, maps)


def constant_functor(category: FiniteCategory, A: Subgroup) -> AbFunctor:
    ident = {x: x for x in A.elements}
    return AbFunctor(category, [A] * len(category.objects), [dict(ident) for _ in range(category.morphism_count)])


class LimitResult:
    def __init__(self, group: FiniteAbelian, families: tuple, center_embedding: Optional[Subgroup]):
        self.group = group
        self.families = families
        self.center_embedding = center_embedding

    def __repr__(self) -> str:
        return f"LimitResult({self.group})"


def inverse_limit(category: FiniteCategory, Z: AbFunctor) -> LimitResult:
    """lim Z: all families (z_i) with Z(m)(z_cod) = z_dom for every morphism."""
    n = len(category.objects)
    families = [()]
    for i in range(n):
        new = []
        for fam in families:
            for z in Z.value(i).elements:
                cand = fam + (z,)
                ok = True
                for m in range(category.morphism_count):
                    a, b = category.mor_dom[m], category.mor_cod[m]
                    if a <= i and b <= i and a < len(cand) and b < len(cand):
                        if Z.map(m)[cand[b]] != cand[a]:
                            ok = False
                            break
                if ok:
                    new.append(cand)
        families = new
    # abstract group structure of the limit (a subgroup of the product)
    if not families:
        raise LinkingError("inverse limit of nonempty abelian groups cannot be empty")
    mul = lambda u, v: tuple(Z.value(i).mul(a, b) for i, (a, b) in enumerate(zip(u, v)))
    table, _ = table_from_group(sorted(families, key=lambda fam: tuple(Z.value(i).element_key(x) for i, x in enumerate(fam))), mul)
    invariants = _abelian_invariants_of_table(table)
    # embedding into the center of a terminal-like object (one receiving from all)
    terminal = None
    for j in range(len(category.objects)):
        if all(category.mor(i, j) for i in range(len(category.objects))):
            terminal = j
            break
    embedding = None
    if terminal is not None:
        root = Z.value(terminal).ambient
        embedding = Subgroup(root, [fam[terminal] for fam in families])
    return LimitResult(FiniteAbelian(invariants), tuple(families), embedding)


def _abelian_invariants_of_table(table: FiniteGroupTable) -> list[int]:
    return [d for _, d in cyclic_decomposition(table.full_subgroup())]


def cyclic_decomposition(A: Subgroup) -> list[tuple]:
    """[(generator, order), ...] with A the internal direct product of the cyclics."""
    if not A.is_abelian():
        raise LinkingError("cyclic decomposition needs an abelian group")
    out = []
    current = A
    while current.order > 1:
        best_order = max(current.element_order(x) for x in current.elements)
        g = min((x for x in current.elements if current.element_order(x) == best_order), key=current.element_key)
        out.append((g, best_order))
        cyc = subgroup_closure(current, [g])
        if cyc.order == current.order:
            return out
        complement = None
        for H in all_subgroups(current):
            if H.order * cyc.order == current.order and len(H.element_set & cyc.element_set) == 1:
                complement = Subgroup(current.ambient, H.elements)
                break
        if complement is None:
            raise LinkingError("no direct complement found in an abelian group")
        current = complement
    return out


def _abelian_codec(A: Subgroup):
    """(moduli, encode dict elt -> vector, decode) for a finite abelian subgroup."""
    decomp = cyclic_decomposition(A)
    moduli = [d for _, d in decomp]
    encode = {}
    import itertools as _it

    for exps in _it.product(*[range(d) for d in moduli]):
        x = A.identity
        for (g, _), e in zip(decomp, exps):
            for _ in range(e):
                x = A.mul(x, g)
        encode[x] = tuple(exps)
    if len(encode) != A.order:
        raise LinkingError("abelian decomposition does not span")
    return moduli, encode


def higher_limits(category: FiniteCategory, Z: AbFunctor, n: int) -> FiniteAbelian:
    """lim^n Z: degree-n cohomology of the normalized cochain complex.

    C^n is the product of Z(source) over composable chains of n non-identity
    morphisms; the differential is the usual alternating sum, with faces whose
    inner composite collapses to an identity dropped (normalization).  Degree 0
    recovers the inverse limit.
    """
    if n < 0:
        raise ValueError("degree must be >= 0")
    chains = {0: [()]}
    nondeg = [m for m in range(category.morphism_count) if not category.is_identity(m)]
    chains[1] = [(m,) for m in nondeg]
    for k in range(2, n + 2):
        prev = chains[k - 1]
        chains[k] = [c + (m,) for c in prev for m in nondeg if category.mor_cod[c[-1]] == category.mor_dom[m]]

    codecs = [_abelian_codec(Z.value(i)) for i in range(len(category.objects))]

    def chain_source(c) -> int:
        if not c:
            return -1
        return category.mor_dom[c[0]]

    def block_layout(cs):
        offsets = []
        moduli = []
        for c in cs:
            offsets.append(len(moduli))
            if c == ():
                continue
            moduli.extend(codecs[chain_source(c)][0])
        return offsets, moduli

    def layout_deg0():
        offsets = []
        moduli = []
        for i in range(len(category.objects)):
            offsets.append(len(moduli))
            moduli.extend(codecs[i][0])
        return offsets, moduli

    def hom_matrix(m: int):
        """Integer matrix of Z(m): Z(cod) -> Z(dom) in the cyclic coordinates."""
        src_i = category.mor_cod[m]
        dst_i = category.mor_dom[m]
        src_moduli, src_enc = codecs[src_i]
        dst_moduli, dst_enc = codecs[dst_i]
        decomp = cyclic_decomposition(Z.value(src_i))
        cols = []
        for g, _ in decomp:
            cols.append(list(dst_enc[Z.map(m)[g]]))
        return [[cols[j][r] for j in range(len(cols))] for r in range(len(dst_moduli))]

    def differential(k: int):
        """Matrix of d: C^k -> C^(k+1), with the block layouts."""
        if k == 0:
            src_offsets, src_moduli = layout_deg0()
            src_index = {(): 0}
            dst = chains[1]
        else:
            src_offsets_list, src_moduli = block_layout(chains[k])
            src_offsets = src_offsets_list
            src_index = {c: idx for idx, c in enumerate(chains[k])}
            dst = chains[k + 1]
        dst_offsets, dst_moduli = block_layout(dst)
        rows = len(dst_moduli)
        colsn = len(src_moduli)
        M = [[0] * colsn for _ in range(rows)]

        def add_block(row0, col0, block, sign):
            for r, row in enumerate(block):
                for c, v in enumerate(row):
                    M[row0 + r][col0 + c] += sign * v

        def add_identity(row0, col0, size, sign):
            for r in range(size):
                M[row0 + r][col0 + r] += sign

        for di, c in enumerate(dst):
            row0 = dst_offsets[di]
            size = len(codecs[chain_source(c)][0])
            # face 0: apply Z(first morphism) to the truncated chain
            tail = c[1:]
            if k == 0:
                col0 = layout_deg0()[0][category.mor_cod[c[0]]]
                add_block(row0, col0, hom_matrix(c[0]), 1)
            else:
                if tail in src_index:
                    col0 = src_offsets[src_index[tail]]
                    add_block(row0, col0, hom_matrix(c[0]), 1)
            # middle faces: compose adjacent morphisms
            for i in range(1, k + 1):
                composite = category.comp[(c[i], c[i - 1])]
                merged = c[: i - 1] + (composite,) + c[i + 1 :]
                if category.is_identity(composite):
                    continue
                if k == 0:
                    continue
                if merged in src_index:
                    add_identity(row0, src_offsets[src_index[merged]], size, -1 if i % 2 else 1)
            # last face: drop the final morphism
            head = c[:-1]
            sign = -1 if (k + 1) % 2 else 1
            if k == 0:
                col0 = layout_deg0()[0][category.mor_dom[c[0]]]
                add_identity(row0, col0, size, -1)
            elif head in src_index:
                add_identity(row0, src_offsets[src_index[head]], size, sign)
        return M, src_moduli, dst_moduli

    if n == 0:
        d0, c0_moduli, c1_moduli = differential(0)
        zero_in = [[0] * 0 for _ in range(len(c0_moduli))]
        return homology_of_pair(c0_moduli, zero_in, [], d0, c1_moduli)
    dn, cn_moduli, cn1_moduli = differential(n)
    dprev, cprev_moduli, cn_moduli_check = differential(n - 1)
    assert cn_moduli == cn_moduli_check
    return homology_of_pair(cn_moduli, dprev, cprev_moduli, dn, cn1_moduli)


# ---------------------------------------------------------------------------
# file exchange

LINKING_FORMAT = "flab-linking-v1"


def _word_table(S: Subgroup, generators: Sequence[Perm]) -> dict:
    """Shortest word (signed 1-based generator indices) for every element of S."""
    letters = []
    for idx, g in enumerate(generators):
        letters.append((idx + 1, g))
        letters.append((-(idx + 1), g.inverse()))
    words = {S.identity: []}
    frontier = [S.identity]
    while frontier:
        new = []
        for x in frontier:
            for sign, g in letters:
                y = S.mul(x, g)
                if y not in words:
                    words[y] = words[x] + [sign]
                    new.append(y)
        frontier = new
    if len(words) != S.order:
        raise LinkingError("generators do not generate the base group")
    return words


def _eval_word(generators: Sequence[Perm], word: Sequence[int], degree: int) -> Perm:
    x = Perm.identity(degree)
    for w in word:
        if w == 0 or abs(w) > len(generators):
            raise LinkingError(f"bad generator index {w} in word")
        g = generators[abs(w) - 1]
        x = x * (g if w > 0 else g.inverse())
    return x


def linking_to_data(L: LinkingSystem, name: str = "linking") -> dict:
    """A lossless JSON-ready description of L (objects, rho, composition, delta)."""
    S = L.S
    root = S.ambient if isinstance(S, Subgroup) else S
    gens = S.gens()
    degree = root.degree
    words = _word_table(S, gens)
    obj_names = [f"P{i}" for i in range(len(L.objects))]
    objects = []
    for i, P in enumerate(L.objects):
        objects.append(
            {
                "name": obj_names[i],
                "generators": [words[g] for g in P.gens()],
                "elements": [words[x] for x in P.elements],
            }
        )
    morphisms = []
    for m in range(L.morphism_count):
        P = L.objects[L.mor_dom[m]]
        morphisms.append(
            {
                "name": f"m{m}",
                "dom": obj_names[L.mor_dom[m]],
                "cod": obj_names[L.mor_cod[m]],
                "rho": [[words[g], words[L.rho[m].mapping[g]]] for g in P.gens()],
            }
        )
    composition = [[f"m{f}", f"m{g}", f"m{h}"] for (f, g), h in sorted(L.comp.items())]
    delta = []
    for (i, j), table in sorted(L.delta.items()):
        for s in sorted(table, key=S.element_key):
            delta.append([obj_names[i], obj_names[j], words[s], f"m{table[s]}"])
    return {
        "format": LINKING_FORMAT,
        "name": name,
        "prime": L.p,
        "sylow": {"degree": degree, "generators": [list(g.images) for g in gens]},
        "objects": objects,
        "morphisms": morphisms,
        "composition": composition,
        "delta": delta,
    }


def linking_from_data(data: dict, validate: bool = True) -> LinkingSystem:
    """Rebuild a linking system from its file form; reject on any axiom failure.

    The fusion system is derived from the rho tables (their generated closure),
    so the file never has to carry morphism sets twice.
    """
    if data.get("format") != LINKING_FORMAT:
        raise LinkingError(f"unknown format {data.get('format')!r}")
    p = int(data["prime"])
    degree = int(data["sylow"]["degree"])
    gens = [Perm(images) for images in data["sylow"]["generators"]]
    Sgroup = closure(gens, degree=degree)
    S = Subgroup(Sgroup, Sgroup.elements, generators=tuple(gens))

    obj_elements = []
    obj_gens = []
    index_of = {}
    for k, entry in enumerate(data["objects"]):
        elts = frozenset(_eval_word(gens, w, degree) for w in entry["elements"])
        obj_elements.append(elts)
        obj_gens.append([_eval_word(gens, w, degree) for w in entry["generators"]])
        index_of[entry["name"]] = k
        if not elts <= S.element_set:
            raise LinkingError(f"object {entry['name']} is not inside the base group")

    raw_subgroups = [Subgroup(Sgroup, elts, generators=tuple(g)) for elts, g in zip(obj_elements, obj_gens)]

    mor_dom = []
    mor_cod = []
    rho_homs = []
    mid_of = {}
    for m, entry in enumerate(data["morphisms"]):
        i = index_of[entry["dom"]]
        j = index_of[entry["cod"]]
        mor_dom.append(i)
        mor_cod.append(j)
        mid_of[entry["name"]] = m
        gpairs = [(_eval_word(gens, gw, degree), _eval_word(gens, iw, degree)) for gw, iw in entry["rho"]]
        mapping = extend_gen_images(raw_subgroups[i], S, [a for a, _ in gpairs], [b for _, b in gpairs])
        if mapping is None:
            raise LinkingError(f"rho table of {entry['name']} does not define a homomorphism")
        hom = GroupHom(raw_subgroups[i], raw_subgroups[j], mapping)
        if not set(mapping.values()) <= raw_subgroups[j].element_set or not hom.is_injective():
            raise LinkingError(f"rho image of {entry['name']} does not land injectively in its codomain")
        rho_homs.append(hom)

    comp = {}
    for fname, gname, hname in data["composition"]:
        comp[(mid_of[fname], mid_of[gname])] = mid_of[hname]

    delta: dict = {}
    for oname, pname, word, mname in data["delta"]:
        key = (index_of[oname], index_of[pname])
        delta.setdefault(key, {})[_eval_word(gens, word, degree)] = mid_of[mname]

    # distinguished inclusions must exist before the category can be assembled
    for i, P in enumerate(raw_subgroups):
        for j, Q in enumerate(raw_subgroups):
            if P.element_set <= Q.element_set:
                if S.identity not in delta.get((i, j), {}):
                    raise AxiomFailure("B/A1", f"missing distinguished inclusion for objects ({i},{j})")

    F = generated_fusion(S, [GroupHom(h.source, S, h.mapping) for h in rho_homs], p)
    objects = [F.subgroup_from_elements(elts) for elts in obj_elements]
    rho = [GroupHom(objects[mor_dom[m]], objects[mor_cod[m]], rho_homs[m].mapping) for m in range(len(rho_homs))]
    keys = [(mor_dom[m], mor_cod[m], m) for m in range(len(mor_dom))]
    try:
        L = LinkingSystem(F, objects, mor_dom, mor_cod, comp, delta, rho, keys, provenance="file", strict=False)
    except (KeyError, LinkingError) as exc:
        raise LinkingError(f"category tables are incomplete or inconsistent: {exc}") from exc
    if validate:
        report = validate_linking(L)
        if L.cancellation_failures:
            report.failures.append({"axiom": "A2", "witness": "composition is not cancellative (free action impossible)"})
        if not report.passed:
            first = report.failures[0]
            raise AxiomFailure(first["axiom"], first["witness"])
    return L


def linking_to_json(L: LinkingSystem, name: str = "linking") -> str:
    return json.dumps(linking_to_data(L, name), indent=1, sort_keys=True)


def linking_from_json(text: str, validate: bool = True) -> LinkingSystem:
    return linking_from_data(json.loads(text), validate=validate)
