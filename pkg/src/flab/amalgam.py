"""Robinson setups, trees of groups, and exact normal-form arithmetic.

The tree is always a star: hub Aut_L(S), one leaf Aut_L(P) per proper member
of a fusion controlling family, glued along N_P (the image of N_S(P) in the
classical variant, Aut_L(S,P) in the Libman-Seeliger variant).  Degenerate
edges with N_P equal to the whole hub are absorbed leaf-by-leaf, which is how
the S4 example collapses to a finite group.

Elements are kept in iterated amalgam normal form.  For a single two-factor
amalgam A *_N B with fixed right transversals, every element has a unique
expression n . t1 t2 ... tm with n in N and the t's nontrivial alternating
coset representatives; a star with several leaves nests this construction,
with the level below playing the role of A.  All representative choices are
minimal in the deterministic element order, so normal forms are reproducible
bit for bit.
"""

from __future__ import annotations

import random
from typing import Iterable, Optional, Sequence

from .fusion import FusionSystem, controlling_family, fusion_equals, generated_fusion
from .groups import FiniteGroup, GroupHom, Subgroup, center, normalizer
from .linking import LinkingSystem, MorphismGroup, aut_l_restricted

ROBINSON = "robinson"
LIBMAN_SEELIGER = "libman-seeliger"


class AmalgamError(Exception):
    pass


# ---------------------------------------------------------------------------
# setups


class Leaf:
    """One leaf of the star: vertex group Aut_L(P) and its edge into the hub."""

    def __init__(self, index: int, subgroup: Subgroup, obj_index: int, group: MorphismGroup, edge_hub: tuple, j_map: dict, n_s_p: Subgroup):
        self.index = index
        self.subgroup = subgroup
        self.obj_index = obj_index
        self.group = group
        self.edge_hub = tuple(edge_hub)  # N_P as a subset of Aut_L(S)
        self.j_map = dict(j_map)  # N_P -> Aut_L(P)
        self.n_s_p = n_s_p


class RobinsonSetup:
    def __init__(self, fusion: FusionSystem, linking: LinkingSystem, family: Sequence[Subgroup], variant: str, leaves: Sequence[Leaf], is_complete: bool):
        self.fusion = fusion
        self.linking = linking
        self.family = tuple(family)
        self.variant = variant
        self.leaves = tuple(leaves)
        self.is_complete = is_complete
        self.hub = linking.aut_group(linking.s_index)

    def delta_s(self) -> dict:
        L = self.linking
        return dict(L.delta[(L.s_index, L.s_index)])


def _family_is_controlling(F: FusionSystem, family: Sequence[Subgroup]) -> Optional[str]:
    from .fusion import centric_radical_classes

    S = F.canon(F.S)
    fam = [F.canon(P) for P in family]
    if fam[0].element_set != S.element_set:
        return "the first family member must be S"
    for P in fam:
        if not F.is_fully_normalized(P):
            return "family members must be fully normalized"
    fam_sets = {P.element_set for P in fam}
    for cls in centric_radical_classes(F):
        if not any(P.element_set in fam_sets for P in cls):
            return "family misses a centric radical class"
    return None


def build_setup(F: FusionSystem, L: LinkingSystem, family: Optional[Sequence[Subgroup]] = None, variant: str = LIBMAN_SEELIGER, require_controlling: bool = True) -> RobinsonSetup:
    """Assemble and validate a Robinson setup over a fusion controlling family.

    `require_controlling=False` skips the family validation so that negative
    tests can build a deliberately broken setup and watch fusion verification
    fail downstream.
    """
    if variant not in (ROBINSON, LIBMAN_SEELIGER):
        raise AmalgamError(f"unknown variant {variant!r}")
    if family is None:
        family = controlling_family(F, complete=True)
    family = tuple(F.canon(P) for P in family)
    problem = _family_is_controlling(F, family)
    if problem and require_controlling:
        raise AmalgamError(f"family is not a fusion controlling family: {problem}")

    try:
        complete = tuple(P.element_set for P in controlling_family(F, complete=True))
        fam_classes = []
        nfs = None
        is_complete = len(family) == len(complete) and problem is None
        if is_complete:
            from .fusion import normalizer_fusion_system

            nfs = normalizer_fusion_system(F, F.canon(F.S))
            seen = []
            for P in family[1:]:
                cls = {Q.element_set for Q in nfs.f_class(nfs.subgroup_from_elements(P.element_set))}
                if any(cls & prev for prev in seen):
                    is_complete = False
                    break
                seen.append(cls)
    except Exception:
        is_complete = False

    s_index = L.s_index
    delta_s = L.delta[(s_index, s_index)]
    leaves = []
    for idx, P in enumerate(family[1:], start=1):
        obj = L.object_of(P)
        group = L.aut_group(obj)
        n_s_p = normalizer(F.S, P)
        if variant == ROBINSON:
            edge_hub = tuple(sorted(delta_s[g] for g in n_s_p.elements))
            j_map = {delta_s[g]: L.delta[(obj, obj)][g] for g in n_s_p.elements}
        else:
            res = aut_l_restricted(L, P)
            if not res["injective"]:
                raise AmalgamError(
                    f"Libman-Seeliger restriction into Aut_L(P) is not injective for family member {idx}; witness: {res}"
                )
            edge_hub = tuple(sorted(res["members"]))
            j_map = dict(res["restriction"])
        # condition (iii): delta(N_S(P)) <= N_P
        if not {delta_s[g] for g in n_s_p.elements} <= set(edge_hub):
            raise AmalgamError(f"edge group of leaf {idx} does not contain delta(N_S(P))")
        if len({j_map[x] for x in edge_hub}) != len(edge_hub):
            raise AmalgamError(f"edge injection into the leaf group is not injective for leaf {idx}")
        leaves.append(Leaf(idx, P, obj, group, edge_hub, j_map, n_s_p))

    return RobinsonSetup(F, L, family, variant, leaves, is_complete)


# ---------------------------------------------------------------------------
# group-like carriers for word arithmetic


class TableSide:
    """GroupLike view of a finite group whose elements are hashable values."""

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.identity = group.identity

    def mul(self, a, b):
        return self.group.mul(a, b)

    def inv(self, a):
        return self.group.inv(a)

    def key(self, a):
        return ("e", self.group.element_key(a))

    def contains(self, a) -> bool:
        return a in self.group.element_set


class Word:
    """Normal form n . t1 ... tm in a two-factor amalgam level."""

    __slots__ = ("base", "chain")

    def __init__(self, base, chain: tuple):
        self.base = base
        self.chain = chain

    def __repr__(self):
        return f"Word(base={self.base!r}, chain={self.chain!r})"


class AmalgamLevel:
    """A *_N B with A the previous level (or the hub) and B a leaf group.

    `edge` maps A-side edge elements to their B-side identifications.  Words
    are (n, chain) with n an A-side element of N and chain alternating
    nontrivial right-coset representatives.
    """

    def __init__(self, left: "Side", right: TableSide, edge_pairs: Sequence[tuple]):
        self.left = left
        self.right = right
        self.to_right = {}
        self.to_left = {}
        for a, b in edge_pairs:
            self.to_right[left.key(a)] = (a, b)
            self.to_left[right.key(b)] = (b, a)
        if len(self.to_right) != len(edge_pairs) or len(self.to_left) != len(edge_pairs):
            raise AmalgamError("edge identification is not a bijection")
        self.n_left = [a for a, _ in edge_pairs]
        self.n_right = [b for _, b in edge_pairs]
        self._rep_cache: dict = {}

    def side(self, s: int):
        return self.left if s == 0 else self.right

    def in_edge(self, s: int, x) -> bool:
        table = self.to_right if s == 0 else self.to_left
        return self.side(s).key(x) in table

    def transfer(self, s: int, x):
        """Move an edge element to the opposite side."""
        table = self.to_right if s == 0 else self.to_left
        return table[self.side(s).key(x)][1]

    def _coset_rep(self, s: int, x):
        """Minimal representative of the right coset N.x on side s."""
        side = self.side(s)
        cache_key = (s, side.key(x))
        got = self._rep_cache.get(cache_key)
        if got is not None:
            return got
        members = self.n_left if s == 0 else self.n_right
        best = None
        best_key = None
        for n in members:
            y = side.mul(n, x)
            k = side.key(y)
            if best_key is None or k < best_key:
                best, best_key = y, k
        for n in members:
            self._rep_cache[(s, side.key(side.mul(n, x)))] = best
        return best

    def identity_word(self) -> Word:
        return Word(self.left.identity, ())

    def _vertex_word(self, s: int, x) -> Word:
        """Normal form of a single vertex element."""
        if self.in_edge(s, x):
            base = x if s == 0 else self.transfer(1, x)
            return Word(base, ())
        t = self._coset_rep(s, x)
        side = self.side(s)
        n = side.mul(x, side.inv(t))
        base = n if s == 0 else self.transfer(1, n)
        return Word(base, ((s, t),))

    def prepend(self, s: int, x, w: Word) -> Word:
        """Normal form of x . w for a vertex element x on side s."""
        side = self.side(s)
        base_on_s = w.base if s == 0 else self.transfer(0, w.base)
        y = side.mul(x, base_on_s)
        if not w.chain:
            return self._vertex_word(s, y)
        (s1, t1) = w.chain[0]
        rest = Word(self.left.identity, w.chain[1:])
        if s1 == s:
            z = side.mul(y, t1)
            return self.prepend(s, z, rest)
        if self.in_edge(s, y):
            z = self.side(s1).mul(self.transfer(s, y), t1)
            return self.prepend(s1, z, rest)
        t = self._coset_rep(s, y)
        n = side.mul(y, side.inv(t))
        base = n if s == 0 else self.transfer(1, n)
        return Word(base, ((s, t),) + w.chain)

    def multiply(self, w1: Word, w2: Word) -> Word:
        out = w2
        for s, t in reversed(w1.chain):
            out = self.prepend(s, t, out)
        return self.prepend(0, w1.base, out)

    def invert(self, w: Word) -> Word:
        out = self._vertex_word(0, self.left.inv(w.base))
        for s, t in w.chain:
            out = self.prepend(s, self.side(s).inv(t), out)
        return out

    def key(self, w: Word):
        return ("w", self.left.key(w.base), tuple((s, self.side(s).key(t)) for s, t in w.chain))


class WordSide:
    """GroupLike view of an AmalgamLevel's words, used as the next level's A side."""

    def __init__(self, level: AmalgamLevel):
        self.level = level
        self.identity = level.identity_word()

    def mul(self, a: Word, b: Word) -> Word:
        return self.level.multiply(a, b)

    def inv(self, a: Word) -> Word:
        return self.level.invert(a)

    def key(self, a: Word):
        return self.level.key(a)


# ---------------------------------------------------------------------------
# the amalgam itself


class AmalgamWord:
    """A group element in normal form, tagged with its owning amalgam."""

    __slots__ = ("group", "value")

    def __init__(self, group: "AmalgamGroup", value):
        self.group = group
        self.value = value

    def key(self):
        return self.group._top_key(self.value)

    def __eq__(self, other):
        return isinstance(other, AmalgamWord) and self.group is other.group and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __mul__(self, other: "AmalgamWord") -> "AmalgamWord":
        return self.group.multiply(self, other)

    def inverse(self) -> "AmalgamWord":
        return self.group.invert(self)

    def length(self) -> int:
        return self.group.nf_length(self)

    def letters(self) -> tuple:
        return self.group.flatten(self)

    def __repr__(self):
        return self.group.format_word(self)


class AmalgamGroup:
    """The colimit of a Robinson star, with exact normal-form arithmetic."""

    def __init__(self, setup: RobinsonSetup):
        self.setup = setup
        L = setup.linking
        self.delta_s = setup.delta_s()  # S element -> hub element (pre-collapse hub)

        hub_group: FiniteGroup = setup.hub
        hub_conv = {x: x for x in hub_group.elements}  # Aut_L(S) element -> current hub element
        remaining = list(setup.leaves)
        self.collapsed_leaves: list[int] = []
        self.hub_vertex_tag = "hub"

        changed = True
        while changed:
            changed = False
            for leaf in list(remaining):
                edge = {hub_conv[x] for x in leaf.edge_hub}
                if edge == set(hub_group.elements):
                    # hub_conv is injective, so a covering edge contains every
                    # original hub element and the leaf absorbs the hub whole
                    if set(leaf.edge_hub) != set(hub_conv):
                        raise AmalgamError("degenerate edge does not cover the hub; setup data is inconsistent")
                    hub_conv = {orig: leaf.j_map[orig] for orig in hub_conv}
                    hub_group = leaf.group
                    self.collapsed_leaves.append(leaf.index)
                    self.hub_vertex_tag = f"leaf{leaf.index}"
                    remaining.remove(leaf)
                    changed = True
                    break

        self.hub_group = hub_group
        self.hub_conv = hub_conv  # original Aut_L(S) element -> current hub element
        self.delta_hub = {s: hub_conv[m] for s, m in self.delta_s.items()}
        self.leaves = tuple(remaining)

        self.levels: list[AmalgamLevel] = []
        side: object = TableSide(hub_group)
        for leaf in self.leaves:
            pairs = []
            for x in leaf.edge_hub:
                hub_elt = hub_conv[x]
                pairs.append((self._embed_in_side(side, hub_elt, len(self.levels)), leaf.j_map[x]))
            level = AmalgamLevel(side, TableSide(leaf.group), pairs)
            self.levels.append(level)
            side = WordSide(level)
        self.top = side

        # distinguished p-subgroups for letterwise conjugation
        self.hub_p_image = {self.delta_hub[s]: s for s in self.delta_s}
        self.leaf_p_image = {}
        for leaf in self.leaves:
            table = L.delta[(leaf.obj_index, leaf.obj_index)]
            self.leaf_p_image[leaf.index] = ({table[g]: g for g in leaf.n_s_p.elements}, {g: table[g] for g in leaf.n_s_p.elements})

    # -- embedding helpers -------------------------------------------------

    def _embed_in_side(self, side, hub_elt, n_levels: int):
        """Embed a current-hub element into the word group after n_levels levels."""
        x = hub_elt
        for level in self.levels[:n_levels]:
            x = level._vertex_word(0, x)
        return x

    def _hub_to_top(self, hub_elt):
        x = hub_elt
        for level in self.levels:
            x = level._vertex_word(0, x)
        return x

    def _leaf_to_top(self, leaf_pos: int, elt):
        x = self.levels[leaf_pos]._vertex_word(1, elt)
        for level in self.levels[leaf_pos + 1 :]:
            x = level._vertex_word(0, x)
        return x

    def _top_key(self, value):
        if self.levels:
            return self.top.key(value)
        return TableSide(self.hub_group).key(value)

    # -- public word interface ----------------------------------------------

    def identity(self) -> AmalgamWord:
        return AmalgamWord(self, self.top.identity if self.levels else self.hub_group.identity)

    def hub_word(self, hub_elt) -> AmalgamWord:
        if hub_elt not in self.hub_group.element_set:
            raise AmalgamError("not an element of the hub vertex group")
        return AmalgamWord(self, self._hub_to_top(hub_elt) if self.levels else hub_elt)

    def leaf_word(self, leaf_index: int, elt) -> AmalgamWord:
        for pos, leaf in enumerate(self.leaves):
            if leaf.index == leaf_index:
                if elt not in leaf.group.element_set:
                    raise AmalgamError("not an element of the leaf vertex group")
                return AmalgamWord(self, self._leaf_to_top(pos, elt))
        if f"leaf{leaf_index}" == self.hub_vertex_tag:
            return self.hub_word(elt)
        raise AmalgamError(f"no leaf {leaf_index}")

    def vertex_word(self, tag: str, elt) -> AmalgamWord:
        if tag == "hub":
            if self.hub_vertex_tag == "hub":
                return self.hub_word(elt)
            # the original hub was absorbed; elt is an Aut_L(S) element
            return self.hub_word(self.hub_conv[elt])
        if not tag.startswith("leaf"):
            raise AmalgamError(f"bad vertex tag {tag!r}")
        return self.leaf_word(int(tag[4:]), elt)

    def multiply(self, w1: AmalgamWord, w2: AmalgamWord) -> AmalgamWord:
        if self.levels:
            return AmalgamWord(self, self.top.mul(w1.value, w2.value))
        return AmalgamWord(self, self.hub_group.mul(w1.value, w2.value))

    def invert(self, w: AmalgamWord) -> AmalgamWord:
        if self.levels:
            return AmalgamWord(self, self.top.inv(w.value))
        return AmalgamWord(self, self.hub_group.inv(w.value))

    def reduce(self, letters: Iterable[tuple]) -> AmalgamWord:
        """Product of (vertex_tag, element) letters, in normal form."""
        out = self.identity()
        for tag, elt in letters:
            out = self.multiply(out, self.vertex_word(tag, elt))
        return out

    def embed_s(self, s) -> AmalgamWord:
        return self.hub_word(self.delta_hub[s])

    def nf_length(self, w: AmalgamWord) -> int:
        """Number of leaf transversal letters in the normal form.

        Hub-side letters count zero, so single vertex elements (and in
        particular all of delta(S)) sit at radius zero in bounded searches.
        """

        def word_len(value, n_levels: int) -> int:
            if n_levels == 0:
                return 0
            total = word_len(value.base, n_levels - 1)
            for s, t in value.chain:
                total += 1 if s == 1 else word_len(t, n_levels - 1)
            return total

        return word_len(w.value, len(self.levels))

    def flatten(self, w: AmalgamWord) -> tuple:
        """The word as alternating (vertex_tag, element) letters, identities dropped."""

        def emit(value, n_levels: int):
            if n_levels == 0:
                if value != self.hub_group.identity:
                    yield (self.hub_vertex_tag, value)
                return
            yield from emit(value.base, n_levels - 1)
            leaf_tag = f"leaf{self.leaves[n_levels - 1].index}"
            for s, t in value.chain:
                if s == 1:
                    yield (leaf_tag, t)
                else:
                    yield from emit(t, n_levels - 1)

        return tuple(emit(w.value, len(self.levels)))

    def format_word(self, w: AmalgamWord) -> str:
        letters = self.flatten(w)
        if not letters:
            return "1"
        return " * ".join(f"{tag}:{self.vertex_label(tag, elt)}" for tag, elt in letters)

    def vertex_label(self, tag: str, elt) -> str:
        return f"m{elt}"

    def element_of_s(self, w: AmalgamWord):
        """The S element represented by w, or None if w is not in delta(S)."""
        value = w.value
        for level in reversed(self.levels):
            if value.chain:
                return None
            value = value.base
        return self.hub_p_image.get(value)

    def conjugate_subgroup(self, w: AmalgamWord, P: Subgroup) -> Optional[Subgroup]:
        """w P w^-1 computed letter by letter; None when an intermediate step
        leaves the distinguished p-subgroup of the current vertex.

        Hub letters (including letters of a leaf that absorbed the hub) work
        inside delta(S); a leaf-i letter works inside delta(N_S(P_i))."""
        F = self.setup.fusion
        current = F.canon(P)
        for tag, elt in reversed(self.flatten(w)):
            if tag == self.hub_vertex_tag:
                current = self._conj_hub_step(elt, current)
            else:
                current = self._conj_leaf_step(int(tag[4:]), elt, current)
            if current is None:
                return None
        return current

    def _conj_hub_step(self, elt, current: Subgroup) -> Optional[Subgroup]:
        F = self.setup.fusion
        images = []
        inv = self.hub_group.inv(elt)
        for x in current.elements:
            h = self.delta_hub.get(x)
            if h is None:
                return None
            y = self.hub_group.mul(self.hub_group.mul(elt, h), inv)
            s = self.hub_p_image.get(y)
            if s is None:
                return None
            images.append(s)
        return F.subgroup_from_elements(frozenset(images))

    def _conj_leaf_step(self, leaf_index: int, elt, current: Subgroup) -> Optional[Subgroup]:
        F = self.setup.fusion
        leaf = next((l for l in self.setup.leaves if l.index == leaf_index), None)
        if leaf is None:
            raise AmalgamError(f"no leaf {leaf_index}")
        to_s, from_s = self.leaf_p_image.get(leaf_index) or self._collapsed_leaf_tables(leaf)
        group = leaf.group
        inv = group.inv(elt)
        images = []
        for x in current.elements:
            h = from_s.get(x)
            if h is None:
                return None
            y = group.mul(group.mul(elt, h), inv)
            s = to_s.get(y)
            if s is None:
                return None
            images.append(s)
        return F.subgroup_from_elements(frozenset(images))

    def _collapsed_leaf_tables(self, leaf: Leaf):
        L = self.setup.linking
        table = L.delta[(leaf.obj_index, leaf.obj_index)]
        return ({table[g]: g for g in leaf.n_s_p.elements}, {g: table[g] for g in leaf.n_s_p.elements})

    # -- enumeration ---------------------------------------------------------

    def vertex_letters(self) -> tuple:
        out = [(self.hub_vertex_tag, x) for x in self.hub_group.elements]
        for leaf in self.leaves:
            out.extend((f"leaf{leaf.index}", x) for x in leaf.group.elements)
        return tuple(out)

    def random_word(self, rng: random.Random, n_letters: int) -> AmalgamWord:
        letters = self.vertex_letters()
        out = self.identity()
        for _ in range(n_letters):
            tag, elt = letters[rng.randrange(len(letters))]
            if tag == self.hub_vertex_tag:
                out = self.multiply(out, self.hub_word(elt))
            else:
                out = self.multiply(out, self.leaf_word(int(tag[4:]), elt))
        return out

    def words_up_to_length(self, radius: int) -> list[AmalgamWord]:
        """All normal forms of flattened length <= radius (finite set)."""
        seen = {}
        for x in self.hub_group.elements:
            w = self.hub_word(x)
            seen[w.key()] = w
        frontier = list(seen.values())
        while frontier:
            new = []
            for w in frontier:
                for leaf in self.leaves:
                    for elt in leaf.group.elements:
                        for hub_elt in self.hub_group.elements:
                            cand = self.multiply(self.multiply(w, self.leaf_word(leaf.index, elt)), self.hub_word(hub_elt))
                            if cand.length() <= radius and cand.key() not in seen:
                                seen[cand.key()] = cand
                                new.append(cand)
            frontier = new
        return sorted(seen.values(), key=lambda w: w.key())

    def all_elements(self) -> list[AmalgamWord]:
        """Every element, for collapsed (finite) amalgams only."""
        if self.leaves:
            raise AmalgamError("the amalgam is infinite; use words_up_to_length")
        return [AmalgamWord(self, x) for x in self.hub_group.elements]


def build_amalgam(setup: RobinsonSetup) -> AmalgamGroup:
    return AmalgamGroup(setup)


# ---------------------------------------------------------------------------
# fusion verification and the center


def verify_fusion(G, F: Optional[FusionSystem] = None) -> dict:
    """Check that the vertex fusions generate exactly F (the amalgam theorem).

    Generators: the fusion maps of Aut_L(S) acting on S, plus for each leaf the
    fusion of Aut_L(P) on N_S(P) read through delta.  The report carries the
    number of pairs compared and a witness when the systems differ.
    """
    setup = G.setup if isinstance(G, AmalgamGroup) else G
    if F is None:
        F = setup.fusion
    L = setup.linking
    S = F.canon(F.S)
    gens: list[GroupHom] = []
    for m in L.mor(L.s_index, L.s_index):
        gens.append(GroupHom(S, F.S, dict(L.rho[m].mapping)))
    for leaf in setup.leaves:
        table = L.delta[(leaf.obj_index, leaf.obj_index)]
        to_s = {table[g]: g for g in leaf.n_s_p.elements}
        from_s = {g: table[g] for g in leaf.n_s_p.elements}
        group = leaf.group
        for a in group.elements:
            inv = group.inv(a)
            dom = [x for x in from_s if group.mul(group.mul(a, from_s[x]), inv) in to_s]
            # {x : a delta(x) a^-1 in delta(N_S(P))} is a subgroup of N_S(P)
            best = F.subgroup_from_elements(frozenset(dom))
            gens.append(GroupHom(best, F.S, {x: to_s[group.mul(group.mul(a, from_s[x]), inv)] for x in best.elements}))

    generated = generated_fusion(F.S, gens, F.p)
    equal, witness = fusion_equals(F, generated, witness=True)
    return {
        "equal": equal,
        "witness": witness,
        "pair_counts_checked": len(F.subgroups()),
        "variant": setup.variant,
    }


def amalgam_center(G) -> Subgroup:
    """Z(G) = the part of Z(S) whose image is central in every vertex group."""
    setup = G.setup if isinstance(G, AmalgamGroup) else G
    F = setup.fusion
    L = setup.linking
    S = F.canon(F.S)
    delta_s = setup.delta_s()
    out = []
    for z in center(S).elements:
        hub_elt = delta_s[z]
        if any(setup.hub.mul(hub_elt, x) != setup.hub.mul(x, hub_elt) for x in setup.hub.elements):
            continue
        ok = True
        for leaf in setup.leaves:
            y = L.delta[(leaf.obj_index, leaf.obj_index)][z]
            if any(leaf.group.mul(y, x) != leaf.group.mul(x, y) for x in leaf.group.elements):
                ok = False
                break
        if ok:
            out.append(z)
    return Subgroup(S.ambient, out)


def transporter_in_amalgam(G: AmalgamGroup, P: Subgroup, Q: Subgroup, radius: int) -> dict:
    """Words w of normal-form length <= radius with w P w^-1 <= Q.

    The full transporter set is infinite in general; the report is always
    labeled with the radius it was truncated at.
    """
    F = G.setup.fusion
    P = F.canon(P)
    Q = F.canon(Q)
    hits = []
    for w in G.words_up_to_length(radius):
        img = G.conjugate_subgroup(w, P)
        if img is not None and img.element_set <= Q.element_set:
            hits.append(w)
    return {"radius": radius, "truncated": bool(G.leaves), "words": hits}
