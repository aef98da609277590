"""Exact finite group kernel.

Everything here is materialized: groups are explicit element sets, homomorphisms
are full element-to-element maps, quotients are multiplication tables.  No
Schreier-Sims, no coset hashing tricks.  At the orders this library targets
(ambient groups up to ~10^4 elements, automorphism searches up to a few hundred)
exactness and determinism matter more than asymptotics.

Conventions:
  * permutations act on points 0..degree-1 and compose right-to-left,
    (p * q)(i) = p(q(i));
  * every element sequence exposed by a group is sorted by a deterministic key,
    so repeated runs enumerate identically;
  * conjugation is c_g(x) = g x g^-1.
"""

from __future__ import annotations

import itertools
import os
from typing import Callable, Iterable, Optional, Sequence


class ResourceBoundExceeded(Exception):
    """An enumeration was asked to run past its configured order bound."""


def _env_bound(name: str, default: int) -> int:
    value = os.environ.get("FLAB_MAX_ORDER")
    if value is None:
        return default
    try:
        return int(value)
    except ValueError as exc:
        raise ValueError(f"bad FLAB_MAX_ORDER value {value!r}") from exc


SUBGROUP_SCAN_BOUND = 10_000
AUT_SEARCH_BOUND = 512


def subgroup_scan_bound() -> int:
    return _env_bound("FLAB_MAX_ORDER", SUBGROUP_SCAN_BOUND)


def aut_search_bound() -> int:
    return _env_bound("FLAB_MAX_ORDER", AUT_SEARCH_BOUND)


# ---------------------------------------------------------------------------
# permutations


class Perm:
    """A permutation of {0, ..., degree-1}, stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images!r}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Perm is immutable")

    @property
    def degree(self) -> int:
        return len(self.images)

    @staticmethod
    def identity(degree: int) -> "Perm":
        return Perm(range(degree))

    @staticmethod
    def from_cycles(degree: int, *cycles: Sequence[int]) -> "Perm":
        images = list(range(degree))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:] + type(cycle)((cycle[0],))):
                images[a] = b
        return Perm(images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Perm") -> "Perm":
        if len(self.images) != len(other.images):
            raise ValueError("degree mismatch")
        s = self.images
        return Perm(tuple(s[i] for i in other.images))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv)

    def __pow__(self, n: int) -> "Perm":
        if n < 0:
            return self.inverse() ** (-n)
        result = Perm.identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def order(self) -> int:
        n = 1
        p = self
        e = Perm.identity(self.degree)
        while p != e:
            p = p * self
            n += 1
        return n

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cycle = [start]
            seen[start] = True
            point = self.images[start]
            while point != start:
                cycle.append(point)
                seen[point] = True
                point = self.images[point]
            out.append(tuple(cycle))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __lt__(self, other: "Perm") -> bool:
        return self.images < other.images

    def __repr__(self) -> str:
        # 1-based cycle notation for human eyes; the wire format stays 0-based.
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cycles)


def conj_perm(g: Perm, x: Perm, g_inv: Optional[Perm] = None) -> Perm:
    """g x g^-1 in one pass, avoiding intermediate Perm allocations."""
    if g_inv is None:
        g_inv = g.inverse()
    gi = g.images
    xi = x.images
    gv = g_inv.images
    return Perm(tuple(gi[xi[gv[i]]] for i in range(len(gi))))


# ---------------------------------------------------------------------------
# group carriers


class FiniteGroup:
    """Common interface shared by permutation groups, table groups and subgroups.

    `elements` is always a sorted tuple; `carrier_key()` identifies the ambient
    universe elements live in, so subgroups of distinct universes never compare
    equal by accident.
    """

    elements: tuple = ()

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def carrier_key(self):
        raise NotImplementedError

    def element_key(self, x):
        """Deterministic sort key for an element."""
        return x.images if isinstance(x, Perm) else x

    @property
    def element_set(self) -> frozenset:
        cached = getattr(self, "_element_set", None)
        if cached is None:
            cached = frozenset(self.elements)
            self._element_set = cached
        return cached

    def __contains__(self, x) -> bool:
        return x in self.element_set

    def conj(self, g, x):
        return self.mul(self.mul(g, x), self.inv(g))

    def element_order(self, x) -> int:
        n = 1
        y = x
        e = self.identity
        while y != e:
            y = self.mul(y, x)
            n += 1
        return n

    def is_abelian(self) -> bool:
        els = self.elements
        return all(self.mul(a, b) == self.mul(b, a) for i, a in enumerate(els) for b in els[i + 1 :])

    def is_p_group(self, p: int) -> bool:
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1

    def sorted_elements(self, elts: Iterable) -> tuple:
        return tuple(sorted(elts, key=self.element_key))

    def subgroup(self, elts: Iterable, generators: Optional[Sequence] = None) -> "Subgroup":
        return Subgroup(self, elts, generators)

    def full_subgroup(self) -> "Subgroup":
        return Subgroup(self, self.elements)


class PermGroup(FiniteGroup):
    """A finite permutation group with a fully materialized element set."""

    def __init__(self, degree: int, generators: Sequence[Perm], elements: Optional[Iterable[Perm]] = None):
        for g in generators:
            if g.degree != degree:
                raise ValueError(f"generator degree {g.degree} != {degree}")
        self.degree = degree
        self.generators = tuple(generators)
        if elements is None:
            elements = _closure_elements(degree, self.generators)
        self.elements = self.sorted_elements(elements)

    @property
    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def mul(self, a: Perm, b: Perm) -> Perm:
        return a * b

    def inv(self, a: Perm) -> Perm:
        return a.inverse()

    def carrier_key(self):
        return ("perm", self.degree)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order})"


def _closure_elements(degree: int, generators: Sequence[Perm]) -> set[Perm]:
    identity = Perm.identity(degree)
    elements = {identity}
    frontier = [identity]
    while frontier:
        new = []
        for x in frontier:
            for g in generators:
                y = x * g
                if y not in elements:
                    elements.add(y)
                    new.append(y)
        frontier = new
    return elements


def closure(generators: Sequence[Perm], degree: Optional[int] = None) -> PermGroup:
    """The permutation group generated by `generators`.

    An empty generating set needs an explicit degree to pin the carrier.
    """
    if not generators:
        if degree is None:
            raise ValueError("empty generating set needs an explicit degree")
        return PermGroup(degree, ())
    degrees = {g.degree for g in generators}
    if len(degrees) != 1:
        raise ValueError(f"generators of mixed degree: {sorted(degrees)}")
    d = degrees.pop()
    if degree is not None and degree != d:
        raise ValueError(f"generator degree {d} != requested degree {degree}")
    return PermGroup(d, tuple(generators))


class FiniteGroupTable(FiniteGroup):
    """A group given by labels and an explicit multiplication table.

    Used as the carrier for quotients and for automorphism groups inside a
    linking system.  The table is validated on construction: identity,
    associativity and inverses all hold or ValueError is raised.
    """

    def __init__(self, labels: Sequence[str], table: Sequence[Sequence[int]], identity_index: int = 0, validate: bool = True):
        self.labels = tuple(labels)
        n = len(self.labels)
        self.table = tuple(tuple(row) for row in table)
        self.identity_index = identity_index
        self.elements = tuple(range(n))
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise ValueError("table shape does not match label count")
        if validate:
            self._validate()
        self._inverses = self._compute_inverses()

    def _validate(self) -> None:
        n = len(self.elements)
        e = self.identity_index
        for i in range(n):
            if self.table[e][i] != i or self.table[i][e] != i:
                raise ValueError(f"identity law fails at element {i}")
        for row in self.table:
            if sorted(row) != list(range(n)):
                raise ValueError("table rows must be permutations (no inverses otherwise)")
        for i in range(n):
            for j in range(n):
                ij = self.table[i][j]
                for k in range(n):
                    if self.table[ij][k] != self.table[i][self.table[j][k]]:
                        raise ValueError(f"associativity fails at ({i},{j},{k})")

    def _compute_inverses(self) -> tuple:
        n = len(self.elements)
        inv = [0] * n
        e = self.identity_index
        for i in range(n):
            for j in range(n):
                if self.table[i][j] == e:
                    inv[i] = j
                    break
            else:
                raise ValueError(f"element {i} has no inverse")
        return tuple(inv)

    @property
    def identity(self) -> int:
        return self.identity_index

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inverses[a]

    def carrier_key(self):
        return ("table", id(self))

    def label(self, x: int) -> str:
        return self.labels[x]

    def __repr__(self) -> str:
        return f"FiniteGroupTable(order={self.order})"


def table_from_group(elements: Sequence, mul: Callable, labels: Optional[Sequence[str]] = None, identity=None) -> tuple[FiniteGroupTable, dict]:
    """Tabulate an abstract multiplication on `elements`.

    Returns the table group together with the element -> index dictionary.
    """
    index = {x: i for i, x in enumerate(elements)}
    table = [[index[mul(a, b)] for b in elements] for a in elements]
    if identity is None:
        identity_index = next(i for i, x in enumerate(elements) if all(mul(x, y) == y for y in elements))
    else:
        identity_index = index[identity]
    if labels is None:
        labels = [f"x{i}" for i in range(len(elements))]
    return FiniteGroupTable(labels, table, identity_index), index


class Subgroup(FiniteGroup):
    """A subgroup of an ambient FiniteGroup, hashed by its element set.

    `ambient` is always a root carrier (PermGroup or FiniteGroupTable); building
    a Subgroup of a Subgroup collapses to the underlying root, so V viewed
    inside S and V viewed inside G compare equal.
    """

    def __init__(self, ambient: FiniteGroup, elts: Iterable, generators: Optional[Sequence] = None):
        if isinstance(ambient, Subgroup):
            ambient = ambient.ambient
        self.ambient = ambient
        self.elements = ambient.sorted_elements(set(elts))
        self.generators = tuple(generators) if generators is not None else None

    @property
    def identity(self):
        return self.ambient.identity

    def mul(self, a, b):
        return self.ambient.mul(a, b)

    def inv(self, a):
        return self.ambient.inv(a)

    def carrier_key(self):
        return self.ambient.carrier_key()

    def element_key(self, x):
        return self.ambient.element_key(x)

    def key(self):
        return (self.carrier_key(), self.element_set)

    def sort_key(self):
        return tuple(self.element_key(x) for x in self.elements)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash((self.carrier_key(), self.element_set))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order})"

    def gens(self) -> tuple:
        if self.generators is not None:
            return self.generators
        gens = generating_set(self)
        self.generators = gens
        return gens


def subgroup_closure(G: FiniteGroup, seed: Iterable) -> Subgroup:
    """Smallest subgroup of G containing `seed`."""
    seed = list(seed)
    elements = {G.identity}
    gens = []
    for s in seed:
        gens.append(s)
        gens.append(G.inv(s))
    frontier = [G.identity]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = G.mul(x, g)
                if y not in elements:
                    elements.add(y)
                    new.append(y)
        frontier = new
    return Subgroup(G, elements, generators=tuple(seed))


def is_subgroup_set(G: FiniteGroup, elts: frozenset) -> bool:
    if G.identity not in elts:
        return False
    return all(G.mul(a, b) in elts for a in elts for b in elts)


def generating_set(H: FiniteGroup) -> tuple:
    """A small (greedy) generating sequence for H, deterministic."""
    gens: list = []
    span = {H.identity}
    for x in H.elements:
        if x in span:
            continue
        gens.append(x)
        span = set(subgroup_closure(H, gens).elements)
        if len(span) == len(H.elements):
            break
    return tuple(gens)


# ---------------------------------------------------------------------------
# normalizers, centralizers, Sylow machinery


def _as_subgroup(G: FiniteGroup, H) -> Subgroup:
    if isinstance(H, Subgroup):
        return H
    return Subgroup(G, H)


def _require_subgroup(G: FiniteGroup, H: Subgroup) -> None:
    ambient = G.ambient if isinstance(G, Subgroup) else G
    if H.carrier_key() != ambient.carrier_key() or not H.element_set <= G.element_set:
        raise ValueError("H is not a subgroup of G")


def normalizer(G: FiniteGroup, H) -> Subgroup:
    """N_G(H), by scanning the elements of G against generators of H."""
    H = _as_subgroup(G, H)
    _require_subgroup(G, H)
    gens = H.gens()
    hset = H.element_set
    out = []
    for g in G.elements:
        gi = G.inv(g)
        if all(G.mul(G.mul(g, h), gi) in hset for h in gens):
            out.append(g)
    return Subgroup(G, out)


def centralizer(G: FiniteGroup, H) -> Subgroup:
    H = _as_subgroup(G, H)
    _require_subgroup(G, H)
    gens = H.gens()
    out = [g for g in G.elements if all(G.mul(g, h) == G.mul(h, g) for h in gens)]
    return Subgroup(G, out)


def center(G: FiniteGroup) -> Subgroup:
    out = [g for g in G.elements if all(G.mul(g, h) == G.mul(h, g) for h in G.elements)]
    return Subgroup(G, out)


def conjugate_subgroup_by(G: FiniteGroup, g, H: Subgroup) -> Subgroup:
    gi = G.inv(g)
    return Subgroup(G, (G.mul(G.mul(g, h), gi) for h in H.elements))


def transporter(G: FiniteGroup, P: Subgroup, Q: Subgroup) -> list:
    """N_G(P, Q) = all g in G with g P g^-1 <= Q, in deterministic order."""
    gens = P.gens()
    qset = Q.element_set
    out = []
    for g in G.elements:
        gi = G.inv(g)
        if all(G.mul(G.mul(g, h), gi) in qset for h in gens):
            out.append(g)
    return out


def p_part(n: int, p: int) -> int:
    m = 1
    while n % p == 0:
        n //= p
        m *= p
    return m


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def sylow(G: FiniteGroup, p: int) -> Subgroup:
    """A Sylow p-subgroup of G.

    Grows a p-subgroup P by repeatedly finding x in N_G(P) with x^p in P and
    x outside P; <P, x> is then a p-group of order p|P|.  Such x exists while
    |P| is short of the full p-part, so this terminates with a true Sylow.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    target = p_part(G.order, p)
    P = Subgroup(G, [G.identity])
    while P.order < target:
        N = normalizer(G, P)
        for x in N.elements:
            if x in P.element_set:
                continue
            xp = x
            for _ in range(p - 1):
                xp = G.mul(xp, x)
            if xp in P.element_set:
                P = subgroup_closure(G, list(P.elements) + [x])
                break
        else:
            raise RuntimeError("Sylow growth step failed; group data is inconsistent")
    return P


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup of G, found by closing known subgroups against elements.

    Any subgroup <g1,...,gm> arises by adjoining generators one at a time, and
    each intermediate closure is itself a subgroup, so the sweep is exhaustive.
    """
    if G.order > subgroup_scan_bound():
        raise ResourceBoundExceeded(f"|G| = {G.order} exceeds subgroup scan bound {subgroup_scan_bound()}")
    trivial = Subgroup(G, [G.identity])
    found = {trivial.element_set: trivial}
    frontier = [trivial]
    while frontier:
        new = []
        for H in frontier:
            for x in G.elements:
                if x in H.element_set:
                    continue
                K = subgroup_closure(G, list(H.elements) + [x])
                if K.element_set not in found:
                    K = Subgroup(G, K.elements)  # drop the fat seed; gens() recomputes lean ones
                    found[K.element_set] = K
                    new.append(K)
        frontier = new
    return sorted(found.values(), key=lambda H: (H.order, H.sort_key()))


def conjugacy_classes_of_subgroups(G: FiniteGroup, subgroups: Optional[Sequence[Subgroup]] = None) -> list[list[Subgroup]]:
    if subgroups is None:
        subgroups = all_subgroups(G)
    remaining = {H.element_set: H for H in subgroups}
    classes = []
    while remaining:
        key = min(remaining, key=lambda s: remaining[s].sort_key())
        H = remaining.pop(key)
        orbit = {H.element_set: H}
        frontier = [H]
        while frontier:
            new = []
            for K in frontier:
                for g in G.elements:
                    Kg = conjugate_subgroup_by(G, g, K)
                    if Kg.element_set not in orbit:
                        orbit[Kg.element_set] = Kg
                        new.append(Kg)
            frontier = new
        for s in orbit:
            remaining.pop(s, None)
        classes.append(sorted(orbit.values(), key=lambda H: H.sort_key()))
    classes.sort(key=lambda cls: (cls[0].order, cls[0].sort_key()))
    return classes


def subgroups_up_to_conjugacy(G: FiniteGroup) -> list[Subgroup]:
    """One representative per conjugacy class, ordered by (order, element key)."""
    return [cls[0] for cls in conjugacy_classes_of_subgroups(G)]


# ---------------------------------------------------------------------------
# homomorphisms


class GroupHom:
    """A homomorphism stored as its full element-to-element graph."""

    def __init__(self, source: FiniteGroup, target: FiniteGroup, mapping: dict, validate: bool = False):
        self.source = source
        self.target = target
        self.mapping = dict(mapping)
        if set(self.mapping) != set(source.elements):
            raise ValueError("mapping must be defined on every source element")
        if validate:
            for a in source.elements:
                for b in source.elements:
                    if self.mapping[source.mul(a, b)] != target.mul(self.mapping[a], self.mapping[b]):
                        raise ValueError("mapping is not multiplicative")

    @staticmethod
    def identity(G: FiniteGroup) -> "GroupHom":
        return GroupHom(G, G, {x: x for x in G.elements})

    @staticmethod
    def from_gen_images(source: FiniteGroup, target: FiniteGroup, gens: Sequence, images: Sequence) -> Optional["GroupHom"]:
        mapping = extend_gen_images(source, target, gens, images)
        if mapping is None:
            return None
        return GroupHom(source, target, mapping)

    def __call__(self, x):
        return self.mapping[x]

    def graph_key(self) -> tuple:
        sk = self.source.element_key
        tk = self.target.element_key
        return tuple(sorted((sk(a), tk(b)) for a, b in self.mapping.items()))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupHom)
            and self.source.carrier_key() == other.source.carrier_key()
            and self.target.carrier_key() == other.target.carrier_key()
            and self.mapping == other.mapping
        )

    def __hash__(self) -> int:
        return hash((self.source.carrier_key(), self.target.carrier_key(), frozenset(self.mapping.items())))

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self after other."""
        return GroupHom(other.source, self.target, {x: self.mapping[y] for x, y in other.mapping.items()})

    def restrict(self, sub: Subgroup) -> "GroupHom":
        if not sub.element_set <= set(self.mapping):
            raise ValueError("restriction domain is not inside the source")
        return GroupHom(sub, self.target, {x: self.mapping[x] for x in sub.elements})

    def image(self) -> Subgroup:
        root = self.target.ambient if isinstance(self.target, Subgroup) else self.target
        return Subgroup(root, set(self.mapping.values()))

    def kernel(self) -> Subgroup:
        e = self.target.identity
        root = self.source.ambient if isinstance(self.source, Subgroup) else self.source
        return Subgroup(root, [x for x, y in self.mapping.items() if y == e])

    def is_injective(self) -> bool:
        return len(set(self.mapping.values())) == len(self.mapping)

    def inverse(self) -> "GroupHom":
        if not self.is_injective():
            raise ValueError("not injective")
        src = self.image()
        return GroupHom(src, self.source, {y: x for x, y in self.mapping.items()})

    def __repr__(self) -> str:
        return f"GroupHom(|dom|={len(self.mapping)})"


def extend_gen_images(source: FiniteGroup, target: FiniteGroup, gens: Sequence, images: Sequence) -> Optional[dict]:
    """Extend gens -> images to a homomorphism, or return None.

    BFS over the source: every element is reached as (known) * gen, and a
    revisit with a conflicting image kills the candidate.  Reaching all of the
    source with no conflict certifies multiplicativity.
    """
    mapping = {source.identity: target.identity}
    pairs = list(zip(gens, images))
    frontier = [source.identity]
    while frontier:
        new = []
        for x in frontier:
            fx = mapping[x]
            for g, fg in pairs:
                y = source.mul(x, g)
                fy = target.mul(fx, fg)
                known = mapping.get(y)
                if known is None:
                    mapping[y] = fy
                    new.append(y)
                elif known != fy:
                    return None
        frontier = new
    if len(mapping) != source.order:
        return None  # gens do not generate the source
    # BFS consistency pins products against generators only; check the rest.
    for g, fg in pairs:
        if mapping[g] != fg:
            return None
    for a in source.elements:
        fa = mapping[a]
        for g, fg in pairs:
            if mapping[source.mul(g, a)] != target.mul(fg, fa):
                return None
    return mapping


def isomorphisms(
    source: FiniteGroup,
    target: FiniteGroup,
    pinned: Optional[dict] = None,
    element_filter: Optional[Callable] = None,
    limit: Optional[int] = None,
) -> list[GroupHom]:
    """All isomorphisms source -> target, optionally pinned on a partial map.

    `pinned` maps some source elements to forced images (it must be closed
    under nothing in particular; its subgroup closure is used).  The search
    maps a generating set, validates by BFS extension, and keeps bijections.
    `element_filter(x, y)` may veto candidate images pointwise.
    """
    if source.order != target.order:
        return []
    if source.order > aut_search_bound():
        raise ResourceBoundExceeded(f"|G| = {source.order} exceeds automorphism search bound {aut_search_bound()}")

    pinned = dict(pinned or {})
    base_gens = list(pinned.keys())
    span = subgroup_closure(source, base_gens) if base_gens else Subgroup(source, [source.identity])
    extra = []
    while span.order < source.order:
        x = next(e for e in source.elements if e not in span.element_set)
        extra.append(x)
        span = subgroup_closure(source, base_gens + extra)

    by_order: dict[int, list] = {}
    for y in target.elements:
        by_order.setdefault(target.element_order(y), []).append(y)

    gens = base_gens + extra
    found = []
    seen = set()

    def candidates(x):
        opts = by_order.get(source.element_order(x), [])
        if element_filter is None:
            return opts
        return [y for y in opts if element_filter(x, y)]

    pools = [[pinned[g]] for g in base_gens] + [candidates(g) for g in extra]
    for images in itertools.product(*pools):
        mapping = extend_gen_images(source, target, gens, images)
        if mapping is None:
            continue
        if len(set(mapping.values())) != source.order:
            continue
        if element_filter is not None and any(not element_filter(a, b) for a, b in mapping.items()):
            continue
        key = tuple(sorted((source.element_key(a), target.element_key(b)) for a, b in mapping.items()))
        if key in seen:
            continue
        seen.add(key)
        found.append(GroupHom(source, target, mapping))
        if limit is not None and len(found) >= limit:
            break
    found.sort(key=lambda h: h.graph_key())
    return found


def automorphisms(G: FiniteGroup) -> list[GroupHom]:
    """All automorphisms of G by brute-force generator-image search."""
    return isomorphisms(G, G)


def o_p(G: FiniteGroup, p: int) -> Subgroup:
    """O_p(G): the largest normal p-subgroup, as the intersection of the Sylows."""
    if G.order % p != 0:
        return Subgroup(G, [G.identity])
    S = sylow(G, p)
    core = set(S.elements)
    for g in G.elements:
        if len(core) == 1:
            break
        gi = G.inv(g)
        core &= {G.mul(G.mul(g, s), gi) for s in S.elements}
    return Subgroup(G, core)


def normal_p_complement(G: FiniteGroup, p: int) -> Optional[Subgroup]:
    """The normal p-complement of G, or None when it does not exist.

    A normal p-complement is forced to equal the set K of p'-elements (every
    p'-element maps to a p'-element of the p-group G/K, hence trivially), so
    existence is exactly "K is a subgroup".  Failure is a value, not an error:
    centricity scans consume it as a predicate.
    """
    K = frozenset(x for x in G.elements if G.element_order(x) % p != 0 or G.element_order(x) == 1)
    K = frozenset(x for x in G.elements if p_part(G.element_order(x), p) == 1)
    if not is_subgroup_set(G, K):
        return None
    H = Subgroup(G, K)
    assert H.order * p_part(G.order, p) == G.order
    return H


class QuotientResult:
    """G/K as a table group, with the projection and the coset partition."""

    def __init__(self, table: FiniteGroupTable, projection: GroupHom, cosets: tuple):
        self.table = table
        self.projection = projection
        self.cosets = cosets


def quotient(G: FiniteGroup, K) -> QuotientResult:
    K = _as_subgroup(G, K)
    _require_subgroup(G, K)
    for g in G.elements:
        gi = G.inv(g)
        if any(G.mul(G.mul(g, k), gi) not in K.element_set for k in K.gens()):
            raise ValueError("K is not normal in G")
    coset_of = {}
    cosets = []
    for g in G.elements:  # sorted, so each coset is named by its least element
        if g in coset_of:
            continue
        coset = frozenset(G.mul(g, k) for k in K.elements)
        idx = len(cosets)
        cosets.append((g, coset))
        for x in coset:
            coset_of[x] = idx
    labels = [f"[{_label_of(G, rep)}]" for rep, _ in cosets]
    n = len(cosets)
    table = [[coset_of[G.mul(cosets[i][0], cosets[j][0])] for j in range(n)] for i in range(n)]
    tg = FiniteGroupTable(labels, table, identity_index=coset_of[G.identity])
    proj = GroupHom(G, tg, {x: coset_of[x] for x in G.elements})
    return QuotientResult(tg, proj, tuple(c for _, c in cosets))


def _label_of(G: FiniteGroup, x) -> str:
    if isinstance(x, Perm):
        return repr(x)
    root = G.ambient if isinstance(G, Subgroup) else G
    if isinstance(root, FiniteGroupTable):
        return root.label(x)
    return str(x)
