"""Command-line front end, worked-example catalog, and report emission.

Every command is a thin shell over the library.  Reports are built as plain
dict trees with sorted, fully deterministic content, so the JSON rendering of
a run is byte-identical across invocations; the text rendering is a walk of
the same tree.

Exit codes: 0 all checks pass, 1 a check failed, 2 bad input, 3 a configured
resource bound was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from typing import Optional

from .amalgam import (
    LIBMAN_SEELIGER,
    ROBINSON,
    AmalgamError,
    AmalgamGroup,
    amalgam_center,
    build_amalgam,
    build_setup,
    transporter_in_amalgam,
    verify_fusion,
)
from .autos import (
    AmalgamAutomorphism,
    AutContext,
    AutosError,
    exact_sequence_report,
    induced_equivalence,
    itworks_check,
    leaf_permutation,
    only2_applies,
    section_automorphism,
    verify_split,
)
from .fusion import FusionError, analyze, check_saturation, controlling_family, fusion_from_group
from .groups import Perm, ResourceBoundExceeded, closure
from .linking import (
    AxiomFailure,
    LinkingError,
    center_functor,
    constant_functor,
    higher_limits,
    inverse_limit,
    linking_from_data,
    linking_from_group,
    linking_to_data,
    orbit_category,
    validate_linking,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_RESOURCE = 3


class CatalogEntry:
    """A worked example: a group file or an abstract linking file plus a prime."""

    def __init__(self, name: str, kind: str, resource: str, prime: int, notes: str):
        self.name = name
        self.kind = kind  # "group" | "linking"
        self.resource = resource
        self.prime = prime
        self.notes = notes

    def as_dict(self) -> dict:
        return {"name": self.name, "kind": self.kind, "file": self.resource, "prime": self.prime, "notes": self.notes}


_CATALOG = [
    CatalogEntry("s4-d8", "group", "s4-d8.json", 2, "symmetric group on 4 points; the amalgam collapses to a finite group"),
    CatalogEntry("a6-d8", "group", "a6-d8.json", 2, "alternating group on 6 points; two Klein-four leaves, infinite amalgam"),
    CatalogEntry("pgl2-9", "group", "pgl2-9.json", 2, "projective general linear group over F9 on 10 points; dihedral Sylow of order 16"),
    CatalogEntry("inner-d8", "group", "inner-d8.json", 2, "dihedral group of order 8 fusing only by inner maps; single-vertex star"),
    CatalogEntry("s4-d8-linking", "linking", "s4-d8-linking.json", 2, "abstract linking-system input equal to the export of s4-d8"),
    CatalogEntry("bad-linking-missing-iota", "linking", "bad-linking-missing-iota.json", 2, "negative test: a distinguished inclusion was deleted"),
    CatalogEntry("bad-linking-nonfree", "linking", "bad-linking-nonfree.json", 2, "negative test: the center action on a morphism set was broken"),
]


def catalog() -> list[CatalogEntry]:
    return list(_CATALOG)


def catalog_entry(name: str) -> CatalogEntry:
    for entry in _CATALOG:
        if entry.name == name:
            return entry
    raise FileNotFoundError(f"no catalog entry named {name!r}")


def _read_resource(resource: str) -> dict:
    with resources.files("flab.data").joinpath(resource).open() as fh:
        return json.load(fh)


def load_group_data(data: dict):
    gens = [Perm(images) for images in data["generators"]]
    return closure(gens, degree=int(data["degree"]))


class EntryStack:
    """Everything computed from one catalog entry, built lazily and cached."""

    def __init__(self, entry: CatalogEntry, variant: str = LIBMAN_SEELIGER, family_mode: str = "complete"):
        self.entry = entry
        self.variant = variant
        self.family_mode = family_mode
        data = _read_resource(entry.resource)
        if entry.kind == "group":
            self.group = load_group_data(data)
            self.fusion = fusion_from_group(self.group, None, entry.prime)
            self.linking = linking_from_group(self.group, None, entry.prime, fusion=self.fusion)
        else:
            self.linking = linking_from_data(data)
            self.fusion = self.linking.fusion
            self.group = None
        self._family = None
        self._setup = None
        self._amalgam = None
        self._ctx = None

    @property
    def family(self):
        if self._family is None:
            if self.family_mode == "complete":
                self._family = controlling_family(self.fusion, complete=True)
            elif self.family_mode == "fclass":
                self._family = controlling_family(self.fusion, complete=False)
            elif self.family_mode == "{S}":
                self._family = (self.fusion.canon(self.fusion.S),)
            else:
                raise FusionError(f"unknown family mode {self.family_mode!r}")
        return self._family

    @property
    def setup(self):
        if self._setup is None:
            self._setup = build_setup(
                self.fusion, self.linking, self.family, self.variant, require_controlling=self.family_mode != "{S}"
            )
        return self._setup

    @property
    def amalgam(self) -> AmalgamGroup:
        if self._amalgam is None:
            self._amalgam = build_amalgam(self.setup)
        return self._amalgam

    @property
    def ctx(self) -> AutContext:
        if self._ctx is None:
            self._ctx = AutContext(self.linking, self.family)
        return self._ctx


_STACK_CACHE: dict = {}


def entry_stack(name: str, variant: str = LIBMAN_SEELIGER, family_mode: str = "complete") -> EntryStack:
    key = (name, variant, family_mode)
    if key not in _STACK_CACHE:
        _STACK_CACHE[key] = EntryStack(catalog_entry(name), variant, family_mode)
    return _STACK_CACHE[key]


# ---------------------------------------------------------------------------
# reports


class Report:
    """A deterministic result tree with twin renderings."""

    def __init__(self, title: str, tree: dict):
        self.title = title
        self.tree = tree

    def to_json(self) -> str:
        return json.dumps({"title": self.title, "report": self.tree}, indent=2, sort_keys=True)

    def render_text(self) -> str:
        lines = [self.title]

        def walk(node, indent):
            if isinstance(node, dict):
                for k in sorted(node):
                    v = node[k]
                    if isinstance(v, (dict, list)):
                        lines.append(" " * indent + f"{k}:")
                        walk(v, indent + 2)
                    else:
                        lines.append(" " * indent + f"{k}: {v}")
            elif isinstance(node, list):
                for i, v in enumerate(node):
                    if isinstance(v, (dict, list)):
                        lines.append(" " * indent + f"- [{i}]")
                        walk(v, indent + 2)
                    else:
                        lines.append(" " * indent + f"- {v}")

        walk(self.tree, 2)
        return "\n".join(lines)

    def passed(self) -> bool:
        def walk(node):
            if isinstance(node, dict):
                for k, v in node.items():
                    if k in ("passed", "equal", "all_pass", "all_split") and v is False:
                        return False
                    if isinstance(v, (dict, list)) and not walk(v):
                        return False
            elif isinstance(node, list):
                for v in node:
                    if isinstance(v, (dict, list)) and not walk(v):
                        return False
            return True

        return walk(self.tree)


def _emit(report: Report, as_json: bool) -> None:
    print(report.to_json() if as_json else report.render_text())


# ---------------------------------------------------------------------------
# pipeline


def run_pipeline(name: str, variant: str = LIBMAN_SEELIGER, family_mode: str = "complete") -> Report:
    """The whole verification chain for one catalog entry.

    Fusion analysis, saturation, linking validation, setup and amalgam,
    fusion verification, center comparison, outer-class enumeration, the
    split, the exact sequences, and the transporter-isomorphism criterion.
    Any stage that fails leaves its witness in the tree.
    """
    stack = entry_stack(name, variant, family_mode)
    F = stack.fusion
    tree: dict = {"entry": name, "variant": variant, "family_mode": family_mode}

    rep = analyze(F)
    tree["fusion"] = {
        "classes": len(rep.rows),
        "centric_classes": rep.centric_class_count(),
        "centric_radical_classes": rep.centric_radical_class_count(),
    }
    sat = check_saturation(F)
    tree["saturation"] = sat.as_dict()

    val = validate_linking(stack.linking)
    tree["linking"] = {"passed": val.passed, "failures": val.failures, "morphisms": stack.linking.morphism_count}

    tree["family"] = {"orders": [P.order for P in stack.family], "complete": stack.setup.is_complete}
    G = stack.amalgam
    tree["amalgam"] = {
        "collapsed_leaves": list(G.collapsed_leaves),
        "finite": not G.leaves,
        "hub_order": G.hub_group.order,
        "leaf_orders": [leaf.group.order for leaf in G.leaves],
    }
    vf = verify_fusion(G)
    tree["fusion_verification"] = {"equal": vf["equal"], "witness": vf["witness"]}
    if not vf["equal"]:
        tree["failed_stage"] = "fusion_verification"
        return Report(f"pipeline {name}", tree)

    zg = amalgam_center(G)
    cat, extra = orbit_category(F)
    Z = center_functor(F, cat, extra["reps"])
    lim = inverse_limit(cat, Z)
    tree["center"] = {
        "amalgam_center_order": zg.order,
        "limit_order": lim.group.order,
        "passed": zg.order == lim.group.order
        and (lim.center_embedding is None or zg.element_set == lim.center_embedding.element_set),
    }

    ctx = stack.ctx
    if stack.setup.is_complete:
        classes = ctx.out_classes()
        tree["outer_classes"] = {"count": len(classes), "sizes": [len(c) for c in classes]}
        vs = verify_split(ctx, G)
        tree["split"] = vs
        tree["exact_sequences"] = exact_sequence_report(ctx, G)
        iw = itworks_check(ctx, stack.setup)
        iw["only2_applies"] = only2_applies(iw)
        if iw["only2_applies"] and not G.leaves:
            iw["omega_injective_on_out"] = _collapsed_injectivity_check(ctx, G)
        tree["itworks"] = {k: v for k, v in iw.items() if k != "all_pass"} | {"all_pass": iw["all_pass"]}
    else:
        note = "class enumeration and the split need a complete fusion controlling family"
        tree["outer_classes"] = {"skipped": note}
        tree["split"] = {"skipped": note}
    return Report(f"pipeline {name}", tree)


def _collapsed_injectivity_check(ctx: AutContext, G: AmalgamGroup) -> bool:
    """For a finite (collapsed) amalgam: distinct outer classes of
    vertex-compatible automorphisms restrict to distinct outer classes."""
    from .groups import automorphisms as group_autos

    hub = G.hub_group
    delta_image = set(G.delta_hub.values())
    seen_pairs = []
    for phi in group_autos(hub):
        # normalize to preserve delta(S)
        adjust = None
        for g in hub.elements:
            if {hub.mul(hub.mul(g, phi(x)), hub.inv(g)) for x in delta_image} == delta_image:
                adjust = g
                break
        if adjust is None:
            continue
        mapping = {x: hub.mul(hub.mul(adjust, phi(x)), hub.inv(adjust)) for x in hub.elements}
        setup = G.setup
        conv_inv = {v: k for k, v in G.hub_conv.items()}
        theta_hub = {m: conv_inv[mapping[G.hub_conv[m]]] for m in setup.hub.elements}
        theta_leaf = {}
        y = {}
        for leaf in setup.leaves:
            theta_leaf[leaf.index] = {e: mapping[e] for e in leaf.group.elements}
            y[leaf.index] = setup.hub.identity
        try:
            auto = AmalgamAutomorphism(G, {l.index: l.index for l in setup.leaves}, theta_hub, theta_leaf, y)
            eq = induced_equivalence(ctx, auto)
        except AutosError:
            return False
        is_inner = any(auto.equals_conjugation_by(x) for x in setup.hub.elements) or _is_inner_table(G, mapping)
        cls = ctx.class_of(eq)
        seen_pairs.append((is_inner, cls))
    identity_cls = ctx.class_of(ctx.conj_equivalences()[G.setup.hub.identity])
    for is_inner, cls in seen_pairs:
        if not is_inner and cls is identity_cls:
            return False
    return True


def _is_inner_table(G: AmalgamGroup, mapping: dict) -> bool:
    hub = G.hub_group
    for g in hub.elements:
        gi = hub.inv(g)
        if all(mapping[x] == hub.mul(hub.mul(g, x), gi) for x in hub.elements):
            return True
    return False


# ---------------------------------------------------------------------------
# automorphism files


AUTO_FORMAT = "flab-amalgam-automorphism-v1"


def automorphism_to_data(auto: AmalgamAutomorphism) -> dict:
    G = auto.amalgam
    setup = G.setup
    certificates = []
    for leaf in setup.leaves:
        target = next(l for l in setup.leaves if l.index == auto.alpha[leaf.index])
        for n in leaf.edge_hub:
            image = auto.theta_leaf[leaf.index][leaf.j_map[n]]
            nu = next(x for x in target.edge_hub if target.j_map[x] == image)
            certificates.append([leaf.index, f"m{n}", f"m{nu}"])
    return {
        "format": AUTO_FORMAT,
        "leaf_permutation": {str(i): j for i, j in auto.alpha.items()},
        "hub": [[f"m{x}", f"m{v}"] for x, v in sorted(auto.theta_hub.items())],
        "leaves": {str(i): [[f"m{a}", f"m{b}"] for a, b in sorted(t.items())] for i, t in auto.theta_leaf.items()},
        "dressing": {str(i): f"m{x}" for i, x in sorted(auto.y.items())},
        "edge_certificates": certificates,
    }


def automorphism_from_data(G: AmalgamGroup, data: dict) -> AmalgamAutomorphism:
    if data.get("format") != AUTO_FORMAT:
        raise AutosError(f"unknown automorphism format {data.get('format')!r}")

    def mid(label: str) -> int:
        if not label.startswith("m"):
            raise AutosError(f"bad morphism label {label!r}")
        return int(label[1:])

    alpha = {int(i): int(j) for i, j in data["leaf_permutation"].items()}
    theta_hub = {mid(a): mid(b) for a, b in data["hub"]}
    theta_leaf = {int(i): {mid(a): mid(b) for a, b in rows} for i, rows in data["leaves"].items()}
    y = {int(i): mid(x) for i, x in data["dressing"].items()}
    return AmalgamAutomorphism(G, alpha, theta_hub, theta_leaf, y)


# ---------------------------------------------------------------------------
# commands


def _parse_word(G: AmalgamGroup, text: str):
    letters = []
    if text.strip():
        for token in text.split("*"):
            token = token.strip()
            if ":" not in token:
                raise AmalgamError(f"bad word token {token!r}; expected vertex:label")
            tag, label = token.split(":", 1)
            if not label.startswith("m"):
                raise AmalgamError(f"bad element label {label!r}")
            letters.append((tag, int(label[1:])))
    return G.reduce(letters)


def cmd_examples_list(args) -> int:
    rows = [entry.as_dict() for entry in catalog()]
    report = Report("catalog", {"entries": rows})
    _emit(report, args.json)
    return EXIT_OK


def _fusion_source(args):
    if getattr(args, "file", None):
        from .fusion import fusion_from_data

        with open(args.file) as fh:
            return fusion_from_data(json.load(fh)), args.file
    return entry_stack(args.entry).fusion, args.entry


def cmd_fusion_analyze(args) -> int:
    fusion, name = _fusion_source(args)
    rep = analyze(fusion)
    report = Report(f"fusion analyze {name}", rep.as_dict())
    _emit(report, args.json)
    return EXIT_OK


def cmd_fusion_saturation(args) -> int:
    fusion, name = _fusion_source(args)
    rep = check_saturation(fusion)
    report = Report(f"fusion saturation {name}", rep.as_dict())
    _emit(report, args.json)
    return EXIT_OK if rep.passed else EXIT_CHECK_FAILED


def cmd_linking_build(args) -> int:
    stack = entry_stack(args.entry)
    data = linking_to_data(stack.linking, name=args.entry)
    text = json.dumps(data, indent=1, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        print(f"wrote {args.out}")
    else:
        print(text)
    return EXIT_OK


def cmd_linking_validate(args) -> int:
    try:
        if args.file:
            with open(args.file) as fh:
                data = json.load(fh)
            linking_from_data(data)
            name = args.file
        else:
            entry = catalog_entry(args.entry)
            if entry.kind == "linking":
                linking_from_data(_read_resource(entry.resource))
                name = args.entry
            else:
                stack = entry_stack(args.entry)
                val = validate_linking(stack.linking)
                report = Report(f"linking validate {args.entry}", val.as_dict())
                _emit(report, args.json)
                return EXIT_OK if val.passed else EXIT_CHECK_FAILED
    except AxiomFailure as exc:
        report = Report("linking validate", {"passed": False, "axiom": exc.axiom, "witness": str(exc.witness)})
        _emit(report, args.json)
        return EXIT_CHECK_FAILED
    report = Report(f"linking validate {name}", {"passed": True})
    _emit(report, args.json)
    return EXIT_OK


def cmd_limits(args) -> int:
    stack = entry_stack(args.entry)
    F = stack.fusion
    cat, extra = orbit_category(F)
    if args.functor == "center":
        Z = center_functor(F, cat, extra["reps"])
    elif args.functor == "constant":
        Z = constant_functor(cat, F.canon(F.S))
    else:
        print(f"unknown functor {args.functor!r}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    value = higher_limits(cat, Z, args.degree)
    lim0 = inverse_limit(cat, Z)
    tree = {
        "degree": args.degree,
        "value": repr(value),
        "order": value.order,
        "degree0_matches_inverse_limit": higher_limits(cat, Z, 0) == lim0.group,
    }
    _emit(Report(f"limits {args.entry} functor={args.functor}", tree), args.json)
    return EXIT_OK


def cmd_amalgam_build(args) -> int:
    stack = entry_stack(args.entry, variant=args.variant)
    G = stack.amalgam
    tree = {
        "variant": args.variant,
        "family_orders": [P.order for P in stack.family],
        "family_complete": stack.setup.is_complete,
        "collapsed_leaves": list(G.collapsed_leaves),
        "finite": not G.leaves,
        "hub_vertex": G.hub_vertex_tag,
        "hub_order": G.hub_group.order,
        "edges": [
            {"leaf": leaf.index, "subgroup_order": leaf.subgroup.order, "edge_order": len(leaf.edge_hub), "leaf_order": leaf.group.order}
            for leaf in stack.setup.leaves
        ],
        "vertex_labels": {
            "hub": [f"m{x}" for x in stack.setup.hub.elements],
            **{f"leaf{leaf.index}": [f"m{x}" for x in leaf.group.elements] for leaf in stack.setup.leaves},
        },
    }
    if not G.leaves:
        tree["element_count"] = len(G.all_elements())
    _emit(Report(f"amalgam build {args.entry}", tree), args.json)
    return EXIT_OK


def cmd_amalgam_reduce(args) -> int:
    stack = entry_stack(args.entry, variant=args.variant)
    G = stack.amalgam
    w = _parse_word(G, args.word)
    tree = {
        "input": args.word,
        "normal_form": G.format_word(w),
        "length": w.length(),
        "in_image_of_s": G.element_of_s(w) is not None,
    }
    _emit(Report(f"amalgam reduce {args.entry}", tree), args.json)
    return EXIT_OK


def cmd_amalgam_verify_fusion(args) -> int:
    stack = entry_stack(args.entry, variant=args.variant, family_mode=args.family)
    rep = verify_fusion(stack.amalgam)
    _emit(Report(f"amalgam verify-fusion {args.entry}", rep), args.json)
    return EXIT_OK if rep["equal"] else EXIT_CHECK_FAILED


def cmd_amalgam_center(args) -> int:
    stack = entry_stack(args.entry, variant=args.variant)
    F = stack.fusion
    zg = amalgam_center(stack.amalgam)
    cat, extra = orbit_category(F)
    lim = inverse_limit(cat, center_functor(F, cat, extra["reps"]))
    match = zg.order == lim.group.order and (lim.center_embedding is None or zg.element_set == lim.center_embedding.element_set)
    tree = {"amalgam_center_order": zg.order, "limit": repr(lim.group), "passed": match}
    _emit(Report(f"amalgam center {args.entry}", tree), args.json)
    return EXIT_OK if match else EXIT_CHECK_FAILED


def cmd_amalgam_transporter(args) -> int:
    stack = entry_stack(args.entry, variant=args.variant)
    G = stack.amalgam
    fam = stack.family
    if args.leaf < 1 or args.leaf >= len(fam):
        print(f"no family member {args.leaf}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    P = fam[args.leaf]
    res = transporter_in_amalgam(G, P, P, args.radius)
    tree = {
        "radius": res["radius"],
        "truncated": res["truncated"],
        "count": len(res["words"]),
        "words": [G.format_word(w) for w in res["words"][: args.limit]],
    }
    _emit(Report(f"amalgam transporter {args.entry}", tree), args.json)
    return EXIT_OK


def cmd_aut_out_typ(args) -> int:
    stack = entry_stack(args.entry)
    classes = stack.ctx.out_classes()
    tree = {
        "equivalences": len(stack.ctx.aut_typ()),
        "classes": len(classes),
        "sizes": [len(c) for c in classes],
        "identity_class_index": next(i for i, c in enumerate(classes) if any(e.is_identity() for e in c.members)),
    }
    _emit(Report(f"aut out-typ {args.entry}", tree), args.json)
    return EXIT_OK


def cmd_aut_upsilon(args) -> int:
    stack = entry_stack(args.entry)
    classes = stack.ctx.out_classes()
    if args.cls < 0 or args.cls >= len(classes):
        print(f"no class {args.cls}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    perm = leaf_permutation(stack.ctx, classes[args.cls])
    _emit(Report(f"aut upsilon {args.entry}", {"class": args.cls, "permutation": {str(k): v for k, v in perm.items()}}), args.json)
    return EXIT_OK


def cmd_aut_gamma(args) -> int:
    stack = entry_stack(args.entry, variant=args.variant)
    classes = stack.ctx.out_classes()
    if args.cls < 0 or args.cls >= len(classes):
        print(f"no class {args.cls}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    auto = section_automorphism(stack.ctx, classes[args.cls], stack.amalgam)
    data = automorphism_to_data(auto)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(data, fh, indent=1, sort_keys=True)
            fh.write("\n")
        print(f"wrote {args.out}")
    else:
        print(json.dumps(data, indent=1, sort_keys=True))
    return EXIT_OK


def cmd_aut_omega(args) -> int:
    stack = entry_stack(args.entry, variant=args.variant)
    with open(args.file) as fh:
        data = json.load(fh)
    try:
        auto = automorphism_from_data(stack.amalgam, data)
        eq = induced_equivalence(stack.ctx, auto)
    except AutosError as exc:
        _emit(Report(f"aut omega {args.entry}", {"passed": False, "error": str(exc)}), args.json)
        return EXIT_CHECK_FAILED
    cls = stack.ctx.class_of(eq)
    idx = stack.ctx.out_classes().index(cls)
    tree = {"identity": eq.is_identity(), "outer_class": idx, "passed": True}
    _emit(Report(f"aut omega {args.entry}", tree), args.json)
    return EXIT_OK


def cmd_aut_verify_split(args) -> int:
    stack = entry_stack(args.entry, variant=args.variant)
    rep = verify_split(stack.ctx, stack.amalgam)
    _emit(Report(f"aut verify-split {args.entry}", rep), args.json)
    return EXIT_OK if rep["all_split"] and rep["gamma_homomorphism"] else EXIT_CHECK_FAILED


def cmd_aut_exact_sequences(args) -> int:
    stack = entry_stack(args.entry, variant=args.variant)
    rep = exact_sequence_report(stack.ctx, stack.amalgam, kernel_radius=args.radius)
    _emit(Report(f"aut exact-sequences {args.entry}", rep), args.json)
    return EXIT_OK if rep["passed"] else EXIT_CHECK_FAILED


def cmd_aut_itworks(args) -> int:
    stack = entry_stack(args.entry, variant=LIBMAN_SEELIGER)
    rep = itworks_check(stack.ctx, stack.setup)
    rep["only2_applies"] = only2_applies(rep)
    _emit(Report(f"aut itworks {args.entry}", rep), args.json)
    return EXIT_OK


def cmd_pipeline(args) -> int:
    report = run_pipeline(args.entry, variant=args.variant, family_mode=args.family)
    _emit(report, args.json)
    return EXIT_OK if report.passed() else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flab", description="fusion systems, linking systems and Robinson amalgams at desk scale")
    parser.add_argument("--json", action="store_true", help="emit machine-readable JSON instead of text")
    sub = parser.add_subparsers(dest="command", required=True)

    examples = sub.add_parser("examples", help="catalog of worked examples")
    examples_sub = examples.add_subparsers(dest="subcommand", required=True)
    p = examples_sub.add_parser("list")
    p.set_defaults(func=cmd_examples_list)

    fusion = sub.add_parser("fusion", help="fusion-system analysis")
    fusion_sub = fusion.add_subparsers(dest="subcommand", required=True)
    p = fusion_sub.add_parser("analyze")
    p.add_argument("entry", nargs="?")
    p.add_argument("--file", help="an abstract fusion-system JSON file instead of a catalog entry")
    p.set_defaults(func=cmd_fusion_analyze)
    p = fusion_sub.add_parser("saturation")
    p.add_argument("entry", nargs="?")
    p.add_argument("--file")
    p.set_defaults(func=cmd_fusion_saturation)

    linking = sub.add_parser("linking", help="linking-system construction and validation")
    linking_sub = linking.add_subparsers(dest="subcommand", required=True)
    p = linking_sub.add_parser("build")
    p.add_argument("entry")
    p.add_argument("--out")
    p.set_defaults(func=cmd_linking_build)
    p = linking_sub.add_parser("validate")
    p.add_argument("entry", nargs="?")
    p.add_argument("--file")
    p.set_defaults(func=cmd_linking_validate)

    p = sub.add_parser("limits", help="higher limits of a functor over the orbit category")
    p.add_argument("entry")
    p.add_argument("--functor", default="center", choices=["center", "constant"])
    p.add_argument("--degree", type=int, default=1)
    p.set_defaults(func=cmd_limits)

    amalgam = sub.add_parser("amalgam", help="Robinson amalgams and word arithmetic")
    amalgam_sub = amalgam.add_subparsers(dest="subcommand", required=True)
    for name, fn in [("build", cmd_amalgam_build), ("verify-fusion", cmd_amalgam_verify_fusion), ("center", cmd_amalgam_center)]:
        p = amalgam_sub.add_parser(name)
        p.add_argument("entry")
        p.add_argument("--variant", default=LIBMAN_SEELIGER, choices=[ROBINSON, LIBMAN_SEELIGER])
        if name == "verify-fusion":
            p.add_argument("--family", default="complete", help="complete | fclass | {S}")
        p.set_defaults(func=fn)
    p = amalgam_sub.add_parser("reduce")
    p.add_argument("entry")
    p.add_argument("--word", required=True, help='letters like "hub:m3*leaf1:m5"')
    p.add_argument("--variant", default=LIBMAN_SEELIGER, choices=[ROBINSON, LIBMAN_SEELIGER])
    p.set_defaults(func=cmd_amalgam_reduce)
    p = amalgam_sub.add_parser("transporter")
    p.add_argument("entry")
    p.add_argument("--radius", type=int, default=1)
    p.add_argument("--leaf", type=int, default=1)
    p.add_argument("--limit", type=int, default=32, help="max words to print")
    p.add_argument("--variant", default=LIBMAN_SEELIGER, choices=[ROBINSON, LIBMAN_SEELIGER])
    p.set_defaults(func=cmd_amalgam_transporter)

    aut = sub.add_parser("aut", help="self-equivalences and amalgam automorphisms")
    aut_sub = aut.add_subparsers(dest="subcommand", required=True)
    p = aut_sub.add_parser("out-typ")
    p.add_argument("entry")
    p.set_defaults(func=cmd_aut_out_typ)
    p = aut_sub.add_parser("upsilon")
    p.add_argument("entry")
    p.add_argument("--class", dest="cls", type=int, required=True)
    p.set_defaults(func=cmd_aut_upsilon)
    p = aut_sub.add_parser("gamma")
    p.add_argument("entry")
    p.add_argument("--class", dest="cls", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--variant", default=LIBMAN_SEELIGER, choices=[ROBINSON, LIBMAN_SEELIGER])
    p.set_defaults(func=cmd_aut_gamma)
    p = aut_sub.add_parser("omega")
    p.add_argument("entry")
    p.add_argument("--file", required=True)
    p.add_argument("--variant", default=LIBMAN_SEELIGER, choices=[ROBINSON, LIBMAN_SEELIGER])
    p.set_defaults(func=cmd_aut_omega)
    p = aut_sub.add_parser("verify-split")
    p.add_argument("entry")
    p.add_argument("--variant", default=LIBMAN_SEELIGER, choices=[ROBINSON, LIBMAN_SEELIGER])
    p.set_defaults(func=cmd_aut_verify_split)
    p = aut_sub.add_parser("exact-sequences")
    p.add_argument("entry")
    p.add_argument("--variant", default=LIBMAN_SEELIGER, choices=[ROBINSON, LIBMAN_SEELIGER])
    p.add_argument("--radius", type=int, default=1)
    p.set_defaults(func=cmd_aut_exact_sequences)
    p = aut_sub.add_parser("itworks")
    p.add_argument("entry")
    p.set_defaults(func=cmd_aut_itworks)

    p = sub.add_parser("pipeline", help="run the whole verification chain on an entry")
    p.add_argument("entry")
    p.add_argument("--variant", default=LIBMAN_SEELIGER, choices=[ROBINSON, LIBMAN_SEELIGER])
    p.add_argument("--family", default="complete", help="complete | fclass | {S}")
    p.set_defaults(func=cmd_pipeline)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (FusionError, LinkingError, AmalgamError, AutosError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except ResourceBoundExceeded as exc:
        print(f"resource bound exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
