"""The embedding of crossed modules into set-valued presheaves on the site.

A crossed module A becomes the functor sending each site object to the set
of fiber-respecting assignments into A (a finite set of index tuples) and
each generating morphism to precomposition, computed by evaluating its
words.  Morphisms become postcomposition families.  At this scale the
functor's fullness, faithfulness, and exactness are checked by exhaustive
enumeration, with a budget gate on every search space.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    BaseMismatchError,
    BudgetExceededError,
    IsIsoError,
    NotMonoError,
    NotNaturalError,
    ReconstructionInvalidError,
    ShapeMismatchError,
)
from .limits import Cone, Cocone, coequaliser, equaliser, kernel_pair, product_over_P
from .words import (
    Site,
    SiteMorphism,
    SiteObject,
    build_site,
    compose_site_morphisms,
    evaluate_word,
    hom_set,
    single_object,
)
from .xmod import (
    DEFAULT_BUDGET,
    CrossedModule,
    XModMorphism,
    enumerate_morphisms,
    validate_morphism,
)

__all__ = [
    "Presheaf",
    "NaturalTransformation",
    "compute_presheaf",
    "presheaf_action",
    "presheaf_composition_violations",
    "functor_on_morphism",
    "component_shape_violations",
    "check_naturality",
    "enumerate_natural_transformations",
    "reconstruct_morphism",
    "verify_full_faithful",
    "verify_exactness_preservation",
    "generator_witness",
]

Assignment = tuple[int, ...]


@dataclass(eq=False)
class Presheaf:
    """Sets of assignments per site object, with generator actions as index maps.

    actions[name][j] = i means the generator named name, a site morphism
    o -> o', carries assignment j of o' to assignment i of o.
    """

    site: Site
    xmod: CrossedModule
    sets: dict[SiteObject, tuple[Assignment, ...]] = field(default_factory=dict)
    index: dict[SiteObject, dict[Assignment, int]] = field(default_factory=dict)
    actions: dict[str, tuple[int, ...]] = field(default_factory=dict)


def presheaf_action(F: Presheaf, m: SiteMorphism) -> tuple[int, ...]:
    """Index map of precomposition with an arbitrary site morphism."""
    A = F.xmod
    src_free = F.site.free(m.source)
    out = []
    for nu in F.sets[m.target]:
        image = tuple(evaluate_word(w, A, nu) for w in m.words)
        if len(image) != len(src_free.labels):
            raise ShapeMismatchError(f"{m.name}: wrong number of words")
        out.append(F.index[m.source][image])
    return tuple(out)


def compute_presheaf(A: CrossedModule, site: Site | None = None) -> Presheaf:
    site = site if site is not None else build_site(A.base)
    if site.base != A.base:
        raise BaseMismatchError(f"site over {site.base.name} cannot embed {A.name}")
    F = Presheaf(site=site, xmod=A)
    for o in site.objects:
        elems = hom_set(site.free(o), A)
        F.sets[o] = elems
        F.index[o] = {nu: i for i, nu in enumerate(elems)}
    for g in site.generators:
        F.actions[g.name] = presheaf_action(F, g)
    return F


def presheaf_composition_violations(F: Presheaf) -> tuple[tuple[str, str], ...]:
    """Generator pairs whose composite action is not the composite of actions."""
    bad = []
    for f in F.site.generators:
        for g in F.site.generators:
            if g.target != f.source:
                continue
            comp = compose_site_morphisms(f, g)
            direct = presheaf_action(F, comp)
            chained = tuple(F.actions[g.name][F.actions[f.name][j]] for j in range(len(F.sets[f.target])))
            if direct != chained:
                bad.append((f.name, g.name))
    return tuple(bad)


@dataclass(eq=False)
class NaturalTransformation:
    """A family of functions between two presheaves on the same site."""

    source: Presheaf
    target: Presheaf
    components: dict[SiteObject, tuple[int, ...]]

    def same_components(self, other: "NaturalTransformation") -> bool:
        return self.components == other.components


def component_shape_violations(phi: NaturalTransformation) -> tuple[str, ...]:
    F, G = phi.source, phi.target
    out = []
    for o in F.site.objects:
        comp = phi.components.get(o)
        if comp is None:
            out.append(f"missing component at {o.describe()}")
            continue
        if len(comp) != len(F.sets[o]):
            out.append(f"component at {o.describe()} has length {len(comp)}")
            continue
        limit = len(G.sets[o])
        if any(not 0 <= v < limit for v in comp):
            out.append(f"component at {o.describe()} has out-of-range values")
    return tuple(out)


def check_naturality(phi: NaturalTransformation) -> tuple[tuple[str, int], ...]:
    """Failed squares as (generator name, target-set index) witnesses."""
    shape = component_shape_violations(phi)
    if shape:
        raise ShapeMismatchError("; ".join(shape))
    F, G = phi.source, phi.target
    bad = []
    for g in F.site.generators:
        act_F = F.actions[g.name]
        act_G = G.actions[g.name]
        comp_src = phi.components[g.source]
        comp_tgt = phi.components[g.target]
        for j in range(len(F.sets[g.target])):
            if comp_src[act_F[j]] != act_G[comp_tgt[j]]:
                bad.append((g.name, j))
    return tuple(bad)


def _single_objects(site: Site) -> list[SiteObject]:
    return [o for o in site.objects if o.kind == "single"]


def enumerate_natural_transformations(
    F: Presheaf, G: Presheaf, budget: int = DEFAULT_BUDGET
) -> tuple[NaturalTransformation, ...]:
    """All natural maps F -> G, by searching single components only.

    The injection squares force every pair component to act coordinatewise,
    so the search space is the product over single objects of all functions
    between the fibers; each candidate is then checked on every generating
    square.  The space size is gated by the budget.
    """
    site = F.site
    singles = _single_objects(site)
    space = 1
    for o in singles:
        space *= len(G.sets[o]) ** len(F.sets[o])
    if space > budget:
        raise BudgetExceededError(
            f"natural transformation search needs {space} candidates, budget {budget}"
        )
    out = []
    choices = [
        list(itertools.product(range(len(G.sets[o])), repeat=len(F.sets[o])))
        for o in singles
    ]
    for combo in itertools.product(*choices):
        components: dict[SiteObject, tuple[int, ...]] = {}
        for o, comp in zip(singles, combo):
            components[o] = tuple(comp)
        ok = True
        for o in site.objects:
            if o.kind != "pair":
                continue
            x, y = o.xs
            ox = SiteObject("single", (x,))
            oy = SiteObject("single", (y,))
            comp = []
            for (a, b) in F.sets[o]:
                ia = components[ox][F.index[ox][(a,)]]
                ib = components[oy][F.index[oy][(b,)]]
                image = (G.sets[ox][ia][0], G.sets[oy][ib][0])
                idx = G.index[o].get(image)
                if idx is None:
                    ok = False
                    break
                comp.append(idx)
            if not ok:
                break
            components[o] = tuple(comp)
        if not ok:
            continue
        phi = NaturalTransformation(source=F, target=G, components=components)
        if not check_naturality(phi):
            out.append(phi)
    return tuple(out)


def functor_on_morphism(f: XModMorphism, F: Presheaf, G: Presheaf) -> NaturalTransformation:
    """Postcomposition with f, as a transformation U(source) -> U(target)."""
    if F.xmod != f.source or G.xmod != f.target:
        raise ShapeMismatchError(
            f"presheaves for {F.xmod.name} -> {G.xmod.name} do not match map "
            f"{f.source.name} -> {f.target.name}"
        )
    components = {}
    for o in F.site.objects:
        comp = []
        for nu in F.sets[o]:
            image = tuple(f.mapping[a] for a in nu)
            comp.append(G.index[o][image])
        components[o] = tuple(comp)
    return NaturalTransformation(source=F, target=G, components=components)


def reconstruct_morphism(phi: NaturalTransformation) -> XModMorphism:
    """Read the element map off the single components and validate it.

    The image of a is the single used by the component at single(boundary a)
    on the labelling of a.
    """
    bad = check_naturality(phi)
    if bad:
        raise NotNaturalError(f"{len(bad)} naturality squares fail, first at {bad[0]}")
    F, G = phi.source, phi.target
    A, B = F.xmod, G.xmod
    mapping = []
    for a in range(A.group.order):
        o = SiteObject("single", (A.boundary.image[a],))
        j = F.index[o][(a,)]
        mapping.append(G.sets[o][phi.components[o][j]][0])
    violations = validate_morphism(A, B, mapping)
    if violations:
        raise ReconstructionInvalidError(
            f"reconstructed map fails validation: {violations[0].describe()}"
        )
    return XModMorphism(source=A, target=B, mapping=tuple(mapping))


def verify_full_faithful(
    A: CrossedModule,
    B: CrossedModule,
    site: Site | None = None,
    budget: int = DEFAULT_BUDGET,
) -> dict:
    """Compare the morphism set with the natural transformation set.

    The morphism side is enumerated from nothing but the definitions, the
    transformation side from the presheaves; the counts must agree, the two
    round trips must be identities, and distinct morphisms must stay
    distinct, each separated by a single-label assignment.
    """
    site = site if site is not None else build_site(A.base)
    F = compute_presheaf(A, site)
    G = compute_presheaf(B, site)
    homs = enumerate_morphisms(A, B, budget=budget)
    nats = enumerate_natural_transformations(F, G, budget=budget)
    images = [functor_on_morphism(f, F, G) for f in homs]
    round_trip_hom = all(
        reconstruct_morphism(phi).mapping == f.mapping for f, phi in zip(homs, images)
    )
    round_trip_nat = all(
        functor_on_morphism(reconstruct_morphism(phi), F, G).same_components(phi)
        for phi in nats
    )
    image_keys = {tuple(sorted((o.describe(), c) for o, c in phi.components.items())) for phi in images}
    separated = 0
    for i in range(len(homs)):
        for j in range(i + 1, len(homs)):
            a = next(
                (a for a in range(A.group.order) if homs[i].mapping[a] != homs[j].mapping[a]),
                None,
            )
            if a is None:
                continue
            o = SiteObject("single", (A.boundary.image[a],))
            k = F.index[o][(a,)]
            if images[i].components[o][k] != images[j].components[o][k]:
                separated += 1
    expected_separations = len(homs) * (len(homs) - 1) // 2
    ok = (
        len(homs) == len(nats)
        and round_trip_hom
        and round_trip_nat
        and len(image_keys) == len(homs)
        and separated == expected_separations
    )
    return {
        "pass": ok,
        "source": A.name,
        "target": B.name,
        "hom_count": len(homs),
        "nat_count": len(nats),
        "round_trip_hom": round_trip_hom,
        "round_trip_nat": round_trip_nat,
        "functor_injective": len(image_keys) == len(homs),
        "separating_pairs": separated,
        "budget": budget,
    }


def _postcompose(mapping: Sequence[int], nu: Assignment) -> Assignment:
    return tuple(mapping[a] for a in nu)


def _object_report(o: SiteObject, lhs: int, rhs: int, ok: bool) -> dict:
    return {"object": o.describe(), "lhs_size": lhs, "rhs_size": rhs, "ok": ok}


def _verify_product_preserved(A: CrossedModule, B: CrossedModule, site: Site) -> dict:
    cone = product_over_P(A, B)
    FX = compute_presheaf(cone.apex, site)
    FA = compute_presheaf(A, site)
    FB = compute_presheaf(B, site)
    pA, pB = cone.legs
    pair_of: dict[SiteObject, tuple[tuple[int, int], ...]] = {}
    objects = []
    failures = []
    for o in site.objects:
        mapped = []
        for nu in FX.sets[o]:
            ia = FA.index[o][_postcompose(pA.mapping, nu)]
            ib = FB.index[o][_postcompose(pB.mapping, nu)]
            mapped.append((ia, ib))
        pair_of[o] = tuple(mapped)
        full = len(FA.sets[o]) * len(FB.sets[o])
        ok = len(set(mapped)) == len(mapped) == full
        objects.append(_object_report(o, len(mapped), full, ok))
        if not ok:
            failures.append({"object": o.describe(), "reason": "pairing is not a bijection"})
    squares = 0
    for g in site.generators:
        for j in range(len(FX.sets[g.target])):
            squares += 1
            lhs = pair_of[g.source][FX.actions[g.name][j]]
            ja, jb = pair_of[g.target][j]
            rhs = (FA.actions[g.name][ja], FB.actions[g.name][jb])
            if lhs != rhs:
                failures.append({"object": g.source.describe(), "generator": g.name, "index": j})
    return {
        "kind": "product",
        "pass": not failures,
        "apex": cone.apex.name,
        "objects": objects,
        "squares_checked": squares,
        "failures": failures,
    }


def _verify_equaliser_preserved(f: XModMorphism, g: XModMorphism, site: Site) -> dict:
    cone = equaliser(f, g)
    FE = compute_presheaf(cone.apex, site)
    FC = compute_presheaf(f.source, site)
    u = cone.legs[0]
    into: dict[SiteObject, tuple[int, ...]] = {}
    objects = []
    failures = []
    for o in site.objects:
        agree = [
            j
            for j, nu in enumerate(FC.sets[o])
            if _postcompose(f.mapping, nu) == _postcompose(g.mapping, nu)
        ]
        mapped = [FC.index[o][_postcompose(u.mapping, nu)] for nu in FE.sets[o]]
        into[o] = tuple(mapped)
        ok = sorted(mapped) == agree and len(set(mapped)) == len(mapped)
        objects.append(_object_report(o, len(mapped), len(agree), ok))
        if not ok:
            failures.append({"object": o.describe(), "reason": "comparison is not a bijection"})
    squares = 0
    for gen in site.generators:
        for j in range(len(FE.sets[gen.target])):
            squares += 1
            if into[gen.source][FE.actions[gen.name][j]] != FC.actions[gen.name][into[gen.target][j]]:
                failures.append({"object": gen.source.describe(), "generator": gen.name, "index": j})
    return {
        "kind": "equaliser",
        "pass": not failures,
        "apex": cone.apex.name,
        "objects": objects,
        "squares_checked": squares,
        "failures": failures,
    }


def _verify_coequaliser_preserved(f: XModMorphism, g: XModMorphism, site: Site) -> dict:
    """Check the coequaliser's exact fork survives the embedding.

    The projection p is the coequaliser of its own kernel pair, so the
    comparison quotients each assignment set of U(target) by the relation
    the kernel pair induces and matches it against U(apex): same classes,
    objectwise surjective, actions descending to the classes.
    """
    cocone = coequaliser(f, g)
    p = cocone.legs[0]
    kp = kernel_pair(p)
    p1, p2 = kp.legs
    FB = compute_presheaf(f.target, site)
    FQ = compute_presheaf(cocone.apex, site)
    FK = compute_presheaf(kp.apex, site)
    objects = []
    failures = []
    class_of: dict[SiteObject, tuple[int, ...]] = {}
    proj_of: dict[SiteObject, tuple[int, ...]] = {}
    for o in site.objects:
        n = len(FB.sets[o])
        parent = list(range(n))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for w in FK.sets[o]:
            ia = FB.index[o][_postcompose(p1.mapping, w)]
            ib = FB.index[o][_postcompose(p2.mapping, w)]
            ra, rb = find(ia), find(ib)
            if ra != rb:
                parent[rb] = ra
        roots = sorted({find(j) for j in range(n)})
        root_pos = {r: i for i, r in enumerate(roots)}
        classes = tuple(root_pos[find(j)] for j in range(n))
        proj = tuple(FQ.index[o][_postcompose(p.mapping, nu)] for nu in FB.sets[o])
        class_of[o] = classes
        proj_of[o] = proj
        by_class: dict[int, set[int]] = {}
        for j in range(n):
            by_class.setdefault(classes[j], set()).add(proj[j])
        well_defined = all(len(v) == 1 for v in by_class.values())
        injective = len({next(iter(v)) for v in by_class.values()}) == len(by_class) if well_defined else False
        surjective = len(set(proj)) == len(FQ.sets[o])
        ok = well_defined and injective and surjective and len(by_class) == len(FQ.sets[o])
        objects.append(_object_report(o, len(by_class), len(FQ.sets[o]), ok))
        if not ok:
            failures.append(
                {
                    "object": o.describe(),
                    "reason": "class comparison is not a bijection",
                    "well_defined": well_defined,
                    "surjective": surjective,
                }
            )
    squares = 0
    for gen in site.generators:
        src, tgt = gen.source, gen.target
        for j in range(len(FB.sets[tgt])):
            squares += 1
            if proj_of[src][FB.actions[gen.name][j]] != FQ.actions[gen.name][proj_of[tgt][j]]:
                failures.append({"generator": gen.name, "index": j, "reason": "projection square"})
        descent: dict[int, int] = {}
        for j in range(len(FB.sets[tgt])):
            c = class_of[tgt][j]
            image = class_of[src][FB.actions[gen.name][j]]
            if descent.setdefault(c, image) != image:
                failures.append({"generator": gen.name, "class": c, "reason": "action does not descend"})
    return {
        "kind": "coequaliser",
        "pass": not failures,
        "apex": cocone.apex.name,
        "objects": objects,
        "squares_checked": squares,
        "failures": failures,
    }


def verify_exactness_preservation(
    kind: str,
    A: CrossedModule | None = None,
    B: CrossedModule | None = None,
    f: XModMorphism | None = None,
    g: XModMorphism | None = None,
    site: Site | None = None,
) -> dict:
    """Objectwise comparison of a construction before and after embedding.

    kind product takes A and B; kinds equaliser and coequaliser take the
    parallel pair f, g.  The coequaliser comparison checks the regular
    epimorphism it produces, through its kernel pair.
    """
    if kind == "product":
        if A is None or B is None:
            raise ShapeMismatchError("product comparison needs two objects")
        site = site if site is not None else build_site(A.base)
        return _verify_product_preserved(A, B, site)
    if kind == "equaliser":
        if f is None or g is None:
            raise ShapeMismatchError("equaliser comparison needs a parallel pair")
        site = site if site is not None else build_site(f.source.base)
        return _verify_equaliser_preserved(f, g, site)
    if kind == "coequaliser":
        if f is None or g is None:
            raise ShapeMismatchError("coequaliser comparison needs a parallel pair")
        site = site if site is not None else build_site(f.source.base)
        return _verify_coequaliser_preserved(f, g, site)
    raise ShapeMismatchError(f"unknown comparison kind {kind!r}")


def generator_witness(m: XModMorphism) -> dict:
    """For a proper mono, a single-label map that fails to factor through it.

    Picks the least element outside the image, names it with its labelling,
    and verifies by fiber enumeration that no assignment into the source
    composes to it.
    """
    if not m.is_injective():
        raise NotMonoError(f"{m.source.name} -> {m.target.name} is not injective")
    image = set(m.mapping)
    if len(image) == m.target.group.order:
        raise IsIsoError(f"{m.source.name} -> {m.target.name} is an isomorphism")
    b = min(a for a in range(m.target.group.order) if a not in image)
    y = m.target.boundary.image[b]
    free = single_object(m.target.base, y)
    candidates = hom_set(free, m.source)
    factoring = [h for h in candidates if m.mapping[h[0]] == b]
    return {
        "pass": not factoring,
        "missed_element": b,
        "base_element": y,
        "assignment": [b],
        "candidates_checked": len(candidates),
    }
