"""Limits, colimits, and quotients of crossed modules over a fixed base.

Every construction returns its apex together with the structure maps, and
each has a companion verifier that sweeps a catalogue of test objects and
counts mediating morphisms by exhaustive search: exactly one for every
commuting test cone or cocone, zero for every non-commuting one.  The
default catalogue is every crossed module structure on the groups of order
at most four over the session base, plus the diagram's own objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    DiagramMismatchError,
    NotEquivalenceRelationError,
    OrderTooLargeError,
    ValidationError,
)
from .groups import (
    Group,
    GroupHom,
    cyclic_group,
    klein_four_group,
    make_group,
    normal_closure,
    quotient_group,
    subgroup_group,
    symmetric_group_3,
    trivial_group,
)
from .xmod import (
    DEFAULT_BUDGET,
    Action,
    CrossedModule,
    XModMorphism,
    all_crossed_modules,
    compose_xmod_morphisms,
    conjugation_action,
    enumerate_morphisms,
    make_crossed_module,
    make_xmod_morphism,
    structure_key,
)

__all__ = [
    "Cone",
    "Cocone",
    "EquivalenceRelation",
    "ImageFactorization",
    "equaliser",
    "coequaliser",
    "pullback",
    "terminal_object",
    "unique_to_terminal",
    "product_over_P",
    "kernel_pair",
    "kernel_pair_relation",
    "relation_xmod",
    "is_equivalence_relation",
    "equivalence_violations",
    "quotient_by_equivalence",
    "is_effective",
    "image_factorization",
    "default_catalogue",
    "extend_catalogue",
    "verify_equaliser",
    "verify_coequaliser",
    "verify_pullback",
    "verify_product",
    "verify_kernel_pair",
    "verify_quotient",
]


@dataclass(frozen=True)
class Cone:
    """A limit apex with its projection legs.

    elements decodes the apex indices: for an equaliser these are element
    indices of the source, for a pullback they are (left, right) pairs.
    """

    kind: str
    apex: CrossedModule
    legs: tuple[XModMorphism, ...]
    elements: tuple


@dataclass(frozen=True)
class Cocone:
    """A colimit apex with its projection leg; classes[i] lists class i."""

    kind: str
    apex: CrossedModule
    legs: tuple[XModMorphism, ...]
    classes: tuple[tuple[int, ...], ...]


def _after(outer: Sequence[int], inner: Sequence[int]) -> tuple[int, ...]:
    return tuple(outer[x] for x in inner)


def _sub_xmod(A: CrossedModule, elems: Iterable[int], name: str) -> tuple[CrossedModule, XModMorphism]:
    """A subset of M as a crossed module, with the inclusion morphism."""
    sub = tuple(sorted(set(elems)))
    H, incl = subgroup_group(A.group, sub, name=f"{name}#grp")
    pos = {g: i for i, g in enumerate(sub)}
    for p in range(A.base.order):
        for m in sub:
            if A.act(p, m) not in pos:
                raise ValidationError(f"{name}: subset is not closed under the base action")
    boundary = [A.boundary.image[m] for m in sub]
    action = [[pos[A.act(p, m)] for m in sub] for p in range(A.base.order)]
    S = make_crossed_module(name, H, A.base, boundary, action)
    return S, make_xmod_morphism(S, A, sub)


def _check_parallel(f: XModMorphism, g: XModMorphism) -> None:
    if f.source != g.source or f.target != g.target:
        raise DiagramMismatchError(
            f"expected a parallel pair, got {f.source.name} -> {f.target.name} "
            f"and {g.source.name} -> {g.target.name}"
        )


def equaliser(f: XModMorphism, g: XModMorphism) -> Cone:
    """Elements of the common source where f and g agree, with its inclusion."""
    _check_parallel(f, g)
    C = f.source
    agree = [c for c in range(C.group.order) if f.mapping[c] == g.mapping[c]]
    E, incl = _sub_xmod(C, agree, name=f"eq({C.name})")
    return Cone(kind="equaliser", apex=E, legs=(incl,), elements=tuple(agree))


def coequaliser(f: XModMorphism, g: XModMorphism) -> Cocone:
    """Quotient of the common target by the normal closure of f(c)g(c)^-1.

    The closure lies in the kernel of the target boundary and is stable
    under the base action; both facts are rechecked here so the quotient
    boundary and action are well defined on classes.
    """
    _check_parallel(f, g)
    B = f.target
    G = B.group
    gens = {G.table[f.mapping[c]][G.inverse[g.mapping[c]]] for c in range(f.source.group.order)}
    N = normal_closure(G, gens)
    for n in N:
        if B.boundary.image[n] != B.base.identity:
            raise ValidationError(f"coequaliser: closure element {n} is outside ker(boundary)")
    nset = set(N)
    for p in range(B.base.order):
        for n in N:
            if B.act(p, n) not in nset:
                raise ValidationError(f"coequaliser: closure is not stable under the action")
    quot = quotient_group(G, N, name=f"{G.name}/{len(N)}")
    class_of = quot.projection.image
    classes = tuple(
        tuple(b for b in range(G.order) if class_of[b] == i)
        for i in range(quot.group.order)
    )
    boundary = []
    for members in classes:
        vals = {B.boundary.image[b] for b in members}
        if len(vals) != 1:
            raise ValidationError("coequaliser: boundary is not constant on a class")
        boundary.append(vals.pop())
    action = []
    for p in range(B.base.order):
        row = []
        for members in classes:
            vals = {class_of[B.act(p, b)] for b in members}
            if len(vals) != 1:
                raise ValidationError("coequaliser: action is not constant on a class")
            row.append(vals.pop())
        action.append(row)
    apex = make_crossed_module(f"coeq({B.name})", quot.group, B.base, boundary, action)
    proj = make_xmod_morphism(B, apex, class_of)
    return Cocone(kind="coequaliser", apex=apex, legs=(proj,), classes=classes)


def _pair_apex(C: CrossedModule, D: CrossedModule, pairs: Sequence[tuple[int, int]], name: str) -> CrossedModule:
    pos = {cd: i for i, cd in enumerate(pairs)}
    table = [
        [pos[(C.group.table[c1][c2], D.group.table[d1][d2])] for (c2, d2) in pairs]
        for (c1, d1) in pairs
    ]
    G = make_group(table, f"{name}#grp")
    boundary = [C.boundary.image[c] for (c, _) in pairs]
    action = [
        [pos[(C.act(p, c), D.act(p, d))] for (c, d) in pairs]
        for p in range(C.base.order)
    ]
    return make_crossed_module(name, G, C.base, boundary, action)


def pullback(f: XModMorphism, g: XModMorphism, name: str | None = None, kind: str = "pullback") -> Cone:
    """Pairs (c, d) with f(c) = g(d), with componentwise structure."""
    if f.target != g.target:
        raise DiagramMismatchError(
            f"pullback needs a common target: {f.target.name} vs {g.target.name}"
        )
    C, D = f.source, g.source
    pairs = [
        (c, d)
        for c in range(C.group.order)
        for d in range(D.group.order)
        if f.mapping[c] == g.mapping[d]
    ]
    apex = _pair_apex(C, D, pairs, name or f"pb({C.name},{D.name})")
    p1 = make_xmod_morphism(apex, C, [c for (c, _) in pairs])
    p2 = make_xmod_morphism(apex, D, [d for (_, d) in pairs])
    return Cone(kind=kind, apex=apex, legs=(p1, p2), elements=tuple(pairs))


def terminal_object(P: Group) -> CrossedModule:
    """The base over itself with identity boundary and conjugation action."""
    return CrossedModule(
        name=f"terminal({P.name})",
        group=P,
        base=P,
        boundary=GroupHom(P, P, tuple(range(P.order))),
        action=conjugation_action(P),
    )


def unique_to_terminal(A: CrossedModule, T: CrossedModule | None = None) -> XModMorphism:
    """The boundary of A, viewed as the only morphism into the terminal object."""
    T = T if T is not None else terminal_object(A.base)
    return make_xmod_morphism(A, T, A.boundary.image)


def product_over_P(A: CrossedModule, B: CrossedModule) -> Cone:
    """Binary product, realised as the pullback over the terminal object."""
    T = terminal_object(A.base)
    cone = pullback(
        unique_to_terminal(A, T),
        unique_to_terminal(B, T),
        name=f"prod({A.name},{B.name})",
        kind="product",
    )
    return cone


def kernel_pair(f: XModMorphism) -> Cone:
    """Pairs of source elements identified by f, as a pullback of f with itself."""
    return pullback(f, f, name=f"kp({f.source.name})", kind="kernel-pair")


@dataclass(frozen=True)
class EquivalenceRelation:
    """A set of element pairs of one crossed module, closed as a subobject."""

    carrier: CrossedModule
    pairs: frozenset[tuple[int, int]]


def kernel_pair_relation(f: XModMorphism) -> EquivalenceRelation:
    A = f.source
    pairs = frozenset(
        (a, b)
        for a in range(A.group.order)
        for b in range(A.group.order)
        if f.mapping[a] == f.mapping[b]
    )
    return EquivalenceRelation(carrier=A, pairs=pairs)


def equivalence_violations(E: EquivalenceRelation) -> tuple[str, ...]:
    """Reasons the pair set fails to be an equivalence sub-crossed-module."""
    A = E.carrier
    n = A.group.order
    out = []
    for (a, b) in sorted(E.pairs):
        if not (0 <= a < n and 0 <= b < n):
            return (f"pair ({a}, {b}) out of range",)
    for (a, b) in sorted(E.pairs):
        if A.boundary.image[a] != A.boundary.image[b]:
            out.append(f"pair ({a}, {b}) has unequal boundaries")
    e = A.group.identity
    if (e, e) not in E.pairs:
        out.append("identity pair missing")
    for (a, b) in sorted(E.pairs):
        if (A.group.inverse[a], A.group.inverse[b]) not in E.pairs:
            out.append(f"inverse of ({a}, {b}) missing")
        for (c, d) in sorted(E.pairs):
            if (A.group.table[a][c], A.group.table[b][d]) not in E.pairs:
                out.append(f"product of ({a}, {b}) and ({c}, {d}) missing")
                break
    for p in range(A.base.order):
        for (a, b) in sorted(E.pairs):
            if (A.act(p, a), A.act(p, b)) not in E.pairs:
                out.append(f"action of {p} leaves the set at ({a}, {b})")
                break
    for a in range(n):
        if (a, a) not in E.pairs:
            out.append(f"not reflexive at {a}")
    for (a, b) in sorted(E.pairs):
        if (b, a) not in E.pairs:
            out.append(f"not symmetric at ({a}, {b})")
    for (a, b) in sorted(E.pairs):
        for (b2, c) in sorted(E.pairs):
            if b2 == b and (a, c) not in E.pairs:
                out.append(f"not transitive at ({a}, {b}, {c})")
                break
    return tuple(out)


def is_equivalence_relation(E: EquivalenceRelation) -> bool:
    return not equivalence_violations(E)


def relation_xmod(E: EquivalenceRelation) -> tuple[CrossedModule, XModMorphism, XModMorphism]:
    """The pair set as a crossed module with its two projections to the carrier."""
    A = E.carrier
    pairs = sorted(E.pairs)
    apex = _pair_apex(A, A, pairs, name=f"rel({A.name})")
    u = make_xmod_morphism(apex, A, [a for (a, _) in pairs])
    v = make_xmod_morphism(apex, A, [b for (_, b) in pairs])
    return apex, u, v


def quotient_by_equivalence(A: CrossedModule, E: EquivalenceRelation) -> Cocone:
    """Classes of E with representative-wise structure, checked well defined."""
    if E.carrier != A:
        raise DiagramMismatchError(f"relation carrier {E.carrier.name} is not {A.name}")
    reasons = equivalence_violations(E)
    if reasons:
        raise NotEquivalenceRelationError(f"{A.name}: " + "; ".join(reasons[:5]))
    n = A.group.order
    seen: set[int] = set()
    classes = []
    for a in range(n):
        if a in seen:
            continue
        members = tuple(b for b in range(n) if (a, b) in E.pairs)
        seen.update(members)
        classes.append(members)
    class_of = [0] * n
    for i, members in enumerate(classes):
        for b in members:
            class_of[b] = i
    k = len(classes)
    table = []
    for i in range(k):
        row = []
        for j in range(k):
            vals = {class_of[A.group.table[a][b]] for a in classes[i] for b in classes[j]}
            if len(vals) != 1:
                raise NotEquivalenceRelationError(
                    f"{A.name}: product of classes {i} and {j} is not well defined"
                )
            row.append(vals.pop())
        table.append(row)
    G = make_group(table, f"{A.group.name}/E")
    boundary = []
    for i, members in enumerate(classes):
        vals = {A.boundary.image[b] for b in members}
        if len(vals) != 1:
            raise NotEquivalenceRelationError(f"{A.name}: boundary not constant on class {i}")
        boundary.append(vals.pop())
    action = []
    for p in range(A.base.order):
        row = []
        for i, members in enumerate(classes):
            vals = {class_of[A.act(p, b)] for b in members}
            if len(vals) != 1:
                raise NotEquivalenceRelationError(f"{A.name}: action not constant on class {i}")
            row.append(vals.pop())
        action.append(row)
    apex = make_crossed_module(f"{A.name}/E", G, A.base, boundary, action)
    proj = make_xmod_morphism(A, apex, class_of)
    return Cocone(kind="quotient", apex=apex, legs=(proj,), classes=tuple(classes))


def is_effective(E: EquivalenceRelation) -> bool:
    """True when E is the kernel pair of its own quotient projection."""
    cocone = quotient_by_equivalence(E.carrier, E)
    return kernel_pair_relation(cocone.legs[0]).pairs == E.pairs


class ImageFactorization(NamedTuple):
    epi: Cocone
    mono: XModMorphism


def image_factorization(f: XModMorphism) -> ImageFactorization:
    """Coequalise the kernel pair of f, then include the quotient in the target."""
    kp = kernel_pair(f)
    epi = coequaliser(kp.legs[0], kp.legs[1])
    reps = [members[0] for members in epi.classes]
    mono = make_xmod_morphism(epi.apex, f.target, [f.mapping[r] for r in reps])
    if _after(mono.mapping, epi.legs[0].mapping) != f.mapping:
        raise ValidationError(f"image factorization of {f.source.name} does not recompose")
    return ImageFactorization(epi=epi, mono=mono)


# Catalogue of test objects for universal property sweeps.

_CATALOGUE_GROUPS = (
    trivial_group,
    lambda: cyclic_group(2),
    lambda: cyclic_group(3),
    lambda: cyclic_group(4),
    klein_four_group,
    lambda: cyclic_group(5),
    lambda: cyclic_group(6),
    symmetric_group_3,
)


def default_catalogue(P: Group, max_order: int = 4) -> tuple[CrossedModule, ...]:
    """Every crossed module structure over P on the groups of order <= max_order.

    Complete up to isomorphism for max_order <= 6; larger bounds are refused
    rather than silently incomplete.
    """
    if max_order > 6:
        raise OrderTooLargeError(f"catalogue bound {max_order} exceeds the supported 6")
    out: list[CrossedModule] = []
    for build in _CATALOGUE_GROUPS:
        M = build()
        if M.order <= max_order:
            out.extend(all_crossed_modules(M, P, name_prefix="cat:"))
    return tuple(out)


def extend_catalogue(catalogue: Sequence[CrossedModule], extra: Iterable[CrossedModule]) -> tuple[CrossedModule, ...]:
    """Append diagram objects that are not already present structurally."""
    seen = {structure_key(T) for T in catalogue}
    out = list(catalogue)
    for A in extra:
        key = structure_key(A)
        if key not in seen:
            seen.add(key)
            out.append(A)
    return tuple(out)


def _catalogue_for(P: Group, extra: Iterable[CrossedModule], catalogue: Sequence[CrossedModule] | None, max_order: int) -> tuple[CrossedModule, ...]:
    base = tuple(catalogue) if catalogue is not None else default_catalogue(P, max_order)
    return extend_catalogue(base, extra)


def _catalogue_block(catalogue: Sequence[CrossedModule]) -> list[dict]:
    return [{"name": T.name, "order": T.group.order} for T in catalogue]


def verify_equaliser(
    f: XModMorphism,
    g: XModMorphism,
    cone: Cone,
    catalogue: Sequence[CrossedModule] | None = None,
    max_order: int = 4,
    budget: int = DEFAULT_BUDGET,
) -> dict:
    """Count mediators through the apex for every test map into the source."""
    u = cone.legs[0]
    cat = _catalogue_for(f.source.base, (f.source, f.target), catalogue, max_order)
    failures = []
    checked = commuting = 0
    for T in cat:
        into_source = enumerate_morphisms(T, f.source, budget=budget)
        into_apex = enumerate_morphisms(T, cone.apex, budget=budget)
        for t in into_source:
            checked += 1
            commutes = _after(f.mapping, t.mapping) == _after(g.mapping, t.mapping)
            commuting += commutes
            found = sum(1 for h in into_apex if _after(u.mapping, h.mapping) == t.mapping)
            expected = 1 if commutes else 0
            if found != expected:
                failures.append(
                    {"test_object": T.name, "map": list(t.mapping), "expected": expected, "found": found}
                )
    return {
        "kind": "equaliser",
        "pass": not failures,
        "apex": cone.apex.name,
        "apex_order": cone.apex.group.order,
        "cones_checked": checked,
        "commuting": commuting,
        "failures": failures,
        "catalogue": _catalogue_block(cat),
    }


def verify_coequaliser(
    f: XModMorphism,
    g: XModMorphism,
    cocone: Cocone,
    catalogue: Sequence[CrossedModule] | None = None,
    max_order: int = 4,
    budget: int = DEFAULT_BUDGET,
) -> dict:
    """Count mediators out of the apex for every test map out of the target."""
    p = cocone.legs[0]
    B = f.target
    cat = _catalogue_for(B.base, (f.source, B), catalogue, max_order)
    failures = []
    checked = commuting = 0
    for T in cat:
        from_target = enumerate_morphisms(B, T, budget=budget)
        from_apex = enumerate_morphisms(cocone.apex, T, budget=budget)
        for q in from_target:
            checked += 1
            commutes = _after(q.mapping, f.mapping) == _after(q.mapping, g.mapping)
            commuting += commutes
            found = sum(1 for h in from_apex if _after(h.mapping, p.mapping) == q.mapping)
            expected = 1 if commutes else 0
            if found != expected:
                failures.append(
                    {"test_object": T.name, "map": list(q.mapping), "expected": expected, "found": found}
                )
    return {
        "kind": "coequaliser",
        "pass": not failures,
        "apex": cocone.apex.name,
        "apex_order": cocone.apex.group.order,
        "cocones_checked": checked,
        "commuting": commuting,
        "failures": failures,
        "catalogue": _catalogue_block(cat),
    }


def verify_pullback(
    f: XModMorphism,
    g: XModMorphism,
    cone: Cone,
    catalogue: Sequence[CrossedModule] | None = None,
    max_order: int = 4,
    budget: int = DEFAULT_BUDGET,
) -> dict:
    """Count mediators for every pair of test maps into the two sources."""
    p1, p2 = cone.legs
    cat = _catalogue_for(f.source.base, (f.source, g.source, f.target), catalogue, max_order)
    failures = []
    checked = commuting = 0
    for T in cat:
        into_left = enumerate_morphisms(T, f.source, budget=budget)
        into_right = enumerate_morphisms(T, g.source, budget=budget)
        into_apex = enumerate_morphisms(T, cone.apex, budget=budget)
        for tC in into_left:
            fc = _after(f.mapping, tC.mapping)
            for tD in into_right:
                checked += 1
                commutes = fc == _after(g.mapping, tD.mapping)
                commuting += commutes
                found = sum(
                    1
                    for h in into_apex
                    if _after(p1.mapping, h.mapping) == tC.mapping
                    and _after(p2.mapping, h.mapping) == tD.mapping
                )
                expected = 1 if commutes else 0
                if found != expected:
                    failures.append(
                        {
                            "test_object": T.name,
                            "maps": [list(tC.mapping), list(tD.mapping)],
                            "expected": expected,
                            "found": found,
                        }
                    )
    return {
        "kind": cone.kind,
        "pass": not failures,
        "apex": cone.apex.name,
        "apex_order": cone.apex.group.order,
        "cones_checked": checked,
        "commuting": commuting,
        "failures": failures,
        "catalogue": _catalogue_block(cat),
    }


def verify_product(
    A: CrossedModule,
    B: CrossedModule,
    cone: Cone,
    catalogue: Sequence[CrossedModule] | None = None,
    max_order: int = 4,
    budget: int = DEFAULT_BUDGET,
) -> dict:
    """Product universal property via its pullback presentation over the terminal."""
    T = terminal_object(A.base)
    report = verify_pullback(
        unique_to_terminal(A, T), unique_to_terminal(B, T), cone,
        catalogue=catalogue, max_order=max_order, budget=budget,
    )
    report["kind"] = "product"
    return report


def verify_kernel_pair(
    f: XModMorphism,
    cone: Cone,
    catalogue: Sequence[CrossedModule] | None = None,
    max_order: int = 4,
    budget: int = DEFAULT_BUDGET,
) -> dict:
    report = verify_pullback(f, f, cone, catalogue=catalogue, max_order=max_order, budget=budget)
    report["kind"] = "kernel-pair"
    return report


def verify_quotient(
    A: CrossedModule,
    E: EquivalenceRelation,
    cocone: Cocone,
    catalogue: Sequence[CrossedModule] | None = None,
    max_order: int = 4,
    budget: int = DEFAULT_BUDGET,
) -> dict:
    """Quotient as the coequaliser of the relation's projections, plus effectiveness."""
    _, u, v = relation_xmod(E)
    report = verify_coequaliser(u, v, cocone, catalogue=catalogue, max_order=max_order, budget=budget)
    report["kind"] = "quotient"
    effective = kernel_pair_relation(cocone.legs[0]).pairs == E.pairs
    report["effective"] = effective
    report["pass"] = report["pass"] and effective
    return report
