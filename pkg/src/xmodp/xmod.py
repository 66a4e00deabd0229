"""Crossed modules over a fixed finite base group.

A crossed module here is a finite group M, a base group P, a boundary
homomorphism M -> P, and a left P-action on M by automorphisms, subject to

    CM1: boundary(p . m) = p * boundary(m) * p^-1
    CM2: (boundary(m)) . n = m * n * m^-1

Validation returns violations as data, so a caller can inspect every failed
axiom with its witnessing indices instead of stopping at the first.
Morphisms keep the base fixed: they are group maps M -> M' commuting with
the boundaries and with the action.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    BaseMismatchError,
    BudgetExceededError,
    CompositionMismatchError,
    IllDefinedActionError,
    PreconditionFailedError,
    ValidationError,
)
from .groups import (
    AutGroup,
    Group,
    GroupHom,
    automorphism_group,
    center,
    enumerate_homs,
    is_normal,
    is_subgroup,
    make_group,
    subgroup_group,
)

__all__ = [
    "Violation",
    "Action",
    "CrossedModule",
    "XModMorphism",
    "action_violations",
    "make_action",
    "trivial_action",
    "conjugation_action",
    "crossed_module_violations",
    "validate_crossed_module",
    "make_crossed_module",
    "fiber",
    "conjugation_xmod",
    "automorphism_xmod",
    "trivial_xmod",
    "central_extension_xmod",
    "central_image_xmod",
    "standard_xmod",
    "morphism_violations",
    "validate_morphism",
    "make_xmod_morphism",
    "identity_xmod_morphism",
    "compose_xmod_morphisms",
    "enumerate_morphisms",
    "all_crossed_modules",
    "structure_key",
]

DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class Violation:
    """One failed axiom with the indices that witness the failure."""

    axiom: str
    witness: tuple[int, ...]

    def describe(self) -> str:
        return f"{self.axiom} at {self.witness}"


@dataclass(frozen=True)
class Action:
    """A left action of actor on space, table[p][m] = p . m."""

    actor: Group
    space: Group
    table: tuple[tuple[int, ...], ...]

    def apply(self, p: int, m: int) -> int:
        return self.table[p][m]


def action_violations(actor: Group, space: Group, table: Sequence[Sequence[int]]) -> tuple[Violation, ...]:
    """Check shape, identity row, compatibility with products on both sides.

    Codes: action-shape, action-range, action-identity (identity acts as the
    identity map), action-composition ((pq).m = p.(q.m)), action-product
    (p.(mn) = (p.m)(p.n)).  Bijectivity of each row follows from the first
    two axioms, so it is not checked separately.
    """
    out = []
    if len(table) != actor.order:
        return (Violation("action-shape", (len(table), actor.order)),)
    rows = [tuple(r) for r in table]
    for p, row in enumerate(rows):
        if len(row) != space.order:
            return (Violation("action-shape", (p, len(row), space.order)),)
        for m, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < space.order:
                out.append(Violation("action-range", (p, m)))
    if out:
        return tuple(out)
    for m in range(space.order):
        if rows[actor.identity][m] != m:
            out.append(Violation("action-identity", (m,)))
    for p in range(actor.order):
        for q in range(actor.order):
            pq = actor.table[p][q]
            for m in range(space.order):
                if rows[pq][m] != rows[p][rows[q][m]]:
                    out.append(Violation("action-composition", (p, q, m)))
    for p in range(actor.order):
        for m in range(space.order):
            for n in range(space.order):
                if rows[p][space.table[m][n]] != space.table[rows[p][m]][rows[p][n]]:
                    out.append(Violation("action-product", (p, m, n)))
    return tuple(out)


def make_action(actor: Group, space: Group, table: Sequence[Sequence[int]]) -> Action:
    bad = action_violations(actor, space, table)
    if bad:
        raise ValidationError(
            f"invalid action of {actor.name} on {space.name}: " + "; ".join(v.describe() for v in bad[:5]),
            violations=bad,
        )
    return Action(actor=actor, space=space, table=tuple(tuple(r) for r in table))


def trivial_action(actor: Group, space: Group) -> Action:
    row = tuple(range(space.order))
    return Action(actor=actor, space=space, table=tuple(row for _ in range(actor.order)))


def conjugation_action(G: Group) -> Action:
    table = tuple(tuple(G.conj(p, m) for m in range(G.order)) for p in range(G.order))
    return Action(actor=G, space=G, table=table)


@dataclass(frozen=True)
class CrossedModule:
    """A validated crossed module (group, base, boundary, action)."""

    name: str
    group: Group
    base: Group
    boundary: GroupHom
    action: Action

    def act(self, p: int, m: int) -> int:
        return self.action.table[p][m]

    def boundary_of(self, m: int) -> int:
        return self.boundary.image[m]


def crossed_module_violations(
    group: Group,
    base: Group,
    boundary: Sequence[int],
    action: Sequence[Sequence[int]],
    check_cm2: bool = True,
) -> tuple[Violation, ...]:
    """Full validation report for crossed-module shaped data.

    Includes component-level checks (boundary is a homomorphism, action
    axioms) and the two structure axioms.  With check_cm2 false only CM1 is
    required, which validates the weaker pre-crossed structure.
    Codes: boundary-shape, boundary-range, boundary-hom, the action-* codes,
    cm1 with witness (p, m), cm2 with witness (m, n).
    """
    out = []
    if len(boundary) != group.order:
        return (Violation("boundary-shape", (len(boundary), group.order)),)
    for m, v in enumerate(boundary):
        if not isinstance(v, int) or not 0 <= v < base.order:
            out.append(Violation("boundary-range", (m,)))
    act_bad = action_violations(base, group, action)
    shape_bad = [v for v in act_bad if v.axiom in ("action-shape", "action-range")]
    if out or shape_bad:
        return tuple(out) + tuple(shape_bad)
    out.extend(act_bad)
    for a in range(group.order):
        for b in range(group.order):
            if boundary[group.table[a][b]] != base.table[boundary[a]][boundary[b]]:
                out.append(Violation("boundary-hom", (a, b)))
    for p in range(base.order):
        for m in range(group.order):
            if boundary[action[p][m]] != base.conj(p, boundary[m]):
                out.append(Violation("cm1", (p, m)))
    if check_cm2:
        for m in range(group.order):
            pm = boundary[m]
            for n in range(group.order):
                if action[pm][n] != group.conj(m, n):
                    out.append(Violation("cm2", (m, n)))
    return tuple(out)


def validate_crossed_module(A: CrossedModule, check_cm2: bool = True) -> tuple[Violation, ...]:
    return crossed_module_violations(
        A.group, A.base, A.boundary.image, A.action.table, check_cm2=check_cm2
    )


def make_crossed_module(
    name: str,
    group: Group,
    base: Group,
    boundary: Sequence[int],
    action: Sequence[Sequence[int]],
) -> CrossedModule:
    """Validate and build; raises ValidationError carrying every violation."""
    bad = crossed_module_violations(group, base, boundary, action)
    if bad:
        raise ValidationError(
            f"{name}: " + "; ".join(v.describe() for v in bad[:5]),
            violations=bad,
        )
    return CrossedModule(
        name=name,
        group=group,
        base=base,
        boundary=GroupHom(group, base, tuple(boundary)),
        action=Action(actor=base, space=group, table=tuple(tuple(r) for r in action)),
    )


def fiber(A: CrossedModule, x: int) -> tuple[int, ...]:
    """Elements of M whose boundary is x, in index order."""
    return tuple(m for m in range(A.group.order) if A.boundary.image[m] == x)


# The five standard constructions.

def conjugation_xmod(G: Group, normal_elems: Sequence[int], name: str | None = None) -> CrossedModule:
    """Inclusion of a normal subgroup with the conjugation action of G."""
    sub = tuple(sorted(set(normal_elems)))
    if not is_subgroup(G, sub):
        raise PreconditionFailedError(f"conjugation: {sub} is not a subgroup of {G.name}")
    if not is_normal(G, sub):
        raise PreconditionFailedError(f"conjugation: {sub} is not normal in {G.name}")
    N, incl = subgroup_group(G, sub, name=f"{G.name}|N{len(sub)}")
    pos = {g: i for i, g in enumerate(sub)}
    action = [[pos[G.conj(p, g)] for g in sub] for p in range(G.order)]
    return make_crossed_module(
        name or f"conj({G.name},{len(sub)})", N, G, incl.image, action
    )


def automorphism_xmod(M: Group, bound: int = 12, name: str | None = None) -> CrossedModule:
    """M over its automorphism group, boundary sending m to conjugation by m."""
    aut: AutGroup = automorphism_group(M, bound=bound)
    pos = {p: i for i, p in enumerate(aut.perms)}
    boundary = [pos[tuple(M.conj(m, x) for x in range(M.order))] for m in range(M.order)]
    action = [list(aut.perms[phi]) for phi in range(aut.group.order)]
    return make_crossed_module(name or f"aut({M.name})", M, aut.group, boundary, action)


def trivial_xmod(M: Group, P: Group, action: Sequence[Sequence[int]] | None = None, name: str | None = None) -> CrossedModule:
    """Abelian M with constant-identity boundary and a chosen P-action."""
    if not M.is_abelian():
        raise PreconditionFailedError(f"trivial module: {M.name} is not abelian")
    table = action if action is not None else trivial_action(P, M).table
    bad = action_violations(P, M, table)
    if bad:
        raise PreconditionFailedError(
            f"trivial module: given table is not an action ({bad[0].describe()})"
        )
    boundary = [P.identity] * M.order
    return make_crossed_module(name or f"triv({M.name},{P.name})", M, P, boundary, table)


def central_extension_xmod(mu: GroupHom, name: str | None = None) -> CrossedModule:
    """Surjective mu: M -> P with central kernel; P acts through preimages.

    p . m is x m x^-1 for any preimage x of p.  Independence from the choice
    is checked over every preimage and IllDefinedActionError reports the
    first disagreement.
    """
    M, P = mu.domain, mu.codomain
    if not mu.is_surjective():
        raise PreconditionFailedError(f"central extension: {M.name} -> {P.name} is not surjective")
    Z = set(center(M))
    kernel = [m for m in range(M.order) if mu.image[m] == P.identity]
    outside = [m for m in kernel if m not in Z]
    if outside:
        raise PreconditionFailedError(
            f"central extension: kernel element {outside[0]} is not central in {M.name}"
        )
    action = []
    for p in range(P.order):
        preimages = [x for x in range(M.order) if mu.image[x] == p]
        x0 = preimages[0]
        row = [M.conj(x0, m) for m in range(M.order)]
        for x in preimages[1:]:
            for m in range(M.order):
                if M.conj(x, m) != row[m]:
                    raise IllDefinedActionError(
                        f"central extension: preimages {x0} and {x} of {p} "
                        f"conjugate {m} differently"
                    )
        action.append(row)
    return make_crossed_module(name or f"cext({M.name},{P.name})", M, P, mu.image, action)


def central_image_xmod(mu: GroupHom, name: str | None = None) -> CrossedModule:
    """Abelian M mapping into the centre of P, with the trivial action."""
    M, P = mu.domain, mu.codomain
    if not M.is_abelian():
        raise PreconditionFailedError(f"central image: {M.name} is not abelian")
    Z = set(center(P))
    outside = [m for m in range(M.order) if mu.image[m] not in Z]
    if outside:
        raise PreconditionFailedError(
            f"central image: image of {outside[0]} is not central in {P.name}"
        )
    return make_crossed_module(
        name or f"cimg({M.name},{P.name})", M, P, mu.image, trivial_action(P, M).table
    )


_STANDARD_KINDS = {
    "conjugation": conjugation_xmod,
    "automorphism": automorphism_xmod,
    "trivial": trivial_xmod,
    "central-extension": central_extension_xmod,
    "central-image": central_image_xmod,
}


def standard_xmod(kind: str, *args, **kwargs) -> CrossedModule:
    """Dispatch to one of the five named constructions by kind string."""
    if kind not in _STANDARD_KINDS:
        raise PreconditionFailedError(
            f"unknown construction {kind!r}; expected one of {sorted(_STANDARD_KINDS)}"
        )
    return _STANDARD_KINDS[kind](*args, **kwargs)


# Morphisms over the shared base.

@dataclass(frozen=True)
class XModMorphism:
    """A base-fixing morphism stored as the element map on M."""

    source: CrossedModule
    target: CrossedModule
    mapping: tuple[int, ...]

    def __call__(self, m: int) -> int:
        return self.mapping[m]

    def is_injective(self) -> bool:
        return len(set(self.mapping)) == self.source.group.order

    def is_surjective(self) -> bool:
        return len(set(self.mapping)) == self.target.group.order


def morphism_violations(A: CrossedModule, B: CrossedModule, mapping: Sequence[int]) -> tuple[Violation, ...]:
    """Report for a candidate element map M_A -> M_B over the shared base.

    Codes: map-shape, map-range, map-hom (multiplicativity), map-boundary
    (target boundary after the map equals the source boundary), and
    map-equivariant (the map commutes with the P-action).
    """
    out = []
    nA, nB = A.group.order, B.group.order
    if len(mapping) != nA:
        return (Violation("map-shape", (len(mapping), nA)),)
    for m, v in enumerate(mapping):
        if not isinstance(v, int) or not 0 <= v < nB:
            out.append(Violation("map-range", (m,)))
    if out:
        return tuple(out)
    for a in range(nA):
        for b in range(nA):
            if mapping[A.group.table[a][b]] != B.group.table[mapping[a]][mapping[b]]:
                out.append(Violation("map-hom", (a, b)))
    for m in range(nA):
        if B.boundary.image[mapping[m]] != A.boundary.image[m]:
            out.append(Violation("map-boundary", (m,)))
    for p in range(A.base.order):
        for m in range(nA):
            if mapping[A.act(p, m)] != B.act(p, mapping[m]):
                out.append(Violation("map-equivariant", (p, m)))
    return tuple(out)


def _require_same_base(A: CrossedModule, B: CrossedModule) -> None:
    if A.base != B.base:
        raise BaseMismatchError(
            f"{A.name} is over {A.base.name} but {B.name} is over {B.base.name}"
        )


def validate_morphism(A: CrossedModule, B: CrossedModule, mapping: Sequence[int]) -> tuple[Violation, ...]:
    _require_same_base(A, B)
    return morphism_violations(A, B, mapping)


def make_xmod_morphism(A: CrossedModule, B: CrossedModule, mapping: Sequence[int]) -> XModMorphism:
    bad = validate_morphism(A, B, mapping)
    if bad:
        raise ValidationError(
            f"map {A.name} -> {B.name}: " + "; ".join(v.describe() for v in bad[:5]),
            violations=bad,
        )
    return XModMorphism(source=A, target=B, mapping=tuple(mapping))


def identity_xmod_morphism(A: CrossedModule) -> XModMorphism:
    return XModMorphism(A, A, tuple(range(A.group.order)))


def compose_xmod_morphisms(f: XModMorphism, g: XModMorphism) -> XModMorphism:
    """Return f after g."""
    if g.target != f.source:
        raise CompositionMismatchError(
            f"cannot compose: {g.target.name} is not {f.source.name}"
        )
    return XModMorphism(
        g.source, f.target, tuple(f.mapping[g.mapping[m]] for m in range(g.source.group.order))
    )


def enumerate_morphisms(A: CrossedModule, B: CrossedModule, budget: int = DEFAULT_BUDGET) -> tuple[XModMorphism, ...]:
    """All morphisms A -> B by filtering every element map, in lexicographic order.

    Deliberately exhaustive so it can serve as an oracle; the search space
    |M_B| ** |M_A| is gated by the budget.
    """
    _require_same_base(A, B)
    nA, nB = A.group.order, B.group.order
    space = nB ** nA
    if space > budget:
        raise BudgetExceededError(
            f"morphism search {B.name}^{A.name} needs {space} maps, budget {budget}"
        )
    bnd_A, bnd_B = A.boundary.image, B.boundary.image
    tab_A, tab_B = A.group.table, B.group.table
    act_A, act_B = A.action.table, B.action.table
    P_order = A.base.order
    out = []
    for mapping in itertools.product(range(nB), repeat=nA):
        ok = True
        for m in range(nA):
            if bnd_B[mapping[m]] != bnd_A[m]:
                ok = False
                break
        if not ok:
            continue
        for p in range(P_order):
            for m in range(nA):
                if mapping[act_A[p][m]] != act_B[p][mapping[m]]:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        for a in range(nA):
            for b in range(nA):
                if mapping[tab_A[a][b]] != tab_B[mapping[a]][mapping[b]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(XModMorphism(A, B, mapping))
    return tuple(out)


def structure_key(A: CrossedModule) -> tuple:
    """Name-independent identity of a crossed module over a fixed base."""
    return (A.group.table, A.boundary.image, A.action.table)


def all_crossed_modules(M: Group, P: Group, name_prefix: str = "") -> tuple[CrossedModule, ...]:
    """Every crossed module structure on M over P.

    Boundaries range over all homomorphisms M -> P, actions over all
    homomorphisms P -> Aut(M); each combination is kept when CM1 and CM2
    hold.  Order is deterministic in (boundary, action) enumeration order.
    """
    aut = automorphism_group(M)
    out = []
    k = 0
    for bnd in enumerate_homs(M, P):
        for act_hom in enumerate_homs(P, aut.group):
            action = tuple(aut.perms[act_hom.image[p]] for p in range(P.order))
            if not crossed_module_violations(M, P, bnd.image, action):
                out.append(
                    CrossedModule(
                        name=f"{name_prefix}{M.name}.{k}",
                        group=M,
                        base=P,
                        boundary=GroupHom(M, P, bnd.image),
                        action=Action(actor=P, space=M, table=action),
                    )
                )
                k += 1
    return tuple(out)
