"""Finite groups as dense multiplication tables.

Elements of a group of order n are the indices 0..n-1.  A group is a
validated Cayley table plus the identity and inverse data derived from it.
All constructions at this scale (subgroups, quotients, automorphism groups)
are exhaustive searches over the table.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    IndexOutOfRangeError,
    NoIdentityError,
    NoInverseError,
    NotAssociativeError,
    NotHomomorphismError,
    NotNormalError,
    NotSubgroupError,
    OrderTooLargeError,
)

__all__ = [
    "Group",
    "GroupHom",
    "Quotient",
    "AutGroup",
    "make_group",
    "trivial_group",
    "cyclic_group",
    "klein_four_group",
    "symmetric_group_3",
    "make_hom",
    "identity_hom",
    "compose_homs",
    "enumerate_homs",
    "subgroup_closure",
    "is_subgroup",
    "is_normal",
    "all_subgroups",
    "normal_subgroups",
    "normal_closure",
    "subgroup_group",
    "quotient_group",
    "center",
    "conjugacy_class",
    "element_order",
    "automorphism_group",
]


@dataclass(frozen=True)
class Group:
    """A finite group on the index set 0..order-1."""

    name: str
    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, p: int, a: int) -> int:
        """Return p a p^-1."""
        return self.table[self.table[p][a]][self.inverse[p]]

    def elements(self) -> range:
        return range(self.order)

    def prod(self, items: Iterable[int]) -> int:
        """Multiply a sequence left to right; empty product is the identity."""
        out = self.identity
        for a in items:
            out = self.table[out][a]
        return out

    def is_abelian(self) -> bool:
        return all(
            self.table[a][b] == self.table[b][a]
            for a in range(self.order)
            for b in range(a + 1, self.order)
        )


def make_group(table: Sequence[Sequence[int]], name: str = "G") -> Group:
    """Validate a multiplication table and package it as a Group.

    Raises IndexOutOfRangeError for malformed entries, NotAssociativeError,
    NoIdentityError, or NoInverseError with the witnessing indices.
    """
    n = len(table)
    if n == 0:
        raise NoIdentityError(f"{name}: empty table has no identity")
    rows = []
    for i, row in enumerate(table):
        row = tuple(row)
        if len(row) != n:
            raise IndexOutOfRangeError(f"{name}: row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < n:
                raise IndexOutOfRangeError(f"{name}: entry [{i}][{j}] = {v!r} not in 0..{n - 1}")
        rows.append(row)
    t = tuple(rows)
    for a in range(n):
        for b in range(n):
            ab = t[a][b]
            for c in range(n):
                if t[ab][c] != t[a][t[b][c]]:
                    raise NotAssociativeError(f"{name}: (a, b, c) = ({a}, {b}, {c})")
    identity = None
    for e in range(n):
        if all(t[e][a] == a and t[a][e] == a for a in range(n)):
            identity = e
            break
    if identity is None:
        raise NoIdentityError(f"{name}: no two-sided identity")
    inverse = []
    for a in range(n):
        inv = None
        for b in range(n):
            if t[a][b] == identity and t[b][a] == identity:
                inv = b
                break
        if inv is None:
            raise NoInverseError(f"{name}: element {a} has no inverse")
        inverse.append(inv)
    return Group(name=name, order=n, table=t, identity=identity, inverse=tuple(inverse))


def trivial_group(name: str = "1") -> Group:
    return make_group([[0]], name)


def cyclic_group(n: int, name: str | None = None) -> Group:
    """Cyclic group of order n, written additively on 0..n-1."""
    if n < 1:
        raise IndexOutOfRangeError(f"cyclic order must be positive, got {n}")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return make_group(table, name or f"C{n}")


def klein_four_group(name: str = "V4") -> Group:
    """Klein four group as bitwise xor on 0..3."""
    table = [[a ^ b for b in range(4)] for a in range(4)]
    return make_group(table, name)


_S3_PERMS = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))


def symmetric_group_3(name: str = "S3") -> Group:
    """Symmetric group on three letters.

    Element i is the i-th permutation of (0, 1, 2) in lexicographic order,
    and i * j is the permutation applying j first, then i.
    """
    idx = {p: i for i, p in enumerate(_S3_PERMS)}
    table = [
        [idx[tuple(p[q[x]] for x in range(3))] for q in _S3_PERMS]
        for p in _S3_PERMS
    ]
    return make_group(table, name)


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism stored as the image tuple image[a] in the codomain."""

    domain: Group
    codomain: Group
    image: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.image[a]

    def is_surjective(self) -> bool:
        return len(set(self.image)) == self.codomain.order

    def is_injective(self) -> bool:
        return len(set(self.image)) == self.domain.order


def hom_violation(domain: Group, codomain: Group, image: Sequence[int]) -> tuple[int, int] | None:
    """Return a pair (a, b) where multiplicativity fails, or None."""
    for a in range(domain.order):
        for b in range(domain.order):
            if image[domain.table[a][b]] != codomain.table[image[a]][image[b]]:
                return (a, b)
    return None


def make_hom(domain: Group, codomain: Group, image: Sequence[int]) -> GroupHom:
    if len(image) != domain.order:
        raise IndexOutOfRangeError(
            f"hom image has length {len(image)}, expected {domain.order}"
        )
    for a, v in enumerate(image):
        if not 0 <= v < codomain.order:
            raise IndexOutOfRangeError(f"hom image[{a}] = {v} not in codomain range")
    witness = hom_violation(domain, codomain, image)
    if witness is not None:
        a, b = witness
        raise NotHomomorphismError(
            f"map {domain.name} -> {codomain.name} fails at ({a}, {b})"
        )
    return GroupHom(domain=domain, codomain=codomain, image=tuple(image))


def identity_hom(G: Group) -> GroupHom:
    return GroupHom(G, G, tuple(range(G.order)))


def compose_homs(f: GroupHom, g: GroupHom) -> GroupHom:
    """Return f after g."""
    if g.codomain != f.domain:
        raise NotHomomorphismError(
            f"cannot compose: {g.codomain.name} is not {f.domain.name}"
        )
    return GroupHom(g.domain, f.codomain, tuple(f.image[g.image[a]] for a in range(g.domain.order)))


def enumerate_homs(domain: Group, codomain: Group) -> tuple[GroupHom, ...]:
    """All homomorphisms, by depth-first assignment of images in index order.

    A partial assignment is kept only while every product that lands inside
    the assigned prefix is respected, which prunes hard enough for the group
    orders used here.
    """
    n, m = domain.order, codomain.order
    img = [0] * n
    out: list[GroupHom] = []

    def consistent(k: int) -> bool:
        for a in range(k + 1):
            for b in range(k + 1):
                c = domain.table[a][b]
                if c <= k and codomain.table[img[a]][img[b]] != img[c]:
                    return False
        return True

    def assign(k: int) -> None:
        if k == n:
            out.append(GroupHom(domain, codomain, tuple(img)))
            return
        candidates = (codomain.identity,) if k == domain.identity else range(m)
        for c in candidates:
            img[k] = c
            if consistent(k):
                assign(k + 1)

    assign(0)
    return tuple(out)


def subgroup_closure(G: Group, seed: Iterable[int]) -> tuple[int, ...]:
    """Smallest subgroup of G containing the seed elements."""
    cur = {G.identity}
    for s in seed:
        if not 0 <= s < G.order:
            raise IndexOutOfRangeError(f"{G.name}: seed element {s} out of range")
        cur.add(s)
    changed = True
    while changed:
        changed = False
        snapshot = sorted(cur)
        for a in snapshot:
            if G.inverse[a] not in cur:
                cur.add(G.inverse[a])
                changed = True
            for b in snapshot:
                p = G.table[a][b]
                if p not in cur:
                    cur.add(p)
                    changed = True
    return tuple(sorted(cur))


def is_subgroup(G: Group, elems: Iterable[int]) -> bool:
    s = set(elems)
    if G.identity not in s:
        return False
    return all(G.inverse[a] in s and G.table[a][b] in s for a in s for b in s)


def is_normal(G: Group, elems: Iterable[int]) -> bool:
    s = set(elems)
    return all(G.conj(g, a) in s for g in range(G.order) for a in s)


def all_subgroups(G: Group) -> tuple[tuple[int, ...], ...]:
    """Every subgroup, found by growing known subgroups one generator at a time."""
    start = frozenset({G.identity})
    found = {start}
    frontier = [start]
    while frontier:
        H = frontier.pop()
        for g in range(G.order):
            if g not in H:
                K = frozenset(subgroup_closure(G, H | {g}))
                if K not in found:
                    found.add(K)
                    frontier.append(K)
    return tuple(sorted(tuple(sorted(H)) for H in found))


def normal_subgroups(G: Group) -> tuple[tuple[int, ...], ...]:
    return tuple(H for H in all_subgroups(G) if is_normal(G, H))


def normal_closure(G: Group, seed: Iterable[int]) -> tuple[int, ...]:
    """Smallest normal subgroup containing the seed, by saturation."""
    cur = set(subgroup_closure(G, seed))
    changed = True
    while changed:
        changed = False
        for g in range(G.order):
            for a in sorted(cur):
                c = G.conj(g, a)
                if c not in cur:
                    cur = set(subgroup_closure(G, cur | {c}))
                    changed = True
    return tuple(sorted(cur))


def subgroup_group(G: Group, elems: Iterable[int], name: str | None = None) -> tuple[Group, GroupHom]:
    """Reindex a subgroup as a Group of its own, with the inclusion hom."""
    sub = tuple(sorted(set(elems)))
    if not is_subgroup(G, sub):
        raise NotSubgroupError(f"{G.name}: {sub} is not a subgroup")
    pos = {g: i for i, g in enumerate(sub)}
    table = [[pos[G.table[a][b]] for b in sub] for a in sub]
    H = make_group(table, name or f"{G.name}|{len(sub)}")
    return H, GroupHom(H, G, sub)


class Quotient(NamedTuple):
    group: Group
    projection: GroupHom
    representatives: tuple[int, ...]


def quotient_group(G: Group, normal: Iterable[int], name: str | None = None) -> Quotient:
    """Quotient by a normal subgroup; class i is named by its least element."""
    N = tuple(sorted(set(normal)))
    if not is_subgroup(G, N):
        raise NotSubgroupError(f"{G.name}: {N} is not a subgroup")
    if not is_normal(G, N):
        bad = next(
            (g, a)
            for g in range(G.order)
            for a in N
            if G.conj(g, a) not in set(N)
        )
        raise NotNormalError(f"{G.name}: conjugate of {bad[1]} by {bad[0]} leaves {N}")
    coset_of = {}
    reps = []
    for g in range(G.order):
        if g in coset_of:
            continue
        coset = sorted(G.table[g][n] for n in N)
        rep = len(reps)
        reps.append(coset[0])
        for h in coset:
            coset_of[h] = rep
    table = [
        [coset_of[G.table[reps[i]][reps[j]]] for j in range(len(reps))]
        for i in range(len(reps))
    ]
    Q = make_group(table, name or f"{G.name}/{len(N)}")
    proj = GroupHom(G, Q, tuple(coset_of[g] for g in range(G.order)))
    return Quotient(group=Q, projection=proj, representatives=tuple(reps))


def center(G: Group) -> tuple[int, ...]:
    return tuple(
        z for z in range(G.order)
        if all(G.table[z][a] == G.table[a][z] for a in range(G.order))
    )


def conjugacy_class(G: Group, x: int) -> tuple[int, ...]:
    return tuple(sorted({G.conj(p, x) for p in range(G.order)}))


def element_order(G: Group, a: int) -> int:
    k, cur = 1, a
    while cur != G.identity:
        cur = G.table[cur][a]
        k += 1
    return k


class AutGroup(NamedTuple):
    group: Group
    perms: tuple[tuple[int, ...], ...]


def automorphism_group(M: Group, bound: int = 12) -> AutGroup:
    """Automorphism group by exhaustive search over bijective endomorphisms.

    perms[i] is the i-th automorphism as an image tuple, in lexicographic
    order, and group is the composition table (i * j applies j first).
    """
    if M.order > bound:
        raise OrderTooLargeError(
            f"{M.name}: order {M.order} exceeds automorphism search bound {bound}"
        )
    n = M.order
    img = [0] * n
    used = [False] * n
    perms: list[tuple[int, ...]] = []

    def consistent(k: int) -> bool:
        for a in range(k + 1):
            for b in range(k + 1):
                c = M.table[a][b]
                if c <= k and M.table[img[a]][img[b]] != img[c]:
                    return False
        return True

    def assign(k: int) -> None:
        if k == n:
            perms.append(tuple(img))
            return
        candidates = (M.identity,) if k == M.identity else range(n)
        for c in candidates:
            if used[c]:
                continue
            img[k] = c
            used[c] = True
            if consistent(k):
                assign(k + 1)
            used[c] = False

    assign(0)
    pos = {p: i for i, p in enumerate(perms)}
    table = [
        [pos[tuple(p[q[x]] for x in range(n))] for q in perms]
        for p in perms
    ]
    A = make_group(table, f"Aut({M.name})")
    return AutGroup(group=A, perms=tuple(perms))
