"""Symbolic words over free crossed modules, and the finite site they index.

A free object is a finite list of labels with a base element attached to
each.  The crossed module it freely generates is usually infinite, so it is
never materialised: its elements are represented by words of signed symbols

    (u . label)^(+1|-1)         u an element of the base group

and maps out of it by assignments of carrier elements to labels, subject to
the fiber condition that the assigned element's boundary equals the label's
base element.  Translation obeys v . (u . label) = (vu) . label, which is
the one choice making the symbolic boundary equivariant.

The site has one object per base element (single) and one per ordered pair
(pair); its generating morphisms are conjugation moves between singles, the
multiplication map from a single into a pair, and the two injections.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import (
    BaseMismatchError,
    CompositionMismatchError,
    FiberMismatchError,
    IndexOutOfRangeError,
    PreconditionFailedError,
)
from .groups import Group
from .xmod import CrossedModule, fiber

__all__ = [
    "Symbol",
    "FreeObject",
    "Word",
    "make_free_object",
    "single_object",
    "pair_object",
    "make_word",
    "symbol_word",
    "concat_words",
    "invert_word",
    "translate_word",
    "word_boundary",
    "evaluate_word",
    "hom_set",
    "hom_set_size",
    "labelling",
    "ConjugacyWitness",
    "singly_generated_hom",
    "apply_peiffer_move",
    "peiffer_word",
    "SiteObject",
    "SiteMorphism",
    "Site",
    "build_site",
    "substitute_word",
    "compose_site_morphisms",
]


class Symbol(NamedTuple):
    """One signed, translated occurrence of a label."""

    u: int
    label: str
    exp: int


@dataclass(frozen=True)
class FreeObject:
    """Labels with their base elements; the shape of a free crossed module."""

    base: Group
    labels: tuple[str, ...]
    omega: tuple[int, ...]

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise IndexOutOfRangeError(f"unknown label {label!r}") from None

    def omega_of(self, label: str) -> int:
        return self.omega[self.index_of(label)]


@dataclass(frozen=True)
class Word:
    free: FreeObject
    syms: tuple[Symbol, ...]


def make_free_object(base: Group, labels: Sequence[str], omega: Sequence[int]) -> FreeObject:
    labels = tuple(labels)
    omega = tuple(omega)
    if len(labels) != len(set(labels)):
        raise IndexOutOfRangeError(f"duplicate labels in {labels}")
    if len(labels) != len(omega):
        raise IndexOutOfRangeError(f"{len(labels)} labels but {len(omega)} base elements")
    for x in omega:
        if not 0 <= x < base.order:
            raise IndexOutOfRangeError(f"base element {x} out of range for {base.name}")
    return FreeObject(base=base, labels=labels, omega=omega)


def single_object(base: Group, x: int) -> FreeObject:
    return make_free_object(base, ("g0",), (x,))


def pair_object(base: Group, x: int, y: int) -> FreeObject:
    return make_free_object(base, ("g0", "g1"), (x, y))


def make_word(free: FreeObject, syms: Sequence[tuple[int, str, int]]) -> Word:
    checked = []
    for (u, label, exp) in syms:
        if not 0 <= u < free.base.order:
            raise IndexOutOfRangeError(f"translate {u} out of range for {free.base.name}")
        free.index_of(label)
        if exp not in (1, -1):
            raise IndexOutOfRangeError(f"exponent {exp} must be +1 or -1")
        checked.append(Symbol(u, label, exp))
    return Word(free=free, syms=tuple(checked))


def symbol_word(free: FreeObject, label: str, u: int | None = None, exp: int = 1) -> Word:
    u = free.base.identity if u is None else u
    return make_word(free, [(u, label, exp)])


def concat_words(*ws: Word) -> Word:
    if not ws:
        raise PreconditionFailedError("concat needs at least one word")
    free = ws[0].free
    for w in ws[1:]:
        if w.free != free:
            raise CompositionMismatchError("cannot concatenate words over different free objects")
    return Word(free=free, syms=tuple(s for w in ws for s in w.syms))


def invert_word(w: Word) -> Word:
    return Word(free=w.free, syms=tuple(Symbol(s.u, s.label, -s.exp) for s in reversed(w.syms)))


def translate_word(w: Word, v: int) -> Word:
    """Left translate every symbol: v . (u . label) = (vu) . label."""
    P = w.free.base
    return Word(free=w.free, syms=tuple(Symbol(P.table[v][s.u], s.label, s.exp) for s in w.syms))


def word_boundary(w: Word) -> int:
    """Boundary of a word: the product of u w(label) u^-1, signed."""
    P = w.free.base
    out = P.identity
    for s in w.syms:
        b = P.conj(s.u, w.free.omega_of(s.label))
        if s.exp == -1:
            b = P.inverse[b]
        out = P.table[out][b]
    return out


def _check_assignment(free: FreeObject, A: CrossedModule, assignment: Sequence[int]) -> None:
    if A.base != free.base:
        raise BaseMismatchError(f"{A.name} is not over {free.base.name}")
    if len(assignment) != len(free.labels):
        raise FiberMismatchError(
            f"assignment has {len(assignment)} entries for {len(free.labels)} labels"
        )
    for i, a in enumerate(assignment):
        if not 0 <= a < A.group.order:
            raise FiberMismatchError(f"assignment for {free.labels[i]!r} out of range")
        if A.boundary.image[a] != free.omega[i]:
            raise FiberMismatchError(
                f"label {free.labels[i]!r} needs boundary {free.omega[i]}, "
                f"got element {a} with boundary {A.boundary.image[a]}"
            )


def evaluate_word(w: Word, A: CrossedModule, assignment: Sequence[int]) -> int:
    """Image of a word under the map the assignment induces from freeness."""
    _check_assignment(w.free, A, assignment)
    G = A.group
    out = G.identity
    for s in w.syms:
        val = A.act(s.u, assignment[w.free.index_of(s.label)])
        if s.exp == -1:
            val = G.inverse[val]
        out = G.table[out][val]
    return out


def hom_set(free: FreeObject, A: CrossedModule) -> tuple[tuple[int, ...], ...]:
    """All fiber-respecting assignments, in lexicographic element order."""
    if A.base != free.base:
        raise BaseMismatchError(f"{A.name} is not over {free.base.name}")
    fibers = [fiber(A, x) for x in free.omega]
    return tuple(itertools.product(*fibers))


def hom_set_size(free: FreeObject, A: CrossedModule) -> int:
    if A.base != free.base:
        raise BaseMismatchError(f"{A.name} is not over {free.base.name}")
    size = 1
    for x in free.omega:
        size *= len(fiber(A, x))
    return size


def labelling(A: CrossedModule, a: int) -> tuple[FreeObject, tuple[int, ...]]:
    """The single-label assignment naming the element a."""
    if not 0 <= a < A.group.order:
        raise IndexOutOfRangeError(f"element {a} out of range for {A.name}")
    free = single_object(A.base, A.boundary.image[a])
    return free, (a,)


class ConjugacyWitness(NamedTuple):
    p: int
    word: Word


def singly_generated_hom(P: Group, x: int, y: int) -> ConjugacyWitness | None:
    """A map between single-label free objects at x and y, if one exists.

    One exists exactly when x = p y p^-1 for some p; the least such p is
    returned along with the word p . g0 over the object at y.
    """
    for p in range(P.order):
        if P.conj(p, y) == x:
            return ConjugacyWitness(p=p, word=symbol_word(single_object(P, y), "g0", u=p))
    return None


def apply_peiffer_move(w: Word, start: int, ulen: int, vlen: int) -> Word:
    """Rewrite the subword u v u^-1 at start as the boundary-of-u translate of v.

    The word must literally contain u followed by v followed by the formal
    inverse of u.  Evaluation in any crossed module is unchanged, which is
    the second structure axiom in symbolic form.
    """
    end = start + 2 * ulen + vlen
    if start < 0 or ulen < 1 or vlen < 0 or end > len(w.syms):
        raise PreconditionFailedError(
            f"move (start={start}, ulen={ulen}, vlen={vlen}) does not fit length {len(w.syms)}"
        )
    u = Word(w.free, w.syms[start:start + ulen])
    v = Word(w.free, w.syms[start + ulen:start + ulen + vlen])
    actual_tail = w.syms[start + ulen + vlen:end]
    if actual_tail != invert_word(u).syms:
        raise PreconditionFailedError("word does not contain the formal inverse of u after v")
    replacement = translate_word(v, word_boundary(u))
    return Word(free=w.free, syms=w.syms[:start] + replacement.syms + w.syms[end:])


def peiffer_word(u: Word, v: Word) -> Word:
    """u v u^-1 times the inverse of the boundary translate; evaluates to 1."""
    return concat_words(u, v, invert_word(u), invert_word(translate_word(v, word_boundary(u))))


@dataclass(frozen=True)
class SiteObject:
    kind: str
    xs: tuple[int, ...]

    def describe(self) -> str:
        return f"{self.kind}({','.join(map(str, self.xs))})"


@dataclass(frozen=True)
class SiteMorphism:
    """A map between free objects: one word over the target per source label."""

    name: str
    source: SiteObject
    target: SiteObject
    words: tuple[Word, ...]


class Site:
    """The finite index category for a base group.

    Objects: single(x) for every base element and pair(x, y) for every
    ordered pair.  Generating morphisms: identities, conjugation moves
    m[p,x]: single(p x p^-1) -> single(x) with word p . g0, the
    multiplication map sigma[x,y]: single(xy) -> pair(x,y) with word
    g0 * g1, and the injections inc1/inc2 into each pair.
    """

    def __init__(self, base: Group):
        self.base = base
        singles = [SiteObject("single", (x,)) for x in range(base.order)]
        pairs = [
            SiteObject("pair", (x, y))
            for x in range(base.order)
            for y in range(base.order)
        ]
        self.objects: tuple[SiteObject, ...] = tuple(singles + pairs)
        self._frees = {}
        for o in self.objects:
            if o.kind == "single":
                self._frees[o] = single_object(base, o.xs[0])
            else:
                self._frees[o] = pair_object(base, o.xs[0], o.xs[1])
        gens: list[SiteMorphism] = []
        for o in self.objects:
            gens.append(self.identity(o))
        e = base.identity
        for p in range(base.order):
            for x in range(base.order):
                src = SiteObject("single", (base.conj(p, x),))
                tgt = SiteObject("single", (x,))
                gens.append(
                    SiteMorphism(
                        name=f"m[{p},{x}]",
                        source=src,
                        target=tgt,
                        words=(make_word(self._frees[tgt], [(p, "g0", 1)]),),
                    )
                )
        for x in range(base.order):
            for y in range(base.order):
                tgt = SiteObject("pair", (x, y))
                free_t = self._frees[tgt]
                gens.append(
                    SiteMorphism(
                        name=f"sigma[{x},{y}]",
                        source=SiteObject("single", (base.table[x][y],)),
                        target=tgt,
                        words=(make_word(free_t, [(e, "g0", 1), (e, "g1", 1)]),),
                    )
                )
                gens.append(
                    SiteMorphism(
                        name=f"inc1[{x},{y}]",
                        source=SiteObject("single", (x,)),
                        target=tgt,
                        words=(make_word(free_t, [(e, "g0", 1)]),),
                    )
                )
                gens.append(
                    SiteMorphism(
                        name=f"inc2[{x},{y}]",
                        source=SiteObject("single", (y,)),
                        target=tgt,
                        words=(make_word(free_t, [(e, "g1", 1)]),),
                    )
                )
        self.generators: tuple[SiteMorphism, ...] = tuple(gens)
        self.by_name = {g.name: g for g in self.generators}

    def free(self, o: SiteObject) -> FreeObject:
        try:
            return self._frees[o]
        except KeyError:
            raise IndexOutOfRangeError(f"object {o.describe()} is not in the site") from None

    def identity(self, o: SiteObject) -> SiteMorphism:
        free = self._frees[o]
        e = self.base.identity
        return SiteMorphism(
            name=f"id[{o.describe()}]",
            source=o,
            target=o,
            words=tuple(make_word(free, [(e, lab, 1)]) for lab in free.labels),
        )


def build_site(base: Group) -> Site:
    return Site(base)


def substitute_word(w: Word, m: SiteMorphism) -> Word:
    """Push a word over m's source through m, symbol by symbol."""
    pieces = []
    free_t = m.words[0].free if m.words else None
    for s in w.syms:
        idx = w.free.index_of(s.label)
        piece = translate_word(m.words[idx], s.u)
        if s.exp == -1:
            piece = invert_word(piece)
        pieces.append(piece)
    if not pieces:
        if free_t is None:
            raise CompositionMismatchError("cannot substitute into a map with no labels")
        return Word(free=free_t, syms=())
    return concat_words(*pieces)


def compose_site_morphisms(f: SiteMorphism, g: SiteMorphism) -> SiteMorphism:
    """Return f after g: g's words with each symbol replaced through f."""
    if g.target != f.source:
        raise CompositionMismatchError(
            f"cannot compose {f.name} after {g.name}: "
            f"{g.target.describe()} is not {f.source.describe()}"
        )
    return SiteMorphism(
        name=f"{f.name}*{g.name}",
        source=g.source,
        target=f.target,
        words=tuple(substitute_word(w, f) for w in g.words),
    )
