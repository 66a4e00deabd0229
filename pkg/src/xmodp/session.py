"""Session files and the command layer behind the CLI.

A session is a JSON document holding one base group, named groups, named
crossed modules over the base, named morphisms, and named pair sets, plus
default options.  Parsing validates everything up front: schema problems
raise ParseError, structural problems raise ValidationError carrying the
core validator's name and witnesses.  run_command executes one named
command against a parsed session and returns a JSON-ready report plus the
process exit code (0 pass, 1 failed verification or validation, 2 usage).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    BaseMismatchError,
    BudgetExceededError,
    DiagramMismatchError,
    IndexOutOfRangeError,
    IsIsoError,
    MissingArgumentError,
    NotEquivalenceRelationError,
    NotMonoError,
    OrderTooLargeError,
    ParseError,
    PreconditionFailedError,
    UnknownCommandError,
    UnknownNameError,
    ValidationError,
    XmodError,
)
from .groups import Group, make_group
from .limits import (
    Cocone,
    Cone,
    EquivalenceRelation,
    coequaliser,
    equaliser,
    kernel_pair,
    product_over_P,
    pullback,
    quotient_by_equivalence,
    verify_coequaliser,
    verify_equaliser,
    verify_kernel_pair,
    verify_product,
    verify_pullback,
    verify_quotient,
)
from .presheaf import (
    compute_presheaf,
    generator_witness,
    verify_exactness_preservation,
    verify_full_faithful,
)
from .words import build_site, hom_set, hom_set_size, make_free_object
from .xmod import (
    DEFAULT_BUDGET,
    CrossedModule,
    XModMorphism,
    make_crossed_module,
    make_xmod_morphism,
    validate_crossed_module,
    validate_morphism,
)

__all__ = [
    "SessionOptions",
    "Session",
    "parse_session",
    "serialize_session",
    "run_command",
    "COMMANDS",
    "USAGE_ERRORS",
    "DATA_ERRORS",
]


@dataclass
class SessionOptions:
    catalogue_order: int = 4
    budget: int = DEFAULT_BUDGET


@dataclass
class Session:
    base: Group
    groups: dict[str, Group] = field(default_factory=dict)
    xmods: dict[str, CrossedModule] = field(default_factory=dict)
    morphisms: dict[str, XModMorphism] = field(default_factory=dict)
    pairsets: dict[str, EquivalenceRelation] = field(default_factory=dict)
    options: SessionOptions = field(default_factory=SessionOptions)


def _need(record: dict, key: str, kind: type, where: str):
    if key not in record:
        raise ParseError(f"{where}: missing field {key!r}")
    value = record[key]
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        raise ParseError(f"{where}: field {key!r} must be {kind.__name__}")
    return value


def _wrap_validation(where: str, exc: XmodError) -> ValidationError:
    violations = getattr(exc, "violations", ())
    return ValidationError(f"{where}: {type(exc).__name__}: {exc}", violations=violations)


def parse_session(text: str) -> Session:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("session must be a JSON object")
    base_name = _need(doc, "base", str, "session")
    groups: dict[str, Group] = {}
    for rec in _need(doc, "groups", list, "session"):
        if not isinstance(rec, dict):
            raise ParseError("groups: each entry must be an object")
        name = _need(rec, "name", str, "group")
        if name in groups:
            raise ParseError(f"group {name!r} defined twice")
        order = _need(rec, "order", int, f"group {name!r}")
        table = _need(rec, "table", list, f"group {name!r}")
        if order != len(table):
            raise ParseError(f"group {name!r}: order {order} does not match table size {len(table)}")
        try:
            groups[name] = make_group(table, name)
        except XmodError as e:
            raise _wrap_validation(f"group {name!r}", e) from None
    if base_name not in groups:
        raise ParseError(f"base group {base_name!r} is not defined")
    session = Session(base=groups[base_name], groups=groups)

    for rec in doc.get("xmods", []):
        if not isinstance(rec, dict):
            raise ParseError("xmods: each entry must be an object")
        name = _need(rec, "name", str, "xmod")
        if name in session.xmods:
            raise ParseError(f"xmod {name!r} defined twice")
        m_name = _need(rec, "M", str, f"xmod {name!r}")
        p_name = _need(rec, "P", str, f"xmod {name!r}")
        if m_name not in groups:
            raise ParseError(f"xmod {name!r}: unknown group {m_name!r}")
        if p_name not in groups:
            raise ParseError(f"xmod {name!r}: unknown group {p_name!r}")
        if groups[p_name] != session.base:
            raise ValidationError(
                f"xmod {name!r}: BaseMismatchError: over {p_name!r}, session base is {base_name!r}"
            )
        boundary = _need(rec, "boundary", list, f"xmod {name!r}")
        action = _need(rec, "action", list, f"xmod {name!r}")
        try:
            session.xmods[name] = make_crossed_module(
                name, groups[m_name], session.base, boundary, action
            )
        except XmodError as e:
            raise _wrap_validation(f"xmod {name!r}", e) from None

    for rec in doc.get("morphisms", []):
        if not isinstance(rec, dict):
            raise ParseError("morphisms: each entry must be an object")
        name = _need(rec, "name", str, "morphism")
        if name in session.morphisms:
            raise ParseError(f"morphism {name!r} defined twice")
        src = _need(rec, "from", str, f"morphism {name!r}")
        tgt = _need(rec, "to", str, f"morphism {name!r}")
        if src not in session.xmods:
            raise ParseError(f"morphism {name!r}: unknown xmod {src!r}")
        if tgt not in session.xmods:
            raise ParseError(f"morphism {name!r}: unknown xmod {tgt!r}")
        mapping = _need(rec, "map", list, f"morphism {name!r}")
        try:
            session.morphisms[name] = make_xmod_morphism(
                session.xmods[src], session.xmods[tgt], mapping
            )
        except XmodError as e:
            raise _wrap_validation(f"morphism {name!r}", e) from None

    for rec in doc.get("pairsets", []):
        if not isinstance(rec, dict):
            raise ParseError("pairsets: each entry must be an object")
        name = _need(rec, "name", str, "pairset")
        if name in session.pairsets:
            raise ParseError(f"pairset {name!r} defined twice")
        carrier = _need(rec, "carrier", str, f"pairset {name!r}")
        if carrier not in session.xmods:
            raise ParseError(f"pairset {name!r}: unknown xmod {carrier!r}")
        pairs = _need(rec, "pairs", list, f"pairset {name!r}")
        cleaned = set()
        for pair in pairs:
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or any(isinstance(v, bool) or not isinstance(v, int) for v in pair)
            ):
                raise ParseError(f"pairset {name!r}: each pair must be two integers")
            cleaned.add((pair[0], pair[1]))
        session.pairsets[name] = EquivalenceRelation(
            carrier=session.xmods[carrier], pairs=frozenset(cleaned)
        )

    opts = doc.get("options", {})
    if not isinstance(opts, dict):
        raise ParseError("options must be an object")
    options = SessionOptions()
    if "catalogue_order" in opts:
        options.catalogue_order = _need(opts, "catalogue_order", int, "options")
    if "budget" in opts:
        options.budget = _need(opts, "budget", int, "options")
    session.options = options
    return session


def group_json(G: Group) -> dict:
    return {"name": G.name, "order": G.order, "table": [list(r) for r in G.table]}


def xmod_json(A: CrossedModule) -> dict:
    return {
        "name": A.name,
        "M": A.group.name,
        "P": A.base.name,
        "boundary": list(A.boundary.image),
        "action": [list(r) for r in A.action.table],
    }


def morphism_json(name: str, f: XModMorphism) -> dict:
    return {"name": name, "from": f.source.name, "to": f.target.name, "map": list(f.mapping)}


def serialize_session(session: Session) -> str:
    reverse = {id(x): n for n, x in session.xmods.items()}
    doc = {
        "base": session.base.name,
        "groups": [group_json(G) for G in session.groups.values()],
        "xmods": [xmod_json(A) for A in session.xmods.values()],
        "morphisms": [morphism_json(n, f) for n, f in session.morphisms.items()],
        "pairsets": [
            {
                "name": n,
                "carrier": reverse[id(E.carrier)],
                "pairs": [list(p) for p in sorted(E.pairs)],
            }
            for n, E in session.pairsets.items()
        ],
        "options": {
            "catalogue_order": session.options.catalogue_order,
            "budget": session.options.budget,
        },
    }
    return json.dumps(doc, indent=2)


COMMANDS = (
    "validate",
    "equaliser",
    "coequaliser",
    "pullback",
    "product",
    "kernel-pair",
    "quotient",
    "homset",
    "embed",
    "verify-embedding",
    "verify-exact",
    "witness-generators",
)

# Errors that mean the invocation itself was wrong: exit code 2.
USAGE_ERRORS = (
    ParseError,
    UnknownCommandError,
    UnknownNameError,
    MissingArgumentError,
    DiagramMismatchError,
    BaseMismatchError,
    BudgetExceededError,
    OrderTooLargeError,
    NotMonoError,
    IsIsoError,
    IndexOutOfRangeError,
    PreconditionFailedError,
)

# Errors that mean the data failed a check: exit code 1.
DATA_ERRORS = (ValidationError, NotEquivalenceRelationError)


def _args(args: Sequence[str], count: int, usage: str) -> Sequence[str]:
    if len(args) < count:
        raise MissingArgumentError(f"expected {usage}")
    if len(args) > count:
        raise UnknownNameError(f"unexpected extra arguments {list(args[count:])}; expected {usage}")
    return args


def _get(table: dict, name: str, kind: str):
    if name not in table:
        raise UnknownNameError(f"no {kind} named {name!r}; defined: {sorted(table)}")
    return table[name]


def _cone_json(cone: Cone) -> dict:
    return {
        "kind": cone.kind,
        "apex": xmod_json(cone.apex),
        "legs": [morphism_json(f"leg{i}", leg) for i, leg in enumerate(cone.legs)],
        "elements": [list(e) if isinstance(e, tuple) else e for e in cone.elements],
    }


def _cocone_json(cocone: Cocone) -> dict:
    return {
        "kind": cocone.kind,
        "apex": xmod_json(cocone.apex),
        "legs": [morphism_json(f"leg{i}", leg) for i, leg in enumerate(cocone.legs)],
        "classes": [list(c) for c in cocone.classes],
    }


def run_command(
    session: Session,
    command: str,
    args: Sequence[str] = (),
    budget: int | None = None,
    catalogue_order: int | None = None,
) -> tuple[dict, int]:
    """Execute one command and return (report, exit_code)."""
    if command not in COMMANDS:
        raise UnknownCommandError(f"unknown command {command!r}; expected one of {COMMANDS}")
    budget = budget if budget is not None else session.options.budget
    max_order = catalogue_order if catalogue_order is not None else session.options.catalogue_order
    report: dict = {
        "command": command,
        "options": {"budget": budget, "catalogue_order": max_order},
    }

    if command == "validate":
        details = {}
        for name, A in session.xmods.items():
            details[name] = len(validate_crossed_module(A))
        for name, f in session.morphisms.items():
            details[name] = len(validate_morphism(f.source, f.target, f.mapping))
        report.update(
            {
                "pass": all(v == 0 for v in details.values()),
                "base": session.base.name,
                "groups": sorted(session.groups),
                "violation_counts": details,
            }
        )
    elif command in ("equaliser", "coequaliser", "pullback", "kernel-pair"):
        if command == "kernel-pair":
            (fname,) = _args(args, 1, "kernel-pair <morphism>")
            f = _get(session.morphisms, fname, "morphism")
            cone = kernel_pair(f)
            up = verify_kernel_pair(f, cone, max_order=max_order, budget=budget)
            report.update(_cone_json(cone))
        else:
            fname, gname = _args(args, 2, f"{command} <morphism> <morphism>")
            f = _get(session.morphisms, fname, "morphism")
            g = _get(session.morphisms, gname, "morphism")
            if command == "equaliser":
                cone = equaliser(f, g)
                up = verify_equaliser(f, g, cone, max_order=max_order, budget=budget)
                report.update(_cone_json(cone))
            elif command == "coequaliser":
                cocone = coequaliser(f, g)
                up = verify_coequaliser(f, g, cocone, max_order=max_order, budget=budget)
                report.update(_cocone_json(cocone))
            else:
                cone = pullback(f, g)
                up = verify_pullback(f, g, cone, max_order=max_order, budget=budget)
                report.update(_cone_json(cone))
        report["universal_property"] = up
        report["pass"] = up["pass"]
    elif command == "product":
        aname, bname = _args(args, 2, "product <xmod> <xmod>")
        A = _get(session.xmods, aname, "xmod")
        B = _get(session.xmods, bname, "xmod")
        cone = product_over_P(A, B)
        up = verify_product(A, B, cone, max_order=max_order, budget=budget)
        report.update(_cone_json(cone))
        report["universal_property"] = up
        report["pass"] = up["pass"]
    elif command == "quotient":
        aname, ename = _args(args, 2, "quotient <xmod> <pairset>")
        A = _get(session.xmods, aname, "xmod")
        E = _get(session.pairsets, ename, "pairset")
        if E.carrier != A:
            raise DiagramMismatchError(f"pairset {ename!r} is not carried by {aname!r}")
        cocone = quotient_by_equivalence(A, E)
        up = verify_quotient(A, E, cocone, max_order=max_order, budget=budget)
        report.update(_cocone_json(cocone))
        report["universal_property"] = up
        report["pass"] = up["pass"]
    elif command == "homset":
        if not args:
            raise MissingArgumentError("expected homset <xmod> [base-element-index ...]")
        A = _get(session.xmods, args[0], "xmod")
        try:
            omega = tuple(int(a) for a in args[1:])
        except ValueError:
            raise ParseError(f"homset: base elements must be integers, got {list(args[1:])}") from None
        free = make_free_object(session.base, tuple(f"g{i}" for i in range(len(omega))), omega)
        assignments = hom_set(free, A)
        report.update(
            {
                "pass": True,
                "xmod": A.name,
                "omega": list(omega),
                "count": len(assignments),
                "product_of_fibers": hom_set_size(free, A),
                "assignments": [list(t) for t in assignments],
            }
        )
    elif command == "embed":
        (aname,) = _args(args, 1, "embed <xmod>")
        A = _get(session.xmods, aname, "xmod")
        F = compute_presheaf(A, build_site(session.base))
        report.update(
            {
                "pass": True,
                "xmod": A.name,
                "objects": [
                    {
                        "object": o.describe(),
                        "size": len(F.sets[o]),
                        "assignments": [list(t) for t in F.sets[o]],
                    }
                    for o in F.site.objects
                ],
                "actions": [
                    {
                        "generator": g.name,
                        "source": g.source.describe(),
                        "target": g.target.describe(),
                        "map": list(F.actions[g.name]),
                    }
                    for g in F.site.generators
                ],
            }
        )
    elif command == "verify-embedding":
        aname, bname = _args(args, 2, "verify-embedding <xmod> <xmod>")
        A = _get(session.xmods, aname, "xmod")
        B = _get(session.xmods, bname, "xmod")
        result = verify_full_faithful(A, B, build_site(session.base), budget=budget)
        report.update(result)
    elif command == "verify-exact":
        if not args:
            raise MissingArgumentError(
                "expected verify-exact product <xmod> <xmod> | equaliser <m> <m> | coequaliser <m> <m>"
            )
        kind, rest = args[0], args[1:]
        site = build_site(session.base)
        if kind == "product":
            aname, bname = _args(rest, 2, "verify-exact product <xmod> <xmod>")
            result = verify_exactness_preservation(
                "product",
                A=_get(session.xmods, aname, "xmod"),
                B=_get(session.xmods, bname, "xmod"),
                site=site,
            )
        elif kind in ("equaliser", "coequaliser"):
            fname, gname = _args(rest, 2, f"verify-exact {kind} <morphism> <morphism>")
            result = verify_exactness_preservation(
                kind,
                f=_get(session.morphisms, fname, "morphism"),
                g=_get(session.morphisms, gname, "morphism"),
                site=site,
            )
        else:
            raise UnknownCommandError(f"verify-exact: unknown kind {kind!r}")
        report.update(result)
    elif command == "witness-generators":
        (mname,) = _args(args, 1, "witness-generators <morphism>")
        m = _get(session.morphisms, mname, "morphism")
        report.update(generator_witness(m))
    return report, 0 if report.get("pass", False) else 1
