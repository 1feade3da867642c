"""The end-to-end analysis: rules, spaces, types and invariants for a problem."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import count
from pathlib import Path

from tim.bags import Bag
from tim.invariants import (
    Invariant,
    fixed_resource_invariants,
    mark_subsumed,
    space_invariants,
)
from tim.pddl import (
    Diagnostic,
    DomainModel,
    ProblemModel,
    check_problem,
    lift_constants,
    parse_domain,
    parse_problem,
    validate_strips,
)
from tim.rules import Property, TransitionRule, domain_rules, project, unite
from tim.spaces import (
    ATTRIBUTE,
    MIXED,
    OVERFLOW,
    PROPERTY,
    Space,
    assign_objects,
    extend_attribute_spaces,
    extend_property_space,
    seed_spaces,
    split_mixed_space,
)
from tim.types import TypedSchema, TypeTable, object_type_vectors, parameter_types


@dataclass
class AnalysisConfig:
    max_states: int = 10_000
    # give static properties their own attribute spaces (and type-vector bits)
    static_spaces: bool = True
    subspaces: bool = True


@dataclass
class SubSpace:
    parent: int
    type_label: str
    space: Space
    invariants: list = field(default_factory=list)

    @property
    def informative(self) -> bool:
        return any(not inv.subsumed for inv in self.invariants)


@dataclass
class Analysis:
    domain: DomainModel  # after constant lifting
    problem: ProblemModel
    config: AnalysisConfig
    rules: list[TransitionRule]
    classes: list[frozenset]
    spaces: list[Space]  # primary spaces; these define the type vectors
    derived: list[Space]  # rebuilt from mixed spaces
    table: TypeTable
    typed: list[TypedSchema]
    state_invariants: list[Invariant]
    domain_invariants: list[Invariant]
    subspaces: list[SubSpace]
    diagnostics: list[Diagnostic]
    timings: dict = field(default_factory=dict)
    # (pred, position) -> type union for an existential variable at that position
    ex_types: object = None

    def all_spaces(self) -> list[Space]:
        return self.spaces + self.derived

    def space(self, sid: int) -> Space:
        for s in self.all_spaces():
            if s.id == sid:
                return s
        raise KeyError(sid)

    def members(self, labels) -> list[str]:
        return self.table.members(labels)

    def typed_schema(self, name: str) -> TypedSchema:
        for t in self.typed:
            if t.schema.name == name:
                return t
        raise KeyError(name)

    def subspace_invariants(self) -> list[Invariant]:
        return [inv for sub in self.subspaces for inv in sub.invariants]

    def invariants(self) -> list[Invariant]:
        return self.state_invariants + self.domain_invariants + self.subspace_invariants()

    def property_spaces(self) -> list[Space]:
        """Every space whose states are meaningful, including sub-spaces."""
        return [s for s in self.all_spaces() if s.kind == PROPERTY] + [
            sub.space for sub in self.subspaces if sub.space.kind == PROPERTY]


def _static_properties(domain: DomainModel, problem: ProblemModel) -> list[Property]:
    static = set(domain.static_predicates())
    out = []
    for s in domain.schemas:
        for a in s.pre:
            if a.pred in static:
                out.extend(Property(a.pred, i + 1) for i in range(len(a.args)))
    for a in problem.init:
        if a.pred in static:
            out.extend(Property(a.pred, i + 1) for i in range(len(a.args)))
    return list(dict.fromkeys(out))


def analyze(domain: DomainModel, problem: ProblemModel, config: AnalysisConfig | None = None) -> Analysis:
    config = config or AnalysisConfig()
    t0 = time.perf_counter()
    problem = check_problem(domain, problem)
    diags = validate_strips(domain)
    dom, prob = lift_constants(domain, problem)
    objects = prob.objects
    init = prob.init

    holder_cache: dict[Property, list] = {}

    def holders(p: Property) -> list[str]:
        if p not in holder_cache:
            found = {a.args[p.pos - 1] for a in init if a.pred == p.pred and len(a.args) >= p.pos}
            holder_cache[p] = [o for o in objects if o in found]
        return holder_cache[p]

    rules = domain_rules(dom)
    singles = _static_properties(dom, prob) if config.static_spaces else []
    classes = unite(rules, singles)
    spaces = seed_spaces(classes, rules)
    assign_objects(spaces, objects, init)

    ids = count(len(spaces))
    derived: list[Space] = []
    for s in spaces:
        if s.kind != PROPERTY:
            continue
        ext = extend_property_space(s, config.max_states)
        if ext.status == "mixed":
            s.kind = MIXED
            s.hidden = ext.hidden
            hidden = ", ".join(str(p) for p in sorted(ext.hidden))
            diags.append(Diagnostic(f"space {s.label()} is mixed; {hidden} treated as attributes", "info"))
            derived.extend(split_mixed_space(s, ext.hidden, objects, init, ids, config.max_states))
        elif ext.status == "overflow":
            s.kind = OVERFLOW
            diags.append(Diagnostic(f"space {s.label()} exceeded {config.max_states} states; "
                                    "treated as an attribute space"))

    everything = spaces + derived
    extend_attribute_spaces(everything, holders, objects)
    # a mixed space holds every object any of its descendants hold
    for s in reversed(everything):
        if s.kind == MIXED:
            got = set(s.objects)
            for d in derived:
                if d.parent == s.id:
                    got |= set(d.objects)
            s.objects = [o for o in objects if o in got]

    table = object_type_vectors(spaces, objects)
    position = {p: i for i, s in enumerate(spaces) for p in s.properties}
    typed = [parameter_types(s, table, position, holders) for s in dom.schemas]
    for t in typed:
        diags.extend(t.diagnostics)

    arity = dom.predicates

    def ex_types(pred: str, pos: int):
        p = Property(pred, pos)
        objs = set()
        for s in everything:
            if p in s.properties:
                objs |= set(s.objects)
        if not objs and p not in position:
            objs = set(holders(p))
        return table.types_of(objs) if objs else None

    state_invs: list[Invariant] = []
    for s in everything:
        if s.kind != PROPERTY:
            continue
        if not table.is_union_of_types(s.objects):
            diags.append(Diagnostic(f"space {s.label()} does not cover whole types; no invariants", "info"))
            continue
        state_invs.extend(space_invariants(s, table.types_of(s.objects), arity, ex_types))

    domain_invs = fixed_resource_invariants(dom, prob, [s for s in spaces if s.kind == PROPERTY])

    subs: list[SubSpace] = []
    if config.subspaces:
        subs = _subspaces(everything, table, typed, prob, arity, ex_types, config, diags)
        primary = state_invs

        def covers(types, label):
            return types is None or label in types

        for sub in subs:
            sub.invariants = mark_subsumed(sub.invariants, primary, covers)

    timings = {"analysis": time.perf_counter() - t0}
    return Analysis(dom, prob, config, rules, classes, spaces, derived, table, typed,
                    state_invs, domain_invs, subs, diags, timings, ex_types)


def _subspaces(spaces, table, typed, prob, arity, ex_types, config, diags) -> list[SubSpace]:
    ptypes = {(t.schema.name, p.name): p.types for t in typed for p in t.params}

    def admits(rule: TransitionRule, label: str) -> bool:
        types = ptypes.get(rule.origin)
        return types is None or label in types

    out = []
    sid = count(10_000)
    for s in spaces:
        if s.kind not in (PROPERTY, ATTRIBUTE) or not s.rules:
            continue
        labels = table.types_of(s.objects)
        if len(labels) < 2 or not table.is_union_of_types(s.objects):
            continue
        for label in labels:
            rules = [r for r in s.rules if admits(r, label)]
            kind = ATTRIBUTE if any(r.is_attribute for r in rules) else PROPERTY
            objs = [o for o in s.objects if table.object_type[o] == label]
            sub = Space(next(sid), s.properties, rules, objs, [], kind, parent=s.id)
            invs: list[Invariant] = []
            if kind == PROPERTY:
                for o in objs:
                    st = project((a for a in prob.init), o)
                    st = Bag(p for p in st if p in s.properties)
                    if st not in sub.states:
                        sub.states.append(st)
                ext = extend_property_space(sub, config.max_states)
                if ext.status == "ok":
                    invs = space_invariants(sub, (label,), arity, ex_types, subspace=label)
                else:
                    sub.kind = MIXED if ext.status == "mixed" else OVERFLOW
            out.append(SubSpace(s.id, label, sub, invs))
    return out


def analyze_text(domain_text: str, problem_text: str, config: AnalysisConfig | None = None) -> Analysis:
    t0 = time.perf_counter()
    domain = parse_domain(domain_text)
    problem = parse_problem(problem_text)
    parse_time = time.perf_counter() - t0
    result = analyze(domain, problem, config)
    result.timings["parse"] = parse_time
    return result


def analyze_files(domain_path, problem_path, config: AnalysisConfig | None = None) -> Analysis:
    return analyze_text(Path(domain_path).read_text(), Path(problem_path).read_text(), config)
