"""Property relating structures, transition rules and property classes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from tim.bags import EMPTY, Bag
from tim.pddl import Atom, DomainModel, OperatorSchema


class AnalysisError(Exception):
    """Internal inconsistency detected during analysis."""


@dataclass(frozen=True, order=True)
class Property:
    """A predicate together with an argument position (1-based)."""

    pred: str
    pos: int

    def __str__(self) -> str:
        return f"{self.pred}_{self.pos}"


def properties_of(atom: Atom, term: str) -> list[Property]:
    return [Property(atom.pred, i + 1) for i, t in enumerate(atom.args) if t == term]


def project(atoms: Iterable[Atom], term: str) -> Bag:
    return Bag(p for a in atoms for p in properties_of(a, term))


@dataclass(frozen=True)
class PRS:
    precs: Bag
    deleted: Bag
    adds: Bag
    origin: tuple[str, str]  # (schema name, parameter)

    def __str__(self) -> str:
        return f"PRS{self.origin}: pre {self.precs} del {self.deleted} add {self.adds}"


def build_prs(schema: OperatorSchema, param: str) -> PRS:
    dels = set(schema.dels)
    return PRS(
        project(schema.pre, param),
        project((a for a in schema.pre if a in dels), param),
        project(schema.add, param),
        (schema.name, param),
    )


def split_prs(prs: PRS) -> list[PRS]:
    """Separate exchanged properties (deleted and re-added) into their own PRSs."""
    x = prs.deleted & prs.adds
    if not x:
        return [prs]
    out = [PRS(prs.precs, Bag([c]), Bag([c]), prs.origin) for c in x]
    d, a = prs.deleted - x, prs.adds - x
    if d or a:
        out.append(PRS(prs.precs, d, a, prs.origin))
    return out


@dataclass(frozen=True)
class TransitionRule:
    enablers: Bag
    start: Bag
    finish: Bag
    origin: tuple[str, str]

    @property
    def kind(self) -> str:
        if self.start and self.finish:
            return "state"
        return "increasing" if self.finish else "decreasing"

    @property
    def is_attribute(self) -> bool:
        return not (self.start and self.finish)

    def properties(self) -> frozenset:
        return (self.start + self.finish).distinct()

    def __str__(self) -> str:
        def side(b: Bag) -> str:
            return ", ".join(str(p) for p in b) if b else "null"
        head = side(self.enablers) + " => " if self.enablers else ""
        return f"{head}{side(self.start)} -> {side(self.finish)}"


def prs_to_rules(prs: PRS) -> list[TransitionRule]:
    if prs.deleted and prs.adds:
        return [TransitionRule(prs.precs - prs.deleted, prs.deleted, prs.adds, prs.origin)]
    if prs.deleted:
        return [TransitionRule(prs.precs - prs.deleted, prs.deleted, EMPTY, prs.origin)]
    if prs.adds:
        return [TransitionRule(prs.precs, EMPTY, Bag([a]), prs.origin) for a in sorted(prs.adds.distinct())]
    return []


def schema_prss(schema: OperatorSchema) -> list[PRS]:
    return [q for param in schema.params for q in split_prs(build_prs(schema, param))]


def domain_rules(domain: DomainModel) -> list[TransitionRule]:
    """All transition rules, in schema order then parameter order."""
    return [r for s in domain.schemas for q in schema_prss(s) for r in prs_to_rules(q)]


def unite(rules: Iterable[TransitionRule], singletons: Iterable[Property] = ()) -> list[frozenset]:
    """Partition properties into classes: those sharing a rule's start or finish are joined.

    Classes come out in order of first appearance in ``rules``; each
    property in ``singletons`` not covered by a rule gets its own class
    afterwards.
    """
    parent: dict[Property, Property] = {}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    order: list[Property] = []
    for r in rules:
        props = list(r.start) + list(r.finish)
        for p in props:
            if p not in parent:
                parent[p] = p
                order.append(p)
        for p in props[1:]:
            a, b = find(props[0]), find(p)
            if a != b:
                parent[b] = a
    groups: dict[Property, set] = {}
    for p in order:
        groups.setdefault(find(p), set()).add(p)
    classes = []
    seen = set()
    for p in order:
        root = find(p)
        if root not in seen:
            seen.add(root)
            classes.append(frozenset(groups[root]))
    for p in singletons:
        if p not in parent:
            parent[p] = p
            classes.append(frozenset([p]))
    return classes
