"""Property and attribute spaces: seeding, object assignment and extension."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from tim.bags import EMPTY, Bag
from tim.pddl import Atom
from tim.rules import AnalysisError, Property, TransitionRule, project, unite

PROPERTY = "property"
ATTRIBUTE = "attribute"
STATIC = "static"
MIXED = "mixed"
OVERFLOW = "overflow"


@dataclass
class Space:
    """A property class together with its rules, member objects and states.

    ``kind`` is one of property, attribute, static (a static property
    with no rules), mixed (a property space that turned out to grow
    without bound) or overflow (the state guard was hit). Only property
    spaces carry meaningful ``states``.
    """

    id: int
    properties: frozenset
    rules: list = field(default_factory=list)
    objects: list = field(default_factory=list)
    states: list = field(default_factory=list)
    kind: str = PROPERTY
    parent: int | None = None  # set on spaces derived from a mixed space
    hidden: frozenset = frozenset()

    @property
    def is_property(self) -> bool:
        return self.kind == PROPERTY

    @property
    def is_attribute(self) -> bool:
        return self.kind in (ATTRIBUTE, STATIC, MIXED, OVERFLOW)

    def add_object(self, o: str) -> None:
        if o not in self.objects:
            self.objects.append(o)

    def label(self) -> str:
        props = ", ".join(str(p) for p in sorted(self.properties))
        return f"S{self.id} {{{props}}}"


def seed_spaces(classes: list[frozenset], rules: list[TransitionRule], first_id: int = 0) -> list[Space]:
    """One space per class; each rule goes to the class of its start/finish properties."""
    spaces = [Space(first_id + i, c) for i, c in enumerate(classes)]
    owner = {p: s for s in spaces for p in s.properties}
    for r in rules:
        homes = {owner[p].id for p in r.properties() if p in owner}
        missing = [p for p in r.properties() if p not in owner]
        if missing or len(homes) != 1:
            raise AnalysisError(f"rule {r} does not belong to exactly one class")
        space = owner[next(iter(r.properties()))]
        space.rules.append(r)
    for s in spaces:
        if not s.rules:
            s.kind = STATIC
        elif any(r.is_attribute for r in s.rules):
            s.kind = ATTRIBUTE
    return spaces


def assign_objects(spaces: list[Space], objects, init) -> None:
    """Add each object to the spaces its initial properties fall in.

    Property spaces also record the object's initial projection as a state.
    """
    owner = {p: s for s in spaces for p in s.properties}
    for o in objects:
        bag = project(init, o)
        parts: dict[int, list] = {}
        for p in bag:
            if p in owner:
                parts.setdefault(owner[p].id, []).append(p)
        for s in spaces:
            if s.id in parts:
                s.add_object(o)
                if s.kind == PROPERTY:
                    state = Bag(parts[s.id])
                    if state not in s.states:
                        s.states.append(state)


@dataclass
class Extension:
    status: str  # "ok", "mixed" or "overflow"
    hidden: frozenset = frozenset()
    witness: tuple = ()


def extend_property_space(space: Space, max_states: int = 10_000) -> Extension:
    """Close the state set of a property space under its rules (enablers ignored).

    A newly generated state that strictly includes a state on its own
    derivation chain means the space can grow without bound; the extra
    properties are reported as hidden.
    """
    queue = deque((s, (s,)) for s in space.states)
    seen = set(space.states)
    while queue:
        state, chain = queue.popleft()
        for r in space.rules:
            if not r.start <= state:
                continue
            new = state - r.start + r.finish
            for anc in chain:
                if anc <= new and anc != new:
                    return Extension("mixed", (new - anc).distinct(), chain + (new,))
            if new in seen:
                continue
            seen.add(new)
            space.states.append(new)
            if len(space.states) > max_states:
                return Extension("overflow")
            queue.append((new, chain + (new,)))
    return Extension("ok")


def cut_rules(rules: list[TransitionRule], hidden: frozenset) -> list[TransitionRule]:
    """Split each rule touching hidden properties into attribute and state parts."""
    out = []
    for r in rules:
        s_att = Bag(p for p in r.start if p in hidden)
        f_att = Bag(p for p in r.finish if p in hidden)
        s = r.start - s_att
        f = r.finish - f_att
        if not (s_att or f_att):
            out.append(r)
            continue
        if f_att:
            for a in sorted(f_att.distinct()):
                out.append(TransitionRule(r.enablers + s, EMPTY, Bag([a]), r.origin))
        if s_att:
            out.append(TransitionRule(r.enablers + s, s_att, EMPTY, r.origin))
        if s or f:
            out.append(TransitionRule(r.enablers + s_att, s, f, r.origin))
    return out


def split_mixed_space(space: Space, hidden: frozenset, objects, init, ids,
                      max_states: int = 10_000) -> list[Space]:
    """Rebuild a mixed space from its cut rules; returns the derived spaces.

    ``ids`` is an iterator supplying fresh space ids. Derived property
    spaces that are themselves mixed are split again.
    """
    rules = cut_rules(space.rules, hidden)
    leftovers = sorted(p for p in space.properties if not any(p in r.properties() for r in rules))
    derived = seed_spaces(unite(rules, leftovers), rules)
    # leftovers inside a dynamic space are still dynamic; treat them as attributes
    for d in derived:
        if d.kind == STATIC:
            d.kind = ATTRIBUTE
    assign_objects(derived, objects, init)
    out: list[Space] = []
    for d in derived:
        if not (d.rules or d.objects):
            continue
        d.id = next(ids)
        d.parent = space.id
        out.append(d)
        if d.kind == PROPERTY:
            ext = extend_property_space(d, max_states)
            if ext.status == "mixed":
                d.kind = MIXED
                d.hidden = ext.hidden
                out.extend(split_mixed_space(d, ext.hidden, objects, init, ids, max_states))
            elif ext.status == "overflow":
                d.kind = OVERFLOW
    return out


def extend_attribute_spaces(spaces: list[Space], holders=None, universe=(), trace: bool = False):
    """Add objects that potentiate increasing rules, until nothing changes.

    ``spaces`` is searched for the owner of each enabler property. An
    enabler with no owning space is checked with ``holders(prop)``, which
    returns the objects holding that static property. Returns the list of
    per-iteration membership snapshots when ``trace`` is set.
    """
    owner = {}
    for s in spaces:
        for p in s.properties:
            # a mixed space defers to the spaces derived from it
            if s.kind != MIXED or p not in owner:
                owner[p] = s
    attr = [s for s in spaces if s.kind in (ATTRIBUTE, OVERFLOW) and s.rules]
    attr_ids = {s.id for s in attr}
    order = {o: i for i, o in enumerate(universe)}
    snapshots = []

    def members(p: Property):
        if p in owner:
            return owner[p].objects
        return holders(p) if holders else []

    marked: set[int] = set()
    changed = [False]

    def extend(a: Space) -> None:
        marked.add(a.id)
        for r in a.rules:
            if r.kind != "increasing":
                continue
            enablers = sorted(r.enablers.distinct())
            for p in enablers:
                s = owner.get(p)
                if s is not None and s.id in attr_ids and s.id not in marked:
                    extend(s)
            if enablers:
                cand = set(members(enablers[0]))
                for p in enablers[1:]:
                    cand &= set(members(p))
            else:
                cand = set(universe)
            for o in sorted(cand - set(a.objects), key=lambda o: order.get(o, len(order))):
                a.objects.append(o)
                changed[0] = True

    changed[0] = True
    while changed[0]:
        changed[0] = False
        marked.clear()
        for a in attr:
            if a.id not in marked:
                extend(a)
        if trace:
            snapshots.append({a.id: list(a.objects) for a in attr})
    return snapshots
