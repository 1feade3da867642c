"""State invariants drawn from property spaces, and fixed-resource cardinalities."""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import combinations
from typing import Callable

from tim import formula as F
from tim.pddl import DomainModel, ProblemModel
from tim.rules import Property
from tim.spaces import Space

# (pred, position) -> type labels for an existential variable, or None for untyped
ExTypes = Callable[[str, int], "tuple[str, ...] | None"]


@dataclass(frozen=True)
class Invariant:
    family: str  # identity, membership, uniqueness or fixed-resource
    formula: object
    space: int | None = None
    subspace: str | None = None  # type label for sub-space invariants
    subsumed: bool = False

    def text(self) -> str:
        return F.render(self.formula)

    def key(self) -> str:
        return F.normalize(self.formula)


@dataclass(frozen=True)
class StatePartition:
    """Distinct property sets of a space's states, split by inclusion."""

    minimal: tuple  # sets that strictly include no other state set
    supersets: tuple


def partition_states(states) -> StatePartition:
    sets = list(dict.fromkeys(s.distinct() for s in states))
    minimal = tuple(s for s in sets if not any(o < s for o in sets))
    sup = tuple(s for s in sets if s not in minimal)
    return StatePartition(minimal, sup)


def _placed(p: Property, x: str, names: list[str]) -> F.Atom:
    """Atom for P with x at position p.pos and ``names`` filling the rest."""
    it = iter(names)
    args = tuple(x if i == p.pos else next(it) for i in range(1, len(names) + 2))
    return F.Atom(p.pred, args)


def _state_parts(props, x: str, arity: dict, ex_types: ExTypes, counter: list):
    parts = []
    for p in sorted(props):
        names, binders = [], []
        for j in range(1, arity[p.pred] + 1):
            if j == p.pos:
                continue
            counter[0] += 1
            v = f"y{counter[0]}"
            names.append(v)
            binders.append((v, ex_types(p.pred, j)))
        parts.append((binders, _placed(p, x, names)))
    return parts


def _nest(parts):
    """Exists b1. a1 AND Exists b2. a2 AND ... (each binder scoping what follows)."""
    if not parts:
        return None
    binders, atom = parts[0]
    rest = _nest(parts[1:])
    body = F.conj([atom] + ([rest] if rest is not None else []))
    return F.exists(binders, body)


def state_formula(props, x: str, arity: dict, ex_types: ExTypes, counter=None):
    counter = counter if counter is not None else [0]
    return _nest(_state_parts(props, x, arity, ex_types, counter))


_COPY_NAMES = "yzuvw"


def identity_invariants(space: Space, x_types, arity: dict, **tags) -> list[Invariant]:
    """For each property P_k of arity > 1 held at most m >= 1 times in any state:
    among any m+1 P-atoms with x at position k, two coincide."""
    out = []
    for p in sorted(space.properties):
        n = arity[p.pred]
        if n < 2:
            continue
        m = max((s.count(p) for s in space.states), default=0)
        if m < 1:
            continue
        copies = []
        for c in range(m + 1):
            base = _COPY_NAMES[c] if c < len(_COPY_NAMES) else f"q{c}_"
            copies.append([f"{base}{i}" for i in range(1, n)])
        atoms = [_placed(p, "x", names) for names in copies]
        eqs = [F.Eq(tuple(a), tuple(b)) for a, b in combinations(copies, 2)]
        cons = eqs[0] if m == 1 else F.Or(tuple(F.conj([e]) for e in eqs))
        body = F.Implies(F.And(tuple(atoms)), cons)
        inner = F.forall([(v, None) for names in copies for v in names], body)
        out.append(Invariant("identity", F.Forall("x", x_types, inner), space.id, **tags))
    return out


def membership_invariants(space: Space, x_types, arity: dict, ex_types: ExTypes, **tags) -> list[Invariant]:
    part = partition_states(space.states)
    if not part.minimal or any(not s for s in part.minimal):
        return []
    disjuncts = [state_formula(s, "x", arity, ex_types) for s in part.minimal]
    body = F.disj(disjuncts)
    return [Invariant("membership", F.Forall("x", x_types, body), space.id, **tags)]


def uniqueness_invariants(space: Space, x_types, arity: dict, ex_types: ExTypes, **tags) -> list[Invariant]:
    """No object holds two minimal states at once unless some state covers both."""
    part = partition_states(space.states)
    minimal = [s for s in part.minimal if s]
    sets = [s.distinct() for s in space.states]
    out = []
    for a, b in combinations(minimal, 2):
        both = a | b
        if any(both <= s for s in sets):
            continue
        counter = [0]
        parts = _state_parts(a, "x", arity, ex_types, counter) + _state_parts(b, "x", arity, ex_types, counter)
        body = F.Not(_nest(parts))
        out.append(Invariant("uniqueness", F.Forall("x", x_types, body), space.id, **tags))
    return out


def space_invariants(space: Space, x_types, arity: dict, ex_types: ExTypes, **tags) -> list[Invariant]:
    return (identity_invariants(space, x_types, arity, **tags)
            + membership_invariants(space, x_types, arity, ex_types, **tags)
            + uniqueness_invariants(space, x_types, arity, ex_types, **tags))


def fixed_resource_invariants(domain: DomainModel, problem: ProblemModel, spaces=()) -> list[Invariant]:
    """|{x: P(x)}| for predicates every schema adds and deletes equally often.

    The relation is exact when P is static, when at most one P-atom is
    true initially, or when some position of P lies in a property space
    whose states never hold it twice (so no add can hit an atom that is
    already true). Otherwise only an upper bound is claimed.
    """
    changed = {a.pred for s in domain.schemas for a in s.add + s.dels}
    single = set()
    for sp in spaces:
        if sp.kind != "property":
            continue
        for p in sp.properties:
            if all(st.count(p) <= 1 for st in sp.states):
                single.add(p.pred)
    out = []
    for pred, n in domain.predicates.items():
        if n < 1:
            continue
        if any(sum(a.pred == pred for a in s.add) != sum(a.pred == pred for a in s.dels)
               for s in domain.schemas):
            continue
        k = sum(a.pred == pred for a in problem.init)
        exact = pred not in changed or k <= 1 or pred in single
        out.append(Invariant("fixed-resource", F.Cardinality(pred, n, "=" if exact else "<=", k)))
    return out


def mark_subsumed(sub: list[Invariant], primary: list[Invariant], covers) -> list[Invariant]:
    """Flag sub-space invariants implied by a primary invariant with a wider quantifier.

    ``covers(primary_types, label)`` says whether the primary quantifier
    type includes the sub-space type.
    """
    bodies: dict[str, list] = {}
    for inv in primary:
        f = inv.formula
        if isinstance(f, F.Forall):
            bodies.setdefault(F.normalize(f.body), []).append(f.types)
    out = []
    for inv in sub:
        f = inv.formula
        hit = any(covers(t, inv.subspace) for t in bodies.get(F.normalize(f.body), []))
        out.append(replace(inv, subsumed=hit))
    return out
