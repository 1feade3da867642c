"""Brute-force ground truth: exhaustive reachability and direct evaluation.

Nothing here uses the analysis; it grounds schemas naively over all
objects and explores the state space breadth first.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product

from tim import formula as F
from tim.bags import Bag
from tim.pddl import Atom, DomainModel, OperatorSchema, ProblemModel
from tim.rules import Property


@dataclass(frozen=True)
class GroundAction:
    name: str
    args: tuple[str, ...]
    pre: frozenset
    add: frozenset
    dels: frozenset


def ground_schema(schema: OperatorSchema, objects, static_facts=None, static_preds=frozenset()):
    """All bindings of the schema parameters over ``objects``.

    If ``static_facts`` is given, bindings violating a static
    precondition are dropped (they could never fire).
    """
    out = []
    for binding in product(objects, repeat=len(schema.params)):
        env = dict(zip(schema.params, binding))

        def g(a: Atom) -> Atom:
            return Atom(a.pred, tuple(env.get(t, t) for t in a.args))

        pre = frozenset(g(a) for a in schema.pre)
        if static_facts is not None and any(
                a.pred in static_preds and a not in static_facts for a in pre):
            continue
        out.append(GroundAction(schema.name, binding, pre,
                                frozenset(g(a) for a in schema.add),
                                frozenset(g(a) for a in schema.dels)))
    return out


def ground_actions(domain: DomainModel, problem: ProblemModel) -> list[GroundAction]:
    static = frozenset(domain.static_predicates())
    facts = frozenset(problem.init)
    return [a for s in domain.schemas for a in ground_schema(s, problem.objects, facts, static)]


@dataclass
class Reachability:
    states: list[frozenset]
    truncated: bool
    objects: tuple[str, ...]
    transitions: int = 0


def successor(state: frozenset, action: GroundAction) -> frozenset:
    return (state - action.dels) | action.add


def enumerate_reachable(domain: DomainModel, problem: ProblemModel, limit: int = 200_000) -> Reachability:
    actions = ground_actions(domain, problem)
    start = frozenset(problem.init)
    seen = {start}
    order = [start]
    queue = deque([start])
    transitions = 0
    truncated = False
    while queue:
        s = queue.popleft()
        for a in actions:
            if a.pre <= s:
                t = successor(s, a)
                transitions += 1
                if t not in seen:
                    if len(seen) >= limit:
                        truncated = True
                        continue
                    seen.add(t)
                    order.append(t)
                    queue.append(t)
    return Reachability(order, truncated, problem.objects, transitions)


# evaluation --------------------------------------------------------------------


@dataclass
class Verdict:
    ok: bool
    counterexample: object = None
    truncated: bool = False
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


class _Eval:
    def __init__(self, state: frozenset, universe, members):
        self.universe = list(universe)
        self.members = members  # labels -> objects
        self.by_pred: dict[str, list] = {}
        for a in state:
            self.by_pred.setdefault(a.pred, []).append(a.args)
        self.facts = state

    def domain(self, types):
        return self.universe if types is None else self.members(types)

    def _candidates(self, var, guard, env):
        """Values for ``var`` that make some atom in ``guard`` true, or None."""
        for g in guard:
            if isinstance(g, F.Atom) and var in g.args:
                vals = set()
                for args in self.by_pred.get(g.pred, ()):
                    ok = True
                    val = None
                    for t, a in zip(g.args, args):
                        if t == var:
                            if val is not None and val != a:
                                ok = False
                                break
                            val = a
                        elif t in env and env[t] != a:
                            ok = False
                            break
                    if ok and val is not None:
                        vals.add(val)
                return vals
        return None

    def ev(self, f, env) -> bool:
        if isinstance(f, F.Atom):
            return Atom(f.pred, tuple(env.get(t, t) for t in f.args)) in self.facts
        if isinstance(f, F.Eq):
            return tuple(env[t] for t in f.left) == tuple(env[t] for t in f.right)
        if isinstance(f, F.Not):
            return not self.ev(f.body, env)
        if isinstance(f, F.And):
            return all(self.ev(x, env) for x in f.items)
        if isinstance(f, F.Or):
            return any(self.ev(x, env) for x in f.items)
        if isinstance(f, F.Implies):
            return (not self.ev(f.ante, env)) or self.ev(f.cons, env)
        if isinstance(f, F.Cardinality):
            return self._card(f)
        if isinstance(f, (F.Forall, F.Exists)):
            dom = self.domain(f.types)
            body = f.body
            guard = ()
            if isinstance(f, F.Exists):
                guard = body.items if isinstance(body, F.And) else (body,)
            else:
                # a value not satisfying an antecedent atom makes the whole chain vacuous
                inner = body
                while isinstance(inner, F.Forall):
                    inner = inner.body
                if isinstance(inner, F.Implies):
                    guard = inner.ante.items if isinstance(inner.ante, F.And) else (inner.ante,)
            cand = self._candidates(f.var, guard, env)
            if cand is not None:
                allowed = set(dom)
                dom = [v for v in cand if v in allowed]
            if isinstance(f, F.Exists):
                return any(self.ev(body, {**env, f.var: v}) for v in dom)
            return all(self.ev(body, {**env, f.var: v}) for v in dom)
        raise TypeError(f)

    def _card(self, f: F.Cardinality) -> bool:
        n = len(self.by_pred.get(f.pred, ()))
        return n == f.count if f.rel == "=" else n <= f.count


def evaluate(f, state: frozenset, universe, members=None) -> bool:
    return _Eval(state, universe, members or (lambda t: [])).ev(f, {})


def check_invariant(f, reach: Reachability, members=None) -> Verdict:
    """Evaluate a closed formula in every reachable state.

    ``members(labels)`` returns the objects of a type union.
    """
    for s in reach.states:
        if not evaluate(f, s, reach.objects, members):
            return Verdict(False, s, reach.truncated, F.render(f))
    return Verdict(True, None, reach.truncated)


def projection(state, obj: str, props) -> Bag:
    wanted = set(props)
    out = []
    for a in state:
        for i, t in enumerate(a.args):
            if t == obj:
                p = Property(a.pred, i + 1)
                if p in wanted:
                    out.append(p)
    return Bag(out)


def check_projection_soundness(spaces, reach: Reachability) -> Verdict:
    """Every object's projection onto each property space is a listed state."""
    for sp in spaces:
        if sp.kind != "property":
            continue
        states = set(sp.states)
        for w in reach.states:
            for o in sp.objects:
                bag = projection(w, o, sp.properties)
                if bag not in states:
                    return Verdict(False, (sp.id, o, bag, w), reach.truncated,
                                   f"S{sp.id}: {o} has unlisted state {bag}")
    return Verdict(True, None, reach.truncated)


# relaxed reachability --------------------------------------------------------


def relaxed_reachable(actions, init) -> tuple[frozenset, list]:
    """Delete-relaxed fixpoint: the facts and actions of the relaxed plan graph."""
    facts = set(init)
    fired = []
    pending = list(actions)
    grew = True
    while grew:
        grew = False
        rest = []
        for a in pending:
            if a.pre <= facts:
                fired.append(a)
                if not a.add <= facts:
                    facts |= a.add
                    grew = True
            else:
                rest.append(a)
        pending = rest
    return frozenset(facts), fired
