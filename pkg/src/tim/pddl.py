"""Parsing, validation and printing for the untyped STRIPS subset of PDDL."""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace

_TOKEN = re.compile(r"\s+|;[^\n]*|\(|\)|[^\s()]+")


class PDDLError(Exception):
    """Malformed or unsupported PDDL input."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        where = f" (line {line}, col {col})" if line is not None else ""
        super().__init__(message + where)


@dataclass(frozen=True)
class Diagnostic:
    message: str
    level: str = "warning"

    def __str__(self) -> str:
        return f"{self.level}: {self.message}"


@dataclass(frozen=True, order=True)
class Atom:
    pred: str
    args: tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"({' '.join((self.pred,) + self.args)})"


@dataclass(frozen=True)
class OperatorSchema:
    name: str
    params: tuple[str, ...]
    pre: tuple[Atom, ...]
    add: tuple[Atom, ...]
    dels: tuple[Atom, ...]
    # (fresh parameter, constant) pairs introduced by lift_constants
    lifted: tuple[tuple[str, str], ...] = ()

    @property
    def original_params(self) -> tuple[str, ...]:
        fresh = {p for p, _ in self.lifted}
        return tuple(p for p in self.params if p not in fresh)


@dataclass(frozen=True)
class DomainModel:
    name: str
    predicates: dict[str, int]
    schemas: tuple[OperatorSchema, ...]
    constants: tuple[str, ...] = ()
    requirements: tuple[str, ...] = ()

    def schema(self, name: str) -> OperatorSchema:
        for s in self.schemas:
            if s.name == name:
                return s
        raise KeyError(name)

    def static_predicates(self) -> list[str]:
        changed = {a.pred for s in self.schemas for a in s.add + s.dels}
        return [p for p in self.predicates if p not in changed]


@dataclass(frozen=True)
class ProblemModel:
    name: str
    domain_name: str
    objects: tuple[str, ...]
    init: tuple[Atom, ...]
    goal: tuple[Atom, ...] = ()


def is_variable(term: str) -> bool:
    return term.startswith("?")


# s-expressions -------------------------------------------------------------


@dataclass
class _Sym:
    text: str
    line: int
    col: int


@dataclass
class _List:
    items: list = field(default_factory=list)
    line: int = 0
    col: int = 0


def _read(text: str) -> list:
    stack: list[_List] = [_List()]
    line, line_start = 1, 0
    for m in _TOKEN.finditer(text):
        tok = m.group(0)
        col = m.start() - line_start + 1
        if tok == "(":
            stack.append(_List([], line, col))
        elif tok == ")":
            if len(stack) == 1:
                raise PDDLError("unbalanced ')'", line, col)
            done = stack.pop()
            stack[-1].items.append(done)
        elif not tok[0].isspace() and tok[0] != ";":
            stack[-1].items.append(_Sym(tok.lower(), line, col))
        nl = tok.count("\n")
        if nl:
            line += nl
            line_start = m.start() + tok.rindex("\n") + 1
    if len(stack) != 1:
        opened = stack[-1]
        raise PDDLError("unbalanced '(' opened here", opened.line, opened.col)
    return stack[0].items


def _sym(node, what: str) -> str:
    if not isinstance(node, _Sym):
        raise PDDLError(f"expected {what}", node.line, node.col)
    return node.text


def _top(text: str, kind: str) -> _List:
    forms = _read(text)
    if len(forms) != 1 or not isinstance(forms[0], _List):
        raise PDDLError(f"expected a single (define ...) form for a {kind}")
    form = forms[0]
    items = form.items
    if len(items) < 2 or not isinstance(items[0], _Sym) or items[0].text != "define":
        raise PDDLError("expected (define ...)", form.line, form.col)
    head = items[1]
    if not isinstance(head, _List) or len(head.items) != 2 or _sym(head.items[0], "keyword") != kind:
        raise PDDLError(f"expected ({kind} <name>)", head.line, head.col)
    return form


def _term_list(node: _List, where: str) -> tuple[str, ...]:
    out = []
    i = 0
    while i < len(node.items):
        tok = _sym(node.items[i], where)
        if tok == "-":
            raise PDDLError("unsupported: types", node.items[i].line, node.items[i].col)
        out.append(tok)
        i += 1
    return tuple(out)


def _atom(node, predicates: dict[str, int] | None) -> Atom:
    if not isinstance(node, _List) or not node.items:
        raise PDDLError("expected an atom", node.line, node.col)
    pred = _sym(node.items[0], "predicate name")
    if pred == "not":
        raise PDDLError("unsupported: negative precondition", node.line, node.col)
    if pred in ("or", "imply", "exists", "forall", "when"):
        raise PDDLError(f"unsupported: {pred}", node.line, node.col)
    if pred == "=":
        raise PDDLError("unsupported: equality", node.line, node.col)
    args = tuple(_sym(a, "term") for a in node.items[1:])
    if predicates is not None:
        if pred not in predicates:
            raise PDDLError(f"undeclared predicate '{pred}'", node.line, node.col)
        if predicates[pred] != len(args):
            raise PDDLError(
                f"arity mismatch for '{pred}': expected {predicates[pred]}, got {len(args)}",
                node.line, node.col,
            )
    return Atom(pred, args)


def _conjunction(node, predicates) -> list:
    """Flatten (and ...) into a list of atom nodes; a bare atom is allowed."""
    if not isinstance(node, _List):
        raise PDDLError("expected a formula", node.line, node.col)
    if not node.items:
        return []
    head = node.items[0]
    if isinstance(head, _Sym) and head.text == "and":
        out = []
        for sub in node.items[1:]:
            out.extend(_conjunction(sub, predicates))
        return out
    return [node]


def _dedupe(atoms) -> tuple[Atom, ...]:
    return tuple(dict.fromkeys(atoms))


def _parse_action(node: _List, predicates: dict[str, int], constants: set[str]) -> OperatorSchema:
    items = node.items
    name = _sym(items[1], "action name")
    params: tuple[str, ...] = ()
    pre: list = []
    add: list = []
    dels: list = []
    i = 2
    while i < len(items):
        key = _sym(items[i], "action keyword")
        if i + 1 >= len(items):
            raise PDDLError(f"missing value for {key}", items[i].line, items[i].col)
        val = items[i + 1]
        if key == ":parameters":
            if not isinstance(val, _List):
                raise PDDLError("expected parameter list", val.line, val.col)
            params = _term_list(val, "parameter")
            for p in params:
                if not is_variable(p):
                    raise PDDLError(f"parameter '{p}' must start with '?'", val.line, val.col)
            if len(set(params)) != len(params):
                raise PDDLError(f"duplicate parameter in action '{name}'", val.line, val.col)
        elif key == ":precondition":
            pre = [_atom(a, predicates) for a in _conjunction(val, predicates)]
        elif key == ":effect":
            for lit in _conjunction(val, predicates):
                head = lit.items[0]
                if isinstance(head, _Sym) and head.text == "not":
                    if len(lit.items) != 2:
                        raise PDDLError("malformed (not ...)", lit.line, lit.col)
                    dels.append(_atom(lit.items[1], predicates))
                else:
                    add.append(_atom(lit, predicates))
        else:
            raise PDDLError(f"unsupported action field {key}", items[i].line, items[i].col)
        i += 2
    for a in pre + add + dels:
        for t in a.args:
            if is_variable(t) and t not in params:
                raise PDDLError(f"unbound variable {t} in action '{name}'", node.line, node.col)
    return OperatorSchema(name, params, _dedupe(pre), _dedupe(add), _dedupe(dels))


def parse_domain(text: str) -> DomainModel:
    form = _top(text, "domain")
    name = _sym(form.items[1].items[1], "domain name")
    predicates: dict[str, int] | None = None
    constants: tuple[str, ...] = ()
    requirements: tuple[str, ...] = ()
    actions: list[_List] = []
    for sec in form.items[2:]:
        if not isinstance(sec, _List) or not sec.items:
            raise PDDLError("expected a domain section", sec.line, sec.col)
        key = _sym(sec.items[0], "section keyword")
        if key == ":requirements":
            requirements = tuple(_sym(r, "requirement") for r in sec.items[1:])
        elif key == ":predicates":
            predicates = {}
            for p in sec.items[1:]:
                if not isinstance(p, _List) or not p.items:
                    raise PDDLError("expected predicate declaration", p.line, p.col)
                pname = _sym(p.items[0], "predicate name")
                args = _term_list(_List(p.items[1:], p.line, p.col), "predicate argument")
                if pname in predicates:
                    raise PDDLError(f"predicate '{pname}' declared twice", p.line, p.col)
                predicates[pname] = len(args)
        elif key == ":constants":
            constants = _term_list(_List(sec.items[1:], sec.line, sec.col), "constant")
        elif key == ":action":
            actions.append(sec)
        elif key == ":types":
            raise PDDLError("unsupported: types", sec.line, sec.col)
        else:
            raise PDDLError(f"unsupported domain section {key}", sec.line, sec.col)
    if predicates is None:
        raise PDDLError("domain has no :predicates section", form.line, form.col)
    schemas = tuple(_parse_action(a, predicates, set(constants)) for a in actions)
    names = [s.name for s in schemas]
    if len(set(names)) != len(names):
        raise PDDLError("duplicate action name")
    return DomainModel(name, predicates, schemas, constants, requirements)


def parse_problem(text: str) -> ProblemModel:
    form = _top(text, "problem")
    name = _sym(form.items[1].items[1], "problem name")
    domain_name = ""
    objects: tuple[str, ...] = ()
    init: list[Atom] = []
    goal: list[Atom] = []
    for sec in form.items[2:]:
        if not isinstance(sec, _List) or not sec.items:
            raise PDDLError("expected a problem section", sec.line, sec.col)
        key = _sym(sec.items[0], "section keyword")
        if key == ":domain":
            domain_name = _sym(sec.items[1], "domain name")
        elif key == ":objects":
            objects = _term_list(_List(sec.items[1:], sec.line, sec.col), "object")
        elif key == ":init":
            init = [_atom(a, None) for a in sec.items[1:]]
        elif key == ":goal":
            goal = [_atom(a, None) for a in _conjunction(sec.items[1], None)]
        elif key == ":requirements":
            pass
        else:
            raise PDDLError(f"unsupported problem section {key}", sec.line, sec.col)
    objects = tuple(dict.fromkeys(objects))
    for a in init + goal:
        for t in a.args:
            if is_variable(t):
                raise PDDLError(f"variable {t} in problem fact {a}")
    return ProblemModel(name, domain_name, objects, _dedupe(init), _dedupe(goal))


def check_problem(domain: DomainModel, problem: ProblemModel) -> ProblemModel:
    """Check problem facts against the domain and add domain constants to the objects."""
    for a in problem.init + problem.goal:
        if a.pred not in domain.predicates:
            raise PDDLError(f"undeclared predicate '{a.pred}' in problem")
        if domain.predicates[a.pred] != len(a.args):
            raise PDDLError(f"arity mismatch for '{a.pred}' in problem fact {a}")
    known = set(problem.objects) | set(domain.constants)
    for a in problem.init:
        for t in a.args:
            if t not in known:
                raise PDDLError(f"constant '{t}' in initial fact {a} is not a declared object")
    extra = tuple(c for c in domain.constants if c not in problem.objects)
    if extra:
        problem = replace(problem, objects=problem.objects + extra)
    return problem


def unifiable(a: Atom, b: Atom) -> bool:
    """Whether some binding of the variables makes the two atoms equal."""
    if a.pred != b.pred or len(a.args) != len(b.args):
        return False
    parent: dict[str, str] = {}

    def find(t: str) -> str:
        while parent.get(t, t) != t:
            t = parent[t]
        return t

    for x, y in zip(a.args, b.args):
        rx, ry = find(x), find(y)
        if rx == ry:
            continue
        if not is_variable(rx) and not is_variable(ry):
            return False
        if is_variable(rx):
            parent[rx] = ry
        else:
            parent[ry] = rx
    return True


def validate_strips(domain: DomainModel) -> list[Diagnostic]:
    """Enforce that every deleted atom is a precondition.

    Raises PDDLError on violation. Returns warnings for pairs of deletes
    that coincide under some binding, and for add-only effects that are
    already preconditions (such literals are no-ops).
    """
    out = []
    for s in domain.schemas:
        pre = set(s.pre)
        for d in s.dels:
            if d not in pre:
                raise PDDLError(f"action '{s.name}' deletes {d} which is not a precondition")
        for i, d in enumerate(s.dels):
            for e in s.dels[i + 1:]:
                if unifiable(d, e):
                    out.append(Diagnostic(f"action '{s.name}' deletes {d} and {e}, "
                                          "which coincide under some binding"))
        dels = set(s.dels)
        for a in s.add:
            if a in pre and a not in dels:
                out.append(Diagnostic(f"action '{s.name}' adds precondition {a} without deleting it"))
    return out


def lift_constants(domain: DomainModel, problem: ProblemModel) -> tuple[DomainModel, ProblemModel]:
    """Replace constants in schemas by fresh parameters guarded by is-<c> predicates."""
    predicates = dict(domain.predicates)
    needed: list[str] = []
    schemas = []
    for s in domain.schemas:
        consts = list(dict.fromkeys(
            t for a in s.pre + s.add + s.dels for t in a.args if not is_variable(t)))
        if not consts:
            schemas.append(s)
            continue
        mapping = {}
        used = set(s.params)
        for c in consts:
            fresh = "?" + c
            while fresh in used:
                fresh += "'"
            used.add(fresh)
            mapping[c] = fresh
            pname = "is-" + c
            if pname in domain.predicates:
                raise PDDLError(f"cannot lift constant '{c}': predicate '{pname}' already declared")
            predicates[pname] = 1
            if c not in needed:
                needed.append(c)

        def sub(a: Atom) -> Atom:
            return Atom(a.pred, tuple(mapping.get(t, t) for t in a.args))

        guards = tuple(Atom("is-" + c, (mapping[c],)) for c in consts)
        schemas.append(OperatorSchema(
            s.name,
            s.params + tuple(mapping[c] for c in consts),
            _dedupe(tuple(sub(a) for a in s.pre) + guards),
            tuple(sub(a) for a in s.add),
            tuple(sub(a) for a in s.dels),
            s.lifted + tuple((mapping[c], c) for c in consts),
        ))
    if not needed:
        return domain, problem
    objects = problem.objects + tuple(c for c in needed if c not in problem.objects)
    init = problem.init + tuple(Atom("is-" + c, (c,)) for c in needed)
    return (
        replace(domain, predicates=predicates, schemas=tuple(schemas)),
        replace(problem, objects=objects, init=_dedupe(init)),
    )


# printing -------------------------------------------------------------------


def _conj(atoms) -> str:
    if len(atoms) == 1:
        return str(atoms[0])
    return "(and " + " ".join(str(a) for a in atoms) + ")"


def format_domain(domain: DomainModel) -> str:
    lines = [f"(define (domain {domain.name})"]
    if domain.requirements:
        lines.append("  (:requirements " + " ".join(domain.requirements) + ")")
    if domain.constants:
        lines.append("  (:constants " + " ".join(domain.constants) + ")")
    preds = " ".join(
        "(" + " ".join([p] + [f"?a{i}" for i in range(n)]) + ")" for p, n in domain.predicates.items())
    lines.append(f"  (:predicates {preds})")
    for s in domain.schemas:
        effect = [str(a) for a in s.add] + [f"(not {a})" for a in s.dels]
        lines.append(f"  (:action {s.name}")
        lines.append("    :parameters (" + " ".join(s.params) + ")")
        lines.append("    :precondition (and " + " ".join(str(a) for a in s.pre) + ")")
        lines.append("    :effect (and " + " ".join(effect) + "))")
    lines.append(")")
    return "\n".join(lines) + "\n"


def format_problem(problem: ProblemModel) -> str:
    lines = [f"(define (problem {problem.name})"]
    if problem.domain_name:
        lines.append(f"  (:domain {problem.domain_name})")
    lines.append("  (:objects " + " ".join(problem.objects) + ")")
    lines.append("  (:init " + " ".join(str(a) for a in problem.init) + ")")
    lines.append("  (:goal (and " + " ".join(str(a) for a in problem.goal) + "))")
    lines.append(")")
    return "\n".join(lines) + "\n"
