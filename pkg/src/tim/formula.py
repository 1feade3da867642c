"""First-order invariant formulas: AST, rendering, parsing and normalization.

The concrete syntax is the one used in reports::

    FORALL x:T0 U T1. (Exists y1:T2. at(x,y1) OR Exists y1:T0 U T1. in(x,y1))
    FORALL x:T4. FORALL y1. FORALL z1. on(y1,x) AND on(z1,x) => y1 = z1
    |{(x0,x1): eats(x0,x1)}| = 36

An existential binds over the whole AND chain following it; OR binds
looser than AND and ``=>`` looser than OR.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

Types = "tuple[str, ...] | None"


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[str, ...]


@dataclass(frozen=True)
class Eq:
    left: tuple[str, ...]
    right: tuple[str, ...]


@dataclass(frozen=True)
class Not:
    body: object


@dataclass(frozen=True)
class And:
    items: tuple


@dataclass(frozen=True)
class Or:
    items: tuple


@dataclass(frozen=True)
class Implies:
    ante: object
    cons: object


@dataclass(frozen=True)
class Forall:
    var: str
    types: tuple | None
    body: object


@dataclass(frozen=True)
class Exists:
    var: str
    types: tuple | None
    body: object


@dataclass(frozen=True)
class Cardinality:
    pred: str
    arity: int
    rel: str  # "=" or "<="
    count: int


def conj(items):
    items = tuple(items)
    return items[0] if len(items) == 1 else And(items)


def disj(items):
    items = tuple(items)
    return items[0] if len(items) == 1 else Or(items)


def exists(binders, body):
    for var, types in reversed(list(binders)):
        body = Exists(var, types, body)
    return body


def forall(binders, body):
    for var, types in reversed(list(binders)):
        body = Forall(var, types, body)
    return body


# rendering -------------------------------------------------------------------


def _binder(var, types) -> str:
    if types is None:
        return var
    return f"{var}:{' U '.join(types)}" if types else f"{var}:{{}}"


def _vec(v) -> str:
    return v[0] if len(v) == 1 else "(" + ",".join(v) + ")"


def render(f, level: int = 0) -> str:
    """Render with the minimum parentheses the parser needs.

    ``level`` is the binding context: 0 top, 1 inside OR, 2 inside AND,
    3 operand of NOT or an atom position.
    """
    if isinstance(f, Atom):
        return f"{f.pred}({','.join(f.args)})"
    if isinstance(f, Eq):
        return f"{_vec(f.left)} = {_vec(f.right)}"
    if isinstance(f, Cardinality):
        xs = [f"x{i}" for i in range(f.arity)]
        head = xs[0] if f.arity == 1 else "(" + ",".join(xs) + ")"
        return f"|{{{head}: {f.pred}({','.join(xs)})}}| {f.rel} {f.count}"
    if isinstance(f, Not):
        return "NOT " + render(f.body, 3)
    if isinstance(f, Forall):
        s = f"FORALL {_binder(f.var, f.types)}. {render(f.body, 0)}"
        return s if level == 0 else f"({s})"
    if isinstance(f, Exists):
        s = f"Exists {_binder(f.var, f.types)}. {render(f.body, 2)}"
        # an existential swallows the AND chain after it, so inside an AND it needs parens
        return s if level in (0, 1) else f"({s})"
    if isinstance(f, And):
        # a nested AND keeps its parentheses so that an inner existential
        # cannot capture the outer conjuncts; the last existential needs none
        def item(x, last):
            if isinstance(x, And):
                return render(x, 3)
            return render(x, 1 if last and isinstance(x, Exists) else 2)
        s = " AND ".join(item(x, i == len(f.items) - 1) for i, x in enumerate(f.items))
        return s if level <= 2 else f"({s})"
    if isinstance(f, Or):
        s = " OR ".join(render(x, 2 if isinstance(x, Or) else 1) for x in f.items)
        return s if level <= 1 else f"({s})"
    if isinstance(f, Implies):
        s = f"{render(f.ante, 1)} => {render(f.cons, 1)}"
        return s if level == 0 else f"({s})"
    raise TypeError(f"not a formula: {f!r}")


# parsing ---------------------------------------------------------------------

_TOK = re.compile(r"\s*(=>|<=|FORALL\b|Exists\b|NOT\b|AND\b|OR\b|[(),.:|{}=]|[A-Za-z0-9_\-']+)")


class FormulaSyntaxError(ValueError):
    pass


def _tokens(text: str) -> list[str]:
    out, i = [], 0
    text = text.strip().rstrip(";").strip()
    while i < len(text):
        m = _TOK.match(text, i)
        if not m:
            raise FormulaSyntaxError(f"bad character at {i}: {text[i:i + 10]!r}")
        out.append(m.group(1))
        i = m.end()
        while i < len(text) and text[i].isspace():
            i += 1
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self, k: int = 0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def take(self, want=None) -> str:
        tok = self.peek()
        if tok is None or (want is not None and tok != want):
            raise FormulaSyntaxError(f"expected {want!r}, got {tok!r}")
        self.i += 1
        return tok

    def parse(self):
        f = self.cardinality() if self.peek() == "|" else self.implies()
        if self.peek() is not None:
            raise FormulaSyntaxError(f"trailing input at {self.peek()!r}")
        return f

    def cardinality(self):
        self.take("|")
        self.take("{")
        if self.peek() == "(":
            self.take("(")
            n = 1
            self.take()
            while self.peek() == ",":
                self.take(",")
                self.take()
                n += 1
            self.take(")")
        else:
            self.take()
            n = 1
        self.take(":")
        pred = self.take()
        self.take("(")
        while self.peek() != ")":
            self.take()
        self.take(")")
        self.take("}")
        self.take("|")
        rel = self.take()
        if rel not in ("=", "<="):
            raise FormulaSyntaxError(f"bad relation {rel!r}")
        return Cardinality(pred, n, rel, int(self.take()))

    def implies(self):
        left = self.disjunction()
        if self.peek() == "=>":
            self.take("=>")
            return Implies(left, self.disjunction())
        return left

    def disjunction(self):
        items = [self.conjunction()]
        while self.peek() == "OR":
            self.take("OR")
            items.append(self.conjunction())
        return disj(items)

    def conjunction(self):
        items = [self.unary()]
        while self.peek() == "AND":
            self.take("AND")
            items.append(self.unary())
        return conj(items)

    def binder(self):
        var = self.take()
        types = None
        if self.peek() == ":":
            self.take(":")
            if self.peek() == "{":
                self.take("{")
                self.take("}")
                types = ()
            else:
                labels = [self.take()]
                while self.peek() == "U":
                    self.take("U")
                    labels.append(self.take())
                types = tuple(labels)
        self.take(".")
        return var, types

    def vec(self):
        if self.peek() == "(":
            self.take("(")
            xs = [self.take()]
            while self.peek() == ",":
                self.take(",")
                xs.append(self.take())
            self.take(")")
            return tuple(xs)
        return (self.take(),)

    def unary(self):
        tok = self.peek()
        if tok == "NOT":
            self.take()
            return Not(self.unary())
        if tok == "FORALL":
            self.take()
            var, types = self.binder()
            return Forall(var, types, self.implies())
        if tok == "Exists":
            self.take()
            var, types = self.binder()
            return Exists(var, types, self.conjunction())
        if tok == "(":
            # either a parenthesized formula or a vector equality
            if self._vector_eq_ahead():
                left = self.vec()
                self.take("=")
                return Eq(left, self.vec())
            self.take("(")
            f = self.implies()
            self.take(")")
            return f
        name = self.take()
        if self.peek() == "(":
            self.take("(")
            args = []
            if self.peek() != ")":
                args.append(self.take())
                while self.peek() == ",":
                    self.take(",")
                    args.append(self.take())
            self.take(")")
            return Atom(name, tuple(args))
        if self.peek() == "=":
            self.take("=")
            return Eq((name,), self.vec())
        raise FormulaSyntaxError(f"unexpected {name!r}")

    def _vector_eq_ahead(self) -> bool:
        j = self.i + 1
        while j < len(self.toks) and self.toks[j] not in (")",):
            if self.toks[j] in ("(", "FORALL", "Exists", "NOT", "AND", "OR", "=>", "="):
                return False
            j += 1
        return j + 1 < len(self.toks) and self.toks[j + 1] == "="


def parse(text: str):
    """Parse the report syntax into an AST."""
    return _Parser(text).parse()


# normalization -----------------------------------------------------------------


def free_vars(f) -> frozenset:
    if isinstance(f, Atom):
        return frozenset(f.args)
    if isinstance(f, Eq):
        return frozenset(f.left + f.right)
    if isinstance(f, Cardinality):
        return frozenset()
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or)):
        return frozenset().union(*(free_vars(x) for x in f.items))
    if isinstance(f, Implies):
        return free_vars(f.ante) | free_vars(f.cons)
    if isinstance(f, (Forall, Exists)):
        return free_vars(f.body) - {f.var}
    raise TypeError(f)


def _flatten(cls, items):
    out = []
    for x in items:
        if isinstance(x, cls):
            out.extend(x.items)
        else:
            out.append(x)
    return out


def miniscope(f):
    """Push existentials inward and flatten AND/OR."""
    if isinstance(f, (Atom, Eq, Cardinality)):
        return f
    if isinstance(f, Not):
        return Not(miniscope(f.body))
    if isinstance(f, Implies):
        return Implies(miniscope(f.ante), miniscope(f.cons))
    if isinstance(f, Forall):
        return Forall(f.var, f.types, miniscope(f.body))
    if isinstance(f, And):
        return conj(_flatten(And, [miniscope(x) for x in f.items]))
    if isinstance(f, Or):
        return disj(_flatten(Or, [miniscope(x) for x in f.items]))
    if isinstance(f, Exists):
        body = miniscope(f.body)
        if f.var not in free_vars(body):
            return body
        if isinstance(body, Or):
            return disj(_flatten(Or, [miniscope(Exists(f.var, f.types, x)) for x in body.items]))
        if isinstance(body, And):
            inner = [x for x in body.items if f.var in free_vars(x)]
            outer = [x for x in body.items if f.var not in free_vars(x)]
            if outer:
                return conj(_flatten(And, outer + [miniscope(Exists(f.var, f.types, conj(inner)))]))
        return Exists(f.var, f.types, body)
    raise TypeError(f)


def _key(f, env: dict, depth: int, relabel) -> str:
    if isinstance(f, Atom):
        return f"{f.pred}(" + ",".join(env.get(a, a) for a in f.args) + ")"
    if isinstance(f, Eq):
        sides = sorted([",".join(env.get(a, a) for a in f.left), ",".join(env.get(a, a) for a in f.right)])
        return f"eq({sides[0]};{sides[1]})"
    if isinstance(f, Cardinality):
        return f"card({f.pred}/{f.arity}{f.rel}{f.count})"
    if isinstance(f, Not):
        return "not(" + _key(f.body, env, depth, relabel) + ")"
    if isinstance(f, Implies):
        return "imp(" + _key(f.ante, env, depth, relabel) + ";" + _key(f.cons, env, depth, relabel) + ")"
    if isinstance(f, (And, Or)):
        parts = sorted(_key(x, env, depth, relabel) for x in f.items)
        return ("and(" if isinstance(f, And) else "or(") + ";".join(parts) + ")"
    if isinstance(f, (Forall, Exists)):
        v = f"v{depth}"
        if f.types is None:
            ty = "*"
        else:
            ty = "|".join(sorted(relabel(t) for t in f.types))
        inner = _key(f.body, {**env, f.var: v}, depth + 1, relabel)
        q = "all" if isinstance(f, Forall) else "ex"
        return f"{q}[{ty}]({inner})"
    raise TypeError(f)


def normalize(f, relabel=None) -> str:
    """A canonical string: equal for formulas differing only in bound names,
    order of AND/OR operands, sides of equalities and existential scoping.

    ``relabel`` maps type labels (for comparing across labelings).
    """
    relabel = relabel or (lambda t: t)
    return _key(miniscope(f), {}, 0, relabel)


def strip_lifted(f, prefix: str = "is-"):
    """Rename predicates ``is-c`` to ``c`` (lifted constants)."""
    if isinstance(f, Atom):
        return Atom(f.pred[len(prefix):] if f.pred.startswith(prefix) else f.pred, f.args)
    if isinstance(f, Cardinality):
        p = f.pred[len(prefix):] if f.pred.startswith(prefix) else f.pred
        return Cardinality(p, f.arity, f.rel, f.count)
    if isinstance(f, Eq):
        return f
    if isinstance(f, Not):
        return Not(strip_lifted(f.body, prefix))
    if isinstance(f, And):
        return And(tuple(strip_lifted(x, prefix) for x in f.items))
    if isinstance(f, Or):
        return Or(tuple(strip_lifted(x, prefix) for x in f.items))
    if isinstance(f, Implies):
        return Implies(strip_lifted(f.ante, prefix), strip_lifted(f.cons, prefix))
    if isinstance(f, Forall):
        return Forall(f.var, f.types, strip_lifted(f.body, prefix))
    if isinstance(f, Exists):
        return Exists(f.var, f.types, strip_lifted(f.body, prefix))
    raise TypeError(f)


def to_json(f):
    """A plain-data encoding of the AST."""
    if isinstance(f, Atom):
        return {"op": "atom", "pred": f.pred, "args": list(f.args)}
    if isinstance(f, Eq):
        return {"op": "eq", "left": list(f.left), "right": list(f.right)}
    if isinstance(f, Cardinality):
        return {"op": "card", "pred": f.pred, "arity": f.arity, "rel": f.rel, "count": f.count}
    if isinstance(f, Not):
        return {"op": "not", "body": to_json(f.body)}
    if isinstance(f, (And, Or)):
        return {"op": "and" if isinstance(f, And) else "or", "items": [to_json(x) for x in f.items]}
    if isinstance(f, Implies):
        return {"op": "implies", "ante": to_json(f.ante), "cons": to_json(f.cons)}
    if isinstance(f, (Forall, Exists)):
        return {"op": "forall" if isinstance(f, Forall) else "exists", "var": f.var,
                "types": None if f.types is None else list(f.types), "body": to_json(f.body)}
    raise TypeError(f)


def from_json(d):
    op = d["op"]
    if op == "atom":
        return Atom(d["pred"], tuple(d["args"]))
    if op == "eq":
        return Eq(tuple(d["left"]), tuple(d["right"]))
    if op == "card":
        return Cardinality(d["pred"], d["arity"], d["rel"], d["count"])
    if op == "not":
        return Not(from_json(d["body"]))
    if op in ("and", "or"):
        items = tuple(from_json(x) for x in d["items"])
        return And(items) if op == "and" else Or(items)
    if op == "implies":
        return Implies(from_json(d["ante"]), from_json(d["cons"]))
    types = None if d["types"] is None else tuple(d["types"])
    cls = Forall if op == "forall" else Exists
    return cls(d["var"], types, from_json(d["body"]))
