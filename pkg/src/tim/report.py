"""Text and JSON reports for an analysis."""

from __future__ import annotations

import json
import time

from tim import formula as F
from tim.analysis import Analysis
from tim.invariants import state_formula
from tim.rules import Property
from tim.spaces import ATTRIBUTE, MIXED, OVERFLOW, STATIC

SUBSUMED = "[subsumed]"


def _union(labels) -> str:
    return " U ".join(labels) if labels else "{}"


def property_line(a: Analysis, p: Property) -> str:
    f = state_formula([p], "x", a.domain.predicates, a.ex_types)
    return F.render(f) + ";"


def attribute_groups(a: Analysis) -> list[tuple[str, str, list[str]]]:
    """(kind, type union, property lines) for each non-empty attribute space.

    kind is "can" for dynamic attribute spaces and "all" for static ones.
    """
    out = []
    dynamic = [s for s in a.all_spaces() if s.kind in (ATTRIBUTE, OVERFLOW) and s.objects]
    for s in dynamic:
        lines = [property_line(a, p) for p in sorted(s.properties)]
        out.append(("can", _union(a.table.types_of(s.objects)), lines))
    statics = [s for s in a.spaces if s.kind == STATIC]
    if not a.config.static_spaces:
        covered = {p for s in a.all_spaces() for p in s.properties}
        static_props = []
        dyn = {x.pred for sc in a.domain.schemas for x in sc.add + sc.dels}
        for x in a.problem.init:
            if x.pred in dyn:
                continue
            for i in range(len(x.args)):
                p = Property(x.pred, i + 1)
                if p not in covered and p not in static_props:
                    static_props.append(p)
        for p in sorted(static_props):
            objs = {x.args[p.pos - 1] for x in a.problem.init if x.pred == p.pred}
            out.append(("all", _union(a.table.types_of(objs)), [property_line(a, p)]))
    for s in sorted(statics, key=lambda s: sorted(s.properties)):
        p = next(iter(s.properties))
        if s.objects:
            out.append(("all", _union(a.table.types_of(s.objects)), [property_line(a, p)]))
    return out


def parameter_line(a: Analysis, name: str) -> str:
    t = a.typed_schema(name)
    shown = t.schema.original_params
    parts = []
    for i, x in enumerate(shown):
        parts.append(t.param(x).render(f"x{i + 1}"))
    return f"{name}({','.join(parts)})"


def render_text(a: Analysis, timings: bool = False) -> str:
    t0 = time.perf_counter()
    lines = []
    pname = f" ({a.problem.name})" if a.problem.name else ""
    lines.append(f"TIM: Domain analysis complete for {a.domain.name}{pname}")
    lines.append("TIM: TYPES:")
    for t in a.table.types:
        lines.append(f"Type {t.label} = {{{','.join(t.objects)}}}")
    lines.append("TIM: STATE INVARIANTS:")
    lines.extend(inv.text() for inv in a.state_invariants)
    lines.append("TIM: DOMAIN INVARIANTS:")
    lines.extend(inv.text() for inv in a.domain_invariants)
    lines.append("TIM: ATTRIBUTE SPACES:")
    for kind, types, props in attribute_groups(a):
        if kind == "can":
            lines.append(f"Objects, x, in {types} can have property:")
            lines.extend(props)
        else:
            lines.append(f"Objects, x, in {types} all have property: {props[0]}")
    lines.append("TIM: OPERATOR PARAMETER RESTRICTIONS:")
    lines.extend(parameter_line(a, t.schema.name) for t in a.typed)
    lines.append("TIM: ADDITIONAL STATE INVARIANTS, USING SUB-SPACE ANALYSIS:")
    for sub in a.subspaces:
        if sub.informative:
            lines.extend(inv.text() for inv in sub.invariants)
    for sub in a.subspaces:
        if not sub.informative:
            lines.extend(f"{inv.text()} {SUBSUMED}" for inv in sub.invariants)
    if timings:
        out_time = time.perf_counter() - t0
        lines.append("TIM: TIMINGS:")
        lines.append(f"Parse time: {1000 * a.timings.get('parse', 0.0):.3f} ms")
        lines.append(f"Analysis time: {1000 * a.timings.get('analysis', 0.0):.3f} ms")
        lines.append(f"Output time: {1000 * out_time:.3f} ms")
    return "\n".join(lines) + "\n"


def _inv_json(inv) -> dict:
    d = {"family": inv.family, "text": inv.text(), "ast": F.to_json(inv.formula)}
    if inv.space is not None:
        d["space"] = inv.space
    if inv.subspace is not None:
        d["subspace"] = inv.subspace
        d["subsumed"] = inv.subsumed
    return d


def _space_json(s) -> dict:
    return {
        "id": s.id,
        "kind": s.kind,
        "properties": [str(p) for p in sorted(s.properties)],
        "objects": list(s.objects),
        "states": [[str(p) for p in st] for st in s.states] if s.kind not in (ATTRIBUTE, STATIC) else [],
        "rules": [str(r) for r in s.rules],
        "parent": s.parent,
    }


def to_dict(a: Analysis) -> dict:
    t0 = time.perf_counter()
    d = {
        "domain": a.domain.name,
        "problem": a.problem.name,
        "types": [{"label": t.label, "vector": list(t.vector), "objects": list(t.objects)}
                  for t in a.table.types],
        "spaces": [_space_json(s) for s in a.all_spaces()],
        "state_invariants": [_inv_json(i) for i in a.state_invariants],
        "domain_invariants": [_inv_json(i) for i in a.domain_invariants],
        "attribute_spaces": [{"kind": k, "types": t, "properties": p} for k, t, p in attribute_groups(a)],
        "parameter_restrictions": [
            {"schema": t.schema.name,
             "params": [{"name": p.name, "types": None if p.types is None else list(p.types)}
                        for p in t.params if p.name in t.schema.original_params]}
            for t in a.typed],
        "subspaces": [{"parent": s.parent, "type": s.type_label, "kind": s.space.kind,
                       "informative": s.informative,
                       "invariants": [_inv_json(i) for i in s.invariants]} for s in a.subspaces],
        "diagnostics": [{"level": x.level, "message": x.message} for x in a.diagnostics],
    }
    d["timings_ms"] = {k: 1000 * v for k, v in a.timings.items()}
    d["timings_ms"]["output"] = 1000 * (time.perf_counter() - t0)
    return d


def render_json(a: Analysis) -> str:
    return json.dumps(to_dict(a), indent=2)


def render_rules(a: Analysis) -> str:
    lines = ["TIM: RULES:"]
    for r in a.rules:
        lines.append(f"{r}    ({r.origin[0]} {r.origin[1]})")
    lines.append("TIM: CLASSES:")
    for c in a.classes:
        lines.append("{" + ", ".join(str(p) for p in sorted(c)) + "}")
    return "\n".join(lines) + "\n"


def render_spaces(a: Analysis) -> str:
    lines = ["TIM: SPACES:"]
    for s in a.all_spaces():
        tag = f" from S{s.parent}" if s.parent is not None else ""
        lines.append(f"{s.label()} {s.kind}{tag}")
        for r in s.rules:
            lines.append(f"  rule {r}")
        lines.append("  objects {" + ", ".join(s.objects) + "}")
        if s.kind not in (ATTRIBUTE, STATIC):
            for st in s.states:
                lines.append(f"  state {st}")
        if s.kind == MIXED:
            lines.append("  hidden " + ", ".join(str(p) for p in sorted(s.hidden)))
    vec = a.table
    lines.append("TIM: TYPE VECTORS:")
    for t in vec.types:
        lines.append(f"{t.label} {t.vector_str()} {{{','.join(t.objects)}}}")
    return "\n".join(lines) + "\n"
