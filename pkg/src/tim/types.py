"""Type vectors, type tables and operator parameter typing."""

from __future__ import annotations

from dataclasses import dataclass, field

from tim.pddl import Diagnostic, OperatorSchema
from tim.rules import Property, properties_of
from tim.spaces import Space


@dataclass(frozen=True)
class TypeInfo:
    label: str
    vector: tuple[int, ...]
    objects: tuple[str, ...]

    def bits(self) -> frozenset:
        return frozenset(i for i, b in enumerate(self.vector) if b)

    def vector_str(self) -> str:
        return "[" + "".join(str(b) for b in self.vector) + "]"


@dataclass
class TypeTable:
    types: list[TypeInfo]
    object_type: dict[str, str]
    space_ids: tuple[int, ...]  # space id for each vector position

    def get(self, label: str) -> TypeInfo:
        for t in self.types:
            if t.label == label:
                return t
        raise KeyError(label)

    def labels(self) -> list[str]:
        return [t.label for t in self.types]

    def members(self, labels) -> list[str]:
        if labels is None:
            return list(self.object_type)
        wanted = set(labels)
        return [o for o, t in self.object_type.items() if t in wanted]

    def types_of(self, objects) -> tuple[str, ...]:
        found = {self.object_type[o] for o in objects if o in self.object_type}
        return self.sort(found)

    def sort(self, labels) -> tuple[str, ...]:
        index = {t.label: i for i, t in enumerate(self.types)}
        return tuple(sorted(set(labels), key=lambda l: index[l]))

    def is_union_of_types(self, objects) -> bool:
        objs = set(objects)
        return all(set(self.get(l).objects) <= objs for l in self.types_of(objs))


def is_subtype(v1, v2) -> bool:
    """V1 is a subtype of V2 when every bit set in V2 is also set in V1."""
    if len(v1) != len(v2):
        raise ValueError("type vectors of different lengths")
    return all(a >= b for a, b in zip(v1, v2))


def object_type_vectors(spaces: list[Space], objects) -> TypeTable:
    """Group objects by the vector of spaces they belong to.

    Labels T0, T1, ... are handed out in order of first occurrence over
    ``objects``.
    """
    member = [set(s.objects) for s in spaces]
    by_vector: dict[tuple, list] = {}
    order: list[tuple] = []
    for o in objects:
        v = tuple(1 if o in m else 0 for m in member)
        if v not in by_vector:
            by_vector[v] = []
            order.append(v)
        by_vector[v].append(o)
    types = [TypeInfo(f"T{i}", v, tuple(by_vector[v])) for i, v in enumerate(order)]
    object_type = {o: t.label for t in types for o in t.objects}
    return TypeTable(types, object_type, tuple(s.id for s in spaces))


@dataclass
class ParamType:
    name: str
    types: tuple[str, ...] | None  # None marks a polymorphic parameter

    def render(self, display: str) -> str:
        if self.types is None:
            return display
        return f"{display}:{' U '.join(self.types)}" if self.types else f"{display}:{{}}"


@dataclass
class TypedSchema:
    schema: OperatorSchema
    params: list[ParamType]
    diagnostics: list = field(default_factory=list)

    def param(self, name: str) -> ParamType:
        for p in self.params:
            if p.name == name:
                return p
        raise KeyError(name)

    def has_instances(self) -> bool:
        return all(p.types is None or p.types for p in self.params)


def parameter_types(schema: OperatorSchema, table: TypeTable, owner: dict[Property, int],
                    holders=None) -> TypedSchema:
    """Type each parameter by the union of subtypes of its precondition vector.

    ``owner`` maps each property to the vector position of its typing
    space. Properties without a position are static; ``holders(prop)``
    gives the objects holding them initially, and the candidate types
    are restricted to those.
    """
    width = len(table.space_ids)
    params = []
    diags = []
    for x in schema.params:
        props = [p for a in schema.pre for p in properties_of(a, x)]
        if not props:
            params.append(ParamType(x, None))
            continue
        bits = {owner[p] for p in props if p in owner}
        v = tuple(1 if i in bits else 0 for i in range(width))
        labels = [t.label for t in table.types if is_subtype(t.vector, v)]
        statics = [p for p in props if p not in owner]
        if statics:
            allowed = None
            for p in statics:
                got = set(holders(p)) if holders else set()
                allowed = got if allowed is None else allowed & got
            ok = set(table.types_of(allowed))
            labels = [l for l in labels if l in ok]
        params.append(ParamType(x, table.sort(labels)))
        if not labels:
            diags.append(Diagnostic(f"operator '{schema.name}' has no instances: no object can play {x}"))
    return TypedSchema(schema, params, diags)
