import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tim.analysis import AnalysisConfig, analyze, analyze_text
from tim.corpus import NAMES, gripper_problem, load, text
from tim.rules import properties_of
from tim.types import is_subtype


@pytest.fixture(scope="module")
def mini():
    return analyze(*load("rocket-mini"), AnalysisConfig(static_spaces=False))


def test_worked_example_vectors(mini):
    got = [(t.label, t.vector_str(), t.objects) for t in mini.table.types]
    assert got == [("T0", "[1101]", ("rocket",)), ("T1", "[1001]", ("package",)),
                   ("T2", "[0010]", ("london", "paris"))]


def test_subtype_relation():
    assert is_subtype((1, 1, 0, 1), (1, 0, 0, 1))
    assert is_subtype((1, 0, 0, 1), (1, 0, 0, 1))
    assert not is_subtype((1, 0, 0, 1), (0, 0, 1, 0))
    with pytest.raises(ValueError):
        is_subtype((1,), (1, 0))


def test_single_object_single_space():
    a = analyze_text("(define (domain d) (:predicates (on ?x) (off ?x))"
                     " (:action up :parameters (?x) :precondition (off ?x) :effect (and (on ?x) (not (off ?x)))))",
                     "(define (problem e) (:domain d) (:objects s) (:init (off s)))")
    assert [(t.vector, t.objects) for t in a.table.types] == [((1,), ("s",))]


def test_drive_parameters(mini):
    t = mini.typed_schema("drive")
    assert t.param("?x").types == ("T0",)
    assert t.param("?y").types == ("T2",)
    assert t.param("?z").types == ("T2",)


def test_unload_union(corpus_analysis):
    a = corpus_analysis("logistics")
    ty = a.typed_schema("unload").param("?obj").types
    assert set(a.members(ty)) == set(a.members(["T0", "T4", "T5"]))
    assert len(ty) == 3


def test_polymorphic_parameter(corpus_analysis):
    a = corpus_analysis("postpone")
    assert a.typed_schema("op1").param("?z").types is None
    assert a.typed_schema("op1").param("?z").render("x3") == "x3"


def test_no_instances_diagnostic():
    a = analyze_text(
        "(define (domain d) (:predicates (p ?x) (q ?x) (r ?x))"
        " (:action a :parameters (?x) :precondition (and (p ?x) (q ?x)) :effect (and (r ?x) (not (p ?x)))))",
        "(define (problem e) (:domain d) (:objects a b) (:init (p a) (q b)))")
    t = a.typed_schema("a")
    assert t.param("?x").types == ()
    assert not t.has_instances()
    assert any("no instances" in d.message for d in a.diagnostics)


def test_tyre_types(corpus_analysis):
    a = corpus_analysis("tyre")
    assert [t.objects for t in a.table.types] == [
        ("wrench",), ("wheel2",), ("wheel1",), ("trunk",), ("the-hub",), ("pump",), ("nuts",), ("jack",)]


def test_labels_are_deterministic():
    d, p = load("mystery")
    a, b = analyze(d, p), analyze(d, p)
    assert [(t.label, t.objects) for t in a.table.types] == [(t.label, t.objects) for t in b.table.types]


@settings(max_examples=10, deadline=None)
@given(st.integers(1, 4), st.integers(2, 3))
def test_functional_twins_share_a_type(balls, rooms):
    a = analyze_text(text("gripper", "domain"), gripper_problem(balls, rooms))
    kinds = {a.table.object_type[f"ball{i}"] for i in range(1, balls + 1)}
    assert len(kinds) == 1
    assert a.table.object_type["left"] == a.table.object_type["right"]


@pytest.mark.parametrize("name", NAMES)
def test_instantiation_soundness(name, corpus_analysis):
    a = corpus_analysis(name)
    owner = {p: s for s in a.spaces for p in s.properties}
    for t in a.typed:
        for pt in t.params:
            if pt.types is None:
                continue
            props = [p for at in t.schema.pre for p in properties_of(at, pt.name) if p in owner]
            for o in a.members(pt.types):
                for p in props:
                    assert o in owner[p].objects, (t.schema.name, pt.name, o, p)


@pytest.mark.parametrize("name", NAMES)
def test_types_partition_objects(name, corpus_analysis):
    a = corpus_analysis(name)
    seen = [o for t in a.table.types for o in t.objects]
    assert sorted(seen) == sorted(a.problem.objects)
