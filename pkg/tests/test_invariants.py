import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tim import formula as F
from tim.analysis import analyze
from tim.bags import Bag
from tim.corpus import gripper_problem, text
from tim.invariants import Invariant, mark_subsumed, partition_states
from tim.oracle import check_invariant, enumerate_reachable
from tim.pddl import parse_domain, parse_problem
from tim.rules import Property


def texts(a, family=None):
    return [i.text() for i in a.invariants() if family is None or i.family == family]


def test_worked_example_state_invariants(corpus_analysis):
    a = corpus_analysis("rocket-mini", static_spaces=False)
    got = [i.text() for i in a.state_invariants]
    assert got == [
        "FORALL x:T0 U T1. FORALL y1. FORALL z1. at(x,y1) AND at(x,z1) => y1 = z1",
        "FORALL x:T0 U T1. FORALL y1. FORALL z1. in(x,y1) AND in(x,z1) => y1 = z1",
        "FORALL x:T0 U T1. Exists y1:T2. at(x,y1) OR Exists y1:T0 U T1. in(x,y1)",
        "FORALL x:T0 U T1. NOT (Exists y1:T2. at(x,y1) AND Exists y2:T0 U T1. in(x,y2))",
        "FORALL x:T0. fuelled(x) OR unfuelled(x)",
        "FORALL x:T0. NOT (fuelled(x) AND unfuelled(x))",
    ]
    assert [i.family for i in a.state_invariants] == [
        "identity", "identity", "membership", "uniqueness", "membership", "uniqueness"]


def test_abstract_domain_three_way_identity_and_no_uniqueness(corpus_analysis):
    a = corpus_analysis("abstract")
    got = texts(a)
    assert ("FORALL x:T0. FORALL y1. FORALL z1. FORALL u1. q(x,y1) AND q(x,z1) AND q(x,u1)"
            " => y1 = z1 OR y1 = u1 OR z1 = u1") in got
    assert not [i for i in a.state_invariants if i.family == "uniqueness"]


def test_lightswitch_invariants(corpus_analysis):
    a = corpus_analysis("lightswitch")
    assert [i.text() for i in a.state_invariants] == [
        "FORALL x:T0. on(x) OR off(x)", "FORALL x:T0. NOT (on(x) AND off(x))"]


def test_tyre_hub_free(corpus_analysis):
    a = corpus_analysis("tyre")
    got = texts(a)
    label = a.table.object_type["the-hub"]
    assert f"FORALL x:{label}. NOT (Exists y1:T0 U T1 U T2 U T5 U T6 U T7. on(y1,x) AND free(x))" in got


def test_fixed_resources(corpus_analysis):
    assert "|{x0: at_robot(x0)}| = 1" in texts(corpus_analysis("gripper"), "fixed-resource")
    assert texts(corpus_analysis("rocket-mini", static_spaces=False), "fixed-resource") == [
        "|{x0: location(x0)}| = 2"]
    tyre = texts(corpus_analysis("tyre"), "fixed-resource")
    assert "|{x0: wheel(x0)}| = 2" in tyre and len(tyre) == 9


def test_blocks_subspace_invariants(corpus_analysis):
    a = corpus_analysis("blocks")
    informative = [i.text() for s in a.subspaces if s.informative for i in s.invariants]
    assert "FORALL x:T0. Exists y1:T0. on(y1,x) OR clear(x)" in informative
    assert "FORALL x:T0. NOT (Exists y1:T0. on(y1,x) AND clear(x))" in informative


def test_tyre_intact_wheel_always_deflated(corpus_analysis):
    a = corpus_analysis("tyre")
    label = a.table.object_type["wheel1"]
    assert f"FORALL x:{label}. deflated(x)" in [i.text() for i in a.subspace_invariants()]


def test_subsumed_marking():
    body = F.parse("FORALL x:T0 U T1. p(x) OR q(x)")
    prim = [Invariant("membership", body)]
    sub = [Invariant("membership", F.Forall("x", ("T1",), body.body), subspace="T1"),
           Invariant("membership", F.parse("FORALL x:T1. p(x)"), subspace="T1")]
    out = mark_subsumed(sub, prim, lambda t, label: t is None or label in t)
    assert [i.subsumed for i in out] == [True, False]


def test_partition_states():
    p, q = Property("p", 1), Property("q", 1)
    part = partition_states([Bag([p]), Bag([p, q]), Bag([q]), Bag([p, p])])
    assert set(part.minimal) == {frozenset([p]), frozenset([q])}
    assert part.supersets == (frozenset([p, q]),)


SMALL = ["rocket-mini", "rocket", "blocks", "gripper", "lightswitch", "postpone", "abstract", "od", "tyre"]


@pytest.mark.parametrize("name", SMALL)
def test_every_invariant_holds_in_every_reachable_state(name, corpus_analysis):
    a = corpus_analysis(name)
    reach = enumerate_reachable(a.domain, a.problem)
    assert not reach.truncated
    for inv in a.invariants():
        v = check_invariant(inv.formula, reach, a.members)
        assert v, f"{inv.text()} fails in {sorted(map(str, v.counterexample))}"


@pytest.mark.parametrize("name", SMALL)
def test_exact_cardinalities_are_constant(name, corpus_analysis):
    a = corpus_analysis(name)
    reach = enumerate_reachable(a.domain, a.problem)
    for inv in a.domain_invariants:
        f = inv.formula
        counts = {sum(x.pred == f.pred for x in s) for s in reach.states}
        if f.rel == "=":
            assert counts == {f.count}
        else:
            assert max(counts) <= f.count


@settings(max_examples=8, deadline=None)
@given(st.integers(1, 3), st.integers(2, 3))
def test_gripper_invariants_hold_at_any_size(balls, rooms):
    d = parse_domain(text("gripper", "domain"))
    p = parse_problem(gripper_problem(balls, rooms))
    a = analyze(d, p)
    reach = enumerate_reachable(a.domain, a.problem)
    for inv in a.invariants():
        assert check_invariant(inv.formula, reach, a.members)
    assert "|{x0: at_robot(x0)}| = 1" in texts(a, "fixed-resource")
