from dataclasses import replace

from hypothesis import given, settings
from hypothesis import strategies as st

from tim.bags import Bag
from tim.corpus import NAMES, load, text
from tim.pddl import lift_constants, parse_domain
from tim.rules import (
    PRS,
    Property,
    TransitionRule,
    build_prs,
    domain_rules,
    prs_to_rules,
    split_prs,
    unite,
)


def P(s):
    pred, pos = s.rsplit("_", 1)
    return Property(pred, int(pos))


def bag(*names):
    return Bag(P(n) for n in names)


def rocket_mini():
    return load("rocket-mini")[0]


def test_drive_x_prs():
    q = build_prs(rocket_mini().schema("drive"), "?x")
    assert q.precs == bag("at_1", "fuelled_1")
    assert q.deleted == bag("at_1", "fuelled_1")
    assert q.adds == bag("at_1", "unfuelled_1")


def test_load_y_counts_both_atoms():
    q = build_prs(rocket_mini().schema("load"), "?y")
    assert q.precs == bag("at_2", "at_2")
    assert q.deleted == bag("at_2")
    assert q.adds == Bag()


def test_unused_parameter_gives_empty_prs():
    d = parse_domain("(define (domain d) (:predicates (p ?x))"
                     " (:action a :parameters (?x ?y) :precondition (p ?x) :effect (not (p ?x))))")
    q = build_prs(d.schema("a"), "?y")
    assert not (q.precs or q.deleted or q.adds)
    assert prs_to_rules(q) == []


def test_splitting_drive_x():
    parts = split_prs(build_prs(rocket_mini().schema("drive"), "?x"))
    assert [(p.deleted, p.adds) for p in parts] == [
        (bag("at_1"), bag("at_1")),
        (bag("fuelled_1"), bag("unfuelled_1")),
    ]
    assert all(p.precs == bag("at_1", "fuelled_1") for p in parts)


def test_splitting_many_exchanges():
    q = PRS(bag("a_1", "b_1", "c_1"), bag("a_1", "b_1", "c_1"), bag("a_1", "b_1", "d_1"), ("s", "?x"))
    parts = split_prs(q)
    assert len(parts) == 3
    assert parts[-1].deleted == bag("c_1") and parts[-1].adds == bag("d_1")


def test_no_exchange_is_unchanged():
    q = build_prs(rocket_mini().schema("load"), "?x")
    assert split_prs(q) == [q]


def test_worked_example_rules():
    rules = [str(r) for r in domain_rules(rocket_mini())]
    assert rules == [
        "fuelled_1 => at_1 -> at_1",
        "at_1 => fuelled_1 -> unfuelled_1",
        "at_2 -> null",
        "location_1 => null -> at_2",
        "at_1 -> in_1",
        "at_2 => at_2 -> null",
        "at_1 => null -> in_2",
    ]


def test_rule_kinds():
    kinds = [r.kind for r in domain_rules(rocket_mini())]
    assert kinds == ["state", "state", "decreasing", "increasing", "state", "decreasing", "increasing"]


def test_increasing_rule_per_added_property():
    q = PRS(bag("p_1"), Bag(), bag("q_1", "r_1", "r_1"), ("s", "?x"))
    rules = prs_to_rules(q)
    assert [r.finish for r in rules] == [bag("q_1"), bag("r_1")]
    assert all(r.enablers == bag("p_1") for r in rules)


def test_worked_example_classes():
    classes = unite(domain_rules(rocket_mini()))
    assert classes == [frozenset(bag("at_1", "in_1")), frozenset(bag("fuelled_1", "unfuelled_1")),
                       frozenset(bag("at_2")), frozenset(bag("in_2"))]


def _postpone(schemas):
    d = parse_domain(text("postpone", "domain"))
    return replace(d, schemas=tuple(s for s in d.schemas if s.name in schemas))


def test_op1_alone_keeps_properties_apart():
    classes = unite(domain_rules(_postpone({"op1"})))
    assert frozenset(bag("p_1")) in classes
    assert frozenset(bag("q_1")) in classes


def test_all_three_ops_join_properties():
    classes = unite(domain_rules(_postpone({"op1", "op2", "op3"})))
    assert frozenset(bag("p_1", "q_1")) in classes


def test_singletons_come_last():
    classes = unite(domain_rules(rocket_mini()), [P("location_1"), P("at_1")])
    assert classes[-1] == frozenset(bag("location_1"))
    assert len(classes) == 5


def _all_rules():
    out = []
    for name in NAMES:
        d, p = load(name)
        out.extend(domain_rules(lift_constants(d, p)[0]))
    return out


def test_no_null_null_rules():
    assert all(r.start or r.finish for r in _all_rules())


def test_split_reassembles_original():
    for name in NAMES:
        d, p = load(name)
        for s in lift_constants(d, p)[0].schemas:
            for x in s.params:
                q = build_prs(s, x)
                parts = split_prs(q)
                dsum, asum = Bag(), Bag()
                for part in parts:
                    dsum, asum = dsum + part.deleted, asum + part.adds
                    assert part.deleted <= part.precs
                assert dsum == q.deleted and asum == q.adds


@settings(max_examples=30)
@given(st.randoms(use_true_random=False))
def test_unite_ignores_rule_order(rng):
    rules = _all_rules()
    want = {frozenset(c) for c in unite(rules)}
    shuffled = list(rules)
    rng.shuffle(shuffled)
    assert {frozenset(c) for c in unite(shuffled)} == want


def test_every_rule_property_in_exactly_one_class():
    rules = _all_rules()
    classes = unite(rules)
    for r in rules:
        for p in r.properties():
            assert sum(p in c for c in classes) == 1


def test_rule_rendering():
    r = TransitionRule(bag("a_1"), Bag(), bag("b_2"), ("s", "?x"))
    assert str(r) == "a_1 => null -> b_2"
