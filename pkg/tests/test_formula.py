import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tim import formula as F

VARS = ["x", "y1", "z1"]
TYPES = st.one_of(st.none(), st.lists(st.sampled_from(["T0", "T1", "T2"]), min_size=1, max_size=2,
                                      unique=True).map(tuple))


def _atoms():
    return st.builds(F.Atom, st.sampled_from(["p", "q", "on-ground"]),
                     st.lists(st.sampled_from(VARS), min_size=1, max_size=2).map(tuple))


def _formulas():
    base = st.one_of(_atoms(), st.builds(F.Eq, st.sampled_from(VARS).map(lambda v: (v,)),
                                         st.sampled_from(VARS).map(lambda v: (v,))))

    def extend(inner):
        many = st.lists(inner, min_size=2, max_size=3).map(tuple)
        return st.one_of(
            st.builds(F.Not, inner),
            st.builds(F.And, many),
            st.builds(F.Or, many),
            st.builds(F.Implies, inner, inner),
            st.builds(F.Forall, st.sampled_from(VARS), TYPES, inner),
            st.builds(F.Exists, st.sampled_from(VARS), TYPES, inner),
        )

    return st.recursive(base, extend, max_leaves=8)


@settings(max_examples=300)
@given(_formulas())
def test_render_parse_round_trip(f):
    assert F.parse(F.render(f)) == f


@settings(max_examples=200)
@given(_formulas())
def test_normalize_survives_round_trip(f):
    assert F.normalize(F.parse(F.render(f))) == F.normalize(f)


@given(_formulas())
def test_json_round_trip(f):
    assert F.from_json(F.to_json(f)) == f


def test_report_syntax_examples():
    f = F.parse("FORALL x:T0 U T1. (Exists y1:T2. at(x,y1) OR Exists y1:T0 U T1. in(x,y1))")
    assert isinstance(f, F.Forall) and f.types == ("T0", "T1")
    assert isinstance(f.body, F.Or) and len(f.body.items) == 2
    g = F.parse("FORALL x:T4. FORALL y1. FORALL z1. on(y1,x) AND on(z1,x) => y1 = z1")
    assert isinstance(g.body.body.body, F.Implies)


def test_cardinality_syntax():
    assert F.parse("|{x0: wheel(x0)}| = 2") == F.Cardinality("wheel", 1, "=", 2)
    f = F.Cardinality("eats", 2, "<=", 36)
    assert F.render(f) == "|{(x0,x1): eats(x0,x1)}| <= 36"
    assert F.parse(F.render(f)) == f


def test_existential_takes_the_following_conjunction():
    f = F.parse("Exists y1:T0. tight(y1,x) AND fastened(x)")
    assert isinstance(f, F.Exists) and isinstance(f.body, F.And)


def test_rendering_matches_report_style():
    f = F.parse("FORALL x:T4. NOT (Exists y1:T0. on(y1,x) AND free(x))")
    assert F.render(f) == "FORALL x:T4. NOT (Exists y1:T0. on(y1,x) AND free(x))"
    g = F.Forall("x", ("T0",), F.Or((F.Atom("on", ("x",)), F.Atom("off", ("x",)))))
    assert F.render(g) == "FORALL x:T0. on(x) OR off(x)"


def test_vector_equality():
    f = F.parse("(y1,y2) = (z1,z2)")
    assert f == F.Eq(("y1", "y2"), ("z1", "z2"))
    assert F.render(f) == "(y1,y2) = (z1,z2)"


def test_normalize_ignores_names_order_and_scope():
    a = F.parse("FORALL x:T1. NOT (Exists y1:T3. in(x,y1) AND Exists y1:T4. on(x,y1))")
    b = F.parse("FORALL x:T1. NOT (Exists y9:T4. on(x,y9) AND Exists y2:T3. in(x,y2))")
    assert F.normalize(a) == F.normalize(b)
    c = F.parse("FORALL x:T4. (Exists y1:T0. tight(y1,x) AND fastened(x)) OR unfastened(x)")
    d = F.parse("FORALL x:T4. unfastened(x) OR fastened(x) AND Exists y1:T0. tight(y1,x)")
    assert F.normalize(c) == F.normalize(d)


def test_normalize_distinguishes_types_and_relabels():
    a = F.parse("FORALL x:T0. p(x)")
    b = F.parse("FORALL x:T1. p(x)")
    assert F.normalize(a) != F.normalize(b)
    assert F.normalize(a, {"T0": "T1"}.get) == F.normalize(b)


def test_strip_lifted():
    f = F.parse("FORALL x:T0. is-jack(x)")
    assert F.render(F.strip_lifted(f)) == "FORALL x:T0. jack(x)"
    assert F.strip_lifted(F.Cardinality("is-pump", 1, "=", 1)).pred == "pump"


def test_free_vars():
    f = F.parse("FORALL x. Exists y. p(x,y,z)")
    assert F.free_vars(f) == {"z"}


@pytest.mark.parametrize("bad", ["FORALL x. ", "p(x", "|{x0: p(x0)}| > 1", "p(x) AND AND q(x)", "p(x) q(x)"])
def test_syntax_errors(bad):
    with pytest.raises(F.FormulaSyntaxError):
        F.parse(bad)
