import random
from itertools import product

import pytest

from anytime_inference import oracle
from anytime_inference.datasets import (CHILD_SUBNETWORK, child_standin, generate_child_standin,
                                        two_coins)
from anytime_inference.engine import solve_exact
from anytime_inference.errors import ModelParseError
from anytime_inference.generators import random_dnf
from anytime_inference.modelio import (check_cpts, load_model, parse_bif, parse_dnf,
                                       parse_network, serialize_dnf, serialize_network)
from anytime_inference.semiring import ARITH_FLOAT, BOOL_MAXMIN

from conftest import Q

RAIN = """\
semiring arith-rational
variable A {no, yes}
variable B {off, on}

cpt A
no : 0.8
yes : 0.2

cpt B | A   # B given A
off, no : 9/10
on, no : 1/10
off, yes : 0.25
on, yes : 0.75
"""

BIF = """\
network unknown {
}
variable A {
  type discrete [ 2 ] { no, yes };
}
variable B {
  type discrete [ 2 ] { off, on };
}
variable C {
  type discrete [ 3 ] { lo, mid, hi };
}
probability ( A ) {
  table 0.8, 0.2;
}
probability ( B | A ) {
  (no) 0.9, 0.1;
  (yes) 0.25, 0.75;
}
probability ( C | A, B ) {
  table 0.1, 0.2, 0.7, 0.3, 0.3, 0.4, 0.5, 0.25, 0.25, 1.0, 0.0, 0.0;
}
"""


def test_two_variable_network():
    model = parse_network(RAIN)
    assert [f.domain.names for f in model.factors] == [("A",), ("A", "B")]
    a, b = model.variable("A"), model.variable("B")
    assert model.factors[1].value((a.index("yes"), b.index("on"))) == Q("0.75")
    assert check_cpts(model) == []


def test_network_round_trip():
    model = parse_network(RAIN)
    text = serialize_network(model)
    again = parse_network(text)
    assert again == model
    assert serialize_network(again) == text


def test_child_round_trip():
    model = child_standin()
    assert parse_network(serialize_network(model)) == model


def test_use_before_declaration():
    text = "variable A {0, 1}\ncpt B | A\n0, 0 : 1\n"
    with pytest.raises(ModelParseError) as err:
        parse_network(text)
    assert "'B'" in str(err.value)
    assert err.value.line == 2


@pytest.mark.parametrize("text,line", [
    ("variable A {0, 1}\ncpt A\n0, 1 : 1\n", 3),           # arity mismatch
    ("variable A {0, 1}\ncpt A\n2 : 1\n", 3),              # unknown label
    ("variable A {0, 1}\nvariable A {0}\n", 2),            # redeclared
    ("variable A {0, 1}\ncpt A\n0 : 1\n0 : 1\n", 4),       # duplicate row
    ("0 : 1\n", 1),                                        # row outside a block
    ("semiring tropical\n", 1),
    ("variable A {0, 1}\ncpt A\n0 : abc\n", 3),
    ("hello\n", 1),
])
def test_parse_errors_report_line(text, line):
    with pytest.raises(ModelParseError) as err:
        parse_network(text)
    assert err.value.line == line


def test_float_and_boolean_networks():
    model = parse_network(RAIN.replace("arith-rational", "arith-float"))
    assert model.semiring is ARITH_FLOAT
    assert model.factors[0].value((0,)) == 0.8
    text = "semiring bool-maxmin\nvariable A {f, t}\nfactor A\nt : 1\n"
    assert parse_network(text).factors[0].table == {(1,): 1}


def test_cpt_check_flags_bad_columns():
    bad = RAIN.replace("on, yes : 0.75", "on, yes : 0.5")
    assert check_cpts(parse_network(bad)) != []


def test_bif_import():
    model = parse_bif(BIF)
    assert [v.name for v in model.variables] == ["A", "B", "C"]
    assert len(model.factors) == 3
    assert check_cpts(model) == []
    # table order: last parent fastest, child values innermost
    c = model.factors[2]
    cfg = c.domain.config({"A": "yes", "B": "off", "C": "lo"})
    assert c.value(cfg) == Q("0.5")
    cfg = c.domain.config({"A": "no", "B": "on", "C": "hi"})
    assert c.value(cfg) == Q("0.4")
    assert solve_exact(model.factors, ["A"]) == parse_network(RAIN).factors[0]


def test_bif_arity_error():
    with pytest.raises(ModelParseError):
        parse_bif(BIF.replace("table 0.8, 0.2;", "table 0.8;"))


def test_load_model_by_suffix(tmp_path):
    (tmp_path / "m.bif").write_text(BIF)
    (tmp_path / "m.net").write_text(RAIN)
    (tmp_path / "m.dnf").write_text("(x & y)\n")
    assert len(load_model(tmp_path / "m.bif").factors) == 3
    assert len(load_model(tmp_path / "m.net").factors) == 2
    assert load_model(tmp_path / "m.dnf").semiring is BOOL_MAXMIN


def test_dnf_examples():
    model = parse_dnf("(x ∧ y)\n")
    assert model.factors[0].domain.names == ("x", "y")
    assert model.factors[0].table == {(1, 1): 1}
    taut = parse_dnf("x ∨ ¬x\n")
    assert taut.factors[0].table == {(0,): 1, (1,): 1}
    words = parse_dnf("(a and not b) or (c)\n")
    assert words.factors[0].table == parse_dnf("(a & ~b) | (c)").factors[0].table


def test_dnf_three_variables_two_clauses():
    model = parse_dnf("(x & y) | (~z)\n(x) | (z)\n")
    truth = {}
    for x, y, z in product((0, 1), repeat=3):
        if ((x and y) or not z) and (x or z):
            truth[(x,)] = 1
    assert solve_exact(model.factors, ["x"]).table == truth


@pytest.mark.parametrize("text", ["(x & 3)", "(x + y)", "x -> y", "((x))", "(x & )", "x y"])
def test_dnf_rejects_non_propositional(text):
    with pytest.raises(ModelParseError):
        parse_dnf(text)


def test_dnf_round_trip():
    rng = random.Random(5)
    for _ in range(20):
        model = parse_dnf(random_dnf(rng))
        assert parse_dnf(serialize_dnf(model)) == model


def test_child_standin_shape():
    model = child_standin()
    assert len(model.variables) == 20 and len(model.factors) == 20
    assert check_cpts(model) == []
    assert model == generate_child_standin()


@pytest.mark.parametrize("name", CHILD_SUBNETWORK)
def test_child_subnetwork_against_dense_oracle(name):
    sub = child_standin().subnetwork(CHILD_SUBNETWORK)
    assert len(sub.factors) == 10
    got = solve_exact(sub.factors, [name])
    assert got.table == oracle.brute_force_marginal(sub.factors, [name])
    # ancestrally closed: marginals of the sub-network match the full network
    assert got == solve_exact(child_standin().factors, [name])
    assert got.mass() == 1


def test_two_coins_bundle():
    model = two_coins()
    assert solve_exact(model.factors, ["coin1"]).table == {(0,): Q("0.6"), (1,): Q("0.4")}
