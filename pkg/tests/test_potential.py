import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anytime_inference import laws
from anytime_inference.clock import BudgetClock
from anytime_inference.errors import DomainError, SemiringMismatchError
from anytime_inference.potential import (Domain, Potential, Variable, combine, combine_budgeted,
                                         combine_k, complement, compose, eliminate, label, leq,
                                         project, refine_cross, truncate)
from anytime_inference.semiring import ARITH_FLOAT, ARITH_RATIONAL, BOOL_MAXMIN

from conftest import Q, pot

seeds = st.integers(0, 2**32 - 1)


@pytest.fixture
def coins(x, y):
    return pot([x], {"0": "0.6", "1": "0.4"}), pot([y], {"0": "0.5", "1": "0.5"})


@pytest.fixture
def abc():
    v = Variable("v", ("a", "b", "c"))
    return v, pot([v], {"a": "0.5", "b": "0.3", "c": "0.2"})


def test_label(x, y, coins):
    phi, psi = coins
    assert label(phi) == Domain.of([x])
    assert label(Potential.zero(Domain.of([x, y]), ARITH_RATIONAL)) == Domain.of([x, y])
    assert label(combine(phi, psi)) == Domain.of([x, y])


def test_combine_independent(x, y, coins):
    phi, psi = coins
    expected = pot([x, y], {("0", "0"): "0.30", ("0", "1"): "0.30",
                            ("1", "0"): "0.20", ("1", "1"): "0.20"})
    assert combine(phi, psi) == expected
    assert combine(phi, psi).same_list(expected)


def test_combine_with_zero_element(x, y, coins):
    phi, _ = coins
    n = Potential.zero(Domain.of([y]), ARITH_RATIONAL)
    assert combine(phi, n) == Potential.zero(Domain.of([x, y]), ARITH_RATIONAL)


def test_boolean_conjunction(x, y):
    models_x = pot([x], {"1": 1}, BOOL_MAXMIN)
    models_clause = pot([x, y], {("0", "0"): 1, ("0", "1"): 1, ("1", "1"): 1}, BOOL_MAXMIN)
    both = combine(models_x, models_clause)
    truth = {(a, b): 1 for a in (0, 1) for b in (0, 1) if a and (not a or b)}
    assert both.table == truth == {(1, 1): 1}


def test_combine_rejects_mixed_semirings(x, y):
    with pytest.raises(SemiringMismatchError):
        combine(pot([x], {"0": "1"}), pot([y], {"0": 1}, BOOL_MAXMIN))


def test_project_examples(x, y):
    joint = pot([x, y], {("0", "0"): "0.3", ("0", "1"): "0.3",
                         ("1", "0"): "0.2", ("1", "1"): "0.2"})
    assert project(joint, Domain.of([x])) == pot([x], {"0": "0.6", "1": "0.4"})
    assert project(joint, joint.domain) == joint
    total = project(joint, Domain.of([]))
    assert total.entries == (((), Fraction(1)),)
    assert eliminate(joint, Domain.of([y])) == project(joint, Domain.of([x]))


def test_project_outside_domain(x, y):
    with pytest.raises(DomainError):
        project(pot([x], {"0": "1"}), Domain.of([y]))


def test_project_zero_element(x, y):
    n = Potential.zero(Domain.of([x, y]), ARITH_RATIONAL)
    assert project(n, Domain.of([x])) == Potential.zero(Domain.of([x]), ARITH_RATIONAL)


def test_weight_order_and_truncation(abc):
    v, phi = abc
    assert [v.frame[c[0]] for c, _ in phi.entries] == ["a", "b", "c"]
    assert truncate(phi, 0) == Potential.zero(phi.domain, ARITH_RATIONAL)
    assert truncate(phi, 3).same_list(phi)
    assert truncate(phi, 2).same_list(pot([v], {"a": "0.5", "b": "0.3"}))
    assert truncate(phi, 10).same_list(phi)


def test_weight_ties_break_lexicographically():
    v = Variable("v", ("a", "b", "c"))
    phi = pot([v], {"c": "0.25", "a": "0.25", "b": "0.5"})
    assert [c[0] for c, _ in phi.entries] == [1, 0, 2]


def test_boolean_order_is_lexicographic(x, y):
    phi = pot([x, y], {("1", "0"): 1, ("0", "1"): 1}, BOOL_MAXMIN)
    assert [c for c, _ in phi.entries] == [(0, 1), (1, 0)]


def test_complement(abc):
    v, phi = abc
    assert complement(phi, 0).same_list(phi)
    assert complement(phi, 3) == Potential.zero(phi.domain, ARITH_RATIONAL)
    rest = complement(phi, 2)
    assert rest.same_list(pot([v], {"c": "0.2"}))
    assert compose(truncate(phi, 2), rest).same_list(phi)


def test_compose_examples(abc):
    v, _ = abc
    a, b = pot([v], {"a": "0.5"}), pot([v], {"b": "0.3"})
    assert compose(a, b).same_list(pot([v], {"a": "0.5", "b": "0.3"}))
    assert compose(a, Potential.zero(a.domain, ARITH_RATIONAL)).same_list(a)
    merged = compose(pot([v], {"a": "0.2"}), pot([v], {"a": "0.3", "b": "0.1"}))
    assert merged.same_list(pot([v], {"a": "0.5", "b": "0.1"}))
    assert leq(a, compose(a, b)) and leq(b, compose(a, b))


def test_compose_keeps_discovery_order(abc):
    v, _ = abc
    first = Potential.from_entries(Domain.of([v]), [((2,), Q("0.1"))], ARITH_RATIONAL)
    second = Potential.from_entries(Domain.of([v]), [((0,), Q("0.9")), ((2,), Q("0.1"))],
                                    ARITH_RATIONAL)
    out = compose(first, second)
    assert out.entries == (((2,), Q("0.2")), ((0,), Q("0.9")))


def test_compose_domain_mismatch(x, y):
    with pytest.raises(DomainError):
        compose(pot([x], {"0": "1"}), pot([y], {"0": "1"}))


def test_leq(x):
    small, big = pot([x], {"0": "0.2"}), pot([x], {"0": "0.5", "1": "0.1"})
    assert leq(small, big) and not leq(big, small)
    assert leq(Potential.zero(small.domain, ARITH_RATIONAL), small)


def test_budgeted_zero_and_unlimited(x, y, coins):
    phi, psi = coins
    assert combine_budgeted(phi, psi, BudgetClock(0)) == (
        Potential.zero(Domain.of([x, y]), ARITH_RATIONAL), 0, 0)
    assert combine_budgeted(phi, psi, BudgetClock(None)) == (combine(phi, psi), 2, 2)


def test_budgeted_single_attempt(x, y, coins):
    phi, psi = coins
    clock = BudgetClock(1)
    out, k1, k2 = combine_budgeted(phi, psi, clock)
    assert out == pot([x, y], {("0", "0"): "0.3"})
    assert (k1, k2) == (1, 1)
    assert clock.used == 1


def test_budgeted_never_overspends(coins):
    phi, psi = coins
    for t in range(6):
        clock = BudgetClock(t)
        out, k1, k2 = combine_budgeted(phi, psi, clock)
        assert clock.used <= t
        assert out == combine(truncate(phi, k1), truncate(psi, k2))


def test_budgeted_skips_incompatible_pairs(x, y):
    # only pairs agreeing on x cost anything
    phi = pot([x], {"0": "0.5", "1": "0.5"})
    psi = pot([x, y], {("0", "0"): "0.5", ("1", "1"): "0.5"})
    clock = BudgetClock(None)
    out, _, _ = combine_budgeted(phi, psi, clock)
    assert out == combine(phi, psi)
    assert clock.used == 2


def test_combine_k_examples(x, y, coins):
    phi, psi = coins
    exact = combine(phi, psi)
    assert combine_k(phi, psi, 0)[0] == Potential.zero(exact.domain, ARITH_RATIONAL)
    assert combine_k(phi, psi, 4)[0] == exact
    assert combine_k(phi, psi, 100)[0] == exact
    # the traversal reaches x0y0 first, then x0y1
    two, k1, k2 = combine_k(phi, psi, 2)
    assert two == pot([x, y], {("0", "0"): "0.3", ("0", "1"): "0.3"})
    assert two == combine_budgeted(phi, psi, BudgetClock(2))[0]
    assert (k1, k2) == (1, 2)


@given(seeds, st.integers(0, 12))
def test_combine_k_bound(seed, k):
    rng = random.Random(seed)
    from anytime_inference.generators import random_potential, random_subset, random_variables
    variables = random_variables(rng, 4, 3)
    phi = random_potential(rng, random_subset(rng, variables, 1, 3), ARITH_RATIONAL)
    psi = random_potential(rng, random_subset(rng, variables, 1, 3), ARITH_RATIONAL)
    clock = BudgetClock(None)
    out, k1, k2 = combine_k(phi, psi, k, clock)
    assert len(out) <= k
    assert clock.used <= k + 1
    assert out == combine(truncate(phi, k1), truncate(psi, k2))
    assert leq(out, combine(phi, psi))


def test_refine_cross_examples():
    a = Variable("a", ("a", "b"))
    c = Variable("c", ("c",))
    da, dc = Domain.of([a]), Domain.of([c])
    tau1 = Potential.from_entries(da, [((0,), Q("0.5"))], ARITH_RATIONAL)
    tbar1 = Potential.from_entries(da, [((1,), Q("0.5"))], ARITH_RATIONAL)
    tau2 = Potential.from_entries(dc, [((0,), Q(1))], ARITH_RATIONAL)
    n2 = Potential.zero(dc, ARITH_RATIONAL)
    nu, k1, k2 = refine_cross(tau1, tbar1, tau2, n2, BudgetClock(None))
    assert nu == pot([a, c], {("b", "c"): "0.5"})
    assert (k1, k2) == (1, 0)
    n1 = Potential.zero(da, ARITH_RATIONAL)
    assert refine_cross(tau1, n1, tau2, n2) == (Potential.zero(Domain.of([a, c]),
                                                               ARITH_RATIONAL), 0, 0)


def test_refine_cross_completes_product(coins):
    phi, psi = coins
    tau1, tbar1 = truncate(phi, 1), complement(phi, 1)
    tau2, tbar2 = truncate(psi, 1), complement(psi, 1)
    nu, _, _ = refine_cross(tau1, tbar1, tau2, tbar2, BudgetClock(None))
    assert compose(combine(tau1, tau2), nu) == combine(phi, psi)


def test_refine_cross_domain_mismatch(x, y):
    p = pot([x], {"0": "1"})
    with pytest.raises(DomainError):
        refine_cross(p, pot([y], {"0": "1"}), p, p)


def test_text_round_trip(x, y, coins):
    phi = combine(*coins)
    text = phi.to_text()
    assert text.splitlines()[0] == "potential arith-rational x,y"
    assert "0,0 : 3/10" in text
    back = Potential.from_text(text, {"x": x, "y": y})
    assert back.same_list(phi)
    empty = project(phi, Domain.of([]))
    assert empty.to_text() == "potential arith-rational\n() : 1/1\n"
    assert Potential.from_text(empty.to_text(), {}) == empty


def test_invariants_enforced(x):
    dom = Domain.of([x])
    with pytest.raises(DomainError):
        Potential.from_entries(dom, [((0,), Q(0))], ARITH_RATIONAL)
    with pytest.raises(DomainError):
        Potential.from_entries(dom, [((0,), Q(1)), ((0,), Q(1))], ARITH_RATIONAL)
    with pytest.raises(DomainError):
        Potential.from_entries(dom, [((2,), Q(1))], ARITH_RATIONAL)
    assert Potential.from_mapping(dom, {(0,): Q(0), (1,): Q(1)}, ARITH_RATIONAL).entries == (
        ((1,), Q(1)),)


# randomized law checks, one hypothesis example per drawn seed

@settings(max_examples=60, deadline=None)
@given(seeds, st.sampled_from([ARITH_RATIONAL, ARITH_FLOAT, BOOL_MAXMIN]))
def test_valuation_axioms(seed, semiring):
    assert laws.check_valuation_axioms(random.Random(seed), semiring) == []


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_ordered_axioms(seed):
    assert laws.check_ordered_axioms(random.Random(seed)) == []


@settings(max_examples=60, deadline=None)
@given(seeds, st.sampled_from([ARITH_RATIONAL, BOOL_MAXMIN]))
def test_budgeted_laws(seed, semiring):
    assert laws.check_budgeted_combination(random.Random(seed), semiring) == []


@settings(max_examples=60, deadline=None)
@given(seeds, st.sampled_from([ARITH_RATIONAL, BOOL_MAXMIN]))
def test_truncation_identities(seed, semiring):
    assert laws.check_truncation_identities(random.Random(seed), semiring) == []


@settings(max_examples=60, deadline=None)
@given(seeds, st.sampled_from([ARITH_RATIONAL, ARITH_FLOAT, BOOL_MAXMIN]))
def test_distributivity(seed, semiring):
    assert laws.check_distributivity(random.Random(seed), semiring) == []
