"""Randomized checks of the algebraic laws.

Each ``check_*`` function draws one random instance from ``rng`` and returns a
list of failure messages (empty when every law held). ``run_suite`` repeats a
check and collects the failures; it backs both the test suite and the
``validate`` command.
"""
from __future__ import annotations

import random
from fractions import Fraction

from . import oracle
from .clock import BudgetClock
from .generators import (random_knowledgebase, random_potential, random_split, random_subset,
                         random_variables)
from .potential import (Domain, Potential, combine, combine_budgeted, complement, compose,
                        eliminate, leq, project, refine_cross, truncate)
from .semiring import ARITH_FLOAT, ARITH_RATIONAL, BOOL_MAXMIN, Semiring

FLOAT_REL_TOL = 1e-9


def close(p: Potential, q: Potential, rel_tol: float = FLOAT_REL_TOL) -> bool:
    if p.domain != q.domain:
        return False
    if p.semiring.exact:
        return p == q
    return oracle.matches(p, q.table, rel_tol)


def _agrees(p: Potential, table: dict) -> bool:
    return oracle.matches(p, table, 0.0 if p.semiring.exact else FLOAT_REL_TOL)


def _three(rng, semiring, n_vars=4, max_frame=3, max_scope=3):
    variables = random_variables(rng, n_vars, max_frame)
    return variables, [random_potential(rng, random_subset(rng, variables, 0, max_scope), semiring)
                       for _ in range(3)]


def check_semiring_laws(rng: random.Random, semiring: Semiring) -> list:
    from .generators import random_value
    a, b, c = (random_value(rng, semiring) for _ in range(3))
    add, mul, zero = semiring.add, semiring.mul, semiring.zero
    fails = []
    if semiring.exact:
        if add(add(a, b), c) != add(a, add(b, c)):
            fails.append("+ associativity")
        if mul(mul(a, b), c) != mul(a, mul(b, c)):
            fails.append("* associativity")
        if mul(a, add(b, c)) != add(mul(a, b), mul(a, c)):
            fails.append("distributivity")
    if add(a, b) != add(b, a) or mul(a, b) != mul(b, a):
        fails.append("commutativity")
    if add(a, zero) != a or mul(a, zero) != zero:
        fails.append("zero")
    if semiring.positive and add(a, b) == zero and not (a == zero and b == zero):
        fails.append("positivity")
    if semiring.positive and semiring.cancellative and semiring.exact:
        if add(a, c) == add(b, c) and a != b:
            fails.append("cancellativity")
        if semiring.leq(a, b) and semiring.leq(b, a) and a != b:
            fails.append("antisymmetry")
    if not semiring.leq(a, add(a, b)):
        fails.append("a <= a + b")
    return fails


def check_valuation_axioms(rng: random.Random, semiring: Semiring) -> list:
    """A1-A6 on one random triple, against the dense oracle."""
    _, (phi, psi, chi) = _three(rng, semiring)
    fails = []
    phi_psi = combine(phi, psi)
    if not _agrees(phi_psi, oracle.dense_combine(phi, psi)):
        fails.append("combine disagrees with dense oracle")
    # A1
    if not close(phi_psi, combine(psi, phi)):
        fails.append("A1 commutativity")
    if not close(combine(phi_psi, chi), combine(phi, combine(psi, chi))):
        fails.append("A1 associativity")
    # A2
    if phi_psi.domain != phi.domain.union(psi.domain):
        fails.append("A2 labeling")
    # A3
    target = Domain.of(random_subset(rng, phi_psi.domain))
    down = project(phi_psi, target)
    if down.domain != target:
        fails.append("A3 projection domain")
    if not _agrees(down, oracle.dense_project(phi_psi, target)):
        fails.append("projection disagrees with dense oracle")
    if not close(down, eliminate(phi_psi, phi_psi.domain.difference(target))):
        fails.append("A3 projection as elimination")
    # A4
    outer = Domain.of(random_subset(rng, phi_psi.domain))
    inner = Domain.of(random_subset(rng, outer))
    if not close(project(project(phi_psi, outer), inner), project(phi_psi, inner)):
        fails.append("A4 transitivity")
    # A5
    x, y = phi.domain, psi.domain
    z = x.union(Domain.of(random_subset(rng, y.difference(x))))
    if not close(project(phi_psi, z), combine(phi, project(psi, z.intersection(y)))):
        fails.append("A5 combination")
    # A6
    if not close(project(phi, phi.domain), phi):
        fails.append("A6 domain")
    return fails


def _shrink(rng, phi: Potential) -> Potential:
    """A random potential below ``phi`` in the pointwise order."""
    sr = phi.semiring
    mapping = {}
    for x, v in phi.entries:
        r = rng.random()
        if r < 0.3:
            continue
        if r < 0.6 and sr.name == ARITH_RATIONAL.name:
            v = v * Fraction(rng.randint(1, 4), 5)
        mapping[x] = v
    return Potential.from_mapping(phi.domain, mapping, sr)


def check_ordered_axioms(rng: random.Random, semiring: Semiring = ARITH_RATIONAL) -> list:
    """A7-A10 on one random instance."""
    _, (phi, psi, _) = _three(rng, semiring)
    fails = []
    small_phi, small_psi = _shrink(rng, phi), _shrink(rng, psi)
    # A7: partial order on a fixed domain
    if not leq(phi, phi):
        fails.append("A7 reflexivity")
    if leq(small_phi, phi) and leq(phi, small_phi) and small_phi != phi:
        fails.append("A7 antisymmetry")
    other = random_potential(rng, phi.domain.variables, semiring)
    if leq(other, phi) and leq(phi, other) and other != phi:
        fails.append("A7 antisymmetry (independent pair)")
    tiny = _shrink(rng, small_phi)
    if not leq(tiny, phi):
        fails.append("A7 transitivity")
    # A8
    n1 = Potential.zero(phi.domain, semiring)
    n2 = Potential.zero(psi.domain, semiring)
    if combine(n1, n2) != Potential.zero(phi.domain.union(psi.domain), semiring):
        fails.append("A8 n x n")
    if combine(phi, n2) != Potential.zero(phi.domain.union(psi.domain), semiring):
        fails.append("A8 zero absorbs")
    sub = Domain.of(random_subset(rng, phi.domain))
    if project(n1, sub) != Potential.zero(sub, semiring):
        fails.append("A8 projection of n")
    if not leq(n1, phi):
        fails.append("A8 n is least")
    # A9, A10
    if not leq(combine(small_phi, small_psi), combine(phi, psi)):
        fails.append("A9 combination preserves order")
    if not leq(project(small_phi, sub), project(phi, sub)):
        fails.append("A10 marginalization preserves order")
    return fails


def check_budgeted_combination(rng: random.Random, semiring: Semiring = ARITH_RATIONAL) -> list:
    """R1-R4 and the truncation form of the budgeted product."""
    variables = random_variables(rng, 4, 3)
    phi1 = random_potential(rng, random_subset(rng, variables, 1, 3), semiring)
    phi2 = random_potential(rng, random_subset(rng, variables, 1, 3), semiring)
    exact = combine(phi1, phi2)
    fails = []
    zero, k1, k2 = combine_budgeted(phi1, phi2, BudgetClock(0))
    if zero != Potential.zero(exact.domain, semiring) or (k1, k2) != (0, 0):
        fails.append("R3 zero budget")
    full, k1, k2 = combine_budgeted(phi1, phi2, BudgetClock(None))
    if full != exact or (k1, k2) != (len(phi1), len(phi2)):
        fails.append("R4 unlimited budget")
    t = rng.randint(0, len(phi1) * len(phi2) + 1)
    t2 = t + rng.randint(1, 10)
    clock = BudgetClock(t)
    part, k1, k2 = combine_budgeted(phi1, phi2, clock)
    more, _, _ = combine_budgeted(phi1, phi2, BudgetClock(t2))
    if clock.used > t:
        fails.append("budget overspent")
    if not leq(part, exact):
        fails.append("R1 below exact")
    if not leq(part, more):
        fails.append("R2 monotone in budget")
    if part != combine(truncate(phi1, k1), truncate(phi2, k2)):
        fails.append("truncation form of budgeted product")
    return fails


def _random_enumeration(rng, semiring) -> Potential:
    """Random potential, either canonical or in a shuffled discovery order."""
    variables = random_variables(rng, 3, 3)
    phi = random_potential(rng, random_subset(rng, variables, 0, 3), semiring, zero_rate=0.1)
    if rng.random() < 0.4:
        return phi
    entries = list(phi.entries)
    rng.shuffle(entries)
    return Potential.from_entries(phi.domain, entries, semiring)


def check_truncation_identities(rng: random.Random, semiring: Semiring = ARITH_RATIONAL) -> list:
    phi = _random_enumeration(rng, semiring)
    k = rng.randint(0, len(phi) + 1)
    m = rng.randint(0, len(phi) + 1)
    fails = []
    if not complement(truncate(phi, k + m), k).same_list(truncate(complement(phi, k), m)):
        fails.append("T1")
    if not compose(truncate(phi, k), complement(phi, k)).same_list(phi):
        fails.append("T2")
    if not compose(truncate(phi, k), truncate(complement(phi, k), m)).same_list(
            truncate(phi, k + m)):
        fails.append("T3")
    if not complement(complement(phi, k), m).same_list(complement(phi, k + m)):
        fails.append("T4")
    return fails


def check_distributivity(rng: random.Random, semiring: Semiring = ARITH_RATIONAL) -> list:
    """P1 and P2 on random splits, plus the unlimited cross-term identity."""
    variables = random_variables(rng, 4, 3)
    phi1 = random_potential(rng, random_subset(rng, variables, 1, 3), semiring)
    phi2 = random_potential(rng, random_subset(rng, variables, 1, 3), semiring)
    a1, b1 = random_split(rng, phi1)
    a2, b2 = random_split(rng, phi2)
    fails = []
    lhs = combine(compose(a1, b1), compose(a2, b2))
    rhs = compose(compose(compose(combine(a1, a2), combine(a1, b2)), combine(b1, a2)),
                  combine(b1, b2))
    if not close(lhs, rhs):
        fails.append("P1")
    nu, _, _ = refine_cross(a1, b1, a2, b2, BudgetClock(None))
    if not close(compose(combine(a1, a2), nu), lhs):
        fails.append("P1 cross terms")
    target = Domain.of(random_subset(rng, phi1.domain))
    if not close(project(compose(a1, b1), target),
                 compose(project(a1, target), project(b1, target))):
        fails.append("P2")
    return fails


def check_engine_exact(rng: random.Random, semiring: Semiring = ARITH_RATIONAL) -> list:
    from .engine import InferenceSession, solve_exact
    kb, query = random_knowledgebase(rng, rng.randint(2, 5), 5, semiring=semiring)
    expected = oracle.brute_force_marginal(kb, query)
    fails = []
    if not _agrees(solve_exact(kb, query), expected):
        fails.append("solve_exact disagrees with brute force")
    session = InferenceSession.from_problem(kb, query)
    session.inward(rng.randint(0, 20))
    session.refine(rng.randint(0, 20))
    if not _agrees(session.refine(None), expected):
        fails.append("refine(unlimited) disagrees with brute force")
    return fails


SUITES = {
    "semiring": lambda rng: sum((check_semiring_laws(rng, s)
                                 for s in (ARITH_RATIONAL, ARITH_FLOAT, BOOL_MAXMIN)), []),
    "axioms": lambda rng: sum((check_valuation_axioms(rng, s)
                               for s in (ARITH_RATIONAL, ARITH_FLOAT, BOOL_MAXMIN)), []),
    "ordered": check_ordered_axioms,
    "budgeted": check_budgeted_combination,
    "truncation": check_truncation_identities,
    "distributivity": lambda rng: check_distributivity(rng) + check_distributivity(rng, BOOL_MAXMIN),
    "engine": check_engine_exact,
}


def run_suite(name: str, count: int, seed: int = 0) -> list:
    rng = random.Random(f"{name}:{seed}")
    check = SUITES[name]
    failures = []
    for i in range(count):
        failures.extend(f"{name}[{i}]: {msg}" for msg in check(rng))
    return failures
