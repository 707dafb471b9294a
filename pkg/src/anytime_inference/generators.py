"""Seeded random instances for property checks and experiments."""
from __future__ import annotations

import random
from fractions import Fraction

from .potential import Domain, Potential, Variable
from .semiring import ARITH_FLOAT, ARITH_RATIONAL, BOOL_MAXMIN, Semiring


def random_variables(rng: random.Random, count: int, max_frame: int = 3, prefix="v") -> list:
    return [Variable(f"{prefix}{i}", tuple(str(j) for j in range(rng.randint(1, max_frame))))
            for i in range(count)]


def random_value(rng: random.Random, semiring: Semiring):
    if semiring is BOOL_MAXMIN or semiring.name == BOOL_MAXMIN.name:
        return rng.randint(0, 1)
    num = rng.randint(0, 12)
    if semiring.name == ARITH_FLOAT.name:
        return num / rng.randint(1, 7)
    return Fraction(num, rng.randint(1, 7))


def random_potential(rng: random.Random, variables, semiring: Semiring,
                     zero_rate: float = 0.25) -> Potential:
    domain = Domain.of(list(variables))
    from .oracle import assignments
    mapping = {}
    for a in assignments(domain):
        if rng.random() < zero_rate:
            continue
        v = random_value(rng, semiring)
        if v != semiring.zero:
            mapping[tuple(a[n] for n in domain.names)] = v
    return Potential.from_mapping(domain, mapping, semiring)


def random_subset(rng: random.Random, items, min_size=0, max_size=None):
    items = list(items)
    max_size = len(items) if max_size is None else min(max_size, len(items))
    k = rng.randint(min(min_size, max_size), max_size)
    return sorted(rng.sample(items, k), key=lambda v: v.name)


def random_knowledgebase(rng: random.Random, n_factors: int, n_variables: int = 5,
                         max_frame: int = 3, max_scope: int = 3,
                         semiring: Semiring = ARITH_RATIONAL, zero_rate: float = 0.25):
    """Random knowledgebase plus a nonempty query over its variables."""
    variables = random_variables(rng, n_variables, max_frame)
    kb = [random_potential(rng, random_subset(rng, variables, 1, max_scope), semiring, zero_rate)
          for _ in range(n_factors)]
    used = sorted({v for p in kb for v in p.domain}, key=lambda v: v.name)
    query = random_subset(rng, used, 1, 2)
    return kb, query


def random_split(rng: random.Random, phi: Potential):
    """Split ``phi`` into two same-domain parts whose pointwise sum is ``phi``."""
    sr = phi.semiring
    a, b = {}, {}
    for x, v in phi.entries:
        r = rng.random()
        if r < 0.35:
            a[x] = v
        elif r < 0.7:
            b[x] = v
        elif sr.name == ARITH_RATIONAL.name:
            part = v * Fraction(rng.randint(1, 4), 5)
            a[x], b[x] = part, v - part
        elif sr.name == BOOL_MAXMIN.name:
            a[x] = b[x] = v
        else:
            a[x] = v
    return (Potential.from_mapping(phi.domain, a, sr),
            Potential.from_mapping(phi.domain, b, sr))


def random_dnf(rng: random.Random, n_variables: int = 6, n_groups: int = 2,
               max_terms: int = 3, max_literals: int = 3) -> str:
    """Random DNF text, one group per line."""
    names = [f"x{i}" for i in range(n_variables)]
    lines = []
    for _ in range(n_groups):
        terms = []
        for _ in range(rng.randint(1, max_terms)):
            chosen = rng.sample(names, rng.randint(1, min(max_literals, len(names))))
            lits = [("~" if rng.random() < 0.4 else "") + n for n in sorted(chosen)]
            terms.append("(" + " & ".join(lits) + ")")
        lines.append(" | ".join(terms))
    return "\n".join(lines) + "\n"
