from fractions import Fraction

import pytest

from anytime_inference.potential import Domain, Potential, Variable
from anytime_inference.semiring import ARITH_RATIONAL


def Q(text) -> Fraction:
    return Fraction(str(text))


def pot(variables, rows, semiring=ARITH_RATIONAL):
    """``rows`` maps label tuples (or single labels) to values; decimals become rationals."""
    dom = Domain.of(list(variables))
    if semiring is ARITH_RATIONAL:
        rows = {k: Q(v) for k, v in dict(rows).items()}
    return Potential.from_labels(dom, rows, semiring)


@pytest.fixture
def x():
    return Variable("x", ("0", "1"))


@pytest.fixture
def y():
    return Variable("y", ("0", "1"))
