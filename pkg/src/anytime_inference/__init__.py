"""Anytime inference for semiring-induced valuation algebras on binary join trees."""
from .clock import BudgetClock, WallClock
from .engine import InferenceSession, solve_exact
from .errors import (DomainError, EngineStateError, ModelParseError, SemiringMismatchError,
                     UnknownVariableError, ValuationError)
from .jointree import BinaryJoinTree, build
from .potential import (Domain, Potential, Variable, combine, combine_budgeted, combine_k,
                        complement, compose, eliminate, label, leq, project, refine_cross,
                        truncate)
from .semiring import ARITH_FLOAT, ARITH_RATIONAL, BOOL_MAXMIN, Semiring, get_semiring

__version__ = "0.1.0"
