"""Error traces for anytime runs."""
from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass
from fractions import Fraction

from .clock import BudgetClock, WallClock
from .engine import InferenceSession
from .jointree import build
from .potential import Potential

TRACE_HEADER = ("step", "budget", "cumulative_budget", "attempts", "epsilon", "entries")


@dataclass
class ErrorTracePoint:
    step: int
    budget: object          # int cost units, "unlimited", or seconds for wall-clock runs
    cumulative_budget: int  # attempts spent so far
    attempts: int
    epsilon: float
    entries: int
    estimated: bool = False
    seconds: float = 0.0


def _total(phi: Potential) -> Fraction:
    return sum((Fraction(v) for _, v in phi.entries), Fraction(0))


def epsilon_measured(partial: Potential, exact: Potential) -> Fraction:
    """One minus the ratio of accumulated to exact total mass."""
    if partial.domain != exact.domain:
        raise ValueError(f"domains differ: {partial.domain} vs {exact.domain}")
    total = _total(exact)
    if total == 0:
        raise ZeroDivisionError("exact valuation has zero total mass")
    return 1 - _total(partial) / total


def epsilon_model(t, m: int, omega: int, c: float = 1.0, n: int = 2) -> float:
    """Uniform-weight error estimate ``1 - min(1, t / (m**omega * c * (n - 1)))``."""
    full = (m ** omega) * c * (n - 1)
    if full <= 0:
        return 0.0 if t > 0 else 1.0
    return 1.0 - min(1.0, t / full)


def parse_schedule(text: str) -> list:
    """``"0,10,100,+unlimited"`` -> ``[0, 10, 100, None]``."""
    out = []
    for part in text.replace("|", ",").split(","):
        part = part.strip().lstrip("+")
        if not part:
            continue
        if part.lower() in ("unlimited", "inf", "infinity"):
            out.append(None)
        else:
            value = float(part)
            if value < 0:
                raise ValueError(f"negative budget {part!r}")
            out.append(value)
    if not out:
        raise ValueError("empty schedule")
    return out


@dataclass
class QuerySpec:
    target: list
    budget_schedule: list
    wall_clock: bool = False

    def __post_init__(self):
        if not self.budget_schedule:
            raise ValueError("budget schedule must be nonempty")


def run_anytime(knowledgebase, spec: QuerySpec, exact: Potential | None = None,
                estimate: dict | None = None):
    """Run ``inward`` then ``refine`` over the schedule; returns (points, session).

    ``exact`` gives the measured epsilon; without it ``estimate`` (keys ``m``,
    ``omega``, ``c``, ``n``) feeds the model-based estimate.
    """
    session = InferenceSession(build(knowledgebase, spec.target))
    points = []
    spent = 0
    for step, budget in enumerate(spec.budget_schedule):
        if spec.wall_clock and budget is not None:
            clock = WallClock(float(budget))
        else:
            clock = BudgetClock(None if budget is None else int(budget))
        start = time.perf_counter()
        root = session.inward(clock) if step == 0 else session.refine(clock)
        elapsed = time.perf_counter() - start
        attempts = session.step_log[-1].attempts
        spent += attempts
        if exact is not None:
            eps, estimated = float(epsilon_measured(root, exact)), False
        else:
            eps, estimated = epsilon_model(spent, **estimate), True
        label = "unlimited" if budget is None else (budget if spec.wall_clock else int(budget))
        points.append(ErrorTracePoint(step, label, spent, attempts, eps, len(root),
                                      estimated, elapsed))
    return points, session


def trace_csv(points) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TRACE_HEADER)
    for p in points:
        writer.writerow([p.step, p.budget, p.cumulative_budget, p.attempts,
                         f"{p.epsilon:.9f}", p.entries])
    return buf.getvalue()
