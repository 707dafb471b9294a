"""Budget clocks.

The canonical clock counts cost units, one unit per INSERT attempt (one
pairwise multiplication of compatible entries). ``WallClock`` adapts the same
interface to a deadline for interactive use; nothing reproducible should run
on it.
"""
from __future__ import annotations

import math
import time


def _normalize(budget):
    if budget is None or budget == math.inf:
        return None
    budget = int(budget)
    if budget < 0:
        raise ValueError(f"budget must be nonnegative, got {budget}")
    return budget


class BudgetClock:
    """Deterministic countdown of cost units. ``None`` means unlimited."""

    def __init__(self, budget=None):
        self.budget = _normalize(budget)
        self.used = 0

    @property
    def unlimited(self) -> bool:
        return self.budget is None

    @property
    def remaining(self):
        if self.budget is None:
            return math.inf
        return self.budget - self.used

    def timer(self):
        return self.remaining

    def running(self) -> bool:
        return self.remaining > 0

    def affords(self, cost: int) -> bool:
        return cost <= self.remaining

    def spend(self, cost: int):
        if cost > self.remaining:
            raise RuntimeError(f"overspent clock: cost {cost}, remaining {self.remaining}")
        self.used += cost

    def split(self, share: int) -> "BudgetClock":
        """Sub-clock holding ``remaining // share`` units (integer division)."""
        if self.budget is None:
            return BudgetClock(None)
        return BudgetClock(self.remaining // share)

    def absorb(self, child: "BudgetClock"):
        self.spend(child.used)

    def __repr__(self):
        budget = "unlimited" if self.budget is None else self.budget
        return f"BudgetClock(budget={budget}, used={self.used})"


class WallClock(BudgetClock):
    """Deadline-based clock; cost units are counted but never refused."""

    def __init__(self, seconds, _deadline=None):
        super().__init__(None)
        self.seconds = seconds
        self.deadline = _deadline if _deadline is not None else time.monotonic() + seconds

    @property
    def remaining(self):
        return max(0.0, self.deadline - time.monotonic())

    def affords(self, cost):
        return self.remaining > 0

    def spend(self, cost):
        self.used += cost

    def split(self, share):
        now = time.monotonic()
        slice_ = max(0.0, self.deadline - now) / share
        return WallClock(slice_, _deadline=now + slice_)

    def absorb(self, child):
        self.used += child.used
