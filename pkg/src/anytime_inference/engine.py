"""Anytime inward propagation and refinement over a binary join tree.

Each internal node ``n`` caches the split of its children's messages: ``tau``
is the part already multiplied into ``phi(n)``, ``tbar`` the part known but
not multiplied yet. ``phi(n) == tau_L x tau_R`` holds after every call. New
message mass produced by a refinement at ``n`` is parked in ``tbar_self(n)``
and moved into the parent's ``tbar`` when the parent is refined.

Budgets are cost units (INSERT attempts). A pass hands node ``n`` the share
``remaining // s`` where ``s`` counts the internal nodes still to visit; what a
node leaves unspent stays on the clock for the nodes after it.
"""
from __future__ import annotations

import copy
import json
import logging
from dataclasses import dataclass

from .clock import BudgetClock
from .errors import EngineStateError
from .jointree import BinaryJoinTree, build
from .potential import (Potential, combine_budgeted, combine_k, complement, compose,
                        eliminate, leq, refine_cross, truncate)

log = logging.getLogger(__name__)


@dataclass
class NodeCache:
    phi: Potential | None = None
    phi_s: Potential | None = None
    tau_L: Potential | None = None
    tau_R: Potential | None = None
    tbar_L: Potential | None = None
    tbar_R: Potential | None = None
    tbar_self: Potential | None = None
    processed: bool = False


@dataclass
class StepRecord:
    kind: str
    budget: int | None
    attempts: int
    root: Potential

    def as_dict(self) -> dict:
        return {
            "call": self.kind,
            "budget": "unlimited" if self.budget is None else self.budget,
            "attempts": self.attempts,
            "root_entries": len(self.root),
            "root": self.root.to_text(),
        }


def _as_clock(budget):
    if isinstance(budget, BudgetClock):
        return budget
    return BudgetClock(budget)


class InferenceSession:
    """One inference run over a tree: ``inward`` (or ``inward_approx``), then ``refine``s."""

    def __init__(self, tree: BinaryJoinTree):
        if tree is None:
            raise EngineStateError("session needs a built join tree")
        self.tree = tree
        self.caches = {n.id: NodeCache() for n in tree.nodes}
        self.order: list = []
        self.step_log: list = []
        self.attempts = 0
        self.started = False

    @classmethod
    def from_problem(cls, knowledgebase, query) -> "InferenceSession":
        return cls(build(knowledgebase, query))

    @property
    def knowledgebase(self) -> list:
        return [self.tree.nodes[i].valuation for i in self.tree.leaves]

    @property
    def semiring(self):
        return self.tree.nodes[0].valuation.semiring

    # ------------------------------------------------------------------

    def _init_leaves(self):
        for nid in self.tree.leaves:
            node = self.tree.nodes[nid]
            cache = self.caches[nid]
            cache.phi = node.valuation
            cache.phi_s = eliminate(node.valuation, self.tree.delta(nid))
            cache.tbar_self = Potential.zero(cache.phi_s.domain, cache.phi_s.semiring)
            cache.processed = True

    def _inward(self, kind, budget, combiner):
        if self.started:
            raise EngineStateError("inward already ran on this session")
        self.started = True
        clock = _as_clock(budget)
        self._init_leaves()
        processed = set(self.tree.leaves)
        s = len(self.tree.internal)
        while True:
            ready = self.tree.ready(processed)
            if not ready:
                break
            nid = ready[0]
            node = self.tree.nodes[nid]
            cache = self.caches[nid]
            left, right = self.caches[node.left].phi_s, self.caches[node.right].phi_s
            phi, k1, k2 = combiner(left, right, clock, s)
            cache.phi = phi
            cache.tau_L, cache.tbar_L = truncate(left, k1), complement(left, k1)
            cache.tau_R, cache.tbar_R = truncate(right, k2), complement(right, k2)
            cache.phi_s = eliminate(phi, self.tree.delta(nid))
            cache.tbar_self = Potential.zero(cache.phi_s.domain, phi.semiring)
            cache.processed = True
            processed.add(nid)
            self.order.append(nid)
            s -= 1
        return self._record(kind, clock.budget, clock.used)

    def inward(self, budget=None) -> Potential:
        """Budgeted inward pass; ``budget=None`` is unlimited."""

        def combiner(left, right, clock, s):
            node_clock = clock.split(s)
            out = combine_budgeted(left, right, node_clock)
            clock.absorb(node_clock)
            return out

        return self._inward("inward", budget, combiner)

    def inward_approx(self, k: int) -> Potential:
        """Inward pass keeping at most ``k`` entries per node product."""

        def combiner(left, right, clock, s):
            return combine_k(left, right, k, clock)

        root = self._inward("inward_approx", None, combiner)
        self.step_log[-1].budget = k
        return root

    def refine(self, budget=None) -> Potential:
        if not self.started:
            raise EngineStateError("refine called before inward")
        clock = _as_clock(budget)
        s = len(self.order)
        for nid in self.order:
            node = self.tree.nodes[nid]
            c = self.caches[nid]
            for side, child in (("L", node.left), ("R", node.right)):
                child_cache = self.caches[child]
                if child_cache.tbar_self.entries:
                    tbar = getattr(c, "tbar_" + side)
                    setattr(c, "tbar_" + side, compose(tbar, child_cache.tbar_self))
                    child_cache.tbar_self = Potential.zero(child_cache.tbar_self.domain,
                                                           child_cache.tbar_self.semiring)
            node_clock = clock.split(s)
            nu, k1, k2 = refine_cross(c.tau_L, c.tbar_L, c.tau_R, c.tbar_R, node_clock)
            clock.absorb(node_clock)
            c.tau_L = compose(c.tau_L, truncate(c.tbar_L, k1))
            c.tau_R = compose(c.tau_R, truncate(c.tbar_R, k2))
            c.tbar_L = complement(c.tbar_L, k1)
            c.tbar_R = complement(c.tbar_R, k2)
            if nu.entries:
                c.phi = compose(c.phi, nu)
                delta = self.tree.delta(nid)
                c.tbar_self = compose(c.tbar_self, eliminate(nu, delta))
                c.phi_s = eliminate(c.phi, delta)
            s -= 1
        return self._record("refine", clock.budget, clock.used)

    # ------------------------------------------------------------------

    def _record(self, kind, budget, used) -> Potential:
        self.attempts += used
        root = self.root_message()
        self.step_log.append(StepRecord(kind, budget, used, root))
        log.debug("%s budget=%s attempts=%d root entries=%d", kind, budget, used, len(root))
        return root

    def root_message(self) -> Potential:
        if not self.started:
            raise EngineStateError("no pass has run yet")
        return self.caches[self.tree.root].phi_s

    def trace_lines(self) -> list:
        return [json.dumps(r.as_dict()) for r in self.step_log]

    def is_exact(self) -> bool:
        """True when every cache has nothing left to combine."""
        if not self.started:
            return False
        for nid in self.order:
            c = self.caches[nid]
            if c.tbar_L.entries or c.tbar_R.entries:
                return False
        return not any(self.caches[n].tbar_self.entries
                       for n in self.tree.leaves + self.order if n != self.tree.root)

    def check_caches(self) -> bool:
        """``phi(n) == tau_L x tau_R`` and each child's known message is complete."""
        from .potential import combine
        for nid in self.order:
            node = self.tree.nodes[nid]
            c = self.caches[nid]
            if combine(c.tau_L, c.tau_R) != c.phi:
                return False
            if c.phi_s != eliminate(c.phi, self.tree.delta(nid)):
                return False
            for tau, tbar, child in ((c.tau_L, c.tbar_L, node.left),
                                     (c.tau_R, c.tbar_R, node.right)):
                known = compose(compose(tau, tbar), self.caches[child].tbar_self)
                if known != self.caches[child].phi_s:
                    return False
        return True

    def next_update_costs(self) -> dict:
        """Per internal node, the cost of the first step that would grow ``phi(n)``.

        Pending child mass is taken into account; nodes with nothing left to
        combine map to ``None``.
        """
        from .potential import JoinPlan, _Traversal
        out = {}
        for nid in self.order:
            node = self.tree.nodes[nid]
            c = self.caches[nid]
            tbar_L = compose(c.tbar_L, self.caches[node.left].tbar_self)
            tbar_R = compose(c.tbar_R, self.caches[node.right].tbar_self)
            plan = JoinPlan(c.tau_L.domain, c.tau_R.domain)
            walk = _Traversal(c.tau_L.entries + tbar_L.entries, c.tau_R.entries + tbar_R.entries,
                              plan, c.phi.semiring, len(c.tau_L), len(c.tau_R))
            cost = None
            while True:
                step = walk._next_step()
                if step is None:
                    break
                cost = walk._cost(step)
                if cost > 0:
                    break
                walk._advance(step)
                cost = None
            out[nid] = cost
        return out

    def update_cost(self, limit=None):
        """Smallest refine budget that strictly grows the root message.

        Found by dry runs on copies of this session. ``None`` when no budget
        changes the root (the root is already exact).
        """
        before = self.root_message()
        trial = copy.deepcopy(self)
        after = trial.refine(None)
        if after == before:
            return None
        if limit is None:
            # every node's share covers its whole unlimited cost at this budget
            limit = max(1, len(self.order)) * trial.step_log[-1].attempts + 1
        for budget in range(1, limit + 1):
            trial = copy.deepcopy(self)
            if trial.refine(budget) != before:
                return budget
        return None


def solve_exact(knowledgebase, query) -> Potential:
    session = InferenceSession.from_problem(knowledgebase, query)
    return session.inward(None)


def is_monotone_chain(snapshots) -> bool:
    return all(leq(a, b) for a, b in zip(snapshots, snapshots[1:]))
