"""Binary join trees.

Construction eliminates the non-query variables in min-fill order (ties broken
by variable name). The valuations holding the variable being eliminated are
fused pairwise into a left-leaning comb of binary nodes; whatever is left once
only query variables remain is fused the same way into the root. Node ids
follow construction order, so children always have smaller ids than parents.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from itertools import combinations

from .errors import UnknownVariableError
from .potential import Domain, Potential


@dataclass
class BJTNode:
    id: int
    kind: str                      # "leaf" or "internal"
    domain: Domain
    left: int | None = None
    right: int | None = None
    parent: int | None = None
    valuation: Potential | None = None

    @property
    def is_leaf(self) -> bool:
        return self.kind == "leaf"


@dataclass
class BinaryJoinTree:
    nodes: list
    root: int
    query: Domain
    bottom_up_order: list = field(default_factory=list)

    @property
    def leaves(self) -> list:
        return [n.id for n in self.nodes if n.is_leaf]

    @property
    def internal(self) -> list:
        return [n.id for n in self.nodes if not n.is_leaf]

    def edges(self) -> list:
        return [(n.parent, n.id) for n in self.nodes if n.parent is not None]

    def children(self, nid) -> tuple:
        node = self.nodes[nid]
        return () if node.is_leaf else (node.left, node.right)

    def ready(self, processed) -> list:
        """Unprocessed internal nodes whose children are both processed."""
        return [n.id for n in self.nodes
                if not n.is_leaf and n.id not in processed
                and n.left in processed and n.right in processed]

    def delta(self, nid) -> Domain:
        """Variables eliminated on the way from ``nid`` to its parent."""
        node = self.nodes[nid]
        if node.parent is None:
            return node.domain.difference(self.query)
        return node.domain.difference(self.nodes[node.parent].domain)

    def width(self) -> int:
        """Largest node domain size."""
        return max(len(n.domain) for n in self.nodes)

    def max_frame(self) -> int:
        return max((v.size for n in self.nodes for v in n.domain), default=1)

    def max_node_size(self) -> int:
        """Largest node configuration space."""
        return max(n.domain.size() for n in self.nodes)

    def outline(self) -> str:
        lines = []
        for n in self.nodes:
            kids = "" if n.is_leaf else f" children={n.left},{n.right}"
            parent = "-" if n.parent is None else n.parent
            lines.append(f"{n.id} {n.kind} {{{','.join(n.domain.names)}}} parent={parent}{kids}")
        lines.append(f"root={self.root} query={{{','.join(self.query.names)}}}")
        return "\n".join(lines) + "\n"

    def structural_hash(self) -> str:
        return hashlib.sha256(self.outline().encode()).hexdigest()

    def check_running_intersection(self) -> bool:
        """Each variable's nodes form a connected subtree."""
        names = {name for n in self.nodes for name in n.domain.names}
        for name in names:
            holding = {n.id for n in self.nodes if name in n.domain}
            # connected iff exactly one holding node has a non-holding (or no) parent
            tops = [nid for nid in holding if self.nodes[nid].parent not in holding]
            if len(tops) != 1:
                return False
        return True


def _fill_in(var, items, domains, eliminable):
    neighbours = set()
    for it in items:
        if var in domains[it]:
            neighbours |= domains[it]
    neighbours.discard(var)
    adjacent = set()
    for it in items:
        d = domains[it]
        for a, b in combinations(sorted(d), 2):
            adjacent.add((a, b))
    return sum(1 for a, b in combinations(sorted(neighbours), 2) if (a, b) not in adjacent)


def elimination_order(knowledgebase, query) -> list:
    """Min-fill order over the non-query variables."""
    domains = [set(p.domain.names) for p in knowledgebase]
    items = list(range(len(domains)))
    remaining = {n for d in domains for n in d} - set(query.names)
    order = []
    while remaining:
        best = min(sorted(remaining), key=lambda v: _fill_in(v, items, domains, remaining))
        order.append(best)
        bucket = [it for it in items if best in domains[it]]
        merged = set().union(*(domains[it] for it in bucket)) - {best}
        items = [it for it in items if it not in bucket]
        domains.append(merged)
        items.append(len(domains) - 1)
        remaining.discard(best)
    return order


def resolve_query(query, variables: dict) -> Domain:
    """Turn a Domain or an iterable of names/Variables into a Domain over ``variables``."""
    if isinstance(query, str):
        query = [q for q in query.split(",") if q]
    names = [q.name if hasattr(q, "name") else q for q in query]
    missing = [n for n in names if n not in variables]
    if missing:
        raise UnknownVariableError(f"query variables not in any valuation: {missing}")
    return Domain.of([variables[n] for n in names])


def build(knowledgebase, query) -> BinaryJoinTree:
    if not knowledgebase:
        raise ValueError("knowledgebase must hold at least one valuation")
    variables = {v.name: v for p in knowledgebase for v in p.domain}
    query = resolve_query(query, variables)

    nodes = []
    live = []          # (node id, live variable names) for unfused items
    for p in knowledgebase:
        nodes.append(BJTNode(len(nodes), "leaf", p.domain, valuation=p))
        live.append((nodes[-1].id, set(p.domain.names)))

    def fuse(bucket):
        acc_id, acc_live = bucket[0]
        for nid, names in bucket[1:]:
            joint = acc_live | names
            node = BJTNode(len(nodes), "internal",
                           Domain.of([variables[n] for n in joint]), left=acc_id, right=nid)
            nodes[acc_id].parent = node.id
            nodes[nid].parent = node.id
            nodes.append(node)
            acc_id, acc_live = node.id, joint
        return acc_id, set(acc_live)

    for var in elimination_order(knowledgebase, query):
        bucket = [it for it in live if var in it[1]]
        live = [it for it in live if var not in it[1]]
        nid, names = fuse(bucket)
        names.discard(var)
        live.append((nid, names))

    live.sort(key=lambda it: it[0])
    root, _ = fuse(live)
    tree = BinaryJoinTree(nodes=nodes, root=root, query=query)
    tree.bottom_up_order = [n.id for n in nodes if not n.is_leaf]
    return tree
