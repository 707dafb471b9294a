"""Dense brute-force reference computations.

Everything here enumerates full configuration spaces with ``itertools.product``
and reads potentials only through ``Potential.value``. None of the sparse
machinery (joins, traversal, ordering) is used, so results can serve as an
independent check on it. Desk-scale only.
"""
from __future__ import annotations

from itertools import product

from .potential import Domain, Potential


def assignments(domain: Domain):
    """All configurations of ``domain`` as name -> index dicts."""
    names = domain.names
    for combo in product(*(range(v.size) for v in domain)):
        yield dict(zip(names, combo))


def lookup(phi: Potential, assignment: dict):
    return phi.value(tuple(assignment[n] for n in phi.domain.names))


def dense(phi: Potential) -> dict:
    """Full table including zeros."""
    return {tuple(a[n] for n in phi.domain.names): lookup(phi, a)
            for a in assignments(phi.domain)}


def _sparse(table: dict, zero) -> dict:
    return {c: v for c, v in table.items() if v != zero}


def dense_combine(phi: Potential, psi: Potential) -> dict:
    sr = phi.semiring
    union = phi.domain.union(psi.domain)
    out = {}
    for a in assignments(union):
        out[tuple(a[n] for n in union.names)] = sr.times(lookup(phi, a), lookup(psi, a))
    return _sparse(out, sr.zero)


def dense_project(phi: Potential, target: Domain) -> dict:
    sr = phi.semiring
    out = {tuple(a[n] for n in target.names): sr.zero for a in assignments(target)}
    for a in assignments(phi.domain):
        key = tuple(a[n] for n in target.names)
        out[key] = sr.plus(out[key], lookup(phi, a))
    return _sparse(out, sr.zero)


def brute_force_marginal(knowledgebase, query) -> dict:
    """``(phi_1 x ... x phi_r)`` projected to ``query``, by full joint enumeration."""
    sr = knowledgebase[0].semiring
    joint = Domain(tuple(v for p in knowledgebase for v in p.domain))
    names = [q.name if hasattr(q, "name") else q for q in query]
    names = sorted(names)
    out = {}
    for a in assignments(joint):
        value = None
        for p in knowledgebase:
            f = lookup(p, a)
            value = f if value is None else sr.times(value, f)
        key = tuple(a[n] for n in names)
        out[key] = sr.plus(out[key], value) if key in out else value
    return _sparse(out, sr.zero)


def matches(phi: Potential, table: dict, rel_tol: float = 0.0) -> bool:
    """Compare a potential with a sparse oracle table (exactly, or to ``rel_tol``)."""
    if rel_tol == 0.0:
        return phi.table == table
    keys = set(phi.table) | set(table)
    for k in keys:
        a, b = float(phi.table.get(k, 0)), float(table.get(k, 0))
        if abs(a - b) > rel_tol * max(abs(a), abs(b)):
            return False
    return True
