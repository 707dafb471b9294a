"""Sparse semiring-induced valuations.

A ``Potential`` is a domain plus an ordered list of ``(configuration, value)``
entries holding only nonzero values. The list order is the enumeration that
``truncate`` and ``complement`` cut. Potentials produced by exact operations
are kept in canonical order (decreasing value, lexicographic tie-break, for
totally ordered semirings; lexicographic otherwise). Potentials grown with
``compose`` keep discovery order: new configurations are appended and
repeated ones are merged in place, so an existing prefix never moves.

Configurations are tuples of frame indices aligned with the domain's variable
order (variables sorted by name).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .clock import BudgetClock
from .errors import DomainError, SemiringMismatchError, UnknownVariableError
from .semiring import Semiring, get_semiring

CANONICAL = "canonical"
DISCOVERY = "discovery"


@dataclass(frozen=True)
class Variable:
    name: str
    frame: tuple

    def __post_init__(self):
        frame = tuple(str(label) for label in self.frame)
        if not frame:
            raise ValueError(f"variable {self.name!r} has an empty frame")
        if len(set(frame)) != len(frame):
            raise ValueError(f"variable {self.name!r} has duplicate frame labels")
        object.__setattr__(self, "frame", frame)

    @property
    def size(self) -> int:
        return len(self.frame)

    def index(self, label) -> int:
        try:
            return self.frame.index(str(label))
        except ValueError:
            raise UnknownVariableError(
                f"{label!r} is not in the frame of {self.name}") from None

    def __repr__(self):
        return f"Variable({self.name}, {list(self.frame)})"


@dataclass(frozen=True)
class Domain:
    """A set of variables held in canonical (name) order."""

    variables: tuple = ()

    def __post_init__(self):
        by_name = {}
        for v in self.variables:
            seen = by_name.get(v.name)
            if seen is not None and seen != v:
                raise DomainError(f"conflicting frames for variable {v.name!r}")
            by_name[v.name] = v
        object.__setattr__(self, "variables", tuple(by_name[n] for n in sorted(by_name)))

    @classmethod
    def of(cls, *variables) -> "Domain":
        if len(variables) == 1 and not isinstance(variables[0], Variable):
            variables = tuple(variables[0])
        return cls(tuple(variables))

    @property
    def names(self) -> tuple:
        return tuple(v.name for v in self.variables)

    def __iter__(self):
        return iter(self.variables)

    def __len__(self):
        return len(self.variables)

    def __contains__(self, item):
        name = item.name if isinstance(item, Variable) else item
        return name in self.names

    def __getitem__(self, name) -> Variable:
        for v in self.variables:
            if v.name == name:
                return v
        raise UnknownVariableError(f"variable {name!r} not in domain {self.names}")

    def position(self, name) -> int:
        return self.names.index(name)

    def union(self, other: "Domain") -> "Domain":
        return Domain(self.variables + other.variables)

    def intersection(self, other: "Domain") -> "Domain":
        names = set(other.names)
        return Domain(tuple(v for v in self.variables if v.name in names))

    def difference(self, other) -> "Domain":
        names = set(other.names if isinstance(other, Domain) else
                    (o.name if isinstance(o, Variable) else o for o in other))
        return Domain(tuple(v for v in self.variables if v.name not in names))

    def issubset(self, other: "Domain") -> bool:
        return set(self.names) <= set(other.names)

    def size(self) -> int:
        """Number of configurations, ``|Omega_D|`` (1 for the empty domain)."""
        out = 1
        for v in self.variables:
            out *= v.size
        return out

    def positions_in(self, other: "Domain") -> tuple:
        """Positions of this domain's variables inside ``other``."""
        return tuple(other.position(n) for n in self.names)

    def labels(self, config) -> tuple:
        return tuple(v.frame[i] for v, i in zip(self.variables, config))

    def config(self, labels) -> tuple:
        if isinstance(labels, dict):
            labels = [labels[n] for n in self.names]
        labels = list(labels)
        if len(labels) != len(self.variables):
            raise DomainError(f"expected {len(self.variables)} values, got {len(labels)}")
        return tuple(v.index(lab) for v, lab in zip(self.variables, labels))

    def __repr__(self):
        return "{" + ",".join(self.names) + "}"


def _getter(positions):
    positions = tuple(positions)
    if not positions:
        return lambda row: ()
    if len(positions) == 1:
        p = positions[0]
        return lambda row: (row[p],)
    return lambda row: tuple(row[p] for p in positions)


def canonical_entries(entries, semiring: Semiring):
    out = sorted(entries, key=lambda e: e[0])
    if semiring.totally_ordered:
        # stable: equal weights keep lexicographic order
        out.sort(key=lambda e: e[1], reverse=True)
    return out


class Potential:
    """Immutable sparse valuation."""

    __slots__ = ("domain", "entries", "semiring", "order", "_table")

    def __init__(self, domain: Domain, entries: Sequence, semiring: Semiring,
                 order: str = CANONICAL, validate: bool = False):
        self.domain = domain
        self.entries = tuple(entries)
        self.semiring = semiring
        self.order = order
        self._table = None
        if validate:
            self._validate()

    # construction -------------------------------------------------------

    @classmethod
    def zero(cls, domain: Domain, semiring: Semiring) -> "Potential":
        return cls(domain, (), semiring)

    @classmethod
    def from_mapping(cls, domain: Domain, mapping, semiring: Semiring) -> "Potential":
        """Build from ``{configuration: value}``; zero values are dropped."""
        entries = [(tuple(c), v) for c, v in dict(mapping).items()
                   if not semiring.is_zero(v)]
        for _, v in entries:
            semiring.check(v)
        return cls(domain, canonical_entries(entries, semiring), semiring, validate=True)

    @classmethod
    def from_labels(cls, domain: Domain, rows, semiring: Semiring) -> "Potential":
        """Build from ``{label tuple: value}`` or an iterable of pairs."""
        if isinstance(rows, dict):
            rows = rows.items()
        mapping = {}
        for labels, value in rows:
            if isinstance(labels, str):
                labels = (labels,)
            mapping[domain.config(labels)] = value
        return cls.from_mapping(domain, mapping, semiring)

    @classmethod
    def from_entries(cls, domain: Domain, entries, semiring: Semiring,
                     order: str = DISCOVERY) -> "Potential":
        """Keep the given list order (validated)."""
        entries = [(tuple(c), v) for c, v in entries]
        return cls(domain, entries, semiring, order=order, validate=True)

    def _validate(self):
        sizes = [v.size for v in self.domain]
        seen = set()
        for config, value in self.entries:
            if len(config) != len(sizes) or any(
                    not 0 <= i < s for i, s in zip(config, sizes)):
                raise DomainError(f"configuration {config} does not fit domain {self.domain}")
            if config in seen:
                raise DomainError(f"duplicate configuration {config}")
            seen.add(config)
            self.semiring.check(value)
            if self.semiring.is_zero(value):
                raise DomainError(f"zero value stored at {config}")

    # access -------------------------------------------------------------

    @property
    def table(self) -> dict:
        if self._table is None:
            self._table = dict(self.entries)
        return self._table

    def value(self, config):
        return self.table.get(tuple(config), self.semiring.zero)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def mass(self):
        """Semiring sum of all stored values."""
        total = self.semiring.zero
        for _, v in self.entries:
            total = self.semiring.plus(total, v)
        return total

    def label(self) -> Domain:
        return self.domain

    def __eq__(self, other):
        if not isinstance(other, Potential):
            return NotImplemented
        return (self.semiring == other.semiring and self.domain == other.domain
                and self.table == other.table)

    def __hash__(self):
        return hash((self.domain, frozenset(self.table.items())))

    def same_list(self, other: "Potential") -> bool:
        """Equality including enumeration order."""
        return (self.domain == other.domain and self.semiring == other.semiring
                and self.entries == other.entries)

    def with_order(self, order: str) -> "Potential":
        return Potential(self.domain, self.entries, self.semiring, order)

    def canonical(self) -> "Potential":
        return Potential(self.domain, canonical_entries(self.entries, self.semiring),
                         self.semiring)

    def __repr__(self):
        rows = ", ".join(f"{''.join(map(str, c)) or '<>'}:{v}" for c, v in self.entries[:6])
        more = "" if len(self.entries) <= 6 else f", ... ({len(self.entries)} entries)"
        return f"Potential({self.semiring.name}, {self.domain}, [{rows}{more}])"

    # text form ----------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"potential {self.semiring.name} {','.join(self.domain.names)}".rstrip()]
        fmt = self.semiring.format_value
        for config, value in self.entries:
            labels = ",".join(self.domain.labels(config)) or "()"
            lines.append(f"{labels} : {fmt(value)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, variables) -> "Potential":
        """Inverse of ``to_text``; ``variables`` maps names to ``Variable``."""
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        head = lines[0].split()
        if head[0] != "potential" or len(head) not in (2, 3):
            raise ValueError(f"bad potential header {lines[0]!r}")
        semiring = get_semiring(head[1])
        names = head[2].split(",") if len(head) == 3 else []
        domain = Domain.of([variables[n] for n in names])
        if list(domain.names) != names:
            raise ValueError("potential header must list variables in canonical order")
        entries = []
        for line in lines[1:]:
            left, _, right = line.partition(":")
            labels = [] if left.strip() == "()" else [s.strip() for s in left.split(",")]
            entries.append((domain.config(labels), semiring.parse_value(right)))
        return cls.from_entries(domain, entries, semiring)


# ---------------------------------------------------------------------------
# exact operations


def _same_semiring(*potentials) -> Semiring:
    first = potentials[0].semiring
    for p in potentials[1:]:
        if p.semiring != first:
            raise SemiringMismatchError(
                f"cannot mix semirings {first.name} and {p.semiring.name}")
    return first


def label(phi: Potential) -> Domain:
    return phi.domain


class JoinPlan:
    """Index arithmetic for joining configurations of two domains."""

    def __init__(self, left: Domain, right: Domain):
        self.left = left
        self.right = right
        self.union = left.union(right)
        sep = left.intersection(right)
        self.left_key = _getter(sep.positions_in(left))
        self.right_key = _getter(sep.positions_in(right))
        offset = len(left)
        idx = []
        for name in self.union.names:
            if name in left:
                idx.append(left.position(name))
            else:
                idx.append(offset + right.position(name))
        self._assemble = _getter(idx)

    def config(self, x, y):
        return self._assemble(x + y)


def combine(phi: Potential, psi: Potential) -> Potential:
    sr = _same_semiring(phi, psi)
    plan = JoinPlan(phi.domain, psi.domain)
    if not phi.entries or not psi.entries:
        return Potential.zero(plan.union, sr)
    index = {}
    for y, b in psi.entries:
        index.setdefault(plan.right_key(y), []).append((y, b))
    out = []
    times, zero = sr.times, sr.zero
    for x, a in phi.entries:
        for y, b in index.get(plan.left_key(x), ()):
            v = times(a, b)
            if v != zero:
                out.append((plan.config(x, y), v))
    return Potential(plan.union, canonical_entries(out, sr), sr)


def project(phi: Potential, target) -> Potential:
    """Marginalize ``phi`` onto ``target``, a subset of its domain."""
    if not isinstance(target, Domain):
        target = Domain.of([phi.domain[n] if isinstance(n, str) else n for n in target])
    if not target.issubset(phi.domain):
        raise DomainError(f"{target} is not a subset of {phi.domain}")
    target = phi.domain.intersection(target)
    sr = phi.semiring
    key = _getter(target.positions_in(phi.domain))
    sums = {}
    plus = sr.plus
    for z, v in phi.entries:
        x = key(z)
        if x in sums:
            sums[x] = plus(sums[x], v)
        else:
            sums[x] = v
    out = [(x, v) for x, v in sums.items() if v != sr.zero]
    return Potential(target, canonical_entries(out, sr), sr)


def eliminate(phi: Potential, variables) -> Potential:
    return project(phi, phi.domain.difference(variables))


def leq(smaller: Potential, larger: Potential) -> bool:
    """Pointwise canonical order on a common domain."""
    sr = _same_semiring(smaller, larger)
    if smaller.domain != larger.domain:
        return False
    table = larger.table
    return all(sr.leq(v, table.get(x, sr.zero)) for x, v in smaller.entries)


# ---------------------------------------------------------------------------
# list operations


def truncate(phi: Potential, k: int) -> Potential:
    """First ``k`` entries of the enumeration."""
    if k < 0:
        raise ValueError("split index must be nonnegative")
    return Potential(phi.domain, phi.entries[:k], phi.semiring, phi.order)


def complement(phi: Potential, k: int) -> Potential:
    """Entries after position ``k``; ``compose(truncate, complement)`` is ``phi``."""
    if k < 0:
        raise ValueError("split index must be nonnegative")
    return Potential(phi.domain, phi.entries[k:], phi.semiring, phi.order)


def compose(first: Potential, second: Potential) -> Potential:
    sr = _same_semiring(first, second)
    if first.domain != second.domain:
        raise DomainError(f"cannot compose {first.domain} with {second.domain}")
    if not second.entries:
        return first.with_order(DISCOVERY)
    merged = dict(first.entries)
    plus = sr.plus
    for x, v in second.entries:
        if x in merged:
            merged[x] = plus(merged[x], v)
        else:
            merged[x] = v
    out = [(x, v) for x, v in merged.items() if v != sr.zero]
    return Potential(first.domain, out, sr, DISCOVERY)


# ---------------------------------------------------------------------------
# budgeted traversal
#
# The product of two entry lists is built as a growing rectangle: the first
# ``i`` rows times the first ``j`` columns. Steps alternate between adding one
# column and adding one row; once one list is exhausted the other is swept.
# A step's cost is the number of compatible pairs it multiplies (pairs are
# found through an index on the shared variables, so incompatible pairs are
# never tried). A step runs only if the clock affords its whole cost, so the
# partial product is always exactly truncate(rows, i) x truncate(cols, j).


class _Traversal:

    def __init__(self, rows, cols, plan: JoinPlan, sr: Semiring, i0=0, j0=0):
        self.rows, self.cols = rows, cols
        self.plan, self.sr = plan, sr
        self.i, self.j = i0, j0
        self.i0, self.j0 = i0, j0
        self.row_index, self.col_index = {}, {}
        for p in range(i0):
            self.row_index.setdefault(plan.left_key(rows[p][0]), []).append(p)
        for q in range(j0):
            self.col_index.setdefault(plan.right_key(cols[q][0]), []).append(q)
        self.out = {}
        self.attempts = 0
        self._column_turn = True

    def _next_step(self):
        can_col = self.j < len(self.cols)
        can_row = self.i < len(self.rows)
        if can_col and can_row:
            return "col" if self._column_turn else "row"
        if can_col:
            return "col"
        if can_row:
            return "row"
        return None

    def _pairs(self, step):
        plan = self.plan
        if step == "col":
            y, b = self.cols[self.j]
            for p in self.row_index.get(plan.right_key(y), ()):
                x, a = self.rows[p]
                yield x, a, y, b
        else:
            x, a = self.rows[self.i]
            for q in self.col_index.get(plan.left_key(x), ()):
                y, b = self.cols[q]
                yield x, a, y, b

    def _cost(self, step):
        plan = self.plan
        if step == "col":
            return len(self.row_index.get(plan.right_key(self.cols[self.j][0]), ()))
        return len(self.col_index.get(plan.left_key(self.rows[self.i][0]), ()))

    def _advance(self, step):
        if step == "col":
            self.col_index.setdefault(self.plan.right_key(self.cols[self.j][0]), []).append(self.j)
            self.j += 1
        else:
            self.row_index.setdefault(self.plan.left_key(self.rows[self.i][0]), []).append(self.i)
            self.i += 1
        self._column_turn = not self._column_turn

    def run_budgeted(self, clock: BudgetClock):
        sr, out = self.sr, self.out
        while clock.running():
            step = self._next_step()
            if step is None:
                break
            cost = self._cost(step)
            if not clock.affords(cost):
                break
            for x, a, y, b in self._pairs(step):
                v = sr.times(a, b)
                if v != sr.zero:
                    xy = self.plan.config(x, y)
                    out[xy] = sr.plus(out[xy], v) if xy in out else v
            clock.spend(cost)
            self.attempts += cost
            self._advance(step)

    def run_bounded(self, k: int):
        sr, out = self.sr, self.out
        while True:
            step = self._next_step()
            if step is None:
                return
            staged = {}
            fresh = 0
            for x, a, y, b in self._pairs(step):
                self.attempts += 1
                v = sr.times(a, b)
                if v == sr.zero:
                    continue
                xy = self.plan.config(x, y)
                if xy in staged:
                    staged[xy] = sr.plus(staged[xy], v)
                    continue
                staged[xy] = v
                if xy not in out:
                    fresh += 1
                    if len(out) + fresh > k:
                        return
            for xy, v in staged.items():
                out[xy] = sr.plus(out[xy], v) if xy in out else v
            self._advance(step)

    def result(self) -> list:
        zero = self.sr.zero
        return [(x, v) for x, v in self.out.items() if v != zero]

    @property
    def split(self):
        return self.i - self.i0, self.j - self.j0


def combine_budgeted(phi1: Potential, phi2: Potential, clock=None):
    """Partial product within ``clock``; returns ``(product, k1, k2)``.

    The product equals ``combine(truncate(phi1, k1), truncate(phi2, k2))``.
    """
    sr = _same_semiring(phi1, phi2)
    clock = clock if clock is not None else BudgetClock(None)
    plan = JoinPlan(phi1.domain, phi2.domain)
    walk = _Traversal(phi1.entries, phi2.entries, plan, sr)
    walk.run_budgeted(clock)
    k1, k2 = walk.split
    return Potential(plan.union, canonical_entries(walk.result(), sr), sr), k1, k2


def combine_k(phi1: Potential, phi2: Potential, k: int, clock=None):
    """Partial product holding at most ``k`` entries; returns ``(product, k1, k2)``.

    ``clock`` (if given) only records attempts; it never stops the traversal.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    sr = _same_semiring(phi1, phi2)
    plan = JoinPlan(phi1.domain, phi2.domain)
    if k == 0:
        return Potential.zero(plan.union, sr), 0, 0
    walk = _Traversal(phi1.entries, phi2.entries, plan, sr)
    walk.run_bounded(k)
    if clock is not None:
        clock.spend(walk.attempts)
    k1, k2 = walk.split
    return Potential(plan.union, canonical_entries(walk.result(), sr), sr), k1, k2


def refine_cross(tau1: Potential, tbar1: Potential, tau2: Potential, tbar2: Potential,
                 clock=None):
    """Budgeted cross terms missing from ``tau1 x tau2``.

    Computes ``tau1*t2 + t1*tau2 + t1*t2`` with ``t1 = truncate(tbar1, k1)`` and
    ``t2 = truncate(tbar2, k2)``, where ``(k1, k2)`` is where the traversal of
    ``tau1 ++ tbar1`` by ``tau2 ++ tbar2`` stopped. Returns ``(nu, k1, k2)``.
    """
    sr = _same_semiring(tau1, tbar1, tau2, tbar2)
    if tau1.domain != tbar1.domain or tau2.domain != tbar2.domain:
        raise DomainError("partial and complementary valuations must share a domain")
    clock = clock if clock is not None else BudgetClock(None)
    plan = JoinPlan(tau1.domain, tau2.domain)
    if not tbar1.entries and not tbar2.entries:
        return Potential.zero(plan.union, sr), 0, 0
    rows = tau1.entries + tbar1.entries
    cols = tau2.entries + tbar2.entries
    walk = _Traversal(rows, cols, plan, sr, len(tau1), len(tau2))
    walk.run_budgeted(clock)
    k1, k2 = walk.split
    return Potential(plan.union, canonical_entries(walk.result(), sr), sr), k1, k2


def as_domain(variables: Iterable) -> Domain:
    return variables if isinstance(variables, Domain) else Domain.of(list(variables))
