"""Reading and writing inference problems.

Network format (``.net``), UTF-8, LF line endings, ``#`` starts a comment::

    semiring arith-rational
    variable Rain {no, yes}
    variable Wet {dry, wet}

    cpt Rain
    no : 4/5
    yes : 1/5

    cpt Wet | Rain
    dry, no : 9/10
    wet, no : 1/10
    dry, yes : 1/5
    wet, yes : 4/5

A block header is ``factor V1 V2 ...`` or ``cpt Child | Parent1 Parent2 ...``;
every following ``labels : value`` row lists frame labels in the header's
variable order (child first for ``cpt``). Rows not listed are zero. Values
are decimals or ``p/q`` fractions, parsed exactly unless the semiring is
``arith-float``.

DNF format (``.dnf``): one formula per line, each a disjunction of
parenthesized conjunctions of literals, e.g. ``(x & ~y) | (z)``. ``∧ ∨ ¬``,
``!`` and the words ``and or not`` are accepted too. Every line becomes one
max-min potential over its variables. ``#`` starts a comment.

``.bif`` files in the common Bayesian interchange text format are imported
through ``parse_bif``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path

from .errors import ModelParseError
from .potential import Domain, Potential, Variable
from .semiring import ARITH_RATIONAL, BOOL_MAXMIN, Semiring, get_semiring


@dataclass
class NetworkModel:
    variables: list
    factors: list
    semiring: Semiring = ARITH_RATIONAL
    # per factor: ("factor", names) or ("cpt", (child, *parents))
    headers: list = field(default_factory=list)

    def variable(self, name) -> Variable:
        for v in self.variables:
            if v.name == name:
                return v
        raise KeyError(name)

    @property
    def variable_map(self) -> dict:
        return {v.name: v for v in self.variables}

    def with_semiring(self, semiring: Semiring) -> "NetworkModel":
        factors = [Potential.from_mapping(p.domain, {c: semiring.coerce(v) for c, v in p.entries},
                                          semiring) for p in self.factors]
        return NetworkModel(list(self.variables), factors, semiring, list(self.headers))

    def subnetwork(self, names) -> "NetworkModel":
        """Factors whose variables all lie in ``names`` (e.g. an ancestral set)."""
        keep = set(names)
        pairs = [(p, h) for p, h in zip(self.factors, self.headers)
                 if set(p.domain.names) <= keep]
        return NetworkModel([v for v in self.variables if v.name in keep],
                            [p for p, _ in pairs], self.semiring, [h for _, h in pairs])

    def __eq__(self, other):
        return (isinstance(other, NetworkModel) and self.variables == other.variables
                and self.semiring == other.semiring and self.headers == other.headers
                and all(a.same_list(b) for a, b in zip(self.factors, other.factors))
                and len(self.factors) == len(other.factors))


def check_cpts(model: NetworkModel, tol: float = 1e-9) -> list:
    """Advisory: conditional tables whose child column does not sum to 1."""
    problems = []
    for p, (kind, names) in zip(model.factors, model.headers):
        if kind != "cpt":
            continue
        child, parents = names[0], names[1:]
        parent_vars = [model.variable(n) for n in parents]
        for combo in product(*(range(v.size) for v in parent_vars)):
            fixed = dict(zip(parents, combo))
            total = 0
            for c, v in p.entries:
                if all(c[p.domain.position(n)] == i for n, i in fixed.items()):
                    total += float(v)
            if abs(total - 1.0) > tol:
                labels = ",".join(model.variable(n).frame[i] for n, i in fixed.items())
                problems.append(f"P({child} | {labels or '-'}) sums to {total}")
    return problems


# ---------------------------------------------------------------------------
# .net format

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.\-]*$")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def _check_name(name, lineno, line):
    if not _NAME.match(name):
        raise ModelParseError(f"bad identifier {name!r}", lineno, line.find(name) + 1)
    return name


def parse_network(text: str) -> NetworkModel:
    semiring = ARITH_RATIONAL
    variables: dict = {}
    order: list = []
    factors, headers = [], []
    block = None  # (kind, names, domain, rows, start line)

    def close():
        nonlocal block
        if block is None:
            return
        kind, names, domain, rows, start = block
        factors.append(Potential.from_mapping(domain, rows, semiring))
        headers.append((kind, tuple(names)))
        block = None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line.strip():
            continue
        head, _, rest = line.strip().partition(" ")
        if head == "semiring":
            if factors or block:
                raise ModelParseError("semiring must precede factors", lineno, 1)
            try:
                semiring = get_semiring(rest.strip())
            except KeyError as e:
                raise ModelParseError(str(e), lineno, len(head) + 2) from None
        elif head == "variable":
            close()
            m = re.match(r"\s*(\S+)\s*\{(.*)\}\s*$", rest)
            if not m:
                raise ModelParseError("expected 'variable NAME {label, ...}'", lineno, 1)
            name = _check_name(m.group(1), lineno, raw)
            labels = [s.strip() for s in m.group(2).split(",") if s.strip()]
            if name in variables:
                raise ModelParseError(f"variable {name!r} declared twice", lineno, 10)
            try:
                variables[name] = Variable(name, tuple(labels))
            except ValueError as e:
                raise ModelParseError(str(e), lineno, 1) from None
            order.append(name)
        elif head in ("factor", "cpt"):
            close()
            if head == "cpt":
                child, bar, parents = rest.partition("|")
                names = child.split() + parents.split()
                if len(child.split()) != 1:
                    raise ModelParseError("cpt header needs exactly one child", lineno, 5)
            else:
                names = rest.split()
            for n in names:
                if n not in variables:
                    raise ModelParseError(f"undeclared variable {n!r}", lineno,
                                          raw.find(n) + 1)
            if len(set(names)) != len(names):
                raise ModelParseError("repeated variable in header", lineno, 1)
            domain = Domain.of([variables[n] for n in names])
            block = (head, names, domain, {}, lineno)
        elif ":" in line:
            if block is None:
                raise ModelParseError("row outside a factor block", lineno, 1)
            kind, names, domain, rows, _ = block
            left, _, right = line.partition(":")
            labels = [] if left.strip() in ("", "()") else [s.strip() for s in left.split(",")]
            if len(labels) != len(names):
                raise ModelParseError(
                    f"{kind} arity mismatch: expected {len(names)} labels, got {len(labels)}",
                    lineno, 1)
            index = []
            for n, lab in zip(names, labels):
                frame = variables[n].frame
                if lab not in frame:
                    raise ModelParseError(f"{lab!r} is not a value of {n}", lineno,
                                          raw.find(lab) + 1)
                index.append((n, frame.index(lab)))
            config = tuple(i for _, i in sorted(index))
            if config in rows:
                raise ModelParseError("duplicate row", lineno, 1)
            try:
                rows[config] = semiring.parse_value(right.strip())
            except (ValueError, ZeroDivisionError) as e:
                raise ModelParseError(f"bad value: {e}", lineno, line.index(":") + 2) from None
        else:
            raise ModelParseError(f"unexpected {head!r}", lineno, raw.find(head) + 1)
    close()
    return NetworkModel([variables[n] for n in order], factors, semiring, headers)


def serialize_network(model: NetworkModel) -> str:
    out = [f"semiring {model.semiring.name}"]
    for v in model.variables:
        out.append(f"variable {v.name} {{{', '.join(v.frame)}}}")
    fmt = model.semiring.format_value
    for p, (kind, names) in zip(model.factors, model.headers):
        out.append("")
        if kind == "cpt":
            parents = " ".join(names[1:])
            out.append(f"cpt {names[0]}" + (f" | {parents}" if parents else ""))
        else:
            out.append("factor " + " ".join(names))
        positions = [p.domain.position(n) for n in names]
        for config, value in p.entries:
            labels = ", ".join(p.domain.variables[i].frame[config[i]] for i in positions)
            out.append(f"{labels or '()'} : {fmt(value)}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Bayesian interchange format


def parse_bif(text: str, semiring: Semiring = ARITH_RATIONAL) -> NetworkModel:
    """Import a ``.bif`` network.

    ``table`` lists run over parent configurations with the last parent
    varying fastest and, within each, the child's values in frame order.
    """
    body = re.sub(r"//[^\n]*", "", text)
    variables = {}
    order = []
    for m in re.finditer(r"variable\s+([^\s{]+)\s*\{\s*type\s+discrete\s*\[\s*(\d+)\s*\]\s*"
                         r"\{([^}]*)\}\s*;", body):
        name = m.group(1)
        labels = [s.strip() for s in m.group(3).split(",") if s.strip()]
        if len(labels) != int(m.group(2)):
            raise ModelParseError(f"variable {name}: declared {m.group(2)} states, "
                                  f"listed {len(labels)}", _line_of(body, m.start()))
        variables[name] = Variable(name, tuple(labels))
        order.append(name)
    factors, headers = [], []
    for m in re.finditer(r"probability\s*\(\s*([^)|]+?)\s*(?:\|\s*([^)]*?))?\s*\)\s*\{(.*?)\}",
                         body, re.S):
        child = m.group(1).strip()
        parents = [s.strip() for s in (m.group(2) or "").split(",") if s.strip()]
        for n in [child] + parents:
            if n not in variables:
                raise ModelParseError(f"undeclared variable {n!r}", _line_of(body, m.start()))
        names = [child] + parents
        domain = Domain.of([variables[n] for n in names])
        block = m.group(3)
        rows = {}
        child_var = variables[child]

        def put(parent_labels, values, where):
            if len(values) != child_var.size:
                raise ModelParseError(f"cpt arity mismatch for {child}: expected "
                                      f"{child_var.size} values, got {len(values)}", where)
            for lab, val in zip(child_var.frame, values):
                assignment = dict(zip(parents, parent_labels))
                assignment[child] = lab
                config = domain.config(assignment)
                value = semiring.parse_value(val)
                if value != semiring.zero:
                    rows[config] = value

        table = re.search(r"table\s+([^;]*);", block)
        if table:
            values = [s.strip() for s in table.group(1).split(",") if s.strip()]
            combos = list(product(*(variables[p].frame for p in parents)))
            need = len(combos) * child_var.size
            if len(values) != need:
                raise ModelParseError(f"cpt arity mismatch for {child}: expected {need} "
                                      f"values, got {len(values)}", _line_of(body, m.start()))
            for n, combo in enumerate(combos):
                put(combo, values[n * child_var.size:(n + 1) * child_var.size],
                    _line_of(body, m.start()))
        for row in re.finditer(r"\(([^)]*)\)\s*([^;]*);", block):
            labels = [s.strip() for s in row.group(1).split(",")]
            values = [s.strip() for s in row.group(2).split(",") if s.strip()]
            if len(labels) != len(parents):
                raise ModelParseError(f"cpt arity mismatch for {child}: expected "
                                      f"{len(parents)} parent values", _line_of(body, m.start()))
            put(labels, values, _line_of(body, m.start()))
        factors.append(Potential.from_mapping(domain, rows, semiring))
        headers.append(("cpt", tuple(names)))
    return NetworkModel([variables[n] for n in order], factors, semiring, headers)


def _line_of(text, offset):
    return text.count("\n", 0, offset) + 1


# ---------------------------------------------------------------------------
# DNF

_TOKEN = re.compile(r"\s*(?:(?P<lpar>\()|(?P<rpar>\))|(?P<and>&&?|∧|\band\b)|"
                    r"(?P<or>\|\|?|∨|\bor\b)|(?P<not>~|!|¬|\bnot\b)|"
                    r"(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<bad>\S))")

BINARY = ("0", "1")


def _tokens(line, lineno):
    pos = 0
    out = []
    while pos < len(line):
        m = _TOKEN.match(line, pos)
        if m is None:
            break
        kind = m.lastgroup
        if kind == "bad":
            raise ModelParseError(f"non-propositional token {m.group(kind)!r}",
                                  lineno, m.start(kind) + 1)
        out.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    return out


def _parse_dnf_line(line, lineno):
    """Return a list of terms; each term is a list of (name, polarity)."""
    terms, current = [], []
    depth = 0
    expect_literal = True
    negate = False
    for kind, text, col in _tokens(line, lineno):
        if kind == "lpar":
            if depth or current:
                raise ModelParseError("nested parentheses are not DNF", lineno, col)
            depth = 1
        elif kind == "rpar":
            if not depth or expect_literal:
                raise ModelParseError("unbalanced ')'", lineno, col)
            depth = 0
        elif kind == "not":
            if not expect_literal:
                raise ModelParseError("misplaced negation", lineno, col)
            negate = not negate
        elif kind == "name":
            if not expect_literal:
                raise ModelParseError(f"expected an operator before {text!r}", lineno, col)
            current.append((text, not negate))
            negate = False
            expect_literal = False
        elif kind == "and":
            if expect_literal:
                raise ModelParseError("dangling conjunction", lineno, col)
            expect_literal = True
        elif kind == "or":
            if expect_literal or depth:
                raise ModelParseError("disjunction inside a term", lineno, col)
            terms.append(current)
            current = []
            expect_literal = True
    if expect_literal or depth:
        raise ModelParseError("incomplete formula", lineno, len(line) + 1)
    terms.append(current)
    return terms


def parse_dnf(text: str) -> NetworkModel:
    variables: dict = {}
    factors, headers = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw).strip()
        if not line:
            continue
        terms = _parse_dnf_line(line, lineno)
        names = []
        for term in terms:
            for name, _ in term:
                if name not in variables:
                    variables[name] = Variable(name, BINARY)
                if name not in names:
                    names.append(name)
        domain = Domain.of([variables[n] for n in names])
        rows = {}
        for config in product((0, 1), repeat=len(domain)):
            truth = dict(zip(domain.names, config))
            if any(all(truth[n] == int(pol) for n, pol in term) for term in terms):
                rows[config] = 1
        factors.append(Potential.from_mapping(domain, rows, BOOL_MAXMIN))
        headers.append(("factor", tuple(names)))
    ordered = [variables[n] for n in variables]
    return NetworkModel(ordered, factors, BOOL_MAXMIN, headers)


def serialize_dnf(model: NetworkModel) -> str:
    """Write each factor as the disjunction of its satisfying minterms."""
    lines = []
    for p, (_, names) in zip(model.factors, model.headers):
        def literal(name, config):
            return ("" if config[p.domain.position(name)] else "~") + name
        if p.entries:
            terms = ["(" + " & ".join(literal(n, c) for n in names) + ")" for c, _ in p.entries]
        else:
            terms = ["(" + " & ".join([names[0], "~" + names[0]] + list(names[1:])) + ")"]
        lines.append(" | ".join(terms))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------


def parse_model(text: str, fmt: str = "net") -> NetworkModel:
    parsers = {"net": parse_network, "bif": parse_bif, "dnf": parse_dnf}
    try:
        parser = parsers[fmt]
    except KeyError:
        raise ValueError(f"unknown model format {fmt!r}") from None
    return parser(text)


def load_model(path) -> NetworkModel:
    path = Path(path)
    fmt = path.suffix.lstrip(".").lower() or "net"
    return parse_model(path.read_text(encoding="utf-8"), fmt)
