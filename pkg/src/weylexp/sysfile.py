"""Line-oriented system files.

::

    # Martinet
    dim 3
    weights 1 1 3
    field X1 = d1
    field X2 = d2 + x1^2*d3
    subst 1 1 ; 0 1          # optional, u = T x on the degenerate variables
    chart                    # optional, repeatable
    pair 1 4
    pair 0 5
    b 0

A field expression is a polynomial in ``x1..xn`` and ``d1..dn`` in which
every term contains exactly one ``d``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import InputError, ParseError
from .exponents import IndexPairSet
from .nsw import VectorFieldSystem
from .polyalg import DilationWeights, Poly, VectorField, format_poly

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))")


class _ExprParser:
    """Recursive descent over ``+ - * / ^`` and parentheses.

    Variables ``x<i>`` map to slot i-1, ``d<j>`` to slot n+j-1.
    """

    def __init__(self, text: str, n: int, line: int, offset: int):
        self.text, self.n, self.line, self.offset = text, n, line, offset
        self.toks = []
        pos = 0
        while pos < len(text):
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos == len(text):
                break
            m = _TOKEN.match(text, pos)
            if not m:
                self.fail(f"unexpected character {text[pos]!r}", pos)
            kind = m.lastgroup
            start = m.start(kind)
            self.toks.append((kind, m.group(kind), start))
            pos = m.end()
        self.i = 0

    def fail(self, msg, pos=None):
        if pos is None:
            pos = self.toks[self.i][2] if self.i < len(self.toks) else len(self.text)
        raise ParseError(msg, self.line, self.offset + pos + 1)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Poly:
        if not self.toks:
            self.fail("empty expression")
        p = self.sum()
        if self.i != len(self.toks):
            self.fail("unexpected token")
        return p

    def sum(self) -> Poly:
        p = self.product()
        while self.peek()[1] in ("+", "-"):
            _, op, _ = self.take()
            q = self.product()
            p = p + q if op == "+" else p - q
        return p

    def product(self) -> Poly:
        p = self.unary()
        while self.peek()[1] in ("*", "/"):
            _, op, pos = self.take()
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    self.fail("can only divide by a nonzero constant", pos)
                p = p / q.constant_term()
        return p

    def unary(self) -> Poly:
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                self.fail("exponent must be a non-negative integer", pos)
            return base ** int(val)
        return base

    def atom(self) -> Poly:
        kind, val, pos = self.take()
        nv = 2 * self.n
        if kind == "num":
            return Poly.const(nv, int(val))
        if kind == "name":
            m = re.fullmatch(r"([xd])(\d+)", val)
            if not m or not 1 <= int(m.group(2)) <= self.n:
                self.fail(f"unknown symbol {val!r}", pos)
            k = int(m.group(2)) - 1 + (self.n if m.group(1) == "d" else 0)
            return Poly.var(nv, k)
        if val == "(":
            p = self.sum()
            if self.take()[1] != ")":
                self.fail("missing ')'")
            return p
        self.fail("expected a number, variable or '('", pos)


def parse_field(expr: str, n: int, line: int = 1, offset: int = 0) -> VectorField:
    p = _ExprParser(expr, n, line, offset).parse()
    comps: dict[int, dict] = {}
    for e, c in p.items():
        xs, ds = e[:n], e[n:]
        if sum(ds) != 1:
            raise ParseError("every term needs exactly one derivative d<j>", line, offset + 1)
        j = ds.index(1)
        comps.setdefault(j, {})[xs] = c
    return VectorField(Poly(n, comps.get(j, {})) for j in range(n))


@dataclass
class SystemFile:
    path: str | None = None
    system: VectorFieldSystem | None = None
    subst: list[list[Fraction]] | None = None
    charts: list[IndexPairSet] = field(default_factory=list)

    def __eq__(self, other):
        if not isinstance(other, SystemFile):
            return NotImplemented
        return (self.system, self.subst, self.charts) == (other.system, other.subst, other.charts)


def _ints(words, line, what):
    try:
        return [int(w) for w in words]
    except ValueError:
        raise ParseError(f"{what} must be integers", line) from None


def _rational(w, line):
    try:
        return Fraction(w)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"invalid rational {w!r}", line) from None


def parse_system(text: str, path: str | None = None) -> SystemFile:
    n = None
    weights = None
    fields: list[tuple[str, VectorField, int]] = []
    subst = None
    charts: list[dict] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        head, _, rest = line.strip().partition(" ")
        rest = rest.strip()
        words = rest.split()
        if head == "dim":
            if len(words) != 1 or not words[0].isdigit() or int(words[0]) < 1:
                raise ParseError("dim takes one positive integer", lineno)
            n = int(words[0])
        elif head == "weights":
            if n is None:
                raise ParseError("weights before dim", lineno)
            vals = _ints(words, lineno, "weights")
            if len(vals) != n:
                raise ParseError(f"expected {n} weights, got {len(vals)}", lineno)
            weights = vals
        elif head == "field":
            if n is None:
                raise ParseError("field before dim", lineno)
            m = re.fullmatch(r"\s*([A-Za-z_]\w*)\s*=(.*)", rest)
            if not m:
                raise ParseError("expected 'field <name> = <expr>'", lineno)
            expr = m.group(2)
            offset = raw.index("=") + 1
            fields.append((m.group(1), parse_field(expr, n, lineno, offset), lineno))
        elif head == "subst":
            rows = [r.split() for r in rest.split(";")]
            subst = [[_rational(w, lineno) for w in r] for r in rows]
            if not subst or any(len(r) != len(subst) for r in subst):
                raise ParseError("subst must be a square matrix with rows separated by ';'", lineno)
        elif head == "chart":
            charts.append({"pairs": [], "b": None, "line": lineno})
        elif head in ("pair", "b"):
            if not charts:
                raise ParseError(f"'{head}' outside a chart block", lineno)
            vals = _ints(words, lineno, head)
            if head == "pair":
                if len(vals) < 2:
                    raise ParseError("pair needs a multi-index and s", lineno)
                charts[-1]["pairs"].append((tuple(vals[:-1]), vals[-1]))
            else:
                charts[-1]["b"] = vals
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, raw.index(head) + 1)

    system = None
    if fields or not charts:
        if n is None or weights is None:
            raise InputError("a system needs 'dim' and 'weights'")
        if not fields:
            raise InputError("no vector fields given")
        try:
            w = DilationWeights(weights)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        system = VectorFieldSystem(w, tuple(f for _, f, _ in fields), tuple(nm for nm, _, _ in fields))

    parsed_charts = []
    for ch in charts:
        try:
            parsed_charts.append(IndexPairSet(ch["pairs"], ch["b"]))
        except ValueError as exc:
            raise ParseError(str(exc), ch["line"]) from None
    return SystemFile(path, system, subst, parsed_charts)


def load_system(path) -> SystemFile:
    p = Path(path)
    return parse_system(p.read_text(), str(p))


def format_system(sf: SystemFile) -> str:
    """Normalised text; re-parses to an equal :class:`SystemFile`."""
    out = []
    s = sf.system
    if s is not None:
        out.append(f"dim {s.n}")
        out.append("weights " + " ".join(map(str, s.weights.alpha)))
        for name, f in zip(s.names, s.fields):
            terms = []
            for j, p in enumerate(f.coeffs):
                if p:
                    terms.append(f"({format_poly(p)})*d{j + 1}")
            out.append(f"field {name} = " + " + ".join(terms))
    if sf.subst is not None:
        out.append("subst " + " ; ".join(" ".join(str(v) for v in r) for r in sf.subst))
    for G in sf.charts:
        out.append("chart")
        for a, sv in G.pairs:
            out.append("pair " + " ".join(map(str, (*a, sv))))
        out.append("b " + " ".join(map(str, G.b)))
    return "\n".join(out) + "\n"
