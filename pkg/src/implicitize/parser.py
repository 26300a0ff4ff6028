"""Reader for polynomial input files.

One definition per line, ``name = expr``; ``#`` starts a comment.  An
expression uses integer literals, the variables of the ambient ring,
``+ - * / ^`` and parentheses.  Multiplication must be written explicitly,
``^`` takes a non-negative integer literal and ``/`` only divides by
nonzero constants.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import DegreeMismatch, NonHomogeneous, ParseError
from .ideal import Parametrization
from .poly import STU, MPoly, format_poly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^|\*\*|[-+*/()]))")
GENERATOR_NAMES = ("x", "y", "z", "w")


class _Parser:
    def __init__(self, text, variables, line=1, col0=0):
        self.text = text
        self.vars = tuple(variables)
        self.line = line
        self.col0 = col0
        self.toks = self._tokenize(text)
        self.pos = 0

    def _err(self, msg, col):
        raise ParseError(msg, line=self.line, column=self.col0 + col + 1)

    def _tokenize(self, text):
        toks = []
        i = 0
        while i < len(text):
            if text[i].isspace():
                i += 1
                continue
            m = _TOKEN.match(text, i)
            if not m:
                self._err(f"unexpected character {text[i]!r}", i)
            start = m.start(m.lastindex)
            if m.group(1):
                toks.append(("num", int(m.group(1)), start))
            elif m.group(2):
                toks.append(("name", m.group(2), start))
            else:
                op = m.group(3)
                if op == "**":
                    self._err("use '^' for powers", start)
                toks.append(("op", op, start))
            i = m.end()
        toks.append(("end", None, len(text)))
        return toks

    def peek(self):
        return self.toks[self.pos]

    def take(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> MPoly:
        if self.peek()[0] == "end":
            self._err("empty expression", 0)
        p = self.expr()
        kind, val, col = self.peek()
        if kind != "end":
            if kind in ("num", "name") or val == "(":
                self._err("implicit multiplication is not allowed; write '*'", col)
            self._err(f"unexpected {val!r}", col)
        return p

    def expr(self):
        p = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op, col = self.take()[1:]
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or not q:
                    self._err("division is only allowed by a nonzero constant", col)
                p = p.scale(Fraction(1) / Fraction(q.constant_value()))
        return p

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val in ("+", "-"):
            self.take()
            p = self.unary()
            return -p if val == "-" else p
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, val, col = self.take()
            if kind != "num":
                self._err("exponent must be a non-negative integer literal", col)
            base = base ** val
        return base

    def atom(self):
        kind, val, col = self.take()
        if kind == "num":
            return MPoly.const(self.vars, val)
        if kind == "name":
            if val not in self.vars:
                self._err(f"unknown variable {val!r} (expected one of {', '.join(self.vars)})", col)
            return MPoly.var(self.vars, val)
        if val == "(":
            p = self.expr()
            k2, v2, c2 = self.take()
            if v2 != ")":
                self._err("expected ')'", c2)
            return p
        if kind == "end":
            self._err("unexpected end of expression", col)
        self._err(f"unexpected {val!r}", col)


def parse_polynomial(text: str, variables=STU, line: int = 1, column_offset: int = 0) -> MPoly:
    return _Parser(text, variables, line, column_offset).parse()


def parse_definitions(text: str, variables=STU) -> dict:
    """Parse ``name = expr`` lines into an ordered dict of polynomials."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if "=" not in line:
            raise ParseError("expected 'name = expression'", line=lineno, column=1)
        lhs, rhs = line.split("=", 1)
        name = lhs.strip()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
            raise ParseError(f"invalid name {name!r}", line=lineno, column=1)
        if name in out:
            raise ParseError(f"{name} defined twice", line=lineno, column=1)
        out[name] = parse_polynomial(rhs, variables, lineno, len(lhs) + 1)
    return out


def parse_parametrization(text: str) -> Parametrization:
    defs = parse_definitions(text, STU)
    degrees = {}
    for name, p in defs.items():
        if not p:
            raise NonHomogeneous(f"{name} is zero", generator=name)
        d = p.homogeneous_degree()
        if d is None:
            raise NonHomogeneous(f"{name} = {format_poly(p)} is not homogeneous", generator=name)
        degrees[name] = d
    names = set(defs)
    if names != set(GENERATOR_NAMES):
        missing = [v for v in GENERATOR_NAMES if v not in names]
        extra = sorted(names - set(GENERATOR_NAMES))
        raise ParseError(f"need exactly x, y, z, w; missing {missing}, unexpected {extra}")
    if len(set(degrees.values())) != 1:
        raise DegreeMismatch(f"generators have different degrees {degrees}", degrees=degrees)
    return Parametrization(*(defs[v] for v in GENERATOR_NAMES))


def format_parametrization(param: Parametrization) -> str:
    return "".join(f"{name} = {format_poly(g)}\n" for name, g in zip(GENERATOR_NAMES, param.gens))
