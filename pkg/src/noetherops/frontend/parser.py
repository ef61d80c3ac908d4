"""Text grammar for polynomials and differential operators.

::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := ("+" | "-") unary | power
    power   := atom (("^" | "**") INTEGER)?
    atom    := NUMBER | IDENT | "(" expr ")"

Numbers are integers or decimals (read exactly).  Juxtaposition such as
``2x`` is rejected.  In operators an identifier ``d<name>`` stands for the
derivative in the variable ``<name>``; coefficients are written to the left
and the parsed expression is read in commutative normal form.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ContextMismatch, ParseError
from ..polyring import Polynomial, VariableRing, WeylOperator
from ..scalars import QQ, RationalFunctionField

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<num>\d+(?:\.\d*)?|\.\d+)|(?P<id>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[-+*/^()])"
)


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind, self.text, self.line, self.col = kind, text, line, col


def tokenize(text):
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "ws":
            chunk = m.group()
            nl = chunk.count("\n")
            if nl:
                line += nl
                line_start = pos + chunk.rfind("\n") + 1
        else:
            tokens.append(_Token(kind, m.group(), line, col))
        pos = m.end()
    tokens.append(_Token("end", "", line, pos - line_start + 1))
    return tokens


def identifiers(text):
    """Identifiers in order of first appearance."""
    seen = []
    for tok in tokenize(text):
        if tok.kind == "id" and tok.text not in seen:
            seen.append(tok.text)
    return seen


class _Frac:
    """``num / den`` with ``num`` and ``den`` polynomials of a working ring."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        self.num, self.den = num, den

    def __add__(self, o):
        if self.den == o.den:
            return _Frac(self.num + o.num, self.den)
        return _Frac(self.num * o.den + o.num * self.den, self.den * o.den)

    def __sub__(self, o):
        return self + (-o)

    def __neg__(self):
        return _Frac(-self.num, self.den)

    def __mul__(self, o):
        return _Frac(self.num * o.num, self.den * o.den)


class _Parser:
    def __init__(self, text, ring: VariableRing, dsymbols, divisible):
        self.tokens = tokenize(text)
        self.i = 0
        self.ring = ring
        self.dsymbols = dsymbols
        self.divisible = divisible  # predicate on a polynomial allowed as a divisor

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, tok.line, tok.col)

    def parse(self):
        if self.peek().kind == "end":
            raise self.error("empty expression")
        value = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            if tok.kind in ("num", "id") or tok.text == "(":
                raise self.error("implicit multiplication is not allowed; use '*'")
            raise self.error(f"unexpected {tok.text!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek().text in ("+", "-"):
            op = self.take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek().text in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op.text == "*":
                value = value * rhs
            else:
                if rhs.num.is_zero():
                    raise self.error("division by zero", op)
                if not (rhs.den.is_constant() and self.divisible(rhs.num)):
                    raise self.error("division is only allowed by constants or coefficient-field elements", op)
                value = _Frac(value.num * rhs.den, value.den * rhs.num)
        return value

    def unary(self):
        tok = self.peek()
        if tok.text == "-":
            self.take()
            return -self.unary()
        if tok.text == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().text in ("^", "**"):
            self.take()
            tok = self.take()
            if tok.kind != "num" or not tok.text.isdigit():
                raise self.error("exponent must be a non-negative integer", tok)
            n = int(tok.text)
            return _Frac(base.num**n, base.den**n)
        return base

    def atom(self):
        tok = self.take()
        one = self.ring.one()
        if tok.kind == "num":
            return _Frac(self.ring.constant(Fraction(tok.text)), one)
        if tok.kind == "id":
            if tok.text in self.ring.index:
                return _Frac(self.ring.gen(tok.text), one)
            raise self.error(f"unknown variable {tok.text!r}", tok)
        if tok.text == "(":
            value = self.expr()
            close = self.take()
            if close.text != ")":
                raise self.error("expected ')'", close)
            return value
        if tok.kind == "end":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected {tok.text!r}", tok)


def parse_polynomial(text: str, ring: VariableRing) -> Polynomial:
    """Parse a polynomial with rational coefficients over ``ring``."""
    if ring.field != QQ:
        raise ContextMismatch("polynomials are parsed over QQ")
    p = _Parser(text, ring, {}, lambda f: f.is_constant())
    value = p.parse()
    return value.num.scale(QQ.inv(value.den.constant_term()))


def _dsymbol_map(ring, dvars):
    out = {}
    for v in dvars:
        sym = "d" + v
        if sym in ring.index:
            raise ContextMismatch(f"derivative symbol {sym} clashes with a variable")
        out[sym] = v
    return out


def parse_operator(text: str, ring: VariableRing, dvars=None, independent=None) -> WeylOperator:
    """Parse a differential operator.

    Parameters
    ----------
    ring : VariableRing
        Polynomial ring over ``QQ`` naming every variable.
    dvars : sequence of str, optional
        Variables whose derivatives may appear (default: all variables not in
        ``independent``).
    independent : sequence of str, optional
        Variables forming the coefficient field.  When given and nonempty,
        the operator is returned over ``QQ(independent)[dependent]``.
        Denominators may only involve these variables; if omitted, they are
        inferred from the denominators that occur.
    """
    names = ring.names
    if dvars is None:
        dvars = [v for v in names if v not in set(independent or ())]
    dvars = list(dvars)
    dmap = _dsymbol_map(ring, dvars)
    work = VariableRing(tuple(names) + tuple(dmap), QQ)
    nvars = ring.nvars
    allowed = None if independent is None else {work.index[v] for v in independent}

    def divisible(f):
        for e in f.terms:
            if any(e[nvars:]):
                return False
            if allowed is not None and any(k and i not in allowed for i, k in enumerate(e[:nvars])):
                return False
        return True

    value = _Parser(text, work, dmap, divisible).parse()
    if independent is None:
        used = value.den.support_variables()
        independent = [v for v in names if v in used]
    independent = [v for v in names if v in set(independent)]
    dependent = [v for v in names if v not in independent]
    for v in dvars:
        if v in independent:
            raise ContextMismatch(f"cannot differentiate in the independent variable {v}")
    dpos = [work.index["d" + v] for v in dvars]
    buckets = {}
    for e, c in value.num.terms.items():
        a = tuple(e[p] for p in dpos)
        buckets.setdefault(a, {})[e[:nvars]] = c
    if not independent:
        den = value.den.constant_term()
        terms = {a: Polynomial(ring, {e: c / den for e, c in t.items()}) for a, t in buckets.items()}
        return WeylOperator(ring, dvars, terms)
    F = RationalFunctionField(independent)
    S = VariableRing(dependent, F, display_names=names)
    den_poly = Polynomial(ring, {e[:nvars]: c for e, c in value.den.terms.items()})
    den = S.convert(den_poly)
    if not den.is_constant():
        raise ParseError("denominators may only involve independent variables")
    inv = F.inv(den.constant_term())
    terms = {a: S.convert(Polynomial(ring, t)).scale(inv) for a, t in buckets.items()}
    return WeylOperator(S, dvars, terms)
