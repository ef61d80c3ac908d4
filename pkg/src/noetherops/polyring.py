"""Sparse multivariate polynomials and Weyl-algebra operators.

A :class:`Polynomial` is a dictionary from exponent tuples to nonzero
coefficients of a :class:`~noetherops.scalars.FieldContext`.  A
:class:`WeylOperator` is a finite sum ``sum c_a * d^a`` with polynomial
coefficients written to the left of the derivatives; it acts on polynomials by
differentiation (``D • f``).
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

from .errors import ContextMismatch, DenominatorVanishes, DivisionByZero
from .scalars import (
    QQ,
    ApproxComplexField,
    RationalField,
    RationalFunctionField,
    _is_atomic_power,
    _render_sympy_poly,
    format_monomial,
)


class MonomialOrder:
    """A monomial order given by a sort key on exponent tuples.

    ``key(a) < key(b)`` means ``a`` precedes ``b``; the largest monomial of a
    polynomial is its leading monomial.
    """

    def __init__(self, kind: str):
        kind = kind.upper()
        if kind == "GREVLEX":
            self.key = lambda e: (sum(e), tuple(-x for x in reversed(e)))
        elif kind == "GRLEX":
            self.key = lambda e: (sum(e), e)
        elif kind == "LEX":
            self.key = lambda e: e
        else:
            raise ValueError(f"unknown monomial order {kind!r}")
        self.kind = kind

    def __repr__(self):
        return self.kind.lower()

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and other.kind == self.kind

    def __hash__(self):
        return hash(self.kind)

    def sorted(self, monomials, descending=False):
        return sorted(monomials, key=self.key, reverse=descending)


GREVLEX = MonomialOrder("GREVLEX")
GRLEX = MonomialOrder("GRLEX")
LEX = MonomialOrder("LEX")


def monomial_order(name) -> MonomialOrder:
    if isinstance(name, MonomialOrder):
        return name
    return MonomialOrder(name)


def monomials_up_to(nvars: int, degree: int):
    """All exponent tuples in ``nvars`` variables with total degree <= ``degree``."""
    if nvars == 0:
        return [()] if degree >= 0 else []
    out = []
    for d in range(degree + 1):
        out.extend(_monomials_of_degree(nvars, d))
    return out


def _monomials_of_degree(nvars, d):
    if nvars == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in _monomials_of_degree(nvars - 1, d - first):
            out.append((first,) + rest)
    return out


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


class VariableRing:
    """A polynomial ring: ordered variable names over a coefficient field."""

    def __init__(self, names, field=QQ, order=GREVLEX, display_names=None):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        self.field = field
        self.order = monomial_order(order)
        self.nvars = len(self.names)
        self.index = {n: i for i, n in enumerate(self.names)}
        self._zero_exp = (0,) * self.nvars
        extra = field.names if isinstance(field, RationalFunctionField) else ()
        self.display_names = tuple(display_names) if display_names else self.names + tuple(extra)
        self._combined = None

    def __repr__(self):
        return f"{self.field!r}[{','.join(self.names)}]"

    def __eq__(self, other):
        return (
            isinstance(other, VariableRing)
            and self.names == other.names
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.names, self.field))

    def zero(self):
        return Polynomial(self, {}, clean=True)

    def one(self):
        return self.constant(self.field.one())

    def constant(self, c):
        c = self.field.convert(c)
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, {self._zero_exp: c}, clean=True)

    def gen(self, name):
        e = [0] * self.nvars
        e[self.index[name]] = 1
        return Polynomial(self, {tuple(e): self.field.one()}, clean=True)

    def gens(self):
        return [self.gen(n) for n in self.names]

    def monomial(self, exponents, coefficient=None):
        c = self.field.one() if coefficient is None else self.field.convert(coefficient)
        return Polynomial(self, {tuple(exponents): c})

    def from_terms(self, terms):
        return Polynomial(self, {tuple(e): self.field.convert(c) for e, c in terms.items()})

    def combined_ring(self):
        """``QQ[x, t]`` over :attr:`display_names`, for rendering ``QQ(t)[x]`` data."""
        if self._combined is None:
            self._combined = VariableRing(self.display_names, QQ)
        return self._combined

    def field_split_sign(self, poly):
        if poly.is_zero():
            return False, poly
        _, lc = poly.leading_term()
        negative, _ = self.field.split_sign(lc)
        return negative, (-poly if negative else poly)

    def convert(self, f: "Polynomial") -> "Polynomial":
        """Embed ``f`` from a compatible ring.

        Supported: identical rings; renaming into a superset of variables
        over the same field; ``QQ[t, x] -> QQ(t)[x]``; ``QQ[...] -> CC[...]``.
        """
        if not isinstance(f, Polynomial):
            return self.constant(f)
        src = f.ring
        if src == self:
            return f
        if f.is_zero():
            return self.zero()
        if src.field == self.field:
            return self._reindex(f)
        if isinstance(src.field, RationalField) and isinstance(self.field, RationalFunctionField):
            return self._into_fraction_field(f)
        if isinstance(src.field, RationalField) and isinstance(self.field, ApproxComplexField):
            g = self._reindex(Polynomial(VariableRing(src.names, QQ), f.terms, clean=True))
            return Polynomial(self, {e: complex(float(c)) for e, c in g.terms.items()})
        raise ContextMismatch(f"cannot convert a polynomial of {src} into {self}")

    def _position_map(self, src):
        try:
            return [self.index[n] for n in src.names]
        except KeyError as exc:
            raise ContextMismatch(f"variable {exc.args[0]} is not in {self}") from None

    def _reindex(self, f):
        src = f.ring
        used = f.support_variables()
        missing = [n for n in used if n not in self.index]
        if missing:
            raise ContextMismatch(f"variables {missing} are not in {self}")
        pos = [self.index.get(n) for n in src.names]
        terms = {}
        for e, c in f.terms.items():
            new = [0] * self.nvars
            for i, k in enumerate(e):
                if k:
                    new[pos[i]] = k
            terms[tuple(new)] = c
        return Polynomial(self, terms, clean=True)

    def _into_fraction_field(self, f):
        src = f.ring
        tnames = self.field.names
        tindex = {n: i for i, n in enumerate(tnames)}
        used = f.support_variables()
        bad = [n for n in used if n not in self.index and n not in tindex]
        if bad:
            raise ContextMismatch(f"variables {bad} are not in {self}")
        xpos = [self.index.get(n) for n in src.names]
        tpos = [tindex.get(n) for n in src.names]
        buckets = {}
        for e, c in f.terms.items():
            xe = [0] * self.nvars
            te = [0] * len(tnames)
            for i, k in enumerate(e):
                if k:
                    if xpos[i] is not None:
                        xe[xpos[i]] = k
                    else:
                        te[tpos[i]] = k
            buckets.setdefault(tuple(xe), {})[tuple(te)] = c
        terms = {xe: self.field.from_terms(tt) for xe, tt in buckets.items()}
        return Polynomial(self, terms, clean=True)


class Polynomial:
    """Sparse polynomial; immutable by convention."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: VariableRing, terms, clean=False):
        self.ring = ring
        if not clean:
            is_zero = ring.field.is_zero
            terms = {e: c for e, c in terms.items() if not is_zero(c)}
        self.terms = terms
        self._hash = None

    # -- basic queries -----------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and self.ring._zero_exp in self.terms)

    def constant_term(self):
        return self.terms.get(self.ring._zero_exp, self.ring.field.zero())

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name):
        i = self.ring.index[name]
        return max((e[i] for e in self.terms), default=-1)

    def support_variables(self):
        used = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used.add(self.ring.names[i])
        return [n for n in self.ring.names if n in used]

    def leading_term(self, order=None):
        order = order or self.ring.order
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def leading_monomial(self, order=None):
        return self.leading_term(order)[0]

    def coefficient(self, exponents):
        return self.terms.get(tuple(exponents), self.ring.field.zero())

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ContextMismatch(f"{self.ring} vs {other.ring}")
            return other
        try:
            return self.ring.constant(other)
        except ContextMismatch:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        is_zero = self.ring.field.is_zero
        for e, c in other.terms.items():
            if e in terms:
                s = terms[e] + c
                if is_zero(s):
                    del terms[e]
                else:
                    terms[e] = s
            else:
                terms[e] = c
        return Polynomial(self.ring, terms, clean=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()}, clean=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        is_zero = self.ring.field.is_zero
        for e, c in other.terms.items():
            if e in terms:
                s = terms[e] - c
                if is_zero(s):
                    del terms[e]
                else:
                    terms[e] = s
            else:
                terms[e] = -c
        return Polynomial(self.ring, terms, clean=True)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                c = self.ring.field.convert(other)
            except ContextMismatch:
                return NotImplemented
            return self.scale(c)
        if other.ring != self.ring:
            raise ContextMismatch(f"{self.ring} vs {other.ring}")
        if len(other.terms) == 1:
            (e, c), = other.terms.items()
            return self.mul_monomial(e, c)
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            return other.mul_monomial(e, c)
        out = {}
        is_zero = self.ring.field.is_zero
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if e in out:
                    out[e] = out[e] + c1 * c2
                else:
                    out[e] = c1 * c2
        return Polynomial(self.ring, {e: c for e, c in out.items() if not is_zero(c)}, clean=True)

    def __rmul__(self, other):
        return self.__mul__(other)

    def scale(self, c):
        if self.ring.field.is_zero(c):
            return self.ring.zero()
        if self.ring.field.is_one(c):
            return self
        return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()})

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            if not other.is_constant():
                raise TypeError("polynomial division by a non-constant")
            other = other.constant_term()
        c = self.ring.field.convert(other)
        if self.ring.field.is_zero(c):
            raise DivisionByZero("polynomial divided by zero")
        return self.scale(self.ring.field.inv(c))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_monomial(self, exponents, coefficient=None):
        exponents = tuple(exponents)
        if coefficient is None:
            return Polynomial(self.ring, {_add_exp(e, exponents): c for e, c in self.terms.items()}, clean=True)
        if self.ring.field.is_zero(coefficient):
            return self.ring.zero()
        return Polynomial(
            self.ring, {_add_exp(e, exponents): c * coefficient for e, c in self.terms.items()}
        )

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- calculus ------------------------------------------------------------
    def diff(self, var, k: int = 1):
        """``k``-fold partial derivative in ``var`` (name or index)."""
        i = self.ring.index[var] if isinstance(var, str) else var
        if k == 0:
            return self
        out = {}
        for e, c in self.terms.items():
            p = e[i]
            if p < k:
                continue
            factor = math.perm(p, k)
            ne = e[:i] + (p - k,) + e[i + 1:]
            out[ne] = c * factor
        return Polynomial(self.ring, out, clean=True)

    def diff_multi(self, indices, alpha):
        """Apply ``prod d_{indices[j]}^{alpha[j]}``."""
        f = self
        for i, a in zip(indices, alpha):
            if a:
                f = f.diff(i, a)
                if not f.terms:
                    break
        return f

    # -- evaluation ----------------------------------------------------------
    def evaluate_at(self, point, tol: float = 0.0) -> complex:
        """Numeric value; ``point`` maps variable names (of the ring and of the
        coefficient field) to numbers."""
        values = [complex(point[n]) for n in self.ring.names]
        field = self.ring.field
        total = 0j
        for e, c in self.terms.items():
            if isinstance(c, Fraction):
                term = c.numerator / c.denominator + 0j
            elif isinstance(field, RationalFunctionField):
                term = field.evaluate(c, point, tol)
            else:
                term = field.evaluate(c, point)
            for v, k in zip(values, e):
                if k:
                    term *= v**k
            total += term
        return total

    def evaluate_exact(self, point):
        values = [point[n] for n in self.ring.names]
        field = self.ring.field
        total = Fraction(0)
        for e, c in self.terms.items():
            if isinstance(field, RationalFunctionField):
                c = field.evaluate_exact(c, point)
            total += c * math.prod(v**k for v, k in zip(values, e) if k)
        return total

    def substitute(self, images, target_ring=None):
        """Compose with ``x_i -> images[x_i]`` (polynomials of ``target_ring``)."""
        target_ring = target_ring or self.ring
        powers = {}
        result = target_ring.zero()
        for e, c in self.terms.items():
            term = target_ring.constant(c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in powers:
                        powers[key] = images[self.ring.names[i]] ** k
                    term = term * powers[key]
            result = result + term
        return result

    # -- rendering -------------------------------------------------------------
    def __str__(self):
        return render_sum(
            ((format_monomial(e, self.ring.names), c) for e, c in self._display_terms()),
            self.ring.field,
        )

    def _display_terms(self):
        order = self.ring.order
        return sorted(self.terms.items(), key=lambda kv: order.key(kv[0]), reverse=True)

    def __repr__(self):
        return f"Polynomial({self})"


def render_sum(items, field, empty="0"):
    """Render ``sum c*m`` given ``(monomial_text, coefficient)`` pairs."""
    pieces = []
    for mono, c in items:
        negative, mag = field.split_sign(c)
        if not mono:
            body = field.render(mag)
            if not _is_simple(body):
                body = f"({body})"
        elif field.is_one(mag):
            body = mono
        else:
            body = f"{field.render_coefficient(mag)}*{mono}"
        if not pieces:
            pieces.append(("-" if negative else "") + body)
        else:
            pieces.append((" - " if negative else " + ") + body)
    return "".join(pieces) if pieces else empty


def _is_simple(text):
    return text.startswith("(") or not any(ch in text for ch in "+- ") or (
        text.startswith("-") and not any(ch in text[1:] for ch in "+- ")
    )


class WeylOperator:
    """``sum_a c_a d^a`` with coefficients in ``ring`` and derivatives in ``dvars``.

    ``terms`` maps exponent tuples (aligned with ``dvars``) to nonzero
    :class:`Polynomial` coefficients of ``ring``.
    """

    __slots__ = ("ring", "dvars", "terms", "_didx")

    def __init__(self, ring: VariableRing, dvars, terms):
        self.ring = ring
        self.dvars = tuple(dvars)
        for v in self.dvars:
            if v not in ring.index:
                raise ContextMismatch(f"cannot differentiate in {v}: not a variable of {ring}")
        self._didx = tuple(ring.index[v] for v in self.dvars)
        clean = {}
        for a, c in terms.items():
            if not isinstance(c, Polynomial):
                c = ring.constant(c)
            elif c.ring != ring:
                c = ring.convert(c)
            if len(a) != len(self.dvars):
                raise ValueError("derivative exponent length does not match dvars")
            if not c.is_zero():
                clean[tuple(a)] = c
        self.terms = clean

    @classmethod
    def identity(cls, ring, dvars):
        return cls(ring, dvars, {(0,) * len(tuple(dvars)): ring.one()})

    @classmethod
    def derivative(cls, ring, dvars, exponents, coefficient=None):
        c = ring.one() if coefficient is None else coefficient
        return cls(ring, dvars, {tuple(exponents): c})

    def is_zero(self):
        return not self.terms

    @property
    def degree(self):
        return max((sum(a) for a in self.terms), default=-1)

    def coefficient(self, exponents):
        return self.terms.get(tuple(exponents), self.ring.zero())

    def pivot(self, order=GRLEX):
        """The largest derivative monomial with a nonzero coefficient."""
        return max(self.terms, key=order.key)

    def apply(self, f: Polynomial) -> Polynomial:
        """``D • f``."""
        f = self.ring.convert(f)
        result = self.ring.zero()
        for a, c in self.terms.items():
            df = f.diff_multi(self._didx, a)
            if df.terms:
                result = result + c * df
        return result

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for a, c in other.terms.items():
            terms[a] = terms[a] + c if a in terms else c
        return WeylOperator(self.ring, self.dvars, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return WeylOperator(self.ring, self.dvars, {a: -c for a, c in self.terms.items()})

    def left_multiply(self, c):
        """``c * D`` for a scalar or polynomial ``c``."""
        if not isinstance(c, Polynomial):
            c = self.ring.constant(c)
        return WeylOperator(self.ring, self.dvars, {a: c * v for a, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, WeylOperator):
            return weyl_multiply(self, other)
        return self.left_multiply(other)

    def __rmul__(self, other):
        return self.left_multiply(other)

    def _check(self, other):
        if other.ring != self.ring or other.dvars != self.dvars:
            raise ContextMismatch("operators over different rings")

    def __eq__(self, other):
        return (
            isinstance(other, WeylOperator)
            and self.ring == other.ring
            and self.dvars == other.dvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.dvars, frozenset(self.terms.items())))

    def map_coefficients(self, fn, ring=None):
        ring = ring or self.ring
        return WeylOperator(ring, self.dvars, {a: fn(c) for a, c in self.terms.items()})

    def with_dvars(self, dvars):
        """Same operator with derivative exponents re-indexed over ``dvars``."""
        dvars = tuple(dvars)
        pos = [dvars.index(v) for v in self.dvars]
        terms = {}
        for a, c in self.terms.items():
            if any(k and (v not in dvars) for k, v in zip(a, self.dvars)):
                raise ContextMismatch("operator uses a derivative outside the new set")
            new = [0] * len(dvars)
            for k, p in zip(a, pos):
                new[p] = k
            terms[tuple(new)] = c
        return WeylOperator(self.ring, dvars, terms)

    def display_terms(self, order=GRLEX):
        return sorted(self.terms.items(), key=lambda kv: order.key(kv[0]), reverse=True)

    def __str__(self):
        field = self.ring.field
        pieces = []
        for a, c in self.display_terms():
            dmono = format_monomial(a, self.dvars, prefix="d")
            if isinstance(field, RationalFunctionField):
                num, den = split_denominator(c)
                pieces.append(_fraction_term(num, den, dmono, field))
            else:
                pieces.append(_operator_term(c, dmono, field))
        return _join_signed(pieces) if pieces else "0"

    def __repr__(self):
        return f"WeylOperator({self})"


def _operator_term(c: Polynomial, dmono: str, field):
    if not dmono:
        return str(c)
    if len(c.terms) == 1:
        (e, v), = c.terms.items()
        mono = format_monomial(e, c.ring.names)
        negative, mag = field.split_sign(v)
        if field.is_one(mag):
            body = f"{mono}*{dmono}" if mono else dmono
        else:
            coef = field.render_coefficient(mag)
            body = f"{coef}*{mono}*{dmono}" if mono else f"{coef}*{dmono}"
        return ("-" if negative else "") + body
    return f"({c})*{dmono}"


def split_denominator(c: Polynomial):
    """Write a ``QQ(t)[x]`` polynomial as ``N / L`` with ``N`` in ``QQ[x, t]``.

    ``L`` is the monic lcm of the coefficient denominators (a sympy
    polynomial in ``t``).
    """
    ring = c.ring
    F = ring.field
    target = ring.combined_ring()
    pr = F.poly_ring
    lcm = pr.one
    for v in c.terms.values():
        lcm = lcm.lcm(v.den)
    xpos = [target.index[n] for n in ring.names]
    tpos = [target.index[n] for n in F.names]
    out = {}
    for xe, v in c.terms.items():
        num = v.num * lcm.exquo(v.den)
        for te, q in num.terms():
            e = [0] * target.nvars
            for k, p in zip(xe, xpos):
                e[p] += k
            for k, p in zip(te, tpos):
                e[p] += k
            out[tuple(e)] = Fraction(int(q.numerator), int(q.denominator))
    return Polynomial(target, out), lcm


def _fraction_term(num: Polynomial, den, dmono: str, field):
    if den == field.poly_ring.one:
        return _operator_term(num, dmono, QQ)
    negative = False
    if len(num.terms) == 1:
        (e, v), = num.terms.items()
        if v < 0:
            negative, num = True, -num
    text = str(num)
    if len(num.terms) > 1:
        text = f"({text})"
    dtext = _render_sympy_poly(den, field.names)
    if not _is_atomic_power(den):
        dtext = f"({dtext})"
    body = f"({text}/{dtext})"
    if dmono:
        body = f"{body}*{dmono}"
    return ("-" if negative else "") + body


def format_fraction_polynomial(c: Polynomial) -> str:
    """Render a ``QQ(t)[x]`` polynomial as one fraction over ``QQ[x, t]``."""
    num, den = split_denominator(c)
    return _fraction_term(num, den, "", c.ring.field)


def _join_signed(pieces):
    out = pieces[0]
    for p in pieces[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


def apply_operator(D: WeylOperator, f: Polynomial) -> Polynomial:
    return D.apply(f)


def pairing(D: WeylOperator, f: Polynomial, ctx):
    """``<D, f>``: the image of ``D • f`` in the residue field ``ctx``."""
    g = D.apply(f)
    return ctx.convert(g)


def weyl_multiply(D1: WeylOperator, D2: WeylOperator) -> WeylOperator:
    """Noncommutative product, normalized with coefficients on the left.

    Uses ``d^a * b = sum_{g <= a} C(a, g) (d^g • b) d^(a-g)``.
    """
    D1._check(D2)
    terms = {}
    idx = D1._didx
    for a, ca in D1.terms.items():
        for b, cb in D2.terms.items():
            for g in product(*(range(k + 1) for k in a)):
                db = cb.diff_multi(idx, g)
                if db.is_zero():
                    continue
                binom = math.prod(math.comb(k, j) for k, j in zip(a, g))
                mono = tuple(k - j + m for k, j, m in zip(a, g, b))
                term = ca * db
                if binom != 1:
                    term = term * binom
                terms[mono] = terms[mono] + term if mono in terms else term
    return WeylOperator(D1.ring, D1.dvars, terms)


def right_action(D: WeylOperator, f: Polynomial) -> WeylOperator:
    """``D · f``, characterized by ``<D · f, g> = <D, f g>``."""
    zero = (0,) * len(D.dvars)
    return weyl_multiply(D, WeylOperator(D.ring, D.dvars, {zero: D.ring.convert(f)}))


class SpecializedOperator:
    """Constant-coefficient operator ``sum c_a d^a`` with complex coefficients."""

    __slots__ = ("dvars", "terms")

    def __init__(self, dvars, terms, tol: float = 0.0):
        self.dvars = tuple(dvars)
        self.terms = {tuple(a): complex(c) for a, c in terms.items() if abs(c) > tol}

    def coefficient(self, exponents):
        return self.terms.get(tuple(exponents), 0j)

    @property
    def degree(self):
        return max((sum(a) for a in self.terms), default=-1)

    def pivot(self, order=GRLEX):
        return max(self.terms, key=order.key)

    def apply_at(self, f: Polynomial, point) -> complex:
        """``(D • f)(point)``."""
        idx = [f.ring.index[v] for v in self.dvars]
        total = 0j
        for a, c in self.terms.items():
            df = f.diff_multi(idx, a)
            if df.terms:
                total += c * df.evaluate_at(point)
        return total

    def distance(self, other) -> float:
        keys = set(self.terms) | set(other.terms)
        return max((abs(self.coefficient(k) - other.coefficient(k)) for k in keys), default=0.0)

    def __str__(self):
        field = ApproxComplexField(0.0)
        pieces = []
        for a, c in sorted(self.terms.items(), key=lambda kv: GRLEX.key(kv[0]), reverse=True):
            dmono = format_monomial(a, self.dvars, prefix="d")
            negative, mag = field.split_sign(c)
            if not dmono:
                body = field.render_coefficient(mag)
            elif abs(mag - 1) == 0:
                body = dmono
            else:
                body = f"{field.render_coefficient(mag)}*{dmono}"
            pieces.append(("-" if negative else "") + body)
        return _join_signed(pieces) if pieces else "0"

    def __repr__(self):
        return f"SpecializedOperator({self})"


def specialize(D: WeylOperator, point, tol: float = 1e-8) -> SpecializedOperator:
    """Evaluate every coefficient of ``D`` at ``point``; drop those below ``tol``."""
    terms = {}
    for a, c in D.terms.items():
        try:
            terms[a] = c.evaluate_at(point, tol)
        except DivisionByZero as exc:
            raise DenominatorVanishes(str(exc)) from None
    return SpecializedOperator(D.dvars, terms, tol)
