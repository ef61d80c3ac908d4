"""Scalar fields.

Four kinds of field are used throughout the package:

* ``QQ``, the rationals, with :class:`fractions.Fraction` elements;
* :class:`RationalFunctionField`, the field K(t) of rational functions in the
  independent variables, with :class:`RationalFunction` elements;
* :class:`QuotientField`, a residue field K(t)[x]/P for a maximal ideal P,
  with :class:`QuotientFieldElement` elements;
* :class:`ApproxComplexField`, floating point complex numbers compared with a
  tolerance.

Elements support the ordinary Python operators, so polynomial code can stay
generic.  The field objects carry what operators cannot: zero and one,
zero tests, conversion and rendering.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from numbers import Rational as _RationalABC

from sympy.polys.domains import QQ as _SQQ
from sympy.polys.orderings import grevlex as _grevlex
from sympy.polys.rings import PolyRing

from .errors import ContextMismatch, DenominatorVanishes, DivisionByZero, NotInvertible, NumericalFailure

RATIONALS = "RATIONALS"
RATIONAL_FUNCTIONS = "RATIONAL_FUNCTIONS"
QUOTIENT = "QUOTIENT"
APPROX_COMPLEX = "APPROX_COMPLEX"

DEFAULT_TOLERANCE = 1e-8


def format_monomial(exponents, names, prefix=""):
    """``x1^2*x3`` style text for an exponent vector; empty string for 1."""
    parts = []
    for e, name in zip(exponents, names):
        if e == 1:
            parts.append(prefix + name)
        elif e > 1:
            parts.append(f"{prefix}{name}^{e}")
    return "*".join(parts)


def format_fraction(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_float(x: float) -> str:
    text = format(x, ".17g")
    if text in ("-0", "0"):
        return "0"
    return text


def format_complex(z: complex, tol: float = 0.0) -> str:
    re, im = z.real, z.imag
    if abs(im) <= tol:
        return format_float(re)
    if abs(re) <= tol:
        return format_float(im) + "i"
    sign = "-" if im < 0 else "+"
    return f"{format_float(re)}{sign}{format_float(abs(im))}i"


class FieldContext:
    """Common interface of the scalar fields."""

    kind: str = ""
    exact: bool = True

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def contains(self, a) -> bool:
        raise NotImplementedError

    def convert(self, a):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == 0

    def is_one(self, a) -> bool:
        return a == 1

    def check(self, *elements):
        for a in elements:
            if not self.contains(a):
                raise ContextMismatch(f"{a!r} does not belong to {self}")

    def inv(self, a):
        if self.is_zero(a):
            raise DivisionByZero("inverse of zero")
        return 1 / a

    def split_sign(self, a):
        """Return ``(negative, magnitude)`` used when printing sums."""
        return False, a

    def render(self, a) -> str:
        return str(a)

    def render_coefficient(self, a) -> str:
        """Text for ``a`` when it multiplies a monomial (``a*x``)."""
        return self.render(a)

    def evaluate(self, a, point):
        """Numeric value of ``a`` at ``point`` (a mapping from variable names)."""
        return complex(a)


class RationalField(FieldContext):
    """The rationals, backed by :class:`fractions.Fraction`."""

    kind = RATIONALS

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash(RATIONALS)

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def contains(self, a):
        return isinstance(a, (int, Fraction)) and not isinstance(a, bool)

    def convert(self, a):
        if isinstance(a, Fraction):
            return a
        if isinstance(a, _RationalABC):
            return Fraction(a)
        if isinstance(a, RationalFunction) and a.is_constant():
            return a.constant_value()
        if isinstance(a, str):
            return Fraction(a)
        raise ContextMismatch(f"cannot convert {a!r} to a rational")

    def split_sign(self, a):
        return (a < 0, -a if a < 0 else a)

    def render(self, a):
        return format_fraction(Fraction(a))

    def evaluate(self, a, point):
        return complex(float(a))


QQ = RationalField()


def _to_sympy_qq(c):
    if isinstance(c, Fraction):
        return _SQQ(c.numerator, c.denominator)
    if isinstance(c, int):
        return _SQQ(c)
    return _SQQ.convert(c)


def _from_sympy_qq(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


class RationalFunctionField(FieldContext):
    """K(t) for a tuple of independent variable names ``t``.

    Numerators and denominators are sparse polynomials from sympy's
    low-level ring implementation; sympy supplies the multivariate gcd.
    """

    kind = RATIONAL_FUNCTIONS

    def __init__(self, names):
        self.names = tuple(names)
        if not self.names:
            raise ValueError("K(t) needs at least one variable; use QQ instead")
        self.poly_ring = PolyRing(self.names, _SQQ, _grevlex)
        self._zero = RationalFunction(self, self.poly_ring.zero, self.poly_ring.one, False)
        self._one = RationalFunction(self, self.poly_ring.one, self.poly_ring.one, False)

    def __repr__(self):
        return f"QQ({','.join(self.names)})"

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField) and other.names == self.names

    def __hash__(self):
        return hash((RATIONAL_FUNCTIONS, self.names))

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def gen(self, name):
        return RationalFunction(self, self.poly_ring.gens[self.names.index(name)], self.poly_ring.one, False)

    def contains(self, a):
        return isinstance(a, RationalFunction) and a.field == self

    def constant(self, c):
        return RationalFunction(self, self.poly_ring.ground_new(_to_sympy_qq(c)), self.poly_ring.one, False)

    def from_terms(self, terms):
        """Polynomial with ``{exponent tuple over self.names: Fraction}`` terms."""
        num = self.poly_ring.from_dict({e: _to_sympy_qq(c) for e, c in terms.items()})
        return RationalFunction(self, num, self.poly_ring.one, False)

    def convert(self, a):
        if isinstance(a, RationalFunction):
            if a.field == self:
                return a
            raise ContextMismatch(f"{a!r} belongs to {a.field}, not {self}")
        if isinstance(a, (int, Fraction)):
            return self.constant(a)
        raise ContextMismatch(f"cannot convert {a!r} into {self}")

    def is_zero(self, a):
        return not a.num

    def is_one(self, a):
        return a.num == a.den

    def split_sign(self, a):
        if a.num and a.num.LC < 0:
            return True, -a
        return False, a

    def render(self, a):
        num = _render_sympy_poly(a.num, self.names)
        if a.den == self.poly_ring.one:
            return num
        if len(a.num) > 1:
            num = f"({num})"
        den = _render_sympy_poly(a.den, self.names)
        if not _is_atomic_power(a.den):
            den = f"({den})"
        return f"{num}/{den}"

    def render_coefficient(self, a):
        text = self.render(a)
        if a.den == self.poly_ring.one and len(a.num) == 1:
            return text
        return f"({text})"

    def evaluate(self, a, point, tol: float = 0.0):
        values = [complex(point[name]) for name in self.names]
        den = _eval_sympy_poly(a.den, values)
        if abs(den) <= tol:
            raise DenominatorVanishes(f"denominator of {self.render(a)} vanishes at the point")
        return _eval_sympy_poly(a.num, values) / den

    def evaluate_exact(self, a, point):
        values = [point[name] for name in self.names]
        num = sum((_from_sympy_qq(c) * math.prod(v**e for v, e in zip(values, m)) for m, c in a.num.terms()), Fraction(0))
        den = sum((_from_sympy_qq(c) * math.prod(v**e for v, e in zip(values, m)) for m, c in a.den.terms()), Fraction(0))
        if den == 0:
            raise DivisionByZero(f"denominator {self.render(a)} vanishes")
        return num / den


def _is_atomic_power(p) -> bool:
    if len(p) != 1:
        return False
    (m, c), = p.terms()
    return c == 1 and sum(1 for e in m if e) == 1


def _render_sympy_poly(p, names) -> str:
    if not p:
        return "0"
    pieces = []
    for m, c in p.terms():
        c = _from_sympy_qq(c)
        negative = c < 0
        c = -c if negative else c
        mono = format_monomial(m, names)
        if not mono:
            body = format_fraction(c)
        elif c == 1:
            body = mono
        else:
            body = f"{format_fraction(c)}*{mono}"
        if not pieces:
            pieces.append(("-" if negative else "") + body)
        else:
            pieces.append((" - " if negative else " + ") + body)
    return "".join(pieces)


def _eval_sympy_poly(p, values) -> complex:
    total = 0j
    for m, c in p.terms():
        term = complex(float(c))
        for v, e in zip(values, m):
            if e:
                term *= v**e
        total += term
    return total


class RationalFunction:
    """A reduced fraction of polynomials in the independent variables.

    The denominator is monic with respect to grevlex and coprime to the
    numerator; zero is ``0/1``.
    """

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field, num, den, normalize=True):
        self.field = field
        if normalize:
            num, den = _normalize(field.poly_ring, num, den)
        self.num = num
        self.den = den
        self._hash = None

    def is_constant(self):
        return self.num.is_ground and self.den.is_ground

    def constant_value(self) -> Fraction:
        return _from_sympy_qq(self.num.LC if self.num else _SQQ(0)) / _from_sympy_qq(self.den.LC)

    def normalized(self):
        return RationalFunction(self.field, self.num, self.den)

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.field != self.field:
                raise ContextMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        one = self.field.poly_ring.one
        if self.den == one and other.den == one:
            return RationalFunction(self.field, self.num + other.num, one, False)
        if self.den == other.den:
            return RationalFunction(self.field, self.num + other.num, self.den)
        return RationalFunction(self.field, self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(self.field, -self.num, self.den, False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self.field.zero()
            return RationalFunction(self.field, self.num * _to_sympy_qq(other), self.den, False)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        one = self.field.poly_ring.one
        if self.den == one and other.den == one:
            return RationalFunction(self.field, self.num * other.num, one, False)
        return RationalFunction(self.field, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("division by the zero rational function")
        return RationalFunction(self.field, self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return RationalFunction(self.field, self.num * _to_sympy_qq(1 / Fraction(other)), self.den, False)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(self.field, self.num**n, self.den**n, False)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.field == other.field and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.den == self.field.poly_ring.one and self.num == _to_sympy_qq(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        return f"RationalFunction({self.field.render(self)})"

    def __str__(self):
        return self.field.render(self)


def _normalize(poly_ring, num, den):
    if not den:
        raise DivisionByZero("zero denominator")
    if not num:
        return poly_ring.zero, poly_ring.one
    if den.is_ground:
        return num.quo_ground(den.LC), poly_ring.one
    num, den = num.cancel(den)
    lc = den.LC
    if lc != 1:
        num = num.quo_ground(lc)
        den = den.quo_ground(lc)
    return num, den


class ApproxComplexField(FieldContext):
    """Double precision complex numbers with an absolute zero tolerance."""

    kind = APPROX_COMPLEX
    exact = False

    def __init__(self, tol: float = DEFAULT_TOLERANCE):
        self.tol = float(tol)

    def __repr__(self):
        return f"CC(tol={self.tol:g})"

    def __eq__(self, other):
        return isinstance(other, ApproxComplexField) and other.tol == self.tol

    def __hash__(self):
        return hash((APPROX_COMPLEX, self.tol))

    def zero(self):
        return 0j

    def one(self):
        return 1 + 0j

    def contains(self, a):
        return isinstance(a, (complex, float, int)) and not isinstance(a, bool)

    def convert(self, a):
        if isinstance(a, RationalFunction):
            a = a.constant_value() if a.is_constant() else None
            if a is None:
                raise ContextMismatch("non-constant rational function")
        z = complex(a)
        _check_finite(z)
        return z

    def is_zero(self, a):
        return abs(a) <= self.tol

    def is_one(self, a):
        return abs(a - 1) <= self.tol

    def inv(self, a):
        if self.is_zero(a):
            raise DivisionByZero(f"inverse of {a!r}, which is zero within tolerance")
        z = 1 / complex(a)
        _check_finite(z)
        return z

    def split_sign(self, a):
        a = complex(a)
        if abs(a.imag) <= self.tol and a.real < 0:
            return True, -a
        return False, a

    def render(self, a):
        return format_complex(complex(a), self.tol)

    def render_coefficient(self, a):
        a = complex(a)
        if abs(a.imag) <= self.tol:
            return format_float(a.real)
        return f"({self.render(a)})"

    def evaluate(self, a, point):
        return complex(a)


def _check_finite(z: complex):
    if not cmath.isfinite(z):
        raise NumericalFailure(f"non-finite value {z!r}")


class QuotientField(FieldContext):
    """The residue field of a maximal ideal, via Groebner normal forms.

    ``basis`` is a reduced Groebner basis (:class:`noetherops.groebner.GroebnerBasis`)
    of a maximal ideal in a polynomial ring over QQ or K(t).  Elements are
    stored as normal forms, so equality is structural.
    """

    kind = QUOTIENT

    def __init__(self, basis):
        standard = basis.standard_monomials()
        if standard is None:
            raise ContextMismatch("quotient by an ideal that is not zero-dimensional")
        if not standard:
            raise ContextMismatch("quotient by the unit ideal")
        self.basis = basis
        self.ring = basis.ring
        self.base = basis.ring.field
        self.standard = standard
        self._index = {m: i for i, m in enumerate(standard)}
        self._zero = QuotientFieldElement(self, self.ring.zero())
        self._one = QuotientFieldElement(self, self.ring.one())

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.basis.generators)
        return f"kappa({gens})"

    @property
    def degree(self):
        return len(self.standard)

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def contains(self, a):
        return isinstance(a, QuotientFieldElement) and a.field is self

    def convert(self, a):
        """Image of a scalar or polynomial of the ambient ring."""
        if isinstance(a, QuotientFieldElement):
            if a.field is self:
                return a
            raise ContextMismatch("element of a different residue field")
        if hasattr(a, "ring"):
            return QuotientFieldElement(self, self.basis.reduce(self.ring.convert(a)))
        return QuotientFieldElement(self, self.ring.constant(self.base.convert(a)))

    def is_zero(self, a):
        return a.rep.is_zero()

    def is_one(self, a):
        return a.rep == self.ring.one()

    def coordinates(self, a):
        """Coefficient vector of ``a`` on the standard monomial basis."""
        vec = [self.base.zero()] * len(self.standard)
        for m, c in a.rep.terms.items():
            vec[self._index[m]] = c
        return vec

    def from_coordinates(self, vec):
        terms = {m: c for m, c in zip(self.standard, vec) if not self.base.is_zero(c)}
        return QuotientFieldElement(self, self.ring.from_terms(terms))

    def inv(self, a):
        if self.is_zero(a):
            raise DivisionByZero("inverse of zero in the residue field")
        if a.rep.is_constant():
            return QuotientFieldElement(self, self.ring.constant(self.base.inv(a.rep.constant_term())))
        # multiplication-by-a matrix on the standard basis; solve M v = [1, 0, ...]
        k = len(self.standard)
        columns = []
        for m in self.standard:
            prod = self.basis.reduce(a.rep.mul_monomial(m))
            columns.append(self.coordinates(QuotientFieldElement(self, prod)))
        matrix = [[columns[j][i] for j in range(k)] for i in range(k)]
        rhs = [self.base.zero()] * k
        rhs[self._index[(0,) * self.ring.nvars]] = self.base.one()
        sol = _solve_exact(matrix, rhs, self.base)
        if sol is None:
            raise NotInvertible(
                f"{self.render(a)} is a zero divisor modulo the given prime; the ideal is not prime/maximal"
            )
        return self.from_coordinates(sol)

    def split_sign(self, a):
        return self.ring.field_split_sign(a.rep)

    def render(self, a):
        if isinstance(a.rep.ring.field, RationalFunctionField):
            from .polyring import format_fraction_polynomial

            return format_fraction_polynomial(a.rep)
        return str(a.rep)

    def render_coefficient(self, a):
        if len(a.rep.terms) > 1:
            return f"({a.rep})"
        return str(a.rep)

    def evaluate(self, a, point):
        return a.rep.evaluate_at(point)


def _solve_exact(matrix, rhs, field):
    """Gauss-Jordan elimination over an exact field; ``None`` if singular."""
    n = len(matrix)
    rows = [list(r) + [b] for r, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not field.is_zero(rows[r][col])), None)
        if pivot is None:
            return None
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = field.inv(rows[col][col])
        rows[col] = [x * inv for x in rows[col]]
        for r in range(n):
            if r != col and not field.is_zero(rows[r][col]):
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]


class QuotientFieldElement:
    """Residue class stored by its normal form."""

    __slots__ = ("field", "rep")

    def __init__(self, field, rep):
        self.field = field
        self.rep = rep

    def _coerce(self, other):
        if isinstance(other, QuotientFieldElement):
            if other.field is not self.field:
                raise ContextMismatch("elements of different residue fields")
            return other
        if isinstance(other, (int, Fraction, RationalFunction)):
            return self.field.convert(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        # sums of normal forms are normal forms
        return QuotientFieldElement(self.field, self.rep + other.rep)

    __radd__ = __add__

    def __neg__(self):
        return QuotientFieldElement(self.field, -self.rep)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QuotientFieldElement(self.field, self.rep - other.rep)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.rep.is_constant():
            return QuotientFieldElement(self.field, self.rep.scale(other.rep.constant_term()))
        if self.rep.is_constant():
            return QuotientFieldElement(self.field, other.rep.scale(self.rep.constant_term()))
        return QuotientFieldElement(self.field, self.field.basis.reduce(self.rep * other.rep))

    __rmul__ = __mul__

    def inverse(self):
        return self.field.inv(self)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        if isinstance(other, QuotientFieldElement):
            return self.field is other.field and self.rep == other.rep
        if isinstance(other, (int, Fraction)):
            return self.rep == self.field.ring.constant(self.field.base.convert(other))
        return NotImplemented

    def __hash__(self):
        return hash(self.rep)

    def __bool__(self):
        return not self.rep.is_zero()

    def __repr__(self):
        return f"QuotientFieldElement({self.rep})"

    def __str__(self):
        return str(self.rep)


def field_add(a, b, ctx: FieldContext):
    ctx.check(a, b)
    result = a + b
    if not ctx.exact:
        _check_finite(complex(result))
    return result


def field_mul(a, b, ctx: FieldContext):
    ctx.check(a, b)
    result = a * b
    if not ctx.exact:
        _check_finite(complex(result))
    return result


def field_neg(a, ctx: FieldContext):
    ctx.check(a)
    return -a


def field_inv(a, ctx: FieldContext):
    ctx.check(a)
    return ctx.inv(a)


def is_zero(a, ctx: FieldContext) -> bool:
    ctx.check(a)
    return ctx.is_zero(a)
