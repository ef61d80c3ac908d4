"""Independent reference computations built on sympy.

Nothing here calls into noetherops beyond reading the fields of its data
structures, so agreement with the library is evidence rather than a
tautology.
"""

from fractions import Fraction

import sympy


def symbols_of(ring):
    return sympy.symbols(" ".join(ring.names), seq=True)


def to_sympy(f, syms=None):
    """A noetherops polynomial over QQ as a sympy expression."""
    syms = syms or symbols_of(f.ring)
    out = sympy.Integer(0)
    for e, c in f.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, k in zip(syms, e):
            term *= s**k
        out += term
    return sympy.expand(out)


def coefficient_to_sympy(c, ring, syms):
    """Coefficient of an operator over QQ, QQ[x] or QQ(t)[x] as a sympy expression."""
    if isinstance(c, (int, Fraction)):
        return sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
    field = c.ring.field
    by_name = dict(zip(ring.names, syms))
    out = sympy.Integer(0)
    for e, v in c.terms.items():
        mono = sympy.Integer(1)
        for name, k in zip(c.ring.names, e):
            mono *= by_name[name] ** k
        if hasattr(v, "num"):
            tsyms = [by_name[n] for n in field.names]
            num = v.num.as_expr(*tsyms)
            den = v.den.as_expr(*tsyms)
            val = num / den
        else:
            val = sympy.Rational(v.numerator, v.denominator)
        out += val * mono
    return out


def apply_with_sympy(D, f, ring):
    """``D • f`` computed by sympy differentiation, returned as an expression."""
    syms = symbols_of(ring)
    by_name = dict(zip(ring.names, syms))
    fx = to_sympy(f, syms)
    out = sympy.Integer(0)
    for a, c in D.terms.items():
        g = fx
        for v, k in zip(D.dvars, a):
            if k:
                g = sympy.diff(g, by_name[v], k)
        out += coefficient_to_sympy(c, ring, syms) * g
    return sympy.together(sympy.expand(out))


class SympyIdeal:
    """Ideal membership and quotient dimension from sympy's Groebner bases."""

    def __init__(self, generators, ring, order="grevlex"):
        self.syms = symbols_of(ring)
        self.basis = sympy.groebner([to_sympy(g, self.syms) for g in generators], *self.syms, order=order, domain="QQ")

    def contains_expr(self, expr):
        return self.basis.contains(sympy.expand(expr))

    def contains(self, f):
        return self.contains_expr(to_sympy(f, self.syms))

    def quotient_dimension(self):
        """``dim_QQ R/I`` for a zero-dimensional ideal, by counting standard monomials."""
        leads = [sympy.Poly(g, *self.syms).monoms(order=self.basis.order)[0] for g in self.basis.exprs]
        n = len(self.syms)
        count = 0
        frontier = [(0,) * n]
        seen = set(frontier)
        while frontier:
            m = frontier.pop()
            if any(all(a >= b for a, b in zip(m, lt)) for lt in leads):
                continue
            count += 1
            if count > 10_000:
                raise ValueError("not zero-dimensional")
            for i in range(n):
                nm = m[:i] + (m[i] + 1,) + m[i + 1:]
                if nm not in seen:
                    seen.add(nm)
                    frontier.append(nm)
        return count


def fraction_free_numerator(expr):
    """Numerator of a rational expression, for membership of ``D • f`` in a prime."""
    num, _ = sympy.fraction(sympy.together(expr))
    return sympy.expand(num)
