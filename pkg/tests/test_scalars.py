from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import small_fractions
from noetherops.errors import ContextMismatch, DenominatorVanishes, DivisionByZero, NumericalFailure
from noetherops.groebner import buchberger, extend_to_fraction_field
from noetherops.polyring import VariableRing
from noetherops.scalars import (
    QQ,
    ApproxComplexField,
    QuotientField,
    RationalFunctionField,
    field_add,
    field_inv,
    field_mul,
    format_complex,
    format_fraction,
    is_zero,
)

F = RationalFunctionField(["s", "t"])


def _rational_functions():
    poly = st.dictionaries(
        st.tuples(st.integers(0, 2), st.integers(0, 2)), small_fractions, max_size=3
    ).map(F.from_terms)
    return st.tuples(poly, poly.filter(lambda p: not F.is_zero(p))).map(lambda nd: nd[0] / nd[1])


# sqrt(2) adjoined to QQ, and the residue field of a curve over QQ(x3)
_R1 = VariableRing(["x"])
K_SQRT2 = QuotientField(buchberger([_R1.gen("x") ** 2 - 2]))
_R3 = VariableRing(["x1", "x2", "x3"])
_x1, _x2, _x3 = _R3.gens()
K_CURVE = QuotientField(extend_to_fraction_field([_x1**2 - _x3, _x2], ["x3"]))


def _quotient_elements(K, coefficient):
    return st.lists(coefficient, min_size=K.degree, max_size=K.degree).map(K.from_coordinates)


contexts = {
    "QQ": (QQ, small_fractions),
    "QQ(s,t)": (F, _rational_functions()),
    "QQ(sqrt2)": (K_SQRT2, _quotient_elements(K_SQRT2, small_fractions)),
    "kappa(P) over QQ(x3)": (
        K_CURVE,
        _quotient_elements(K_CURVE, st.sampled_from([K_CURVE.base.gen("x3"), K_CURVE.base.one()]).flatmap(
            lambda g: small_fractions.map(lambda q: g * q)
        )),
    ),
}


@pytest.mark.parametrize("name", list(contexts))
def test_field_axioms(name):
    ctx, elements = contexts[name]

    @settings(max_examples=1000)
    @given(elements, elements, elements)
    def check(a, b, c):
        assert field_mul(field_mul(a, b, ctx), c, ctx) == field_mul(a, field_mul(b, c, ctx), ctx)
        assert field_add(field_add(a, b, ctx), c, ctx) == field_add(a, field_add(b, c, ctx), ctx)
        assert field_mul(a, field_add(b, c, ctx), ctx) == field_add(field_mul(a, b, ctx), field_mul(a, c, ctx), ctx)
        assert field_mul(a, b, ctx) == field_mul(b, a, ctx)
        if not is_zero(a, ctx):
            assert ctx.is_one(field_mul(a, field_inv(a, ctx), ctx))

    check()


def test_fraction_invariants():
    q = QQ.convert(Fraction(-6, 4))
    assert (q.numerator, q.denominator) == (-3, 2)
    assert QQ.convert(0) == Fraction(0, 1)
    assert format_fraction(Fraction(-3, 2)) == "-3/2"
    with pytest.raises(DivisionByZero):
        QQ.inv(Fraction(0))


@settings(max_examples=300)
@given(_rational_functions())
def test_rational_function_normal_form(a):
    again = a.normalized()
    assert again == a and again.normalized() == again
    # the denominator is monic and coprime to the numerator
    assert a.den.LC == 1
    assert a.num.gcd(a.den).is_ground


def test_rational_function_cancellation_and_evaluation():
    s, t = F.gen("s"), F.gen("t")
    a = (s**2 - t**2) / (2 * s - 2 * t)
    assert a == (s + t) / 2
    assert F.render(t / (s * t)) == "1/s"
    assert F.evaluate(s / t, {"s": 1.0, "t": 2.0}) == 0.5
    with pytest.raises(DenominatorVanishes):
        F.evaluate(s / t, {"s": 1.0, "t": 0.0})
    with pytest.raises(DivisionByZero):
        F.zero().inverse()


def test_quotient_field_representatives_are_canonical():
    x = _R1.gen("x")
    a = K_SQRT2.convert(x**3 + 1)  # x^3 = 2x
    b = K_SQRT2.convert(2 * x + 1)
    assert a == b
    assert field_add(a, K_SQRT2.convert(x**2), K_SQRT2) == field_add(b, K_SQRT2.convert(2), K_SQRT2)
    assert field_inv(K_SQRT2.convert(x), K_SQRT2) == K_SQRT2.convert(x * Fraction(1, 2))


def test_quotient_field_over_rational_functions_inverts():
    a = K_CURVE.convert(K_CURVE.ring.convert(_x1))
    assert K_CURVE.render(a * a) == "x3"
    assert K_CURVE.render(a.inverse()) == "(x1/x3)"


def test_context_mismatch():
    G = RationalFunctionField(["t"])
    with pytest.raises(ContextMismatch):
        field_add(F.gen("s"), G.gen("t"), F)
    with pytest.raises(ContextMismatch):
        QuotientField(buchberger([VariableRing(["x", "y"]).gen("x")]))


def test_approx_complex():
    C = ApproxComplexField(1e-8)
    assert C.is_zero(1e-10) and not C.is_zero(1e-6)
    with pytest.raises(NumericalFailure):
        field_mul(1e200 + 0j, 1e200 + 0j, C)
    with pytest.raises(DivisionByZero):
        C.inv(0j)
    assert format_complex(0.5 - 2j) == "0.5-2i"
    assert format_complex(1 / 3) == "0.33333333333333331"
