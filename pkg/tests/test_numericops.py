import random
import zlib
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import corpus, quadruple_line
from noetherops.dualspace import noetherian_operators
from noetherops.errors import (
    InconsistentSpecializations,
    InterpolationFailed,
    NeedMorePoints,
    NotOnVariety,
)
from noetherops.groebner import buchberger
from noetherops.numericops import (
    WitnessPoint,
    interpolate_with_schedule,
    noetherian_operators_at_point,
    numerical_noetherian_operators,
    rational_interpolation,
)
from noetherops.polyring import VariableRing, monomials_up_to, specialize

INTEGER_POINTS = {  # coefficient of dy in N3 and of dx*dy in N4 at t = k
    1: (2, 6),
    2: (1, 3),
    3: (Fraction(2, 3), 2),
    4: (Fraction(1, 2), Fraction(3, 2)),
}


def _complex_point(rng, names):
    return {n: complex(rng.gauss(0, 1), rng.gauss(0, 1)) for n in names}


def test_quadruple_line_specialized_operators():
    case = quadruple_line()
    for k, (c3, c4) in INTEGER_POINTS.items():
        ops = noetherian_operators_at_point(case.ideal, {"t": k, "x": 0, "y": 0}, independent=["t"])
        assert len(ops) == 4
        assert [D.pivot() for D in ops] == [(0, 0), (1, 0), (2, 0), (3, 0)]
        assert ops[0].distance(type(ops[0])(("x", "y"), {(0, 0): 1})) <= 1e-6
        assert ops[1].distance(type(ops[0])(("x", "y"), {(1, 0): 1})) <= 1e-6
        assert ops[2].distance(type(ops[0])(("x", "y"), {(2, 0): 1, (0, 1): float(c3)})) <= 1e-6
        assert ops[3].distance(type(ops[0])(("x", "y"), {(3, 0): 1, (1, 1): float(c4)})) <= 1e-6


@pytest.mark.parametrize("case", corpus(), ids=lambda c: c.name)
def test_specialization_consistency(case):
    """Specialized symbolic operators equal the operators computed at the point."""
    N = noetherian_operators(case.ideal, case.prime)
    rng = random.Random(zlib.crc32(case.name.encode()))
    counts = set()
    for _ in range(3):
        p = case.sample(rng)
        numeric = noetherian_operators_at_point(case.ideal, p, independent=N.independent)
        counts.add(len(numeric))
        symbolic = [specialize(D, p, tol=1e-12) for D in N.rational_operators]
        assert len(symbolic) == len(numeric)
        for a, b in zip(symbolic, numeric):
            assert a.distance(b) <= 1e-6, (str(a), str(b))
    assert counts == {case.multiplicity}


@settings(max_examples=40)
@given(
    st.lists(st.integers(-4, 4), min_size=3, max_size=3),
    st.lists(st.integers(-4, 4), min_size=2, max_size=2).filter(any),
)
def test_interpolation_recovers_rational_functions(num, den):
    names = ["t", "x"]
    rng = random.Random(1)
    n_exps = [(0, 0), (1, 0), (0, 1)]
    d_exps = [(0, 0), (1, 0)]
    pts = [_complex_point(rng, names) for _ in range(12)]

    def f(p):
        return sum(c * p["t"] ** e[0] * p["x"] ** e[1] for c, e in zip(num, n_exps))

    def g(p):
        return sum(c * p["t"] ** e[0] for c, e in zip(den, d_exps))

    vals = [f(p) / g(p) for p in pts]
    c = rational_interpolation(pts, vals, n_exps, d_exps, names)
    assert c.exact
    for p, v in zip(pts, vals):
        assert abs(c.evaluate(p) - v) <= 1e-6 * (1 + abs(v))
    # agrees with the generating function off the sample as well
    for _ in range(5):
        q = _complex_point(rng, names)
        assert abs(c.evaluate(q) - f(q) / g(q)) <= 1e-6 * (1 + abs(f(q) / g(q)))


def test_interpolation_schedule_finds_lowest_degree():
    rng = random.Random(2)
    pts = [_complex_point(rng, ["t", "x"]) for _ in range(30)]
    vals = [2 * p["x"] / (3 * p["t"]) for p in pts]
    c = interpolate_with_schedule(pts, vals, ["t", "x"], ["t"])
    assert c.to_string() == "2/3*x/t"


def test_interpolation_needs_points():
    rng = random.Random(3)
    pts = [_complex_point(rng, ["t"]) for _ in range(3)]
    with pytest.raises(NeedMorePoints):
        rational_interpolation(pts, [1, 1, 1], [(0,), (1,)], [(0,), (1,)], ["t"])
    with pytest.raises(InterpolationFailed):
        interpolate_with_schedule(pts, [p["t"] ** 5 for p in pts], ["t"], ["t"])


def test_interpolation_rejects_noise():
    rng = random.Random(4)
    pts = [_complex_point(rng, ["t"]) for _ in range(12)]
    vals = [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in pts]
    with pytest.raises(InterpolationFailed):
        rational_interpolation(pts, vals, monomials_up_to(1, 2), monomials_up_to(1, 2), ["t"])


def test_float_coefficients_when_not_rational():
    rng = random.Random(5)
    pts = [_complex_point(rng, ["t"]) for _ in range(10)]
    # real values are always within 1e-6 of some fraction with denominator at most 10^6,
    # so only a genuinely complex coefficient stays in floating point
    vals = [(1 + 2j) * np.pi * p["t"] for p in pts]
    c = rational_interpolation(pts, vals, [(0,), (1,)], [(0,)], ["t"])
    assert not c.exact
    real = rational_interpolation(pts, [np.pi * p["t"] for p in pts], [(0,), (1,)], [(0,)], ["t"])
    assert real.exact and real.numerator.terms[(1,)] == Fraction(np.pi).limit_denominator(10**6)
    assert abs(c.evaluate(pts[0]) - vals[0]) <= 1e-6 * (1 + abs(vals[0]))


def test_numerical_operators_recover_exact_coefficients():
    case = quadruple_line()
    rng = random.Random(1)
    pts = [{"t": complex(rng.gauss(0, 1), rng.gauss(0, 1)), "x": 0, "y": 0} for _ in range(8)]
    N = numerical_noetherian_operators(case.ideal, pts, independent=["t"])
    assert [str(D) for D in N.operators] == ["1", "dx", "dx^2 + (2/t)*dy", "dx^3 + (6/t)*dx*dy"]
    # exact re-verification: D • g lies in the prime for every generator g
    S = N.fraction_field_ring()
    G = buchberger([S.convert(p) for p in case.prime], ring=S)
    for D in N.operators:
        W = D.to_weyl(S)
        for g in case.ideal:
            assert G.reduce(W.apply(S.convert(g))).is_zero()
    doc = N.to_dict()
    assert doc["numeric"] is True and doc["multiplicity"] == 4


def test_numerical_multiplicity_invariance_and_mismatch():
    R = VariableRing(["x", "y"])
    x, y = R.gens()
    # the line y = 0 with multiplicity two and the reduced line y = 1
    ideal = [y**2 * (y - 1)]
    line = [{"x": 0.5 + k, "y": 0} for k in range(8)]
    N = numerical_noetherian_operators(ideal, line, independent=["x"])
    assert [str(D) for D in N.operators] == ["1", "dy"]
    assert {len(s) for s in N.specialized} == {2}
    with pytest.raises(InconsistentSpecializations):
        numerical_noetherian_operators(ideal, line[:7] + [{"x": 2.5, "y": 1}], independent=["x"])


def test_witness_point_residuals():
    case = quadruple_line()
    p = WitnessPoint([2.0, 0.0, 0.0], ["t", "x", "y"])
    assert p.check(case.ideal) == 0.0
    with pytest.raises(NotOnVariety):
        WitnessPoint({"t": 2.0, "x": 0.1, "y": 0.0}).check(case.ideal)
    with pytest.raises(NotOnVariety):
        noetherian_operators_at_point(case.ideal, {"t": 1.0, "x": 1.0, "y": 0.0})
    # relative residual: large coordinates are fine
    big = WitnessPoint({"t": 1e6, "x": 1e6, "y": 1e6})
    assert big.check([case.ring.gen("x") - case.ring.gen("y")]) == 0.0
