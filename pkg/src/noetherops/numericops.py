"""Numerical Noetherian operators.

Operators are first computed at individual points of a component with
floating point linear algebra.  Their coefficients, seen as functions of the
point, are then recovered as rational functions by interpolation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (
    InconsistentSpecializations,
    InterpolationFailed,
    NeedMorePoints,
    NoStabilization,
    NotOnVariety,
)
from .groebner import GREVLEX, buchberger, dimension_and_independent_set
from .linalg import KernelBasis, numeric_kernel, reduced_column_echelon
from .polyring import (
    GRLEX,
    Polynomial,
    SpecializedOperator,
    VariableRing,
    WeylOperator,
    _join_signed,
    monomial_order,
    monomials_up_to,
)
from .scalars import (
    DEFAULT_TOLERANCE,
    QQ,
    ApproxComplexField,
    RationalFunctionField,
    format_complex,
    format_monomial,
)

DEFAULT_POINT_TOLERANCE = 1e-8
INTERPOLATION_DEGREE_CAP = 10
VALIDATION_POINTS = 2
FIDELITY = 1e-6
RATIONAL_DENOMINATOR_CAP = 10**6
RATIONAL_SNAP = 1e-6


class WitnessPoint:
    """A numerical point with named coordinates.

    Parameters
    ----------
    coordinates : mapping or sequence
        Values by variable name, or in the order of ``variables``.
    variables : sequence of str, optional
        Required when ``coordinates`` is a sequence.
    component : str, optional
        Label of the irreducible component the point was sampled from.
    """

    def __init__(self, coordinates, variables=None, component=None, residual=None):
        if isinstance(coordinates, dict):
            self.coordinates = {k: complex(v) for k, v in coordinates.items()}
        else:
            if variables is None:
                raise ValueError("variables are needed for positional coordinates")
            coordinates = list(coordinates)
            if len(coordinates) != len(variables):
                raise ValueError("coordinate count does not match the variable count")
            self.coordinates = {n: complex(v) for n, v in zip(variables, coordinates)}
        for v in self.coordinates.values():
            if not np.isfinite(v):
                raise NotOnVariety("point has non-finite coordinates")
        self.component = component
        self.residual = residual

    def __getitem__(self, name):
        return self.coordinates[name]

    def __contains__(self, name):
        return name in self.coordinates

    def keys(self):
        return self.coordinates.keys()

    def vector(self, names):
        return np.array([self.coordinates[n] for n in names], dtype=complex)

    def __repr__(self):
        inner = ", ".join(f"{k}={format_complex(v)}" for k, v in self.coordinates.items())
        return f"WitnessPoint({inner})"

    def check(self, generators, tol=DEFAULT_POINT_TOLERANCE):
        """Record and verify the residual ``max_i |f_i(p)|``.

        Each residual is measured relative to ``sum |c| |p^e|`` over the
        terms of ``f_i`` (at least one), so the test does not depend on the
        scaling of the generators.
        """
        worst = 0.0
        for f in generators:
            value = 0j
            scale = 0.0
            for e, c in f.terms.items():
                term = complex(float(c))
                for name, k in zip(f.ring.names, e):
                    if k:
                        term *= self.coordinates[name] ** k
                value += term
                scale += abs(term)
            worst = max(worst, abs(value) / max(scale, 1.0))
        self.residual = worst
        if worst > tol:
            raise NotOnVariety(f"point residual {worst:.3g} exceeds {tol:g}")
        return worst


def _as_point(p, variables=None):
    if isinstance(p, WitnessPoint):
        return p
    return WitnessPoint(p, variables)


def _monomial_values(point, names, exps):
    vals = point.vector(names)
    out = np.empty(len(exps), dtype=complex)
    for j, e in enumerate(exps):
        v = 1 + 0j
        for x, k in zip(vals, e):
            if k:
                v *= x**k
        out[j] = v
    return out


def choose_independent(ideal, prime=None, independent=None):
    """Independent variables: as given, else from the prime, else from the ideal."""
    ring = ideal[0].ring
    if independent is not None:
        return [v for v in ring.names if v in set(independent)]
    gens = prime if prime else ideal
    G = buchberger([ring.convert(g) for g in gens], GREVLEX, ring)
    return dimension_and_independent_set(G)[1]


class _PointMatrices:
    """Numeric Macaulay matrices at one point, cached across degrees."""

    def __init__(self, generators, point, dvars):
        self.generators = generators
        self.ring = generators[0].ring
        self.point = point
        self.dvars = tuple(dvars)
        self._didx = [self.ring.index[v] for v in self.dvars]
        self._deriv = {}
        self._entry = {}

    def _derivative(self, key, gamma):
        ck = (key, gamma)
        hit = self._deriv.get(ck)
        if hit is not None:
            return hit
        if not any(gamma):
            a, i = key
            value = self.generators[i].mul_monomial(a)
        else:
            j = next(k for k, b in enumerate(gamma) if b)
            parent = gamma[:j] + (gamma[j] - 1,) + gamma[j + 1:]
            value = self._derivative(key, parent).diff(self._didx[j])
        self._deriv[ck] = value
        return value

    def entry(self, key, gamma):
        """Value and magnitude (sum of absolute term values) of ``d^gamma`` of a row."""
        ck = (key, gamma)
        if ck not in self._entry:
            g = self._derivative(key, gamma)
            self._entry[ck] = (0j, 0.0) if g.is_zero() else (g.evaluate_at(self.point), _magnitude(g, self.point))
        return self._entry[ck]

    def matrix(self, d, columns):
        """The degree-``d`` matrix and a scale per row.

        A row's scale is the largest magnitude among its entries, so an entry
        that is rounding noise (a polynomial vanishing at the point) stays
        small after scaling.
        """
        alphas = monomials_up_to(self.ring.nvars, d - 1)
        keys = [(a, i) for a in alphas for i in range(len(self.generators))]
        M = np.empty((len(keys), len(columns)), dtype=complex)
        scales = np.zeros(len(keys))
        for r, k in enumerate(keys):
            for c, g in enumerate(columns):
                M[r, c], mag = self.entry(k, g)
                scales[r] = max(scales[r], mag)
        return M, scales


def _magnitude(g: Polynomial, point) -> float:
    total = 0.0
    for e, c in g.terms.items():
        term = abs(float(c))
        for name, k in zip(g.ring.names, e):
            if k:
                term *= abs(point[name]) ** k
        total += term
    return total


def noetherian_operators_at_point(
    ideal,
    point,
    independent=None,
    order=GRLEX,
    tol: float = DEFAULT_TOLERANCE,
    d_max: int = 20,
    point_tol: float = DEFAULT_POINT_TOLERANCE,
    prime=None,
):
    """Specialized Noetherian operators at a point of an isolated component.

    Rows of the degree-``d`` matrix are ``x^a t^b f_i`` with ``|a + b| < d``,
    columns are derivatives ``d_x^g`` with ``|g| <= d`` in the dependent
    variables, and entries are values at ``point``.  The kernel dimension is
    tracked until it repeats; the final kernel is echelon normalized.

    Returns
    -------
    list of SpecializedOperator
    """
    gens = [g for g in ideal if not g.is_zero()]
    ring = gens[0].ring
    order = monomial_order(order)
    point = _as_point(point, ring.names)
    point.check(gens, point_tol)
    independent = choose_independent(gens, prime, independent)
    dependent = [v for v in ring.names if v not in independent]
    mats = _PointMatrices(gens, point, dependent)
    dims = [1]
    for d in range(1, d_max + 1):
        cols = sorted(monomials_up_to(len(dependent), d), key=order.key)
        M, scales = mats.matrix(d, cols)
        K = numeric_kernel(M, tol, labels=cols, row_scales=scales)
        dims.append(K.dimension)
        if K.dimension == dims[-2]:
            E = reduced_column_echelon(K, order, tol)
            return [
                SpecializedOperator(dependent, dict(zip(E.labels, v)), tol) for v in E.vectors
            ]
    raise NoStabilization(f"kernel dimensions {dims[1:]} still growing at degree {d_max}")


@dataclass
class InterpolatedCoefficient:
    """A rational function ``numerator / denominator`` fitted to sampled values.

    ``exact`` is true when every coefficient was rationalized; otherwise
    the polynomials have complex floating point coefficients.
    """

    numerator: Polynomial
    denominator: Polynomial
    residual: float
    exact: bool
    flagged: bool = False

    def evaluate(self, point) -> complex:
        den = self.denominator.evaluate_at(point)
        return self.numerator.evaluate_at(point) / den

    def is_one(self):
        return self.exact and self.numerator == self.denominator

    def to_string(self):
        return _ratio_text(self.numerator, self.denominator)

    def __str__(self):
        return self.to_string()


def _ratio_text(num: Polynomial, den: Polynomial):
    ntext = str(num)
    if den.is_constant():
        c = den.constant_term()
        if c == 1:
            return ntext
    if len(num.terms) > 1:
        ntext = f"({ntext})"
    dtext = str(den)
    single_power = len(den.terms) == 1 and sum(1 for k in next(iter(den.terms)) if k) == 1
    if not (single_power and den.ring.field.is_one(next(iter(den.terms.values())))):
        dtext = f"({dtext})"
    return f"{ntext}/{dtext}"


def _rationalize(x: complex):
    if abs(x.imag) > RATIONAL_SNAP * max(1.0, abs(x)):
        return None
    q = Fraction(x.real).limit_denominator(RATIONAL_DENOMINATOR_CAP)
    if abs(float(q) - x.real) > RATIONAL_SNAP * max(1.0, abs(x.real)):
        return None
    return q


def _fidelity_ok(values, pred):
    return all(abs(p - v) <= FIDELITY * (1 + abs(v)) for p, v in zip(pred, values))


def rational_interpolation(
    points,
    values,
    numerator_monomials,
    denominator_monomials,
    variables,
    tol: float = DEFAULT_TOLERANCE,
    order=GRLEX,
) -> InterpolatedCoefficient:
    """Fit ``f / g`` with ``f`` supported on ``numerator_monomials`` and ``g`` on
    ``denominator_monomials`` (exponent tuples over ``variables``).

    All but the last two points build the linear system ``f(p_i) - v_i g(p_i) = 0``;
    the last two are held out.  Kernel vectors whose ``f`` or ``g`` vanishes at
    the first held-out point are discarded, and the remaining kernel is echelon
    normalized so that the lowest denominator monomial is preferred.

    Raises
    ------
    NeedMorePoints
        Fewer than ``len(n) + len(d) + 2`` points.
    InterpolationFailed
        No kernel vector gives a valid rational function.
    """
    variables = list(variables)
    points = [_as_point(p, variables) for p in points]
    values = np.asarray(values, dtype=complex)
    n_exps = [tuple(e) for e in numerator_monomials]
    d_exps = [tuple(e) for e in denominator_monomials]
    if not n_exps or not d_exps:
        raise ValueError("both monomial lists must be nonempty")
    need = len(n_exps) + len(d_exps) + VALIDATION_POINTS
    if len(points) < need:
        raise NeedMorePoints(f"{len(points)} points given, the ansatz needs {need}")
    if len(values) != len(points):
        raise ValueError("one value per point is required")
    if not np.all(np.isfinite(values)):
        raise InterpolationFailed("non-finite sample values")
    fit = points[:-VALIDATION_POINTS]
    held = points[-VALIDATION_POINTS:]
    Nv = np.array([_monomial_values(p, variables, n_exps) for p in fit])
    Dv = np.array([_monomial_values(p, variables, d_exps) for p in fit])
    M = np.hstack([Nv, -values[: len(fit), None] * Dv])
    labels = [("n", e) for e in n_exps] + [("d", e) for e in d_exps]
    K = numeric_kernel(M, tol, labels=list(range(len(labels))))
    if K.dimension == 0:
        raise InterpolationFailed("no rational function of this shape fits the data")
    # echelon with denominator coordinates first (ascending), then numerators (descending)
    key = monomial_order(order).key
    priority = sorted(range(len(d_exps)), key=lambda j: key(d_exps[j]))
    priority = [len(n_exps) + j for j in priority]
    priority += sorted(range(len(n_exps)), key=lambda j: key(n_exps[j]), reverse=True)
    rank = {c: -r for r, c in enumerate(priority)}
    E = reduced_column_echelon(
        KernelBasis(K.vectors, list(range(len(labels))), K.ctx), _RankOrder(rank), tol
    )
    p0 = held[0]
    n0 = _monomial_values(p0, variables, n_exps)
    d0 = _monomial_values(p0, variables, d_exps)
    for v in E.vectors:
        v = np.asarray(v, dtype=complex)
        xf, xg = v[: len(n_exps)], v[len(n_exps):]
        scale = max(np.max(np.abs(v)), 1e-300)
        if abs(xf @ n0) <= tol * scale or abs(xg @ d0) <= tol * scale:
            continue
        piv = next(j for j in priority if abs(v[j]) > 0)
        if piv < len(n_exps):
            continue
        v = v / v[piv]
        result = _build_coefficient(v[: len(n_exps)], v[len(n_exps):], n_exps, d_exps, variables, points, values)
        if result is not None:
            return result
    raise InterpolationFailed("no suitable rational function found")


class _RankOrder:
    """Order on integer labels given by an explicit rank table."""

    def __init__(self, rank):
        self.rank = rank

    def key(self, label):
        return self.rank[label]


def _build_coefficient(xf, xg, n_exps, d_exps, variables, points, values):
    qring = VariableRing(variables, QQ)
    cring = VariableRing(variables, ApproxComplexField(0.0))
    qf = [_rationalize(c) for c in xf]
    qg = [_rationalize(c) for c in xg]
    candidates = []
    if all(q is not None for q in qf + qg):
        num = Polynomial(qring, {e: q for e, q in zip(n_exps, qf)})
        den = Polynomial(qring, {e: q for e, q in zip(d_exps, qg)})
        if not den.is_zero():
            candidates.append((num, den, True))
    num = Polynomial(cring, {e: complex(c) for e, c in zip(n_exps, xf) if c != 0})
    den = Polynomial(cring, {e: complex(c) for e, c in zip(d_exps, xg) if c != 0})
    candidates.append((num, den, False))
    for num, den, exact in candidates:
        try:
            pred = []
            for p in points:
                g = den.evaluate_at(p)
                if g == 0:
                    raise ZeroDivisionError
                pred.append(num.evaluate_at(p) / g)
        except ZeroDivisionError:
            continue
        if _fidelity_ok(values, pred):
            resid = float(max(abs(a - b) for a, b in zip(pred, values)))
            return InterpolatedCoefficient(num, den, resid, exact)
    return None


def interpolate_with_schedule(
    points,
    values,
    variables,
    independent,
    tol=DEFAULT_TOLERANCE,
    degree_cap=INTERPOLATION_DEGREE_CAP,
    order=GRLEX,
):
    """Try ansatz degrees ``d = 0, 1, ...``: numerators in all variables and
    denominators in ``independent`` with total degree at most ``d``."""
    variables = list(variables)
    tmask = [v in set(independent) for v in variables]
    last = None
    for d in range(degree_cap + 1):
        n_exps = monomials_up_to(len(variables), d)
        d_exps = [e for e in n_exps if all(k == 0 or t for k, t in zip(e, tmask))]
        need = len(n_exps) + len(d_exps) + VALIDATION_POINTS
        if len(points) < need:
            raise InterpolationFailed(
                f"ansatz degree {d} needs {need} points, only {len(points)} given"
                + (f"; last failure: {last}" if last else "")
            )
        try:
            return rational_interpolation(points, values, n_exps, d_exps, variables, tol, order)
        except InterpolationFailed as exc:
            last = str(exc)
    raise InterpolationFailed(f"no interpolant up to degree {degree_cap}")


@dataclass
class NumericalOperator:
    """``sum_a (f_a / g_a) d^a`` with interpolated coefficients."""

    dvars: tuple
    terms: dict

    def specialize(self, point) -> SpecializedOperator:
        return SpecializedOperator(self.dvars, {a: c.evaluate(point) for a, c in self.terms.items()})

    @property
    def exact(self):
        return all(c.exact for c in self.terms.values())

    def to_weyl(self, ring: VariableRing) -> WeylOperator:
        """Exact operator over ``QQ(t)[x]`` (``ring``), when every coefficient is rational."""
        if not self.exact:
            raise InterpolationFailed("operator has floating point coefficients")
        F = ring.field
        terms = {}
        for a, c in self.terms.items():
            num = ring.convert(c.numerator)
            den = ring.convert(c.denominator)
            if not den.is_constant():
                raise InterpolationFailed("denominator involves dependent variables")
            terms[a] = num.scale(F.inv(den.constant_term()))
        return WeylOperator(ring, self.dvars, terms)

    def __str__(self):
        pieces = []
        for a in sorted(self.terms, key=GRLEX.key, reverse=True):
            c = self.terms[a]
            dmono = format_monomial(a, self.dvars, prefix="d")
            text = c.to_string()
            if not dmono:
                pieces.append(text)
                continue
            if text == "1":
                pieces.append(dmono)
            elif text == "-1":
                pieces.append("-" + dmono)
            else:
                pieces.append(f"({text})*{dmono}")
        return _join_signed(pieces) if pieces else "0"


@dataclass
class NumericalOperatorSet:
    operators: list
    variables: list
    independent: list
    dependent: list
    specialized: list = field(default_factory=list)
    flagged_terms: list = field(default_factory=list)
    component: str | None = None

    @property
    def multiplicity(self):
        return len(self.operators)

    def fraction_field_ring(self):
        if not self.independent:
            return VariableRing(self.dependent, QQ)
        return VariableRing(
            self.dependent, RationalFunctionField(self.independent), display_names=self.variables
        )

    def to_dict(self):
        ops = []
        for D in self.operators:
            ops.append(
                {
                    "operator": str(D),
                    "terms": [
                        {
                            "derivative": list(a),
                            "coefficient": c.to_string(),
                            "exact": c.exact,
                            "residual": repr(c.residual),
                            "flagged": c.flagged,
                        }
                        for a, c in sorted(D.terms.items(), key=lambda kv: GRLEX.key(kv[0]), reverse=True)
                    ],
                }
            )
        return {
            "schema": 1,
            "numeric": True,
            "component": self.component,
            "variables": list(self.variables),
            "independent_vars": list(self.independent),
            "dependent_vars": list(self.dependent),
            "multiplicity": self.multiplicity,
            "operators": [str(D) for D in self.operators],
            "details": ops,
            "flagged_terms": [[i, list(a)] for i, a in self.flagged_terms],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def numerical_noetherian_operators(
    ideal,
    points,
    independent=None,
    prime=None,
    order=GRLEX,
    tol: float = DEFAULT_TOLERANCE,
    d_max: int = 20,
    degree_cap: int = INTERPOLATION_DEGREE_CAP,
    point_tol: float = DEFAULT_POINT_TOLERANCE,
    component=None,
) -> NumericalOperatorSet:
    """Noetherian operators with interpolated coefficients from sample points.

    Every point yields specialized operators; since they are echelon
    normalized, the coefficient of each derivative monomial is a function on
    the component, which is interpolated term by term.  A term that is absent
    at some points is sampled as zero there and reported in ``flagged_terms``.

    Raises
    ------
    InconsistentSpecializations
        Operator counts or pivots differ between points.
    InterpolationFailed
        Some coefficient could not be interpolated with the available points.
    """
    gens = [g for g in ideal if not g.is_zero()]
    ring = gens[0].ring
    variables = list(ring.names)
    points = [_as_point(p, variables) for p in points]
    if not points:
        raise NeedMorePoints("no sample points")
    independent = choose_independent(gens, prime, independent)
    dependent = [v for v in variables if v not in independent]
    order = monomial_order(order)
    specialized = [
        noetherian_operators_at_point(gens, p, independent, order, tol, d_max, point_tol) for p in points
    ]
    counts = {len(s) for s in specialized}
    if len(counts) != 1:
        raise InconsistentSpecializations(f"operator counts differ between points: {sorted(counts)}")
    pivots = [[D.pivot(order) for D in s] for s in specialized]
    if any(p != pivots[0] for p in pivots):
        raise InconsistentSpecializations("pivot monomials differ between points")
    operators = []
    flagged = []
    for j in range(len(specialized[0])):
        support = set()
        for s in specialized:
            support |= set(s[j].terms)
        terms = {}
        for a in sorted(support, key=order.key, reverse=True):
            vals = [s[j].coefficient(a) for s in specialized]
            absent = any(a not in s[j].terms for s in specialized)
            coeff = interpolate_with_schedule(points, vals, variables, independent, tol, degree_cap, order)
            coeff.flagged = absent
            if absent:
                flagged.append((j, a))
                if coeff.exact and coeff.numerator.is_zero():
                    continue
            terms[a] = coeff
        operators.append(NumericalOperator(tuple(dependent), terms))
    return NumericalOperatorSet(
        operators, variables, independent, dependent, specialized, flagged, component
    )
