"""Local dual spaces and symbolic Noetherian operators.

The dual space of an ideal ``I`` at a prime ``P`` is computed degree by
degree as the kernel of a Macaulay matrix whose entries are pairings
``<d^b, x^a f_i>`` in the residue field of ``P``.  In positive dimension the
independent variables are first moved into the coefficient field, which makes
the problem zero-dimensional; the resulting operators are then cleared of
denominators.
"""

from __future__ import annotations

import json
from fractions import Fraction
from dataclasses import dataclass, field

from .errors import ContextMismatch, IndependentSetInvalid, NoStabilization, NotLiftable, PrimeNotMinimal
from .groebner import (
    GREVLEX,
    GroebnerBasis,
    buchberger,
    dimension_and_independent_set,
    extend_to_fraction_field,
    is_independent,
)
from .linalg import LabeledMatrix, exact_kernel, reduced_column_echelon
from .polyring import GRLEX, Polynomial, VariableRing, WeylOperator, monomial_order, monomials_up_to
from .scalars import QuotientField, RationalFunctionField

DEFAULT_DMAX = 20


class MacaulayBuilder:
    """Incremental Macaulay matrices ``M_d`` for generators ``F`` over a residue field.

    Entries are cached across degrees, as are the derivatives used to compute
    them, so raising ``d`` only computes the new rows and columns.

    Parameters
    ----------
    generators : list of Polynomial
        Generators of the ideal.  They may live in any ring the residue field
        can convert from (``QQ[t, x]`` or ``QQ(t)[x]``).
    ctx : QuotientField
        Residue field of the prime.
    dvars : sequence of str
        Variables that are multiplied into rows and differentiated in columns.
    order : MonomialOrder
        Order on derivative monomials; columns are listed in increasing order.
    """

    def __init__(self, generators, ctx: QuotientField, dvars, order=GRLEX):
        self.generators = [g for g in generators if not g.is_zero()]
        if not self.generators:
            raise ValueError("no nonzero generators")
        self.ring = self.generators[0].ring
        self.ctx = ctx
        self.dvars = tuple(dvars)
        self.order = monomial_order(order)
        try:
            self._didx = [self.ring.index[v] for v in self.dvars]
        except KeyError as exc:
            raise ContextMismatch(f"variable {exc.args[0]} is not in {self.ring}") from None
        self._rows = {}
        self._deriv = {}
        self._entry = {}

    def row_keys(self, d):
        alphas = monomials_up_to(len(self.dvars), d - 1)
        return [(a, i) for a in alphas for i in range(len(self.generators))]

    def columns(self, d):
        return sorted(monomials_up_to(len(self.dvars), d), key=self.order.key)

    def row_polynomial(self, key):
        if key not in self._rows:
            a, i = key
            exps = [0] * self.ring.nvars
            for k, j in zip(a, self._didx):
                exps[j] = k
            self._rows[key] = self.generators[i].mul_monomial(tuple(exps))
        return self._rows[key]

    def _derivative(self, key, beta):
        """``d^beta`` applied to the row polynomial, built from a cached parent."""
        ck = (key, beta)
        hit = self._deriv.get(ck)
        if hit is not None:
            return hit
        if not any(beta):
            value = self.row_polynomial(key)
        else:
            j = next(k for k, b in enumerate(beta) if b)
            parent = beta[:j] + (beta[j] - 1,) + beta[j + 1:]
            value = self._derivative(key, parent).diff(self._didx[j])
        self._deriv[ck] = value
        return value

    def entry(self, key, beta):
        ck = (key, beta)
        if ck not in self._entry:
            g = self._derivative(key, beta)
            self._entry[ck] = self.ctx.zero() if g.is_zero() else self.ctx.convert(g)
        return self._entry[ck]

    def matrix(self, d) -> LabeledMatrix:
        keys = self.row_keys(d)
        cols = self.columns(d)
        rows = [[self.entry(k, b) for b in cols] for k in keys]
        labels = [self.row_polynomial(k) for k in keys]
        return LabeledMatrix(rows, labels, cols, self.ctx)


def macaulay_matrix(generators, d: int, ctx: QuotientField, order=GRLEX, dvars=None) -> LabeledMatrix:
    """Degree-``d`` Macaulay matrix with entries ``<d^b, x^a f_i>`` in ``ctx``.

    Rows are ``x^a f_i`` with ``|a| < d`` and columns ``d^b`` with
    ``|b| <= d``; both range over ``dvars`` (default: the variables of the
    residue field's ring).
    """
    if d < 1:
        raise ValueError("the degree must be at least 1")
    dvars = ctx.ring.names if dvars is None else dvars
    return MacaulayBuilder(generators, ctx, dvars, order).matrix(d)


@dataclass
class DualSpaceBasis:
    """Echelon basis of a local dual space over a residue field."""

    operators: list
    vectors: list
    labels: list
    ctx: QuotientField
    dvars: tuple
    degree: int
    kernel_dimensions: list
    matrices: dict = field(default_factory=dict)

    @property
    def multiplicity(self):
        return len(self.operators)


def _operators_from_kernel(K, ctx, dvars):
    ops = []
    for v in K.vectors:
        terms = {b: c.rep for b, c in zip(K.labels, v) if not ctx.is_zero(c)}
        ops.append(WeylOperator(ctx.ring, dvars, terms))
    return ops


def dual_space(builder: MacaulayBuilder, d_max=DEFAULT_DMAX, keep_matrices=False) -> DualSpaceBasis:
    """Grow ``d`` until the kernel dimension of ``M_d`` equals that of ``M_{d-1}``."""
    ctx = builder.ctx
    dims = [1]  # degree 0: no rows, the constant functional alone
    matrices = {}
    for d in range(1, d_max + 1):
        M = builder.matrix(d)
        if keep_matrices:
            matrices[d] = M
        K = exact_kernel(M)
        dims.append(K.dimension)
        if K.dimension == dims[-2]:
            E = reduced_column_echelon(K, builder.order)
            ops = _operators_from_kernel(E, ctx, builder.dvars)
            return DualSpaceBasis(ops, E.vectors, E.labels, ctx, builder.dvars, d, dims, matrices)
    raise NoStabilization(
        f"kernel dimensions {dims[1:]} still growing at degree {d_max}; "
        "is the prime a minimal prime of the ideal?"
    )


def _prime_basis(prime, ring):
    if isinstance(prime, GroebnerBasis):
        return prime
    return buchberger([ring.convert(p) for p in prime], GREVLEX, ring)


def noetherian_operators_zero(ideal, prime, order=GRLEX, d_max=DEFAULT_DMAX, keep_matrices=False) -> DualSpaceBasis:
    """Dual space of a zero-dimensional ideal at a maximal ideal.

    Both ``ideal`` and ``prime`` are lists of polynomials of one ring over
    ``QQ`` or ``QQ(t)``; every variable of that ring is differentiated.  When
    ``ideal`` is not primary the result describes its component at ``prime``.

    Raises
    ------
    PrimeNotMinimal
        If some generator of ``ideal`` is not in ``prime``.
    NotInvertible
        If ``prime`` is not maximal.
    NoStabilization
        If the kernel dimension is still increasing at ``d_max``.
    """
    gens = [g for g in ideal if not g.is_zero()]
    ring = gens[0].ring
    G = _prime_basis(prime, ring)
    ctx = QuotientField(G)
    _check_contained(gens, ctx)
    builder = MacaulayBuilder(gens, ctx, ring.names, order)
    return dual_space(builder, d_max, keep_matrices)


def _check_contained(gens, ctx):
    for g in gens:
        if not ctx.is_zero(ctx.convert(g)):
            raise PrimeNotMinimal(f"generator {g} does not lie in the prime")


@dataclass
class NoetherianOperatorSet:
    """Noetherian operators of the component of an ideal at a prime.

    ``rational_operators`` have coefficients in ``QQ(t)[x]`` (reduced modulo
    the prime, echelon normalized); ``operators`` are their lifts with
    polynomial coefficients in the original ring.
    """

    operators: list
    rational_operators: list
    ring: VariableRing
    ideal: list
    prime: list
    independent: list
    dependent: list
    basis: DualSpaceBasis | None = None

    @property
    def multiplicity(self):
        return len(self.operators)

    def to_dict(self):
        return {
            "schema": 1,
            "variables": list(self.ring.names),
            "ideal": [str(g) for g in self.ideal],
            "prime": [str(p) for p in self.prime],
            "independent_vars": list(self.independent),
            "dependent_vars": list(self.dependent),
            "multiplicity": self.multiplicity,
            "operators": [str(D) for D in self.rational_operators],
            "lifted": [str(D) for D in self.operators],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def noetherian_operators(
    ideal,
    prime,
    order=GRLEX,
    d_max=DEFAULT_DMAX,
    independent=None,
    keep_matrices=False,
) -> NoetherianOperatorSet:
    """Noetherian operators for the component of ``ideal`` at the minimal prime ``prime``.

    Parameters
    ----------
    ideal, prime : list of Polynomial
        Generators over ``QQ`` in a common ring.
    order : MonomialOrder
        Order on derivative monomials used for echelon normalization.
    independent : list of str, optional
        Variables to move into the coefficient field.  Computed from the
        leading terms of a Groebner basis of ``prime`` when omitted.
    """
    gens = [g for g in ideal if not g.is_zero()]
    if not gens:
        raise ValueError("the ideal has no nonzero generators")
    ring = gens[0].ring
    prime = [ring.convert(p) for p in prime]
    GP = buchberger(prime, GREVLEX, ring)
    if independent is None:
        _, independent = dimension_and_independent_set(GP)
    else:
        independent = list(independent)
        unknown = [v for v in independent if v not in ring.index]
        if unknown:
            raise IndependentSetInvalid(f"unknown variables {unknown}")
        if not is_independent(GP, independent):
            raise IndependentSetInvalid(f"{independent} is not independent modulo the prime")
    independent = [v for v in ring.names if v in set(independent)]
    dependent = [v for v in ring.names if v not in independent]
    GS = extend_to_fraction_field(prime, independent)
    ctx = QuotientField(GS)
    _check_contained(gens, ctx)
    builder = MacaulayBuilder(gens, ctx, dependent, order)
    basis = dual_space(builder, d_max, keep_matrices)
    lifted = [lift_operator(D, ring) for D in basis.operators]
    return NoetherianOperatorSet(
        operators=lifted,
        rational_operators=basis.operators,
        ring=ring,
        ideal=gens,
        prime=prime,
        independent=independent,
        dependent=dependent,
        basis=basis,
    )


def lift_operator(D: WeylOperator, target: VariableRing | None = None) -> WeylOperator:
    """Clear denominators of a ``QQ(t)[x]``-coefficient operator.

    Multiplies by the lcm of all coefficient denominators and divides by the
    gcd of the resulting coefficients, then rewrites the operator over
    ``target`` (default ``QQ[x, t]`` with the ``t`` variables appended).
    """
    S = D.ring
    F = S.field
    if target is None:
        target = S.combined_ring() if isinstance(F, RationalFunctionField) else S
    if not isinstance(F, RationalFunctionField):
        return WeylOperator(target, D.dvars, {b: target.convert(c) for b, c in D.terms.items()})
    for v in D.dvars:
        if v in F.names:
            raise NotLiftable(f"operator differentiates the independent variable {v}")
    pr = F.poly_ring
    coeffs = [c for poly in D.terms.values() for c in poly.terms.values()]
    lcm = pr.one
    for c in coeffs:
        lcm = lcm.lcm(c.den)
    content = pr.zero
    for c in coeffs:
        content = content.gcd(c.num * lcm.exquo(c.den))
        if content == pr.one:
            break
    tpos = [target.index.get(n) for n in F.names]
    xpos = [target.index.get(n) for n in S.names]
    if any(p is None for p in tpos) or any(p is None for p in xpos):
        raise NotLiftable(f"{target} does not contain all variables of {S} and {F}")
    terms = {}
    for b, poly in D.terms.items():
        out = {}
        for xe, c in poly.terms.items():
            num = (c.num * lcm.exquo(c.den)).exquo(content)
            for te, q in num.terms():
                e = [0] * target.nvars
                for k, p in zip(xe, xpos):
                    e[p] += k
                for k, p in zip(te, tpos):
                    e[p] += k
                out[tuple(e)] = Fraction(int(q.numerator), int(q.denominator))
        terms[b] = Polynomial(target, out)
    return WeylOperator(target, D.dvars, terms)
