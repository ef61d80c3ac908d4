"""Checks shared by the module tests and the acceptance suite."""

import random

from conftest import random_polynomial
from oracles import SympyIdeal, apply_with_sympy, fraction_free_numerator
from noetherops.groebner import buchberger
from noetherops.linalg import LabeledMatrix, exact_kernel
from noetherops.polyring import monomials_up_to, split_denominator


def sample_polynomials(ideal, prime, ring, count, seed):
    """``count`` polynomials: members, near misses inside the prime, and random ones."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        kind = k % 4
        if kind == 0:
            f = ring.zero()
            for g in ideal:
                f = f + g * random_polynomial(ring, rng, max_degree=2, max_terms=3)
        elif kind == 1:
            # an element of the prime that is usually not in the ideal
            f = ring.zero()
            for p in prime:
                f = f + p * random_polynomial(ring, rng, max_degree=2, max_terms=3)
        elif kind == 2:
            # a member plus a small perturbation inside the prime
            f = ideal[rng.randrange(len(ideal))] * random_polynomial(ring, rng, max_degree=2, max_terms=2)
            f = f + prime[rng.randrange(len(prime))] * ring.constant(rng.randint(1, 5))
        else:
            f = random_polynomial(ring, rng, max_degree=4, max_terms=5)
        out.append(f)
    return out


def defining_property(operators, ideal, prime, ring, polys):
    """Compare ``f in I`` with ``D • f in P`` for all ``D``; both sides checked twice.

    Returns the number of members among ``polys``.  Membership in ``I`` is
    decided by sympy, membership of ``D • f`` in ``P`` both by the library's
    normal form and by sympy (on the numerator when coefficients are rational
    functions).
    """
    I_oracle = SympyIdeal(ideal, ring)
    P_oracle = SympyIdeal(prime, ring)
    GP = buchberger(prime, ring=ring)
    members = 0
    for f in polys:
        in_I = I_oracle.contains(f)
        ours = all(GP.reduce(ring.convert(D.apply(f))).is_zero() for D in operators)
        theirs = all(P_oracle.contains_expr(fraction_free_numerator(apply_with_sympy(D, f, ring))) for D in operators)
        assert ours == theirs, f"normal form and sympy disagree on {f}"
        assert in_I == ours, f"defining property fails on {f}: member={in_I}"
        members += in_I
    return members


def separating_polynomial(N, k, degree):
    """A polynomial outside the ideal that every operator except the ``k``-th sends into the prime.

    Solved by linear algebra over the coefficient field of the residue field:
    the unknowns are coefficients of monomials in the dependent variables.
    """
    ctx = N.basis.ctx
    S = ctx.ring
    base = ctx.base
    cands = [S.monomial(e) for e in monomials_up_to(S.nvars, degree)]
    ops = N.rational_operators

    def coords(D, m):
        return ctx.coordinates(ctx.convert(D.apply(m)))

    rows = []
    for j, D in enumerate(ops):
        if j == k:
            continue
        vals = [coords(D, m) for m in cands]
        for i in range(ctx.degree):
            rows.append([v[i] for v in vals])
    M = LabeledMatrix(rows, list(range(len(rows))), list(range(len(cands))), base)
    target = [coords(ops[k], m) for m in cands]
    for v in exact_kernel(M).vectors:
        image = [sum((c * t[i] for c, t in zip(v, target)), base.zero()) for i in range(ctx.degree)]
        if any(not base.is_zero(x) for x in image):
            f = S.zero()
            for c, m in zip(v, cands):
                if not base.is_zero(c):
                    f = f + m.scale(c)
            if S.field == N.ring.field:
                return N.ring.convert(f)
            num, _ = split_denominator(f)  # clearing a unit modulo the prime
            return N.ring.convert(num)
    return None


__all__ = ["defining_property", "separating_polynomial", "sample_polynomials"]
