"""Workflows built on Noetherian operators.

* probabilistic ideal membership from operators and sample points;
* primary decomposition of unmixed ideals from witness points grouped by
  component;
* transport of operators along a linear change of coordinates;
* the ideal ``N(G)`` obtained by applying operators to generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .dualspace import NoetherianOperatorSet
from .errors import NeedMorePoints, NoetherError, SingularChange
from .groebner import GREVLEX, buchberger
from .numericops import (
    DEFAULT_POINT_TOLERANCE,
    NumericalOperatorSet,
    WitnessPoint,
    _as_point,
    numerical_noetherian_operators,
)
from .polyring import Polynomial, VariableRing, WeylOperator
from .scalars import DEFAULT_TOLERANCE

DEFAULT_TRIALS = 3


@dataclass
class ComponentDescription:
    """One component: sample points and Noetherian operators (or the failure)."""

    points: list
    operators: object = None
    prime: list | None = None
    component: str | None = None
    error: NoetherError | None = None

    @property
    def ok(self):
        return self.error is None and self.operators is not None

    def to_dict(self):
        out = {"component": self.component, "points": len(self.points)}
        if self.error is not None:
            out["error"] = self.error.to_dict()
        else:
            out.update(self.operators.to_dict())
        return out


@dataclass
class MembershipResult:
    per_component: list
    aggregate: bool
    max_values: list = field(default_factory=list)


def _operator_values(ops, f: Polynomial, point: WitnessPoint):
    """``(D • f)(p)`` for each operator with a scale for a relative test."""
    out = []
    if isinstance(ops, NumericalOperatorSet):
        ring = f.ring
        for D in ops.operators:
            value, scale = 0j, 0.0
            for a, c in D.terms.items():
                df = f.diff_multi([ring.index[v] for v in D.dvars], a)
                if df.is_zero():
                    continue
                cv = c.evaluate(point)
                value += cv * df.evaluate_at(point)
                scale += abs(cv) * _magnitude(df, point)
            out.append((value, scale))
        return out
    operators = ops.operators if isinstance(ops, NoetherianOperatorSet) else ops
    for D in operators:
        g = D.apply(D.ring.convert(f))
        out.append((g.evaluate_at(point), _magnitude(g, point)))
    return out


def _magnitude(g: Polynomial, point) -> float:
    total = 0.0
    for e, c in g.terms.items():
        term = abs(complex(float(c))) if isinstance(c, Fraction) else abs(g.ring.field.evaluate(c, point))
        for name, k in zip(g.ring.names, e):
            if k:
                term *= abs(point[name]) ** k
        total += term
    return total


def membership_test(f: Polynomial, components, trials: int = DEFAULT_TRIALS, tol: float = DEFAULT_TOLERANCE):
    """Decide ``f in I`` by evaluating ``(D • f)(p)`` at sample points.

    A component accepts ``f`` when every value is at most ``tol`` times the
    sum of the magnitudes of the terms that produced it (at least one).  The
    aggregate answer is the conjunction over components, which is valid when
    the ideal has no embedded components.

    Raises
    ------
    NeedMorePoints
        A component has fewer than ``trials`` points.
    """
    verdicts = []
    worst = []
    for comp in components:
        if not comp.ok:
            raise NoetherError(f"component {comp.component!r} has no operators")
        if len(comp.points) < trials:
            raise NeedMorePoints(
                f"component {comp.component!r} has {len(comp.points)} points, {trials} needed"
            )
        member = True
        top = 0.0
        for p in comp.points[:trials]:
            p = _as_point(p, f.ring.names)
            if f.is_zero():
                continue
            for value, scale in _operator_values(comp.operators, f, p):
                rel = abs(value) / max(scale, 1.0)
                top = max(top, rel)
                if rel > tol:
                    member = False
        verdicts.append(member)
        worst.append(top)
    return MembershipResult(verdicts, all(verdicts), worst)


def exact_membership(f: Polynomial, N: NoetherianOperatorSet) -> bool:
    """``f in I`` decided by ``D • f in P`` for every operator, with normal forms."""
    G = buchberger(N.prime, GREVLEX, N.ring)
    f = N.ring.convert(f)
    return all(G.reduce(D.apply(f)).is_zero() for D in N.operators)


def numerical_primary_decomposition(ideal, witness, **config):
    """Noetherian operators for each component of an unmixed ideal.

    Parameters
    ----------
    ideal : list of Polynomial
    witness : mapping or list
        Points grouped by component: ``{component_id: [points]}`` or a list
        of point lists.
    **config
        Passed to :func:`~noetherops.numericops.numerical_noetherian_operators`.
        ``independent`` may be a mapping from component id to variables.

    Failures are recorded on the corresponding entry and do not stop the
    remaining components.
    """
    items = witness.items() if isinstance(witness, dict) else enumerate(witness)
    out = []
    indep = config.pop("independent", None)
    for cid, pts in items:
        cid = str(cid)
        comp_indep = indep.get(cid) if isinstance(indep, dict) else indep
        try:
            ops = numerical_noetherian_operators(
                ideal, pts, independent=comp_indep, component=cid, **config
            )
            out.append(ComponentDescription(list(pts), ops, component=cid))
        except NoetherError as exc:
            out.append(ComponentDescription(list(pts), None, component=cid, error=exc))
    return out


class LinearChange:
    """The coordinate change ``x -> A x`` on a polynomial ring over ``QQ``."""

    def __init__(self, A, ring: VariableRing):
        n = ring.nvars
        A = [[Fraction(v) for v in row] for row in A]
        if len(A) != n or any(len(r) != n for r in A):
            raise SingularChange(f"expected a {n}x{n} matrix")
        self.A = A
        self.ring = ring
        self.Ainv = _inverse(A)

    def _images(self, M):
        gens = self.ring.gens()
        return {
            name: sum((g * M[i][j] for j, g in enumerate(gens) if M[i][j]), self.ring.zero())
            for i, name in enumerate(self.ring.names)
        }

    def apply(self, f: Polynomial) -> Polynomial:
        """``phi(f)(x) = f(A x)``."""
        return self.ring.convert(f).substitute(self._images(self.A))

    def inverse(self, f: Polynomial) -> Polynomial:
        """``phi^-1(f)(x) = f(A^-1 x)``."""
        return self.ring.convert(f).substitute(self._images(self.Ainv))

    def transform_operator(self, D: WeylOperator) -> WeylOperator:
        """``psi(D)``: coefficients ``c(A x)`` and ``d_j -> sum_k (A^-1)_{kj} d_k``."""
        ring = self.ring
        names = ring.names
        n = ring.nvars
        images = self._images(self.A)
        linear = {}
        for v in D.dvars:
            j = ring.index[v]
            linear[v] = {k: self.Ainv[k][j] for k in range(n) if self.Ainv[k][j]}
        terms = {}
        for a, c in D.terms.items():
            coeff = ring.convert(c).substitute(images)
            expansion = {(0,) * n: Fraction(1)}
            for v, k in zip(D.dvars, a):
                for _ in range(k):
                    nxt = {}
                    for e, w in expansion.items():
                        for idx, b in linear[v].items():
                            ne = e[:idx] + (e[idx] + 1,) + e[idx + 1:]
                            nxt[ne] = nxt.get(ne, 0) + w * b
                    expansion = nxt
            for e, w in expansion.items():
                if w:
                    term = coeff * w
                    terms[e] = terms[e] + term if e in terms else term
        return WeylOperator(ring, names, terms)


def _inverse(A):
    n = len(A)
    rows = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            raise SingularChange("the matrix is singular")
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        rows[col] = [x / p for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return [r[n:] for r in rows]


def transform_operators(N, A) -> NoetherianOperatorSet:
    """Noetherian operators for ``phi(I)`` from operators for ``I``.

    ``A`` is a matrix (rows of rationals) or a :class:`LinearChange`.  The
    transformed operators differentiate in all variables.

    Raises
    ------
    SingularChange
        ``A`` is not invertible.
    """
    change = A if isinstance(A, LinearChange) else LinearChange(A, N.ring)
    ops = [change.transform_operator(D) for D in N.operators]
    return NoetherianOperatorSet(
        operators=ops,
        rational_operators=ops,
        ring=N.ring,
        ideal=[change.apply(g) for g in N.ideal],
        prime=[change.apply(p) for p in N.prime],
        independent=[],
        dependent=list(N.ring.names),
    )


def apply_to_generators(N, generators):
    """``N(G)``: every nonzero ``D • g`` for ``D`` in ``N`` and ``g`` in ``G``."""
    operators = N.operators if hasattr(N, "operators") else N
    out = []
    for D in operators:
        for g in generators:
            h = D.apply(D.ring.convert(g))
            if not h.is_zero():
                out.append(h)
    return out


__all__ = [
    "ComponentDescription",
    "DEFAULT_POINT_TOLERANCE",
    "LinearChange",
    "MembershipResult",
    "apply_to_generators",
    "exact_membership",
    "membership_test",
    "numerical_primary_decomposition",
    "transform_operators",
]
