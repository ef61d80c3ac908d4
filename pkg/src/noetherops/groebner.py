"""Groebner bases by Buchberger's algorithm.

Supplies normal forms (used for membership tests and as canonical
representatives in residue fields), the Krull dimension of an ideal and a
maximal set of independent variables read off the leading-term ideal.
"""

from __future__ import annotations

from itertools import combinations

from .errors import ContextMismatch, EmptyVariety, IndependentSetInvalid
from .polyring import GREVLEX, GRLEX, LEX, MonomialOrder, Polynomial, VariableRing, monomial_order
from .scalars import QQ, RationalField, RationalFunctionField

__all__ = [
    "GREVLEX",
    "GRLEX",
    "LEX",
    "MonomialOrder",
    "BlockOrder",
    "GroebnerBasis",
    "buchberger",
    "normal_form",
    "dimension_and_independent_set",
    "extend_to_fraction_field",
]


class BlockOrder(MonomialOrder):
    """Grevlex on the first ``split`` variables, ties broken by grevlex on the rest.

    Eliminates nothing by itself; it is used so that a basis over ``QQ[x, t]``
    is also a basis of the extension to ``QQ(t)[x]``.
    """

    def __init__(self, split: int):
        self.kind = f"BLOCK{split}"
        self.split = split
        g = GREVLEX.key
        self.key = lambda e: (g(e[:split]), g(e[split:]))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _quotient(b, a):
    return tuple(y - x for x, y in zip(a, b))


def _monic(f: Polynomial, order) -> Polynomial:
    _, lc = f.leading_term(order)
    field = f.ring.field
    if field.is_one(lc):
        return f
    return f.scale(field.inv(lc))


def _reduce(f: Polynomial, basis, order, lead) -> Polynomial:
    """Full reduction of ``f`` by monic polynomials ``basis`` with leading monomials ``lead``."""
    ring = f.ring
    field = ring.field
    key = order.key
    terms = dict(f.terms)
    remainder = {}
    tails = [dict(g.terms) for g in basis]
    for t, m in zip(tails, lead):
        del t[m]
    while terms:
        m = max(terms, key=key)
        c = terms.pop(m)
        for j, lm in enumerate(lead):
            if _divides(lm, m):
                q = _quotient(m, lm)
                for e, v in tails[j].items():
                    ne = tuple(a + b for a, b in zip(e, q))
                    if ne in terms:
                        s = terms[ne] - c * v
                        if field.is_zero(s):
                            del terms[ne]
                        else:
                            terms[ne] = s
                    else:
                        terms[ne] = -(c * v)
                break
        else:
            remainder[m] = c
    return Polynomial(ring, remainder, clean=True)


def _s_polynomial(f, g, lf, lg):
    lcm = _lcm(lf, lg)
    return f.mul_monomial(_quotient(lcm, lf)) - g.mul_monomial(_quotient(lcm, lg))


class GroebnerBasis:
    """A reduced Groebner basis: monic generators, none reducible by another."""

    def __init__(self, ring: VariableRing, generators, order=GREVLEX):
        self.ring = ring
        self.order = monomial_order(order)
        gens = sorted(generators, key=lambda g: self.order.key(g.leading_monomial(self.order)))
        self.generators = tuple(gens)
        self.leading = tuple(g.leading_monomial(self.order) for g in gens)
        self._standard = False

    def __repr__(self):
        return f"GroebnerBasis([{', '.join(str(g) for g in self.generators)}])"

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def is_unit(self):
        return any(not any(m) for m in self.leading)

    def reduce(self, f: Polynomial) -> Polynomial:
        f = self.ring.convert(f)
        if f.is_zero() or not self.generators:
            return f
        return _reduce(f, self.generators, self.order, self.leading)

    def contains(self, f) -> bool:
        return self.reduce(f).is_zero()

    def standard_monomials(self):
        """Monomials outside the leading-term ideal, ascending; ``None`` when infinite."""
        if self._standard is not False:
            return self._standard
        n = self.ring.nvars
        if self.is_unit():
            self._standard = []
            return []
        pure = [None] * n
        for m in self.leading:
            support = [i for i, k in enumerate(m) if k]
            if len(support) == 1:
                i = support[0]
                pure[i] = m[i] if pure[i] is None else min(pure[i], m[i])
        if any(p is None for p in pure):
            self._standard = None
            return None
        found = []
        frontier = [(0,) * n]
        seen = set(frontier)
        while frontier:
            nxt = []
            for m in frontier:
                if any(_divides(lm, m) for lm in self.leading):
                    continue
                found.append(m)
                for i in range(n):
                    e = m[:i] + (m[i] + 1,) + m[i + 1:]
                    if e not in seen:
                        seen.add(e)
                        nxt.append(e)
            frontier = nxt
        self._standard = sorted(found, key=self.order.key)
        return self._standard

    def is_zero_dimensional(self):
        return self.standard_monomials() is not None and not self.is_unit()

    def quotient_dimension(self):
        s = self.standard_monomials()
        return None if s is None else len(s)

    def dimension(self):
        return dimension_and_independent_set(self)[0]

    def s_pairs_reduce_to_zero(self) -> bool:
        gens, lead = self.generators, self.leading
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                s = _s_polynomial(gens[i], gens[j], lead[i], lead[j])
                if not self.reduce(s).is_zero():
                    return False
        return True


def _interreduce(polys, order):
    """Minimal, reduced and monic basis from a Groebner basis ``polys``."""
    polys = [_monic(p, order) for p in polys if not p.is_zero()]
    polys.sort(key=lambda g: order.key(g.leading_monomial(order)))
    minimal = []
    for p in polys:
        lm = p.leading_monomial(order)
        if any(_divides(q.leading_monomial(order), lm) for q in minimal):
            continue
        minimal.append(p)
    out = []
    for i, p in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        lead = [q.leading_monomial(order) for q in others]
        out.append(_reduce(p, others, order, lead) if others else p)
    return out


def buchberger(generators, order=GREVLEX, ring=None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``generators``.

    Pairs are processed by the normal selection strategy (smallest lcm
    first); pairs with coprime leading monomials and pairs made redundant by
    the chain criterion are skipped.
    """
    order = monomial_order(order)
    gens = [g for g in generators if not g.is_zero()]
    if ring is None:
        if not gens:
            raise ValueError("cannot infer the ring of an empty generator list")
        ring = gens[0].ring
    gens = [ring.convert(g) for g in gens]
    if not ring.field.exact:
        raise ContextMismatch("Groebner bases need an exact coefficient field")
    basis = []
    lead = []
    pairs = []

    def add(h):
        h = _monic(h, order)
        lm = h.leading_monomial(order)
        k = len(basis)
        # chain criterion: drop (i, j) when lm divides lcm(i, j) strictly
        kept = []
        for i, j, lcm in pairs:
            if (
                _divides(lm, lcm)
                and _lcm(lead[i], lm) != lcm
                and _lcm(lead[j], lm) != lcm
            ):
                continue
            kept.append((i, j, lcm))
        pairs[:] = kept
        basis.append(h)
        lead.append(lm)
        for i in range(k):
            if lead[i] is None:
                continue
            pairs.append((i, k, _lcm(lead[i], lm)))

    for g in gens:
        h = _reduce(g, [b for b in basis], order, lead) if basis else g
        if not h.is_zero():
            add(h)
    while pairs:
        best = min(range(len(pairs)), key=lambda n: order.key(pairs[n][2]))
        i, j, lcm = pairs.pop(best)
        li, lj = lead[i], lead[j]
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue  # coprime leading monomials
        s = _s_polynomial(basis[i], basis[j], li, lj)
        h = _reduce(s, basis, order, lead)
        if not h.is_zero():
            add(h)
            if not any(h.leading_monomial(order)):
                break  # unit ideal
    return GroebnerBasis(ring, _interreduce(basis, order), order)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    return G.reduce(f)


def dimension_and_independent_set(G: GroebnerBasis):
    """Krull dimension and the lexicographically first maximal independent set.

    A set ``S`` of variables is independent modulo the ideal iff no leading
    monomial of ``G`` involves only variables of ``S``.
    """
    if G.is_unit():
        raise EmptyVariety("the ideal is the whole ring")
    n = G.ring.nvars
    supports = [frozenset(i for i, k in enumerate(m) if k) for m in G.leading]
    for size in range(n, -1, -1):
        for combo in combinations(range(n), size):
            s = set(combo)
            if not any(sup <= s for sup in supports):
                return size, [G.ring.names[i] for i in combo]
    raise EmptyVariety("the ideal is the whole ring")


def is_independent(G: GroebnerBasis, names) -> bool:
    idx = {G.ring.index[n] for n in names}
    return not any({i for i, k in enumerate(m) if k} <= idx for m in G.leading)


def extend_to_fraction_field(generators, independent, order=GREVLEX) -> GroebnerBasis:
    """Reduced Groebner basis of the extension of an ideal of ``QQ[t, x]`` to ``QQ(t)[x]``.

    ``independent`` names the variables ``t`` moved into the coefficient field.
    The basis is computed over ``QQ`` with a block order (``x`` block first),
    whose image in ``QQ(t)[x]`` is a Groebner basis of the extension.

    Raises
    ------
    IndependentSetInvalid
        If the extended ideal is not zero-dimensional, or is the unit ideal.
    """
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        raise IndependentSetInvalid("the zero ideal has no zero-dimensional extension")
    src = gens[0].ring
    if not isinstance(src.field, RationalField):
        raise ContextMismatch("expected generators with rational coefficients")
    unknown = set(independent) - set(src.names)
    if unknown:
        raise IndependentSetInvalid(f"unknown variables {sorted(unknown)}")
    independent = [v for v in src.names if v in set(independent)]
    dependent = [v for v in src.names if v not in independent]
    if not independent:
        ring = VariableRing(dependent, QQ, order)
        G = buchberger([ring.convert(g) for g in gens], order, ring)
    else:
        block_ring = VariableRing(dependent + independent, QQ, BlockOrder(len(dependent)))
        GB = buchberger([block_ring.convert(g) for g in gens], block_ring.order, block_ring)
        ring = VariableRing(dependent, RationalFunctionField(independent), order, display_names=src.names)
        images = [ring.convert(g) for g in GB.generators]
        G = GroebnerBasis(ring, _interreduce(images, ring.order), ring.order)
    if G.is_unit():
        raise IndependentSetInvalid(
            f"the ideal becomes the unit ideal over QQ({','.join(independent)}): "
            "the chosen variables are not independent"
        )
    if G.standard_monomials() is None:
        raise IndependentSetInvalid(
            f"the extension over QQ({','.join(independent)}) is not zero-dimensional: "
            "the independent set is not maximal"
        )
    return G
