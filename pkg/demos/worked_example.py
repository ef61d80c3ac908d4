"""Noetherian operators of a primary ideal whose prime is a curve.

Q = ((x1^2 - x3)^2, x2 - x3*(x1^2 - x3)) is primary to P = (x1^2 - x3, x2).
The variable x3 is independent modulo P, so the computation runs over the
field QQ(x3) and the Macaulay matrices have entries in the residue field
QQ(x3)[x1, x2]/P.
"""

from noetherops import VariableRing, buchberger, noetherian_operators
from noetherops.scalars import format_monomial

R = VariableRing(["x1", "x2", "x3"])
x1, x2, x3 = R.gens()
Q = [(x1**2 - x3) ** 2, x2 - x3 * (x1**2 - x3)]
P = [x1**2 - x3, x2]

N = noetherian_operators(Q, P, keep_matrices=True)
print("independent variables:", N.independent)
print("kernel dimensions by degree:", N.basis.kernel_dimensions)
for D in N.rational_operators:
    print("  ", D)

# The degree 2 Macaulay matrix: rows x^a * g, columns derivative monomials.
M = N.basis.matrices[2]
print()
print(M.to_csv(lambda b: format_monomial(b, N.dependent, prefix="d") or "1"))

# f lies in Q exactly when every D • f reduces to zero modulo P.
G = buchberger(P)
for f in [x1 * Q[1] + Q[0], x1**2 - x3]:
    print(f, "->", [str(G.reduce(D.apply(f))) for D in N.operators])
