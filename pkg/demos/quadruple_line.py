"""Operators of I = (x^2 - t*y, y^2) at points and by interpolation.

At a point (k, 0, 0) the operators are computed numerically from an SVD;
sampling the line V(x, y) at a handful of complex points and fitting rational
functions in t recovers the symbolic answer dx^2 + (2/t)*dy and
dx^3 + (6/t)*dx*dy.
"""

import random

from noetherops import (
    VariableRing,
    noetherian_operators,
    noetherian_operators_at_point,
    numerical_noetherian_operators,
)

R = VariableRing(["t", "x", "y"])
t, x, y = R.gens()
I = [x**2 - t * y, y**2]

for k in range(1, 5):
    ops = noetherian_operators_at_point(I, {"t": k, "x": 0, "y": 0}, independent=["t"])
    print(f"t = {k}:", ", ".join(str(D) for D in ops))

rng = random.Random(0)
points = [{"t": complex(rng.gauss(0, 1), rng.gauss(0, 1)), "x": 0, "y": 0} for _ in range(8)]
N = numerical_noetherian_operators(I, points, independent=["t"])
print()
print("interpolated:", ", ".join(str(D) for D in N.operators))

exact = noetherian_operators(I, [x, y])
print("symbolic:    ", ", ".join(str(D) for D in exact.rational_operators))
