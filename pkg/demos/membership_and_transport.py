"""Ideal membership from operators, and operators after a change of coordinates."""

import random

from noetherops import (
    ComponentDescription,
    LinearChange,
    VariableRing,
    WitnessPoint,
    membership_test,
    noetherian_operators,
    transform_operators,
)

R = VariableRing(["t", "x", "y"])
t, x, y = R.gens()
I = [x**2 - t * y, y**2]
N = noetherian_operators(I, [x, y])

# f is in I exactly when every operator maps it into (x, y); evaluating at a few
# random points of the line V(x, y) decides this with high probability.
rng = random.Random(3)
points = [WitnessPoint({"t": complex(rng.gauss(0, 1), rng.gauss(0, 1)), "x": 0, "y": 0}) for _ in range(3)]
line = ComponentDescription(points, N, component="line")
for f in [x**4, x**3, x * y, t * y - x**2, y**2 + x**2 - t * y]:
    print(f"{str(f):>22}  member: {membership_test(f, [line]).aggregate}")

# Under x -> A x the operators change by the inverse transpose on derivatives.
change = LinearChange([[1, 0, 0], [1, 1, 0], [0, 2, 1]], R)
T = transform_operators(N, change)
print()
print("transformed ideal:", ", ".join(str(g) for g in T.ideal))
print("transformed prime:", ", ".join(str(p) for p in T.prime))
for D in T.operators:
    print("  ", D)
