"""Operators from sample points alone: a complete intersection around a K3 carpet.

I is generated by five random rational combinations of the ten quadrics that
define a double structure on the cone over the scroll S(3,3).  No generators of
the component's prime are needed: points sampled from the parametrization
(a s^3, a s^2 u, a s u^2, a u^3, b s^3, b s^2 u, b s u^2, b u^3) are enough,
and the points are written to a file in the format the command line reads.
"""

import random
import tempfile
from fractions import Fraction
from pathlib import Path

from noetherops import VariableRing, WitnessPoint, numerical_noetherian_operators
from noetherops.frontend.io import write_points

names = [f"x{i}" for i in range(4)] + [f"y{i}" for i in range(4)]
R = VariableRing(names)
x0, x1, x2, x3, y0, y1, y2, y3 = R.gens()
J = [
    x1**2 - x0 * x2, x1 * x2 - x0 * x3, x2**2 - x1 * x3,
    x2 * y0 - 2 * x1 * y1 + x0 * y2, x3 * y0 - 2 * x2 * y1 + x1 * y2,
    x2 * y1 - 2 * x1 * y2 + x0 * y3, x3 * y1 - 2 * x2 * y2 + x1 * y3,
    y1**2 - y0 * y2, y1 * y2 - y0 * y3, y2**2 - y1 * y3,
]
rng = random.Random(7)
I = []
for _ in range(5):
    f = R.zero()
    for g in J:
        f = f + g * Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    I.append(f)


def scroll_point():
    a, b, s, u = (complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(4))
    coords = {f"x{i}": a * s ** (3 - i) * u**i for i in range(4)}
    coords.update({f"y{i}": b * s ** (3 - i) * u**i for i in range(4)})
    return WitnessPoint(coords, component="scroll")


points = [scroll_point() for _ in range(20)]
path = Path(tempfile.mkdtemp()) / "scroll_points.json"
write_points(path, points, names)
print("points written to", path)

N = numerical_noetherian_operators(I, points, independent=["x0", "x1", "y3"])
print("multiplicity:", N.multiplicity)
for D in N.operators:
    print("  ", D)
