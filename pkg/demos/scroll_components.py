"""Per-component multiplicities of a complete intersection of three quartics.

The ideal has five minimal primes.  The multiplicity of each component times
the degree of its prime adds up to 64 = 4*4*4, the degree of the complete
intersection.
"""

import time

from noetherops import VariableRing, noetherian_operators

R = VariableRing([f"x{i}" for i in range(6)])
x0, x1, x2, x3, x4, x5 = R.gens()
I = [
    x1**4 - 2 * x0 * x1**2 * x2 + x0**2 * x2**2 + x1 * x2 * x3 * x4 - x0 * x2 * x4**2
    - x1**2 * x3 * x5 + x0 * x1 * x4 * x5,
    x1**4 - 2 * x0 * x1**2 * x2 + x0**2 * x2**2 + x1 * x2 * x3 * x4 - x1**2 * x4**2
    - x0 * x2 * x3 * x5 + x0 * x1 * x4 * x5,
    x2**2 * x3 * x4 - x1 * x2 * x4**2 + x4**4 - x1 * x2 * x3 * x5 + x1**2 * x4 * x5
    - 2 * x3 * x4**2 * x5 + x3**2 * x5**2,
]
primes = {
    "P1": ([x1, x2, x3 * x5 - x4**2], 2),
    "P2": ([x0, x1, x2**2 * x3 * x4 + x4**4 - 2 * x3 * x4**2 * x5 + x3**2 * x5**2], 4),
    "P3": ([x3, x4, x0 * x2 - x1**2], 2),
    "P4": ([x4, x5, x0 * x2 - x1**2], 2),
    "P5": ([x0 * x2 - x1**2, x1 * x3 - x0 * x4, x2 * x3 - x1 * x4, x1 * x5 - x2 * x4,
            x0 * x5 - x1 * x4, x3 * x5 - x4**2], 4),
}

total = 0
for name, (P, degree) in primes.items():
    start = time.perf_counter()
    N = noetherian_operators(I, P)
    total += degree * N.multiplicity
    print(f"{name}: multiplicity {N.multiplicity}, independent {N.independent}, "
          f"{time.perf_counter() - start:.2f}s")
    for D in N.rational_operators[:3]:
        print("    ", D)
print("sum of degree * multiplicity:", total)
