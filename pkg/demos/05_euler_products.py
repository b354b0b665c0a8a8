"""Unique factorization of power series as products of (1 - t^j)^(-b_j).

Run:  python demos/05_euler_products.py
"""

from necklace_cyclo.eulerprod import PolySeries, euler_expand, euler_invert, euler_invert_log
from necklace_cyclo.exactmath import Poly, reduce_mod_cyclotomic

x = Poly.x()

# 1/(1 - x t) factors with exponents M_1, M_2, ...: the cyclotomic identity
b = euler_invert(PolySeries.geometric(x, 6))
for j, bj in enumerate(b, start=1):
    print(f"b_{j} = {bj}")

# all exponents 1 gives the partition numbers
print("\nprod 1/(1 - t^j) =", [int(a(0)) for a in euler_expand([1] * 12).coeffs])

# specialise x = -1: exponents are M_d(-1) = -1, 1, 0, 0, ...
print("x = -1:", [str(v) for v in euler_invert(PolySeries.geometric(-1, 8))])

# the same inversion runs in Q(zeta_5) = Q[x]/Phi_5
red = lambda f: reduce_mod_cyclotomic(f, 5)
print("\nM_d(zeta_5), d = 1..6:", [str(v) for v in euler_invert_log(PolySeries.geometric(x, 6), red)])
