"""The substitution algebra [k] f(x) = f(x^k), and a search for x^m -+ 1 factors.

Run:  python demos/02_frobenius_and_conjecture.py
"""

import time

from necklace_cyclo.exactmath import Poly, reduce_mod_xm
from necklace_cyclo.frobenius import frob_apply, frob_of_poly, phi_op, reduce
from necklace_cyclo.necklace import divides_xm, necklace_S, trace_M_at_zeta, verify_conjecture

x = Poly.x()

# every integer polynomial is an operator applied to x
alpha = frob_of_poly(necklace_S(10))
print("S_10 as an operator:", alpha, "  phi[10] =", phi_op(10))
print("phi[10] applied to 1 + x^2:", frob_apply(phi_op(10), 1 + x**2))

# modulo x^m - 1 only the index classes mod m matter
print("\nphi[15] mod [8]:", reduce(phi_op(15), 8).coeffs)
print("S_15 mod x^8 - 1:", reduce_mod_xm(necklace_S(15), 8))
print("phi[6061] mod [15] is zero:", reduce(phi_op(6061), 15).is_zero())

# a prime p gives x^m - 1 | M_p exactly when p = 1 mod m
print("\nm with x^m - 1 | M_31:", [m for m in range(1, 31) if divides_xm(31, m)])

# every cyclotomic factor should come from some x^m - 1 or x^m + 1
t = time.perf_counter()
bad = verify_conjecture(60, 1000)
print(f"\ncounterexamples with m <= 60, d <= 1000: {bad} ({time.perf_counter() - t:.1f}s)")

# traces of M_d at roots of unity are Mobius values
print("\nTr M_d(zeta_12) for d = 1..12:", [int(trace_M_at_zeta(d, 12)) for d in range(1, 13)])
