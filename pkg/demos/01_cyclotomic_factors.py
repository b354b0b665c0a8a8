"""Necklace polynomials factor with many cyclotomic pieces.

Run:  python demos/01_cyclotomic_factors.py
"""

from necklace_cyclo.exactmath import cyclotomic, poly_divrem
from necklace_cyclo.necklace import cyclotomic_factors, necklace_M, necklace_S, necklace_factors

# S_d = d M_d is a signed sum of powers of x, one per divisor
for d in (10, 105, 741):
    print(f"{d} M_{d} =", necklace_S(d))

# M_d(q) counts aperiodic necklaces with d beads in q colours
print("binary necklaces of length 1..10:", [int(necklace_M(d)(2)) for d in range(1, 11)])

# which Phi_m divide S_d, and how large is what is left over?
print()
for d in (10, 105, 253, 741, 6061):
    rep = necklace_factors(d)
    print(f"d={d:5}: Phi_m for m in {rep.factor_ms}, cofactor degree {rep.cofactor_degree}")
    print(f"         x^m - 1 divides for m in {rep.xm_minus}; x^m + 1 for m in {rep.xm_plus}")

# prime powers are degenerate: S_{p^k} = x^{p^k} - x^{p^{k-1}} is all cyclotomic
rep = necklace_factors(243)
print(f"\nd=243: S = {necklace_S(243)}, cofactor degree {rep.cofactor_degree}")

# Phi_6 divides M_10 only through x^3 + 1 = Phi_2 Phi_6, never through x^6 - 1
q, r = poly_divrem(necklace_S(10), cyclotomic(6))
print("\nS_10 / Phi_6 remainder:", r, "| cofactor", q)

# differences of necklace polynomials can pick up factors too
f = 91 * necklace_M(91) - 6 * necklace_M(6)
rep = cyclotomic_factors(f)
print("91 M_91 - 6 M_6:", rep.factor_ms, "x-valuation", rep.x_valuation)
