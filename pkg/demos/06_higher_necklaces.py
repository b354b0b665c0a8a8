"""Irreducible polynomials in several variables, and their values at roots of unity.

Run:  python demos/06_higher_necklaces.py
"""

from necklace_cyclo.higher import (
    M_dn,
    M_dn_at_zeta,
    P_eval_periodicity,
    balanced_expansion,
    euler_char,
    eval_at_zeta_p,
)

# n = 1 recovers the classic necklace polynomials; n = 2 grows quickly
for d, M in enumerate(M_dn(3, 2), start=1):
    print(f"M_{d},2 = {M}")

# digits in {0, b-1} give alternating sums of powers
for n, b in ((13, 2), (124, 5), (2, 3), (121, 5)):
    e = balanced_expansion(n, b)
    print(f"\n{n} in base {b}:", e if e else "no balanced expansion")
    if e:
        vals = {d: int(eval_at_zeta_p(d, n, b)(0)) for d in range(1, b**4 + 1)}
        print("  nonzero M_{d,n}(zeta_p):", {d: v for d, v in vals.items() if v})

# 121 has no such expansion; the values come from inverting in Q(zeta_5) instead
vals = M_dn_at_zeta(6, 121, 5)
print("\nM_{d,121}(zeta_5), d = 1..6:", [str(v) for v in vals])

# Euler characteristics of spaces of irreducible real polynomials
print("\nchi_c(Irr_{d,13}(R)) nonzero at:",
      {d: euler_char(d, 13, "R") for d in range(1, 40) if euler_char(d, 13, "R")})

# P_{d,n}(zeta_m) is periodic in d
cert = P_eval_periodicity(2, 3)
print("P_{d,2}(zeta_3) has period", cert.period, "values", [str(v) for v in cert.values])
