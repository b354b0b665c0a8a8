"""Residue systems that explain minimal x^m -+ 1 divisors.

Run:  python demos/03_necklace_systems.py
"""

from necklace_cyclo.necklace import divides_xm
from necklace_cyclo.systems import (
    NecklaceSystem,
    classify,
    family_witness,
    is_primitive,
    search_primitive,
    system_to_minimal_d,
)

# a class mod m can hold infinitely many primes, exactly one, or none
for a in (4, 3, 6):
    print(f"{a} mod 15:", classify(a, 15)[0].value)

# {4, 11, 14} mod 15 cancels: products of even and odd subsets balance out
S = NecklaceSystem(15, (4, 11, 14))
cert = system_to_minimal_d(S)
print(f"\n{S.residues} mod 15: primitive={is_primitive(S)}, d={cert.d} = {cert.primes}")
print("x^15 - 1 | M_6061:", divides_xm(6061, 15), "; minimal:", cert.minimal)

# signed systems live mod 2m and explain x^m + 1 factors
for m, res in ((3, (2, 5)), (10, (3, 13, 19))):
    cert = system_to_minimal_d(NecklaceSystem(m, res, signed=True))
    print(f"signed {res} mod {2 * m}: x^{m} + 1 | M_{cert.d}: {cert.divides}")

# search everything small
print()
for m in (5, 8, 12, 15):
    found = search_primitive(m)
    print(f"primitive systems mod {m} (size <= 3):", [s.residues for s in found])

# {m - 1, 2m - 1} needs a prime in m - 1 mod 2m: only m = 3 (via 2) and even m
pairs = {m: family_witness(m, "signed_pair") for m in range(2, 13)}
print("signed pairs {m-1, 2m-1}:", {m: S.residues for m, S in pairs.items() if S})
