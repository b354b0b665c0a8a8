"""Necklace polynomials of finite groups from the subgroup lattice.

Run:  python demos/04_group_necklaces.py
"""

from necklace_cyclo.groups import (
    IdentityViolation,
    abelian,
    auto_chain,
    chain_factorize,
    chain_interval_condition,
    dihedral,
    g_necklace_M,
    g_necklace_S,
    mobius_via_chain,
    quaternion8,
    symmetric,
)
from necklace_cyclo.necklace import cyclotomic_factors

S3 = symmetric(3)
print("M_S3 =", g_necklace_M(S3), "; primitive 2-colourings:", g_necklace_M(S3)(2))
for G in (dihedral(20), quaternion8(), abelian(2, 2)):
    S = g_necklace_S(G)
    print(f"S_{G.name} = {S}  Phi factors {cyclotomic_factors(S).factor_ms}")

# solvable groups factor through a chain of prime-index normal subgroups
for G in (dihedral(20), abelian(2, 2), symmetric(4)):
    chain = auto_chain(G)
    op, ok = chain_factorize(G, chain)
    cond = chain_interval_condition(G, chain)
    print(f"\n{G.name}: operator {op}, matches lattice: {ok}, interval condition: {cond}")
    try:
        print("  mu(G) from the chain:", mobius_via_chain(G, chain))
    except IdentityViolation as exc:
        print("  chain formula breaks:", exc)
