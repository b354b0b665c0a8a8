from itertools import permutations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from necklace_cyclo.exactmath import Poly, mobius, reduce_mod_xm, x_pow_minus, divides
from necklace_cyclo.frobenius import FrobElt, frob_apply, phi_op
from necklace_cyclo.groups import (
    ChainError,
    FiniteGroup,
    IdentityViolation,
    _bits,
    abelian,
    auto_chain,
    brute_force_subgroups,
    chain_factorize,
    chain_interval_condition,
    cyclic,
    dihedral,
    direct_product,
    enumerate_subgroups,
    g_necklace_M,
    g_necklace_S,
    make_chain,
    mobius_via_chain,
    neck_identity_sides,
    preset,
    quaternion8,
    symmetric,
)
from necklace_cyclo.necklace import necklace_S

from conftest import X


def builtin_groups(max_order: int = 24):
    out = [cyclic(d) for d in range(1, max_order + 1)]
    out += [dihedral(n) for n in range(2, max_order + 1, 2)]
    out += [quaternion8()] + [symmetric(n) for n in (1, 2, 3, 4)]
    out += [abelian(2, 2), abelian(2, 4), abelian(2, 2, 2), abelian(3, 3), abelian(2, 6),
            abelian(2, 2, 3), abelian(2, 2, 2, 3)]
    return [G for G in out if G.order <= max_order]


def group_id(G):
    return f"{G.name}"


# ---------------------------------------------------------------- construction

def test_table_validation():
    with pytest.raises(ValueError):
        FiniteGroup([[0, 1], [1, 1]])  # not a Latin square
    with pytest.raises(ValueError):
        FiniteGroup([[1, 0], [0, 1]])  # identity must be element 0
    with pytest.raises(ValueError):
        FiniteGroup(np.zeros((3, 2), dtype=int))
    with pytest.raises(ValueError):
        cyclic(100)  # above the order bound
    # a Latin square with identity 0 that is not associative
    bad = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(ValueError):
        FiniteGroup(bad)


def test_json_roundtrip():
    G = symmetric(3)
    H = FiniteGroup.from_json(G.to_json())
    assert np.array_equal(H.table, G.table)


def test_presets():
    assert preset("q8").order == 8 and preset("D20").order == 20 and preset("c7").order == 7
    with pytest.raises(ValueError):
        preset("a5")


@pytest.mark.parametrize("G", [G for G in builtin_groups(12)], ids=group_id)
def test_enumeration_matches_brute_force(G):
    assert sorted(enumerate_subgroups(G).subgroups) == sorted(brute_force_subgroups(G))


def test_s4_lattice_against_permutation_closure():
    perms = list(permutations(range(4)))

    def close(gens):
        S = {tuple(range(4))} | set(gens)
        while True:
            new = {tuple(a[b[i]] for i in range(4)) for a in S for b in S} | S
            if new == S:
                return frozenset(S)
            S = new

    subs = {close([a, b]) for a in perms for b in perms}
    assert len(symmetric(4).lattice) == len(subs) == 30
    sizes = sorted(len(s) for s in subs)
    assert sorted(symmetric(4).lattice.sizes) == sizes


def test_small_lattices():
    lat = cyclic(6).lattice
    assert lat.sizes == [1, 2, 3, 6]
    assert lat.mobius_bottom == [1, -1, -1, 1]
    assert len(symmetric(3).lattice) == 6 and len(quaternion8().lattice) == 6
    assert symmetric(4).lattice.mu(symmetric(4).full) == -12
    V4 = abelian(2, 2)
    assert V4.lattice.mu(V4.full) == 2


# ---------------------------------------------------------------- necklace polynomials

def test_printed_group_polynomials():
    S3 = symmetric(3)
    assert g_necklace_M(S3) == (X**6 - 3 * X**3 - X**2 + 3 * X) / 6
    assert g_necklace_M(S3)(2) == 7
    assert g_necklace_S(dihedral(20)) == (X**20 - 11 * X**10 + 10 * X**5 - X**4
                                          + 11 * X**2 - 10 * X)
    assert g_necklace_S(quaternion8()) == X**8 - X**4


def test_cyclic_consistency():
    for d in range(1, 31):
        assert g_necklace_S(cyclic(d)) == necklace_S(d)


def test_dihedral_formula():
    for d in range(1, 16):
        S = necklace_S(d)
        assert g_necklace_S(dihedral(2 * d)) == S.compose_power(2) - d * S


@pytest.mark.parametrize("G", builtin_groups(24), ids=group_id)
def test_neck_identity_every_subgroup(G):
    for K in G.lattice.subgroups:
        lhs, rhs = neck_identity_sides(G, K)
        assert lhs == rhs


ABELIAN_CASES = [(2, 2), (2, 4), (3, 3), (2, 2, 2), (2, 8), (4, 4), (2, 2, 2, 2), (2, 2, 4),
                 (3, 6), (2, 3), (5, 5), (2, 2, 2, 2, 2), (4, 8), (2, 16), (3, 5), (2, 3, 5), (4, 7)]


def phi_product(orders):
    op = FrobElt.one()
    for d in orders:
        op = op * phi_op(d)
    return frob_apply(op, X)


def test_abelian_product_formula_holds_for_cyclic_groups():
    # with pairwise coprime orders the product is cyclic and phi is multiplicative
    for orders in [(2, 3), (3, 5), (2, 3, 5), (4, 7), (5, 6)]:
        assert g_necklace_S(abelian(*orders)) == phi_product(orders) == necklace_S(
            int(np.prod(orders)))


def test_abelian_product_formula_fails_for_non_cyclic_groups():
    for orders in ABELIAN_CASES:
        G = abelian(*orders)
        cyclic_group = any(G.element_order(g) == G.order for g in range(G.order))
        assert (g_necklace_S(G) == phi_product(orders)) == cyclic_group, orders
    assert g_necklace_S(abelian(2, 2)) == X**4 - 3 * X**2 + 2 * X
    assert phi_product((2, 2)) == X**4 - 2 * X**2 + X


def test_abelian_groups_factor_through_chains():
    for orders in ABELIAN_CASES:
        G = abelian(*orders)
        _, ok = chain_factorize(G, auto_chain(G))
        assert ok, orders


# ---------------------------------------------------------------- chains

def test_d20_chain():
    G = dihedral(20)
    rot = _bits(range(10))
    # factor through C10 = <r>: S_{D20} = ([2] - 10[1]) S_10
    chain = make_chain(G, [rot, G.full])
    op, ok = chain_factorize(G, chain)
    assert ok and op == FrobElt({2: 1, 1: -10})
    assert chain.primes == (2,) and chain.counts == (10,)
    assert frob_apply(op, necklace_S(10)) == g_necklace_S(G)


def test_cyclic_prime_power_chain():
    for p, e in ((2, 3), (3, 2), (2, 4), (5, 2)):
        G = cyclic(p**e)
        chain = auto_chain(G)
        op, ok = chain_factorize(G, chain)
        assert ok and op == FrobElt({p**e: 1, p ** (e - 1): -1})


def test_chain_validation():
    G = symmetric(3)
    with pytest.raises(ChainError):
        make_chain(G, [1, G.full])  # index 6 is not prime
    with pytest.raises(ChainError):
        make_chain(G, [G.full])
    t = next(h for h in G.lattice.subgroups if G.lattice.size(h) == 2)
    with pytest.raises(ChainError):
        make_chain(G, [t, G.full])  # index 3 but not normal


def solvable_builtins():
    out = []
    for G in builtin_groups(24):
        try:
            out.append((G, auto_chain(G)))
        except ChainError:
            pass
    return out


def test_chain_theorem_under_interval_condition():
    checked = 0
    for G, chain in solvable_builtins():
        if chain_interval_condition(G, chain):
            _, ok = chain_factorize(G, chain)
            assert ok, G.name
            assert mobius_via_chain(G, chain) == G.lattice.mu(G.full)
            checked += 1
    assert checked > 40


def test_s4_is_a_counterexample():
    G = symmetric(4)
    chain = auto_chain(G)
    assert not chain_interval_condition(G, chain)
    _, ok = chain_factorize(G, chain)
    assert not ok
    with pytest.raises(IdentityViolation):
        mobius_via_chain(G, chain)


def test_v4_chain_counts():
    G = abelian(2, 2)
    chain = auto_chain(G)
    assert chain.counts == (1, 2)
    assert mobius_via_chain(G, chain) == 2


def test_divisibility_transfer():
    for G, chain in solvable_builtins():
        S = g_necklace_S(G)
        for p, c in zip(chain.primes, chain.counts):
            if c == 1:
                assert divides(x_pow_minus(p - 1), S), (G.name, p)


def test_local_statement_on_dihedral_groups():
    for n in range(4, 41, 2):
        G = dihedral(n)
        chain = auto_chain(G)
        S = g_necklace_S(G)
        for p, c in zip(chain.primes, chain.counts):
            if c > 1:
                r = reduce_mod_xm(S, p - 1)
                assert all(v.numerator % (c - 1) == 0 for _, v in r.items()), (n, p, c)


@given(st.sampled_from([(2, 3), (3, 3), (2, 5), (4, 3), (2, 7), (3, 4), (4, 2), (6, 2)]))
def test_direct_products_have_lattice_identity(orders):
    a, b = orders
    G = direct_product(cyclic(a), cyclic(b))
    S = g_necklace_S(G)
    assert S(1) == (1 if G.order == 1 else 0)
    assert S.coeff(G.order) == 1 and S.coeff(1) == G.lattice.mu(G.full)
