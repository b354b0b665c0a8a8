import itertools
import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from necklace_cyclo.exactmath import (
    HypothesisNotMet,
    Poly,
    cyclotomic,
    cyclotomic_divides,
    divides,
    divisors,
    euler_phi,
    is_squarefree,
    reduce_mod_cyclotomic,
    reduce_mod_xm,
    squarefree_part,
    x_pow_minus,
)
from necklace_cyclo.frobenius import frob_apply, phi_op
from necklace_cyclo.necklace import (
    _counterexamples_for,
    congruent_mod_xm,
    cyclotomic_factors,
    derivative_at_one,
    divides_xm,
    eval_pm_one,
    functional_check,
    local_factor_check,
    necklace_factors,
    necklace_M,
    necklace_S,
    phi_minus_one_divisibility,
    pm_one_table,
    primewise_congruent,
    primewise_difference_check,
    trace_formula,
    trace_M_at_zeta,
    verify_conjecture,
)

from conftest import X, polys


def lyndon_count(d: int, q: int) -> int:
    # aperiodic necklaces = words that are strictly smallest among their rotations
    count = 0
    for w in itertools.product(range(q), repeat=d):
        rots = [w[i:] + w[:i] for i in range(1, d)]
        if all(w < r for r in rots):
            count += 1
    return count


def test_necklace_counts_lyndon_words():
    for q, d_max in ((2, 12), (3, 7), (4, 5)):
        for d in range(1, d_max + 1):
            assert necklace_M(d)(q) == lyndon_count(d, q)


def test_small_examples():
    assert necklace_S(1) == X
    assert necklace_S(10) == X**10 - X**5 - X**2 + X
    assert necklace_M(6) == (X**6 - X**3 - X**2 + X) / 6


PRINTED = {
    105: X**105 - X**35 - X**21 - X**15 + X**7 + X**5 + X**3 - X,
    741: X**741 - X**247 - X**57 - X**39 + X**19 + X**13 + X**3 - X,
    6061: X**6061 - X**551 - X**319 - X**209 + X**29 + X**19 + X**11 - X,
    # printed under d = 243 but this is 253 = 11 * 23
    253: X**253 - X**23 - X**11 + X,
}


@pytest.mark.parametrize("d", sorted(PRINTED))
def test_printed_expansions(d):
    assert necklace_S(d) == PRINTED[d]


def test_prime_power_is_binomial():
    assert necklace_S(243) == X**243 - X**81


@pytest.mark.parametrize("d,ms,cofactor", [
    (105, [1, 2, 3, 4, 6, 8], 92),
    (10, [1, 2, 4, 6], 3),
    (253, [1, 2, 5, 8, 10, 11, 22, 24], 210),
    (741, [1, 2, 3, 4, 6, 9, 12, 18, 20], 708),
    (6061, [1, 2, 3, 4, 5, 6, 7, 9, 10, 12, 14, 15, 18, 20, 28, 30, 60], 5964),
])
def test_factor_tables(d, ms, cofactor):
    rep = necklace_factors(d)
    assert rep.factor_ms == ms
    assert rep.cofactor_degree == cofactor
    assert rep.has_x_factor


def test_factor_table_of_243():
    rep = necklace_factors(243)
    assert rep.factor_ms == divisors(162)
    assert rep.cofactor_degree == 0


def test_factor_report_edges():
    rep = cyclotomic_factors(X)
    assert rep.factor_ms == [] and rep.has_x_factor and rep.cofactor_degree == 0

def test_xm_closures_match_division():
    for d in (10, 105, 741, 253):
        rep = necklace_factors(d)
        s = necklace_S(d)
        for m in range(1, 40):
            assert (m in rep.xm_minus) == divides(x_pow_minus(m, "minus"), s)
            assert (m in rep.xm_plus) == divides(x_pow_minus(m, "plus"), s)


def test_difference_report():
    f = 91 * necklace_M(91) - 6 * necklace_M(6)
    rep = cyclotomic_factors(f)
    assert rep.factor_ms == [1, 2, 5]
    assert rep.x_valuation == 2 and rep.cofactor_degree == 83


@given(polys(max_deg=40, integral=True, min_terms=1))
def test_factor_report_against_division(f):
    if f.is_zero():
        return
    rep = cyclotomic_factors(f)
    for m in range(1, 90):
        if euler_phi(m) <= f.degree:
            assert (m in rep.factor_ms) == divides(cyclotomic(m), f)


# ---------------------------------------------------------------- divisibility

@pytest.mark.parametrize("d,m,sign,expected", [
    (7, 6, "minus", True), (10, 3, "plus", True), (7, 4, "minus", False),
    (10, 6, "minus", False), (6061, 15, "minus", True), (741, 10, "plus", True),
])
def test_divides_xm_examples(d, m, sign, expected):
    assert divides_xm(d, m, sign) is expected


def test_divides_xm_against_division():
    for d in range(1, 80):
        s = necklace_S(d)
        for m in range(1, 25):
            for sign in ("minus", "plus"):
                expected = poly_rem_zero(s, x_pow_minus(m, sign))
                assert divides_xm(d, m, sign) == expected, (d, m, sign)


def poly_rem_zero(f, g):
    return divides(g, f)


def test_scaling():
    for m in range(1, 31):
        for d in range(1, 2001):
            if not divides_xm(d, m, "minus"):
                continue
            for e in range(2, 2000 // d + 1):
                assert divides_xm(d * e, m, "minus"), (d, e, m)
    for m in range(1, 21):
        for d in range(1, 1001):
            if divides_xm(d, m, "plus"):
                for e in range(3, 1000 // d + 1, 2):
                    assert divides_xm(d * e, m, "plus"), (d, e, m)


def test_squarefree_induction():
    for d in range(1, 1001):
        c = squarefree_part(d)
        assert necklace_S(d) == necklace_S(c).compose_power(d // c)


def test_necessary_condition():
    for d in range(1, 1001):
        phi = euler_phi(d)
        for m in range(1, 61):
            if divides_xm(d, m, "minus"):
                assert phi % m == 0, (d, m)


def test_one_mod_m_criterion():
    for p in sympy.primerange(2, 501):
        for m in range(1, 61):
            assert divides_xm(p, m, "minus") == ((p - 1) % m == 0), (p, m)


def test_obstruction():
    for m in range(1, 61):
        for d in divisors(m):
            if is_squarefree(m // d):
                assert m not in necklace_factors(d).factor_ms, (d, m)


def test_rationality_forces_vanishing():
    for d in range(1, 201):
        M = necklace_M(d)
        for m in range(1, 41):
            r = reduce_mod_cyclotomic(M, m)
            if r.is_constant() and m % d:
                assert r.is_zero(), (d, m)


@given(st.integers(1, 300), st.integers(1, 20), polys(max_deg=6, integral=True))
def test_necklace_implication(d, m, f):
    if divides_xm(d, m, "minus"):
        assert divides(x_pow_minus(m), frob_apply(phi_op(d), f))


# ---------------------------------------------------------------- conjecture

def test_conjecture_small_ranges():
    assert verify_conjecture(1, 1) == []
    assert verify_conjecture(6, 10) == []
    assert verify_conjecture(40, 400) == []


def test_conjecture_lift_agrees_with_direct():
    assert verify_conjecture(30, 300, lift=False) == verify_conjecture(30, 300, lift=True) == []


def test_conjecture_deterministic_across_jobs():
    assert verify_conjecture(30, 400, jobs=1) == verify_conjecture(30, 400, jobs=3)


def test_harness_reports_counterexamples():
    # a fictitious S_d divisible by Phi_6 alone must be flagged at m = 6
    assert _counterexamples_for(10, 6, lambda n: n == 6) == [(6, 10)]
    # Phi_6 together with Phi_1 and Phi_2 is x^3 + 1 times Phi_1: accepted
    assert (6, 10) not in _counterexamples_for(10, 6, lambda n: n in (1, 2, 6))


def test_phi6_divides_m10_through_x3_plus_1():
    rep = necklace_factors(10)
    assert 6 in rep.factor_ms and 6 not in rep.xm_minus and 3 in rep.xm_plus


# ---------------------------------------------------------------- congruences

@pytest.mark.parametrize("d,e,m,expected", [(91, 6, 5, True), (7, 25, 6, False), (30, 30, 7, True)])
def test_primewise_congruent(d, e, m, expected):
    assert primewise_congruent(d, e, m) is expected


def test_primewise_difference():
    assert primewise_difference_check(91, 6, 5) is True
    assert primewise_difference_check(12, 12, 9) is True
    with pytest.raises(HypothesisNotMet):
        primewise_difference_check(25, 7, 6)
    assert congruent_mod_xm(25, 7, 6) is False


@given(st.integers(1, 400), st.integers(1, 400), st.integers(1, 12), st.sampled_from(["minus", "plus"]))
def test_primewise_implies_congruence(d, e, m, sign):
    modulus = m if sign == "minus" else 2 * m
    if primewise_congruent(d, e, modulus):
        assert congruent_mod_xm(d, e, m, sign)


# ---------------------------------------------------------------- values

@pytest.mark.parametrize("d,m,t", [(3, 6, -1), (4, 6, 0), (6, 6, 1), (2, 12, 1), (5, 12, 0)])
def test_trace_examples(d, m, t):
    assert trace_M_at_zeta(d, m) == t


def test_trace_of_m1_is_mobius():
    for m in range(1, 31):
        assert trace_M_at_zeta(1, m) == sympy.mobius(m)


def test_trace_formula_grid():
    for d in range(1, 21):
        for m in range(1, 21):
            assert trace_M_at_zeta(d, m) == trace_formula(d, m)


@pytest.mark.parametrize("d,values", [(1, (1, -1)), (2, (0, 1)), (9, (0, 0))])
def test_pm_one_examples(d, values):
    assert eval_pm_one(d) == values == pm_one_table(d)


def test_pm_one_table_matches_evaluation():
    for d in range(1, 60):
        assert eval_pm_one(d) == pm_one_table(d)


def test_derivative_at_one():
    assert derivative_at_one(1) == 1
    assert derivative_at_one(10) == Fraction(2, 5)
    for d in range(1, 120):
        assert derivative_at_one(d) == Fraction(euler_phi(d), d)


def test_functional_equation():
    assert necklace_S(10) == necklace_S(2).compose_power(5) - necklace_S(2)
    assert necklace_S(8) == necklace_S(4).compose_power(2)
    for d in range(1, 60):
        for p in (2, 3, 5, 7):
            assert functional_check(d, p)


def test_local_factor_example():
    d = 1247290
    assert reduce_mod_xm(necklace_S(d), 3) == 32 * (X - X**2)
    assert local_factor_check(d, 3, 2, 3)
    assert local_factor_check(d, 3, 2, 5)
    assert not local_factor_check(d, 3, 2, 6)
    assert not local_factor_check(1, 2, 2, 1)


def test_phi_minus_one():
    assert phi_minus_one_divisibility(3, 7)
    assert phi_minus_one_divisibility(15, 6061)
    with pytest.raises(HypothesisNotMet):
        phi_minus_one_divisibility(3, 10)


def test_phi_minus_one_against_division():
    for d in range(2, 120):
        for m in range(2, 16):
            try:
                got = phi_minus_one_divisibility(m, d)
            except HypothesisNotMet:
                continue
            assert got == divides(Poly.from_dense([1] * m), cyclotomic(d) - 1)
            if math.gcd(m, d) == 1:
                assert got, (m, d)


def test_phi_minus_one_needs_coprimality():
    # x^4 - 1 | M_10 and 4 does not divide 10, but x + 1 does not divide Phi_10 - 1
    assert divides_xm(10, 4)
    assert cyclotomic(10) - 1 == (X**2 + 1) * (X - 1) * X
    assert phi_minus_one_divisibility(4, 10) is False
    assert phi_minus_one_divisibility(6, 9) is False
