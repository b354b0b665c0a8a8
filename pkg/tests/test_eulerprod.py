from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from necklace_cyclo.eulerprod import (
    PolySeries,
    binomial_poly,
    euler_expand,
    euler_expand_by_product,
    euler_invert,
    euler_invert_log,
    multichoose,
    partition_count,
    partitions,
)
from necklace_cyclo.exactmath import Poly, divisors, mobius, reduce_mod_cyclotomic
from necklace_cyclo.necklace import necklace_M, trace_M_at_zeta

from conftest import X, polys

ONE = Poly.const(1)


def test_partitions():
    assert [list(p.parts()) for p in partitions(0)] == [[]]
    assert sum(1 for _ in partitions(4)) == 5
    assert sum(1 for _ in partitions(10)) == 42
    for d in range(0, 25):
        assert partition_count(d) == int(sympy.partition(d)) == sum(1 for _ in partitions(d))
        assert all(p.size == d for p in partitions(d))


def test_multichoose_examples():
    assert multichoose(X, 0) == ONE
    assert multichoose(X, 2) == X * (X + 1) / 2
    # ((-1; n)) = (-1)^n C(1, n): 1, -1, 0, 0, ...
    assert [multichoose(-1, n) for n in range(5)] == [ONE, -ONE, Poly(), Poly(), Poly()]


@given(polys(max_deg=4, max_terms=3), st.integers(0, 6))
def test_reciprocity(p, n):
    assert multichoose(p, n) == (-1) ** n * binomial_poly(-p, n)


@given(st.integers(-6, 12), st.integers(0, 8))
def test_multichoose_counts_multisets(k, n):
    assert multichoose(k, n) == Poly.const(sympy.binomial(k + n - 1, n) if k > 0 or n == 0
                                           else (-1) ** n * sympy.binomial(-k, n))


def test_expand_examples():
    assert euler_expand([ONE] * 12).coeffs == [Poly.const(partition_count(d)) for d in range(13)]
    assert euler_expand([necklace_M(j) for j in range(1, 9)]) == PolySeries.geometric(X, 8)
    assert euler_expand([Poly()] * 5) == PolySeries([1, 0, 0, 0, 0, 0])


def test_invert_examples():
    assert euler_invert(PolySeries.geometric(X, 12)) == [necklace_M(j) for j in range(1, 13)]
    assert euler_invert(PolySeries.partition_series(20)) == [ONE] * 20
    assert euler_invert(PolySeries([1, 0, 0, 0])) == [Poly()] * 3


def test_invert_requires_unit_constant():
    with pytest.raises(ValueError):
        euler_invert(PolySeries([2, 1]))


int_poly_lists = st.lists(polys(max_deg=3, max_terms=3, integral=True), min_size=1, max_size=7)


@given(int_poly_lists)
def test_roundtrip(b):
    a = euler_expand(b)
    assert euler_invert(a) == b
    assert euler_invert_log(a) == b


@given(int_poly_lists)
def test_expand_agrees_with_product(b):
    assert euler_expand(b) == euler_expand_by_product(b)


@given(st.lists(polys(max_deg=2, max_terms=2, integral=True), min_size=1, max_size=8),
       st.fractions(min_value=-3, max_value=3, max_denominator=4))
def test_specialization_commutes(b, q):
    a = euler_expand(b)
    scalar = euler_invert(a.evaluate(q))
    assert scalar == [Poly.const(bj(q)) for bj in b]


def test_pm_one_rederivation():
    # 1/(1 - t): b = (1, 0, 0, ...); 1/(1 + t) = (1 - t)/(1 - t^2): b = (-1, 1, 0, ...)
    D = 10
    assert euler_invert(PolySeries([1] * (D + 1))) == [ONE] + [Poly()] * (D - 1)
    alt = PolySeries([(-1) ** d for d in range(D + 1)])
    assert euler_invert(alt) == [-ONE, ONE] + [Poly()] * (D - 2)
    for d in range(1, D + 1):
        assert euler_invert(PolySeries.geometric(Poly.const(-1), D))[d - 1] == necklace_M(d)(-1)


def test_trace_identity_route():
    for m in range(1, 9):
        D = 3 * m
        series = PolySeries([1 if d % m == 0 else 0 for d in range(D + 1)])
        b = euler_invert(series)
        assert b == [ONE if j == m else Poly() for j in range(1, D + 1)]
        # sum_{e | m} T(d, e) = delta_{d, m}
        for d in range(1, D + 1):
            total = sum(trace_M_at_zeta(d, e) for e in divisors(m))
            assert total == (1 if d == m else 0)


def test_invert_in_quotient_ring():
    m = 5
    red = lambda f: reduce_mod_cyclotomic(f, m)
    b = euler_invert(PolySeries.geometric(X, 12), reduce=red)
    assert b == [red(necklace_M(j)) for j in range(1, 13)]
    assert euler_invert_log(PolySeries.geometric(X, 12), reduce=red) == b


@given(st.lists(polys(max_deg=3, max_terms=3), min_size=1, max_size=5))
def test_series_json_roundtrip(coeffs):
    s = PolySeries([ONE] + coeffs)
    assert PolySeries.from_json(s.to_json()) == s
