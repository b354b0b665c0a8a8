"""Classic necklace polynomials and checks of their cyclotomic behaviour.

``S_d(x) = sum_{e | d} mu(e) x^{d/e}`` is the cyclic polynomial and
``M_d = S_d / d`` the necklace polynomial.  All divisibility questions are
answered with exact arithmetic; there is no numerical root finding here.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

from .exactmath import (
    HypothesisNotMet,
    Poly,
    Sign,
    _check_positive,
    cyclotomic,
    cyclotomic_divides,
    divisors,
    euler_phi,
    factorize,
    is_prime,
    is_squarefree,
    mobius,
    poly_divrem,
    q_integer,
    reduce_mod_cyclotomic,
    reduce_mod_xm,
    squarefree_part,
    totient_bounded,
)
from .frobenius import frob_apply, phi_op, reduce, reduce_signed


@lru_cache(maxsize=4096)
def necklace_S(d: int) -> Poly:
    """``d * M_d(x)``, the cyclic polynomial."""
    _check_positive(d, "d")
    return Poly({d // e: mobius(e) for e in divisors(d) if mobius(e)})


def necklace_M(d: int) -> Poly:
    return necklace_S(d) / d


# --------------------------------------------------------------------------
# divisibility by x^m -+ 1 and cyclotomic factor scans
# --------------------------------------------------------------------------

def divides_xm(d: int, m: int, sign: Sign = "minus") -> bool:
    """Does ``x^m - 1`` (or ``x^m + 1``) divide ``S_d``?

    Decided in the reduced Frobenius module and confirmed by folding the
    polynomial itself; a disagreement would be a bug, so it raises.
    """
    _check_positive(d, "d")
    _check_positive(m, "m")
    op = phi_op(d)
    if sign == "minus":
        via_frob = reduce(op, m).is_zero()
    elif sign == "plus":
        via_frob = reduce_signed(op, m).is_zero()
    else:
        raise ValueError(f"sign must be 'minus' or 'plus', got {sign!r}")
    via_poly = reduce_mod_xm(necklace_S(d), m, sign).is_zero()
    if via_frob != via_poly:
        raise AssertionError(f"reduction mismatch for d={d}, m={m}, sign={sign}")
    return via_frob


@dataclass(frozen=True)
class CycloFactorReport:
    d: int | None
    factor_ms: list[int]
    xm_minus: list[int]
    xm_plus: list[int]
    cofactor_degree: int
    has_x_factor: bool
    x_valuation: int = field(default=0, compare=False)

    def to_json(self) -> dict:
        out = asdict(self)
        out.pop("x_valuation")
        return out


def _xm_closures(found: set[int]) -> tuple[list[int], list[int]]:
    # x^m - 1 needs every Phi_n with n | m; x^m + 1 needs n | 2m, n not | m
    minus = [m for m in sorted(found) if all(n in found for n in divisors(m))]
    plus = []
    for n in sorted(found):
        if n % 2:
            continue
        m = n // 2
        if all(k in found for k in divisors(n) if m % k):
            plus.append(m)
    return minus, plus


def cyclotomic_factors(f: Poly, d: int | None = None) -> CycloFactorReport:
    """Every ``Phi_m`` dividing ``f`` (ignoring multiplicity) plus derived data.

    Candidates are exactly the ``m`` with ``phi(m) <= deg f``.  The cofactor
    degree strips the cyclotomic factors once each and the full power of
    ``x`` dividing ``f``.
    """
    if f.is_zero():
        raise ValueError("the zero polynomial has no factor report")
    deg = int(f.degree)
    found = {m for m in totient_bounded(deg) if cyclotomic_divides(f, m)}
    minus, plus = _xm_closures(found)
    val = int(f.valuation)
    cofactor = deg - sum(euler_phi(m) for m in found) - val
    return CycloFactorReport(
        d=d,
        factor_ms=sorted(found),
        xm_minus=minus,
        xm_plus=plus,
        cofactor_degree=cofactor,
        has_x_factor=val > 0,
        x_valuation=val,
    )


def necklace_factors(d: int) -> CycloFactorReport:
    return cyclotomic_factors(necklace_S(d), d=d)


# --------------------------------------------------------------------------
# conjecture harness
# --------------------------------------------------------------------------

def _shadow(c: int, m_max: int) -> frozenset[int]:
    s = necklace_S(c)
    return frozenset(n for n in range(1, m_max + 1) if cyclotomic_divides(s, n))


def _counterexamples_for(
    d: int, m_max: int, has_phi
) -> list[tuple[int, int]]:
    # has_phi(n) answers Phi_n | S_d
    bad = []
    for m in range(1, m_max + 1):
        if euler_phi(m) > d or not has_phi(m):
            continue
        if all(has_phi(n) for n in divisors(m)):
            continue
        if m % 2 == 0:
            half = m // 2
            if all(has_phi(n) for n in divisors(m) if half % n):
                continue
        bad.append((m, d))
    return bad


def _shard_lifted(args: tuple[int, int, int]) -> tuple[int, list[tuple[int, int]]]:
    c, m_max, d_max = args
    base = _shadow(c, m_max)
    bad = []
    k = 1
    while c * k <= d_max:
        if squarefree_part(k * c) == c:
            kk = k
            bad.extend(_counterexamples_for(
                c * k, m_max, lambda n: n // math.gcd(n, kk) in base))
        k += 1
    return c, bad


def _shard_direct(args: tuple[int, int, int]) -> tuple[int, list[tuple[int, int]]]:
    c, m_max, d_max = args
    bad = []
    k = 1
    while c * k <= d_max:
        d = c * k
        if squarefree_part(d) == c:
            s = necklace_S(d)
            memo: dict[int, bool] = {}

            def has(n: int) -> bool:
                if n not in memo:
                    memo[n] = cyclotomic_divides(s, n)
                return memo[n]

            bad.extend(_counterexamples_for(d, m_max, has))
        k += 1
    return c, bad


def iter_conjecture_shards(
    m_max: int,
    d_max: int,
    jobs: int = 1,
    lift: bool = True,
    skip: Iterable[int] = (),
) -> Iterator[tuple[int, list[tuple[int, int]]]]:
    """Yield ``(c, counterexamples)`` per squarefree ``c``, ascending in ``c``.

    Each shard covers every ``d <= d_max`` whose squarefree part is ``c``.
    With ``lift`` the cyclotomic factors of ``S_d = S_c(x^{d/c})`` are read
    off from those of ``S_c``; otherwise every ``S_d`` is scanned directly.
    Shards listed in ``skip`` (from a checkpoint) are not recomputed.
    """
    _check_positive(m_max, "m_max")
    _check_positive(d_max, "d_max")
    done = set(skip)
    tasks = [(c, m_max, d_max) for c in range(1, d_max + 1)
             if is_squarefree(c) and c not in done]
    worker = _shard_lifted if lift else _shard_direct
    if jobs <= 1 or len(tasks) < 2:
        for t in tasks:
            yield worker(t)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map preserves submission order, so output order is independent of jobs
        yield from pool.map(worker, tasks, chunksize=max(1, len(tasks) // (8 * jobs)))


def verify_conjecture(
    m_max: int, d_max: int, jobs: int = 1, lift: bool = True
) -> list[tuple[int, int]]:
    """All ``(m, d)`` with ``Phi_m | M_d`` but neither ``x^m - 1 | M_d`` nor
    (``m`` even and) ``x^{m/2} + 1 | M_d``, for ``m <= m_max``, ``d <= d_max``.
    """
    bad: list[tuple[int, int]] = []
    for _, shard in iter_conjecture_shards(m_max, d_max, jobs, lift):
        bad.extend(shard)
    return sorted(bad, key=lambda md: (md[1], md[0]))


# --------------------------------------------------------------------------
# congruences, traces and evaluations
# --------------------------------------------------------------------------

def _prime_signature(n: int, modulus: int) -> Counter:
    return Counter((e, p % modulus) for p, e in factorize(n).items())


def primewise_congruent(d: int, e: int, m: int) -> bool:
    """Can the prime powers of ``d`` and ``e`` be matched with equal exponents
    and primes congruent mod ``m``?"""
    _check_positive(d, "d")
    _check_positive(e, "e")
    _check_positive(m, "m")
    return _prime_signature(d, m) == _prime_signature(e, m)


def galois_trace(g: Poly, m: int) -> Fraction:
    """``Tr_{Q(zeta_m)/Q} g(zeta_m)`` by summing the conjugates ``g(zeta_m^a)``."""
    g = reduce_mod_cyclotomic(g, m)
    total = Poly()
    for a in range(1, m + 1):
        if math.gcd(a, m) == 1:
            total = total + g.compose_power(a)
    total = reduce_mod_cyclotomic(total, m)
    if not total.is_constant():
        raise AssertionError(f"trace over Q(zeta_{m}) is not rational: {total}")
    return total.coeff(0)


def trace_M_at_zeta(d: int, m: int) -> Fraction:
    """``Tr_m(M_d(zeta_m))``; should be ``mu(m/d)`` if ``d | m`` and 0 otherwise."""
    _check_positive(d, "d")
    _check_positive(m, "m")
    return galois_trace(necklace_S(d), m) / d


def trace_formula(d: int, m: int) -> int:
    return mobius(m // d) if m % d == 0 else 0


def eval_pm_one(d: int) -> tuple[Fraction, Fraction]:
    """``(M_d(1), M_d(-1))`` by direct evaluation."""
    md = necklace_M(d)
    return Fraction(md(1)), Fraction(md(-1))


def pm_one_table(d: int) -> tuple[int, int]:
    """The closed-form values of ``(M_d(1), M_d(-1))``."""
    _check_positive(d, "d")
    plus = 1 if d == 1 else 0
    minus = {1: -1, 2: 1}.get(d, 0)
    return plus, minus


def derivative_at_one(d: int) -> Fraction:
    return Fraction(necklace_M(d).derivative()(1))


def functional_check(d: int, p: int) -> bool:
    """``S_{dp} = S_d(x^p) - S_d(x)`` if ``p`` does not divide ``d``, else ``S_d(x^p)``."""
    _check_positive(d, "d")
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    lhs = necklace_S(d * p)
    rhs = necklace_S(d).compose_power(p)
    if d % p:
        rhs = rhs - necklace_S(d)
    return lhs == rhs


def local_factor_check(d: int, m: int, ell: int, j: int) -> bool:
    """Is every coefficient of ``S_d mod x^m - 1`` divisible by ``ell^j``?"""
    _check_positive(d, "d")
    _check_positive(m, "m")
    _check_positive(j, "j")
    if not is_prime(ell):
        raise ValueError(f"ell must be prime, got {ell}")
    q = ell**j
    r = reduce_mod_xm(necklace_S(d), m, "minus")
    return all(c.numerator % q == 0 for _, c in r.items())


def phi_minus_one_divisibility(m: int, d: int) -> bool:
    """Does ``(x^m - 1)/(x - 1)`` divide ``Phi_d(x) - 1``?

    Only asked when the theorem applies: ``m, d > 1``, ``m`` not dividing
    ``d`` and ``x^m - 1 | M_d``.  Otherwise :class:`HypothesisNotMet`.

    The divisibility is only guaranteed when ``gcd(m, d) = 1``; with a common
    factor it can fail (``m = 4``, ``d = 10``), and ``False`` is returned.
    """
    _check_positive(m, "m")
    _check_positive(d, "d")
    if m < 2 or d < 2:
        raise HypothesisNotMet("requires m > 1 and d > 1")
    if d % m == 0:
        raise HypothesisNotMet(f"m={m} divides d={d}")
    if not divides_xm(d, m, "minus"):
        raise HypothesisNotMet(f"x^{m} - 1 does not divide M_{d}")
    return poly_divrem(cyclotomic(d) - 1, q_integer(m))[1].is_zero()


def congruent_mod_xm(d: int, e: int, m: int, sign: Sign = "minus") -> bool:
    """Direct test of ``S_d == S_e`` modulo ``x^m - 1`` or ``x^m + 1``."""
    return reduce_mod_xm(necklace_S(d) - necklace_S(e), m, sign).is_zero()


def primewise_difference_check(d: int, e: int, m: int, sign: Sign = "minus") -> bool:
    """``S_d == S_e`` mod ``x^m -+ 1`` for primewise congruent ``d``, ``e``.

    The congruence is required mod ``m`` for the minus sign and mod ``2m``
    for the plus sign; otherwise :class:`HypothesisNotMet`.
    """
    modulus = m if sign == "minus" else 2 * m
    if not primewise_congruent(d, e, modulus):
        raise HypothesisNotMet(f"{d} and {e} are not primewise congruent mod {modulus}")
    return congruent_mod_xm(d, e, m, sign)
