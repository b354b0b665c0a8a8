"""Higher necklace polynomials ``M_{d,n}`` and their values at roots of unity.

``P_{d,n}(x) = (x^A - x^B)/(x - 1)`` with ``A = C(d+n, n)`` and
``B = C(d+n-1, n)`` counts monic degree-``d`` polynomials in ``n``
variables; ``M_{d,n}`` is defined implicitly by the Euler product
``sum_d P_{d,n} t^d = prod_j (1 - t^j)^(-M_{j,n})``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Literal

from .eulerprod import PolySeries, euler_invert, euler_invert_log
from .exactmath import (
    HypothesisNotMet,
    Poly,
    _check_positive,
    is_prime,
    q_integer,
    reduce_mod_cyclotomic,
)

DEFAULT_BUDGET = 10**5


def _exponents(d: int, n: int) -> tuple[int, int]:
    return math.comb(d + n, n), math.comb(d + n - 1, n)


def P_dn(d: int, n: int, budget: int = DEFAULT_BUDGET) -> Poly:
    """``x^B + x^{B+1} + ... + x^{A-1}``; ``P_{0,n} = 1``."""
    if d < 0:
        raise ValueError("d must be non-negative")
    _check_positive(n, "n")
    if d == 0:
        return Poly.const(1)
    A, B = _exponents(d, n)
    if A > budget:
        raise ValueError(f"P_{{{d},{n}}} has degree {A - 1}, over the budget {budget}")
    return Poly({k: 1 for k in range(B, A)})


def P_series(d_max: int, n: int, budget: int = DEFAULT_BUDGET) -> PolySeries:
    return PolySeries([P_dn(d, n, budget) for d in range(d_max + 1)])


def M_dn(
    d_max: int,
    n: int,
    budget: int = DEFAULT_BUDGET,
    method: Literal["auto", "partition", "log"] = "auto",
) -> list[Poly]:
    """``[M_{1,n}, ..., M_{d_max,n}]`` by inverting the Euler product.

    ``method="partition"`` runs the partition-sum recursion; ``"log"`` uses
    the logarithmic derivative.  ``"auto"`` takes the partition route for
    short series and the log route otherwise; both give identical output.
    """
    _check_positive(d_max, "d_max")
    series = P_series(d_max, n, budget)
    if method == "auto":
        method = "partition" if d_max <= 10 else "log"
    if method == "partition":
        return euler_invert(series)
    if method == "log":
        return euler_invert_log(series)
    raise ValueError(f"unknown method {method!r}")


# --------------------------------------------------------------------------
# balanced expansions and closed forms
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class BalancedExpansion:
    """``n = b^{k_1} - b^{k_2} + ... - b^{k_i}`` (equivalently, digits in {0, b-1})."""

    n: int
    base: int
    coeffs: tuple[tuple[int, int], ...]  # (power, +-1), descending power
    digit_positions: tuple[int, ...]  # positions of the digit b-1, ascending

    def coefficient(self, k: int) -> int:
        return dict(self.coeffs).get(k, 0)

    def value(self) -> int:
        return sum(c * self.base**k for k, c in self.coeffs)

    def __str__(self) -> str:
        out = ""
        for k, c in self.coeffs:
            term = f"{self.base}^{k}"
            out += term if not out else (" + " if c > 0 else " - ") + term
        return f"{self.n} = {out}"

    def to_json(self) -> dict:
        return {"n": self.n, "base": self.base,
                "coeffs": [[k, c] for k, c in self.coeffs],
                "digit_positions": list(self.digit_positions)}


def base_digits(n: int, b: int) -> list[int]:
    """Base-``b`` digits of ``n``, least significant first."""
    out = []
    while n:
        n, r = divmod(n, b)
        out.append(r)
    return out


def balanced_expansion(n: int, b: int) -> BalancedExpansion | None:
    """The balanced base-``b`` expansion of ``n``, or ``None`` if some digit
    of ``n`` is neither 0 nor ``b - 1``."""
    _check_positive(n, "n")
    if b < 2:
        raise ValueError("base must be >= 2")
    digits = base_digits(n, b)
    if any(x not in (0, b - 1) for x in digits):
        return None
    L = {k for k, x in enumerate(digits) if x == b - 1}
    # (b-1) b^k = b^{k+1} - b^k, then collect
    coeffs = []
    for k in range(len(digits), -1, -1):
        c = (k - 1 in L) - (k in L)
        if c:
            coeffs.append((k, c))
    return BalancedExpansion(n, b, tuple(coeffs), tuple(sorted(L)))


def _power_of(d: int, p: int) -> int | None:
    k = 0
    while d % p == 0:
        d //= p
        k += 1
    return k if d == 1 else None


def eval_at_zeta_p(d: int, n: int, p: int) -> Poly:
    """``M_{d,n}(zeta_p)`` from the balanced base-``p`` expansion of ``n``.

    The value is ``b_k`` when ``d = p^k`` and 0 otherwise, returned as a
    (constant) residue in ``Q[x]/Phi_p``.  Raises :class:`HypothesisNotMet`
    when ``n`` has no balanced base-``p`` expansion.
    """
    _check_positive(d, "d")
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    exp = balanced_expansion(n, p)
    if exp is None:
        raise HypothesisNotMet(f"{n} has no balanced base-{p} expansion")
    k = _power_of(d, p)
    return Poly.const(exp.coefficient(k) if k is not None else 0)


def euler_char(d: int, n: int, field: Literal["R", "C"]) -> int:
    """Compactly supported Euler characteristic of ``Irr_{d,n}`` over R or C."""
    _check_positive(d, "d")
    _check_positive(n, "n")
    if field == "C":
        return n if d == 1 else 0
    if field == "R":
        k = _power_of(d, 2)
        return balanced_expansion(n, 2).coefficient(k) if k is not None else 0
    raise ValueError(f"field must be 'R' or 'C', got {field!r}")


# --------------------------------------------------------------------------
# values at roots of unity without building P
# --------------------------------------------------------------------------

def binom_mod_prime(a: int, b: int, p: int) -> int:
    """``C(a, b) mod p`` digit by digit (Lucas)."""
    if b < 0 or b > a:
        return 0
    out = 1
    while a or b:
        a, ai = divmod(a, p)
        b, bi = divmod(b, p)
        if bi > ai:
            return 0
        out = out * math.comb(ai, bi) % p
    return out


def binom_mod(a: int, b: int, m: int, lucas: bool = True) -> int:
    if lucas and is_prime(m):
        return binom_mod_prime(a, b, m)
    return math.comb(a, b) % m if 0 <= b <= a else 0


def q_int_at_zeta(k: int, m: int) -> Poly:
    """``[k]_zeta = 1 + zeta + ... + zeta^{k-1}`` in ``Q[x]/Phi_m``; depends on ``k mod m``."""
    if m == 1:
        return Poly.const(k)
    return reduce_mod_cyclotomic(q_integer(k % m), m)


def P_at_zeta(d: int, n: int, m: int, lucas: bool = True) -> Poly:
    """``P_{d,n}(zeta_m)`` from the residues of the two binomials mod ``m``."""
    if d == 0:
        return Poly.const(1)
    if m == 1:
        A, B = _exponents(d, n)
        return Poly.const(A - B)
    a = binom_mod(d + n, n, m, lucas)
    b = binom_mod(d + n - 1, n, m, lucas)
    return reduce_mod_cyclotomic(q_integer(a) - q_integer(b), m)


def M_dn_at_zeta(d_max: int, n: int, m: int) -> list[Poly]:
    """``[M_{d,n}(zeta_m)]_{d <= d_max}`` by inverting the Euler product in ``Q(zeta_m)``.

    Independent of the balanced-expansion closed form, and needs no
    polynomial of degree ``C(d+n, n)``, so it reaches ``n = 121``.
    """
    series = PolySeries([P_at_zeta(d, n, m) for d in range(d_max + 1)])
    red = partial(reduce_mod_cyclotomic, m=m)
    return euler_invert_log(series, reduce=red)


def _natural_period(n: int, m: int) -> int:
    # C(d+n, n) mod p^e is periodic in d with period p^{e + floor(log_p n)}
    from .exactmath import factorize

    L = 1
    for p, e in factorize(m).items():
        k = 0
        while p ** (k + 1) <= n:
            k += 1
        L *= p ** (e + k)
    return L


@dataclass(frozen=True)
class PeriodCertificate:
    n: int
    m: int
    period: int
    bound: int
    checked_through: int
    lucas_agrees: bool
    values: tuple[Poly, ...]

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "period": self.period, "bound": self.bound,
                "checked_through": self.checked_through, "lucas_agrees": self.lucas_agrees,
                "values": [v.to_json() for v in self.values]}


def P_eval_periodicity(n: int, m: int) -> PeriodCertificate:
    """Least period of ``d -> P_{d,n}(zeta_m)`` for ``d >= 1``.

    A period ``L`` of the binomial residues is known a priori; the least
    period ``T`` dividing ``L`` is found and confirmed on ``1 <= d <= max(L,
    2T)``.  For prime ``m`` the Lucas digits and direct binomials are compared
    over the same range.
    """
    _check_positive(n, "n")
    _check_positive(m, "m")
    L = _natural_period(n, m)
    span = 2 * L
    vals = [P_at_zeta(d, n, m) for d in range(1, span + 1)]
    lucas_ok = True
    if is_prime(m):
        lucas_ok = all(P_at_zeta(d, n, m, lucas=False) == vals[d - 1] for d in range(1, span + 1))
    T = L
    for t in sorted(t for t in range(1, L + 1) if L % t == 0):
        if all(vals[i] == vals[i + t] for i in range(span - t)):
            T = t
            break
    return PeriodCertificate(n, m, T, L, span, lucas_ok, tuple(vals[:T]))
