"""Truncated power series in ``t`` and the combinatorial Euler product.

Every series ``1 + a_1 t + a_2 t^2 + ...`` factors uniquely as
``prod_j (1 - t^j)^(-b_j)`` once exponentiation is defined through the
multichoose binomial ``((x; n)) = x(x+1)...(x+n-1)/n!``.  Coefficients are
:class:`Poly`; an optional ``reduce`` map lets the same code run in a
quotient ring such as ``Q[x]/Phi_m``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from sympy.utilities.iterables import partitions as _sympy_partitions

from .exactmath import Poly, mobius, divisors

Reducer = Callable[[Poly], Poly]


def _identity(f: Poly) -> Poly:
    return f


@dataclass(frozen=True)
class Partition:
    """``lambda = (1^{m_1} 2^{m_2} ...)`` stored as ``{part: multiplicity}``."""

    multiplicities: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return sum(j * m for j, m in self.multiplicities)

    def parts(self) -> list[int]:
        return [j for j, m in sorted(self.multiplicities, reverse=True) for _ in range(m)]

    def __len__(self) -> int:
        return sum(m for _, m in self.multiplicities)


def partitions(d: int) -> Iterator[Partition]:
    """Each partition of ``d`` once, in sympy's (deterministic) order."""
    if d < 0:
        raise ValueError("d must be non-negative")
    if d == 0:
        yield Partition(())
        return
    for p in _sympy_partitions(d):
        yield Partition(tuple(sorted(p.items())))


@lru_cache(maxsize=None)
def partition_count(d: int) -> int:
    """``p(d)`` from Euler's pentagonal recurrence (independent of enumeration)."""
    if d < 0:
        return 0
    if d == 0:
        return 1
    total, k = 0, 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > d:
            break
        sign = 1 if k % 2 else -1
        total += sign * partition_count(d - g1)
        g2 = k * (3 * k + 1) // 2
        if g2 <= d:
            total += sign * partition_count(d - g2)
        k += 1
    return total


@lru_cache(maxsize=65536)
def _multichoose(p: Poly, n: int) -> Poly:
    out = Poly.const(1)
    for k in range(n):
        out = out * (p + k)
    return out / math.factorial(n)


def multichoose(p, n: int, reduce: Reducer | None = None) -> Poly:
    """``((P; n)) = P(P+1)...(P+n-1)/n!``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    p = Poly.coerce(p)
    if reduce is None:
        return _multichoose(p, n)
    out = Poly.const(1)
    for k in range(n):
        out = reduce(out * (p + k))
    return reduce(out / math.factorial(n))


def binomial_poly(p, n: int) -> Poly:
    """``C(P, n) = P(P-1)...(P-n+1)/n!``."""
    p = Poly.coerce(p)
    out = Poly.const(1)
    for k in range(n):
        out = out * (p - k)
    return out / math.factorial(n)


class PolySeries:
    """``a_0 + a_1 t + ... + a_D t^D`` with :class:`Poly` coefficients."""

    def __init__(self, coeffs: Sequence):
        if not coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        self.coeffs: list[Poly] = [Poly.coerce(c) for c in coeffs]

    @property
    def D(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, d: int) -> Poly:
        return self.coeffs[d]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, PolySeries) and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"PolySeries({[str(c) for c in self.coeffs]})"

    def __mul__(self, other: "PolySeries") -> "PolySeries":
        D = min(self.D, other.D)
        out = [Poly() for _ in range(D + 1)]
        for i in range(D + 1):
            for j in range(D + 1 - i):
                out[i + j] = out[i + j] + self.coeffs[i] * other.coeffs[j]
        return PolySeries(out)

    def map(self, fn: Callable[[Poly], Poly]) -> "PolySeries":
        return PolySeries([fn(c) for c in self.coeffs])

    def evaluate(self, q) -> "PolySeries":
        """Specialise every coefficient at ``x = q``."""
        return PolySeries([Poly.const(c(q)) for c in self.coeffs])

    @classmethod
    def geometric(cls, x, D: int) -> "PolySeries":
        """``1/(1 - x t)`` truncated at ``t^D``."""
        x = Poly.coerce(x)
        return cls([x**d for d in range(D + 1)])

    @classmethod
    def partition_series(cls, D: int) -> "PolySeries":
        """``sum p(d) t^d = prod_j 1/(1 - t^j)``."""
        return cls([partition_count(d) for d in range(D + 1)])

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "PolySeries":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, list):
            raise ValueError("series JSON must be a list of polynomial encodings")
        return cls([Poly.from_json(c) for c in data])


def _b_lambda(lam: Partition, b: Sequence[Poly], reduce: Reducer | None) -> Poly:
    out = Poly.const(1)
    for j, m in lam.multiplicities:
        out = out * multichoose(b[j - 1], m, reduce)
        if reduce is not None:
            out = reduce(out)
    return out


def euler_expand(b: Sequence, D: int | None = None, reduce: Reducer | None = None) -> PolySeries:
    """``prod_{j<=D} (1 - t^j)^(-b_j)`` via ``a_d = sum_{lambda |- d} b_lambda``."""
    b = [Poly.coerce(x) for x in b]
    D = len(b) if D is None else D
    if D > len(b):
        b = b + [Poly()] * (D - len(b))
    coeffs = [Poly.const(1)]
    for d in range(1, D + 1):
        total = Poly()
        for lam in partitions(d):
            total = total + _b_lambda(lam, b, reduce)
        coeffs.append(reduce(total) if reduce else total)
    return PolySeries(coeffs)


def euler_expand_by_product(b: Sequence, D: int | None = None) -> PolySeries:
    """Same as :func:`euler_expand` but by multiplying out the factors one by one."""
    b = [Poly.coerce(x) for x in b]
    D = len(b) if D is None else D
    acc = PolySeries([1] + [0] * D)
    for j in range(1, D + 1):
        bj = b[j - 1] if j <= len(b) else Poly()
        factor = [Poly() for _ in range(D + 1)]
        for m in range(D // j + 1):
            factor[m * j] = multichoose(bj, m)
        acc = acc * PolySeries(factor)
    return acc


def _check_unital(a: PolySeries) -> None:
    if a[0] != Poly.const(1):
        raise ValueError(f"series must start with a_0 = 1, got {a[0]}")


def euler_invert(a: PolySeries, reduce: Reducer | None = None) -> list[Poly]:
    """The unique ``b_1..b_D`` with ``euler_expand(b) = a``.

    Uses ``b_d = a_d - sum_{lambda |- d, lambda != (d)} b_lambda``.  The
    partition sum grows like ``p(d)``; :func:`euler_invert_log` is the fast
    route for long series.
    """
    _check_unital(a)
    b: list[Poly] = []
    for d in range(1, a.D + 1):
        b.append(Poly())  # placeholder so b_lambda can index b_d (never used)
        total = Poly()
        for lam in partitions(d):
            if lam.multiplicities == ((d, 1),):
                continue
            total = total + _b_lambda(lam, b, reduce)
        bd = a[d] - total
        b[d - 1] = reduce(bd) if reduce else bd
    return b


def euler_invert_log(a: PolySeries, reduce: Reducer | None = None) -> list[Poly]:
    """Euler-product exponents from the logarithmic derivative.

    With ``t A'/A = sum c_n t^n`` one has ``c_n = sum_{j | n} j b_j``, so
    ``n b_n = sum_{e | n} mu(n/e) c_e``.  Costs ``O(D^2)`` multiplications.
    """
    _check_unital(a)
    red = reduce or _identity
    D = a.D
    c = [Poly()] * (D + 1)
    for n in range(1, D + 1):
        s = a[n] * n
        for k in range(1, n):
            s = s - c[k] * a[n - k]
        c[n] = red(s)
    b = []
    for n in range(1, D + 1):
        s = Poly()
        for e in divisors(n):
            mu = mobius(n // e)
            if mu:
                s = s + c[e] * mu
        b.append(red(s / n))
    return b
