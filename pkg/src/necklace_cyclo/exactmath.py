"""Exact integer, rational and sparse univariate polynomial arithmetic.

Everything downstream is built on :class:`Poly`, a sparse polynomial with
:class:`fractions.Fraction` coefficients.  Necklace polynomials of large
degree have very few terms (``S_6061`` has eight), so the sparse map is the
natural carrier; dense buffers only appear inside division and cyclotomic
construction.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Iterator, Literal, Mapping

import sympy

Rat = Fraction
Sign = Literal["minus", "plus"]

NEG_INF = -math.inf


# --------------------------------------------------------------------------
# elementary number theory
# --------------------------------------------------------------------------

def _check_positive(n: int, name: str = "n") -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"{name} must be an int, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"{name} must be >= 1, got {n}")


@lru_cache(maxsize=65536)
def _factorint(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(sympy.factorint(n).items()))


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``n >= 1`` as ``{prime: exponent}``."""
    _check_positive(n)
    return dict(_factorint(n))


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in _factorint(n)] if n > 1 else []


def squarefree_part(n: int) -> int:
    """Product of the distinct primes dividing ``n`` (the radical)."""
    _check_positive(n)
    return math.prod(prime_divisors(n))


def is_squarefree(n: int) -> bool:
    _check_positive(n)
    return all(e == 1 for _, e in _factorint(n))


def divisors(n: int) -> list[int]:
    _check_positive(n)
    divs = [1]
    for p, e in _factorint(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def mobius(n: int) -> int:
    _check_positive(n)
    fac = _factorint(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def euler_phi(n: int) -> int:
    _check_positive(n)
    return math.prod((p - 1) * p ** (e - 1) for p, e in _factorint(n))


def is_prime(n: int) -> bool:
    return bool(sympy.isprime(n))


def totient_bounded(bound: int) -> list[int]:
    """All ``m >= 1`` with ``euler_phi(m) <= bound``, sorted.

    Enumerated by depth-first search over prime powers, so the list is exact
    rather than a sieve over a guessed range.
    """
    if bound < 1:
        return []
    primes = [p for p in sympy.primerange(2, bound + 2)]
    found = [1]

    def extend(start: int, m: int, phi: int) -> None:
        for i in range(start, len(primes)):
            p = primes[i]
            ph = phi * (p - 1)
            if ph > bound:
                break
            pk = p
            while ph <= bound:
                found.append(m * pk)
                extend(i + 1, m * pk, ph)
                pk *= p
                ph *= p

    extend(0, 1, 1)
    return sorted(found)


# --------------------------------------------------------------------------
# polynomials
# --------------------------------------------------------------------------

def _as_rat(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"cannot use {c!r} as an exact rational coefficient")


class Poly:
    """Sparse univariate polynomial over the rationals.

    Immutable; zero coefficients are never stored.  Construct from a mapping
    ``{exponent: coefficient}`` or via :meth:`x`, :meth:`const`,
    :meth:`monomial`, :meth:`from_dense`.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean: dict[int, Fraction] = {}
        if terms:
            for k, c in terms.items():
                if not isinstance(k, int) or k < 0:
                    raise ValueError(f"exponents must be non-negative ints, got {k!r}")
                c = _as_rat(c)
                if c:
                    clean[k] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, Fraction]) -> "Poly":
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors ---------------------------------------------------------
    @classmethod
    def x(cls) -> "Poly":
        return cls._raw({1: Fraction(1)})

    @classmethod
    def const(cls, c) -> "Poly":
        c = _as_rat(c)
        return cls._raw({0: c} if c else {})

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls({k: c})

    @classmethod
    def from_dense(cls, coeffs: Iterable) -> "Poly":
        """Build from ascending coefficient list ``[c0, c1, ...]``."""
        return cls({i: c for i, c in enumerate(coeffs) if c})

    @classmethod
    def coerce(cls, value) -> "Poly":
        if isinstance(value, Poly):
            return value
        return cls.const(value)

    # inspection -----------------------------------------------------------
    @property
    def degree(self) -> float | int:
        """Largest exponent; ``-inf`` for the zero polynomial."""
        return max(self._terms) if self._terms else NEG_INF

    @property
    def valuation(self) -> float | int:
        """Smallest exponent (multiplicity of the factor ``x``); ``inf`` for zero."""
        return min(self._terms) if self._terms else math.inf

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def coeff(self, k: int) -> Fraction:
        return self._terms.get(k, Fraction(0))

    def items(self) -> list[tuple[int, Fraction]]:
        """``(exponent, coefficient)`` pairs in ascending exponent order."""
        return sorted(self._terms.items())

    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[int, Fraction]]:
        return iter(self.items())

    def to_dense(self) -> list[Fraction]:
        if not self._terms:
            return []
        out = [Fraction(0)] * (self.degree + 1)
        for k, c in self._terms.items():
            out[k] = c
        return out

    def leading_coefficient(self) -> Fraction:
        return self._terms[self.degree] if self._terms else Fraction(0)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other) -> "Poly":
        other = Poly.coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-Poly.coerce(other))

    def __rsub__(self, other) -> "Poly":
        return Poly.coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = _as_rat(other)
            if not c:
                return Poly._raw({})
            return Poly._raw({k: v * c for k, v in self._terms.items()})
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Poly":
        if isinstance(other, Poly):
            q, r = poly_divrem(self, other)
            if not r.is_zero():
                raise ArithmeticError("inexact polynomial division")
            return q
        c = _as_rat(other)
        if not c:
            raise ZeroDivisionError("division by zero scalar")
        return Poly._raw({k: v / c for k, v in self._terms.items()})

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result, base = Poly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        return poly_divrem(self, other)

    def __mod__(self, other: "Poly") -> "Poly":
        return poly_divrem(self, other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return poly_divrem(self, other)[0]

    # comparison -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self._terms == Poly.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # evaluation and substitution ------------------------------------------
    def __call__(self, value):
        """Evaluate at a scalar (exact for ints/Fractions) or compose with a Poly."""
        if isinstance(value, Poly):
            out = Poly()
            for k, c in self._terms.items():
                out = out + (value**k) * c
            return out
        total = 0
        for k, c in self._terms.items():
            total += c * value**k
        return total

    def compose_power(self, k: int) -> "Poly":
        """``f(x^k)``; for ``k == 0`` this is the constant ``f(1)``."""
        if k == 0:
            return Poly.const(sum(self._terms.values(), Fraction(0)))
        return Poly._raw({e * k: c for e, c in self._terms.items()})

    def derivative(self) -> "Poly":
        return Poly._raw({k - 1: c * k for k, c in self._terms.items() if k})

    def shift(self, k: int) -> "Poly":
        """Multiply by ``x^k``."""
        return Poly._raw({e + k: c for e, c in self._terms.items()})

    # display / serialization ----------------------------------------------
    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, c in sorted(self._terms.items(), reverse=True):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> dict:
        return {"terms": [[k, str(c)] for k, c in self.items()]}

    @classmethod
    def from_json(cls, obj) -> "Poly":
        if isinstance(obj, dict):
            obj = obj.get("terms")
        if not isinstance(obj, list):
            raise ValueError("polynomial JSON must be {'terms': [[exp, 'num/den'], ...]}")
        terms: dict[int, Fraction] = {}
        for entry in obj:
            if not (isinstance(entry, list) and len(entry) == 2):
                raise ValueError(f"bad polynomial term {entry!r}")
            k, c = entry
            k = int(k)
            terms[k] = terms.get(k, Fraction(0)) + Fraction(str(c))
        return cls(terms)


X = Poly.x()
ONE = Poly.const(1)
ZERO = Poly()


def poly_mul(f: Poly, g: Poly) -> Poly:
    if not f._terms or not g._terms:
        return Poly._raw({})
    if len(f._terms) < len(g._terms):
        f, g = g, f
    out: dict[int, Fraction] = {}
    get = out.get
    gi = list(g._terms.items())
    for a, ca in f._terms.items():
        for b, cb in gi:
            k = a + b
            out[k] = get(k, 0) + ca * cb
    return Poly._raw({k: c for k, c in out.items() if c})


def poly_divrem(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    """Euclidean division ``f = q*g + r`` with ``deg r < deg g``."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if f.is_zero() or f.degree < g.degree:
        return Poly(), f
    dg = g.degree
    lead = g.leading_coefficient()
    integral = f.is_integral() and g.is_integral() and abs(lead) == 1
    if integral:
        num = [0] * (f.degree + 1)
        for k, c in f._terms.items():
            num[k] = c.numerator
        gs = [(k, c.numerator) for k, c in g._terms.items() if k != dg]
        li = lead.numerator
    else:
        num = f.to_dense()
        gs = [(k, c) for k, c in g._terms.items() if k != dg]
        li = lead
    q = [0] * (f.degree - dg + 1)
    for i in range(f.degree, dg - 1, -1):
        c = num[i]
        if not c:
            continue
        c = c * li if integral else c / li  # li = +-1 in the integral case
        q[i - dg] = c
        base = i - dg
        for k, gk in gs:
            num[base + k] -= c * gk
    rem = num[:dg]
    return Poly.from_dense(q), Poly.from_dense(rem)


def divides(g: Poly, f: Poly) -> bool:
    return poly_divrem(f, g)[1].is_zero()


def x_pow_minus(m: int, sign: Sign = "minus") -> Poly:
    """``x^m - 1`` (sign="minus") or ``x^m + 1`` (sign="plus")."""
    return Poly({m: 1, 0: -1 if sign == "minus" else 1})


def q_integer(m: int) -> Poly:
    """``(x^m - 1)/(x - 1) = 1 + x + ... + x^(m-1)``."""
    return Poly({k: 1 for k in range(m)})


# --------------------------------------------------------------------------
# cyclotomic polynomials
# --------------------------------------------------------------------------

def _mul_binomial(c: list[int], k: int) -> list[int]:
    # c * (x^k - 1)
    out = [0] * (len(c) + k)
    for i, v in enumerate(c):
        if v:
            out[i + k] += v
            out[i] -= v
    return out


def _div_binomial(c: list[int], k: int) -> list[int]:
    # exact c / (x^k - 1), processed from the top
    n = len(c) - 1
    q = [0] * (n - k + 1)
    rem = list(c)
    for i in range(n, k - 1, -1):
        v = rem[i]
        if v:
            q[i - k] = v
            rem[i - k] += v
            rem[i] = 0
    if any(rem[:k]):
        raise ArithmeticError("binomial division was not exact")
    return q


@lru_cache(maxsize=None)
def _cyclotomic_dense(m: int) -> tuple[int, ...]:
    num_exps = [m // n for n in divisors(m) if mobius(n) == 1]
    den_exps = [m // n for n in divisors(m) if mobius(n) == -1]
    c = [1]
    for k in num_exps:
        c = _mul_binomial(c, k)
    for k in den_exps:
        c = _div_binomial(c, k)
    # numerator product carries the sign (-1)^{#factors}; normalise to monic
    if c[-1] < 0:
        c = [-v for v in c]
    return tuple(c)


def cyclotomic(m: int) -> Poly:
    """The ``m``-th cyclotomic polynomial.

    Built as ``prod_{n | m} (x^{m/n} - 1)^{mu(n)}``: all numerator binomials
    are multiplied first, then each denominator binomial is divided out
    exactly.  Results are memoised.
    """
    _check_positive(m, "m")
    return Poly.from_dense(_cyclotomic_dense(m))


def reduce_mod_xm(f: Poly, m: int, sign: Sign = "minus") -> Poly:
    """Canonical representative of ``f`` modulo ``x^m - 1`` or ``x^m + 1``.

    The minus case folds exponents mod ``m``; the plus case folds mod ``2m``
    and uses ``x^{b+m} = -x^b``.
    """
    _check_positive(m, "m")
    out: dict[int, Fraction] = {}
    if sign == "minus":
        for k, c in f._terms.items():
            r = k % m
            out[r] = out.get(r, 0) + c
    elif sign == "plus":
        for k, c in f._terms.items():
            r = k % (2 * m)
            if r >= m:
                r -= m
                c = -c
            out[r] = out.get(r, 0) + c
    else:
        raise ValueError(f"sign must be 'minus' or 'plus', got {sign!r}")
    return Poly._raw({k: c for k, c in out.items() if c})


def _vanishes_at_primitive_root(folded: dict[int, Fraction], m: int) -> bool:
    # folded: support in [0, m).  Reduce onto the basis of Z[zeta_m] made of
    # exponents whose top base-p digit (in the p-primary CRT component) is
    # never p-1, using sum_{j<p} x^{k + j m/p} = 0 for each prime p | m.
    terms = {k: c for k, c in folded.items() if c}
    for p, e in _factorint(m) if m > 1 else ():
        pe = p**e
        low = pe // p
        step = m // p
        for k in [k for k in terms if (k % pe) // low == p - 1]:
            c = terms.pop(k, 0)
            if not c:
                continue
            for j in range(1, p):
                t = (k + j * step) % m
                v = terms.get(t, 0) - c
                if v:
                    terms[t] = v
                else:
                    terms.pop(t, None)
    return not terms


def cyclotomic_divides(f: Poly, m: int) -> bool:
    """Exact test of ``Phi_m | f``.

    ``f`` is folded modulo ``x^m - 1`` and then reduced onto an integral
    basis of the ``m``-th cyclotomic ring; ``Phi_m`` divides ``f`` exactly
    when nothing survives.  Agrees with ``poly_divrem(f, cyclotomic(m))``
    but never builds ``Phi_m``.
    """
    _check_positive(m, "m")
    if f.is_zero():
        return True
    folded = reduce_mod_xm(f, m, "minus")
    return _vanishes_at_primitive_root(folded._terms, m)


def cyclotomic_multiplicity(f: Poly, m: int) -> int:
    """Largest ``k`` with ``Phi_m^k | f`` (``f`` nonzero)."""
    if f.is_zero():
        raise ValueError("multiplicity is undefined for the zero polynomial")
    k, g = 0, f
    while not g.is_zero() and cyclotomic_divides(g, m):
        k += 1
        g = g.derivative()
    return k


def reduce_mod_cyclotomic(f: Poly, m: int) -> Poly:
    """Remainder of ``f`` modulo ``Phi_m``: canonical element of Q(zeta_m)."""
    # fold first; Phi_m divides x^m - 1
    return poly_divrem(reduce_mod_xm(f, m), cyclotomic(m))[1]


class HypothesisNotMet(ValueError):
    """A theorem-check was asked about inputs outside the theorem's hypotheses.

    Kept distinct from a ``False`` answer so callers can tell "the claim is
    false here" from "the claim says nothing here".
    """
