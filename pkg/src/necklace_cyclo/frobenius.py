"""The Frobenius algebra of substitution operators and its reductions.

An element ``sum a_k [k]`` acts on polynomials by ``[k] f(x) = f(x^k)``.
Symbols multiply by ``[m][n] = [mn]``.  ``[0]`` is a legitimate symbol (it
sends ``f`` to the constant ``f(1)``) and is not the zero element.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .exactmath import Poly, factorize, _check_positive


class FrobElt:
    """Finitely supported integer combination of Frobenius symbols ``[k]``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean: dict[int, int] = {}
        for k, c in (terms or {}).items():
            if not isinstance(k, int) or k < 0:
                raise ValueError(f"symbol index must be a non-negative int, got {k!r}")
            if int(c) != c:
                raise ValueError(f"coefficients must be integers, got {c!r}")
            c = int(c)
            if c:
                clean[k] = clean.get(k, 0) + c
        self._terms = {k: c for k, c in clean.items() if c}

    @classmethod
    def symbol(cls, k: int, c: int = 1) -> "FrobElt":
        return cls({k: c})

    @classmethod
    def one(cls) -> "FrobElt":
        return cls({1: 1})

    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self) -> list[tuple[int, int]]:
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, k: int) -> int:
        return self._terms.get(k, 0)

    def __add__(self, other: "FrobElt") -> "FrobElt":
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return FrobElt(out)

    def __neg__(self) -> "FrobElt":
        return FrobElt({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "FrobElt") -> "FrobElt":
        return self + (-other)

    def __mul__(self, other) -> "FrobElt":
        if isinstance(other, int):
            return FrobElt({k: c * other for k, c in self._terms.items()})
        out: dict[int, int] = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                out[a * b] = out.get(a * b, 0) + ca * cb
        return FrobElt(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, FrobElt) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"FrobElt({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = ""
        for k, c in sorted(self._terms.items(), reverse=True):
            sign = "-" if c < 0 else "+"
            body = f"[{k}]" if abs(c) == 1 else f"{abs(c)}[{k}]"
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += f" {sign} {body}"
        return out

    def augmentation(self) -> int:
        """Image under the ring map ``[a] -> a``."""
        return sum(k * c for k, c in self._terms.items())

    def apply(self, f: Poly) -> Poly:
        return frob_apply(self, f)

    def to_json(self) -> list[list[int]]:
        return [[k, c] for k, c in self.items()]

    @classmethod
    def from_json(cls, data: Iterable) -> "FrobElt":
        out: dict[int, int] = {}
        for k, c in data:
            out[int(k)] = out.get(int(k), 0) + int(c)
        return cls(out)


def frob_of_poly(f: Poly) -> FrobElt:
    """The unique ``[f]`` with ``[f] x = f(x)``."""
    if not f.is_integral():
        raise ValueError("only integer polynomials correspond to Frobenius elements")
    return FrobElt({k: int(c) for k, c in f.items()})


def frob_apply(alpha: FrobElt, f: Poly) -> Poly:
    """``sum a_k f(x^k)``."""
    out = Poly()
    for k, c in alpha.items():
        out = out + f.compose_power(k) * c
    return out


def phi_op(d: int) -> FrobElt:
    """``phi[d] = prod_p ([p^e] - [p^(e-1)])``, so that ``phi[d] x = S_d(x)``."""
    _check_positive(d, "d")
    out = FrobElt.one()
    for p, e in factorize(d).items():
        out = out * FrobElt({p**e: 1, p ** (e - 1): -1})
    return out


@dataclass(frozen=True)
class PsiModM:
    """Image of a Frobenius element with symbol indices folded mod ``m``."""

    m: int
    coeffs: tuple[int, ...]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": list(self.coeffs)}


@dataclass(frozen=True)
class PsiModMSigned:
    """Image modulo ``[m]_+-``: indices folded mod ``2m`` with ``[b+m] = -[b]``."""

    m: int
    coeffs: tuple[int, ...]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_json(self) -> dict:
        return {"m": self.m, "signed": True, "coeffs": list(self.coeffs)}


def reduce(alpha: FrobElt, m: int) -> PsiModM:
    _check_positive(m, "m")
    coeffs = [0] * m
    for k, c in alpha.items():
        coeffs[k % m] += c
    return PsiModM(m, tuple(coeffs))


def reduce_signed(alpha: FrobElt, m: int) -> PsiModMSigned:
    """Reduce modulo ``[m]_+-``.

    The folding is defined for any support, but only odd-supported ``alpha``
    is guaranteed to turn vanishing into divisibility of ``alpha f`` by
    ``x^m + 1`` (and only for odd ``f``).
    """
    _check_positive(m, "m")
    coeffs = [0] * m
    for k, c in alpha.items():
        r = k % (2 * m)
        if r >= m:
            coeffs[r - m] -= c
        else:
            coeffs[r] += c
    return PsiModMSigned(m, tuple(coeffs))


def is_zero(value: FrobElt | PsiModM | PsiModMSigned) -> bool:
    return value.is_zero()
