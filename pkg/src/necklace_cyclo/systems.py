"""Necklace systems: residue-class multisets whose subset products cancel.

A system modulo ``m`` encodes the minimal ``x^m - 1`` divisors of necklace
polynomials; a signed system (residues kept modulo ``2m``) encodes the
minimal ``x^m + 1`` divisors.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Literal

import sympy

from .exactmath import _check_positive, divisors, is_prime
from .frobenius import FrobElt, reduce, reduce_signed
from .necklace import divides_xm

MAX_SEARCH_SIZE = 6


class Availability(Enum):
    INFINITE = "infinite"
    ISOLATED = "isolated"
    EMPTY = "empty"


@dataclass(frozen=True)
class ResidueClass:
    value: int
    modulus: int

    def __post_init__(self):
        _check_positive(self.modulus, "modulus")
        if not 0 <= self.value < self.modulus:
            raise ValueError(f"residue {self.value} out of range mod {self.modulus}")

    @property
    def availability(self) -> Availability:
        return classify(self.value, self.modulus)[0]

    @property
    def isolated_prime(self) -> int | None:
        return classify(self.value, self.modulus)[1]


def classify(a: int, modulus: int) -> tuple[Availability, int | None]:
    """How many primes lie in ``a mod modulus``: infinitely many, one, or none."""
    a %= modulus
    g = math.gcd(a, modulus)
    if g == 1:
        return Availability.INFINITE, None
    # every member is divisible by g, so the only candidate prime is g itself
    if a == g and is_prime(a):
        return Availability.ISOLATED, a
    if a == 0 and is_prime(modulus):
        return Availability.ISOLATED, modulus
    return Availability.EMPTY, None


@dataclass(frozen=True)
class NecklaceSystem:
    """A multiset of classes modulo ``m`` (or modulo ``2m`` when signed).

    Residues are stored sorted, which is the canonical form used for
    deduplication.  Construction enforces the structural conditions: no
    empty class and no repeated isolated class.
    """

    m: int
    residues: tuple[int, ...]
    signed: bool = False

    def __post_init__(self):
        _check_positive(self.m, "m")
        mod = self.modulus
        res = tuple(sorted(r % mod for r in self.residues))
        object.__setattr__(self, "residues", res)
        seen_isolated = set()
        for r in res:
            kind, _ = classify(r, mod)
            if kind is Availability.EMPTY:
                raise ValueError(f"class {r} mod {mod} contains no primes")
            if kind is Availability.ISOLATED:
                if r in seen_isolated:
                    raise ValueError(f"isolated class {r} mod {mod} repeated")
                seen_isolated.add(r)

    @property
    def modulus(self) -> int:
        return 2 * self.m if self.signed else self.m

    @property
    def classes(self) -> list[ResidueClass]:
        return [ResidueClass(r, self.modulus) for r in self.residues]

    def __len__(self) -> int:
        return len(self.residues)

    def sub(self, indices: Iterable[int]) -> "NecklaceSystem":
        return NecklaceSystem(self.m, tuple(self.residues[i] for i in indices), self.signed)

    def to_json(self) -> list[int]:
        return list(self.residues)


def _accumulators(residues: tuple[int, ...], m: int, signed: bool) -> list[int]:
    mod = 2 * m if signed else m
    acc = [0] * m
    n = len(residues)
    for mask in range(1 << n):
        prod = 1 % mod
        size = 0
        for i in range(n):
            if mask >> i & 1:
                prod = prod * residues[i] % mod
                size += 1
        if signed:
            cls, sgn = prod % m, int(prod >= m)
            acc[cls] += -1 if (size + sgn) % 2 else 1
        else:
            acc[prod] += -1 if size % 2 else 1
    return acc


def _is_system_raw(residues: tuple[int, ...], m: int, signed: bool) -> bool:
    return not any(_accumulators(residues, m, signed))


def is_system(S: NecklaceSystem) -> bool:
    """Every product class is hit equally often by even and odd subsets
    (parity of ``|T| + sgn(prod T)`` in the signed case)."""
    return _is_system_raw(S.residues, S.m, S.signed)


def frobenius_form(S: NecklaceSystem) -> FrobElt:
    """``prod ([a_i] - [1])``; its reduction vanishes exactly for systems."""
    out = FrobElt.one()
    for a in S.residues:
        out = out * (FrobElt.symbol(a) - FrobElt.symbol(1))
    return out


def is_system_via_frobenius(S: NecklaceSystem) -> bool:
    op = frobenius_form(S)
    return (reduce_signed(op, S.m) if S.signed else reduce(op, S.m)).is_zero()


def _proper_submultisets(residues: tuple[int, ...]) -> set[tuple[int, ...]]:
    n = len(residues)
    out = set()
    for k in range(n):
        for idx in itertools.combinations(range(n), k):
            out.add(tuple(residues[i] for i in idx))
    return out


def is_primitive(S: NecklaceSystem) -> bool:
    """A system none of whose proper sub-multisets is a system."""
    if not is_system(S):
        return False
    return not any(_is_system_raw(t, S.m, S.signed) for t in _proper_submultisets(S.residues))


def _allowed_classes(m: int, signed: bool) -> list[tuple[int, bool]]:
    mod = 2 * m if signed else m
    out = []
    for r in range(mod):
        kind, _ = classify(r, mod)
        if kind is not Availability.EMPTY:
            out.append((r, kind is Availability.ISOLATED))
    return out


def _search_from(args: tuple[int, bool, int, int]) -> list[tuple[int, ...]]:
    # all primitive systems whose smallest residue is `first`
    m, signed, max_size, first = args
    allowed = _allowed_classes(m, signed)
    start = next(i for i, (r, _) in enumerate(allowed) if r == first)
    found: list[tuple[int, ...]] = []

    def contains_found(cand: tuple[int, ...]) -> bool:
        return any(_is_system_raw(t, m, signed) for t in _proper_submultisets(cand))

    def grow(cand: tuple[int, ...], i: int) -> None:
        if _is_system_raw(cand, m, signed):
            if not contains_found(cand):
                found.append(cand)
            return  # supersets of a system are never primitive
        if len(cand) == max_size:
            return
        for j in range(i, len(allowed)):
            r, isolated = allowed[j]
            if isolated and cand[-1] == r:
                continue
            grow(cand + (r,), j)

    grow((first,), start)
    return found


def search_primitive(
    m: int, signed: bool = False, max_size: int = 3, jobs: int = 1
) -> list[NecklaceSystem]:
    """Every primitive (signed) system modulo ``m`` with at most ``max_size``
    classes, ordered by size and then lexicographically."""
    _check_positive(m, "m")
    _check_positive(max_size, "max_size")
    if max_size > MAX_SEARCH_SIZE:
        raise ValueError(f"max_size {max_size} exceeds the search guard {MAX_SEARCH_SIZE}")
    tasks = [(m, signed, max_size, r) for r, _ in _allowed_classes(m, signed)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_search_from, tasks))
    else:
        parts = [_search_from(t) for t in tasks]
    found = {t for part in parts for t in part}
    return [NecklaceSystem(m, t, signed) for t in sorted(found, key=lambda t: (len(t), t))]


def family_witness(
    m: int, family: Literal["signed_pair", "triple"]
) -> NecklaceSystem | None:
    """Instance of one of the two explicit families of primitive systems.

    ``signed_pair`` is ``{m - 1, 2m - 1}`` modulo ``2m``.  ``triple`` is the
    lexicographically least ``{a, b, c}`` of non-trivial square roots of 1
    mod ``m`` with ``abc = 1``.  The result is returned only if it passes
    :func:`is_system`.
    """
    if m < 2:
        raise ValueError("families are defined for m >= 2")
    if family == "signed_pair":
        try:
            S = NecklaceSystem(m, (m - 1, 2 * m - 1), signed=True)
        except ValueError:
            return None
        return S if is_system(S) else None
    if family == "triple":
        roots = [a for a in range(2, m) if a * a % m == 1 and math.gcd(a, m) == 1]
        for a, b, c in itertools.combinations_with_replacement(roots, 3):
            if a * b * c % m == 1:
                S = NecklaceSystem(m, (a, b, c))
                if is_system(S):
                    return S
        return None
    raise ValueError(f"unknown family {family!r}")


@dataclass(frozen=True)
class MinimalDCertificate:
    d: int
    primes: tuple[int, ...]
    divides: bool
    minimal: bool

    def to_json(self) -> dict:
        return {"d": self.d, "primes": list(self.primes),
                "divides": self.divides, "minimal": self.minimal}


def _primes_in_class(a: int, modulus: int, cutoff: int):
    start = a if a > 0 else modulus
    for p in range(start, cutoff + 1, modulus):
        if is_prime(p):
            yield p


def system_to_minimal_d(S: NecklaceSystem, cutoff: int = 10**6) -> MinimalDCertificate:
    """Realise a system by the smallest distinct primes, one per class.

    Classes are processed in ascending order and each takes its least
    unused prime.  The certificate records whether ``x^m -+ 1`` divides
    ``M_d`` and whether no proper divisor of ``d`` already has that factor.
    """
    if not is_system(S):
        raise ValueError(f"{S.residues} is not a necklace system mod {S.m}")
    used: list[int] = []
    for a in S.residues:
        p = next((q for q in _primes_in_class(a, S.modulus, cutoff) if q not in used), None)
        if p is None:
            raise ValueError(f"no unused prime <= {cutoff} in class {a} mod {S.modulus}")
        used.append(p)
    d = math.prod(used)
    sign = "plus" if S.signed else "minus"
    divides = divides_xm(d, S.m, sign)
    minimal = divides and not any(divides_xm(e, S.m, sign) for e in divisors(d) if e < d)
    return MinimalDCertificate(d, tuple(sorted(used)), divides, minimal)


def system_of(d: int, m: int, signed: bool = False) -> NecklaceSystem:
    """Residues of the prime factors of squarefree ``d`` as a system candidate."""
    mod = 2 * m if signed else m
    return NecklaceSystem(m, tuple(p % mod for p in sympy.primefactors(d)), signed)
