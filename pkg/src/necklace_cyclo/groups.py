"""Finite groups from Cayley tables, their subgroup lattices, and G-necklaces.

Elements are the integers ``0..n-1`` with ``0`` the identity and
``table[g][h] = g*h``.  Subgroups are Python int bitsets over element ids.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .exactmath import Poly, is_prime
from .frobenius import FrobElt, frob_apply

DEFAULT_ORDER_BOUND = 64


class ChainError(ValueError):
    """A proposed subnormal chain fails one of its defining properties."""


class IdentityViolation(AssertionError):
    """Two independently computed sides of a proven identity disagree."""


def _bits(elements: Iterable[int]) -> int:
    out = 0
    for e in elements:
        out |= 1 << int(e)
    return out


def _members(bits: int) -> list[int]:
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return out


class FiniteGroup:
    """A group given by its multiplication table."""

    def __init__(self, table, name: str | None = None, max_order: int = DEFAULT_ORDER_BOUND):
        t = np.asarray(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise ValueError("Cayley table must be a non-empty square array")
        n = t.shape[0]
        if n > max_order:
            raise ValueError(f"group order {n} exceeds the bound {max_order}")
        if t.min() < 0 or t.max() >= n:
            raise ValueError("Cayley table entries must be element ids 0..n-1")
        ids = np.arange(n)
        if not (np.array_equal(t[0], ids) and np.array_equal(t[:, 0], ids)):
            raise ValueError("element 0 must be the identity")
        for axis in (0, 1):
            if not np.all(np.sort(t, axis=axis) == (ids[:, None] if axis == 0 else ids[None, :])):
                raise ValueError("Cayley table is not a Latin square (no inverses)")
        # associativity over all triples: (ab)c == a(bc)
        if not np.array_equal(t[t], t[:, t]):
            raise ValueError("Cayley table is not associative")
        self.table = t
        self.order = n
        self.name = name
        self.inverse = np.argmax(t == 0, axis=1)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    def mul(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = int(self.table[x, g])
            k += 1
        return k

    def generate(self, gens: Iterable[int]) -> int:
        """Bitset of the subgroup generated by ``gens``."""
        gens = sorted(set(int(g) for g in gens) - {0})
        seen = {0}
        queue = deque([0])
        tab = self.table
        while queue:
            x = queue.popleft()
            for g in gens:
                y = int(tab[x, g])
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return _bits(seen)

    def is_subgroup(self, bits: int) -> bool:
        els = _members(bits)
        if not els or els[0] != 0:
            return False
        sub = np.array(els)
        prods = self.table[np.ix_(sub, sub)]
        return all((bits >> int(p)) & 1 for p in np.unique(prods))

    def is_normal(self, sub_bits: int, in_bits: int | None = None) -> bool:
        """Is the subgroup ``sub_bits`` normal in ``in_bits`` (default: G)?"""
        outer = _members(in_bits) if in_bits is not None else range(self.order)
        inner = np.array(_members(sub_bits))
        for g in outer:
            conj = self.table[self.table[g, inner], self.inverse[g]]
            if not all((sub_bits >> int(c)) & 1 for c in conj):
                return False
        return True

    @property
    def full(self) -> int:
        return (1 << self.order) - 1

    def to_json(self) -> dict:
        return {"order": self.order, "table": self.table.tolist(), "name": self.name or ""}

    @classmethod
    def from_json(cls, data: dict | str, max_order: int = DEFAULT_ORDER_BOUND) -> "FiniteGroup":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            order, table = int(data["order"]), data["table"]
        except (KeyError, TypeError) as exc:
            raise ValueError("group JSON needs 'order' and 'table'") from exc
        g = cls(table, name=data.get("name") or None, max_order=max_order)
        if g.order != order:
            raise ValueError(f"declared order {order} but table has {g.order} rows")
        return g

    @cached_property
    def lattice(self) -> "SubgroupLattice":
        return enumerate_subgroups(self)


# --------------------------------------------------------------------------
# builders
# --------------------------------------------------------------------------

def cyclic(d: int) -> FiniteGroup:
    if d < 1:
        raise ValueError("cyclic group order must be >= 1")
    i = np.arange(d)
    return FiniteGroup((i[:, None] + i[None, :]) % d, name=f"C{d}")


def dihedral(order: int) -> FiniteGroup:
    """Dihedral group with ``order = 2d`` elements; ``r^a s^b`` has id ``a + d*b``."""
    if order < 2 or order % 2:
        raise ValueError("dihedral group order must be even and >= 2")
    d = order // 2
    table = np.zeros((order, order), dtype=np.int64)
    for x in range(order):
        a, b = x % d, x // d
        for y in range(order):
            c, e = y % d, y // d
            table[x, y] = (a + (-c if b else c)) % d + d * ((b + e) % 2)
    return FiniteGroup(table, name=f"D{order}")


def quaternion8() -> FiniteGroup:
    # ids: 0=1, 1=-1, 2=i, 3=-i, 4=j, 5=-j, 6=k, 7=-k
    unit = {("1", "1"): (1, "1")}
    basis = ["1", "i", "j", "k"]
    rules = {
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    }
    for b in basis:
        unit[("1", b)] = (1, b)
        unit[(b, "1")] = (1, b)
    unit.update(rules)
    elems = [(s, b) for b in basis for s in (1, -1)]
    index = {e: i for i, e in enumerate(elems)}
    table = np.zeros((8, 8), dtype=np.int64)
    for x, (s1, b1) in enumerate(elems):
        for y, (s2, b2) in enumerate(elems):
            s, b = unit[(b1, b2)]
            table[x, y] = index[(s1 * s2 * s, b)]
    return FiniteGroup(table, name="Q8")


def symmetric(n: int) -> FiniteGroup:
    if not 1 <= n <= 4:
        raise ValueError("symmetric groups are built for n <= 4")
    perms = list(itertools.permutations(range(n)))  # identity first
    index = {p: i for i, p in enumerate(perms)}
    table = np.zeros((len(perms),) * 2, dtype=np.int64)
    for x, g in enumerate(perms):
        for y, h in enumerate(perms):
            table[x, y] = index[tuple(g[h[k]] for k in range(n))]
    return FiniteGroup(table, name=f"S{n}")


def direct_product(G: FiniteGroup, H: FiniteGroup, max_order: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    n, m = G.order, H.order
    if n * m > max_order:
        raise ValueError(f"product order {n * m} exceeds the bound {max_order}")
    table = (G.table[:, None, :, None] * m + H.table[None, :, None, :]).reshape(n * m, n * m)
    return FiniteGroup(table, name=f"{G.name or '?'}x{H.name or '?'}", max_order=max_order)


def abelian(*orders: int) -> FiniteGroup:
    if not orders:
        return cyclic(1)
    G = cyclic(orders[0])
    for d in orders[1:]:
        G = direct_product(G, cyclic(d))
    G.name = "x".join(f"C{d}" for d in orders)
    return G


def preset(name: str) -> FiniteGroup:
    """``c{d}``, ``d{2d}``, ``q8``, ``s3``, ``s4``."""
    key = name.strip().lower()
    if key == "q8":
        return quaternion8()
    if key in ("s1", "s2", "s3", "s4"):
        return symmetric(int(key[1]))
    if key[:1] in ("c", "d") and key[1:].isdigit():
        n = int(key[1:])
        return cyclic(n) if key[0] == "c" else dihedral(n)
    raise ValueError(f"unknown group preset {name!r}")


# --------------------------------------------------------------------------
# subgroup lattice
# --------------------------------------------------------------------------

class SubgroupLattice:
    """All subgroups of a group, sorted by size then bitset value."""

    def __init__(self, group: FiniteGroup, subgroups: Iterable[int]):
        self.group = group
        self.subgroups = sorted(set(subgroups), key=lambda b: (bin(b).count("1"), b))
        self.index = {b: i for i, b in enumerate(self.subgroups)}
        self.sizes = [bin(b).count("1") for b in self.subgroups]
        self._interval_mu: dict[int, dict[int, int]] = {}
        self.mobius_bottom = [self.mobius(1, h) for h in self.subgroups]

    def __len__(self) -> int:
        return len(self.subgroups)

    @staticmethod
    def contains(small: int, big: int) -> bool:
        return small & big == small

    def size(self, h: int) -> int:
        return self.sizes[self.index[h]]

    def _mu_from(self, k: int) -> dict[int, int]:
        # mu(K, H) for every H containing K, by the defining recursion
        if k not in self._interval_mu:
            if k not in self.index:
                raise ValueError("not a subgroup of this group")
            mu: dict[int, int] = {}
            above = [h for h in self.subgroups if self.contains(k, h)]
            for h in above:
                if h == k:
                    mu[h] = 1
                else:
                    mu[h] = -sum(v for j, v in mu.items() if j != h and self.contains(j, h))
            self._interval_mu[k] = mu
        return self._interval_mu[k]

    def mobius(self, k: int, h: int) -> int:
        """``mu(K, H)`` in the subgroup lattice (0 unless ``K <= H``)."""
        return self._mu_from(k).get(h, 0)

    def mu(self, h: int) -> int:
        return self.mobius(1, h)

    def below(self, h: int) -> list[int]:
        return [k for k in self.subgroups if self.contains(k, h)]

    def subgroup_lattice_json(self) -> list[dict]:
        return [{"elements": _members(h), "order": self.size(h), "mu": self.mu(h)}
                for h in self.subgroups]


def enumerate_subgroups(G: FiniteGroup, max_order: int = DEFAULT_ORDER_BOUND) -> SubgroupLattice:
    """Every subgroup, as joins of cyclic subgroups closed to a fixpoint."""
    if G.order > max_order:
        raise ValueError(f"group order {G.order} exceeds the bound {max_order}")
    cyclic_gen: dict[int, int] = {}
    for g in range(G.order):
        cyclic_gen.setdefault(G.generate([g]), g)
    gens: dict[int, list[int]] = {b: [g] for b, g in cyclic_gen.items()}
    frontier = list(gens)
    while frontier:
        new = []
        for h in frontier:
            for c, g in cyclic_gen.items():
                if c & h == c:
                    continue
                j = G.generate(gens[h] + [g])
                if j not in gens:
                    gens[j] = gens[h] + [g]
                    new.append(j)
        frontier = new
    return SubgroupLattice(G, gens)


def brute_force_subgroups(G: FiniteGroup) -> list[int]:
    """All subsets closed under multiplication; only sensible for tiny groups."""
    if G.order > 12:
        raise ValueError("brute-force subgroup search is limited to order 12")
    out = []
    rest = list(range(1, G.order))
    for r in range(len(rest) + 1):
        for combo in itertools.combinations(rest, r):
            b = _bits((0,) + combo)
            if G.is_subgroup(b):
                out.append(b)
    return out


def g_necklace_S(G: FiniteGroup, K: int | None = None) -> Poly:
    """``S_{G,K} = sum_{K <= H} mu(K, H) x^{[G:H]}``; ``K`` defaults to 1."""
    lat = G.lattice
    k = 1 if K is None else K
    if k not in lat.index:
        raise ValueError("K is not a subgroup of G")
    terms: dict[int, int] = {}
    for h, mu in lat._mu_from(k).items():
        if mu:
            idx = G.order // lat.size(h)
            terms[idx] = terms.get(idx, 0) + mu
    return Poly(terms)


def g_necklace_M(G: FiniteGroup) -> Poly:
    return g_necklace_S(G) / G.order


def subgroup_necklace_S(G: FiniteGroup, K: int) -> Poly:
    """``S_K`` for a subgroup ``K`` viewed as a group in its own right."""
    lat = G.lattice
    size = lat.size(K)
    terms: dict[int, int] = {}
    for h in lat.below(K):
        mu = lat.mu(h)
        if mu:
            e = size // lat.size(h)
            terms[e] = terms.get(e, 0) + mu
    return Poly(terms)


def neck_identity_sides(G: FiniteGroup, K: int) -> tuple[Poly, Poly]:
    """Both sides of ``S_K(x^{[G:K]}) = sum_{K cap H = 1} S_{G,H}(x)``."""
    lat = G.lattice
    lhs = subgroup_necklace_S(G, K).compose_power(G.order // lat.size(K))
    rhs = Poly()
    for h in lat.subgroups:
        if h & K == 1:
            rhs = rhs + g_necklace_S(G, h)
    return lhs, rhs


# --------------------------------------------------------------------------
# normal chains
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class NormalChain:
    """``K = N_0 < N_1 < ... < N_{k+1} = G`` with prime indices and counts."""

    subgroups: tuple[int, ...]
    primes: tuple[int, ...]
    counts: tuple[int, ...]

    @property
    def base(self) -> int:
        return self.subgroups[0]

    def operator(self) -> FrobElt:
        out = FrobElt.one()
        for p, c in zip(self.primes, self.counts):
            out = (FrobElt.symbol(p) - c * FrobElt.symbol(1)) * out
        return out

    def to_json(self) -> dict:
        return {"subgroups": [_members(s) for s in self.subgroups],
                "primes": list(self.primes), "counts": list(self.counts)}


def make_chain(G: FiniteGroup, subgroups: Sequence[int | Iterable[int]]) -> NormalChain:
    """Validate a chain (given as bitsets or element lists) and compute ``c_i``."""
    lat = G.lattice
    bits = [s if isinstance(s, int) else _bits(s) for s in subgroups]
    if len(bits) < 2:
        raise ChainError("a chain needs at least two subgroups")
    for i, b in enumerate(bits):
        if b not in lat.index:
            raise ChainError(f"link {i} is not a subgroup")
    if bits[-1] != G.full:
        raise ChainError("the chain must end at G")
    primes, counts = [], []
    for i in range(len(bits) - 1):
        lo, hi = bits[i], bits[i + 1]
        if not lat.contains(lo, hi):
            raise ChainError(f"link {i} is not contained in link {i + 1}")
        q, r = divmod(lat.size(hi), lat.size(lo))
        if r or not is_prime(q):
            raise ChainError(f"index of link {i} in link {i + 1} is {lat.size(hi) / lat.size(lo):g}, not prime")
        if not G.is_normal(lo, hi):
            raise ChainError(f"link {i} is not normal in link {i + 1}")
        primes.append(q)
        counts.append(sum(1 for h in lat.subgroups if h != 1 and lat.contains(h, hi) and h & lo == 1))
    return NormalChain(tuple(bits), tuple(primes), tuple(counts))


def auto_chain(G: FiniteGroup, K: int | None = None) -> NormalChain:
    """Descend from ``G`` through normal subgroups of prime index down to ``K``.

    At each step the largest candidate wins, ties going to the smallest
    bitset.  Raises :class:`ChainError` when no such descent exists.
    """
    lat = G.lattice
    base = 1 if K is None else K
    links = [G.full]
    while links[-1] != base:
        top = links[-1]
        size = lat.size(top)
        cands = []
        for n in lat.subgroups:
            if n == top or not lat.contains(base, n) or not lat.contains(n, top):
                continue
            if not is_prime(size // lat.size(n)) or not G.is_normal(n, top):
                continue
            cands.append(n)
        if not cands:
            raise ChainError("no normal subgroup of prime index available; group not solvable over K?")
        links.append(min(cands, key=lambda n: (-lat.size(n), n)))
    return make_chain(G, links[::-1])


def chain_factorize(G: FiniteGroup, chain: NormalChain) -> tuple[FrobElt, bool]:
    """Return ``prod ([p_i] - c_i[1])`` and whether it maps ``S_K`` onto ``S_G``."""
    op = chain.operator()
    lhs = g_necklace_S(G)
    rhs = frob_apply(op, subgroup_necklace_S(G, chain.base))
    return op, lhs == rhs


def mobius_via_chain(G: FiniteGroup, chain: NormalChain) -> int:
    """``(-1)^{k+1} c_0 ... c_k mu(K)``, checked against the lattice value ``mu(G)``."""
    lat = G.lattice
    k1 = len(chain.primes)
    value = (-1) ** k1 * math.prod(chain.counts) * lat.mu(chain.base)
    lattice_value = lat.mu(G.full)
    if value != lattice_value:
        raise IdentityViolation(f"chain formula gives {value}, lattice gives {lattice_value}")
    return value


def chain_interval_condition(G: FiniteGroup, chain: NormalChain) -> bool:
    """Does every complement ``H`` at each link normalise every subgroup of ``N_i``?

    This is what makes ``J -> J cap N_i`` a bijection from the subgroups above
    ``H`` onto the subgroups of ``N_i``, which the chain factorization relies on.
    Cyclic and Dedekind ``N_i`` always qualify; ``V4 < A4`` inside ``S4`` does not.
    """
    lat = G.lattice
    for lo, hi in zip(chain.subgroups, chain.subgroups[1:]):
        subs = [k for k in lat.below(lo)]
        for h in lat.subgroups:
            if h == 1 or not lat.contains(h, hi) or h & lo != 1:
                continue
            for k in subs:
                if not G.is_normal(k, G.generate(_members(k) + _members(h))):
                    return False
    return True
