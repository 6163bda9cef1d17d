"""Finite meet lattices and the Boolean algebra of their formal sums.

``FiniteLattice`` stores an explicit meet table plus derived order data
(top, bottom, covers, a descending linear extension).  ``BoolElem`` is a
subset of the ground set held as a bitmask; its product is the mod-2
meet-convolution, which makes the set of subsets a Boolean algebra whose
atoms are computed by ``atom_for`` via an even-up-set recursion.

The divisor lattice of an odd k (divisors ordered by reverse divisibility,
meet = lcm) is the instance the cycle arithmetic cares about; its atoms
have the closed form produced by ``divisor_atom``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence


class _AdjoinedTop:
    """Fresh top element adjoined to a semilattice."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "TOP"


ADJOINED_TOP = _AdjoinedTop()


class FiniteLattice:
    """A finite bounded lattice given by its ground set and meet operation.

    The constructor validates closure, idempotency, commutativity,
    associativity and the top/bottom laws (O(n^3) in the ground size).
    Instances are immutable after construction and safe to share.
    """

    def __init__(
        self,
        elements: Sequence[Hashable],
        meet: Callable[[Hashable, Hashable], Hashable]
        | Mapping[tuple[Hashable, Hashable], Hashable],
    ):
        self.elements: tuple = tuple(elements)
        n = len(self.elements)
        if n == 0:
            raise ValueError("lattice needs at least one element")
        if len(set(self.elements)) != n:
            raise ValueError("duplicate lattice elements")
        self.index: dict = {e: i for i, e in enumerate(self.elements)}

        if callable(meet):
            lookup = meet
        else:
            table = dict(meet)

            def lookup(a, b, _t=table):
                if (a, b) in _t:
                    return _t[(a, b)]
                return _t[(b, a)]

        m = [[0] * n for _ in range(n)]
        for i, a in enumerate(self.elements):
            for j, b in enumerate(self.elements):
                v = lookup(a, b)
                if v not in self.index:
                    raise ValueError(f"meet({a!r}, {b!r}) = {v!r} not in ground set")
                m[i][j] = self.index[v]
        self._meet = m

        for i in range(n):
            if m[i][i] != i:
                raise ValueError(f"meet not idempotent at {self.elements[i]!r}")
            for j in range(n):
                if m[i][j] != m[j][i]:
                    raise ValueError(
                        f"meet not commutative at ({self.elements[i]!r}, "
                        f"{self.elements[j]!r})"
                    )
        for i in range(n):
            for j in range(n):
                mij = m[i][j]
                for k in range(n):
                    if m[mij][k] != m[i][m[j][k]]:
                        raise ValueError(
                            "meet not associative at "
                            f"({self.elements[i]!r}, {self.elements[j]!r}, "
                            f"{self.elements[k]!r})"
                        )

        # order: a <= b iff a meet b = a
        leq = [[m[i][j] == i for j in range(n)] for i in range(n)]
        self._leq = leq

        tops = [j for j in range(n) if all(leq[i][j] for i in range(n))]
        bottoms = [i for i in range(n) if all(leq[i][j] for j in range(n))]
        if len(tops) != 1 or len(bottoms) != 1:
            raise ValueError("lattice must have a unique top and bottom")
        self._top_idx = tops[0]
        self._bottom_idx = bottoms[0]

        # descending linear extension: element i precedes j whenever i >= j
        self._toporder: tuple[int, ...] = tuple(
            sorted(range(n), key=lambda i: (sum(leq[i]), i))
        )
        # covers by transitive reduction: j covered by i if j < i with
        # nothing strictly between
        self._covers_below: list[tuple[int, ...]] = []
        for i in range(n):
            below = [j for j in range(n) if j != i and leq[j][i]]
            cov = [
                j
                for j in below
                if not any(k != j and leq[j][k] for k in below)
            ]
            self._covers_below.append(tuple(sorted(cov)))
        self._atom_masks: dict[int, int] = {}

    # -- basic structure -------------------------------------------------

    @property
    def top(self) -> Hashable:
        return self.elements[self._top_idx]

    @property
    def bottom(self) -> Hashable:
        return self.elements[self._bottom_idx]

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteLattice({list(self.elements)!r})"

    def meet(self, a: Hashable, b: Hashable) -> Hashable:
        return self.elements[self._meet[self.index[a]][self.index[b]]]

    def join(self, a: Hashable, b: Hashable) -> Hashable:
        """Least upper bound (exists: the ground set is finite and bounded)."""
        i, j = self.index[a], self.index[b]
        leq = self._leq
        upper = [k for k in range(len(self.elements)) if leq[i][k] and leq[j][k]]
        least = [k for k in upper if all(leq[k][l] for l in upper)]
        if len(least) != 1:
            raise ValueError(f"no unique join for ({a!r}, {b!r})")
        return self.elements[least[0]]

    def leq(self, a: Hashable, b: Hashable) -> bool:
        return self._leq[self.index[a]][self.index[b]]

    def covers_below(self, a: Hashable) -> tuple:
        """Elements covered by a: strictly below with nothing in between."""
        return tuple(
            self.elements[j] for j in self._covers_below[self.index[a]]
        )

    @classmethod
    def from_leq(
        cls,
        elements: Sequence[Hashable],
        leq_pairs: Iterable[tuple[Hashable, Hashable]],
    ) -> "FiniteLattice":
        """Build from the reflexive-transitive closure of given a <= b pairs.

        Meets are computed as greatest lower bounds; raises if some pair
        has none or several maximal lower bounds.
        """
        elems = tuple(elements)
        idx = {e: i for i, e in enumerate(elems)}
        n = len(elems)
        leq = [[i == j for j in range(n)] for i in range(n)]
        for a, b in leq_pairs:
            leq[idx[a]][idx[b]] = True
        for k in range(n):
            for i in range(n):
                if leq[i][k]:
                    row_k = leq[k]
                    row_i = leq[i]
                    for j in range(n):
                        if row_k[j]:
                            row_i[j] = True

        def glb(a, b):
            i, j = idx[a], idx[b]
            lower = [k for k in range(n) if leq[k][i] and leq[k][j]]
            maximal = [
                k for k in lower if not any(l != k and leq[k][l] for l in lower)
            ]
            if len(maximal) != 1:
                raise ValueError(f"no unique meet for ({a!r}, {b!r})")
            return elems[maximal[0]]

        return cls(elems, glb)


@lru_cache(maxsize=None)
def divisor_lattice(k: int) -> FiniteLattice:
    """Divisors of odd k ordered by reverse divisibility; meet is lcm.

    Cached so that repeated calls share one lattice object (sum-algebra
    values are only comparable over the identical lattice).
    """
    if k < 1 or k % 2 == 0:
        raise ValueError(f"odd k required, got {k}")
    divisors = sorted(d for d in range(1, k + 1) if k % d == 0)
    return FiniteLattice(divisors, math.lcm)


class BoolElem:
    """A subset of a lattice's ground set, an element of its sum algebra."""

    __slots__ = ("lattice", "bits")

    def __init__(self, lattice: FiniteLattice, support: Iterable[Hashable] = ()):
        self.lattice = lattice
        bits = 0
        for e in support:
            bits |= 1 << lattice.index[e]
        self.bits = bits

    @classmethod
    def _from_bits(cls, lattice: FiniteLattice, bits: int) -> "BoolElem":
        out = cls.__new__(cls)
        out.lattice = lattice
        out.bits = bits
        return out

    def _check(self, other: "BoolElem") -> None:
        if self.lattice is not other.lattice:
            raise ValueError("operands belong to different lattices")

    def support(self) -> tuple:
        els = self.lattice.elements
        return tuple(els[i] for i in range(len(els)) if self.bits >> i & 1)

    def __bool__(self) -> bool:
        return self.bits != 0

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BoolElem)
            and self.lattice is other.lattice
            and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((id(self.lattice), self.bits))

    def __add__(self, other: "BoolElem") -> "BoolElem":
        self._check(other)
        return BoolElem._from_bits(self.lattice, self.bits ^ other.bits)

    def __mul__(self, other: "BoolElem") -> "BoolElem":
        """Meet-convolution mod 2."""
        self._check(other)
        meet = self.lattice._meet
        out = 0
        a = self.bits
        while a:
            i = (a & -a).bit_length() - 1
            a &= a - 1
            row = meet[i]
            b = other.bits
            while b:
                j = (b & -b).bit_length() - 1
                b &= b - 1
                out ^= 1 << row[j]
        return BoolElem._from_bits(self.lattice, out)

    def __or__(self, other: "BoolElem") -> "BoolElem":
        return self + other + self * other

    def complement(self) -> "BoolElem":
        return self + unit_vector(self.lattice, self.lattice.top)

    def __le__(self, other: "BoolElem") -> bool:
        return self * other == self

    def __ge__(self, other: "BoolElem") -> bool:
        return other * self == other

    def __str__(self) -> str:
        if not self.bits:
            return "0"
        return " + ".join(str(e) for e in self.support())

    def __repr__(self) -> str:
        return f"BoolElem({str(self)!r})"


def unit_vector(lat: FiniteLattice, l: Hashable) -> BoolElem:
    return BoolElem._from_bits(lat, 1 << lat.index[l])


def v_mul(a: BoolElem, b: BoolElem) -> BoolElem:
    return a * b


def v_add(a: BoolElem, b: BoolElem) -> BoolElem:
    return a + b


def v_join(a: BoolElem, b: BoolElem) -> BoolElem:
    return a | b


def v_not(a: BoolElem) -> BoolElem:
    return a.complement()


def v_leq(a: BoolElem, b: BoolElem) -> bool:
    return a <= b


def _atom_mask(lat: FiniteLattice, li: int) -> int:
    cached = lat._atom_masks.get(li)
    if cached is not None:
        return cached
    leq = lat._leq
    # walk the down-set of l in descending order; an element joins the
    # atom exactly when it sees an odd number of chosen elements above it
    mask = 0
    for i in lat._toporder:
        if not leq[i][li]:
            continue
        if i == li:
            mask |= 1 << i
            continue
        above = 0
        sel = mask
        while sel:
            j = (sel & -sel).bit_length() - 1
            sel &= sel - 1
            if leq[i][j] and i != j:
                above ^= 1
        if above:
            mask |= 1 << i
    lat._atom_masks[li] = mask
    return mask


def atom_for(lat: FiniteLattice, l: Hashable) -> BoolElem:
    """The unique atom of the sum algebra whose support joins to l.

    It contains l, and below l every strict predecessor is covered an even
    number of times; computed by one pass over a descending order.
    """
    return BoolElem._from_bits(lat, _atom_mask(lat, lat.index[l]))


def atoms(lat: FiniteLattice) -> tuple[BoolElem, ...]:
    """All atoms, one per lattice element, in ground-set order."""
    return tuple(atom_for(lat, l) for l in lat.elements)


def atoms_below(x: BoolElem) -> frozenset:
    """Lattice elements l with atom_for(l) <= x."""
    lat = x.lattice
    out = []
    for l in lat.elements:
        a = atom_for(lat, l)
        if x * a == a:
            out.append(l)
    return frozenset(out)


def from_atoms(lat: FiniteLattice, ls: Iterable[Hashable]) -> BoolElem:
    bits = 0
    for l in ls:
        bits ^= _atom_mask(lat, lat.index[l])
    return BoolElem._from_bits(lat, bits)


def norm(x: BoolElem, l: Hashable) -> int:
    """1 when x dominates the atom at l, else 0.

    At the lattice bottom this is the parity of the support size of x.
    """
    a = atom_for(x.lattice, l)
    return 1 if x * a == a else 0


@dataclass(frozen=True)
class Interval:
    """The order interval [lo, hi] in a sum algebra; empty unless lo <= hi."""

    lo: BoolElem
    hi: BoolElem

    def __post_init__(self):
        if self.lo.lattice is not self.hi.lattice:
            raise ValueError("interval endpoints in different lattices")

    @property
    def is_empty(self) -> bool:
        return not self.lo <= self.hi

    def __contains__(self, x: BoolElem) -> bool:
        return self.lo <= x and x <= self.hi

    def __len__(self) -> int:
        if self.is_empty:
            return 0
        free = atoms_below(self.hi) - atoms_below(self.lo)
        return 1 << len(free)

    def members(self) -> Iterator[BoolElem]:
        """All members, lexicographically by atom choice."""
        if self.is_empty:
            return
        lat = self.lo.lattice
        base = atoms_below(self.lo)
        free = sorted(atoms_below(self.hi) - base, key=lat.index.__getitem__)
        base_elem = from_atoms(lat, base)
        for choice in range(1 << len(free)):
            extra = [free[t] for t in range(len(free)) if choice >> t & 1]
            yield base_elem + from_atoms(lat, extra)


def interval_parity_split(iv: Interval, l: Hashable) -> tuple[Interval, Interval]:
    """Split [lo, hi] by the norm at l: (norm 0 part, norm 1 part).

    Either returned interval may be empty.  At the lattice bottom the two
    parts are the even- and odd-support-size members.
    """
    if iv.is_empty:
        raise ValueError("cannot split an empty interval")
    a = atom_for(iv.lo.lattice, l)
    inside = Interval(iv.lo, iv.hi + iv.hi * a)
    outside = Interval(iv.lo + a + iv.lo * a, iv.hi)
    return inside, outside


@dataclass(frozen=True)
class SemilatticeAlgebra:
    """Boolean algebra on the sums over a meet-semilattice without a top.

    Elements are the BoolElem values of ``lattice`` (the semilattice with a
    fresh top adjoined) supported away from the adjoined top; the algebra
    top is e_top + atom_for(top) and its atoms are all other atoms.
    """

    lattice: FiniteLattice
    top: BoolElem
    atoms: tuple[BoolElem, ...]

    def embed(self, support: Iterable[Hashable]) -> BoolElem:
        return BoolElem(self.lattice, support)

    def complement(self, x: BoolElem) -> BoolElem:
        return x + self.top


def semilattice_algebra(
    elements: Sequence[Hashable],
    meet: Callable[[Hashable, Hashable], Hashable],
) -> SemilatticeAlgebra:
    """Build the sum algebra of a finite meet-semilattice.

    The input must be meet-closed with a least element; a fresh top is
    adjoined to make it a lattice before the atom construction runs.
    """
    elems = tuple(elements)
    seen = set(elems)
    for a in elems:
        for b in elems:
            if meet(a, b) not in seen:
                raise ValueError(
                    f"not meet-closed: meet({a!r}, {b!r}) escapes the set"
                )

    def adj_meet(a, b):
        if a is ADJOINED_TOP:
            return b
        if b is ADJOINED_TOP:
            return a
        return meet(a, b)

    lat = FiniteLattice((ADJOINED_TOP,) + elems, adj_meet)
    top_atom = atom_for(lat, ADJOINED_TOP)
    full_top = unit_vector(lat, ADJOINED_TOP) + top_atom
    rest = tuple(atom_for(lat, l) for l in elems)
    return SemilatticeAlgebra(lattice=lat, top=full_top, atoms=rest)


def _prime_factors(k: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 3
    while d * d <= k:
        while k % d == 0:
            out[d] = out.get(d, 0) + 1
            k //= d
        d += 2
    if k > 1:
        out[k] = out.get(k, 0) + 1
    return out


def divisor_atom(k: int, j: int) -> BoolElem:
    """Atom of the divisor-lattice algebra indexed by a divisor j of k.

    Supported on the divisors l with j | l | m(j), where m(j) multiplies
    each prime exponent of j up by one, capped at its exponent in k.
    """
    lat = divisor_lattice(k)
    if j < 1 or k % j != 0:
        raise ValueError(f"{j} does not divide {k}")
    m = 1
    for p, kp in _prime_factors(k).items():
        jp = 0
        jj = j
        while jj % p == 0:
            jp += 1
            jj //= p
        m *= p ** min(jp + 1, kp)
    support = [l for l in lat.elements if l % j == 0 and m % l == 0]
    return BoolElem(lat, support)


def divisor_atom_indices(k: int, i: int) -> tuple[int, ...]:
    """Divisors j of k whose atoms sum to the single divisor element i."""
    if i < 1 or k % i != 0:
        raise ValueError(f"{i} does not divide {k}")
    return tuple(j for j in divisor_lattice(k).elements if j % i == 0)
