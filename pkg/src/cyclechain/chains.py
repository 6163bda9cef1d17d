"""Sums of chains and cycles mod 2, and the combined division equation.

Chains of different length parity annihilate each other, so chain sums
split into an even and an odd class.  Within a class the products are
idempotent (min of lengths) and diagonalise in the orthogonal basis
Z_base = L_base, Z_i = L_i + L_{i-2}; intervals of solutions live in the
finite Boolean algebra of Z-coordinates up to a height cutoff, with levels
above the cutoff either free or forced empty depending on the parity of
the cycle part of the divisor.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Iterable, Iterator, Optional

from .cycles import CycleSum, OddSet
from .division import (
    IntervalSolutionSet,
    bool_to_oddset,
    interval_has_parity,
    level0_parity_members,
    membership,
    oddset_to_bool,
    solve,
)
from .formal import FormalSum, ProductRule
from .lattice import Interval, divisor_lattice


class ChainSum:
    """A finite sum of distinct chains, one per stored length."""

    __slots__ = ("lengths",)

    def __init__(self, lengths: Iterable[int] = ()):
        ls = frozenset(lengths)
        for d in ls:
            if d < 1:
                raise ValueError(f"chain length must be >= 1, got {d}")
        self.lengths: frozenset[int] = ls

    def __bool__(self) -> bool:
        return bool(self.lengths)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ChainSum) and self.lengths == other.lengths

    def __hash__(self) -> int:
        return hash(("ChainSum", self.lengths))

    def __add__(self, other: "ChainSum") -> "ChainSum":
        return ChainSum(self.lengths ^ other.lengths)

    def __mul__(self, other: "ChainSum") -> "ChainSum":
        acc: set[int] = set()
        for e in self.lengths:
            for d in other.lengths:
                if (e ^ d) & 1 == 0:
                    acc ^= {min(e, d)}
        return ChainSum(acc)

    @property
    def height(self) -> int:
        """Largest chain length present; 0 for the empty sum."""
        return max(self.lengths, default=0)

    def parity_part(self, eps: int) -> "ChainSum":
        """The chains of length parity eps (0 even, 1 odd)."""
        return ChainSum(d for d in self.lengths if d & 1 == eps)

    def is_pure(self, eps: int) -> bool:
        return all(d & 1 == eps for d in self.lengths)

    def __str__(self) -> str:
        if not self.lengths:
            return "0"
        return " + ".join(f"L{d}" for d in sorted(self.lengths))

    def __repr__(self) -> str:
        return f"ChainSum({str(self)!r})"


CHAIN_ZERO = ChainSum()


def mul_chain(e: int, d: int) -> ChainSum:
    """Product of two single chains: the shorter one iff lengths agree mod 2."""
    if e < 1 or d < 1:
        raise ValueError("chain lengths must be >= 1")
    if (e ^ d) & 1:
        return CHAIN_ZERO
    return ChainSum([min(e, d)])


def mul_chain_cycle(e: int, d: int) -> ChainSum:
    """Chain times cycle: d copies of the chain, i.e. kept iff d is odd."""
    if e < 1 or d < 1:
        raise ValueError("lengths must be >= 1")
    return ChainSum([e]) if d & 1 else CHAIN_ZERO


def to_orthogonal(a: ChainSum, eps: int) -> frozenset[int]:
    """Coordinates of a pure-parity chain sum in the orthogonal basis.

    Index i carries the parity of the number of chains of length >= i.
    """
    if not a.is_pure(eps):
        raise ValueError(f"chain sum {a} is not purely of parity {eps}")
    out = set()
    for d in a.lengths:
        base = 2 - eps
        out ^= set(range(base, d + 1, 2))
    return frozenset(out)


def from_orthogonal(indices: Iterable[int], eps: int) -> ChainSum:
    """Inverse of ``to_orthogonal``: chain length j appears iff exactly one
    of the coordinates j, j + 2 is set."""
    idx = frozenset(indices)
    for i in idx:
        if i < 1 or i & 1 != eps & 1:
            raise ValueError(f"coordinate {i} does not have parity {eps}")
    base = 2 - (eps & 1)
    out = set()
    for j in range(base, max(idx, default=0) + 1, 2):
        if (j in idx) != (j + 2 in idx):
            out.add(j)
    return ChainSum(out)


def height(a: ChainSum) -> int:
    return a.height


def restrict_below(a: ChainSum, h: int, eps: int) -> ChainSum:
    """Drop the orthogonal coordinates above h."""
    return from_orthogonal(
        (i for i in to_orthogonal(a, eps) if i <= h), eps
    )


def tail_above(a: ChainSum, h: int, eps: int) -> ChainSum:
    return from_orthogonal(
        (i for i in to_orthogonal(a, eps) if i > h), eps
    )


class Element:
    """A sum of chains and cycles mod 2."""

    __slots__ = ("chains", "cycles")

    def __init__(self, chains: ChainSum = CHAIN_ZERO, cycles: CycleSum = CycleSum.zero()):
        self.chains = chains
        self.cycles = cycles

    @classmethod
    def zero(cls) -> "Element":
        return cls()

    @classmethod
    def one(cls) -> "Element":
        return cls(cycles=CycleSum.one())

    @classmethod
    def from_cycles(cls, cycles: CycleSum) -> "Element":
        return cls(cycles=cycles)

    @classmethod
    def from_chains(cls, chains: ChainSum) -> "Element":
        return cls(chains=chains)

    def __bool__(self) -> bool:
        return bool(self.chains) or bool(self.cycles)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Element)
            and self.chains == other.chains
            and self.cycles == other.cycles
        )

    def __hash__(self) -> int:
        return hash(("Element", self.chains, self.cycles))

    def __add__(self, other: "Element") -> "Element":
        return Element(self.chains + other.chains, self.cycles + other.cycles)

    def __mul__(self, other: "Element") -> "Element":
        # chains see cycles only through the parity of odd-length cycles
        ta = self.cycles.odd_part.parity
        tb = other.cycles.odd_part.parity
        chains = self.chains * other.chains
        if tb:
            chains = chains + self.chains
        if ta:
            chains = chains + other.chains
        return Element(chains, self.cycles * other.cycles)

    def __pow__(self, n: int) -> "Element":
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = Element.one()
        for _ in range(n):
            out = out * self
        return out

    def __str__(self) -> str:
        parts = []
        if self.cycles:
            parts.append(str(self.cycles))
        if self.chains:
            parts.append(str(self.chains))
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"Element({str(self)!r})"


def odd_cycle_parity(x: CycleSum) -> int:
    """Parity of the number of odd-length cycles: how x scales any chain."""
    return x.odd_part.parity


@dataclass(frozen=True)
class ChainDivision:
    """Solutions of a*x = c within one chain parity class.

    kind "all" means every pure chain sum of the class solves; "empty"
    means none does; "interval" means the truncation of x at the cutoff
    ranges over [lo, hi] in the cutoff algebra, with the coordinates above
    the cutoff free when ``free_tail`` and forced zero otherwise.
    """

    parity: int
    cutoff: int
    kind: str  # "all" | "empty" | "interval"
    lo: Optional[ChainSum] = None
    hi: Optional[ChainSum] = None
    free_tail: bool = True

    @property
    def nonempty(self) -> bool:
        return self.kind != "empty"

    def contains(self, x: ChainSum) -> bool:
        if not x.is_pure(self.parity):
            return False
        if self.kind == "all":
            return True
        if self.kind == "empty":
            return False
        zx = to_orthogonal(x, self.parity)
        head = frozenset(i for i in zx if i <= self.cutoff)
        if not self.free_tail and head != zx:
            return False
        zlo = to_orthogonal(self.lo, self.parity)
        zhi = to_orthogonal(self.hi, self.parity)
        return zlo <= head and head <= zhi

    def members(self, max_height: int) -> Iterator[ChainSum]:
        """All solutions of height at most max_height, deterministically."""
        if self.kind == "empty":
            return
        base = 2 - self.parity
        if self.kind == "all":
            coords = [i for i in range(base, max_height + 1, 2)]
            for bits in range(1 << len(coords)):
                yield from_orthogonal(
                    [coords[t] for t in range(len(coords)) if bits >> t & 1],
                    self.parity,
                )
            return
        zlo = to_orthogonal(self.lo, self.parity)
        zhi = to_orthogonal(self.hi, self.parity)
        if not zlo <= zhi:
            return
        free = sorted(zhi - zlo)
        tail: list[int] = []
        if self.free_tail:
            tail = [
                i for i in range(self.cutoff + 1, max_height + 1) if i % 2 == base % 2
            ]
        for bits in range(1 << len(free)):
            head = set(zlo)
            head.update(free[t] for t in range(len(free)) if bits >> t & 1)
            for tbits in range(1 << len(tail)):
                coords = set(head)
                coords.update(
                    tail[t] for t in range(len(tail)) if tbits >> t & 1
                )
                x = from_orthogonal(coords, self.parity)
                if x.height <= max_height:
                    yield x


def divide_chains(a: ChainSum, b: ChainSum, eps: int) -> ChainDivision:
    """Solve a*x = b within the parity-eps chain class (a nonzero).

    The truncation of any solution at the divisor's height ranges over
    [b, b + a + L_h]; everything above the height is free.
    """
    if not a:
        raise ValueError("divisor must be nonzero; use divide_full for 0")
    if not (a.is_pure(eps) and b.is_pure(eps)):
        raise ValueError(f"operands must be purely of parity {eps}")
    h = a.height
    if b.height > h:
        return ChainDivision(parity=eps, cutoff=h, kind="empty")
    hi = b + a + ChainSum([h])
    division = ChainDivision(
        parity=eps, cutoff=h, kind="interval", lo=b, hi=hi, free_tail=True
    )
    zlo = to_orthogonal(b, eps)
    zhi = to_orthogonal(hi, eps)
    if not zlo <= zhi:
        return ChainDivision(parity=eps, cutoff=h, kind="empty")
    return division


def _chain_branch(
    a_eps: ChainSum, b_eps: ChainSum, eps: int, t: int, cycle_scale: int
) -> ChainDivision:
    """Chain constraint of the combined equation for one parity class.

    ``cycle_scale`` is the parity with which the divisor's cycle part acts
    on chains; when it is 0 the equation is a pure chain division of
    b + t*a by a, otherwise x appears on both sides and is forced below
    the cutoff.
    """
    target = b_eps + a_eps if t else b_eps
    if cycle_scale == 0:
        if not a_eps:
            kind = "empty" if target else "all"
            return ChainDivision(parity=eps, cutoff=0, kind=kind)
        d = divide_chains(a_eps, target, eps)
        return d
    h = max(a_eps.height, b_eps.height)
    lo = target
    hi = target + a_eps
    zlo = to_orthogonal(lo, eps)
    zhi = to_orthogonal(hi, eps)
    if not zlo <= zhi:
        return ChainDivision(parity=eps, cutoff=h, kind="empty")
    return ChainDivision(
        parity=eps, cutoff=h, kind="interval", lo=lo, hi=hi, free_tail=False
    )


@dataclass(frozen=True)
class CycleBranch:
    """Cycle-part constraint of the combined equation for one parity t."""

    t: int
    free: bool
    sol: Optional[IntervalSolutionSet]
    nonempty: bool

    def contains(self, xc: CycleSum) -> bool:
        if odd_cycle_parity(xc) != self.t:
            return False
        if self.free:
            return True
        return self.sol is not None and membership(self.sol, xc)


@dataclass(frozen=True)
class BranchSolution:
    t: int
    cycle: CycleBranch
    chains: tuple[ChainDivision, ChainDivision]  # index = parity class

    @property
    def nonempty(self) -> bool:
        return self.cycle.nonempty and all(c.nonempty for c in self.chains)

    def contains(self, x: "Element") -> bool:
        return (
            self.cycle.contains(x.cycles)
            and self.chains[0].contains(x.chains.parity_part(0))
            and self.chains[1].contains(x.chains.parity_part(1))
        )


@dataclass(frozen=True)
class CombinedSolutionSet:
    """Solutions of a*x = b over sums of chains and cycles.

    Split by the parity t of the count of odd-length cycles in x: each
    branch couples a cycle-part constraint with one chain interval per
    parity class.
    """

    a: "Element"
    b: "Element"
    branches: tuple[BranchSolution, BranchSolution]

    @property
    def solvable(self) -> bool:
        return any(br.nonempty for br in self.branches)

    def contains(self, x: "Element") -> bool:
        return self.branches[odd_cycle_parity(x.cycles)].contains(x)


def divide_full(a: Element, b: Element) -> CombinedSolutionSet:
    """Characterise all x with a*x = b over sums of chains and cycles."""
    ac, bc = a.cycles, b.cycles
    scale = odd_cycle_parity(ac)
    branches = []
    for t in (0, 1):
        if not ac:
            free = not bc
            cycle = CycleBranch(t=t, free=free, sol=None, nonempty=free)
        else:
            sol = solve(ac, bc)
            nonempty = sol.solvable and interval_has_parity(
                sol.lambda0, sol.upsilon0, t
            )
            cycle = CycleBranch(t=t, free=False, sol=sol, nonempty=nonempty)
        chains = tuple(
            _chain_branch(
                a.chains.parity_part(eps), b.chains.parity_part(eps), eps, t, scale
            )
            for eps in (0, 1)
        )
        branches.append(BranchSolution(t=t, cycle=cycle, chains=chains))
    return CombinedSolutionSet(a=a, b=b, branches=tuple(branches))


def _restricted_cycle_members(
    branch: CycleBranch, k: int, max_level: int
) -> Iterator[CycleSum]:
    lat = divisor_lattice(k)
    divisors = lat.elements
    if branch.free:
        all_sets = [
            OddSet(d for t, d in enumerate(divisors) if bits >> t & 1)
            for bits in range(1 << len(divisors))
        ]

        def emit_free(level: int, acc: dict[int, OddSet]) -> Iterator[CycleSum]:
            if level > max_level:
                x = CycleSum(acc)
                if odd_cycle_parity(x) == branch.t:
                    yield x
                return
            for choice in all_sets:
                if choice:
                    acc[level] = choice
                yield from emit_free(level + 1, acc)
                acc.pop(level, None)

        yield from emit_free(0, {})
        return

    sol = branch.sol
    if sol is None or not sol.solvable:
        return
    # levels above the window are forced to zero; possible only when their
    # lower endpoints vanish
    for i in range(max_level + 1, sol.n + 1):
        lo, _ = sol.level_interval(i)
        if lo:
            return
    level0 = level0_parity_members(sol, k, branch.t)
    upper: list[list[OddSet]] = []
    for i in range(1, max_level + 1):
        lo, hi = sol.level_interval(i)
        iv = Interval(oddset_to_bool(lat, lo), oddset_to_bool(lat, hi))
        upper.append([bool_to_oddset(m) for m in iv.members()])

    def emit(level: int, acc: dict[int, OddSet]) -> Iterator[CycleSum]:
        if level > max_level:
            yield CycleSum(acc)
            return
        pool = level0 if level == 0 else upper[level - 1]
        for choice in pool:
            if choice:
                acc[level] = choice
            yield from emit(level + 1, acc)
            acc.pop(level, None)

    yield from emit(0, {})


def divide_full_restricted(
    a: Element,
    b: Element,
    k: int,
    max_level: Optional[int] = None,
    max_height: Optional[int] = None,
) -> Iterator[Element]:
    """All solutions within a finite window: cycle odd parts dividing k,
    cycle levels at most max_level, chain lengths at most max_height.

    Complete for that window; every emitted element is verified by
    multiplication before being yielded.
    """
    if k < 1 or k % 2 == 0:
        raise ValueError(f"odd k required, got {k}")
    ka = a.cycles.stats()[0]
    kb = b.cycles.stats()[0]
    if k % lcm(ka, kb) != 0:
        raise ValueError(
            f"k={k} must be a multiple of lcm({ka}, {kb}); "
            "restriction would be unsound"
        )
    sols = divide_full(a, b)
    if max_level is None:
        max_level = max(a.cycles.max_level, b.cycles.max_level)
    if max_height is None:
        max_height = max(
            (br.cutoff for branch in sols.branches for br in branch.chains),
            default=0,
        )
    for branch in sols.branches:
        if not branch.nonempty:
            continue
        even_members = list(branch.chains[0].members(max_height))
        odd_members = list(branch.chains[1].members(max_height))
        if not even_members or not odd_members:
            continue
        for xc in _restricted_cycle_members(branch.cycle, k, max_level):
            for xe in even_members:
                for xo in odd_members:
                    x = Element(chains=xe + xo, cycles=xc)
                    if a * x != b:
                        raise RuntimeError(
                            f"internal error: candidate {x} fails verification"
                        )
                    yield x


def element_product_rule() -> ProductRule:
    """Product of single chains/cycles as a rule over tagged generators."""
    from .cycles import mul_cycles

    def pair(g: tuple[str, int], h: tuple[str, int]) -> FormalSum:
        (gk, gn), (hk, hn) = g, h
        if gk == "C" and hk == "C":
            return FormalSum(("C", q) for q in mul_cycles(gn, hn).lengths())
        if gk == "L" and hk == "L":
            return FormalSum(("L", d) for d in mul_chain(gn, hn).lengths)
        if gk == "L":
            return FormalSum(("L", d) for d in mul_chain_cycle(gn, hn).lengths)
        return FormalSum(("L", d) for d in mul_chain_cycle(hn, gn).lengths)

    return ProductRule(pair_product=pair, identity=("C", 1))


def element_to_formal(x: Element) -> FormalSum:
    gens = [("C", q) for q in x.cycles.lengths()]
    gens.extend(("L", d) for d in x.chains.lengths)
    return FormalSum(gens)


def formal_to_element(s: FormalSum) -> Element:
    cycles = []
    chains = []
    for kind, n in s.support:
        if kind == "C":
            cycles.append(n)
        elif kind == "L":
            chains.append(n)
        else:
            raise ValueError(f"unknown generator kind {kind!r}")
    return Element(
        chains=ChainSum(chains), cycles=CycleSum.from_lengths(cycles)
    )
