"""Complete solution theory for a*x = b over cycle sums mod 2.

The solution set is a product of order intervals in the idempotent
lattice, one per dyadic level: a level-0 interval obtained by folding the
per-level constraints, an explicit interval per level up to the horizon,
and a uniform tail bound above it.  Solvability, membership, the minimal
solution and a complete restricted enumeration all read off that data.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Iterator

from .cycles import CycleSum, ODD_ONE, ODD_ZERO, OddSet
from .lattice import BoolElem, Interval, divisor_lattice, interval_parity_split


@dataclass(frozen=True)
class IntervalSolutionSet:
    """All solutions of a*x = b, as per-level intervals.

    Level 0 of any solution lies in [lambda0, upsilon0]; level i with
    1 <= i <= n lies in head[i-1]; every level above n is bounded above by
    tail_hi (and below by 0).  The set is nonempty iff ``solvable``.
    """

    a: CycleSum
    b: CycleSum
    solvable: bool
    lambda0: OddSet
    upsilon0: OddSet
    head: tuple[tuple[OddSet, OddSet], ...]
    tail_hi: OddSet
    n: int

    def level_interval(self, i: int) -> tuple[OddSet, OddSet]:
        """The (lo, hi) pair constraining level i of a solution."""
        if i == 0:
            return (self.lambda0, self.upsilon0)
        if i <= self.n:
            return self.head[i - 1]
        return (ODD_ZERO, self.tail_hi)


def solve(a: CycleSum, b: CycleSum) -> IntervalSolutionSet:
    """Characterise the solutions of a*x = b."""
    a0 = a.odd_part
    b0 = b.odd_part
    n = max(a.max_level, b.max_level)

    lam0 = ODD_ZERO
    ups0 = ODD_ONE
    for i in range(n + 1):
        ai = a.level(i)
        bi = b.level(i)
        li = bi + a0 * bi + ai * b0
        ui = li + ai + ODD_ONE
        lam0 = lam0 | li
        ups0 = ups0 * ui

    head = []
    for i in range(1, n + 1):
        lo = a0 * b.level(i) + a.level(i) * b0
        head.append((lo, lo + a0 + ODD_ONE))

    return IntervalSolutionSet(
        a=a,
        b=b,
        solvable=lam0 * ups0 == lam0,
        lambda0=lam0,
        upsilon0=ups0,
        head=tuple(head),
        tail_hi=a0 + ODD_ONE,
        n=n,
    )


def min_solution(sol: IntervalSolutionSet) -> CycleSum:
    """The solution made of lower endpoints: the canonical finite one."""
    if not sol.solvable:
        raise ValueError("equation has no solution")
    levels = {0: sol.lambda0}
    for i, (lo, _) in enumerate(sol.head, start=1):
        levels[i] = lo
    return CycleSum(levels)


def membership(sol: IntervalSolutionSet, x: CycleSum) -> bool:
    """Whether x solves the equation, checked level by level."""
    if not sol.solvable:
        return False
    checked = set()
    for i, xi in x.items():
        lo, hi = sol.level_interval(i)
        if not (lo <= xi and xi <= hi):
            return False
        checked.add(i)
    for i in range(sol.n + 1):
        if i in checked:
            continue
        lo, _ = sol.level_interval(i)
        if lo:
            return False
    return True


@dataclass(frozen=True)
class Annihilators:
    """Description of all z with a*z = 0.

    ``z`` annihilates iff its level 0 stays below ``odd_bound`` and its
    closure stays below ``closure_bound``; ``test`` evaluates exactly that.
    """

    a: CycleSum
    odd_bound: OddSet
    closure_bound: OddSet

    def test(self, z: CycleSum) -> bool:
        a_plus = self.a.plus_closure
        a0 = self.a.odd_part
        return not (z.odd_part * a_plus) and not (a0 * z.plus_closure)


def annihilators(a: CycleSum) -> Annihilators:
    """All z with a*z = 0: z0 below not(a closure), a0 below not(z closure)."""
    return Annihilators(
        a=a,
        odd_bound=a.plus_closure.complement(),
        closure_bound=a.odd_part.complement(),
    )


def oddset_to_bool(lat, e: OddSet) -> BoolElem:
    """View an idempotent with lengths dividing k inside the k-divisor algebra."""
    return BoolElem(lat, e.lengths)


def bool_to_oddset(x: BoolElem) -> OddSet:
    return OddSet(x.support())


def enumerate_restricted(
    sol: IntervalSolutionSet, k: int, n: int
) -> Iterator[CycleSum]:
    """All solutions whose odd parts divide k and whose levels stay <= n.

    Complete for that restricted space; every emitted element is verified
    against the defining equation before being yielded.  Output order is
    lexicographic in (level, atom choice inside the k-divisor algebra).
    """
    if not sol.solvable:
        return
    if k < 1 or k % 2 == 0:
        raise ValueError(f"odd k required, got {k}")
    ka, _ = sol.a.stats()
    kb, _ = sol.b.stats()
    if k % lcm(ka, kb) != 0:
        raise ValueError(
            f"k={k} must be a multiple of lcm({ka}, {kb}); "
            "restriction would be unsound"
        )
    if n < max(sol.a.max_level, sol.b.max_level):
        raise ValueError("level bound below the inputs' own levels")

    lat = divisor_lattice(k)
    per_level: list[list[OddSet]] = []
    for i in range(n + 1):
        lo, hi = sol.level_interval(i)
        iv = Interval(oddset_to_bool(lat, lo), oddset_to_bool(lat, hi))
        per_level.append([bool_to_oddset(m) for m in iv.members()])

    def emit(level: int, acc: dict[int, OddSet]) -> Iterator[CycleSum]:
        if level > n:
            x = CycleSum(acc)
            if sol.a * x != sol.b:
                raise RuntimeError(
                    f"internal error: candidate {x} fails verification"
                )
            yield x
            return
        for choice in per_level[level]:
            if choice:
                acc[level] = choice
            yield from emit(level + 1, acc)
            acc.pop(level, None)

    yield from emit(0, {})


def interval_has_parity(lo: OddSet, hi: OddSet, t: int) -> bool:
    """Whether [lo, hi] contains an element of support-size parity t.

    The interval is lo + w over w below hi*not(lo); a strict-parity
    element exists among the w's iff that bound has odd support size,
    so the reachable parities are lo's own, plus both when the bound is
    odd-sized.  Assumes the interval is nonempty.
    """
    if lo.parity == t:
        return True
    return (hi + hi * lo).parity == 1


def level0_parity_members(
    sol: IntervalSolutionSet, k: int, t: int
) -> list[OddSet]:
    """Members of the level-0 interval in the k-divisor algebra with
    support-size parity t."""
    lat = divisor_lattice(k)
    iv = Interval(
        oddset_to_bool(lat, sol.lambda0), oddset_to_bool(lat, sol.upsilon0)
    )
    if iv.is_empty:
        return []
    even, odd = interval_parity_split(iv, lat.bottom)
    part = odd if t == 1 else even
    if part.is_empty:
        return []
    return [bool_to_oddset(m) for m in part.members()]
