"""Ground-truth computations on explicit functional digraphs.

Everything here counts with natural-number multiplicities and reduces to
parity only at the very end, staying independent of the closed-form mod-2
arithmetic it is used to cross-check.  Products are built vertex by
vertex, components are classified by walking the explicit graph, and the
bounded equation search scans every candidate in a finite window.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .chains import ChainSum, Element
from .cycles import CycleSum


@dataclass(frozen=True)
class Digraph:
    """A partial transformation: out-degree at most one, as a succ table."""

    n: int
    succ: tuple[Optional[int], ...]

    def __post_init__(self):
        if len(self.succ) != self.n:
            raise ValueError("successor table length differs from vertex count")
        for v in self.succ:
            if v is not None and not (0 <= v < self.n):
                raise ValueError(f"successor {v} out of range")

    @classmethod
    def cycle(cls, d: int) -> "Digraph":
        if d < 1:
            raise ValueError("cycle length must be >= 1")
        return cls(d, tuple((i + 1) % d for i in range(d)))

    @classmethod
    def chain(cls, d: int) -> "Digraph":
        if d < 1:
            raise ValueError("chain length must be >= 1")
        return cls(d, tuple(i + 1 if i + 1 < d else None for i in range(d)))

    @classmethod
    def disjoint_union(cls, parts: Iterable["Digraph"]) -> "Digraph":
        succ: list[Optional[int]] = []
        for g in parts:
            base = len(succ)
            succ.extend(None if v is None else v + base for v in g.succ)
        return cls(len(succ), tuple(succ))

    @classmethod
    def empty(cls) -> "Digraph":
        return cls(0, ())


def product(g: Digraph, h: Digraph) -> Digraph:
    """Direct product: arcs exist where both factors have one."""
    n = g.n * h.n
    succ: list[Optional[int]] = [None] * n
    for u in range(g.n):
        gu = g.succ[u]
        if gu is None:
            continue
        row = u * h.n
        grow = gu * h.n
        for v in range(h.n):
            hv = h.succ[v]
            if hv is not None:
                succ[row + v] = grow + hv
    return Digraph(n, tuple(succ))


class ComponentMultiset:
    """Cycle and chain components with natural-number multiplicities."""

    __slots__ = ("cycles", "chains")

    def __init__(
        self,
        cycles: Optional[dict[int, int]] = None,
        chains: Optional[dict[int, int]] = None,
    ):
        self.cycles = {d: m for d, m in (cycles or {}).items() if m}
        self.chains = {d: m for d, m in (chains or {}).items() if m}
        for d in (*self.cycles, *self.chains):
            if d < 1:
                raise ValueError(f"component length must be >= 1, got {d}")

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ComponentMultiset)
            and self.cycles == other.cycles
            and self.chains == other.chains
        )

    def __hash__(self) -> int:
        return hash(
            (
                "ComponentMultiset",
                tuple(sorted(self.cycles.items())),
                tuple(sorted(self.chains.items())),
            )
        )

    def __add__(self, other: "ComponentMultiset") -> "ComponentMultiset":
        cycles = dict(self.cycles)
        for d, m in other.cycles.items():
            cycles[d] = cycles.get(d, 0) + m
        chains = dict(self.chains)
        for d, m in other.chains.items():
            chains[d] = chains.get(d, 0) + m
        return ComponentMultiset(cycles, chains)

    def scaled(self, m: int) -> "ComponentMultiset":
        return ComponentMultiset(
            {d: c * m for d, c in self.cycles.items()},
            {d: c * m for d, c in self.chains.items()},
        )

    @classmethod
    def from_element(cls, x: Element) -> "ComponentMultiset":
        return cls(
            {q: 1 for q in x.cycles.lengths()},
            {d: 1 for d in x.chains.lengths},
        )

    def __str__(self) -> str:
        parts = [
            (f"{m}" if m != 1 else "") + f"C{d}"
            for d, m in sorted(self.cycles.items())
        ]
        parts += [
            (f"{m}" if m != 1 else "") + f"L{d}"
            for d, m in sorted(self.chains.items())
        ]
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"ComponentMultiset({str(self)!r})"


def digraph_from_components(cm: ComponentMultiset) -> Digraph:
    parts = []
    for d, m in sorted(cm.cycles.items()):
        parts.extend(Digraph.cycle(d) for _ in range(m))
    for d, m in sorted(cm.chains.items()):
        parts.extend(Digraph.chain(d) for _ in range(m))
    return Digraph.disjoint_union(parts)


def digraph_from_element(x: Element) -> Digraph:
    return digraph_from_components(ComponentMultiset.from_element(x))


def weak_components(g: Digraph) -> list[list[int]]:
    """Vertex classes under the undirected reachability of arcs."""
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in enumerate(g.succ):
        if v is None:
            continue
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    groups: dict[int, list[int]] = {}
    for u in range(g.n):
        groups.setdefault(find(u), []).append(u)
    return list(groups.values())


def decompose(g: Digraph) -> ComponentMultiset:
    """Classify each weak component of an injective graph as cycle or chain.

    Raises if some vertex has in-degree two or more, naming it.
    """
    indeg = [0] * g.n
    for u, v in enumerate(g.succ):
        if v is not None:
            indeg[v] += 1
            if indeg[v] > 1:
                raise ValueError(
                    f"not injective: vertex {v} has in-degree >= 2"
                )
    cycles: dict[int, int] = {}
    chains: dict[int, int] = {}
    for comp in weak_components(g):
        size = len(comp)
        arcs = sum(1 for u in comp if g.succ[u] is not None)
        if arcs == size:
            cycles[size] = cycles.get(size, 0) + 1
        else:
            # a weakly connected out-degree<=1, in-degree<=1 graph with
            # size-1 arcs is a path
            chains[size] = chains.get(size, 0) + 1
    return ComponentMultiset(cycles, chains)


def _tree_key(root: int, children: dict[int, list[int]]) -> tuple:
    return tuple(
        sorted(_tree_key(c, children) for c in children.get(root, []))
    )


def component_keys(g: Digraph) -> dict[tuple, int]:
    """Canonical isomorphism keys of the weak components, with counts.

    Works for arbitrary partial transformations: a component either ends
    in a terminal vertex (encoded as a rooted in-tree) or closes a cycle
    (encoded as the rotation-minimal tuple of the trees hanging off it).
    """
    keys: dict[tuple, int] = {}
    for comp in weak_components(g):
        members = set(comp)
        # locate the cycle, if any, by walking until repetition
        seen: dict[int, int] = {}
        u = comp[0]
        path = []
        while u is not None and u not in seen:
            seen[u] = len(path)
            path.append(u)
            u = g.succ[u]
        if u is None:
            cycle_set: set[int] = set()
            root = path[-1]
        else:
            cycle = path[seen[u]:]
            cycle_set = set(cycle)
        children: dict[int, list[int]] = {}
        for v in members:
            w = g.succ[v]
            if w is not None and v not in cycle_set:
                children.setdefault(w, []).append(v)
        if not cycle_set:
            key = ("tree", _tree_key(root, children))
        else:
            hung = [_tree_key(c, children) for c in cycle]
            rotations = [
                tuple(hung[i:] + hung[:i]) for i in range(len(hung))
            ]
            key = ("cycle", len(cycle), min(rotations))
        keys[key] = keys.get(key, 0) + 1
    return keys


def closed_form_product(
    a: ComponentMultiset, b: ComponentMultiset
) -> ComponentMultiset:
    """Bilinear expansion of the three single-component product formulas."""
    out = ComponentMultiset()
    for d, md in a.cycles.items():
        for e, me in b.cycles.items():
            out = out + _pair_cc(d, e).scaled(md * me)
        for e, me in b.chains.items():
            out = out + _pair_lc(e, d).scaled(md * me)
    for d, md in a.chains.items():
        for e, me in b.cycles.items():
            out = out + _pair_lc(d, e).scaled(md * me)
        for e, me in b.chains.items():
            out = out + _pair_ll(d, e).scaled(md * me)
    return out


@lru_cache(maxsize=None)
def _pair_cc(d: int, e: int) -> ComponentMultiset:
    from math import gcd, lcm

    return ComponentMultiset({lcm(d, e): gcd(d, e)}, {})


@lru_cache(maxsize=None)
def _pair_lc(e: int, d: int) -> ComponentMultiset:
    # chain of length e times cycle of length d: d copies of the chain
    return ComponentMultiset({}, {e: d})


@lru_cache(maxsize=None)
def _pair_ll(d: int, e: int) -> ComponentMultiset:
    m = min(d, e)
    chains = {m: abs(d - e) + 1}
    for i in range(1, m):
        chains[i] = chains.get(i, 0) + 2
    return ComponentMultiset({}, chains)


def mod2(a: ComponentMultiset) -> Element:
    """Keep the components of odd multiplicity."""
    cycles = CycleSum.from_lengths(
        q for q, m in a.cycles.items() for _ in range(m % 2)
    )
    chains = ChainSum(d for d, m in a.chains.items() if m % 2)
    return Element(chains=chains, cycles=cycles)


def oracle_mul(a: Element, b: Element) -> Element:
    """Product via natural-number formulas, reduced mod 2 at the end."""
    return mod2(
        closed_form_product(
            ComponentMultiset.from_element(a), ComponentMultiset.from_element(b)
        )
    )


@dataclass(frozen=True)
class SearchSpace:
    """Finite candidate window: chain lengths up to max_chain, cycle odd
    parts dividing k, cycle levels up to max_level."""

    k: int = 1
    max_level: int = 0
    max_chain: int = 0

    def generators(self) -> tuple[tuple[str, int], ...]:
        if self.k < 1 or self.k % 2 == 0:
            raise ValueError(f"odd k required, got {self.k}")
        odd = [q for q in range(1, self.k + 1) if self.k % q == 0]
        gens = [("C", q << i) for q in odd for i in range(self.max_level + 1)]
        gens.extend(("L", d) for d in range(1, self.max_chain + 1))
        return tuple(gens)

    def size(self) -> int:
        return 1 << len(self.generators())


def _element_from_gens(gens: Iterable[tuple[str, int]]) -> Element:
    cycles = []
    chains = []
    for kind, n in gens:
        (cycles if kind == "C" else chains).append(n)
    return Element(
        chains=ChainSum(chains), cycles=CycleSum.from_lengths(cycles)
    )


def element_gens(x: Element) -> list[tuple[str, int]]:
    gens: list[tuple[str, int]] = [("C", q) for q in x.cycles.lengths()]
    gens.extend(("L", d) for d in sorted(x.chains.lengths))
    return gens


class _SpaceTables:
    """Per-window product tables for the brute-force search.

    The window's generator set is closed under the oracle product, so
    every product of a generator with a candidate is encoded as a bitmask
    over the generators; the 2**n masks for one generator are packed into
    a single wide integer (one fixed-width lane per candidate), making a
    full divisor row one XOR.  Rows are built lazily, one per generator
    actually dividing, and memoised.
    """

    def __init__(self, space: SearchSpace):
        gens = space.generators()
        self.gens = gens
        n = len(gens)
        self.index = {g: t for t, g in enumerate(gens)}
        self.lane = ((n + 7) // 8) * 8 if n else 8
        self.count = 1 << n
        self._pair = [[0] * n for _ in range(n)]
        for t, g in enumerate(gens):
            ge = _element_from_gens([g])
            for u, h in enumerate(gens):
                prod = oracle_mul(ge, _element_from_gens([h]))
                self._pair[t][u] = self._mask_of(prod)
        self._rows: dict[int, int] = {}

    def row(self, t: int) -> int:
        cached = self._rows.get(t)
        if cached is not None:
            return cached
        lane_bytes = self.lane // 8
        row = [0] * self.count
        pt = self._pair[t]
        for x_mask in range(1, self.count):
            low = x_mask & -x_mask
            row[x_mask] = row[x_mask ^ low] ^ pt[low.bit_length() - 1]
        packed = int.from_bytes(
            b"".join(v.to_bytes(lane_bytes, "little") for v in row), "little"
        )
        self._rows[t] = packed
        return packed

    def _mask_of(self, x: Element) -> int:
        mask = 0
        for g in element_gens(x):
            mask |= 1 << self.index[g]
        return mask

    def try_mask(self, x: Element) -> Optional[int]:
        try:
            return self._mask_of(x)
        except KeyError:
            return None

    def element_of(self, mask: int) -> Element:
        return _element_from_gens(
            self.gens[t] for t in range(len(self.gens)) if mask >> t & 1
        )


@lru_cache(maxsize=8)
def _space_tables(space: SearchSpace) -> _SpaceTables:
    return _SpaceTables(space)


def exhaustive_divide(
    a: Element, b: Element, space: SearchSpace
) -> frozenset[Element]:
    """All x in the window with a*x = b, by brute force over every candidate.

    Products come from the natural-number component formulas reduced mod 2
    (never the level shortcut); the divisor must live inside the window.
    """
    if space.size() > 1 << 24:
        raise ValueError(
            f"search space of {space.size()} candidates is too large"
        )
    tables = _space_tables(space)
    a_mask = tables.try_mask(a)
    if a_mask is None:
        raise ValueError("divisor has a component outside the window")
    b_mask = tables.try_mask(b)
    if b_mask is None:
        # products of window elements stay inside the window
        return frozenset()
    acc = 0
    rest = a_mask
    while rest:
        t = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        acc ^= tables.row(t)
    out = []
    lane = tables.lane
    lane_mask = (1 << lane) - 1
    for x_mask in range(tables.count):
        if (acc >> (x_mask * lane)) & lane_mask == b_mask:
            out.append(tables.element_of(x_mask))
    return frozenset(out)
