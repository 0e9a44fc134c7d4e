"""Homomorphism counts, the independent-partition lattice and the Moebius bridge."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterator, Sequence

from .graph import SimpleGraph


class CountBudgetExceeded(RuntimeError):
    pass


class PartitionError(ValueError):
    pass


DEFAULT_BUDGET = 50_000_000


@dataclass(frozen=True)
class SetPartition:
    """Blocks are sorted tuples, ordered by their least element."""

    blocks: tuple

    @classmethod
    def of(cls, blocks: Sequence[Sequence[int]]) -> SetPartition:
        bs = tuple(sorted(tuple(sorted(b)) for b in blocks if len(b)))
        seen = [v for b in bs for v in b]
        if len(seen) != len(set(seen)):
            raise PartitionError("blocks overlap")
        return cls(bs)

    @classmethod
    def discrete(cls, n: int) -> SetPartition:
        return cls(tuple((v,) for v in range(n)))

    @property
    def size(self) -> int:
        return sum(len(b) for b in self.blocks)

    def __len__(self):
        return len(self.blocks)

    def weight(self) -> int:
        return partition_weight(self)

    def block_of(self) -> dict[int, int]:
        return {v: i for i, b in enumerate(self.blocks) for v in b}

    def refines(self, other: SetPartition) -> bool:
        where = other.block_of()
        return all(len({where[v] for v in b}) == 1 for b in self.blocks)

    def is_independent(self, g: SimpleGraph) -> bool:
        where = self.block_of()
        return all(where[u] != where[v] for u, v in g.edges)


def partition_weight(p: SetPartition) -> int:
    """prod over blocks of (|block| - 1)!."""
    out = 1
    for b in p.blocks:
        out *= factorial(len(b) - 1)
    return out


def mobius(finer: SetPartition, coarser: SetPartition) -> int:
    """Moebius function of the partition lattice: (-1)^(r+s) prod (a_i - 1)!.

    r = blocks of ``coarser``, a_i = blocks of ``finer`` inside its i-th block.
    Zero when ``finer`` does not refine ``coarser``.
    """
    if not finer.refines(coarser):
        return 0
    where = coarser.block_of()
    counts = [0] * len(coarser)
    for b in finer.blocks:
        counts[where[b[0]]] += 1
    r, s = len(coarser), len(finer)
    out = (-1) ** (r + s)
    for a in counts:
        out *= factorial(a - 1)
    return out


# ---------------------------------------------------------------------------
# counting maps

def _search_order(h: SimpleGraph, vertices: Sequence[int]) -> list[int]:
    """BFS from a max-degree vertex of each component, so placed vertices have placed neighbours."""
    order = []
    seen = set()
    remaining = set(vertices)
    while remaining:
        start = max(sorted(remaining), key=h.degree)
        queue = deque([start])
        seen.add(start)
        while queue:
            u = queue.popleft()
            order.append(u)
            remaining.discard(u)
            for w in sorted(h.neighbors[u], key=lambda x: -h.degree(x)):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def spend(self, k=1):
        self.used += k
        if self.limit is not None and self.used > self.limit:
            raise CountBudgetExceeded(f"search exceeded {self.limit} nodes")


def _count_maps(h: SimpleGraph, g: SimpleGraph, vertices: Sequence[int], injective: bool,
                budget: _Budget) -> int:
    order = _search_order(h, vertices)
    if not order:
        return 1
    pos = {v: i for i, v in enumerate(order)}
    back = [[pos[w] for w in h.neighbors[v] if w in pos and pos[w] < i] for i, v in enumerate(order)]
    gadj = g.adjacency
    full = (1 << g.n) - 1
    image = [0] * len(order)
    last = len(order) - 1

    def rec(i: int, used: int) -> int:
        cand = full
        for j in back[i]:
            cand &= gadj[image[j]]
        if injective:
            cand &= ~used
        if i == last:
            budget.spend()
            return cand.bit_count()
        total = 0
        while cand:
            low = cand & -cand
            cand ^= low
            budget.spend()
            image[i] = low.bit_length() - 1
            total += rec(i + 1, used | low)
        return total

    return rec(0, 0)


@lru_cache(maxsize=500_000)
def _hom_connected(h: SimpleGraph, g: SimpleGraph, limit) -> int:
    return _count_maps(h, g, range(h.n), False, _Budget(limit))


def hom_count(h: SimpleGraph, g: SimpleGraph, budget: int | None = DEFAULT_BUDGET) -> int:
    """Number of edge-preserving maps V(h) -> V(g); multiplicative over components of h."""
    out = 1
    for comp in h.components:
        if len(comp) == 1:
            out *= g.n
        else:
            out *= _hom_connected(h.induced(comp), g, budget)
        if out == 0:
            return 0
    return out


def inj_count(h: SimpleGraph, g: SimpleGraph, budget: int | None = DEFAULT_BUDGET) -> int:
    """Number of injective edge-preserving maps V(h) -> V(g)."""
    if h.n > g.n:
        return 0
    return _count_maps(h, g, range(h.n), True, _Budget(budget))


# ---------------------------------------------------------------------------
# the lattice P(G)

def independent_partitions(g: SimpleGraph, cap: int = 14) -> Iterator[SetPartition]:
    """Partitions of V(g) into independent blocks, in restricted-growth order.

    Vertex i joins an existing block only when it has no neighbour there,
    so partitions with an internal edge are pruned as soon as they appear.
    """
    if g.n > cap:
        raise PartitionError(f"{g.n} vertices exceeds the partition cap {cap}")
    adj = g.adjacency
    n = g.n
    masks: list[int] = []
    members: list[list[int]] = []

    def rec(v):
        if v == n:
            yield SetPartition(tuple(tuple(b) for b in members))
            return
        bit = 1 << v
        for i in range(len(masks)):
            if not adj[v] & masks[i]:
                masks[i] |= bit
                members[i].append(v)
                yield from rec(v + 1)
                members[i].pop()
                masks[i] ^= bit
        masks.append(bit)
        members.append([v])
        yield from rec(v + 1)
        masks.pop()
        members.pop()

    yield from rec(0)


def quotient(g: SimpleGraph, p: SetPartition) -> SimpleGraph:
    """Contract each block; block i becomes vertex i. Blocks must be independent."""
    if p.size != g.n:
        raise PartitionError("partition does not cover the vertex set")
    where = p.block_of()
    edges = set()
    for u, v in g.edges:
        a, b = where[u], where[v]
        if a == b:
            raise PartitionError(f"edge ({u}, {v}) lies inside a block")
        edges.add((a, b) if a < b else (b, a))
    return SimpleGraph(len(p), frozenset(edges))


def inj_from_hom_mobius(g: SimpleGraph, h: SimpleGraph, cap: int = 12) -> int:
    """inj(g, h) = sum over P in P(g) of (-1)^(|V(g)| + |P|) ||P|| hom(g/P, h)."""
    if g.n > cap:
        raise PartitionError(f"{g.n} vertices exceeds cap {cap}")
    total = 0
    for p in independent_partitions(g, cap):
        sign = -1 if (g.n + len(p)) % 2 else 1
        total += sign * partition_weight(p) * hom_count(quotient(g, p), h)
    return total


def hom_from_inj(g: SimpleGraph, h: SimpleGraph, finer: SetPartition | None = None, cap: int = 12) -> int:
    """hom(g/P', h) as the sum of inj(g/P, h) over P in P(g) coarsening P'.

    Coarsenings of P' inside P(g) are exactly the independent partitions of g/P'.
    """
    if g.n > cap:
        raise PartitionError(f"{g.n} vertices exceeds cap {cap}")
    base = g if finer is None else quotient(g, finer)
    return sum(inj_count(quotient(base, q), h) for q in independent_partitions(base, cap))
