"""Exact chromatic polynomials.

Two independent routes: deletion-contraction memoised on canonical codes of
connected components, and the signed spanning-subgraph sum
``sum_A (-1)^|A| z^c(A)``. They share nothing but the graph type, so
agreement between them is a real check.
"""

from __future__ import annotations

import threading
from collections import deque
from itertools import product
from math import comb

from .graph import DEFAULT_SIZE_CAP, SimpleGraph, canonical_code
from .poly import IntPolynomial


class BudgetExceeded(RuntimeError):
    pass


class NotChromaticShape(ValueError):
    pass


Z = IntPolynomial([0, 1])
Z_MINUS_1 = IntPolynomial([-1, 1])

_memo: dict = {}
_memo_lock = threading.Lock()


def clear_cache():
    with _memo_lock:
        _memo.clear()


def _memo_get(key):
    with _memo_lock:
        return _memo.get(key)


def _memo_put(key, value):
    with _memo_lock:
        return _memo.setdefault(key, value)


class _Counter:
    def __init__(self, budget):
        self.budget = budget
        self.calls = 0

    def tick(self):
        self.calls += 1
        if self.budget is not None and self.calls > self.budget:
            raise BudgetExceeded(f"deletion-contraction exceeded {self.budget} expansions")


def chromatic_dc(g: SimpleGraph, budget: int | None = 2_000_000) -> IntPolynomial:
    """Chromatic polynomial by deletion-contraction.

    ``budget`` bounds the number of non-memoised expansion steps.
    """
    return _dc(g, _Counter(budget))


def _dc(g: SimpleGraph, counter: _Counter) -> IntPolynomial:
    out = IntPolynomial([1])
    isolated = 0
    for comp in g.components:
        if len(comp) == 1:
            isolated += 1
        else:
            out = out * _dc_connected(g.induced(comp), counter)
    return out * IntPolynomial.monomial(isolated)


def _dc_connected(g: SimpleGraph, counter: _Counter) -> IntPolynomial:
    n, m = g.n, g.m
    if m == n - 1:
        return tree_polynomial(n, m)
    # a pendant edge e=(v,w): G\e = (G-v) + K1 and G/e = G-v
    pendant = next((v for v in range(n) if g.degree(v) == 1), None)
    if pendant is not None:
        return Z_MINUS_1 * _dc_connected(g.remove_vertex(pendant), counter)
    if m == n * (n - 1) // 2:
        return IntPolynomial.falling(n)
    key = canonical_code(g) if n <= DEFAULT_SIZE_CAP else (n, frozenset(g.edges))
    hit = _memo_get(key)
    if hit is not None:
        return hit
    counter.tick()
    u, v = shortest_cycle_edge(g)
    res = _dc(g.delete_edge(u, v), counter) - _dc(g.contract_edge(u, v), counter)
    return _memo_put(key, res)


def shortest_cycle_edge(g: SimpleGraph) -> tuple[int, int] | None:
    """An edge lying on a shortest cycle, or None for forests."""
    best = None
    best_len = None
    nbrs = g.neighbors
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if best_len is not None and 2 * dist[u] + 1 >= best_len:
                break
            for w in nbrs[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    length = dist[u] + dist[w] + 1
                    if best_len is None or length < best_len:
                        best_len = length
                        best = (u, w) if u < w else (w, u)
    return best


def _edge_order(g: SimpleGraph) -> list[tuple[int, int]]:
    """Edges in BFS vertex order, which keeps the connectivity frontier narrow."""
    rank = {}
    for comp in g.components:
        queue = deque([comp[0]])
        seen = {comp[0]}
        while queue:
            u = queue.popleft()
            rank[u] = len(rank)
            for w in g.neighbors[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return sorted(g.edges, key=lambda e: (max(rank[e[0]], rank[e[1]]), min(rank[e[0]], rank[e[1]])))


def chromatic_expansion(g: SimpleGraph, max_edges: int = 24, method: str = "aggregate") -> IntPolynomial:
    """``sum over spanning subgraphs A of (-1)^|A| z^c(A)``.

    ``method="naive"`` walks all 2^|E| edge subsets. ``"aggregate"`` walks
    the same subsets edge by edge but merges those inducing the same
    connectivity on the not-yet-finished vertices, so each term of the sum
    is still counted exactly once.
    """
    if g.m > max_edges:
        raise BudgetExceeded(f"{g.m} edges exceeds the expansion cap of {max_edges}")
    if method == "naive":
        return _expansion_naive(g)
    if method != "aggregate":
        raise ValueError(f"unknown method {method!r}")
    return _expansion_aggregate(g)


def _expansion_naive(g: SimpleGraph) -> IntPolynomial:
    edges = g.sorted_edges()
    coeffs = [0] * (g.n + 1)
    for mask in range(1 << len(edges)):
        parent = list(range(g.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        comps = g.n
        size = 0
        for i, (u, v) in enumerate(edges):
            if mask >> i & 1:
                size += 1
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
                    comps -= 1
        coeffs[comps] += -1 if size % 2 else 1
    return IntPolynomial(coeffs)


def _normalise(labels: tuple) -> tuple:
    seen = {}
    return tuple(seen.setdefault(x, len(seen)) for x in labels)


def _expansion_aggregate(g: SimpleGraph) -> IntPolynomial:
    edges = _edge_order(g)
    last = {}
    for i, (u, v) in enumerate(edges):
        last[u] = i
        last[v] = i
    isolated = g.n - len(last)
    active: list[int] = []
    # state: block labels of the active vertices -> {closed components: signed count}
    states: dict[tuple, dict[int, int]] = {(): {0: 1}}
    for i, (u, v) in enumerate(edges):
        for x in (u, v):
            if x not in active:
                active.append(x)
                states = {lab + (max(lab, default=-1) + 1,): poly for lab, poly in states.items()}
        iu, iv = active.index(u), active.index(v)
        nxt: dict[tuple, dict[int, int]] = {}
        for lab, poly in states.items():
            _accumulate(nxt, lab, poly, 1)
            a, b = lab[iu], lab[iv]
            merged = _normalise(tuple(a if x == b else x for x in lab)) if a != b else lab
            _accumulate(nxt, merged, poly, -1)
        states = nxt
        for x in (u, v):
            if last[x] != i or x not in active:
                continue
            j = active.index(x)
            active.pop(j)
            nxt = {}
            for lab, poly in states.items():
                closes = lab.count(lab[j]) == 1
                rest = _normalise(lab[:j] + lab[j + 1:])
                _accumulate(nxt, rest, {k + closes: c for k, c in poly.items()}, 1)
            states = nxt
    coeffs = [0] * (g.n + 1)
    for poly in states.values():
        for k, c in poly.items():
            coeffs[k + isolated] += c
    return IntPolynomial(coeffs)


def _accumulate(table, key, poly, sign):
    slot = table.setdefault(key, {})
    for k, c in poly.items():
        slot[k] = slot.get(k, 0) + sign * c


def chromatic_coefficients(p: IntPolynomial) -> list[int]:
    """e_0..e_{n-1} with ch(z) = sum_k (-1)^k e_k z^(n-k)."""
    n = p.degree
    if n < 1 or p[n] != 1 or p[0] != 0:
        raise NotChromaticShape("expected a monic polynomial of degree >= 1 with zero constant term")
    return [(-1) ** k * p[n - k] for k in range(n)]


def count_colorings(g: SimpleGraph, q: int, max_states: int = 2_000_000) -> int:
    """Number of proper q-colourings, by a frontier sweep over vertex colours.

    Vertices are added in BFS order; only colours of vertices that still
    have unplaced neighbours are remembered.
    """
    if q < 0:
        raise ValueError("q must be non-negative")
    if g.n == 0:
        return 1
    order = []
    for comp in g.components:
        queue = deque([comp[0]])
        seen = {comp[0]}
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in g.neighbors[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    rank = {v: i for i, v in enumerate(order)}
    last = {v: max([rank[v]] + [rank[w] for w in g.neighbors[v]]) for v in order}
    frontier: list[int] = []
    states = {(): 1}
    for i, v in enumerate(order):
        placed = [frontier.index(w) for w in g.neighbors[v] if w in frontier]
        nxt: dict[tuple, int] = {}
        for cols, cnt in states.items():
            banned = {cols[j] for j in placed}
            for c in range(q):
                if c not in banned:
                    key = cols + (c,)
                    nxt[key] = nxt.get(key, 0) + cnt
        frontier.append(v)
        states = nxt
        drop = [j for j, w in enumerate(frontier) if last[w] <= i]
        if drop:
            keep = [j for j in range(len(frontier)) if j not in drop]
            frontier = [frontier[j] for j in keep]
            merged: dict[tuple, int] = {}
            for cols, cnt in states.items():
                key = tuple(cols[j] for j in keep)
                merged[key] = merged.get(key, 0) + cnt
            states = merged
        if len(states) > max_states:
            raise BudgetExceeded(f"colouring sweep exceeded {max_states} frontier states")
    return sum(states.values())


def count_colorings_brute(g: SimpleGraph, q: int) -> int:
    """All q^n assignments; tiny graphs only."""
    return sum(
        1 for f in product(range(q), repeat=g.n) if all(f[u] != f[v] for u, v in g.edges)
    )


def tree_polynomial(n: int, m: int) -> IntPolynomial:
    """z^(n-m) (z-1)^m, the chromatic polynomial of any forest with n vertices and m edges."""
    return IntPolynomial.monomial(n - m) * IntPolynomial.binomial_power(-1, m)


def path_polynomial(n: int) -> IntPolynomial:
    return tree_polynomial(n, n - 1)


def cycle_polynomial(n: int) -> IntPolynomial:
    return IntPolynomial.binomial_power(-1, n) + (-1) ** n * Z_MINUS_1


def binomial_coefficients(m: int, upto: int) -> list[int]:
    return [comb(m, i) for i in range(upto + 1)]
