"""Finite simple graphs, canonical forms, generators and interchange formats.

Vertices are the integers ``0..n-1``. Adjacency is kept as a list of
bitmasks so neighbourhood intersections in the counting kernels are a
single ``&``.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable, Sequence

DEFAULT_SIZE_CAP = 16


class GraphError(ValueError):
    pass


class LoopEdge(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


class Malformed(GraphError):
    pass


class SizeCapExceeded(GraphError):
    pass


class InfeasibleDegreeSequence(GraphError):
    pass


class RejectionBudgetExhausted(GraphError):
    pass


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    edges: frozenset

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("vertex count must be non-negative")
        for u, v in self.edges:
            if u == v:
                raise LoopEdge(f"loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise VertexOutOfRange(f"edge ({u}, {v}) outside 0..{self.n - 1}")

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> list[int]:
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    @cached_property
    def neighbors(self) -> list[list[int]]:
        return [_bits(a) for a in self.adjacency]

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    @property
    def max_degree(self) -> int:
        return max((a.bit_count() for a in self.adjacency), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __repr__(self):
        return f"SimpleGraph(n={self.n}, edges={self.sorted_edges()})"

    # structure

    @cached_property
    def components(self) -> list[list[int]]:
        seen = 0
        comps = []
        adj = self.adjacency
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = 1 << s
            frontier = 1 << s
            while frontier:
                nxt = 0
                for v in _bits(frontier):
                    nxt |= adj[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(_bits(comp))
        return comps

    @property
    def is_connected(self) -> bool:
        return len(self.components) <= 1

    @cached_property
    def girth(self) -> float:
        """Length of a shortest cycle; ``math.inf`` for forests."""
        best = math.inf
        nbrs = self.neighbors
        for s in range(self.n):
            dist = {s: 0}
            parent = {s: -1}
            queue = deque([s])
            while queue:
                u = queue.popleft()
                if 2 * dist[u] + 1 >= best:
                    break
                for w in nbrs[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        queue.append(w)
                    elif parent[u] != w:
                        best = min(best, dist[u] + dist[w] + 1)
        return best

    @property
    def is_forest(self) -> bool:
        return self.m == self.n - len(self.components)

    # constructions

    def relabel(self, perm: Sequence[int]) -> SimpleGraph:
        """Image of the graph under ``v -> perm[v]``."""
        return SimpleGraph(self.n, frozenset(_pair(perm[u], perm[v]) for u, v in self.edges))

    def induced(self, vertices: Sequence[int]) -> SimpleGraph:
        """Induced subgraph, vertex ``vertices[i]`` becoming ``i``."""
        index = {v: i for i, v in enumerate(vertices)}
        edges = frozenset(
            _pair(index[u], index[v]) for u, v in self.edges if u in index and v in index
        )
        return SimpleGraph(len(vertices), edges)

    def delete_edge(self, u: int, v: int) -> SimpleGraph:
        return SimpleGraph(self.n, self.edges - {_pair(u, v)})

    def contract_edge(self, u: int, v: int) -> SimpleGraph:
        """Glue ``u`` and ``v``; parallel edges merge and the edge itself vanishes."""
        if v < u:
            u, v = v, u

        def image(x):
            if x == v:
                return u
            return x - 1 if x > v else x

        edges = set()
        for a, b in self.edges:
            a, b = image(a), image(b)
            if a != b:
                edges.add(_pair(a, b))
        return SimpleGraph(self.n - 1, frozenset(edges))

    def remove_vertex(self, v: int) -> SimpleGraph:
        return self.induced([x for x in range(self.n) if x != v])

    def complement(self) -> SimpleGraph:
        return SimpleGraph(
            self.n,
            frozenset((u, v) for u in range(self.n) for v in range(u + 1, self.n) if not self.has_edge(u, v)),
        )


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def from_edge_list(n: int, pairs: Iterable[Sequence[int]]) -> SimpleGraph:
    edges = set()
    for pair in pairs:
        u, v = int(pair[0]), int(pair[1])
        if u == v:
            raise LoopEdge(f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
        edges.add(_pair(u, v))
    return SimpleGraph(n, frozenset(edges))


def disjoint_union(*graphs: SimpleGraph) -> SimpleGraph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return SimpleGraph(offset, frozenset(edges))


# ---------------------------------------------------------------------------
# graph6 and edge-list text

def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise GraphError("graph too large for graph6")


def emit_graph6(g: SimpleGraph) -> str:
    bits = []
    for j in range(1, g.n):
        row = g.adjacency[j]
        for i in range(j):
            bits.append(row >> i & 1)
    while len(bits) % 6:
        bits.append(0)
    chunks = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        chunks.append(chr(val + 63))
    return _encode_n(g.n) + "".join(chunks)


def parse_graph6(text: str | bytes) -> SimpleGraph:
    if isinstance(text, bytes):
        text = text.decode("ascii")
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise Malformed("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= d < 64 for d in data):
        raise Malformed("graph6 characters must lie in '?'..'~'")
    if data[0] == 63:
        if len(data) >= 2 and data[1] == 63:
            if len(data) < 8:
                raise Malformed("truncated graph6 header")
            n = 0
            for d in data[2:8]:
                n = (n << 6) | d
            body = data[8:]
        else:
            if len(data) < 4:
                raise Malformed("truncated graph6 header")
            n = (data[1] << 12) | (data[2] << 6) | data[3]
            body = data[4:]
    else:
        n = data[0]
        body = data[1:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise Malformed(f"graph6 payload has {len(body)} bytes, expected {need}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return SimpleGraph(n, frozenset(edges))


def emit_edge_list(g: SimpleGraph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> SimpleGraph:
    rows = [line.split() for line in text.splitlines()]
    rows = [r for r in rows if r and not r[0].startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise Malformed("edge list must start with a 'n m' header line")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        pairs = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise Malformed(f"bad edge list: {exc}") from None
    if len(pairs) != m:
        raise Malformed(f"header announces {m} edges, found {len(pairs)}")
    return from_edge_list(n, pairs)


# ---------------------------------------------------------------------------
# canonical labelling (individualisation-refinement with automorphism pruning)

def _refine(adj: list[int], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = []
        for c in cells:
            mask = 0
            for v in c:
                mask |= 1 << v
            masks.append(mask)
        new = []
        changed = False
        for c in cells:
            if len(c) == 1:
                new.append(c)
                continue
            sig = {v: tuple((adj[v] & m).bit_count() for m in masks) for v in c}
            keys = sorted(set(sig.values()))
            if len(keys) == 1:
                new.append(c)
                continue
            changed = True
            for key in keys:
                new.append([v for v in c if sig[v] == key])
        cells = new
        if not changed:
            return cells


class _Search:
    """Search tree over ordered partitions; the minimum leaf code is canonical.

    Leaves equivalent to the first or best leaf yield automorphisms, which
    prune siblings in the same orbit of the current pointwise stabiliser.
    The product of first-path orbit sizes is ``|Aut|``.
    """

    def __init__(self, adj: list[int]):
        self.adj = adj
        self.gens: list[list[int]] = []
        self.first = None
        self.best = None
        self.aut = 1

    def run(self, cells):
        self._node(cells, [], True)
        return self.best[1], self.aut

    def _orbit(self, w: int, path: list[int]) -> set[int]:
        gens = [g for g in self.gens if all(g[x] == x for x in path)]
        orbit = {w}
        stack = [w]
        while stack:
            x = stack.pop()
            for g in gens:
                y = g[x]
                if y not in orbit:
                    orbit.add(y)
                    stack.append(y)
        return orbit

    def _node(self, cells, path, on_first):
        cells = _refine(self.adj, cells)
        if len(cells) == len(self.adj):
            return self._leaf(cells, path)
        size = min(len(c) for c in cells if len(c) > 1)
        ti = next(i for i, c in enumerate(cells) if len(c) == size)
        cell = cells[ti]
        explored = []
        for w in cell:
            if explored and not self._orbit(w, path).isdisjoint(explored):
                continue
            explored.append(w)
            child = cells[:ti] + [[w], [x for x in cell if x != w]] + cells[ti + 1:]
            res = self._node(child, path + [w], on_first and len(explored) == 1)
            if res is not None and res < len(path):
                return res
        if on_first:
            self.aut *= len(self._orbit(explored[0], path))
        return None

    def _leaf(self, cells, path):
        order = [c[0] for c in cells]
        pos = [0] * len(order)
        for i, v in enumerate(order):
            pos[v] = i
        code = []
        for v in order:
            row = 0
            a = self.adj[v]
            while a:
                low = a & -a
                row |= 1 << pos[low.bit_length() - 1]
                a ^= low
            code.append(row)
        code = tuple(code)
        if self.first is None:
            self.first = self.best = (code, order, path)
            return None
        for ref in (self.first, self.best):
            if code == ref[0]:
                gen = [0] * len(order)
                for a, b in zip(ref[1], order):
                    gen[a] = b
                self.gens.append(gen)
                return _common_prefix(path, ref[2])
        if code < self.best[0]:
            self.best = (code, order, path)
        return None


def _common_prefix(a, b) -> int:
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return k


def _search(g: SimpleGraph, cells) -> tuple[list[int], int]:
    if g.n == 0:
        return [], 1
    return _Search(g.adjacency).run(cells)


def _check_cap(g: SimpleGraph, cap: int):
    if g.n > cap:
        raise SizeCapExceeded(f"{g.n} vertices exceeds canonicalisation cap {cap}")


@lru_cache(maxsize=200_000)
def _canonical(g: SimpleGraph) -> tuple[bytes, tuple[int, ...], int]:
    """(code, order, |Aut|) where ``order[i]`` is the vertex placed at position i."""
    parts = []
    for comp in g.components:
        sub = g.induced(comp)
        order, aut = _search(sub, [list(range(sub.n))])
        canon = sub.relabel(_inverse(order))
        parts.append((sub.n, emit_graph6(canon), [comp[i] for i in order], aut))
    parts.sort(key=lambda p: (p[0], p[1]))
    order = [v for p in parts for v in p[2]]
    aut = 1
    run = 1
    for i, p in enumerate(parts):
        aut *= p[3]
        if i and (p[0], p[1]) == (parts[i - 1][0], parts[i - 1][1]):
            run += 1
            aut *= run
        else:
            run = 1
    code = emit_graph6(g.relabel(_inverse(order))).encode("ascii")
    return code, tuple(order), aut


def _inverse(order: Sequence[int]) -> list[int]:
    inv = [0] * len(order)
    for i, v in enumerate(order):
        inv[v] = i
    return inv


def canonical_code(g: SimpleGraph, cap: int = DEFAULT_SIZE_CAP) -> bytes:
    """graph6 bytes of a canonical relabelling; equal exactly for isomorphic graphs."""
    _check_cap(g, cap)
    return _canonical(g)[0]


def canonical_form(g: SimpleGraph, cap: int = DEFAULT_SIZE_CAP) -> SimpleGraph:
    _check_cap(g, cap)
    return g.relabel(_inverse(_canonical(g)[1]))


def automorphism_count(g: SimpleGraph, cap: int = DEFAULT_SIZE_CAP) -> int:
    _check_cap(g, cap)
    return _canonical(g)[2]


def graph_from_code(code: bytes) -> SimpleGraph:
    return parse_graph6(code)


def is_isomorphic(g: SimpleGraph, h: SimpleGraph, cap: int = DEFAULT_SIZE_CAP) -> bool:
    if (g.n, g.m) != (h.n, h.m):
        return False
    return canonical_code(g, cap) == canonical_code(h, cap)


# ---------------------------------------------------------------------------
# rooted balls

@dataclass(frozen=True)
class RootedBall:
    graph: SimpleGraph
    root: int
    radius: int

    def code(self, cap: int = 64) -> bytes:
        """Canonical code with the root individualised (placed first)."""
        return rooted_code(self.graph, self.root, cap)


@lru_cache(maxsize=100_000)
def _rooted(g: SimpleGraph, root: int) -> bytes:
    order, _ = _search(g, [[root], [v for v in range(g.n) if v != root]])
    return b"r" + emit_graph6(g.relabel(_inverse(order))).encode("ascii")


def rooted_code(g: SimpleGraph, root: int, cap: int = 64) -> bytes:
    _check_cap(g, cap)
    return _rooted(g, root)


def ball(g: SimpleGraph, v: int, radius: int) -> RootedBall:
    if not 0 <= v < g.n:
        raise VertexOutOfRange(f"vertex {v} outside 0..{g.n - 1}")
    if radius < 0:
        raise GraphError("radius must be non-negative")
    dist = {v: 0}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        if dist[u] == radius:
            continue
        for w in g.neighbors[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    vertices = sorted(dist, key=lambda x: (dist[x], x))
    return RootedBall(g.induced(vertices), 0, radius)


# ---------------------------------------------------------------------------
# generators

def edgeless(n: int) -> SimpleGraph:
    return SimpleGraph(n, frozenset())


def path(n: int) -> SimpleGraph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> SimpleGraph:
    if n < 3:
        raise GraphError("a simple cycle needs at least 3 vertices")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> SimpleGraph:
    return from_edge_list(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(n: int) -> SimpleGraph:
    """Star on ``n`` vertices (centre 0)."""
    return from_edge_list(n, [(0, i) for i in range(1, n)])


def _lattice(d: int, n: int, wrap: bool) -> SimpleGraph:
    if d < 1 or n < 1:
        raise GraphError("dimension and side must be positive")
    if wrap and n < 3:
        raise GraphError("torus side must be at least 3 to stay simple")
    coords = list(product(range(n), repeat=d))
    index = {c: i for i, c in enumerate(coords)}
    edges = set()
    for c in coords:
        for axis in range(d):
            nxt = list(c)
            nxt[axis] += 1
            if nxt[axis] == n:
                if not wrap:
                    continue
                nxt[axis] = 0
            edges.add(_pair(index[c], index[tuple(nxt)]))
    return SimpleGraph(len(coords), frozenset(edges))


def box(d: int, n: int) -> SimpleGraph:
    """Box of side ``n`` in Z^d."""
    return _lattice(d, n, wrap=False)


def torus(d: int, n: int) -> SimpleGraph:
    """(Z/nZ)^d."""
    return _lattice(d, n, wrap=True)


def cartesian_product(g: SimpleGraph, h: SimpleGraph) -> SimpleGraph:
    """Vertex (a, b) becomes ``a * h.n + b``."""
    edges = []
    for a in range(g.n):
        edges.extend((a * h.n + u, a * h.n + v) for u, v in h.edges)
    for b in range(h.n):
        edges.extend((u * h.n + b, v * h.n + b) for u, v in g.edges)
    return from_edge_list(g.n * h.n, edges)


def tube(n: int) -> SimpleGraph:
    """C4 x P_n."""
    return cartesian_product(cycle(4), path(n))


def petersen() -> SimpleGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edge_list(10, outer + spokes + inner)


def random_regular(d: int, n: int, min_girth: int = 3, seed: int = 0,
                   max_tries: int = 100_000) -> SimpleGraph:
    """Random d-regular graph by stub pairing, restarting on any loop,
    multi-edge or cycle shorter than ``min_girth``.

    Stubs are matched one at a time, so a bad pair is caught as soon as it
    is drawn rather than after the whole matching.
    """
    if d < 0 or n < 1 or (d * n) % 2 or d >= n:
        raise InfeasibleDegreeSequence(f"no simple {d}-regular graph on {n} vertices")
    rng = random.Random(seed)
    for _ in range(max_tries):
        g = _try_pairing(d, n, min_girth, rng)
        if g is not None:
            return g
    raise RejectionBudgetExhausted(
        f"no {d}-regular graph on {n} vertices with girth >= {min_girth} after {max_tries} tries")


def _try_pairing(d, n, min_girth, rng):
    stubs = [v for v in range(n) for _ in range(d)]
    rng.shuffle(stubs)
    adj = [set() for _ in range(n)]
    while stubs:
        u = stubs.pop()
        j = rng.randrange(len(stubs))
        v = stubs[j]
        if u == v or v in adj[u] or _within(adj, u, v, min_girth - 2):
            return None
        stubs[j] = stubs[-1]
        stubs.pop()
        adj[u].add(v)
        adj[v].add(u)
    return from_edge_list(n, [(u, v) for u in range(n) for v in adj[u] if u < v])


def _within(adj, s, t, limit) -> bool:
    """True when t is at distance <= limit from s."""
    if limit < 1:
        return False
    seen = {s}
    frontier = [s]
    for _ in range(limit):
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w == t:
                    return True
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return False


GENERATORS = {
    "path": path,
    "cycle": cycle,
    "complete": complete,
    "edgeless": edgeless,
    "star": star,
    "box": box,
    "torus": torus,
    "tube": tube,
    "petersen": petersen,
    "random-regular": random_regular,
}


def generate(spec: str, seed: int = 0) -> SimpleGraph:
    """Build a graph from ``family[:p1,p2,...]``, e.g. ``cycle:5`` or ``random-regular:3,20,5``."""
    name, _, params = spec.partition(":")
    if name not in GENERATORS:
        raise GraphError(f"unknown generator {name!r}; choose from {', '.join(GENERATORS)}")
    args = [int(p) for p in params.split(",") if p.strip()] if params else []
    if name == "random-regular":
        if len(args) not in (2, 3):
            raise GraphError("random-regular takes d,n[,min_girth]")
        return random_regular(*args, seed=seed)
    return GENERATORS[name](*args)
