"""Chromatic coefficients and power sums as exact combinations of homomorphism counts.

For every graph H,

    e_k(H) = sum_T c_k(T) hom(T, H)          (T over graphs in G(<=k))
    p_k(H) = sum_T q_k(T) hom(T, H)          (T connected)

where G(k) is the set of graphs without isolated vertices whose vertex count
minus component count is k, and

    c_k(T) = sum_{G in G(k)} (-1)^(|E(G)|+|V(G)|+|V(T)|+k) / |Aut G|
             * sum_{P in P(G), G/P ~ T} ||P||.

All arithmetic is in ``fractions.Fraction``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from itertools import combinations_with_replacement, product

from .graph import (
    SimpleGraph,
    automorphism_count,
    canonical_code,
    canonical_form,
    disjoint_union,
    emit_graph6,
    graph_from_code,
)
from .hom import hom_count, independent_partitions, partition_weight, quotient

DEFAULT_K_CAP = 5
EMPTY_CODE = emit_graph6(SimpleGraph(0, frozenset())).encode("ascii")
K1_CODE = emit_graph6(SimpleGraph(1, frozenset())).encode("ascii")


class CapExceeded(ValueError):
    pass


class NotDisconnected(ValueError):
    pass


class IdentityFailure(AssertionError):
    pass


@dataclass(frozen=True)
class GraphClassEntry:
    code: bytes
    representative: SimpleGraph
    aut: int
    k_value: int

    @property
    def n(self) -> int:
        return self.representative.n


def _check(k, cap, what="k"):
    if k > cap:
        raise CapExceeded(f"{what}={k} exceeds cap {cap}")


# ---------------------------------------------------------------------------
# enumeration

@lru_cache(maxsize=None)
def all_graphs(v: int) -> tuple[SimpleGraph, ...]:
    """One canonical representative per isomorphism class on ``v`` vertices.

    Built by attaching a new vertex with every neighbourhood to each class
    on v-1 vertices; every graph arises this way by deleting its last vertex.
    """
    if v == 0:
        return (SimpleGraph(0, frozenset()),)
    seen = {}
    for g in all_graphs(v - 1):
        for mask in range(1 << (v - 1)):
            edges = set(g.edges)
            edges.update((u, v - 1) for u in range(v - 1) if mask >> u & 1)
            h = SimpleGraph(v, frozenset(edges))
            code = canonical_code(h)
            if code not in seen:
                seen[code] = canonical_form(h)
    return tuple(seen[c] for c in sorted(seen, key=lambda c: (graph_from_code(c).m, c)))


def _entry(g: SimpleGraph) -> GraphClassEntry:
    return GraphClassEntry(canonical_code(g), g, automorphism_count(g), g.n - len(g.components))


def enumerate_connected(v: int, cap: int = 8) -> list[GraphClassEntry]:
    _check(v, cap, "v")
    return [_entry(g) for g in all_graphs(v) if g.is_connected]


@lru_cache(maxsize=None)
def _class(k: int) -> tuple[GraphClassEntry, ...]:
    if k == 0:
        return (_entry(SimpleGraph(0, frozenset())),)
    out = []
    for parts in _integer_partitions(k):
        counts = Counter(parts)
        choices = []
        for j in sorted(counts, reverse=True):
            pool = [e.representative for e in enumerate_connected(j + 1)]
            choices.append(list(combinations_with_replacement(pool, counts[j])))
        for pick in product(*choices):
            comps = [g for group in pick for g in group]
            g = canonical_form(disjoint_union(*comps))
            aut = 1
            for c in comps:
                aut *= automorphism_count(c)
            for mult in Counter(canonical_code(c) for c in comps).values():
                aut *= factorial(mult)
            out.append(GraphClassEntry(canonical_code(g), g, aut, k))
    out.sort(key=lambda e: (e.n, e.representative.m, e.code))
    return tuple(out)


def enumerate_class(k: int, cap: int = 6) -> list[GraphClassEntry]:
    """All isomorphism classes of G(k) with |Aut| from the component multiset."""
    _check(k, cap)
    return list(_class(k))


def _integer_partitions(k: int, largest: int | None = None):
    largest = k if largest is None else largest
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in _integer_partitions(k - first, first):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# base parameters

@lru_cache(maxsize=None)
def _base_table(k: int) -> dict[bytes, Fraction]:
    table: dict[bytes, Fraction] = {}
    for entry in _class(k):
        g = entry.representative
        buckets: dict[bytes, int] = {}
        for p in independent_partitions(g, cap=2 * k):
            t = quotient(g, p)
            code = canonical_code(t)
            w = partition_weight(p)
            buckets[code] = buckets.get(code, 0) + (-w if t.n % 2 else w)
        sign = -1 if (g.m + g.n + k) % 2 else 1
        for code, total in buckets.items():
            table[code] = table.get(code, Fraction(0)) + Fraction(sign * total, entry.aut)
    return {c: v for c, v in sorted(table.items(), key=lambda kv: _order_key(kv[0])) if v}


def base_table(k: int, cap: int = DEFAULT_K_CAP) -> dict[bytes, Fraction]:
    """c_k(T) for every T with a nonzero value, keyed by canonical code.

    Raising ``cap`` to 6 works: G(6) has 1077 classes on up to 12 vertices
    and about 2.5 million independent partitions, under a minute on one core
    against well under a second for k = 5.
    """
    _check(k, cap)
    if k < 1:
        raise ValueError("base parameters are defined for k >= 1")
    return dict(_base_table(k))


def base_param(k: int, t: SimpleGraph, cap: int = DEFAULT_K_CAP) -> Fraction:
    if any(len(c) == 1 for c in t.components):
        raise ValueError("T must not have isolated vertices")
    if k == 0:
        return Fraction(1 if t.n == 0 else 0)
    _check(k, cap)
    return _base_table(k).get(canonical_code(t), Fraction(0))


def _order_key(code: bytes):
    g = graph_from_code(code)
    return (g.n, g.m, code)


# ---------------------------------------------------------------------------
# lattice identities

@dataclass
class IdentityReport:
    name: str
    graph: str
    k: int
    lhs: Fraction
    rhs: Fraction

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs

    def __bool__(self):
        return self.ok

    def __str__(self):
        status = "ok" if self.ok else "MISMATCH"
        return f"{self.name} T={self.graph} k={self.k}: {self.lhs} vs {self.rhs} [{status}]"


def _compositions(k: int, parts: int):
    if parts == 1:
        if k >= 1:
            yield (k,)
        return
    for first in range(1, k - parts + 2):
        for rest in _compositions(k - first, parts - 1):
            yield (first,) + rest


def convolution_check(components: list[SimpleGraph], k: int, cap: int = DEFAULT_K_CAP) -> IdentityReport:
    """c_k(T) against (1/sigma) sum_{x_1+..+x_l=k} prod c_{x_j}(T_j) for T the union of ``components``."""
    if any(not c.is_connected or c.n < 2 for c in components):
        raise ValueError("components must be connected graphs with at least one edge")
    t = disjoint_union(*components)
    sigma = 1
    for mult in Counter(canonical_code(c) for c in components).values():
        sigma *= factorial(mult)
    rhs = Fraction(0)
    for xs in _compositions(k, len(components)):
        term = Fraction(1)
        for x, c in zip(xs, components):
            term *= base_param(x, c, cap)
            if not term:
                break
        rhs += term
    return IdentityReport("convolution", emit_graph6(canonical_form(t)), k, base_param(k, t, cap), rhs / sigma)


def detach_check(t: SimpleGraph, k: int, cap: int = DEFAULT_K_CAP) -> IdentityReport:
    """k c_k(T) = sum_{i<k} sum_{j in S} i c_i(T_j) c_{k-i}(T minus T_j)."""
    comps = t.components
    if len(comps) < 2:
        raise NotDisconnected("T must have at least two components")
    pieces = [t.induced(c) for c in comps]
    distinct = {}
    for idx, piece in enumerate(pieces):
        distinct.setdefault(canonical_code(piece), idx)
    rhs = Fraction(0)
    for idx in distinct.values():
        rest = disjoint_union(*(p for j, p in enumerate(pieces) if j != idx))
        for i in range(1, k):
            rhs += i * base_param(i, pieces[idx], cap) * base_param(k - i, rest, cap)
    return IdentityReport("detach", emit_graph6(canonical_form(t)), k, k * base_param(k, t, cap), rhs)


# ---------------------------------------------------------------------------
# formulas

@dataclass
class HomLinearCombination:
    terms: dict[bytes, Fraction]
    kind: str
    k: int
    meta: dict = field(default_factory=dict)

    def items(self) -> list[tuple[bytes, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: _order_key(kv[0]))

    def evaluate(self, h: SimpleGraph) -> Fraction:
        total = Fraction(0)
        for code, coef in self.terms.items():
            total += coef * hom_count(_graph(code), h)
        return total

    def __mul__(self, other: HomLinearCombination) -> dict[bytes, Fraction]:
        out: dict[bytes, Fraction] = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                code = union_code(a, b)
                out[code] = out.get(code, Fraction(0)) + x * y
        return out

    def connected_only(self) -> bool:
        return all(_graph(c).is_connected for c in self.terms)


@lru_cache(maxsize=None)
def _graph(code: bytes) -> SimpleGraph:
    return graph_from_code(code)


@lru_cache(maxsize=None)
def union_code(a: bytes, b: bytes) -> bytes:
    return canonical_code(disjoint_union(_graph(a), _graph(b)))


def coefficient_formula(k: int, cap: int = DEFAULT_K_CAP) -> HomLinearCombination:
    _check(k, cap)
    if k == 0:
        return HomLinearCombination({EMPTY_CODE: Fraction(1)}, "e", 0)
    return HomLinearCombination(dict(_base_table(k)), "e", k)


@lru_cache(maxsize=None)
def _newton_expansion(k: int) -> dict[bytes, Fraction]:
    """Formal coefficients q_k(T) from the Newton identities, before discarding anything."""
    if k == 0:
        return {K1_CODE: Fraction(1)}
    sign = -1 if (k - 1) % 2 else 1
    out = {c: sign * k * v for c, v in _base_table(k).items()}
    for i in range(1, k):
        s = -1 if (k - i - 1) % 2 else 1
        qi = HomLinearCombination(_newton_expansion(i), "p", i)
        for code, v in (qi * coefficient_formula(k - i, cap=k)).items():
            out[code] = out.get(code, Fraction(0)) + s * v
    return out


def newton_expansion(k: int, cap: int = DEFAULT_K_CAP) -> dict[bytes, Fraction]:
    """Every formal term of p_k, including those on disconnected T (which must all be 0)."""
    _check(k, cap)
    return dict(_newton_expansion(k))


def moment_formula(k: int, cap: int = DEFAULT_K_CAP) -> HomLinearCombination:
    """p_k as a combination of hom(T, .) over connected T.

    Assembled through the Newton identities; raises IdentityFailure unless
    every disconnected coefficient cancels and each connected one equals
    (-1)^(k-1) k c_k(T).
    """
    _check(k, cap)
    full = _newton_expansion(k)
    if k == 0:
        return HomLinearCombination(dict(full), "p", 0)
    sign = -1 if (k - 1) % 2 else 1
    table = _base_table(k)
    terms = {}
    for code, v in full.items():
        g = _graph(code)
        if not g.is_connected:
            if v:
                raise IdentityFailure(f"q_{k}({code.decode()}) = {v}, expected 0")
            continue
        expected = sign * k * table.get(code, Fraction(0))
        if v != expected:
            raise IdentityFailure(f"q_{k}({code.decode()}) = {v}, expected {expected}")
        if v:
            terms[code] = v
    for code, v in table.items():
        if _graph(code).is_connected and code not in terms:
            raise IdentityFailure(f"connected term {code.decode()} missing from the Newton expansion")
    disconnected = sum(1 for c in full if not _graph(c).is_connected)
    return HomLinearCombination(terms, "p", k, {"cancelled_disconnected": disconnected})


# ---------------------------------------------------------------------------
# formula tables

def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def emit_appendix(kmax: int = 5, e_max: int | None = None, cap: int = DEFAULT_K_CAP) -> dict:
    """e_0..e_{e_max} and p_0..p_kmax as lists of (coefficient, graph6, edges)."""
    _check(kmax, cap)
    e_max = kmax - 1 if e_max is None else e_max
    _check(e_max, cap)
    out = {"e": {}, "p": {}}
    for k in range(e_max + 1):
        out["e"][k] = formula_rows(coefficient_formula(k, cap))
    for k in range(kmax + 1):
        out["p"][k] = formula_rows(moment_formula(k, cap))
    return out


def formula_rows(f: HomLinearCombination) -> list[dict]:
    rows = []
    for code, coef in f.items():
        g = _graph(code)
        rows.append({
            "coefficient": format_fraction(coef),
            "graph6": code.decode("ascii"),
            "n": g.n,
            "edges": [list(e) for e in g.sorted_edges()],
        })
    return rows


def graph_name(g: SimpleGraph) -> str:
    """K_n, P_n, C_n or K1,n when the graph is one of those, otherwise its graph6 code."""
    if len(g.components) > 1:
        names = Counter(graph_name(g.induced(c)) for c in g.components)
        return "+".join(f"{k}{name}" if k > 1 else name for name, k in sorted(names.items()))
    n, m = g.n, g.m
    degs = [g.degree(v) for v in range(n)]
    if m == n * (n - 1) // 2:
        return f"K{n}"
    if g.is_connected and m == n - 1 and max(degs) <= 2:
        return f"P{n}"
    if g.is_connected and m == n and all(d == 2 for d in degs):
        return f"C{n}"
    if g.is_connected and m == n - 1 and max(degs) == n - 1:
        return f"K1,{n - 1}"
    return emit_graph6(g)


def appendix_json(tables: dict) -> str:
    return json.dumps(tables, indent=1, sort_keys=False)


def appendix_text(tables: dict) -> str:
    """One block per formula: 'kind_k(G) = sum of coef * hom(T, G)' with a row per T."""
    lines = []
    for kind in ("e", "p"):
        for k, rows in tables[kind].items():
            lines.append(f"{kind}_{k}(G) = sum of coef * hom(T, G) over {len(rows)} graphs T")
            for r in rows:
                edges = " ".join(f"{u}-{v}" for u, v in r["edges"]) or "-"
                name = graph_name(_graph(r["graph6"].encode("ascii")))
                lines.append(f"  {r['coefficient']:>12}  {r['graph6']:<8} {name:<10} {edges}")
            lines.append("")
    return "\n".join(lines)
