"""Local statistics, convergence experiments and the large-girth entropy estimate."""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import mpmath

from . import graph as gr
from .basis import moment_formula
from .chromatic import (
    BudgetExceeded,
    chromatic_coefficients,
    chromatic_dc,
    cycle_polynomial,
    path_polynomial,
    tree_polynomial,
)
from .graph import SimpleGraph, rooted_code
from .hom import hom_count
from .poly import IntPolynomial
from .spectra import SOKAL_C, ChromaticRootError, log_evaluate, power_sums_newton
from .tube import tube_chromatic


class OutOfRange(ValueError):
    pass


class DisconnectedPattern(ValueError):
    pass


class InfiniteGirth(ValueError):
    pass


# ---------------------------------------------------------------------------
# balls

@dataclass
class BallDistribution:
    radius: int
    weights: dict[bytes, Fraction]

    def total(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    def tv_distance(self, other: BallDistribution) -> Fraction:
        keys = set(self.weights) | set(other.weights)
        diff = sum(abs(self.weights.get(k, Fraction(0)) - other.weights.get(k, Fraction(0))) for k in keys)
        return diff / 2


def ball_distribution(g: SimpleGraph, radius: int, cap: int = 64) -> BallDistribution:
    """Exact law of the isomorphism type of the radius-R ball around a uniform vertex."""
    if radius > 5:
        raise OutOfRange("radius above 5 is not supported")
    if g.n == 0:
        raise ValueError("graph has no vertices")
    counts: dict[bytes, int] = {}
    for v in range(g.n):
        b = gr.ball(g, v, radius)
        code = rooted_code(b.graph, b.root, cap)
        counts[code] = counts.get(code, 0) + 1
    return BallDistribution(radius, {c: Fraction(k, g.n) for c, k in sorted(counts.items())})


def hom_density(t: SimpleGraph, g: SimpleGraph) -> Fraction:
    """hom(T, G)/|V(G)| for connected T."""
    if not t.is_connected:
        raise DisconnectedPattern("hom density is only normalised by |V| for connected patterns")
    return Fraction(hom_count(t, g), g.n)


# ---------------------------------------------------------------------------
# convergence experiments

@dataclass
class Family:
    name: str
    build: Callable[[int], SimpleGraph]
    polynomial: Callable[[int, SimpleGraph], IntPolynomial] | None = None
    degree: int = 2


def family(name: str, params: Sequence[int] = (), seed: int = 0) -> Family:
    """path, cycle, tube, torus(d) or random-regular(d, girth)."""
    if name == "path":
        return Family("path", gr.path, lambda n, g: path_polynomial(n), 2)
    if name == "cycle":
        return Family("cycle", gr.cycle, lambda n, g: cycle_polynomial(n), 2)
    if name == "tube":
        return Family("tube", gr.tube, lambda n, g: tube_chromatic(n), 4)
    if name == "torus":
        d = params[0] if params else 2
        return Family(f"torus:{d}", lambda n: gr.torus(d, n), None, 2 * d)
    if name == "random-regular":
        d = params[0] if params else 3
        girth = params[1] if len(params) > 1 else 3
        return Family(f"random-regular:{d},{girth}",
                      lambda n: gr.random_regular(d, n, girth, seed=seed), None, d)
    raise ValueError(f"unknown family {name!r}")


def default_q_points(d: int, C: float = SOKAL_C) -> list:
    """Real points ceil(Cd)+1, 2Cd, 4Cd and two complex points outside the closed disc."""
    cd = C * d
    return [math.ceil(cd) + 1, 2 * cd, 4 * cd, complex(0, 2 * cd), 2 * cd * complex(math.cos(2.0), math.sin(2.0))]


@dataclass
class ConvergenceSeries:
    family: str
    sizes: list[int]
    K: int
    records: list[dict] = field(default_factory=list)

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in self.records)


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _size_record(fam: Family, n: int, K: int, hom_k: int, t_list, q_list, budget) -> dict:
    g = fam.build(n)
    rec: dict = {"family": fam.name, "size": n, "vertices": g.n, "edges": g.m, "status": "ok"}
    poly = None
    try:
        poly = fam.polynomial(n, g) if fam.polynomial else chromatic_dc(g, budget=budget)
    except BudgetExceeded as exc:
        rec["status"] = f"budget: {exc}"
    newton = None
    if poly is not None:
        newton = power_sums_newton(chromatic_coefficients(poly), K)
        rec["moments_newton"] = [_frac(Fraction(p, g.n)) for p in newton]
    hom_vals = [moment_formula(k).evaluate(g) for k in range(1, hom_k + 1)]
    rec["moments_hom"] = [_frac(v / g.n) for v in hom_vals]
    if newton is not None:
        rec["paths_agree"] = all(Fraction(newton[k]) == hom_vals[k] for k in range(hom_k))
    rec["hom_densities"] = {gr.emit_graph6(t): _frac(hom_density(t, g)) for t in t_list}
    ent = {}
    if poly is not None:
        for q in q_list:
            try:
                t = log_evaluate(poly, q) / g.n
            except ChromaticRootError:
                continue
            ent[_q_label(q)] = [float(f"{t.real:.15g}"), float(f"{t.imag:.15g}")]
    rec["entropy"] = ent
    return rec


def _q_label(q) -> str:
    if isinstance(q, complex):
        return f"{q.real:.15g}{q.imag:+.15g}j"
    if isinstance(q, Fraction):
        return _frac(q)
    return f"{q:.15g}" if isinstance(q, float) else str(q)


def run_convergence(fam: str | Family, sizes: Sequence[int], K: int = 8, T_list: Sequence[SimpleGraph] = (),
                    q_list: Sequence | None = None, hom_k: int | None = None, budget: int = 200_000,
                    threads: int = 1, seed: int = 0) -> ConvergenceSeries:
    """One record per size: exact moments by both routes, hom densities and entropy values."""
    fam = family(fam, seed=seed) if isinstance(fam, str) else fam
    hom_k = min(K, 5) if hom_k is None else hom_k
    q_list = default_q_points(fam.degree) if q_list is None else list(q_list)
    sizes = list(sizes)
    job = lambda n: _size_record(fam, n, K, hom_k, T_list, q_list, budget)  # noqa: E731
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            records = list(pool.map(job, sizes))
    else:
        records = [job(n) for n in sizes]
    return ConvergenceSeries(fam.name, sizes, K, records)


def tree_entropy(d: float, q: float) -> float:
    """ln q + (d/2) ln(1 - 1/q), the entropy of large-girth d-regular graphs."""
    if q <= 1:
        raise OutOfRange("q must exceed 1")
    return math.log(q) + d / 2 * math.log1p(-1 / q)


# ---------------------------------------------------------------------------
# large girth

@dataclass
class GirthEstimate:
    q: Fraction
    estimate: float
    bound: float
    exact: float | None = None
    girth: float = math.inf
    C: float = SOKAL_C
    d: int = 0
    forest: bool = False

    @property
    def error(self) -> float | None:
        return None if self.exact is None else abs(self.exact - self.estimate)

    def holds(self, slack: float = 1e-9) -> bool | None:
        if self.exact is None:
            return None
        return self.error <= self.bound + slack


def _ln_rational(x: Fraction) -> mpmath.mpf:
    return mpmath.log(x.numerator) - mpmath.log(x.denominator)


def girth_estimate(g: SimpleGraph, q, C: float = SOKAL_C, poly: IntPolynomial | None = None,
                   budget: int | None = 2_000_000, exact: bool = True) -> GirthEstimate:
    """ln q + (|E|/|V|) ln(1 - 1/q) with the error bound 2(Cd/q)^(g-1)/(1 - Cd/q).

    ``exact`` adds ln ch_G(q)/|V| computed from the exact polynomial; when the
    polynomial is out of budget the estimate is returned without it.
    """
    q = Fraction(q)
    n, m, d = g.n, g.m, g.max_degree
    if n == 0:
        raise ValueError("graph has no vertices")
    with mpmath.workdps(40):
        est = float(_ln_rational(q) + mpmath.mpf(m) / n * _ln_rational(1 - 1 / q)) if q > 1 else math.nan
    if g.is_forest:
        if q <= 1:
            raise OutOfRange("q must exceed 1")
        # ch = q^c (q-1)^m exactly, so the estimate is the exact value
        value = None
        if exact:
            value = _exact_entropy(tree_polynomial(n, m), q, n)
        return GirthEstimate(q, est, 0.0, value, math.inf, C, d, forest=True)
    ratio = C * d / q
    if ratio >= 1:
        raise OutOfRange(f"q = {q} must exceed C*d = {C * d}")
    girth = g.girth
    bound = 2 * float(ratio) ** (girth - 1) / (1 - float(ratio))
    value = None
    if exact:
        try:
            value = _exact_entropy(poly if poly is not None else chromatic_dc(g, budget=budget), q, n)
        except BudgetExceeded:
            value = None
    return GirthEstimate(q, est, bound, value, girth, C, d)


def _exact_entropy(poly: IntPolynomial, q: Fraction, n: int) -> float:
    v = poly(q)
    if v <= 0:
        raise ChromaticRootError(f"ch({q}) = {v} is not positive")
    with mpmath.workdps(40):
        return float(_ln_rational(v) / n)


@dataclass
class GirthMomentReport:
    girth: int
    edges: int
    power_sums: list[int]
    coefficients: list[int]

    @property
    def ok(self) -> bool:
        m = self.edges
        return (all(p == m for p in self.power_sums)
                and all(e == math.comb(m, i) for i, e in enumerate(self.coefficients)))


def girth_moment_check(g: SimpleGraph, poly: IntPolynomial | None = None) -> GirthMomentReport:
    """p_i = |E| and e_i = binom(|E|, i) for 1 <= i <= girth - 2."""
    girth = g.girth
    if girth == math.inf:
        raise InfiniteGirth("forests have no cycle")
    top = int(girth) - 2
    poly = chromatic_dc(g) if poly is None else poly
    e = chromatic_coefficients(poly)
    p = power_sums_newton(e, top)
    coeffs = [e[i] if i < len(e) else 0 for i in range(top + 1)]
    return GirthMomentReport(int(girth), g.m, p, coeffs)
