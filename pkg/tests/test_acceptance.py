"""The eleven acceptance criteria, each at its stated tolerance.

Run under pytest (a PASS/FAIL line per criterion appears in the terminal
summary) or directly: ``python tests/test_acceptance.py``.
"""

import math
import random
import sys
import time
from fractions import Fraction

import pytest

from chromaloc import graph as gr
from chromaloc.basis import (
    all_graphs,
    coefficient_formula,
    convolution_check,
    detach_check,
    enumerate_class,
    moment_formula,
    newton_expansion,
)
from chromaloc.chromatic import (
    chromatic_coefficients,
    chromatic_dc,
    chromatic_expansion,
    cycle_polynomial,
    path_polynomial,
)
from chromaloc.hom import inj_count, inj_from_hom_mobius
from chromaloc.limits import girth_estimate, girth_moment_check, tree_entropy
from chromaloc.poly import IntPolynomial
from chromaloc.spectra import SOKAL_C, SokalDisc, find_roots, in_disc, log_evaluate, power_sums_newton
from chromaloc.tube import tube_chromatic, tube_closed_form, tube_value

from corpus import cubic_girth5, few_edges_graph, keystone_corpus, spectral_corpus

Z = IntPolynomial([0, 1])


def _elapsed(t0):
    return f"{time.perf_counter() - t0:.1f}s"


def check_1():
    t0 = time.perf_counter()
    small = [g for v in range(1, 7) for g in all_graphs(v) if g.is_connected]
    on_six = sum(1 for g in small if g.n == 6)
    bad = [gr.emit_graph6(g) for g in small if chromatic_dc(g) != chromatic_expansion(g)]
    rng = random.Random(1)
    randoms = [few_edges_graph(rng, 20) for _ in range(200)]
    bad += [gr.emit_graph6(g) for g in randoms if chromatic_dc(g) != chromatic_expansion(g)]
    took = time.perf_counter() - t0
    ok = not bad and on_six == 112 and took < 120
    return ok, f"{len(small)} connected graphs on <= 6 vertices ({on_six} on 6) + 200 random; mismatches={len(bad)}; {took:.1f}s"


def check_2():
    t0 = time.perf_counter()
    bad = []
    for n in range(1, 51):
        if chromatic_dc(gr.path(n)) != Z * (Z - 1) ** (n - 1):
            bad.append(f"path:{n}")
        if n >= 3 and chromatic_dc(gr.cycle(n)) != (Z - 1) ** n + (-1) ** n * (Z - 1):
            bad.append(f"cycle:{n}")
    return not bad, f"paths 1..50, cycles 3..50; mismatches={bad}; {_elapsed(t0)}"


def check_3():
    t0 = time.perf_counter()
    e_formulas = [coefficient_formula(k) for k in range(6)]
    p_formulas = [moment_formula(k) for k in range(1, 6)]
    bad = []
    corpus = keystone_corpus()
    for name, g in corpus:
        e = chromatic_coefficients(chromatic_dc(g))
        e_full = e + [0] * 6
        p = power_sums_newton(e, 5)
        for k in range(6):
            if e_formulas[k].evaluate(g) != e_full[k]:
                bad.append(f"e_{k}({name})")
        for k in range(1, 6):
            if p_formulas[k - 1].evaluate(g) != p[k - 1]:
                bad.append(f"p_{k}({name})")
    took = time.perf_counter() - t0
    return not bad and took < 600, f"{len(corpus)} graphs, k <= 5; mismatches={bad[:5]}; {took:.1f}s"


def check_4():
    t0 = time.perf_counter()
    failures = []
    count = 0
    for kk in range(1, 6):
        for entry in enumerate_class(kk):
            t = entry.representative
            if t.is_connected:
                continue
            count += 1
            comps = [t.induced(c) for c in t.components]
            for k in range(1, 6):
                for report in (convolution_check(comps, k), detach_check(t, k)):
                    if not report:
                        failures.append(str(report))
    leftover = []
    for k in range(1, 6):
        for code, v in newton_expansion(k).items():
            if not gr.graph_from_code(code).is_connected and v != 0:
                leftover.append((k, code, v))
    ok = not failures and not leftover
    return ok, (f"{count} disconnected T in G(<=5), k=1..5; identity failures={len(failures)}; "
                f"nonzero disconnected q_k={len(leftover)}; {_elapsed(t0)}")


def check_5():
    t0 = time.perf_counter()
    graphs = [g for v in range(0, 6) for g in all_graphs(v)]
    bad = [(gr.emit_graph6(g), gr.emit_graph6(h)) for g in graphs for h in graphs
           if inj_from_hom_mobius(g, h) != inj_count(g, h)]
    took = time.perf_counter() - t0
    return not bad and took < 300, f"{len(graphs)}^2 pairs on <= 5 vertices; mismatches={len(bad)}; {took:.1f}s"


def check_6():
    rep = girth_moment_check(gr.petersen())
    e = chromatic_coefficients(chromatic_dc(gr.petersen()))
    ok = rep.power_sums == [15, 15, 15] and e[2] == 105 and e[3] == 455
    bad = []
    for n in range(3, 13):
        p = power_sums_newton(chromatic_coefficients(chromatic_dc(gr.cycle(n))), n - 2)
        if p != [n] * (n - 2):
            bad.append(n)
    ok = ok and not bad
    return ok, f"Petersen p_1..3={rep.power_sums}, e_2={e[2]}, e_3={e[3]}; cycle failures={bad}"


def _q_points(cd: Fraction) -> list[Fraction]:
    return [cd * (1 + Fraction(j, 5)) for j in range(1, 6)]


def check_7():
    t0 = time.perf_counter()
    graphs = [("petersen", gr.petersen())] + cubic_girth5(20)
    worst = -math.inf
    failures = []
    for name, g in graphs:
        assert g.girth >= 5 and g.max_degree == 3 and g.n <= 16
        poly = chromatic_dc(g)
        for c in (SOKAL_C, 8.0):
            cd = Fraction(str(c)) * g.max_degree
            for q in _q_points(cd):
                est = girth_estimate(g, q, c, poly=poly)
                slack = est.error - est.bound
                worst = max(worst, slack)
                if not est.holds(1e-9):
                    failures.append((name, c, str(q)))
    return not failures, (f"{len(graphs)} graphs x 5 q x C in (7.963907, 8); failures={len(failures)}; "
                          f"max(error - bound)={worst:.3g}; {_elapsed(t0)}")


def check_8():
    t0 = time.perf_counter()
    ok = tube_chromatic(1) == cycle_polynomial(4)
    bad = [n for n in (1, 2, 3, 4) if tube_chromatic(n) != chromatic_dc(gr.tube(n))]
    rng = random.Random(8)
    worst = 0.0
    for _ in range(100):
        n = rng.randint(1, 30)
        r = 20 * math.sqrt(rng.random())
        z = r * complex(math.cos(a := rng.uniform(0, 2 * math.pi)), math.sin(a))
        exact = tube_value(n, z)
        worst = max(worst, abs(tube_closed_form(n, z) - exact) / abs(exact))
    took = time.perf_counter() - t0
    ok = ok and not bad and worst <= 1e-8 and took < 300
    return ok, f"transfer matrix = deletion-contraction mismatches={bad}; closed form max rel err={worst:.2e}; {took:.1f}s"


_ROOTS: dict[str, tuple] = {}


def _corpus_roots():
    if not _ROOTS:
        for name, g in spectral_corpus():
            if g.n == 0:
                continue
            p = chromatic_dc(g)
            _ROOTS[name] = (g, p, find_roots(p, max_degree=40))
    return _ROOTS


def check_9():
    t0 = time.perf_counter()
    worst = 0.0
    bad = []
    for name, (g, p, m) in _corpus_roots().items():
        exact = power_sums_newton(chromatic_coefficients(p), 8)
        for k in range(1, 9):
            numeric = sum(mult * z ** k for z, mult in m.roots)
            err = abs(numeric - exact[k - 1]) / max(1, abs(exact[k - 1]))
            worst = max(worst, err)
            if err > 1e-6:
                bad.append((name, k, err))
    return not bad, f"{len(_ROOTS)} graphs, k <= 8; max relative error={worst:.2e}; failures={bad[:3]}; {_elapsed(t0)}"


def check_10():
    t0 = time.perf_counter()
    bad = []
    for n in range(1, 401):
        pp = power_sums_newton(chromatic_coefficients(path_polynomial(n)), 5)
        for k in range(1, 6):
            if abs(Fraction(pp[k - 1], n) - 1) > Fraction(2 * k, n):
                bad.append(("path", n, k))
        if n >= 3:
            pc = power_sums_newton(chromatic_coefficients(cycle_polynomial(n)), 5)
            for k in range(1, min(5, n - 2) + 1):
                if abs(Fraction(pc[k - 1], n) - 1) > Fraction(2 * k, n):
                    bad.append(("cycle", n, k))
    # exact integer ch_{T_n}(30); its natural log is accurate to double precision
    ent = {n: math.log(tube_value(n, 30)) / (4 * n) for n in range(50, 102)}
    steps = {n: abs(ent[n + 1] - ent[n]) for n in range(50, 101)}
    tube_ok = all(steps[n] < 1e-3 for n in range(50, 101))
    ref = tree_entropy(2, 3)
    cyc = max(abs(log_evaluate(cycle_polynomial(n), 3).real / n - ref) for n in range(100, 201))
    ok = not bad and tube_ok and cyc <= 1e-6
    return ok, (f"moment bound failures={len(bad)}; tube max |dt| for n in 50..100: {max(steps.values()):.2e}; "
                f"max |t_Cn(3) - ln 2| for n in 100..200: {cyc:.2e}; {_elapsed(t0)}")


def check_11():
    bad = []
    for name, (g, p, m) in _corpus_roots().items():
        rep = in_disc(m, SokalDisc(g.max_degree, SOKAL_C))
        if not rep["inside"]:
            bad.append((name, rep["max_modulus"], rep["radius"]))
    return not bad, f"{len(_ROOTS)} graphs; outside the disc: {bad}"


CHECKS = {i: globals()[f"check_{i}"] for i in range(1, 12)}


@pytest.mark.parametrize("number", sorted(CHECKS))
def test_criterion(number, record_acceptance):
    ok, detail = CHECKS[number]()
    record_acceptance(number, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for number, check in CHECKS.items():
        ok, detail = check()
        failed += not ok
        print(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}", flush=True)
    sys.exit(1 if failed else 0)
