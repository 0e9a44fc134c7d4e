import itertools
import json
import random
from fractions import Fraction

import networkx as nx
import pytest

from chromaloc import graph as gr
from chromaloc.basis import (
    EMPTY_CODE,
    CapExceeded,
    HomLinearCombination,
    NotDisconnected,
    appendix_json,
    appendix_text,
    base_param,
    base_table,
    coefficient_formula,
    convolution_check,
    detach_check,
    emit_appendix,
    enumerate_class,
    enumerate_connected,
    graph_name,
    moment_formula,
    newton_expansion,
)
from chromaloc.chromatic import chromatic_coefficients, chromatic_dc
from chromaloc.spectra import power_sums_newton

from corpus import bounded_degree_graph

K2, K3, P3 = gr.complete(2), gr.complete(3), gr.path(3)
TWO_K2 = gr.disjoint_union(K2, K2)


def code(g):
    return gr.canonical_code(g)


def nx_connected_count(v):
    # networkx atlas lists every graph on up to 7 vertices once
    return sum(1 for h in nx.graph_atlas_g() if h.number_of_nodes() == v and v and nx.is_connected(h))


@pytest.mark.parametrize("v", range(1, 7))
def test_connected_enumeration_matches_atlas(v):
    assert len(enumerate_connected(v)) == nx_connected_count(v)


def test_small_classes():
    assert [code(e.representative) for e in enumerate_class(1)] == [code(K2)]
    assert {e.code for e in enumerate_class(2)} == {code(P3), code(K3), code(TWO_K2)}


@pytest.mark.parametrize("k", range(1, 6))
def test_class_structure(k):
    entries = enumerate_class(k)
    assert len({e.code for e in entries}) == len(entries)
    for e in entries:
        g = e.representative
        assert g.n - len(g.components) == k
        assert all(len(c) > 1 for c in g.components)
        assert k + 1 <= g.n <= 2 * k
        assert e.aut == gr.automorphism_count(g)


def test_class_cap():
    with pytest.raises(CapExceeded):
        enumerate_class(7)
    with pytest.raises(CapExceeded):
        base_table(6)


def test_base_parameter_examples():
    assert base_param(1, K2) == Fraction(1, 2)
    assert base_param(1, P3) == 0
    assert base_param(2, TWO_K2) == Fraction(1, 8)
    with pytest.raises(ValueError):
        base_param(1, gr.edgeless(2))


def test_convolution_examples():
    rep = convolution_check([K2, K2], 2)
    assert rep and rep.lhs == rep.rhs == Fraction(1, 8)
    assert convolution_check([K2, K3], 3)
    assert convolution_check([gr.cycle(4)], 4)


def test_detach_examples():
    rep = detach_check(TWO_K2, 2)
    assert rep and rep.lhs == Fraction(1, 4) and rep.rhs == Fraction(1, 4)
    assert detach_check(gr.disjoint_union(K2, K2, K2), 3)
    with pytest.raises(NotDisconnected):
        detach_check(K3, 2)


def test_coefficient_formula_examples():
    assert coefficient_formula(1).terms == {code(K2): Fraction(1, 2)}
    assert coefficient_formula(0).terms == {EMPTY_CODE: 1}
    assert coefficient_formula(2).evaluate(gr.complete(4)) == 11
    assert coefficient_formula(2).evaluate(gr.cycle(5)) == 10


def test_moment_formula_examples():
    assert moment_formula(1).terms == {code(K2): Fraction(1, 2)}
    g = gr.petersen()
    p = power_sums_newton(chromatic_coefficients(chromatic_dc(g)), 4)
    assert moment_formula(4).evaluate(g) == p[3]


@pytest.mark.parametrize("k", range(1, 6))
def test_moment_formula_is_connected_and_scaled(k):
    f = moment_formula(k)
    assert f.connected_only()
    table = base_table(k)
    for c, v in f.terms.items():
        assert v == (-1) ** (k - 1) * k * table[c]
    assert f.meta["cancelled_disconnected"] > 0 or k == 1


@pytest.mark.parametrize("k", range(1, 6))
def test_newton_disconnected_terms_vanish(k):
    for c, v in newton_expansion(k).items():
        if not gr.graph_from_code(c).is_connected:
            assert v == 0


def test_formulas_on_random_graphs():
    rng = random.Random(50)
    es = [coefficient_formula(k) for k in range(5)]
    ps = [moment_formula(k) for k in range(1, 6)]
    for _ in range(50):
        h = bounded_degree_graph(rng, nmax=9, dmax=4)
        e = chromatic_coefficients(chromatic_dc(h)) + [0] * 6
        p = power_sums_newton(e, 5)
        assert [f.evaluate(h) for f in es] == e[:5]
        assert [f.evaluate(h) for f in ps] == p


def test_deterministic():
    a = appendix_json(emit_appendix(4))
    b = appendix_json(emit_appendix(4))
    assert a == b


def test_appendix_shape():
    tables = emit_appendix(5)
    assert sorted(tables["e"]) == [0, 1, 2, 3, 4]
    assert sorted(tables["p"]) == [0, 1, 2, 3, 4, 5]
    assert [(r["coefficient"], r["graph6"]) for r in tables["p"][1]] == [("1/2", "A_")]
    for row in tables["p"][5]:
        g = gr.parse_graph6(row["graph6"])
        assert g.is_connected and g.n <= 6
        assert len(row["edges"]) == g.m
    keys = [(r["n"], len(r["edges"]), r["graph6"]) for r in tables["e"][3]]
    assert [k[:2] for k in keys] == sorted(k[:2] for k in keys)
    json.loads(appendix_json(tables))
    assert "hom(T, G)" in appendix_text(tables)


def test_graph_names():
    assert graph_name(K3) == "K3"
    assert graph_name(gr.path(4)) == "P4"
    assert graph_name(gr.cycle(5)) == "C5"
    assert graph_name(gr.star(4)) == "K1,3"
    assert graph_name(TWO_K2) == "2K2"
    assert graph_name(gr.disjoint_union(K2, K3)) == "K2+K3"


def test_product_is_disjoint_union():
    a = HomLinearCombination({code(K2): Fraction(1, 2)}, "e", 1)
    prod = a * a
    assert prod == {code(TWO_K2): Fraction(1, 4)}
