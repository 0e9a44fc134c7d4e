import itertools
import random

import networkx as nx
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from chromaloc import graph as gr
from chromaloc.chromatic import (
    BudgetExceeded,
    NotChromaticShape,
    chromatic_coefficients,
    chromatic_dc,
    chromatic_expansion,
    count_colorings,
    count_colorings_brute,
    cycle_polynomial,
    path_polynomial,
    shortest_cycle_edge,
    tree_polynomial,
)
from chromaloc.poly import IntPolynomial

from corpus import bounded_degree_graph

Z = IntPolynomial([0, 1])


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return gr.from_edge_list(n, chosen)


def nx_polynomial(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    expr = nx.chromatic_polynomial(h)
    poly = sympy.Poly(expr, *expr.free_symbols) if expr.free_symbols else None
    if poly is None:
        return IntPolynomial([int(expr)])
    return IntPolynomial([int(c) for c in reversed(poly.all_coeffs())])


def interpolate(values):
    """Integer polynomial through the points (q, values[q]), by sympy interpolation."""
    x = sympy.Symbol("x")
    expr = sympy.interpolate(list(enumerate(values)), x)
    poly = sympy.Poly(sympy.expand(expr), x)
    return IntPolynomial([int(c) for c in reversed(poly.all_coeffs())])


@pytest.mark.parametrize("seed", range(12))
def test_dc_matches_networkx(seed):
    g = bounded_degree_graph(random.Random(seed), nmax=7, dmax=4)
    assert chromatic_dc(g) == nx_polynomial(g)


@settings(max_examples=50, deadline=None)
@given(graphs())
def test_dc_matches_expansion(g):
    assert chromatic_dc(g) == chromatic_expansion(g)
    assert chromatic_expansion(g, method="naive") == chromatic_expansion(g)


@settings(max_examples=40, deadline=None)
@given(graphs(6), st.integers(0, 4))
def test_polynomial_counts_colourings(g, q):
    assert chromatic_dc(g)(q) == count_colorings_brute(g, q) == count_colorings(g, q)


def test_petersen_by_interpolation():
    g = gr.petersen()
    values = [count_colorings(g, q) for q in range(11)]
    assert chromatic_dc(g) == interpolate(values)


def test_petersen_small_values():
    p = chromatic_dc(gr.petersen())
    assert p(0) == p(1) == p(2) == 0
    assert p(3) == count_colorings_brute(gr.petersen(), 3)


@pytest.mark.parametrize("n", [1, 2, 5, 9])
def test_path_closed_form(n):
    assert chromatic_dc(gr.path(n)) == Z * (Z - 1) ** (n - 1) == path_polynomial(n)


@pytest.mark.parametrize("n", [3, 4, 7, 12])
def test_cycle_closed_form(n):
    assert chromatic_dc(gr.cycle(n)) == (Z - 1) ** n + (-1) ** n * (Z - 1) == cycle_polynomial(n)


def test_forest_closed_form():
    g = gr.disjoint_union(gr.star(5), gr.path(3), gr.edgeless(2))
    assert chromatic_dc(g) == tree_polynomial(g.n, g.m)


def test_complete_graph():
    assert chromatic_dc(gr.complete(6)) == IntPolynomial.falling(6)


def test_multiplicative_over_components():
    a, b = gr.cycle(5), gr.complete(4)
    assert chromatic_dc(gr.disjoint_union(a, b)) == chromatic_dc(a) * chromatic_dc(b)


def test_torus_against_colour_counts():
    g = gr.torus(2, 4)
    p = chromatic_dc(g)
    assert [p(q) for q in range(1, 6)] == [count_colorings(g, q) for q in range(1, 6)]


def test_budget():
    from chromaloc.chromatic import clear_cache
    clear_cache()
    with pytest.raises(BudgetExceeded):
        chromatic_dc(gr.torus(3, 3), budget=5)


def test_expansion_edge_cap():
    with pytest.raises(BudgetExceeded):
        chromatic_expansion(gr.petersen(), max_edges=10)


def test_coefficients():
    e = chromatic_coefficients(chromatic_dc(gr.cycle(5)))
    assert e == [1, 5, 10, 10, 4]
    with pytest.raises(NotChromaticShape):
        chromatic_coefficients(IntPolynomial([1, 1]))


def test_shortest_cycle_edge():
    assert shortest_cycle_edge(gr.path(4)) is None
    g = gr.disjoint_union(gr.cycle(6), gr.cycle(3))
    u, v = shortest_cycle_edge(g)
    assert u >= 6 and v >= 6
