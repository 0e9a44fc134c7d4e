"""Seeded graph samples shared by the test modules."""

import random

from chromaloc import graph as gr


def bounded_degree_graph(rng: random.Random, nmax: int = 9, dmax: int = 4) -> gr.SimpleGraph:
    n = rng.randint(1, nmax)
    density = rng.random()
    deg = [0] * n
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    edges = []
    for u, v in pairs:
        if rng.random() < density and deg[u] < dmax and deg[v] < dmax:
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
    return gr.from_edge_list(n, edges)


def few_edges_graph(rng: random.Random, max_edges: int = 20, nmax: int = 12) -> gr.SimpleGraph:
    n = rng.randint(1, nmax)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    k = rng.randint(0, min(max_edges, len(pairs)))
    return gr.from_edge_list(n, rng.sample(pairs, k))


def keystone_corpus(seed: int = 2024, count: int = 100) -> list[tuple[str, gr.SimpleGraph]]:
    rng = random.Random(seed)
    out = [(f"random-{i}", bounded_degree_graph(rng)) for i in range(count)]
    out.append(("petersen", gr.petersen()))
    out += [(f"path:{n}", gr.path(n)) for n in range(1, 9)]
    out += [(f"cycle:{n}", gr.cycle(n)) for n in range(3, 9)]
    out += [(f"tube:{n}", gr.tube(n)) for n in (1, 2)]
    return out


def cubic_girth5(count: int = 20) -> list[tuple[str, gr.SimpleGraph]]:
    sizes = (10, 12, 14, 16)
    out = []
    for i in range(count):
        n = sizes[i % len(sizes)]
        out.append((f"random-regular:3,{n},5 seed={i}", gr.random_regular(3, n, 5, seed=i)))
    return out


def spectral_corpus() -> list[tuple[str, gr.SimpleGraph]]:
    """Everything whose roots the suite computes: degree at most 40."""
    out = keystone_corpus()
    out += [(f"cycle:{n}", gr.cycle(n)) for n in (12, 20, 30, 40)]
    out += [(f"path:{n}", gr.path(n)) for n in (20, 40)]
    out += [(f"tube:{n}", gr.tube(n)) for n in (3, 4)]
    out += [(f"complete:{n}", gr.complete(n)) for n in (5, 8)]
    out += [("torus:2,4", gr.torus(2, 4)), ("box:2,4", gr.box(2, 4))]
    out += cubic_girth5(8)
    return out
