from __future__ import annotations

import networkx as nx
import numpy as np
import pytest
from hypothesis import strategies as st

from secdom.graphs import Family, FamilyInstance, Graph, build_family

# criterion id -> (passed, detail); filled by test_acceptance, printed at the end
ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        passed, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {key}  {detail}")


def family_instances(max_vertices: int) -> list[FamilyInstance]:
    out = []
    for fam in Family:
        n = fam.min_n
        while fam.rows * n <= max_vertices:
            out.append(FamilyInstance(fam, n))
            n += 1
    return out


def random_graph(rng: np.random.Generator, max_vertices: int) -> Graph:
    n = int(rng.integers(1, max_vertices + 1))
    p = float(rng.uniform(0.15, 0.7))
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def to_networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from(g.edges())
    return h


def nx_secure(h: nx.Graph, s: set) -> bool:
    """Definition-level check written against networkx, independent of secdom."""

    def dominating(t: set) -> bool:
        return all(v in t or any(u in t for u in h[v]) for v in h)

    if not dominating(s):
        return False
    return all(
        v in s or any(w in s and dominating((s - {w}) | {v}) for w in h[v]) for v in h
    )


@st.composite
def graphs(draw, max_vertices: int = 8, min_vertices: int = 1) -> Graph:
    n = draw(st.integers(min_vertices, max_vertices))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@st.composite
def graph_and_mask(draw, max_vertices: int = 8):
    g = draw(graphs(max_vertices))
    mask = draw(st.integers(0, (1 << g.vertex_count) - 1))
    return g, mask


@pytest.fixture
def c4() -> Graph:
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


@pytest.fixture
def p3() -> Graph:
    return Graph.from_edges(3, [(0, 1), (1, 2)])


def prism_tile_set(inst: FamilyInstance):
    from secdom.domination import VertexSet

    cells = [(2, 1), (3, 2), (5, 1), (5, 2), (7, 1), (8, 2)]
    return VertexSet.of((inst.vertex_id(c, r) for c, r in cells), inst.vertex_count)


def family_graph(fam: Family, n: int) -> Graph:
    return build_family(FamilyInstance(fam, n))
