import random

import pytest

from gsf.bench import churned_dea, planted_vc_graph
from gsf.cvd import CvdParams, build_grid, cvd_space_report, run_cvd, sketch_stream
from gsf.graph import (
    Graph,
    complete_graph,
    delete_vertices,
    disjoint_union,
    is_cluster_graph,
    path_graph,
)
from gsf.sketch import grid_space_words
from gsf.solvers import solve_cvd
from gsf.streams import EdgeDelete, EdgeInsert, Model, Stream, StreamError, graph_to_stream


def dea(g: Graph, seed: int = 0) -> Stream:
    return graph_to_stream(g, Model.DEA, edge_order_seed=seed)


def test_params_validation():
    with pytest.raises(ValueError):
        CvdParams(5, 2, 3)
    with pytest.raises(ValueError):
        CvdParams(3, 4, 0)
    with pytest.raises(ValueError):
        CvdParams(5, 2, 1, alpha=0)
    CvdParams(0, 0, 0)


def test_empty_graph():
    r = run_cvd(dea(Graph(5)), CvdParams(5, 0, 0))
    assert r.yes and r.solution.deletion_set == frozenset() and r.sketch_edges == 0


def test_two_triangles():
    g = disjoint_union(complete_graph(3), complete_graph(3))
    r = run_cvd(dea(g), CvdParams(6, 4, 0, alpha=4, beta=4))
    assert r.yes and r.solution.deletion_set == frozenset()


def test_p3_among_isolated_vertices():
    g = Graph(8, path_graph(3).edges)
    r = run_cvd(dea(g), CvdParams(8, 2, 1))
    assert r.yes and len(r.solution.deletion_set) == 1
    assert is_cluster_graph(delete_vertices(g, r.solution.deletion_set))


def test_two_p3s_need_two():
    g = disjoint_union(path_graph(3), path_graph(3))
    assert not run_cvd(dea(g), CvdParams(6, 2, 1)).yes
    assert run_cvd(dea(g), CvdParams(6, 2, 2)).yes


def test_deleted_edges_do_not_reach_the_solver():
    # a P3 whose middle edge is deleted again leaves a cluster graph
    s = Stream(Model.DEA, 4, (EdgeInsert(0, 1), EdgeInsert(1, 2), EdgeInsert(2, 3), EdgeDelete(1, 2)))
    r = run_cvd(s, CvdParams(4, 2, 0))
    assert r.yes and r.sketch_edges == 2


def test_malformed_stream_propagates():
    s = Stream(Model.DEA, 3, (EdgeDelete(0, 1),))
    with pytest.raises(StreamError):
        run_cvd(s, CvdParams(3, 1, 0))
    with pytest.raises(ValueError):
        run_cvd(dea(Graph(4)), CvdParams(5, 1, 0))


def test_determinism():
    rng = random.Random(4)
    g = planted_vc_graph(16, 3, rng)
    s = churned_dea(g, rng, 8)
    p = CvdParams(16, 3, 2, alpha=6, beta=6, seed=11)
    assert run_cvd(s, p) == run_cvd(s, p)


def test_report_serialises():
    d = run_cvd(dea(path_graph(3)), CvdParams(3, 1, 1, alpha=2, beta=2)).to_dict()
    assert d["answer"] == "YES" and len(d["solution"]) == 1
    assert {"space_words", "allocated_words", "sketch_edges", "extraction_failures"} <= d.keys()


# -- space --------------------------------------------------------------------------

def test_space_smallest_case():
    # one hash (2 words) and one cell over a 4-element edge universe: 4 levels
    # beyond level 0, three words each, plus three seed words
    assert cvd_space_report(CvdParams(2, 1, 0, alpha=1, beta=1)) == 2 + (3 * 5 + 3)


def test_cells_quadruple_when_k_doubles():
    ratios = []
    for K in (4, 16, 64, 256):
        small = build_grid(CvdParams(1024, K, 0)).total_cells
        big = build_grid(CvdParams(1024, 2 * K, 0)).total_cells
        ratios.append(big / small)
    assert all(a < b < 4 for a, b in zip(ratios, ratios[1:]))
    assert abs(ratios[-1] - 4) < 0.01


def test_default_space_matches_runtime_accounting():
    p = CvdParams(1024, 8, 0)
    assert cvd_space_report(p) == grid_space_words(1024, 8, 16, 10) == 65318720
    grid = build_grid(p)
    for u in range(8):
        grid.feed(u, u + 100, 1)
    assert grid.space_words() == cvd_space_report(p)
    assert grid.allocated_words() < grid.space_words()


# -- randomised behaviour -------------------------------------------------------------

def test_low_degree_edges_all_survive():
    # every vertex here has degree below 40K, so every edge must reach H
    rng = random.Random(5)
    full = trials = 0
    for K in (1, 2, 3):
        for t in range(15):
            g = planted_vc_graph(20, K, rng)
            _, h, _ = sketch_stream(churned_dea(g, rng, 10), CvdParams(20, K, 0, seed=t))
            assert h.edges <= g.edges
            full += h.edges == g.edges
            trials += 1
    assert full >= 0.9 * trials


def test_sketch_solution_never_harder_than_truth():
    # H is a subgraph of G, so a G-solution of size <= k also solves H
    rng = random.Random(6)
    for t in range(30):
        K = rng.randint(1, 3)
        g = planted_vc_graph(14, K, rng)
        k = rng.randint(0, K)
        truth = solve_cvd(g, k).yes
        r = run_cvd(churned_dea(g, rng, 6), CvdParams(14, K, k, alpha=4, beta=4, seed=t))
        if truth:
            assert r.yes


def test_exact_sampler_mode_recovers_graph():
    rng = random.Random(7)
    g = planted_vc_graph(12, 2, rng)
    _, h, fails = sketch_stream(churned_dea(g, rng, 5), CvdParams(12, 2, 0, alpha=2, beta=4), exact=True)
    assert fails == 0 and h.edges <= g.edges
