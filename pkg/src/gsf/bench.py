"""Space-scaling sweeps for both sketches, with a log-log exponent fit."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .common_neighbor import CnConfig, cn_space_record, run_common_neighbor
from .cvd import CvdParams, sketch_stream
from .graph import Graph, complete_bipartite_graph
from .streams import Model, Stream, churn, graph_to_stream

CVD_EXPONENT_LIMIT = 2.3
CN_EXPONENT_SLACK = 1.3


def fit_exponent(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Slope of ``log y`` against ``log x`` by least squares."""
    if len(xs) < 2:
        return float("nan")
    slope, _ = np.polyfit(np.log(np.asarray(xs, float)), np.log(np.asarray(ys, float)), 1)
    return float(slope)


def planted_vc_graph(n: int, K: int, rng: random.Random, p: float = 0.5) -> Graph:
    """Random graph whose edges all touch a planted cover of ``K`` vertices."""
    cover = set(rng.sample(range(n), min(K, n)))
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if (u in cover or v in cover) and rng.random() < p
    ]
    return Graph(n, edges)


def churned_dea(g: Graph, rng: random.Random, extra: int) -> Stream:
    """DEA stream of ``g`` with ``extra`` absent edges inserted and later deleted."""
    order = list(range(g.n))
    rng.shuffle(order)
    s = graph_to_stream(g, Model.DEA, order, rng.getrandbits(32))
    absent = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)]
    rng.shuffle(absent)
    return churn(s, absent[:extra], rng.getrandbits(32))


@dataclass
class SweepResult:
    kind: str
    reports: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)


def cvd_sweep(n: int, Ks: Sequence[int], trials: int = 1, seed: int = 0,
              alpha: int = 16, beta: int = 10, churn_edges: int = 10) -> SweepResult:
    """Run the sampler grid for each ``K`` and record the words it holds."""
    rng = random.Random(seed)
    out = SweepResult("cvd")
    for K in Ks:
        for t in range(trials):
            g = planted_vc_graph(n, K, rng)
            stream = churned_dea(g, rng, churn_edges)
            params = CvdParams(n, K, 0, alpha, beta, rng.getrandbits(32))
            t0 = time.perf_counter()
            grid, h, failures = sketch_stream(stream, params)
            out.reports.append({
                "K": K, "n": n, "trial": t,
                "space_words": grid.space_words(),
                "allocated_words": grid.allocated_words(),
                "cells": grid.total_cells,
                "sketch_edges": h.m,
                "extraction_failures": failures,
                "wall_ms": round(1000 * (time.perf_counter() - t0), 3),
            })
    out.summary = _summarise(out.reports, "K", "space_words", CVD_EXPONENT_LIMIT)
    return out


def kkm_stream(K: int, m: int, rng: random.Random | None = None) -> Stream:
    """AL stream of ``K_{K,m}``; the ``K`` side is exposed first unless ``rng`` shuffles."""
    g = complete_bipartite_graph(K, m)
    order = list(range(g.n))
    seed = 0
    if rng is not None:
        rng.shuffle(order)
        seed = rng.getrandbits(32)
    return graph_to_stream(g, Model.AL, order, seed)


def cn_sweep(Ks: Sequence[int], ms: Sequence[int], d: int = 2, trials: int = 1,
             seed: int = 0, shuffle: bool = False) -> SweepResult:
    """Common-neighbour sketch on ``K_{K,m}`` with ``ell = (d+2)K``."""
    rng = random.Random(seed)
    out = SweepResult("cn")
    for K in Ks:
        cfg = CnConfig.for_pattern_degree(K, min(d, K))
        for m in ms:
            for t in range(trials):
                stream = kkm_stream(K, m, rng if shuffle else None)
                t0 = time.perf_counter()
                sk = run_common_neighbor(stream, cfg, check=False)
                rec = cn_space_record(sk, cfg)
                rec.update(K=K, m=m, d=cfg.d, ell=cfg.ell, trial=t,
                           wall_ms=round(1000 * (time.perf_counter() - t0), 3))
                out.reports.append(rec)
    out.summary = _summarise(out.reports, "K", "words", d + CN_EXPONENT_SLACK)
    by_m = {}
    for r in out.reports:
        by_m.setdefault(r["K"], {}).setdefault(r["m"], []).append(r["words"])
    out.summary["flat_in_m"] = all(
        len({max(v) for v in per_m.values()}) == 1 for per_m in by_m.values()
    )
    return out


def _summarise(reports: list[dict], xkey: str, ykey: str, limit: float) -> dict:
    peak: dict[int, int] = {}
    for r in reports:
        peak[r[xkey]] = max(peak.get(r[xkey], 0), r[ykey])
    xs = sorted(peak)
    exponent = fit_exponent(xs, [peak[x] for x in xs])
    return {
        "x": xkey,
        "peak": {str(x): peak[x] for x in xs},
        "exponent": None if np.isnan(exponent) else round(exponent, 4),
        "limit": limit,
        "within_limit": bool(np.isnan(exponent) or exponent <= limit),
    }
