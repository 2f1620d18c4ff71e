"""Synthetic temporal graphs: a static seed topology evolved by repeated
degree-preserving double edge swaps.

Snapshot ``t + 1`` is snapshot ``t`` after ``ceil(f * |E| / 2)`` accepted
swaps, so every snapshot shares the degree sequence of the seed graph. Each
edge occurrence becomes a temporal edge ``(u, v, t, t + 1)``, which means
slicing at ``delta_t = 1`` gives the snapshots back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import networkx as nx
import numpy as np

from .errors import GenerationError, ParameterError
from .temporal_graph import StaticGraph, TemporalGraph

__all__ = [
    "GeneratorConfig",
    "gen_erdos_renyi",
    "gen_scale_free",
    "gen_small_world",
    "evolve_snapshots",
    "evolve_temporal",
    "generate",
]

# default scale-free parameters (Bollobas et al. growth model)
SCALE_FREE_DEFAULTS = dict(alpha=0.41, beta=0.54, gamma=0.05, delta_in=0.2, delta_out=0.0)


@dataclass(frozen=True)
class GeneratorConfig:
    topology: str  # "er", "sf" or "sw"
    n: int
    p: float = 0.01
    alpha: float = 0.41
    beta: float = 0.54
    gamma: float = 0.05
    delta_in: float = 0.2
    delta_out: float = 0.0
    nn: int = 2
    p_rewire: float = 0.1
    f: float = 0.3
    steps: int = 301
    seed: int = 0

    def __post_init__(self):
        if self.topology not in ("er", "sf", "sw"):
            raise ParameterError(f"unknown topology {self.topology!r}")
        if self.steps < 1:
            raise ParameterError("steps must be >= 1")
        if not 0 <= self.f <= 1:
            raise ParameterError("f must be in [0, 1]")


def _static(nodes_count: int, pairs) -> StaticGraph:
    return StaticGraph.from_pairs(tuple(range(nodes_count)), pairs)


def gen_erdos_renyi(n: int, p: float, seed=None) -> StaticGraph:
    """G(n, p): each of the ``n (n - 1) / 2`` pairs kept independently."""
    if n < 2:
        raise ParameterError("n must be >= 2")
    if not 0 <= p <= 1:
        raise ParameterError("p must be in [0, 1]")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(len(iu)) < p
    return _static(n, np.stack([iu[keep], ju[keep]], axis=1))


def gen_scale_free(n_target: int, alpha: float = 0.41, beta: float = 0.54, gamma: float = 0.05,
                   delta_in: float = 0.2, delta_out: float = 0.0, seed=None) -> StaticGraph:
    """Directed preferential-attachment growth, flattened to a simple graph."""
    if abs(alpha + beta + gamma - 1) > 1e-9:
        raise ParameterError(f"alpha + beta + gamma must be 1, got {alpha + beta + gamma}")
    if min(alpha, beta, gamma) < 0 or delta_in < 0 or delta_out < 0:
        raise ParameterError("probabilities and deltas must be nonnegative")
    if n_target < 2:
        raise ParameterError("n_target must be >= 2")
    G = nx.scale_free_graph(n_target, alpha=alpha, beta=beta, gamma=gamma,
                            delta_in=delta_in, delta_out=delta_out, seed=_int_seed(seed))
    return _static(G.number_of_nodes(), list(G.edges()))


def gen_small_world(n: int, nn: int, p_rewire: float, seed=None) -> StaticGraph:
    """Watts-Strogatz ring of ``nn`` nearest neighbours with rewiring."""
    if nn < 2 or nn % 2 or n <= nn:
        raise ParameterError("need n > nn >= 2 with nn even")
    if not 0 <= p_rewire <= 1:
        raise ParameterError("p_rewire must be in [0, 1]")
    G = nx.watts_strogatz_graph(n, nn, p_rewire, seed=_int_seed(seed))
    return _static(n, list(G.edges()))


def _int_seed(seed):
    if seed is None or isinstance(seed, (int, np.integer)):
        return seed
    return int(np.random.default_rng(seed).integers(2**31))


def evolve_snapshots(g0: StaticGraph, f: float = 0.3, steps: int = 301, seed=None,
                     budget_factor: int = 100) -> list[np.ndarray]:
    """Edge arrays of ``steps`` snapshots, the first being ``g0``.

    A swap picks two edges ``(a, b)``, ``(c, d)`` (orientation random) with
    four distinct endpoints and rewires them to ``(a, d)``, ``(c, b)``;
    attempts that would duplicate an edge are retried, up to
    ``budget_factor`` times the requested swap count per step.
    """
    if g0.n_edges < 2:
        raise ParameterError("need at least two edges to swap")
    if not 0 <= f <= 1:
        raise ParameterError("f must be in [0, 1]")
    if steps < 1:
        raise ParameterError("steps must be >= 1")
    rng = np.random.default_rng(seed)
    edges = [tuple(e) for e in g0.edges.tolist()]
    present = set(edges)
    n_edges = len(edges)
    swaps = math.ceil(f * n_edges / 2)
    budget = budget_factor * swaps
    out = [np.array(sorted(edges), dtype=np.int64)]
    for t in range(1, steps):
        done = tries = 0
        while done < swaps:
            if tries >= budget:
                raise GenerationError(f"swap budget exhausted at timestamp {t} "
                                      f"({done}/{swaps} swaps after {tries} attempts)")
            tries += 1
            i, j = rng.integers(n_edges, size=2)
            if i == j:
                continue
            a, b = edges[i]
            c, d = edges[j]
            if rng.random() < 0.5:
                c, d = d, c
            if len({a, b, c, d}) < 4:
                continue
            e1 = (min(a, d), max(a, d))
            e2 = (min(c, b), max(c, b))
            if e1 in present or e2 in present:
                continue
            present.discard(edges[i])
            present.discard(edges[j])
            present.add(e1)
            present.add(e2)
            edges[i], edges[j] = e1, e2
            done += 1
        out.append(np.array(sorted(edges), dtype=np.int64))
    return out


def evolve_temporal(g0: StaticGraph, f: float = 0.3, steps: int = 301, seed=None) -> TemporalGraph:
    snaps = evolve_snapshots(g0, f, steps, seed)
    src = np.concatenate([s[:, 0] for s in snaps])
    dst = np.concatenate([s[:, 1] for s in snaps])
    t = np.repeat(np.arange(len(snaps), dtype=np.int64), [len(s) for s in snaps])
    return TemporalGraph.from_arrays(g0.nodes, src, dst, t, t + 1)


def generate(cfg: GeneratorConfig) -> TemporalGraph:
    """Seed topology plus evolution, both driven by ``cfg.seed``."""
    topo_seed, evo_seed = np.random.SeedSequence(cfg.seed).spawn(2)
    if cfg.topology == "er":
        g0 = gen_erdos_renyi(cfg.n, cfg.p, topo_seed)
    elif cfg.topology == "sf":
        g0 = gen_scale_free(cfg.n, cfg.alpha, cfg.beta, cfg.gamma, cfg.delta_in, cfg.delta_out,
                            _int_seed(topo_seed))
    else:
        g0 = gen_small_world(cfg.n, cfg.nn, cfg.p_rewire, _int_seed(topo_seed))
    return evolve_temporal(g0, cfg.f, cfg.steps, evo_seed)
