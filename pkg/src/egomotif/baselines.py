"""Non-egocentric reference distances: NetSimile, modified NetSimile and the
weighted Laplacian spectral distance."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .distance import DistanceMatrix
from .errors import ParameterError
from .temporal_graph import (
    StaticGraph,
    TemporalGraph,
    aggregate,
    extract_snapshots,
    weighted_aggregate,
)

__all__ = [
    "FEATURE_NAMES",
    "AGGREGATORS",
    "NodeFeatureTable",
    "FeatureEmbedding",
    "netsimile_features",
    "netsimile_embedding",
    "canberra_distance",
    "netsimile_distance",
    "laplacian_matrix",
    "laplacian_spectrum",
    "laplacian_distance",
    "baseline_distance_matrix",
]

FEATURE_NAMES = (
    "degree",
    "clustering",
    "avg_neighbor_degree",
    "avg_neighbor_clustering",
    "egonet_edges",
    "egonet_out_edges",
    "egonet_neighbors",
    "active_snapshots",
)
AGGREGATORS = ("median", "mean", "std", "skewness", "kurtosis")


@dataclass(frozen=True)
class NodeFeatureTable:
    nodes: tuple
    values: np.ndarray  # (n_nodes, 7 or 8)

    @property
    def names(self) -> tuple[str, ...]:
        return FEATURE_NAMES[: self.values.shape[1]]

    def column(self, name: str) -> np.ndarray:
        return self.values[:, self.names.index(name)]


@dataclass(frozen=True)
class FeatureEmbedding:
    values: np.ndarray

    def __len__(self):
        return len(self.values)


def netsimile_features(g: StaticGraph, temporal: TemporalGraph | None = None,
                       delta_t: int | None = None, modified: bool | None = None,
                       strict: bool = False) -> NodeFeatureTable:
    """Per-node NetSimile features on the (unweighted) aggregate graph.

    The eighth feature, number of snapshots of width ``delta_t`` in which the
    node has a contact, is added when ``modified`` is true (default: whenever
    ``temporal`` is given).
    """
    if modified is None:
        modified = temporal is not None
    if modified and (temporal is None or delta_t is None):
        raise ParameterError("the modified feature set needs the temporal graph and delta_t")
    A = g.adjacency(weighted=False)
    A.data[:] = 1.0
    n = g.n_nodes
    deg = np.asarray(A.sum(axis=1)).ravel()
    tri = np.asarray((A @ A).multiply(A).sum(axis=1)).ravel() / 2
    pairs = deg * (deg - 1)
    clust = np.divide(2 * tri, pairs, out=np.zeros(n), where=deg >= 2)
    nbr_deg = np.divide(A @ deg, deg, out=np.zeros(n), where=deg > 0)
    nbr_clust = np.divide(A @ clust, deg, out=np.zeros(n), where=deg > 0)
    ego_edges = deg + tri
    ego_out = (A @ deg + deg) - 2 * ego_edges
    B = (A + sp.identity(n, format="csr")).tocsr()
    B.data[:] = 1.0
    reach2 = (B @ B).tocsr()
    ego_nbrs = np.diff(reach2.indptr) - np.diff(B.indptr)
    cols = [deg, clust, nbr_deg, nbr_clust, ego_edges, ego_out, ego_nbrs]
    if modified:
        cols.append(_active_snapshots(g, temporal, delta_t, strict))
    return NodeFeatureTable(g.nodes, np.column_stack(cols).astype(float))


def _active_snapshots(g: StaticGraph, temporal: TemporalGraph, delta_t: int, strict: bool) -> np.ndarray:
    seq = extract_snapshots(temporal, delta_t, strict=strict)
    n = seq.n_nodes
    keys = np.unique(np.r_[seq.win * n + seq.src, seq.win * n + seq.dst])
    per_node = np.bincount(keys % n, minlength=n)
    if tuple(seq.nodes) == tuple(g.nodes):
        return per_node
    lookup = dict(zip(seq.nodes, per_node.tolist()))
    return np.array([lookup.get(x, 0) for x in g.nodes])


def _moments(x: np.ndarray) -> list[float]:
    mean = x.mean()
    std = x.std()
    if std > 0:
        z = (x - mean) / std
        skew = float(np.mean(z ** 3))
        kurt = float(np.mean(z ** 4))
    else:
        skew = kurt = 0.0
    return [float(np.median(x)), float(mean), float(std), skew, kurt]


def netsimile_embedding(t: NodeFeatureTable) -> FeatureEmbedding:
    """Median, mean, std, skewness and (non-excess) kurtosis of every feature.

    Feature-major order; population moments; zero-variance features give 0
    skewness and kurtosis.
    """
    if t.values.shape[0] == 0:
        raise ParameterError("cannot embed a graph without nodes")
    out = []
    for col in t.values.T:
        out.extend(_moments(col))
    return FeatureEmbedding(np.array(out))


def canberra_distance(a: FeatureEmbedding, b: FeatureEmbedding) -> float:
    x = np.asarray(getattr(a, "values", a), dtype=float)
    y = np.asarray(getattr(b, "values", b), dtype=float)
    if x.shape != y.shape:
        raise ParameterError(f"embedding lengths differ: {len(x)} vs {len(y)}")
    num = np.abs(x - y)
    den = np.abs(x) + np.abs(y)
    return float(np.sum(np.divide(num, den, out=np.zeros_like(num), where=den > 0)))


def netsimile_distance(g1: TemporalGraph, g2: TemporalGraph, modified: bool = False,
                       delta_t: int = 300, strict: bool = False) -> float:
    e = []
    for g in (g1, g2):
        feats = netsimile_features(aggregate(g), g if modified else None, delta_t, modified, strict)
        e.append(netsimile_embedding(feats))
    return canberra_distance(*e)


def laplacian_matrix(g: StaticGraph) -> np.ndarray:
    """Dense ``D - W`` using edge weights (unit weights when unweighted)."""
    W = g.adjacency(weighted=True).toarray()
    return np.diag(W.sum(axis=1)) - W


def laplacian_spectrum(g: StaticGraph) -> np.ndarray:
    """Eigenvalues of ``D - W`` in ascending order."""
    if g.n_nodes == 0:
        return np.empty(0)
    return np.linalg.eigvalsh(laplacian_matrix(g))


def laplacian_distance(g1: TemporalGraph, g2: TemporalGraph, delta_t: int = 300,
                       largest: bool = False, strict: bool = False) -> float:
    """Euclidean distance between the first ``min(n1, n2)`` Laplacian eigenvalues.

    Weights count active snapshots per pair. ``largest=True`` compares the
    top of both spectra instead of the bottom.
    """
    if g1.is_empty() or g2.is_empty():
        raise ParameterError("laplacian distance needs non-empty graphs")
    s1 = laplacian_spectrum(weighted_aggregate(g1, delta_t, strict))
    s2 = laplacian_spectrum(weighted_aggregate(g2, delta_t, strict))
    k = min(len(s1), len(s2))
    if largest:
        a, b = s1[::-1][:k], s2[::-1][:k]
    else:
        a, b = s1[:k], s2[:k]
    return float(np.linalg.norm(a - b))


METHODS = ("netsimile", "netsimile-mod", "laplacian")


def baseline_distance_matrix(graphs: Sequence[TemporalGraph], method: str, delta_t: int = 300,
                             labels: Sequence[str] | None = None, strict: bool = False,
                             largest: bool = False) -> DistanceMatrix:
    if method not in METHODS:
        raise ParameterError(f"unknown baseline {method!r}; choose from {METHODS}")
    n = len(graphs)
    if n < 2:
        raise ParameterError("distance matrix needs at least two graphs")
    labels = list(labels) if labels is not None else [f"G{i}" for i in range(n)]
    D = np.zeros((n, n))
    if method == "laplacian":
        specs = [laplacian_spectrum(weighted_aggregate(g, delta_t, strict)) for g in graphs]
        if largest:
            specs = [x[::-1] for x in specs]
        for i in range(n):
            for j in range(i + 1, n):
                k = min(len(specs[i]), len(specs[j]))
                D[i, j] = D[j, i] = float(np.linalg.norm(specs[i][:k] - specs[j][:k]))
    else:
        modified = method == "netsimile-mod"
        embs = [netsimile_embedding(netsimile_features(aggregate(g), g if modified else None,
                                                       delta_t, modified, strict)) for g in graphs]
        for i in range(n):
            for j in range(i + 1, n):
                D[i, j] = D[j, i] = canberra_distance(embs[i], embs[j])
    return DistanceMatrix(labels, D)
