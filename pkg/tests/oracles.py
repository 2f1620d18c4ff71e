"""Slow, obviously-correct reference implementations used only by tests.

Nothing here calls into the code paths it is meant to check: snapshots are
recomputed by direct interval tests, layered ETN graphs are built from
scratch, and isomorphism is decided by exhaustive bijection search or VF2.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import defaultdict

import networkx as nx
import numpy as np

EGO = "<ego>"


# ----------------------------------------------------------------------------
# explicit layered graphs


def layered_edges(presence: dict, k: int):
    """Node set and edge set of the layered ETN graph built from presence rows.

    Nodes are ``(id, slice)``; the ego uses the id ``EGO``.
    """
    nodes = {(EGO, j) for j in range(k + 1)}
    edges = {frozenset(((EGO, j), (EGO, j + 1))) for j in range(k)}
    for u, row in presence.items():
        occ = [j for j in range(k + 1) if row[j] == "1"]
        for j in occ:
            nodes.add((u, j))
            edges.add(frozenset(((u, j), (EGO, j))))
        for a, b in zip(occ, occ[1:]):
            edges.add(frozenset(((u, a), (u, b))))
    return nodes, edges


def brute_force_isomorphic(p1: dict, p2: dict, k: int) -> bool:
    """Try every bijection between neighbour ids (ego fixed to ego).

    A bijection induces the label-preserving node map ``(u, j) -> (pi(u), j)``;
    the graphs are isomorphic under it when node and edge sets coincide.
    """
    if len(p1) != len(p2):
        return False
    n1, e1 = layered_edges(p1, k)
    n2, e2 = layered_edges(p2, k)
    if len(n1) != len(n2) or len(e1) != len(e2):
        return False
    ids1 = list(p1)
    ids2 = list(p2)
    for perm in itertools.permutations(ids2):
        pi = dict(zip(ids1, perm))
        pi[EGO] = EGO
        mapped_nodes = {(pi[u], j) for u, j in n1}
        if mapped_nodes != n2:
            continue
        mapped_edges = {frozenset((pi[a[0]], a[1]) for a in e) for e in e1}
        if mapped_edges == e2:
            return True
    return False


def to_nx(presence: dict, k: int) -> nx.Graph:
    nodes, edges = layered_edges(presence, k)
    G = nx.Graph()
    for n in nodes:
        G.add_node(n, label=n[1])
    G.add_edges_from(tuple(e) for e in edges)
    return G


def vf2_isomorphic(p1: dict, p2: dict, k: int) -> bool:
    return nx.is_isomorphic(to_nx(p1, k), to_nx(p2, k),
                            node_match=lambda a, b: a["label"] == b["label"])


# ----------------------------------------------------------------------------
# random inputs


def random_presence(rng: random.Random, k: int, max_neighbors: int = 6, prefix="n") -> dict:
    d = rng.randint(0, max_neighbors)
    out = {}
    for i in range(d):
        row = "0" * (k + 1)
        while "1" not in row:
            row = "".join(rng.choice("01") for _ in range(k + 1))
        out[f"{prefix}{i}"] = row
    return out


def renamed(presence: dict, rng: random.Random) -> dict:
    items = list(presence.items())
    rng.shuffle(items)
    return {f"r{i}_{rng.randrange(10**6)}": row for i, (_, row) in enumerate(items)}


def random_temporal_edges(rng: random.Random, n_nodes: int, n_snapshots: int, delta_t: int,
                          p: float):
    """Edges on a unit grid: each pair active in each window with prob ``p``,
    with random sub-window jitter and occasional multi-window contacts."""
    edges = []
    nodes = [f"v{i}" for i in range(n_nodes)]
    for w in range(n_snapshots):
        for a, b in itertools.combinations(nodes, 2):
            if rng.random() < p:
                ts = w * delta_t + rng.randrange(delta_t)
                span = delta_t * rng.choice([0, 0, 0, 1, 2]) + rng.randrange(1, delta_t)
                edges.append((a, b, ts, ts + span))
    return edges


# ----------------------------------------------------------------------------
# snapshots and counting


def naive_snapshots(edges, delta_t: int, strict: bool = False):
    """List of adjacency dicts, one per window, by direct interval checks."""
    if not edges:
        return []
    t0 = min(e[2] for e in edges)
    nodes = {e[0] for e in edges} | {e[1] for e in edges}

    def member(e, t):
        ts, te = e[2], e[3]
        if strict:
            return t <= ts < t + delta_t or t <= te < t + delta_t
        if te == ts:
            return t <= ts < t + delta_t
        return ts < t + delta_t and te > t

    t_last = max(e[3] for e in edges)
    snaps = []
    i = 0
    while t0 + i * delta_t <= t_last:
        t = t0 + i * delta_t
        adj = {v: set() for v in nodes}
        for e in edges:
            if member(e, t):
                adj[e[0]].add(e[1])
                adj[e[1]].add(e[0])
        snaps.append(adj)
        i += 1
    # the grid stops at the last window that holds an edge
    while snaps and not any(snaps[-1].values()):
        snaps.pop()
    return snaps


def naive_count(edges, delta_t: int, k: int, strict: bool = False) -> dict:
    """Classify every ETN by explicit isomorphism and name each class.

    Classes are formed with WL-hash buckets refined by VF2. A class is named
    by its representative's sorted presence rows; the caller checks that the
    names are distinct, so a naming collision between non-isomorphic classes
    would surface as a failure.
    """
    snaps = naive_snapshots(edges, delta_t, strict)
    m = len(snaps)
    reps = defaultdict(list)  # wl hash -> [(graph, name, count-cell)]
    for i in range(m - k):
        for v, nb in snaps[i].items():
            if not nb:
                continue
            pres = {}
            for j in range(k + 1):
                for u in snaps[i + j][v]:
                    pres.setdefault(u, ["0"] * (k + 1))[j] = "1"
            pres = {u: "".join(r) for u, r in pres.items()}
            G = to_nx(pres, k)
            h = nx.weisfeiler_lehman_graph_hash(G, node_attr="label")
            for entry in reps[h]:
                if nx.is_isomorphic(entry[0], G, node_match=lambda a, b: a["label"] == b["label"]):
                    entry[2][0] += 1
                    break
            else:
                reps[h].append((G, "".join(sorted(pres.values())), [1]))
    out = {}
    for bucket in reps.values():
        for _, name, cell in bucket:
            assert name not in out, f"two non-isomorphic classes share the name {name}"
            out[name] = cell[0]
    return out


# ----------------------------------------------------------------------------
# linear algebra


def charpoly_roots(L: np.ndarray) -> np.ndarray:
    """Eigenvalues via the exact characteristic polynomial (sympy).

    Entries are converted to exact rationals and the polynomial is solved in
    radicals, which is always possible for n <= 4 and copes with repeated
    roots (several zero eigenvalues) where numeric root finders struggle.
    """
    import sympy

    M = sympy.Matrix([[sympy.Rational(str(x)) for x in row] for row in L.tolist()])
    lam = sympy.symbols("lam")
    roots = sympy.roots(sympy.Poly(M.charpoly(lam).as_expr(), lam), multiple=True)
    assert len(roots) == L.shape[0], "characteristic polynomial not solved in radicals"
    return np.sort(np.array([complex(sympy.N(r, 40)).real for r in roots]))


def naive_netsimile(adj: dict) -> dict:
    """Per-node NetSimile features from plain neighbour sets."""
    def clustering(v):
        nb = adj[v]
        d = len(nb)
        if d < 2:
            return 0.0
        links = sum(1 for a, b in itertools.combinations(nb, 2) if b in adj[a])
        return 2 * links / (d * (d - 1))

    out = {}
    for v, nb in adj.items():
        d = len(nb)
        ego = nb | {v}
        inside = sum(1 for a, b in itertools.combinations(ego, 2) if b in adj[a])
        leaving = sum(1 for a in ego for b in adj[a] if b not in ego)
        outside = {b for a in ego for b in adj[a]} - ego
        out[v] = [
            d,
            clustering(v),
            (sum(len(adj[u]) for u in nb) / d) if d else 0.0,
            (sum(clustering(u) for u in nb) / d) if d else 0.0,
            inside,
            leaving,
            len(outside),
        ]
    return out


def isclose(a, b, tol=1e-12):
    return math.isclose(a, b, rel_tol=0, abs_tol=tol)
