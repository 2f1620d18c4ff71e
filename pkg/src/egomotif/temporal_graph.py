"""Temporal graph model, edge-list ingestion and snapshot slicing.

A temporal graph is a node set plus a multiset of undirected temporal edges
``(u, v, t_start, t_end)``. Node labels are opaque; internally they are
interned to dense integers (sorted label order) and all heavy lifting is done
on numpy arrays.

Snapshots are cut on a grid anchored at ``t_min`` with width ``delta_t``. By
default an edge belongs to every window its interval overlaps; ``strict=True``
switches to the endpoint rule (start or end falls inside the window).
"""

from __future__ import annotations

import hashlib
import io
import os
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Mapping, NamedTuple

import numpy as np
import scipy.sparse as sp

from .errors import ParameterError, ParseError, ValidationError

__all__ = [
    "TemporalEdge",
    "TemporalGraph",
    "StaticGraph",
    "Snapshot",
    "SnapshotSequence",
    "load_edges",
    "write_edges",
    "extract_snapshots",
    "aggregate",
    "weighted_aggregate",
    "egocentric_neighborhood",
]

INSTANTANEOUS = "instantaneous"
INTERVAL = "interval"


def _label_key(x):
    return (type(x).__name__, x)


def _frozen(a, dtype=np.int64):
    a = np.ascontiguousarray(a, dtype=dtype)
    a.setflags(write=False)
    return a


class TemporalEdge(NamedTuple):
    u: Hashable
    v: Hashable
    t_start: int
    t_end: int


class TemporalGraph:
    """Immutable undirected temporal graph.

    ``edges`` may be any iterable of ``(u, v, t_start, t_end)``. Extra nodes
    without edges can be passed through ``nodes``. Each edge is stored with
    its endpoints in canonical (sorted) order; duplicates are kept.
    """

    __slots__ = ("nodes", "src", "dst", "t_start", "t_end", "_index")

    def __init__(self, edges: Iterable = (), nodes: Iterable[Hashable] | None = None):
        rows = [tuple(e) for e in edges]
        for row in rows:
            if len(row) != 4:
                raise ValidationError(f"temporal edge needs 4 fields, got {row!r}")
        labels = set(nodes) if nodes is not None else set()
        for u, v, _, _ in rows:
            labels.add(u)
            labels.add(v)
        node_tuple = tuple(sorted(labels, key=_label_key))
        index = {x: i for i, x in enumerate(node_tuple)}
        if rows:
            a = np.fromiter((index[r[0]] for r in rows), np.int64, len(rows))
            b = np.fromiter((index[r[1]] for r in rows), np.int64, len(rows))
            ts = np.array([r[2] for r in rows], dtype=np.int64)
            te = np.array([r[3] for r in rows], dtype=np.int64)
        else:
            a = b = ts = te = np.empty(0, np.int64)
        self._init_arrays(node_tuple, a, b, ts, te, index)

    @classmethod
    def from_arrays(cls, nodes, src, dst, t_start, t_end) -> "TemporalGraph":
        """Build from integer endpoint arrays indexing into ``nodes``.

        ``nodes`` must already be in canonical sorted order.
        """
        g = cls.__new__(cls)
        nodes = tuple(nodes)
        g._init_arrays(nodes, np.asarray(src, np.int64), np.asarray(dst, np.int64),
                       np.asarray(t_start, np.int64), np.asarray(t_end, np.int64), None)
        return g

    def _init_arrays(self, nodes, a, b, ts, te, index):
        if np.any(a == b):
            i = int(np.flatnonzero(a == b)[0])
            raise ValidationError(f"self-loop on node {nodes[a[i]]!r}")
        if np.any(ts > te):
            i = int(np.flatnonzero(ts > te)[0])
            raise ValidationError(f"edge {i} has t_start {ts[i]} > t_end {te[i]}")
        if len(a) and (min(a.min(), b.min()) < 0 or max(a.max(), b.max()) >= len(nodes)):
            raise ValidationError("edge endpoint outside the node set")
        self.nodes = nodes
        self.src = _frozen(np.minimum(a, b))
        self.dst = _frozen(np.maximum(a, b))
        self.t_start = _frozen(ts)
        self.t_end = _frozen(te)
        self._index = index

    @property
    def node_index(self) -> Mapping[Hashable, int]:
        if self._index is None:
            self._index = {x: i for i, x in enumerate(self.nodes)}
        return self._index

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.src)

    def is_empty(self) -> bool:
        return self.n_edges == 0

    @property
    def t_min(self) -> int | None:
        return int(self.t_start.min()) if self.n_edges else None

    @property
    def t_max(self) -> int | None:
        return int(self.t_end.max()) if self.n_edges else None

    @property
    def edges(self) -> list[TemporalEdge]:
        n = self.nodes
        return [TemporalEdge(n[a], n[b], s, e) for a, b, s, e in
                zip(self.src.tolist(), self.dst.tolist(), self.t_start.tolist(), self.t_end.tolist())]

    def edge_multiset(self) -> list[TemporalEdge]:
        """Edges in sorted order, handy for equality checks."""
        return sorted(self.edges, key=lambda e: (_label_key(e.u), _label_key(e.v), e.t_start, e.t_end))

    def fingerprint(self) -> str:
        """SHA-256 of the canonical edge multiset; independent of row order."""
        order = np.lexsort((self.t_end, self.t_start, self.dst, self.src))
        h = hashlib.sha256()
        h.update(repr(self.nodes).encode())
        for arr in (self.src, self.dst, self.t_start, self.t_end):
            h.update(arr[order].tobytes())
        return h.hexdigest()

    def __repr__(self):
        return f"TemporalGraph(n_nodes={self.n_nodes}, n_edges={self.n_edges}, t=[{self.t_min}, {self.t_max}])"


@dataclass(frozen=True)
class StaticGraph:
    """Simple undirected graph over labelled nodes, optionally weighted.

    ``edges`` is an ``(E, 2)`` array of node indices with ``i < j``, sorted
    and duplicate-free. ``weights`` is aligned with ``edges`` when present.
    """

    nodes: tuple
    edges: np.ndarray
    weights: np.ndarray | None = None

    @classmethod
    def from_pairs(cls, nodes, pairs, weights=None) -> "StaticGraph":
        """Normalise index pairs: drop self-loops, merge duplicates (summing weights)."""
        nodes = tuple(nodes)
        p = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        w = None if weights is None else np.asarray(weights, dtype=np.int64).reshape(-1)
        keep = p[:, 0] != p[:, 1]
        p = p[keep]
        if w is not None:
            w = w[keep]
            if np.any(w < 0):
                raise ValidationError("edge weights must be nonnegative")
        lo, hi = np.minimum(p[:, 0], p[:, 1]), np.maximum(p[:, 0], p[:, 1])
        key = lo * max(len(nodes), 1) + hi
        uniq, inv = np.unique(key, return_inverse=True)
        edges = np.stack([uniq // max(len(nodes), 1), uniq % max(len(nodes), 1)], axis=1)
        if w is not None:
            w = np.bincount(inv, weights=w, minlength=len(uniq)).astype(np.int64)
        return cls(nodes, _frozen(edges.reshape(-1, 2)), None if w is None else _frozen(w))

    @classmethod
    def from_labelled_edges(cls, edges, nodes=()) -> "StaticGraph":
        edges = [tuple(e) for e in edges]
        labels = set(nodes)
        for u, v in edges:
            labels.update((u, v))
        node_tuple = tuple(sorted(labels, key=_label_key))
        idx = {x: i for i, x in enumerate(node_tuple)}
        return cls.from_pairs(node_tuple, [(idx[u], idx[v]) for u, v in edges])

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def edge_set(self) -> set[frozenset]:
        n = self.nodes
        return {frozenset((n[a], n[b])) for a, b in self.edges.tolist()}

    def adjacency(self, weighted: bool = False) -> sp.csr_matrix:
        n = self.n_nodes
        if weighted and self.weights is not None:
            w = self.weights.astype(float)
        else:
            w = np.ones(self.n_edges)
        a, b = self.edges[:, 0], self.edges[:, 1]
        m = sp.coo_matrix((np.r_[w, w], (np.r_[a, b], np.r_[b, a])), shape=(n, n))
        return m.tocsr()

    def degrees(self) -> np.ndarray:
        return np.bincount(self.edges.ravel(), minlength=self.n_nodes)

    def to_networkx(self):
        import networkx as nx

        G = nx.Graph()
        G.add_nodes_from(self.nodes)
        n = self.nodes
        if self.weights is None:
            G.add_edges_from((n[a], n[b]) for a, b in self.edges.tolist())
        else:
            G.add_weighted_edges_from((n[a], n[b], w) for (a, b), w in
                                      zip(self.edges.tolist(), self.weights.tolist()))
        return G


@dataclass(frozen=True)
class Snapshot:
    index: int
    t: int
    adjacency: Mapping[Hashable, frozenset]

    def neighbors(self, v) -> frozenset:
        return self.adjacency[v]

    def degree(self, v) -> int:
        return len(self.adjacency[v])


class SnapshotSequence:
    """Ordered static snapshots on a regular grid.

    Stored as sorted unique ``(window, u, v)`` rows with ``u < v``; individual
    :class:`Snapshot` objects are built on access.
    """

    __slots__ = ("nodes", "delta_t", "t0", "m", "win", "src", "dst", "_ptr")

    def __init__(self, nodes, delta_t, t0, m, win, src, dst):
        self.nodes = tuple(nodes)
        self.delta_t = delta_t
        self.t0 = t0
        self.m = int(m)
        self.win = _frozen(win)
        self.src = _frozen(src)
        self.dst = _frozen(dst)
        self._ptr = _frozen(np.searchsorted(self.win, np.arange(self.m + 1), side="left"))

    def __len__(self) -> int:
        return self.m

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    def start_time(self, i: int) -> int:
        return self.t0 + i * self.delta_t

    def edge_index_range(self, lo: int, hi: int) -> tuple[int, int]:
        """Row slice covering snapshots ``lo <= i < hi``."""
        lo = max(0, min(lo, self.m))
        hi = max(lo, min(hi, self.m))
        return int(self._ptr[lo]), int(self._ptr[hi])

    def snapshot_edges(self, i: int) -> np.ndarray:
        a, b = self.edge_index_range(i, i + 1)
        return np.stack([self.src[a:b], self.dst[a:b]], axis=1)

    def __getitem__(self, i: int) -> Snapshot:
        if i < 0:
            i += self.m
        if not 0 <= i < self.m:
            raise IndexError(f"snapshot {i} out of range for {self.m} snapshots")
        adj: dict = {x: set() for x in self.nodes}
        n = self.nodes
        for a, b in self.snapshot_edges(i).tolist():
            adj[n[a]].add(n[b])
            adj[n[b]].add(n[a])
        return Snapshot(i, self.start_time(i), {x: frozenset(s) for x, s in adj.items()})

    def __iter__(self) -> Iterator[Snapshot]:
        for i in range(self.m):
            yield self[i]

    def degree_matrix(self) -> np.ndarray:
        """``(m, n)`` array of node degrees per snapshot."""
        deg = np.zeros((self.m, self.n_nodes), dtype=np.int64)
        np.add.at(deg, (self.win, self.src), 1)
        np.add.at(deg, (self.win, self.dst), 1)
        return deg

    def permuted(self, perm) -> "SnapshotSequence":
        """Sequence whose position ``p`` holds old snapshot ``perm[p]``."""
        perm = np.asarray(perm, dtype=np.int64)
        if sorted(perm.tolist()) != list(range(self.m)):
            raise ParameterError("perm is not a permutation of the snapshot indices")
        inv = np.empty(self.m, dtype=np.int64)
        inv[perm] = np.arange(self.m)
        new_win = inv[self.win]
        order = np.argsort(new_win, kind="stable")
        return SnapshotSequence(self.nodes, self.delta_t, self.t0, self.m,
                                new_win[order], self.src[order], self.dst[order])

    def __repr__(self):
        return f"SnapshotSequence(m={self.m}, delta_t={self.delta_t}, n_nodes={self.n_nodes}, rows={len(self.win)})"


# ----------------------------------------------------------------------------
# ingestion


def _detect_split(line: str):
    if "\t" in line:
        return lambda s: s.split("\t")
    if "," in line:
        return lambda s: s.split(",")
    return str.split


def _read_text(source) -> str:
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            data = fh.read()
    elif isinstance(source, (bytes, bytearray)):
        data = bytes(source)
    else:
        data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return data


def _int_field(text, lineno, what):
    try:
        return int(text)
    except ValueError:
        try:
            f = float(text)
        except ValueError:
            raise ParseError(f"{what} {text!r} is not an integer", lineno) from None
        if not f.is_integer():
            raise ParseError(f"{what} {text!r} is not an integer", lineno)
        return int(f)


def load_edges(source, fmt: str = INSTANTANEOUS, resolution: int = 20, merge: bool = True) -> TemporalGraph:
    """Read a temporal edge list.

    ``source`` is a path, raw bytes or a (text or binary) file object.
    ``fmt="instantaneous"`` expects rows ``t u v`` and turns each into the
    contact ``[t, t + resolution)``; trailing columns (SocioPatterns class
    labels) are ignored. ``fmt="interval"`` expects ``u v t_start t_end``.
    Separators (tab, comma or spaces) are detected from the first data row;
    lines starting with ``#`` are skipped.

    With ``merge`` on, instantaneous contacts of the same pair that touch or
    overlap (next ``t`` <= previous ``t + resolution``) become one interval.
    """
    if fmt not in (INSTANTANEOUS, INTERVAL):
        raise ParameterError(f"unknown edge-list format {fmt!r}")
    if fmt == INSTANTANEOUS and resolution <= 0:
        raise ParameterError("resolution must be positive")
    text = _read_text(source)
    split = None
    us, vs, t0s, t1s = [], [], [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if split is None:
            split = _detect_split(line)
        fields = [f.strip() for f in split(line)]
        fields = [f for f in fields if f] if split is str.split else fields
        if fmt == INSTANTANEOUS:
            if len(fields) < 3:
                raise ParseError(f"expected 't u v', got {len(fields)} field(s)", lineno)
            t = _int_field(fields[0], lineno, "time")
            u, v = fields[1], fields[2]
            ts, te = t, t + resolution
        else:
            if len(fields) != 4:
                raise ParseError(f"expected 'u v t_start t_end', got {len(fields)} field(s)", lineno)
            u, v = fields[0], fields[1]
            ts = _int_field(fields[2], lineno, "t_start")
            te = _int_field(fields[3], lineno, "t_end")
            if ts > te:
                raise ValidationError(f"line {lineno}: t_start {ts} > t_end {te}")
        if not u or not v:
            raise ParseError("empty node identifier", lineno)
        if u == v:
            raise ValidationError(f"line {lineno}: self-loop on node {u!r}")
        us.append(u)
        vs.append(v)
        t0s.append(ts)
        t1s.append(te)

    labels = tuple(sorted(set(us) | set(vs), key=_label_key))
    index = {x: i for i, x in enumerate(labels)}
    a = np.fromiter((index[x] for x in us), np.int64, len(us))
    b = np.fromiter((index[x] for x in vs), np.int64, len(vs))
    ts = np.asarray(t0s, dtype=np.int64)
    te = np.asarray(t1s, dtype=np.int64)
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    if fmt == INSTANTANEOUS and merge and len(ts):
        lo, hi, ts, te = _merge_contacts(lo, hi, ts, te)
    return TemporalGraph.from_arrays(labels, lo, hi, ts, te)


def _merge_contacts(lo, hi, ts, te):
    order = np.lexsort((ts, hi, lo))
    lo, hi, ts, te = lo[order], hi[order], ts[order], te[order]
    # contacts share one length, so the previous row's end is the running end of its run
    new_pair = np.r_[True, (lo[1:] != lo[:-1]) | (hi[1:] != hi[:-1])]
    gap = np.r_[True, ts[1:] > te[:-1]]
    starts = np.flatnonzero(new_pair | gap)
    run_end = np.maximum.reduceat(te, starts)
    return lo[starts], hi[starts], ts[starts], run_end


def write_edges(g: TemporalGraph, dest=None, sep: str = " ") -> str:
    """Serialise ``g`` in interval format (``u v t_start t_end``).

    Rows are written in canonical sorted order so equal graphs produce equal
    bytes. Returns the text; also writes it when ``dest`` is a path or file.
    """
    buf = io.StringIO()
    for e in g.edge_multiset():
        buf.write(f"{e.u}{sep}{e.v}{sep}{e.t_start}{sep}{e.t_end}\n")
    text = buf.getvalue()
    if dest is not None:
        if isinstance(dest, (str, os.PathLike)):
            with open(dest, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            dest.write(text)
    return text


# ----------------------------------------------------------------------------
# snapshots and aggregation


def _window_ranges(g: TemporalGraph, delta_t: int, strict: bool):
    t0 = g.t_min
    first = (g.t_start - t0) // delta_t
    if strict:
        last = (g.t_end - t0) // delta_t
    else:
        # last window with start < t_end; point contacts stay in their own window
        last = np.where(g.t_end > g.t_start, -((t0 - g.t_end) // delta_t) - 1, first)
    return first, last


def extract_snapshots(g: TemporalGraph, delta_t: int, strict: bool = False) -> SnapshotSequence:
    """Slice ``g`` into snapshots of width ``delta_t`` anchored at ``t_min``.

    Edge ``(u, v, ts, te)`` is in window ``[t, t + delta_t)`` when
    ``ts < t + delta_t and te > t`` (zero-length contacts: when ``ts`` falls in
    the window). With ``strict=True`` membership is ``ts`` or ``te`` in the
    window instead, so windows strictly inside a long contact are skipped.
    The grid has as many windows as needed to cover every edge.
    """
    if not delta_t > 0:
        raise ParameterError(f"delta_t must be positive, got {delta_t}")
    if g.is_empty():
        raise ParameterError("cannot slice an empty temporal graph")
    first, last = _window_ranges(g, delta_t, strict)
    m = int(last.max()) + 1
    if strict:
        win = np.r_[first, last]
        a = np.r_[g.src, g.src]
        b = np.r_[g.dst, g.dst]
    else:
        span = last - first + 1
        rep = np.repeat(np.arange(len(first)), span)
        offs = np.arange(len(rep)) - np.repeat(np.cumsum(span) - span, span)
        win = first[rep] + offs
        a, b = g.src[rep], g.dst[rep]
    n = max(g.n_nodes, 1)
    key = np.unique((win * n + a) * n + b)
    win, rest = np.divmod(key, n * n)
    a, b = np.divmod(rest, n)
    return SnapshotSequence(g.nodes, delta_t, g.t_min, m, win, a, b)


def aggregate(g: TemporalGraph) -> StaticGraph:
    """Unweighted static graph with one edge per pair that ever interacted."""
    return StaticGraph.from_pairs(g.nodes, np.stack([g.src, g.dst], axis=1))


def weighted_aggregate(g: TemporalGraph, delta_t: int, strict: bool = False) -> StaticGraph:
    """Static graph weighted by the number of snapshots each pair is active in."""
    seq = extract_snapshots(g, delta_t, strict=strict)
    return weighted_from_snapshots(seq)


def weighted_from_snapshots(seq: SnapshotSequence) -> StaticGraph:
    pairs = np.stack([seq.src, seq.dst], axis=1)
    return StaticGraph.from_pairs(seq.nodes, pairs, np.ones(len(pairs), dtype=np.int64))


def egocentric_neighborhood(s: Snapshot, v) -> frozenset:
    """Neighbours of ``v`` in one snapshot; neighbour-neighbour edges are dropped."""
    try:
        return s.adjacency[v]
    except KeyError:
        raise KeyError(f"node {v!r} is not in the graph") from None

