"""Counting ETN signatures, snapshot-shuffle null models and motif selection.

The counter never builds individual ETNs. For a block of windows it expands
every directed snapshot edge ``(ego, nbr)`` into the ``k + 1`` windows whose
span contains it, ORs the slice bits per ``(window, ego, nbr)``, sorts rows
inside each ``(window, ego)`` group and then deduplicates groups of equal
length with ``np.unique(axis=0)``. Work is proportional to the number of
snapshot edge rows times ``k + 1`` (plus sorting), with no per-window Python
overhead.
"""

from __future__ import annotations

import csv
import io
import json
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, asdict
from typing import Iterable, Sequence

import numpy as np

from .errors import ComparisonError, GraphTooShortError, ParameterError, SignificanceError
from .etn import etns_parse, masks_to_text
from .temporal_graph import SnapshotSequence, TemporalGraph, extract_snapshots

__all__ = [
    "CountTable",
    "MiningParams",
    "MotifRecord",
    "MotifReport",
    "MiningResult",
    "count_etn",
    "count_snapshots",
    "shuffle_null",
    "null_ensemble_counts",
    "null_seeds",
    "select_motifs",
    "mine",
]

# rows of expanded (window, ego, nbr) entries handled per block
BLOCK_ROWS = 1 << 21


@dataclass(frozen=True)
class CountTable:
    k: int
    delta_t: int
    counts: dict[str, int]
    source_hash: str | None = None

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def get(self, signature: str) -> int:
        return self.counts.get(signature, 0)

    def __len__(self):
        return len(self.counts)

    def validate(self):
        for s, c in self.counts.items():
            etns_parse(s, self.k)
            if c <= 0:
                raise ParameterError(f"count for {s!r} must be positive, got {c}")

    def scaled(self, factor: int) -> "CountTable":
        return CountTable(self.k, self.delta_t, {s: c * factor for s, c in self.counts.items()},
                          self.source_hash)

    def restricted(self, signatures: Iterable[str]) -> "CountTable":
        keep = set(signatures)
        return CountTable(self.k, self.delta_t, {s: c for s, c in self.counts.items() if s in keep},
                          self.source_hash)

    # serialisation -------------------------------------------------------

    def to_csv(self, path=None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["signature", "count"])
        for s in sorted(self.counts):
            w.writerow([s, self.counts[s]])
        text = buf.getvalue()
        if path is not None:
            _write(path, text)
            _write(_sidecar(path), json.dumps(self.metadata(), indent=2, sort_keys=True) + "\n")
        return text

    def metadata(self) -> dict:
        return {"k": self.k, "delta_t": self.delta_t, "source_hash": self.source_hash}

    @classmethod
    def from_csv(cls, path) -> "CountTable":
        with open(_sidecar(path), encoding="utf-8") as fh:
            meta = json.load(fh)
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.DictReader(fh))
        t = cls(int(meta["k"]), meta["delta_t"], {r["signature"]: int(r["count"]) for r in rows},
                meta.get("source_hash"))
        t.validate()
        return t

    def to_json(self, path=None) -> str:
        obj = {"k": self.k, "delta_t": self.delta_t,
               "counts": {s: self.counts[s] for s in sorted(self.counts)}}
        if self.source_hash is not None:
            obj["source_hash"] = self.source_hash
        text = json.dumps(obj, indent=1) + "\n"
        if path is not None:
            _write(path, text)
        return text

    @classmethod
    def from_json(cls, text_or_path) -> "CountTable":
        text = text_or_path
        if isinstance(text_or_path, os.PathLike) or not str(text_or_path).lstrip().startswith("{"):
            with open(text_or_path, encoding="utf-8") as fh:
                text = fh.read()
        obj = json.loads(text)
        t = cls(int(obj["k"]), obj["delta_t"], {s: int(c) for s, c in obj["counts"].items()},
                obj.get("source_hash"))
        t.validate()
        return t


def _sidecar(path) -> str:
    return os.fspath(path) + ".meta.json"


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


@dataclass(frozen=True)
class MiningParams:
    alpha: float = 0.01
    beta: float = 0.1
    gamma: int = 5
    n_null: int = 100
    seed: int = 0
    # count ties (null == observed) as exceedances
    count_ties: bool = False

    def __post_init__(self):
        if not 0 <= self.alpha <= 1:
            raise ParameterError(f"alpha must be in [0, 1], got {self.alpha}")
        if not 0 <= self.beta <= 1:
            raise ParameterError(f"beta must be in [0, 1], got {self.beta}")
        if int(self.gamma) != self.gamma or self.gamma < 1:
            raise ParameterError(f"gamma must be a positive integer, got {self.gamma}")
        if int(self.n_null) != self.n_null or self.n_null < 0:
            raise ParameterError(f"n_null must be a nonnegative integer, got {self.n_null}")


@dataclass(frozen=True)
class MotifRecord:
    signature: str
    count: int
    null_mean: float
    null_exceed_fraction: float
    is_motif: bool


@dataclass(frozen=True)
class MotifReport:
    k: int
    delta_t: int
    params: MiningParams
    records: tuple[MotifRecord, ...] = field(default_factory=tuple)

    @property
    def motifs(self) -> list[str]:
        return [r.signature for r in self.records if r.is_motif]

    def __getitem__(self, signature) -> MotifRecord:
        for r in self.records:
            if r.signature == signature:
                return r
        raise KeyError(signature)

    def __contains__(self, signature):
        return any(r.signature == signature for r in self.records)

    def motif_table(self) -> CountTable:
        """Counts of the selected motifs only."""
        return CountTable(self.k, self.delta_t, {r.signature: r.count for r in self.records if r.is_motif})

    def to_csv(self, path=None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["signature", "count", "null_mean", "null_exceed_fraction", "is_motif"])
        for r in self.records:
            w.writerow([r.signature, r.count, repr(float(r.null_mean)),
                        repr(float(r.null_exceed_fraction)), str(r.is_motif).lower()])
        text = buf.getvalue()
        if path is not None:
            _write(path, text)
        return text

    def to_json(self, path=None) -> str:
        obj = {"k": self.k, "delta_t": self.delta_t, "params": asdict(self.params),
               "records": [asdict(r) for r in self.records]}
        text = json.dumps(obj, indent=1) + "\n"
        if path is not None:
            _write(path, text)
        return text


# ----------------------------------------------------------------------------
# counting


def _count_block(seq: SnapshotSequence, k: int, lo: int, hi: int) -> Counter:
    """Signature counts (keyed by tuples of row masks) for windows ``lo <= i < hi``."""
    a, b = seq.edge_index_range(lo, hi + k)
    n = seq.n_nodes
    w = seq.win[a:b]
    ego = np.concatenate([seq.src[a:b], seq.dst[a:b]])
    nbr = np.concatenate([seq.dst[a:b], seq.src[a:b]])
    w = np.concatenate([w, w])
    keys, bits = [], []
    for off in range(k + 1):
        start = w - off
        ok = (start >= lo) & (start < hi)
        keys.append(((start[ok] - lo) * n + ego[ok]) * n + nbr[ok])
        bits.append(np.full(int(ok.sum()), 1 << (k - off), dtype=np.int64))
    keys = np.concatenate(keys)
    bits = np.concatenate(bits)
    out: Counter = Counter()
    if not len(keys):
        return out
    order = np.argsort(keys, kind="stable")
    keys, bits = keys[order], bits[order]
    first = np.flatnonzero(np.r_[True, keys[1:] != keys[:-1]])
    masks = np.bitwise_or.reduceat(bits, first)
    group = keys[first] // n
    order = np.lexsort((masks, group))
    group, masks = group[order], masks[order]
    gstart = np.flatnonzero(np.r_[True, group[1:] != group[:-1]])
    glen = np.diff(np.r_[gstart, len(group)])
    # ego must be active in the first slice of its window
    keep = masks[gstart + glen - 1] >= (1 << k)
    gstart, glen = gstart[keep], glen[keep]
    for d in np.unique(glen).tolist():
        sel = gstart[glen == d]
        rows = masks[sel[:, None] + np.arange(d)]
        uniq, cnt = np.unique(rows, axis=0, return_counts=True)
        for row, c in zip(uniq.tolist(), cnt.tolist()):
            out[tuple(row)] += c
    return out


def _blocks(seq: SnapshotSequence, k: int, n_windows: int, max_rows: int):
    """Split window indices into contiguous blocks of bounded expanded size."""
    per_win = np.diff(seq._ptr)[:n_windows + k].astype(np.int64) * 2 * (k + 1)
    # keys are (window, ego, nbr) packed into one int64
    max_windows = max(1, (1 << 62) // (seq.n_nodes ** 2 + 1))
    bounds = [0]
    acc = 0
    for i in range(n_windows):
        acc += int(per_win[i]) if i < len(per_win) else 0
        if (acc >= max_rows or i + 1 - bounds[-1] >= max_windows) and i + 1 < n_windows:
            bounds.append(i + 1)
            acc = 0
    bounds.append(n_windows)
    return list(zip(bounds[:-1], bounds[1:]))


def count_snapshots(seq: SnapshotSequence, k: int, workers: int = 1,
                    blocks: Sequence[tuple[int, int]] | None = None,
                    source_hash: str | None = None) -> CountTable:
    """Signature counts over every window of an existing snapshot sequence.

    ``blocks`` optionally fixes the window partition (mainly for tests); the
    result does not depend on it, nor on ``workers``.
    """
    if int(k) != k or k < 1:
        raise ParameterError(f"order k must be an integer >= 1, got {k!r}")
    m = len(seq)
    if m <= k:
        raise GraphTooShortError(f"graph too short for order k={k}: {m} snapshot(s)")
    n_windows = m - k
    if blocks is None:
        blocks = _blocks(seq, k, n_windows, BLOCK_ROWS)
    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(lambda lh: _count_block(seq, k, *lh), blocks))
    else:
        parts = [_count_block(seq, k, lo, hi) for lo, hi in blocks]
    total: Counter = Counter()
    for p in parts:
        total.update(p)
    row_text = [masks_to_text((x,), k) for x in range(1 << (k + 1))]
    counts = {"".join(map(row_text.__getitem__, key)): c for key, c in total.items()}
    return CountTable(k, seq.delta_t, dict(sorted(counts.items())), source_hash)


def count_etn(g: TemporalGraph, delta_t: int, k: int, strict: bool = False, workers: int = 1) -> CountTable:
    """Count ETN signatures of ``g`` for gap ``delta_t`` and order ``k``.

    Every window ``i`` of ``k + 1`` snapshots and every node with at least one
    neighbour in snapshot ``i`` contribute one ETN. Empty signatures never
    arise under that rule.
    """
    if g.is_empty():
        raise GraphTooShortError("graph too short for order k: empty graph has no snapshots")
    seq = extract_snapshots(g, delta_t, strict=strict)
    return count_snapshots(seq, k, workers=workers, source_hash=g.fingerprint())


# ----------------------------------------------------------------------------
# null models


def null_seeds(seed, n: int) -> list[np.random.SeedSequence]:
    """Independent child seeds ``0..n-1`` of a master seed."""
    root = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    return [np.random.SeedSequence(root.entropy, spawn_key=root.spawn_key + (j,)) for j in range(n)]


def shuffle_null(seq: SnapshotSequence, seed) -> SnapshotSequence:
    """Uniformly random reordering of the snapshots (Fisher-Yates)."""
    perm = np.random.default_rng(seed).permutation(len(seq))
    return seq.permuted(perm)


def null_ensemble_counts(g_or_seq, delta_t: int | None, k: int, n_null: int, seed,
                         strict: bool = False, workers: int = 1) -> list[CountTable]:
    """Count tables of ``n_null`` independently shuffled snapshot sequences.

    Accepts a temporal graph (sliced at ``delta_t``) or a ready sequence.
    Model ``j`` is shuffled with child seed ``j`` of ``seed``.
    """
    if isinstance(g_or_seq, SnapshotSequence):
        seq = g_or_seq
    else:
        if g_or_seq.is_empty():
            raise GraphTooShortError("graph too short for order k: empty graph has no snapshots")
        seq = extract_snapshots(g_or_seq, delta_t, strict=strict)
    if len(seq) <= k:
        raise GraphTooShortError(f"graph too short for order k={k}: {len(seq)} snapshot(s)")
    seeds = null_seeds(seed, n_null)

    def one(s):
        return count_snapshots(shuffle_null(seq, s), k)

    if workers > 1 and n_null > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(one, seeds))
    return [one(s) for s in seeds]


# ----------------------------------------------------------------------------
# significance


def select_motifs(observed: CountTable, nulls: Sequence[CountTable], params: MiningParams) -> MotifReport:
    """Flag over-represented signatures.

    For each observed signature with count ``N``: the exceedance fraction is
    the share of null tables with count ``> N`` (``>=`` with
    ``params.count_ties``), ``null_mean`` the mean null count. A motif needs
    fraction ``< alpha``, ``N - null_mean >= beta * null_mean`` and
    ``N >= gamma``.
    """
    for t in nulls:
        if t.k != observed.k or t.delta_t != observed.delta_t:
            raise ComparisonError("null tables were mined with different k or delta_t")
    if not nulls and params.alpha < 1:
        raise SignificanceError("cannot assess significance without null models")
    sigs = list(observed.counts)
    obs = np.array([observed.counts[s] for s in sigs], dtype=np.int64)
    if nulls:
        null = np.array([[t.counts.get(s, 0) for s in sigs] for t in nulls], dtype=np.int64)
        null = null.reshape(len(nulls), len(sigs))
        exceed = (null >= obs) if params.count_ties else (null > obs)
        frac = exceed.mean(axis=0)
        mean = null.mean(axis=0)
    else:
        frac = np.zeros(len(sigs))
        mean = np.zeros(len(sigs))
    is_motif = (frac < params.alpha) & (obs - mean >= params.beta * mean) & (obs >= params.gamma)
    records = tuple(
        MotifRecord(s, int(c), float(mu), float(f), bool(ok))
        for s, c, mu, f, ok in zip(sigs, obs.tolist(), mean.tolist(), frac.tolist(), is_motif.tolist())
    )
    records = tuple(sorted(records, key=lambda r: (-r.count, r.signature)))
    return MotifReport(observed.k, observed.delta_t, params, records)


@dataclass(frozen=True)
class MiningResult:
    table: CountTable
    nulls: tuple[CountTable, ...]
    report: MotifReport
    n_snapshots: int


def mine(g: TemporalGraph, delta_t: int, k: int, params: MiningParams | None = None,
         strict: bool = False, workers: int = 1, seed=None) -> MiningResult:
    """Count, build the null ensemble and select motifs in one go.

    ``seed`` overrides ``params.seed`` (a SeedSequence is accepted, which is
    how batch runs hand each graph its own derived stream).
    """
    params = params or MiningParams()
    if g.is_empty():
        raise GraphTooShortError("graph too short for order k: empty graph has no snapshots")
    seq = extract_snapshots(g, delta_t, strict=strict)
    table = count_snapshots(seq, k, workers=workers, source_hash=g.fingerprint())
    nulls = null_ensemble_counts(seq, delta_t, k, params.n_null,
                                 params.seed if seed is None else seed, workers=workers)
    report = select_motifs(table, nulls, params)
    return MiningResult(table, tuple(nulls), report, len(seq))
