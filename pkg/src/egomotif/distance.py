"""Motif-count embeddings and distances between temporal graphs."""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ComparisonError, ParameterError
from .miner import CountTable, MiningParams, MiningResult, MotifReport, mine, null_seeds
from .temporal_graph import TemporalGraph

__all__ = [
    "Embedding",
    "DistanceMatrix",
    "UndefinedCosineError",
    "embed",
    "cosine_distance",
    "etm_distance",
    "top_variance_motifs",
    "distance_matrix",
]

log = logging.getLogger(__name__)


class UndefinedCosineError(ParameterError):
    """Cosine distance with an all-zero vector."""


@dataclass(frozen=True)
class Embedding:
    motif_list: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        if len(self.values) != len(self.motif_list):
            raise ParameterError("embedding values and motif list differ in length")


@dataclass
class DistanceMatrix:
    labels: list[str]
    values: np.ndarray
    diagnostics: list[str] = field(default_factory=list)

    def to_csv(self, path=None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + list(self.labels))
        for lab, row in zip(self.labels, self.values.tolist()):
            w.writerow([lab] + [repr(float(x)) for x in row])
        return _emit(buf.getvalue(), path)

    def to_json(self, path=None) -> str:
        obj = {"labels": list(self.labels), "matrix": self.values.tolist()}
        return _emit(json.dumps(obj) + "\n", path)

    @classmethod
    def from_json(cls, text) -> "DistanceMatrix":
        obj = json.loads(text)
        return cls(list(obj["labels"]), np.asarray(obj["matrix"], dtype=float))

    @classmethod
    def from_csv(cls, text) -> "DistanceMatrix":
        rows = list(csv.reader(io.StringIO(text)))
        labels = rows[0][1:]
        return cls(labels, np.array([[float(x) for x in r[1:]] for r in rows[1:]]))


def _emit(text, path):
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text


def embed(table: CountTable, motif_list: Sequence[str]) -> Embedding:
    motif_list = tuple(motif_list)
    if len(set(motif_list)) != len(motif_list):
        raise ParameterError("motif list contains duplicate signatures")
    values = np.array([table.counts.get(s, 0) for s in motif_list], dtype=float)
    return Embedding(motif_list, values)


def cosine_distance(a: Embedding, b: Embedding) -> float:
    """``1 - a.b / (|a| |b|)``, clipped to [0, 1] against rounding."""
    if a.motif_list != b.motif_list:
        raise ParameterError("embeddings use different motif lists")
    na, nb = np.linalg.norm(a.values), np.linalg.norm(b.values)
    if na == 0 or nb == 0:
        raise UndefinedCosineError("cosine distance undefined for an all-zero embedding")
    d = 1.0 - float(a.values @ b.values) / (na * nb)
    return min(1.0, max(0.0, d))


def etm_distance(report1: MotifReport, table1: CountTable, report2: MotifReport, table2: CountTable,
                 restrict_to: Sequence[str] | None = None, diagnostics: list | None = None) -> float:
    """Cosine distance over the motifs shared by both reports.

    ``restrict_to`` further limits the shared set (top-variance mode). An
    empty shared set or an all-zero restricted embedding gives 1.0 and a
    diagnostic.
    """
    if (report1.k, report1.delta_t) != (report2.k, report2.delta_t) or \
            (table1.k, table1.delta_t) != (table2.k, table2.delta_t) or \
            (report1.k, report1.delta_t) != (table1.k, table1.delta_t):
        raise ComparisonError("inputs were mined with different k or delta_t")
    shared = set(report1.motifs) & set(report2.motifs)
    if restrict_to is not None:
        shared &= set(restrict_to)
    motifs = sorted(shared)
    if not motifs:
        _diag(diagnostics, "no shared motifs; distance set to 1.0")
        return 1.0
    try:
        return cosine_distance(embed(table1, motifs), embed(table2, motifs))
    except UndefinedCosineError:
        _diag(diagnostics, "restricted embedding is all zero; distance set to 1.0")
        return 1.0


def _diag(sink, msg):
    log.warning(msg)
    if sink is not None:
        sink.append(msg)


def top_variance_motifs(tables: Sequence[CountTable], j: int, relative: bool = True,
                        diagnostics: list | None = None) -> list[str]:
    """The ``j`` signatures whose occurrence varies most across tables.

    Occurrence is count / total per table (raw counts with
    ``relative=False``); variance is the population variance. Ties go to the
    lexicographically smaller signature.
    """
    if j < 1:
        raise ParameterError("j must be >= 1")
    if len(tables) < 2:
        raise ParameterError("need at least two tables")
    if len({t.k for t in tables}) != 1:
        raise ComparisonError("tables were mined with different k")
    sigs = sorted(set().union(*(t.counts for t in tables)))
    if j > len(sigs):
        _diag(diagnostics, f"requested {j} motifs but only {len(sigs)} distinct signatures exist")
    if not sigs:
        return []
    X = np.array([[t.counts.get(s, 0) for s in sigs] for t in tables], dtype=float)
    if relative:
        tot = X.sum(axis=1, keepdims=True)
        X = np.divide(X, tot, out=np.zeros_like(X), where=tot > 0)
    var = X.var(axis=0)
    # stable sort on -var keeps lexicographic order among ties
    order = np.argsort(-var, kind="stable")
    return [sigs[i] for i in order[:j]]


def distance_matrix(graphs: Sequence[TemporalGraph | MiningResult], delta_t: int = 300, k: int = 4,
                    params: MiningParams | None = None, motif_mode: str | int = "all",
                    labels: Sequence[str] | None = None, relative: bool = True,
                    strict: bool = False, workers: int = 1) -> DistanceMatrix:
    """Pairwise ETM distances.

    Each graph is mined once with child seed ``i`` of ``params.seed``;
    pre-mined :class:`MiningResult` objects are used as they are. In
    ``motif_mode=j`` (or ``"top:j"``) only the ``j`` highest-variance motifs,
    computed over the per-graph motif tables, take part in every pair.
    """
    params = params or MiningParams()
    if len(graphs) < 2:
        raise ParameterError("distance matrix needs at least two graphs")
    top = _parse_mode(motif_mode)
    labels = list(labels) if labels is not None else [f"G{i}" for i in range(len(graphs))]
    if len(labels) != len(graphs):
        raise ParameterError("labels and graphs differ in length")
    seeds = null_seeds(params.seed, len(graphs))
    results = []
    for g, s in zip(graphs, seeds):
        if isinstance(g, MiningResult):
            results.append(g)
        else:
            results.append(mine(g, delta_t, k, params, strict=strict, workers=workers, seed=s))
    diags: list[str] = []
    restrict = None
    if top is not None:
        restrict = top_variance_motifs([r.report.motif_table() for r in results], top,
                                       relative=relative, diagnostics=diags)
    n = len(results)
    D = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            local: list[str] = []
            try:
                d = etm_distance(results[i].report, results[i].table,
                                 results[j].report, results[j].table, restrict, local)
            except Exception as exc:  # keep the matrix total
                local.append(f"{type(exc).__name__}: {exc}; distance set to 1.0")
                d = 1.0
            diags.extend(f"{labels[i]}-{labels[j]}: {m}" for m in local)
            D[i, j] = D[j, i] = d
    return DistanceMatrix(labels, D, diags)


def _parse_mode(mode) -> int | None:
    if mode in (None, "all"):
        return None
    if isinstance(mode, int):
        j = mode
    elif isinstance(mode, str) and mode.startswith("top:"):
        try:
            j = int(mode[4:])
        except ValueError:
            raise ParameterError(f"bad motif mode {mode!r}") from None
    else:
        raise ParameterError(f"bad motif mode {mode!r}")
    if j < 1:
        raise ParameterError("top-variance mode needs j >= 1")
    return j
