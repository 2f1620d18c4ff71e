"""Egocentric temporal neighbourhoods and their canonical signatures.

An ETN of order ``k`` records, for one ego and ``k + 1`` consecutive
snapshots, which neighbours are present in which slice. Each neighbour gets a
presence row of ``k + 1`` bits; the signature is the list of rows sorted
lexicographically and concatenated. Two ETNs have the same signature exactly
when their layered graphs are isomorphic, so the signature string doubles as
a hashable isomorphism class key.

Rows are kept as ``'0'``/``'1'`` strings. For bulk counting the miner works
with the same rows read as big-endian integers (``'110'`` -> 6); numeric
order on equal-length rows matches lexicographic order on the strings.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Hashable, Mapping, Sequence

import networkx as nx

from .errors import CanonicalityError, ParameterError, ParseError, ValidationError
from .temporal_graph import SnapshotSequence

__all__ = [
    "Etn",
    "Etns",
    "build_etn",
    "compute_etns",
    "etns_parse",
    "etn_isomorphic",
    "layered_graph",
    "masks_to_text",
]


def _check_order(k):
    if int(k) != k or k < 1:
        raise ParameterError(f"order k must be an integer >= 1, got {k!r}")


@dataclass(frozen=True)
class Etn:
    """Presence matrix of one egocentric temporal neighbourhood.

    ``presence`` maps neighbour id -> row string of length ``k + 1`` where
    character ``j`` is ``'1'`` iff the neighbour touches the ego in slice
    ``window_start + j``.
    """

    ego: Hashable
    window_start: int
    k: int
    presence: Mapping[Hashable, str] = field(default_factory=dict)

    def __post_init__(self):
        _check_order(self.k)
        rows = {u: str(r) for u, r in self.presence.items()}
        if self.ego in rows:
            raise ValidationError("the ego cannot appear in its own presence map")
        for u, r in rows.items():
            if len(r) != self.k + 1 or set(r) - {"0", "1"}:
                raise ValidationError(f"row for {u!r} must be {self.k + 1} bits, got {r!r}")
            if "1" not in r:
                raise ValidationError(f"row for {u!r} is all zeros")
        object.__setattr__(self, "presence", rows)

    def __len__(self):
        return len(self.presence)


@dataclass(frozen=True)
class Etns:
    """Canonical signature: sorted presence rows of equal length ``k + 1``."""

    k: int
    blocks: tuple[str, ...]

    @property
    def canonical_text(self) -> str:
        return "".join(self.blocks)

    def __str__(self):
        return self.canonical_text

    def __len__(self):
        return len(self.blocks)


def build_etn(seq: SnapshotSequence, ego, i: int, k: int) -> Etn:
    """ETN of ``ego`` over snapshots ``i .. i + k`` (0-based ``i``)."""
    _check_order(k)
    if not 0 <= i <= len(seq) - k - 1:
        raise IndexError(f"window {i}..{i + k} does not fit in {len(seq)} snapshots")
    bits: dict = {}
    for j in range(k + 1):
        for u in seq[i + j].neighbors(ego):
            bits.setdefault(u, ["0"] * (k + 1))[j] = "1"
    return Etn(ego, i, k, {u: "".join(r) for u, r in bits.items()})


def compute_etns(e: Etn) -> Etns:
    """Sort the neighbour rows and wrap them as a signature.

    Rows are already one per distinct neighbour with the ego excluded, so all
    that remains is the lexicographic sort. Equal rows are tallied first and
    only the distinct ones sorted: ``O(d + u log u)`` for ``d`` neighbours and
    ``u <= min(d, 2**(k+1))`` distinct rows.
    """
    tally = Counter(e.presence.values())
    blocks: list[str] = []
    for row in sorted(tally):
        blocks.extend([row] * tally[row])
    return Etns(e.k, tuple(blocks))


def etns_parse(text: str, k: int) -> Etns:
    """Inverse of :attr:`Etns.canonical_text`; rejects non-canonical strings."""
    _check_order(k)
    width = k + 1
    if len(text) % width:
        raise ParseError(f"signature length {len(text)} is not a multiple of {width}")
    if set(text) - {"0", "1"}:
        raise ParseError(f"signature {text!r} contains characters other than 0/1")
    blocks = tuple(text[i:i + width] for i in range(0, len(text), width))
    for b in blocks:
        if "1" not in b:
            raise ParseError(f"block {b!r} has no one-bit")
    if any(blocks[i] > blocks[i + 1] for i in range(len(blocks) - 1)):
        raise CanonicalityError(f"blocks of {text!r} are not in sorted order")
    return Etns(k, blocks)


def etn_isomorphic(e1: Etn, e2: Etn) -> bool:
    if e1.k != e2.k:
        raise ParameterError(f"cannot compare ETNs of order {e1.k} and {e2.k}")
    return compute_etns(e1).canonical_text == compute_etns(e2).canonical_text


def masks_to_text(masks: Sequence[int], k: int) -> str:
    """Render integer rows (already sorted ascending) as signature text."""
    fmt = f"0{k + 1}b"
    return "".join(format(x, fmt) for x in masks)


def layered_graph(e: Etn) -> nx.Graph:
    """Materialise the explicit layered graph of an ETN.

    Nodes are ``(id, slice)`` with a ``label`` attribute equal to the slice.
    The ego occurs in every slice; each neighbour occurrence is joined to the
    ego of its slice, and every occurrence is joined to the next occurrence of
    the same id, skipping slices where the id is absent.
    """
    G = nx.Graph()
    k = e.k
    ego = ("__ego__", e.ego)
    for j in range(k + 1):
        G.add_node((ego, j), label=j)
        if j:
            G.add_edge((ego, j - 1), (ego, j))
    for u, row in e.presence.items():
        slices = [j for j, c in enumerate(row) if c == "1"]
        for j in slices:
            G.add_node((u, j), label=j)
            G.add_edge((u, j), (ego, j))
        for a, b in zip(slices, slices[1:]):
            G.add_edge((u, a), (u, b))
    return G
