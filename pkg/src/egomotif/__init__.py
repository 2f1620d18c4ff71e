"""Egocentric temporal motif mining for temporal networks.

Typical flow::

    g = load_edges("contacts.dat")
    result = mine(g, delta_t=300, k=2)
    result.report.motifs

See the ``gallery/`` scripts for worked examples.
"""

from .baselines import (
    canberra_distance,
    laplacian_distance,
    laplacian_spectrum,
    netsimile_distance,
    netsimile_embedding,
    netsimile_features,
)
from .distance import (
    DistanceMatrix,
    Embedding,
    cosine_distance,
    distance_matrix,
    embed,
    etm_distance,
    top_variance_motifs,
)
from .errors import (
    CanonicalityError,
    ComparisonError,
    EgomotifError,
    GenerationError,
    GraphTooShortError,
    ParameterError,
    ParseError,
    SignificanceError,
    ValidationError,
)
from .etn import Etn, Etns, build_etn, compute_etns, etn_isomorphic, etns_parse, layered_graph
from .miner import (
    CountTable,
    MiningParams,
    MiningResult,
    MotifReport,
    count_etn,
    count_snapshots,
    mine,
    null_ensemble_counts,
    select_motifs,
    shuffle_null,
)
from .synth import (
    evolve_temporal,
    gen_erdos_renyi,
    gen_scale_free,
    gen_small_world,
)
from .temporal_graph import (
    Snapshot,
    SnapshotSequence,
    StaticGraph,
    TemporalEdge,
    TemporalGraph,
    aggregate,
    egocentric_neighborhood,
    extract_snapshots,
    load_edges,
    weighted_aggregate,
    write_edges,
)

__version__ = "0.1.0"
