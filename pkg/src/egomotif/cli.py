"""Command-line front end: ``egomotif mine | distance | generate``.

Data goes to files (or stdout when no ``--output`` is given); progress and
summaries go to stderr. Every command validates its inputs before writing
anything, and writes each output through a temporary file.

Exit codes: 0 success, 1 other failure, 2 usage error or missing input,
3 graph too short for the requested order.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from pathlib import Path

from .baselines import METHODS as BASELINE_METHODS, baseline_distance_matrix
from .distance import _parse_mode, distance_matrix
from .errors import EgomotifError, GraphTooShortError, ParameterError
from .miner import MiningParams, mine
from .synth import GeneratorConfig, generate
from .temporal_graph import INSTANTANEOUS, INTERVAL, load_edges, write_edges

log = logging.getLogger("egomotif")

EXIT_FAIL, EXIT_USAGE, EXIT_SHORT = 1, 2, 3


class _Usage(Exception):
    pass


def _add_input_opts(p, k_default):
    p.add_argument("--input", action="append", required=True, help="edge-list file (repeatable)")
    p.add_argument("--input-format", choices=[INSTANTANEOUS, INTERVAL], default=INSTANTANEOUS)
    p.add_argument("--resolution", type=int, default=20, help="contact length for instantaneous rows")
    p.add_argument("--merge-contacts", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--strict-windows", action="store_true",
                   help="window membership by start/end point instead of overlap")
    p.add_argument("--delta-t", type=int, default=300)
    p.add_argument("--k", type=int, default=k_default)
    p.add_argument("--alpha", type=float, default=0.01)
    p.add_argument("--beta", type=float, default=0.1)
    p.add_argument("--gamma", type=int, default=5)
    p.add_argument("--n-null", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count-ties", action="store_true",
                   help="null counts equal to the observed count also count as exceedances")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--output", help="output path (prefix for mine); stdout if omitted")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="egomotif", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mine", help="count ETN signatures and select motifs")
    _add_input_opts(p, k_default=2)

    p = sub.add_parser("distance", help="pairwise distance matrix between graphs")
    _add_input_opts(p, k_default=4)
    p.add_argument("--method", choices=("etm",) + BASELINE_METHODS, default="etm")
    p.add_argument("--motif-mode", default="all", help="'all' or 'top:<j>'")
    p.add_argument("--labels", help="comma-separated labels (default: file stems)")
    p.add_argument("--raw-variance", action="store_true",
                   help="rank top-variance motifs by raw counts instead of relative frequencies")
    p.add_argument("--largest-eigenvalues", action="store_true",
                   help="laplacian: compare the largest rather than the smallest eigenvalues")

    p = sub.add_parser("generate", help="synthetic temporal graph in interval format")
    p.add_argument("--topology", choices=["er", "sf", "sw"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=0.01, help="edge probability (er)")
    p.add_argument("--sf-alpha", type=float, default=0.41)
    p.add_argument("--sf-beta", type=float, default=0.54)
    p.add_argument("--sf-gamma", type=float, default=0.05)
    p.add_argument("--delta-in", type=float, default=0.2)
    p.add_argument("--delta-out", type=float, default=0.0)
    p.add_argument("--nn", type=int, default=2, help="ring neighbours (sw)")
    p.add_argument("--p-rewire", type=float, default=0.1)
    p.add_argument("--f", type=float, default=0.3)
    p.add_argument("--steps", type=int, default=301)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")
    return parser


def _atomic_write(path, text):
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_inputs(args):
    for path in args.input:
        if not os.path.isfile(path):
            raise _Usage(f"no such input: {path}")
    graphs = []
    for path in args.input:
        g = load_edges(path, args.input_format, args.resolution, args.merge_contacts)
        log.info("loaded %s: %d nodes, %d temporal edges", path, g.n_nodes, g.n_edges)
        graphs.append(g)
    return graphs


def _params(args) -> MiningParams:
    if args.delta_t <= 0:
        raise ParameterError("--delta-t must be positive")
    if args.k < 1:
        raise ParameterError("--k must be >= 1")
    if args.workers < 1:
        raise ParameterError("--workers must be >= 1")
    return MiningParams(args.alpha, args.beta, args.gamma, args.n_null, args.seed, args.count_ties)


def cmd_mine(args) -> int:
    params = _params(args)
    if len(args.input) != 1:
        raise _Usage("mine takes exactly one --input")
    (g,) = _load_inputs(args)
    if g.is_empty():
        raise GraphTooShortError(f"graph too short for order k={args.k}: no edges")
    res = mine(g, args.delta_t, args.k, params, strict=args.strict_windows, workers=args.workers)
    if args.format == "csv":
        counts_text, report_text = res.table.to_csv(), res.report.to_csv()
    else:
        counts_text, report_text = res.table.to_json(), res.report.to_json()
    if args.output:
        ext = args.format
        _atomic_write(f"{args.output}.counts.{ext}", counts_text)
        if ext == "csv":
            _atomic_write(f"{args.output}.counts.{ext}.meta.json",
                          json.dumps(res.table.metadata(), indent=2, sort_keys=True) + "\n")
        _atomic_write(f"{args.output}.report.{ext}", report_text)
    else:
        sys.stdout.write(report_text)
    print(f"nodes={g.n_nodes} edges={g.n_edges} snapshots={res.n_snapshots} "
          f"signatures={len(res.table)} motifs={len(res.report.motifs)}", file=sys.stderr)
    return 0


def cmd_distance(args) -> int:
    params = _params(args)
    if len(args.input) < 2:
        raise _Usage("distance needs at least two --input files")
    mode = _parse_mode(args.motif_mode)
    labels = args.labels.split(",") if args.labels else [Path(p).stem for p in args.input]
    if len(labels) != len(args.input):
        raise _Usage("--labels must name every input")
    graphs = _load_inputs(args)
    if args.method == "etm":
        dm = distance_matrix(graphs, args.delta_t, args.k, params, "all" if mode is None else mode,
                             labels, relative=not args.raw_variance, strict=args.strict_windows,
                             workers=args.workers)
    else:
        dm = baseline_distance_matrix(graphs, args.method, args.delta_t, labels, args.strict_windows,
                                      largest=args.largest_eigenvalues)
    for msg in dm.diagnostics:
        print(f"diagnostic: {msg}", file=sys.stderr)
    text = dm.to_csv() if args.format == "csv" else dm.to_json()
    if args.output:
        _atomic_write(args.output, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_generate(args) -> int:
    cfg = GeneratorConfig(args.topology, args.n, p=args.p, alpha=args.sf_alpha, beta=args.sf_beta,
                          gamma=args.sf_gamma, delta_in=args.delta_in, delta_out=args.delta_out,
                          nn=args.nn, p_rewire=args.p_rewire, f=args.f, steps=args.steps, seed=args.seed)
    g = generate(cfg)
    text = write_edges(g)
    if args.output:
        _atomic_write(args.output, text)
    else:
        sys.stdout.write(text)
    print(f"nodes={g.n_nodes} temporal_edges={g.n_edges} timestamps={args.steps}", file=sys.stderr)
    return 0


COMMANDS = {"mine": cmd_mine, "distance": cmd_distance, "generate": cmd_generate}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except _Usage as exc:
        print(f"egomotif: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GraphTooShortError as exc:
        print(f"egomotif: {exc}", file=sys.stderr)
        return EXIT_SHORT
    except (EgomotifError, OSError) as exc:
        print(f"egomotif: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
