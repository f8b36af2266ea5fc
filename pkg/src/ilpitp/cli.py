"""Command-line front end.

Subcommands
-----------
compute   ILP/ITP indices and launcher/target partitions for one or more alphas
generate  seeded Watts-Strogatz graph, optionally partially oriented
metrics   baseline centrality table
report    indices, partitions and metrics in one file, plus a shortlist
all       like ``report`` but the graph may come from the generator flags
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from . import kernels
from .cascade import HurdleCoefficient, compute_indices
from .generators import WSParams, small_world
from .ingest import IngestError, IngestOptions, load_edge_list, write_edge_list
from .metrics import MetricTable, compute_metrics
from .report import (
    SORT_KEYS,
    ShortlistQuery,
    classify,
    emit_report,
    format_summary,
    shortlist,
)

log = logging.getLogger("ilpitp")


class UsageError(Exception):
    """Bad flag values or combinations; reported with exit status 2."""


def _alpha(text: str) -> HurdleCoefficient:
    try:
        return HurdleCoefficient.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _add_input(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--input", type=Path, required=required, help="edge-list file")
    p.add_argument("--undirected", action="store_true", help="store both arcs of every line")
    p.add_argument("--flip", action="store_true",
                   help="read each line 'i j' as the arc j -> i")
    p.add_argument("--string-labels", action="store_true",
                   help="accept non-numeric node labels")


def _add_generator(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=_positive_int, help="number of nodes")
    p.add_argument("--k", type=int, default=10, help="lattice degree (even, default 10)")
    p.add_argument("--p", type=float, default=0.3, help="rewiring probability (default 0.3)")
    p.add_argument("--orient", type=float, default=1.0,
                   help="share of edges kept bidirected (default 1.0)")


def _add_indices(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=_alpha, action="append", default=None,
                   help="hurdle coefficient; repeat for several values")
    p.add_argument("--classifier", choices=("gap", "threshold"), default="gap")
    p.add_argument("--threshold", type=float, default=None,
                   help="cut for the threshold classifier, or fallback for gap")
    p.add_argument("--workers", type=_positive_int, default=None,
                   help="worker threads (default: available CPUs)")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", type=Path, help="report file")
    p.add_argument("--format", choices=("csv", "json"), default=None,
                   help="report format (default: from --out suffix, else csv)")


def _add_backend(p: argparse.ArgumentParser) -> None:
    p.add_argument("--backend", choices=kernels.BACKENDS, default=None,
                   help=f"kernel implementation (default: {kernels.DEFAULT})")


def _add_shortlist(p: argparse.ArgumentParser) -> None:
    p.add_argument("--shortlist-class", choices=("launchers", "targets"), default="launchers")
    p.add_argument("--sort-key", choices=sorted(SORT_KEYS), default="degree_asc")
    p.add_argument("--limit", type=_positive_int, default=10)
    p.add_argument("--min-degree", type=int, default=None)
    p.add_argument("--max-degree", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ilpitp",
        description="Launching power and target potential of nodes under a "
                    "degree-weighted linear threshold model.")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="ILP/ITP indices and partitions")
    _add_input(p)
    _add_indices(p)
    _add_output(p)
    _add_backend(p)
    p.add_argument("--seed", type=int, default=None, help="rng seed recorded in the report")

    p = sub.add_parser("generate", help="seeded small-world graph")
    _add_generator(p)
    p.add_argument("--seed", type=int, default=0, help="rng seed (default 0)")
    p.add_argument("--emit", type=Path, required=True, help="edge-list file to write")

    p = sub.add_parser("metrics", help="baseline centrality metrics")
    _add_input(p)
    _add_output(p)
    _add_backend(p)
    p.add_argument("--eigenvector", choices=("accumulate", "power"), default="accumulate")

    for name, helptext in (("report", "indices, partitions, metrics and a shortlist"),
                           ("all", "full pipeline from a file or the generator")):
        p = sub.add_parser(name, help=helptext)
        _add_input(p, required=(name == "report"))
        if name == "all":
            _add_generator(p)
        _add_indices(p)
        _add_output(p)
        _add_backend(p)
        _add_shortlist(p)
        p.add_argument("--eigenvector", choices=("accumulate", "power"), default="accumulate")
        p.add_argument("--seed", type=int, default=None if name == "report" else 0,
                       help="rng seed (generator input) recorded in the report")
    return parser


# --------------------------------------------------------------------------

def _load(args, meta: dict):
    if args.undirected and args.flip:
        raise UsageError("--flip has no meaning together with --undirected")
    if not args.input.is_file():
        raise UsageError(f"input file not found: {args.input}")
    opts = IngestOptions(treat_as_undirected=args.undirected, flip_orientation=args.flip,
                         numeric_labels=not args.string_labels)
    g, summary = load_edge_list(args.input, opts)
    meta["input"] = str(args.input)
    meta["ingest"] = (f"read={summary.arcs_read} loops_removed={summary.loops_removed} "
                      f"duplicates_collapsed={summary.duplicates_collapsed} "
                      f"undirected={summary.undirected} flipped={summary.flipped}")
    print(summary.describe())
    return g


def _generate(args, meta: dict):
    params = WSParams(args.n, args.k, args.p, args.orient, args.seed)
    meta["generator"] = f"watts_strogatz n={args.n} k={args.k} p={args.p} orient={args.orient}"
    return small_world(params), params


def _graph(args, meta: dict):
    if getattr(args, "input", None) is not None:
        if getattr(args, "n", None) is not None:
            raise UsageError("give either --input or generator flags, not both")
        return _load(args, meta)
    if getattr(args, "n", None) is None:
        raise UsageError("an input file (--input) or generator flags (--n ...) are required")
    try:
        g, _ = _generate(args, meta)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return g


def _check_indices(args) -> list[HurdleCoefficient]:
    if not args.alpha:
        raise UsageError("at least one --alpha is required")
    if args.classifier == "threshold" and args.threshold is None:
        raise UsageError("--classifier threshold needs --threshold")
    return args.alpha


def _sections(g, args, alphas):
    workers = args.workers or os.cpu_count() or 1
    sections = []
    for a in alphas:
        indices = compute_indices(g, a, workers=workers, backend=args.backend)
        sections.append((indices, classify(indices, args.classifier, args.threshold)))
    return sections


def _format(args) -> str:
    if args.format:
        return args.format
    if args.out is not None and args.out.suffix.lower() == ".json":
        return "json"
    return "csv"


def _meta_common(args, meta: dict) -> dict:
    if getattr(args, "seed", None) is not None:
        meta["rng_seed"] = args.seed
    if getattr(args, "alpha", None):
        meta["alpha"] = " ".join(a.text for a in args.alpha)
    return meta


def _write(g, sections, metrics, args, meta) -> None:
    if args.out is None:
        return
    emit_report(g, sections, metrics, args.out, _format(args), _meta_common(args, meta))
    print(f"report written to {args.out}")


def cmd_compute(args) -> int:
    alphas = _check_indices(args)
    meta: dict = {}
    g = _load(args, meta)
    sections = _sections(g, args, alphas)
    print(format_summary(sections))
    _write(g, sections, None, args, meta)
    return 0


def cmd_generate(args) -> int:
    if args.n is None:
        raise UsageError("generate needs --n")
    meta: dict = {}
    try:
        g, params = _generate(args, meta)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    header = [meta["generator"], f"rng_seed: {args.seed}", f"name: {params.name}"]
    write_edge_list(g, args.emit, header, arcs=True)
    print(f"{params.name}: {g.n} nodes, {g.n_arcs} stored arcs written to {args.emit}")
    return 0


def _metric_rows(g, metrics: MetricTable, limit: int = 40) -> str:
    cols = MetricTable.columns()
    head = f"{'label':>8} " + " ".join(f"{c[:11]:>11}" for c in cols)
    lines = [head, "-" * len(head)]
    order = sorted(range(g.n), key=lambda i: g.labels[i])
    for i in order[:limit]:
        vals = []
        for c in cols:
            v = metrics.column(c)[i]
            vals.append(f"{int(v):>11d}" if c in ("degree", "eccentricity") else f"{v:11.4f}")
        lines.append(f"{str(g.labels[i]):>8} " + " ".join(vals))
    if g.n > limit:
        lines.append(f"... {g.n - limit} more rows in the report file")
    return "\n".join(lines)


def cmd_metrics(args) -> int:
    meta: dict = {}
    g = _load(args, meta)
    metrics = compute_metrics(g, eigenvector_method=args.eigenvector, backend=args.backend)
    print(_metric_rows(g, metrics))
    _write(g, [], metrics, args, meta)
    return 0


def cmd_report(args) -> int:
    alphas = _check_indices(args)
    q = ShortlistQuery(args.shortlist_class, args.sort_key, args.limit,
                       args.min_degree, args.max_degree)
    meta: dict = {}
    g = _graph(args, meta)
    sections = _sections(g, args, alphas)
    metrics = compute_metrics(g, eigenvector_method=args.eigenvector, backend=args.backend)
    print(format_summary(sections))
    for indices, rep in sections:
        picks = shortlist(indices, metrics, q, rep)
        labels = ", ".join(f"{g.labels[i]} (g={int(g.out_degree[i])})" for i in picks)
        print(f"alpha={rep.alpha.text} {q.cls} by {q.sort_key}: {labels or 'none'}")
    _write(g, sections, metrics, args, meta)
    return 0


COMMANDS = {
    "compute": cmd_compute,
    "generate": cmd_generate,
    "metrics": cmd_metrics,
    "report": cmd_report,
    "all": cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    except IngestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
