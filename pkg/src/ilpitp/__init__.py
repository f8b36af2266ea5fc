"""Influence indices (ILP/ITP) under a degree-weighted linear threshold model.

Every node in turn seeds a deterministic cascade; the launching power of a
node is the share of the graph its cascade reaches and the target potential
is the share of seeds whose cascades reach it. The package also computes
baseline centralities for comparison and generates small-world test graphs.
"""
from __future__ import annotations

from .cascade import (
    CascadeResult,
    HurdleCoefficient,
    IndexTable,
    activation_test,
    cascade,
    compute_indices,
    fixpoint_oracle,
    fixpoint_oracle_all,
)
from .generators import WSParams, bidirected_count, orient, small_world, watts_strogatz
from .graph import DIRECTED, UNDIRECTED, Graph, GraphError, build
from .ingest import (
    IngestError,
    IngestOptions,
    IngestSummary,
    load_edge_list,
    load_zachary,
    write_edge_list,
    zachary_path,
)
from .metrics import (
    ConvergenceError,
    MetricTable,
    betweenness,
    closeness,
    compute_metrics,
    eccentricity,
    eigenvector_centrality,
    hits,
    pagerank,
    shortest_path_lengths,
)
from .report import (
    REPORT_SCHEMA,
    PartitionReport,
    ShortlistQuery,
    breaking_points,
    classify,
    duality_gaps,
    emit_report,
    format_summary,
    read_report_csv,
    report_document,
    shortlist,
    strong_influencer_pct,
)

__version__ = "0.1.0"

__all__ = [
    "CascadeResult", "HurdleCoefficient", "IndexTable", "activation_test", "cascade",
    "compute_indices", "fixpoint_oracle", "fixpoint_oracle_all",
    "WSParams", "bidirected_count", "orient", "small_world", "watts_strogatz",
    "DIRECTED", "UNDIRECTED", "Graph", "GraphError", "build",
    "IngestError", "IngestOptions", "IngestSummary", "load_edge_list", "load_zachary",
    "write_edge_list", "zachary_path",
    "ConvergenceError", "MetricTable", "betweenness", "closeness", "compute_metrics",
    "eccentricity", "eigenvector_centrality", "hits", "pagerank", "shortest_path_lengths",
    "REPORT_SCHEMA", "PartitionReport", "ShortlistQuery", "breaking_points", "classify",
    "duality_gaps", "emit_report", "format_summary", "read_report_csv", "report_document",
    "shortlist", "strong_influencer_pct",
]
