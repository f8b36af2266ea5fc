"""Launcher/target partitions, breaking points, shortlists and report files."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from os import PathLike
from pathlib import Path

import numpy as np

from .cascade import HurdleCoefficient, IndexTable
from .graph import UNDIRECTED, Graph
from .metrics import MetricTable

GAP_FACTOR = 5.0

SORT_KEYS = {
    "degree_asc": ("degree", False),
    "degree_desc": ("degree", True),
    "betweenness_desc": ("betweenness", True),
    "pagerank_desc": ("pagerank", True),
    "closeness_desc": ("closeness", True),
}


@dataclass(frozen=True)
class PartitionReport:
    """Launcher and target classes for one hurdle value.

    ``mibp``/``mtbp`` are the smallest normalized ILP among launchers and
    ITP among targets (``None`` when the class is empty), with the raw
    counts alongside. ``gap_ilp``/``gap_itp`` are the widths of the gaps the
    classes were split at.
    """

    alpha: HurdleCoefficient
    n: int
    launchers: frozenset
    targets: frozenset
    mibp: float | None
    mtbp: float | None
    mibp_raw: int | None
    mtbp_raw: int | None
    gap_ilp: float
    gap_itp: float
    classifier: dict = field(default_factory=dict)
    diagnostics: tuple[str, ...] = ()

    @property
    def launcher_pct(self) -> float:
        return len(self.launchers) / self.n

    @property
    def target_pct(self) -> float:
        return len(self.targets) / self.n

    def summary(self) -> dict:
        return {
            "alpha": self.alpha.text,
            "launchers": len(self.launchers),
            "launcher_pct": self.launcher_pct,
            "mibp": self.mibp,
            "mibp_raw": self.mibp_raw,
            "targets": len(self.targets),
            "target_pct": self.target_pct,
            "mtbp": self.mtbp,
            "mtbp_raw": self.mtbp_raw,
            "gap_ilp": self.gap_ilp,
            "gap_itp": self.gap_itp,
            "classifier": dict(self.classifier),
            "diagnostics": list(self.diagnostics),
        }


@dataclass(frozen=True)
class ShortlistQuery:
    cls: str = "launchers"
    sort_key: str = "degree_asc"
    limit: int = 10
    min_degree: int | None = None
    max_degree: int | None = None

    def __post_init__(self):
        if self.limit < 1:
            raise ValueError(f"limit must be >= 1, got {self.limit}")
        if self.cls not in ("launchers", "targets"):
            raise ValueError(f"class must be 'launchers' or 'targets', got {self.cls!r}")


def gap_split(raw: np.ndarray, factor: float = GAP_FACTOR) -> tuple[int | None, int, str | None]:
    """Split integer counts at their widest gap.

    Values are sorted in descending order and the widest difference between
    neighbours is taken. It must be positive and at least ``factor`` times
    the median neighbour difference. When several gaps tie for widest, the
    lowest one wins, so the upper class is as large as possible.

    Returns
    -------
    (cut, gap, diagnostic)
        ``cut`` is the smallest count in the upper class, or ``None`` with a
        diagnostic when there is no clear separation.
    """
    v = np.sort(np.asarray(raw, dtype=np.int64))[::-1]
    if v.size < 2:
        return None, 0, "no separating gap"
    gaps = v[:-1] - v[1:]
    widest = int(gaps.max())
    if widest <= 0:
        return None, 0, "no separating gap"
    if widest < factor * float(np.median(gaps)):
        return None, widest, "no clear separation"
    k = int(np.flatnonzero(gaps == widest)[-1])
    return int(v[k]), widest, None


def _side(raw, normalized, denom, method, threshold, factor, name):
    diag = []
    gap = 0
    members = None
    if method == "gap":
        cut, gap, why = gap_split(raw, factor)
        if cut is not None:
            members = np.flatnonzero(raw >= cut)
        else:
            diag.append(f"{name}: {why}")
            if threshold is not None:
                diag.append(f"{name}: falling back to threshold {threshold}")
    elif method != "threshold":
        raise ValueError(f"unknown classifier {method!r}")
    if members is None:
        members = (np.flatnonzero(normalized >= threshold) if threshold is not None
                   else np.zeros(0, dtype=np.int64))
    members = frozenset(members.tolist())
    if members:
        low_raw = int(min(raw[i] for i in members))
        return members, low_raw / denom, low_raw, gap / denom, diag
    return members, None, None, gap / denom, diag


def classify(indices: IndexTable, method: str = "gap", threshold: float | None = None, *,
             target_threshold: float | None = None, factor: float = GAP_FACTOR) -> PartitionReport:
    """Partition nodes into launchers (by ILP) and targets (by ITP).

    Parameters
    ----------
    method : {"gap", "threshold"}
        ``"gap"`` splits at the widest gap of the sorted values (see
        :func:`gap_split`), falling back to ``threshold`` when there is no
        clear gap. ``"threshold"`` keeps nodes with index ``>= threshold``.
    threshold : float, optional
        Cut for ILP; also used for ITP unless ``target_threshold`` is given.
    """
    if method == "threshold" and threshold is None:
        raise ValueError("threshold classifier needs a threshold")
    t_itp = threshold if target_threshold is None else target_threshold
    denom = indices.n - 1
    launchers, mibp, mibp_raw, gap_ilp, d1 = _side(
        indices.ilp_raw, indices.ilp, denom, method, threshold, factor, "launchers")
    targets, mtbp, mtbp_raw, gap_itp, d2 = _side(
        indices.itp_raw, indices.itp, denom, method, t_itp, factor, "targets")
    params = {"method": method}
    if method == "gap":
        params["factor"] = factor
    if threshold is not None:
        params["threshold"] = threshold
    if target_threshold is not None:
        params["target_threshold"] = target_threshold
    return PartitionReport(
        alpha=indices.alpha,
        n=indices.n,
        launchers=launchers,
        targets=targets,
        mibp=mibp,
        mtbp=mtbp,
        mibp_raw=mibp_raw,
        mtbp_raw=mtbp_raw,
        gap_ilp=gap_ilp,
        gap_itp=gap_itp,
        classifier=params,
        diagnostics=tuple(d1 + d2),
    )


def breaking_points(report: PartitionReport, indices: IndexTable) -> tuple[float | None, float | None]:
    """Smallest ILP over launchers and smallest ITP over targets."""
    mibp = min((float(indices.ilp[i]) for i in report.launchers), default=None)
    mtbp = min((float(indices.itp[i]) for i in report.targets), default=None)
    return mibp, mtbp


def strong_influencer_pct(indices: IndexTable, coverage: float = 0.99) -> float:
    """Share of nodes whose cascade reaches at least ``coverage`` of the others."""
    if not 0.0 < coverage <= 1.0:
        raise ValueError(f"coverage must lie in (0, 1], got {coverage}")
    return int(np.count_nonzero(indices.ilp >= coverage)) / indices.n


def duality_gaps(report: PartitionReport) -> dict:
    """How far the launcher share is from mtbp, and the target share from mibp."""
    return {
        "launcher_pct_vs_mtbp": (None if report.mtbp is None
                                 else abs(report.launcher_pct - report.mtbp)),
        "target_pct_vs_mibp": (None if report.mibp is None
                               else abs(report.target_pct - report.mibp)),
    }


def shortlist(indices: IndexTable, metrics: MetricTable, q: ShortlistQuery,
              report: PartitionReport | None = None) -> list[int]:
    """Members of one class, filtered by degree and sorted by a metric.

    The class comes from ``report``, or from ``classify(indices)`` when no
    report is given. Ties keep ascending node id.
    """
    if q.sort_key not in SORT_KEYS:
        raise ValueError(f"unknown sort key {q.sort_key!r}; choose from {sorted(SORT_KEYS)}")
    report = report or classify(indices)
    members = report.launchers if q.cls == "launchers" else report.targets
    deg = metrics.degree
    pool = [i for i in sorted(members)
            if (q.min_degree is None or deg[i] >= q.min_degree)
            and (q.max_degree is None or deg[i] <= q.max_degree)]
    column, descending = SORT_KEYS[q.sort_key]
    values = metrics.column(column)
    pool.sort(key=lambda i: -values[i] if descending else values[i])
    return pool[:q.limit]


# --------------------------------------------------------------------------
# serialization

INDEX_COLUMNS = ("alpha", "out_degree", "ilp_raw", "ilp", "itp_raw", "itp", "launcher", "target")
INT_COLUMNS = {"out_degree", "ilp_raw", "itp_raw", "launcher", "target", "degree", "eccentricity"}

_NUMBER = {"type": "number"}
_NULLABLE_NUMBER = {"type": ["number", "null"]}
_INT = {"type": "integer"}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ilpitp report",
    "type": "object",
    "required": ["format", "version", "graph", "meta", "sections", "metrics"],
    "properties": {
        "format": {"const": "ilpitp-report"},
        "version": {"const": 1},
        "graph": {
            "type": "object",
            "required": ["n", "arcs", "kind"],
            "properties": {
                "n": _INT,
                "arcs": _INT,
                "kind": {"enum": ["directed", "undirected"]},
            },
        },
        "meta": {"type": "object"},
        "sections": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["alpha", "alpha_value", "partition", "nodes"],
                "properties": {
                    "alpha": {"type": "string"},
                    "alpha_value": _NUMBER,
                    "strong_influencer_pct": _NUMBER,
                    "partition": {
                        "type": "object",
                        "required": ["launchers", "launcher_pct", "mibp", "targets",
                                     "target_pct", "mtbp", "classifier"],
                        "properties": {
                            "launchers": _INT,
                            "launcher_pct": _NUMBER,
                            "mibp": _NULLABLE_NUMBER,
                            "targets": _INT,
                            "target_pct": _NUMBER,
                            "mtbp": _NULLABLE_NUMBER,
                            "classifier": {"type": "object"},
                        },
                    },
                    "nodes": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["label", "out_degree", "ilp_raw", "ilp", "itp_raw",
                                         "itp", "launcher", "target"],
                            "properties": {
                                "out_degree": _INT,
                                "ilp_raw": _INT,
                                "ilp": _NUMBER,
                                "itp_raw": _INT,
                                "itp": _NUMBER,
                                "launcher": {"type": "boolean"},
                                "target": {"type": "boolean"},
                            },
                        },
                    },
                },
            },
        },
        "metrics": {
            "type": ["array", "null"],
            "items": {
                "type": "object",
                "required": ["label", *MetricTable.columns()],
            },
        },
    },
}


def _label_order(g: Graph) -> list[int]:
    return sorted(range(g.n), key=lambda i: g.labels[i])


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.6f}"


def _metric_notes(g: Graph) -> list[str]:
    pairs = "unordered pairs" if g.kind == UNDIRECTED else "ordered pairs"
    return [
        f"betweenness counts {pairs}",
        "closeness and eccentricity use reachable nodes only",
        "eigenvector: Gephi-compatible accumulating iteration, max-normalized",
        "pagerank beta=0.85, dangling rank spread uniformly; hits epsilon=0.0001, L2-normalized",
    ]


def _meta_lines(g: Graph, meta: dict | None) -> list[str]:
    lines = [f"graph: n={g.n} arcs={g.n_arcs} kind={g.kind}"]
    for key, value in (meta or {}).items():
        lines.append(f"{key}: {value}")
    return lines


def emit_report(g: Graph, sections, metrics: MetricTable | None, path: str | PathLike,
                fmt: str = "csv", meta: dict | None = None) -> Path:
    """Write a per-node report.

    Parameters
    ----------
    sections : sequence of (IndexTable, PartitionReport)
        One block per hurdle value, in the given order. May be empty for a
        metrics-only report.
    metrics : MetricTable or None
        Appended as extra columns (CSV) or a separate list (JSON).
    fmt : {"csv", "json"}
        CSV rows carry six decimals and ``#`` comment headers; one row per
        (alpha, node) with nodes in ascending label order.
    meta : dict, optional
        Provenance recorded in the header (input path, rng seed, ...).
    """
    path = Path(path)
    if fmt == "csv":
        text = _render_csv(g, sections, metrics, meta)
    elif fmt == "json":
        text = json.dumps(report_document(g, sections, metrics, meta), indent=1) + "\n"
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    path.write_text(text, encoding="utf-8")
    return path


def _render_csv(g, sections, metrics, meta) -> str:
    out = io.StringIO()
    for line in _meta_lines(g, meta):
        out.write(f"# {line}\n")
    if metrics is not None:
        for line in _metric_notes(g):
            out.write(f"# {line}\n")
    for indices, rep in sections:
        s = rep.summary()
        out.write(
            f"# alpha={s['alpha']}: launchers={s['launchers']} ({_fmt(s['launcher_pct'])})"
            f" mibp={_fmt(s['mibp']) if s['mibp'] is not None else 'NA'}"
            f" targets={s['targets']} ({_fmt(s['target_pct'])})"
            f" mtbp={_fmt(s['mtbp']) if s['mtbp'] is not None else 'NA'}"
            f" strong99={_fmt(strong_influencer_pct(indices))}"
            f" classifier={json.dumps(s['classifier'], sort_keys=True)}\n")
        for d in s["diagnostics"]:
            out.write(f"# alpha={s['alpha']}: {d}\n")
    header = ["label"]
    if sections:
        header += INDEX_COLUMNS
    if metrics is not None:
        header += MetricTable.columns()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    order = _label_order(g)
    blocks = sections or [(None, None)]
    for indices, rep in blocks:
        for i in order:
            row = [g.labels[i]]
            if indices is not None:
                row += [rep.alpha.text, _fmt(int(g.out_degree[i])),
                        _fmt(int(indices.ilp_raw[i])), _fmt(indices.ilp[i]),
                        _fmt(int(indices.itp_raw[i])), _fmt(indices.itp[i]),
                        _fmt(i in rep.launchers), _fmt(i in rep.targets)]
            if metrics is not None:
                row += [_fmt(metrics.column(c)[i]) for c in MetricTable.columns()]
            writer.writerow(row)
    return out.getvalue()


def _r6(x):
    return None if x is None else round(float(x), 6)


def report_document(g: Graph, sections, metrics: MetricTable | None, meta: dict | None = None) -> dict:
    """The JSON report as a plain dict (validates against ``REPORT_SCHEMA``)."""
    order = _label_order(g)
    doc_sections = []
    for indices, rep in sections:
        s = rep.summary()
        nodes = [{
            "label": g.labels[i],
            "out_degree": int(g.out_degree[i]),
            "ilp_raw": int(indices.ilp_raw[i]),
            "ilp": _r6(indices.ilp[i]),
            "itp_raw": int(indices.itp_raw[i]),
            "itp": _r6(indices.itp[i]),
            "launcher": i in rep.launchers,
            "target": i in rep.targets,
        } for i in order]
        doc_sections.append({
            "alpha": rep.alpha.text,
            "alpha_value": float(rep.alpha),
            "strong_influencer_pct": _r6(strong_influencer_pct(indices)),
            "partition": {
                "launchers": s["launchers"],
                "launcher_pct": _r6(s["launcher_pct"]),
                "mibp": _r6(s["mibp"]),
                "mibp_raw": s["mibp_raw"],
                "targets": s["targets"],
                "target_pct": _r6(s["target_pct"]),
                "mtbp": _r6(s["mtbp"]),
                "mtbp_raw": s["mtbp_raw"],
                "gap_ilp": _r6(s["gap_ilp"]),
                "gap_itp": _r6(s["gap_itp"]),
                "classifier": s["classifier"],
                "diagnostics": s["diagnostics"],
            },
            "nodes": nodes,
        })
    doc_metrics = None
    if metrics is not None:
        doc_metrics = []
        for i in order:
            row = {"label": g.labels[i]}
            for c in MetricTable.columns():
                v = metrics.column(c)[i]
                row[c] = int(v) if c in INT_COLUMNS else _r6(v)
            doc_metrics.append(row)
    return {
        "format": "ilpitp-report",
        "version": 1,
        "graph": {"n": g.n, "arcs": g.n_arcs, "kind": g.kind},
        "meta": {str(k): v for k, v in (meta or {}).items()},
        "metric_notes": _metric_notes(g) if metrics is not None else [],
        "sections": doc_sections,
        "metrics": doc_metrics,
    }


def read_report_csv(path: str | PathLike) -> tuple[list[str], list[dict]]:
    """Parse a CSV report back into ``(comment_lines, rows)``.

    Integer columns come back as ``int``, the rest of the numeric columns
    as ``float``; ``label`` and ``alpha`` stay strings.
    """
    comments = []
    body = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.startswith("#"):
            comments.append(line[1:].strip())
        else:
            body.append(line)
    rows = []
    for rec in csv.DictReader(body):
        row = {}
        for key, value in rec.items():
            if key in ("label", "alpha"):
                row[key] = value
            elif key in INT_COLUMNS:
                row[key] = int(value)
            else:
                row[key] = float(value)
        rows.append(row)
    return comments, rows


def format_summary(sections) -> str:
    """Human-readable table of launcher/target shares per hurdle value."""
    head = f"{'alpha':>7} {'launch%':>8} {'mibp':>7} {'target%':>8} {'mtbp':>7} {'strong99%':>10}"
    lines = [head, "-" * len(head)]
    for indices, rep in sections:
        mibp = f"{rep.mibp:.4f}" if rep.mibp is not None else "NA"
        mtbp = f"{rep.mtbp:.4f}" if rep.mtbp is not None else "NA"
        lines.append(
            f"{rep.alpha.text:>7} {100 * rep.launcher_pct:8.2f} {mibp:>7} "
            f"{100 * rep.target_pct:8.2f} {mtbp:>7} {100 * strong_influencer_pct(indices):10.2f}")
        for d in rep.diagnostics:
            lines.append(f"{'':>7} note: {d}")
    return "\n".join(lines)
