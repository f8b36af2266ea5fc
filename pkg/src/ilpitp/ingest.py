"""Edge-list ingestion for SNAP, KONECT, BGU and UCINET-exported files.

One arc per line, the first two tokens being the endpoints. Tokens are
separated by any run of whitespace or commas. Lines starting with a comment
prefix are skipped, as are blank lines. Further columns (timestamps, weights)
are ignored, so repeated messages between the same pair collapse to one arc.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from os import PathLike
from pathlib import Path

import numpy as np

from .graph import UNDIRECTED, Graph, build

log = logging.getLogger(__name__)

_SPLIT = re.compile(r"[\s,]+")


class IngestError(ValueError):
    """Raised for unreadable or malformed edge-list files."""


@dataclass(frozen=True)
class IngestOptions:
    treat_as_undirected: bool = False
    flip_orientation: bool = False
    comment_prefixes: tuple[str, ...] = ("#", "%")
    numeric_labels: bool = True


@dataclass(frozen=True)
class IngestSummary:
    """What happened while reading a file.

    ``duplicates_collapsed`` counts repeated arcs, or repeated edges in either
    orientation when the file is read as undirected, so that
    ``arcs_stored == (arcs_read - loops_removed - duplicates_collapsed)``
    times two for undirected input and times one otherwise.
    """

    path: str
    nodes_seen: int
    arcs_read: int
    loops_removed: int
    duplicates_collapsed: int
    arcs_stored: int
    flipped: bool
    undirected: bool
    extra_columns: bool = False
    warnings: tuple[str, ...] = field(default=())

    def describe(self) -> str:
        kind = "undirected" if self.undirected else "directed"
        parts = [
            f"{self.path}: {self.nodes_seen} nodes, {self.arcs_read} lines read",
            f"{self.loops_removed} loops removed",
            f"{self.duplicates_collapsed} duplicates collapsed",
            f"{self.arcs_stored} arcs stored ({kind}{', flipped' if self.flipped else ''})",
        ]
        return ", ".join(parts)


def _label(token: str, numeric: bool, lineno: int):
    if not numeric:
        return token
    try:
        return int(token)
    except ValueError:
        raise IngestError(f"line {lineno}: non-numeric node label {token!r}") from None


def load_edge_list(path: str | PathLike, opts: IngestOptions | None = None) -> tuple[Graph, IngestSummary]:
    """Read an edge list into a :class:`Graph`.

    Labels are mapped to dense ids in first-seen order. With
    ``flip_orientation`` every line ``i j`` is stored as arc ``(j, i)``,
    turning a "follows" relation into an "influences" one. With
    ``treat_as_undirected`` both arcs are stored.

    Raises
    ------
    IngestError
        On a missing file, a data line with fewer than two tokens, a
        non-numeric label (unless ``numeric_labels`` is off), or a file with
        no arcs.
    """
    opts = opts or IngestOptions()
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8", errors="replace")
    except OSError as exc:
        raise IngestError(f"cannot read {path}: {exc}") from exc

    index: dict = {}
    labels: list = []
    src: list[int] = []
    dst: list[int] = []
    linenos: list[int] = []
    extra = False
    prefixes = tuple(opts.comment_prefixes)
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith(prefixes):
            continue
        tokens = _SPLIT.split(stripped)
        if len(tokens) < 2:
            raise IngestError(f"{path}:{lineno}: expected two node labels, got {stripped!r}")
        if len(tokens) > 2:
            extra = True
        ends = []
        for tok in tokens[:2]:
            lab = _label(tok, opts.numeric_labels, lineno)
            i = index.get(lab)
            if i is None:
                i = index[lab] = len(labels)
                labels.append(lab)
            ends.append(i)
        src.append(ends[0])
        dst.append(ends[1])
        linenos.append(lineno)

    if not src:
        raise IngestError(f"{path}: no arcs")
    if extra:
        log.warning("%s: ignoring columns beyond the first two", path)

    arcs = np.column_stack([np.asarray(src, dtype=np.int64), np.asarray(dst, dtype=np.int64)])
    if opts.flip_orientation:
        arcs = arcs[:, ::-1]
    g = build(len(labels), arcs, symmetrize=opts.treat_as_undirected, labels=labels, lines=linenos)

    notes = []
    if opts.flip_orientation and opts.treat_as_undirected:
        notes.append("flip_orientation has no effect on an undirected graph")
    for note in notes:
        log.warning("%s: %s", path, note)
    summary = IngestSummary(
        path=str(path),
        nodes_seen=len(labels),
        arcs_read=len(src),
        loops_removed=g.loops_dropped,
        duplicates_collapsed=g.duplicates_collapsed,
        arcs_stored=g.n_arcs,
        flipped=opts.flip_orientation,
        undirected=opts.treat_as_undirected,
        extra_columns=extra,
        warnings=tuple(notes),
    )
    log.info("%s", summary.describe())
    return g, summary


def write_edge_list(g: Graph, path: str | PathLike, header: list[str] | None = None,
                    *, arcs: bool = False) -> Path:
    """Write ``g`` as an edge list readable by :func:`load_edge_list`.

    Undirected graphs are written one edge per line (read them back with
    ``treat_as_undirected``) unless ``arcs`` is set, in which case every
    stored arc gets its own line. Directed graphs are always written one arc
    per line. External labels are written.
    """
    path = Path(path)
    lab = g.labels
    as_edges = g.kind == UNDIRECTED and not arcs
    pairs = g.edges() if as_edges else g.arcs()
    lines = [f"# {h}" for h in header or []]
    lines.append(f"# {g.kind} graph: {g.n} nodes, {len(pairs)} {'edges' if as_edges else 'arcs'}")
    lines.extend(f"{lab[i]} {lab[j]}" for i, j in pairs)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def zachary_path() -> Path:
    """Path of the bundled Zachary karate club edge list (1-based labels)."""
    return Path(__file__).with_name("data") / "zachary.txt"


def load_zachary() -> Graph:
    g, _ = load_edge_list(zachary_path(), IngestOptions(treat_as_undirected=True))
    return g
