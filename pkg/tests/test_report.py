from __future__ import annotations

import json
import random

import jsonschema
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ilpitp.cascade import HurdleCoefficient, IndexTable, compute_indices
from ilpitp.generators import WSParams, small_world
from ilpitp.graph import build
from ilpitp.metrics import MetricTable, compute_metrics
from ilpitp.report import (
    REPORT_SCHEMA,
    ShortlistQuery,
    breaking_points,
    classify,
    duality_gaps,
    emit_report,
    format_summary,
    gap_split,
    read_report_csv,
    report_document,
    shortlist,
    strong_influencer_pct,
)


def table(ilp_raw, itp_raw=None, alpha=1.0):
    ilp_raw = np.asarray(ilp_raw, dtype=np.int64)
    itp_raw = ilp_raw.copy() if itp_raw is None else np.asarray(itp_raw, dtype=np.int64)
    return IndexTable(HurdleCoefficient(alpha), ilp_raw, itp_raw)


def labels_of(g, ids):
    return {g.labels[i] for i in ids}


@pytest.fixture(scope="module")
def zachary_run(zachary):
    out = {}
    for a in ("1.5", "3.0"):
        t = compute_indices(zachary, a)
        out[a] = (t, classify(t))
    return out


@pytest.fixture(scope="module")
def zachary_metrics(zachary):
    return compute_metrics(zachary)


# ------------------------------------------------------------------ classify

def test_zachary_launchers_at_1_5(zachary, zachary_run):
    t, r = zachary_run["1.5"]
    assert labels_of(zachary, r.launchers) == {1, 2, 3, 33, 34}
    assert r.launcher_pct == 5 / 34
    assert r.mibp == 1.0 and r.mibp_raw == 33
    assert r.classifier["method"] == "gap" and not r.diagnostics


def test_zachary_launchers_at_3_0(zachary, zachary_run):
    t, r = zachary_run["3.0"]
    assert labels_of(zachary, r.launchers) == {1, 34}
    assert t.ilp[zachary.index(33)] < r.mibp
    assert r.mibp_raw == 20
    assert r.mtbp_raw == 1 and r.mtbp == pytest.approx(1 / 33)
    assert breaking_points(r, t) == (r.mibp, r.mtbp)


def test_all_zero_has_no_gap():
    r = classify(table([0, 0, 0, 0]))
    assert r.launchers == frozenset() and r.mibp is None and r.mtbp is None
    assert any("no separating gap" in d for d in r.diagnostics)


def test_all_equal_has_no_gap():
    r = classify(table([2, 2, 2]))
    assert not r.launchers
    assert gap_split(np.array([2, 2, 2])) == (None, 0, "no separating gap")


def test_even_spread_has_no_clear_separation_and_falls_back():
    raw = np.arange(11)  # all neighbour gaps equal
    r = classify(table(raw))
    assert not r.launchers
    assert any("no clear separation" in d for d in r.diagnostics)
    r = classify(table(raw), threshold=0.8)
    assert r.launchers == frozenset({8, 9, 10})
    assert any("falling back" in d for d in r.diagnostics)


def test_tied_widest_gaps_take_the_lowest_split():
    # sorted: 30 20 10 10 10 10 10 10 10 10 -> gaps 10, 10, 0...
    cut, gap, why = gap_split(np.array([30, 20] + [10] * 8))
    assert (cut, gap, why) == (20, 10, None)


def test_star_single_launcher():
    g = build(6, [(0, k) for k in range(1, 6)])
    t = compute_indices(g, 2.0)
    r = classify(t)
    assert r.launchers == {0} and r.mibp == 1.0
    assert breaking_points(r, t)[0] == 1.0


def test_threshold_classifier_needs_threshold():
    with pytest.raises(ValueError):
        classify(table([1, 2]), "threshold")
    with pytest.raises(ValueError):
        classify(table([1, 2]), "kmeans")


def test_threshold_classifier_separate_target_cut():
    t = table([4, 0, 2, 1, 3], [0, 4, 1, 2, 3])
    r = classify(t, "threshold", 0.5, target_threshold=0.75)
    assert r.launchers == {0, 2, 4} and r.targets == {1, 4}
    assert r.classifier == {"method": "threshold", "threshold": 0.5, "target_threshold": 0.75}


raws = st.lists(st.integers(0, 40), min_size=2, max_size=41)


@given(raws)
@settings(max_examples=200, deadline=None)
def test_gap_partition_invariants(raw):
    n = len(raw)
    raw = [min(x, n - 1) for x in raw]
    t = table(raw, list(reversed(raw)))
    r = classify(t)
    for members, values, low in ((r.launchers, t.ilp, r.mibp), (r.targets, t.itp, r.mtbp)):
        outside = set(range(n)) - members
        assert members | outside == set(range(n))
        if members:
            assert min(values[i] for i in members) == low
            if outside:
                assert low > max(values[i] for i in outside)
        else:
            assert low is None
    assert r.launcher_pct == len(r.launchers) / n


@given(raws, st.floats(0, 1), st.floats(0, 1))
@settings(max_examples=200, deadline=None)
def test_threshold_is_monotone(raw, t1, t2):
    n = len(raw)
    t = table([min(x, n - 1) for x in raw])
    lo, hi = sorted((t1, t2))
    assert classify(t, "threshold", hi).launchers <= classify(t, "threshold", lo).launchers


# ---------------------------------------------------------- strong influencers

def test_strong_influencer_pct_zachary(zachary_run):
    t, _ = zachary_run["1.5"]
    assert strong_influencer_pct(t) == 5 / 34
    assert strong_influencer_pct(t, coverage=1.0) == 5 / 34


def test_strong_influencer_pct_dead_cascades():
    g = build(4, [])
    assert strong_influencer_pct(compute_indices(g, 1.0)) == 0.0


@pytest.mark.parametrize("c", [0.0, -0.1, 1.01])
def test_strong_influencer_bad_coverage(c):
    with pytest.raises(ValueError):
        strong_influencer_pct(table([0, 1]), coverage=c)


def test_strong_influencers_drop_with_alpha():
    g = small_world(WSParams(1000, 10, 0.3, 1.0, rng_seed=3))
    s15 = strong_influencer_pct(compute_indices(g, 1.5))
    s20 = strong_influencer_pct(compute_indices(g, 2.0))
    assert s20 <= s15


# --------------------------------------------------------------------- duality

def _duality_graphs(zachary):
    yield zachary
    for o in (1.0, 0.66, 0.33):
        yield small_world(WSParams(300, 10, 0.3, o, rng_seed=9))


@pytest.mark.parametrize("alpha", ["1.0", "1.5", "2.0", "3.0"])
def test_itp_is_bounded_by_active_seeds(zachary, alpha):
    for g in _duality_graphs(zachary):
        t = compute_indices(g, alpha)
        r = classify(t)
        seeds_that_spread = int(np.count_nonzero(t.ilp_raw > 0))
        assert int(t.itp_raw.max()) <= seeds_that_spread
        if r.mtbp_raw is not None:
            assert r.mtbp_raw <= seeds_that_spread
        gaps = duality_gaps(r)
        assert set(gaps) == {"launcher_pct_vs_mtbp", "target_pct_vs_mibp"}


# ------------------------------------------------------------------- shortlist

def test_shortlist_launchers_by_degree(zachary, zachary_run, zachary_metrics):
    t, r = zachary_run["1.5"]
    picks = shortlist(t, zachary_metrics, ShortlistQuery(), r)
    assert [zachary.labels[i] for i in picks] == [2, 3, 33, 1, 34]
    picks = shortlist(t, zachary_metrics, ShortlistQuery(max_degree=12, limit=2))
    assert [zachary.labels[i] for i in picks] == [2, 3]


def test_shortlist_rejects_bad_queries(zachary_run, zachary_metrics):
    with pytest.raises(ValueError):
        ShortlistQuery(limit=0)
    with pytest.raises(ValueError):
        ShortlistQuery(cls="bystanders")
    t, r = zachary_run["1.5"]
    with pytest.raises(ValueError, match="unknown sort key"):
        shortlist(t, zachary_metrics, ShortlistQuery(sort_key="katz_desc"), r)


@pytest.mark.parametrize("seed", range(5))
def test_shortlist_targets_by_betweenness_against_second_sort(seed):
    g = small_world(WSParams(120, 6, 0.3, 0.66, rng_seed=seed))
    t = compute_indices(g, 1.0)
    r = classify(t, "threshold", 0.2)
    m = compute_metrics(g)
    q = ShortlistQuery("targets", "betweenness_desc", limit=15)
    got = shortlist(t, m, q, r)
    members = np.array(sorted(r.targets), dtype=np.int64)
    if members.size == 0:
        assert got == []
        return
    order = np.lexsort((members, -m.betweenness[members]))
    assert got == members[order][:15].tolist()


# ------------------------------------------------------------------- emitting

def test_csv_round_trip(tmp_path, zachary, zachary_run, zachary_metrics):
    sections = list(zachary_run.values())
    path = emit_report(zachary, sections, zachary_metrics, tmp_path / "z.csv",
                       meta={"input": "zachary", "rng_seed": 4})
    comments, rows = read_report_csv(path)
    assert any(c.startswith("alpha=1.5:") for c in comments)
    assert "rng_seed: 4" in comments
    assert len(rows) == 2 * zachary.n
    order = sorted(range(zachary.n), key=lambda i: zachary.labels[i])
    for k, (t, r) in enumerate(sections):
        block = rows[k * zachary.n:(k + 1) * zachary.n]
        assert [row["label"] for row in block] == [str(zachary.labels[i]) for i in order]
        for row, i in zip(block, order):
            assert row["alpha"] == r.alpha.text
            assert row["ilp_raw"] == t.ilp_raw[i] and row["itp_raw"] == t.itp_raw[i]
            assert row["ilp"] == pytest.approx(t.ilp[i], abs=5e-7)
            assert row["launcher"] == int(i in r.launchers)
            assert row["target"] == int(i in r.targets)
            for c in MetricTable.columns():
                assert row[c] == pytest.approx(zachary_metrics.column(c)[i], abs=5e-7)


def test_json_validates_against_schema(tmp_path, zachary, zachary_run, zachary_metrics):
    path = emit_report(zachary, list(zachary_run.values()), zachary_metrics,
                       tmp_path / "z.json", fmt="json", meta={"rng_seed": 0})
    doc = json.loads(path.read_text())
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert [s["alpha"] for s in doc["sections"]] == ["1.5", "3.0"]
    assert doc["sections"][0]["partition"]["launchers"] == 5


def test_metrics_only_report(tmp_path, zachary, zachary_metrics):
    path = emit_report(zachary, [], zachary_metrics, tmp_path / "m.csv")
    _, rows = read_report_csv(path)
    assert len(rows) == zachary.n and "ilp" not in rows[0]
    jsonschema.validate(report_document(zachary, [], zachary_metrics), REPORT_SCHEMA)


def test_full_report_reproduces_reference(tmp_path, zachary, zachary_run, zachary_metrics,
                                          reference):
    path = emit_report(zachary, list(zachary_run.values()), zachary_metrics,
                       tmp_path / "z.csv")
    _, rows = read_report_csv(path)
    for row in rows:
        ref = reference[int(row["label"])]
        a = row["alpha"]
        assert abs(row["ilp"] - ref[f"ilp_{a}"]) <= 0.005
        assert abs(row["itp"] - ref[f"itp_{a}"]) <= 0.005
        for c in MetricTable.columns():
            tol = 0.5 if c == "betweenness" else 0.01
            assert abs(row[c] - ref[c]) <= tol, (row["label"], c)


def test_report_errors(tmp_path, zachary, zachary_run):
    sections = list(zachary_run.values())
    with pytest.raises(ValueError):
        emit_report(zachary, sections, None, tmp_path / "z.xml", fmt="xml")
    with pytest.raises(OSError):
        emit_report(zachary, sections, None, tmp_path / "missing" / "z.csv")


def test_summary_table(zachary_run):
    text = format_summary(list(zachary_run.values()))
    assert "14.71" in text and "1.0000" in text
    assert len(text.splitlines()) == 4


def test_report_is_deterministic_across_workers(tmp_path, zachary):
    blobs = []
    for w in (1, 2, 8):
        t = compute_indices(zachary, 1.5, workers=w)
        p = emit_report(zachary, [(t, classify(t))], None, tmp_path / f"w{w}.csv")
        blobs.append(p.read_bytes())
    assert blobs[0] == blobs[1] == blobs[2]


def test_random_tables_serialize(tmp_path):
    rng = random.Random(0)
    g = build(8, [(rng.randrange(8), rng.randrange(8)) for _ in range(20)])
    t = compute_indices(g, 1.0)
    jsonschema.validate(report_document(g, [(t, classify(t))], compute_metrics(g)), REPORT_SCHEMA)
