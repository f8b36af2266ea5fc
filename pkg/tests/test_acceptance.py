"""Acceptance criteria, each run at its stated tolerance.

Every test records one PASS/FAIL/SKIP line, printed in the "acceptance
criteria" section at the end of the pytest run.
"""
from __future__ import annotations

import os
import random
import time
from contextlib import contextmanager
from pathlib import Path

import numpy as np
import pytest

from ilpitp.cascade import cascade, compute_indices, fixpoint_oracle_all
from ilpitp.generators import WSParams, orient, small_world, watts_strogatz
from ilpitp.ingest import IngestOptions, load_edge_list
from ilpitp.metrics import MetricTable, compute_metrics
from ilpitp.report import classify, emit_report, strong_influencer_pct

from conftest import DATA, random_graph, record_criterion

ALPHAS = (0.5, 1.0, 1.5, 2.0, 3.0)


@contextmanager
def criterion(number: int, title: str, budget: float | None = None):
    """Record PASS or FAIL for one criterion, including its time budget."""
    t0 = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - t0
        if budget is not None:
            assert elapsed < budget, f"took {elapsed:.2f} s, budget {budget} s"
    except pytest.skip.Exception as exc:
        record_criterion(number, title, "SKIP", str(exc))
        raise
    except BaseException as exc:
        record_criterion(number, title, "FAIL", str(exc).splitlines()[0] if str(exc) else
                         type(exc).__name__)
        raise
    else:
        record_criterion(number, title, "PASS", f"{elapsed:.2f} s")


def test_criterion_1_zachary_indices_at_1_5(zachary, reference):
    with criterion(1, "Zachary ILP/ITP at alpha=1.5 within 0.005", budget=1.0):
        t = compute_indices(zachary, "1.5")
        full = {zachary.labels[i] for i in np.flatnonzero(t.ilp == 1.0)}
        assert full == {1, 2, 3, 33, 34}
        for i, lab in enumerate(zachary.labels):
            assert abs(t.ilp[i] - reference[lab]["ilp_1.5"]) <= 0.005, lab
            assert abs(t.itp[i] - reference[lab]["itp_1.5"]) <= 0.005, lab


def test_criterion_2_zachary_indices_at_3_0(zachary, reference):
    with criterion(2, "Zachary counts at alpha=3.0 and shared cascade members", budget=1.0):
        t = compute_indices(zachary, "3.0")
        ix = zachary.index
        assert t.ilp_raw[ix(1)] == 20 and t.ilp_raw[ix(34)] == 20
        assert t.ilp_raw[ix(33)] == 9
        for i, lab in enumerate(zachary.labels):
            assert abs(t.ilp[i] - reference[lab]["ilp_3.0"]) <= 0.005, lab
            assert abs(t.itp[i] - reference[lab]["itp_3.0"]) <= 0.005, lab
        shared = cascade(zachary, ix(1), 3.0).active & cascade(zachary, ix(34), 3.0).active
        assert {3, 9, 10, 14, 20, 29, 31, 32} <= {zachary.labels[i] for i in shared}


def test_criterion_3_zachary_metrics(zachary, reference):
    with criterion(3, "Zachary metric columns within 0.01 (betweenness 0.5)", budget=1.0):
        m = compute_metrics(zachary)
        worst = {}
        for c in MetricTable.columns():
            tol = 0.5 if c == "betweenness" else 0.01
            col = m.column(c)
            err = max(abs(col[i] - reference[lab][c]) for i, lab in enumerate(zachary.labels))
            worst[c] = err
            assert err <= tol, f"{c} off by {err:.4f}"
        print("worst deviation per column:", {k: round(v, 4) for k, v in worst.items()})


def test_criterion_4_oracle_equivalence():
    with criterion(4, "worklist = fixpoint oracle on 1000 random graphs", budget=60.0):
        rng = random.Random(2024)
        graphs = 0
        while graphs < 1000:
            n = rng.randint(2, 64)
            g = random_graph(rng, n, rng.uniform(0.0, min(1.0, 8.0 / n)), rng.random() < 0.5)
            graphs += 1
            prev = None
            for a in ALPHAS:
                oracle = fixpoint_oracle_all(g, a)
                for s in range(n):
                    got = cascade(g, s, a).active
                    assert got == set(np.flatnonzero(oracle[s]).tolist()), (graphs, s, a)
                t = compute_indices(g, a, workers=1)
                assert int(t.ilp_raw.sum()) == int(t.itp_raw.sum())
                assert np.array_equal(t.ilp_raw, oracle.sum(axis=1) - 1)
                if prev is not None:
                    assert np.all(oracle <= prev), "alpha monotonicity"
                prev = oracle
        print(f"{graphs} graphs checked")


def test_criterion_5_generator_counts():
    with criterion(5, "WS edge and oriented arc counts at n=10,000", budget=10.0):
        g10 = watts_strogatz(10_000, 10, 0.3, rng_seed=1)
        g20 = watts_strogatz(10_000, 20, 0.3, rng_seed=1)
        assert g10.n_edges == 50_000 and g20.n_edges == 100_000
        for o, arcs in ((0.33, 66_500), (0.66, 83_000), (1.00, 100_000)):
            assert orient(g10, o, rng_seed=2).n_arcs == arcs, o


def test_criterion_6_ws_strong_influencer_trend():
    with criterion(6, "WS n=1000 strong-influencer share non-increasing in alpha",
                   budget=120.0):
        for k in (10, 20):
            for o in (0.33, 0.66, 1.0):
                g = small_world(WSParams(1000, k, 0.3, o, rng_seed=100 + k))
                shares = [strong_influencer_pct(compute_indices(g, a)) for a in ("1.0", "1.5", "2.0")]
                print(f"WS-{k}-{round(o * 100)}: {shares}")
                assert shares == sorted(shares, reverse=True), (k, o, shares)


def _ego_facebook() -> Path | None:
    for cand in (os.environ.get("ILPITP_EGO_FACEBOOK"), DATA / "facebook_combined.txt"):
        if cand and Path(cand).is_file():
            return Path(cand)
    return None


def test_criterion_7_ego_facebook():
    with criterion(7, "ego-Facebook launcher share at alpha=1.0 (optional)"):
        path = _ego_facebook()
        if path is None:
            pytest.skip("dataset not available offline; set ILPITP_EGO_FACEBOOK to run")
        g, _ = load_edge_list(path, IngestOptions(treat_as_undirected=True))
        assert g.n == 4039 and g.n_edges == 88_234
        t0 = time.perf_counter()
        r = classify(compute_indices(g, "1.0"))
        elapsed = time.perf_counter() - t0
        assert abs(100 * r.launcher_pct - 73.31) <= 1.0, r.launcher_pct
        assert r.mibp is not None and round(r.mibp, 4) == 1.0
        assert elapsed <= 60.0, f"batch took {elapsed:.1f} s"


def test_criterion_8_report_determinism(tmp_path, zachary):
    with criterion(8, "criterion-1 report byte-identical for 1, 2 and 8 workers"):
        m = compute_metrics(zachary)
        blobs = []
        for w in (1, 2, 8):
            t = compute_indices(zachary, "1.5", workers=w)
            path = emit_report(zachary, [(t, classify(t))], m, tmp_path / f"w{w}.csv",
                               meta={"input": "zachary.txt", "rng_seed": 0})
            blobs.append(path.read_bytes())
        assert blobs[0] == blobs[1] == blobs[2]
