from __future__ import annotations

import csv
import random
from pathlib import Path

import numpy as np
import pytest

from ilpitp import kernels
from ilpitp.graph import build
from ilpitp.ingest import load_zachary

DATA = Path(__file__).with_name("data")


def load_reference() -> dict[int, dict[str, float]]:
    """Published two-decimal values for the karate club graph, keyed by label."""
    lines = [ln for ln in (DATA / "zachary_reference.csv").read_text().splitlines()
             if not ln.startswith("#")]
    return {int(r["label"]): {k: float(v) for k, v in r.items() if k != "label"}
            for r in csv.DictReader(lines)}


def random_graph(rng: random.Random, n: int, density: float, undirected: bool):
    arcs = [(i, j) for i in range(n) for j in range(n) if i != j and rng.random() < density]
    return build(n, np.asarray(arcs, dtype=np.int64).reshape(-1, 2), symmetrize=undirected)


@pytest.fixture(scope="session")
def zachary():
    return load_zachary()


@pytest.fixture(scope="session")
def reference():
    return load_reference()


@pytest.fixture(params=kernels.available())
def backend(request):
    return request.param


# ------------------------------------------------------------------ acceptance

ACCEPTANCE: dict[int, tuple[str, str, str]] = {}


def record_criterion(number: int, title: str, outcome: str, detail: str = "") -> None:
    ACCEPTANCE[number] = (title, outcome, detail)
    print(f"criterion {number} [{outcome}] {title}{': ' + detail if detail else ''}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, outcome, detail = ACCEPTANCE[number]
        line = f"criterion {number} {outcome}: {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
