"""Compare the compiled and pure-Python kernel backends.

Times the full single-seed cascade batch (``compute_indices``), all-pairs
BFS statistics and Brandes betweenness on the Zachary graph and on seeded
small-world graphs, checks that both backends agree, and prints a table.

    python3 benchmarks/bench_kernels.py --n 1000 --repeat 3
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from ilpitp import kernels
from ilpitp.cascade import compute_indices
from ilpitp.generators import WSParams, small_world
from ilpitp.ingest import load_zachary


def _best(fn, repeat: int) -> tuple[float, object]:
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def _tasks(g, alpha):
    return {
        f"cascades a={alpha}": lambda b: compute_indices(g, alpha, workers=1, backend=b),
        "bfs stats": lambda b: kernels.get(b).bfs_stats(g.succ_ptr, g.succ_idx),
        "brandes": lambda b: kernels.get(b).brandes(g.succ_ptr, g.succ_idx,
                                                    g.pred_ptr, g.pred_idx),
    }


def _same(a, b) -> bool:
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return bool(np.allclose(a, b, rtol=1e-12, atol=1e-9))
    return a == b


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=1000, help="small-world size (default 1000)")
    ap.add_argument("--repeat", type=int, default=3, help="runs per timing; best is kept")
    ap.add_argument("--alpha", default="1.5")
    args = ap.parse_args(argv)

    graphs = {"zachary": load_zachary()}
    for k, o in ((10, 1.0), (10, 0.33), (20, 0.66)):
        p = WSParams(args.n, k, 0.3, o, rng_seed=7)
        graphs[f"{p.name} n={args.n}"] = small_world(p)

    backends = kernels.available()
    if "compiled" not in backends:
        print("compiled kernels not built; timing the Python backend only")
    print(f"{'graph':<18} {'task':<16} " + " ".join(f"{b:>10}" for b in backends)
          + f" {'speedup':>8} {'agree':>6}")
    for gname, g in graphs.items():
        for task, fn in _tasks(g, args.alpha).items():
            times, outs = [], []
            for b in backends:
                t, out = _best(lambda: fn(b), args.repeat)
                times.append(t)
                outs.append(out)
            speed = f"{times[-1] / times[0]:8.1f}x" if len(times) == 2 else f"{'-':>8}"
            agree = "yes" if len(outs) < 2 or _same(outs[0], outs[1]) else "NO"
            print(f"{gname:<18} {task:<16} " + " ".join(f"{t * 1e3:8.1f}ms" for t in times)
                  + f" {speed} {agree:>6}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
