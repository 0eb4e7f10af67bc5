"""Timing comparison of the compiled and pure-Python special-function
backends, at the primitive level and through the full evaluator.

Run from the repository root:

    python3 benchmarks/bench_backends.py [--n 20000] [--pairs 300]

The evaluator rows re-launch the interpreter with SMEARPROP_BACKEND set,
because backend selection happens at import.
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

import smearprop._specfun_py as py_backend

try:
    import smearprop._specfun_core as core_backend
except ImportError:
    core_backend = None


def _sample_args(n: int, seed: int) -> list[complex]:
    rng = np.random.default_rng(seed)
    re = rng.uniform(-8.0, 8.0, n)
    im = rng.uniform(0.0, 8.0, n)
    return [complex(a, b) for a, b in zip(re, im)]


def _time_primitive(backend, fn: str, args: list[complex]) -> float:
    f = getattr(backend, fn)
    best = float("inf")
    for _ in range(3):
        t0 = time.perf_counter()
        acc = 0.0
        for z in args:
            acc += abs(f(z))
        best = min(best, time.perf_counter() - t0)
    assert acc > 0.0
    return best


_EVAL_SNIPPET = """\
import json, time
import numpy as np
from smearprop import specfun
from smearprop.model import GaussianSmearing
from smearprop.propagators import evaluate

rng = np.random.default_rng(4)
pairs = []
for _ in range({pairs}):
    sg = float(rng.uniform(0.05, 1.0))
    f1 = GaussianSmearing(T=float(rng.uniform(0.3, 4.0)),
                          t0=float(rng.uniform(-3.0, 3.0)),
                          Omega=float(rng.uniform(-3.0, 3.0)), sigma=sg)
    f2 = GaussianSmearing(T=float(rng.uniform(0.3, 4.0)),
                          Omega=float(rng.uniform(-3.0, 3.0)), sigma=sg,
                          L=(float(rng.uniform(0.1, 10.0)), 0.0, 0.0))
    pairs.append((f1, f2))
kinds = ["wightman", "hadamard", "causal", "retarded",
         "advanced", "symmetric", "feynman"]
best = float("inf")
for _ in range(3):
    t0 = time.perf_counter()
    acc = 0.0
    for f1, f2 in pairs:
        for k in kinds:
            acc += abs(evaluate(k, f1, f2).value)
    best = min(best, time.perf_counter() - t0)
print(json.dumps({{"backend": specfun.backend_name(), "seconds": best,
                   "evals": {pairs} * len(kinds)}}))
"""


def _time_evaluator(backend_env: str, pairs: int) -> dict:
    env = dict(os.environ, SMEARPROP_BACKEND=backend_env)
    proc = subprocess.run(
        [sys.executable, "-c", _EVAL_SNIPPET.format(pairs=pairs)],
        capture_output=True, text=True, env=env, check=True)
    return json.loads(proc.stdout)


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=20000,
                    help="arguments per primitive timing")
    ap.add_argument("--pairs", type=int, default=300,
                    help="smearing pairs per evaluator timing")
    args = ap.parse_args()

    samples = _sample_args(args.n, seed=11)
    print(f"primitive timings, {args.n} calls each (best of 3):")
    for fn in ("wofz", "erf_complex"):
        t_py = _time_primitive(py_backend, fn, samples)
        line = f"  {fn:12s} python {t_py * 1e3:8.1f} ms"
        if core_backend is not None:
            t_c = _time_primitive(core_backend, fn, samples)
            line += f"   compiled {t_c * 1e3:8.1f} ms   speedup {t_py / t_c:5.1f}x"
        print(line)

    print(f"\nfull evaluator, {args.pairs} pairs x 7 kinds (best of 3):")
    rows = [_time_evaluator("python", args.pairs)]
    if core_backend is not None:
        rows.append(_time_evaluator("compiled", args.pairs))
    for row in rows:
        rate = row["evals"] / row["seconds"]
        print(f"  {row['backend']:14s} {row['seconds'] * 1e3:8.1f} ms"
              f"   {rate:9.0f} evals/s")
    if len(rows) == 2:
        print(f"  end-to-end speedup {rows[0]['seconds'] / rows[1]['seconds']:.2f}x")
    if core_backend is None:
        print("  (compiled backend not built; python fallback only)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
