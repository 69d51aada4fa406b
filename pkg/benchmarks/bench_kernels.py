"""Compare the numba and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--n 200000] [--repeat 3]

Each backend runs in its own interpreter because the choice is made at
import time from EFFDIFF_DISABLE_NUMBA.
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
import effdiff
from effdiff import _backend
from effdiff.confidence import ncp_bounds_array
from effdiff.verify_mc import PopulationSpec, run_coverage_check

n, repeat = int(sys.argv[1]), int(sys.argv[2])
rng = np.random.default_rng(0)
t = rng.uniform(-20, 20, n)
df = np.exp(rng.uniform(0, np.log(1000), n))
ncp = rng.uniform(-20, 20, n)
k = _backend.kernels

def best(fn):
    fn()  # warm-up (compiles or loads the numba cache)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter(); fn(); times.append(time.perf_counter() - t0)
    return min(times)

m = max(n // 50, 100)
out = {
    "backend": effdiff.BACKEND,
    "nct_cdf": best(lambda: k.nct_cdf_array(t, df, ncp)),
    "lgamma": best(lambda: k.lgamma_array(df)),
    "ncp_bounds": best(lambda: ncp_bounds_array(t[:m], df[:m], 0.05)),
    "coverage_2e4": best(lambda: run_coverage_check(PopulationSpec(1, 0, 1, 1, 20, 20, replications=20000), "e")),
    "sizes": {"nct_cdf": n, "lgamma": n, "ncp_bounds": m},
}
print(json.dumps(out))
"""


def run(flag, n, repeat):
    env = dict(os.environ, EFFDIFF_DISABLE_NUMBA=flag)
    res = subprocess.run(
        [sys.executable, "-c", WORKER, str(n), str(repeat)], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    jit, ref = run("0", args.n, args.repeat), run("1", args.n, args.repeat)
    if jit["backend"] != "numba":
        print("numba is not installed; only the numpy backend is available")
    print(f"{'kernel':<14}{'size':>9}{jit['backend']:>12}{ref['backend']:>12}{'speedup':>10}")
    for name in ("nct_cdf", "lgamma", "ncp_bounds", "coverage_2e4"):
        size = jit["sizes"].get(name, 20000)
        print(f"{name:<14}{size:>9}{jit[name]:>11.4f}s{ref[name]:>11.4f}s{ref[name] / jit[name]:>9.1f}x")


if __name__ == "__main__":
    main()
