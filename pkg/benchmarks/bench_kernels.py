"""Compare the compiled and pure-Python kernels on the workloads the
package actually runs.

    python benchmarks/bench_kernels.py [--repeat N]

Each backend is imported in a fresh interpreter (the backend is chosen
at import time), and the best of N runs is reported per workload.
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, sys, timeit
import sirseries
from sirseries import InitialState, SirParams, dtm_solve, ladm_solve, rk4_integrate
from sirseries import _backend

repeat = int(sys.argv[1])
p, i = SirParams(), InitialState()
pf = SirParams(0.2, 0.1, 0.3, [1.0], [0.5], [0.2])
cases = {
    "dtm_solve degree 30": lambda: dtm_solve(p, i, 30),
    "dtm_solve degree 128": lambda: dtm_solve(p, i, 128),
    "ladm_solve n 30": lambda: ladm_solve(pf, i, 30),
    "rk4 [0,1] step 1e-4": lambda: rk4_integrate(p, i, 1.0, 1e-4),
    "rk4 [0,1] step 1e-5": lambda: rk4_integrate(p, i, 1.0, 1e-5),
}
out = {"backend": _backend.BACKEND}
for name, fn in cases.items():
    number = 1 if "rk4" in name else 20
    out[name] = min(timeit.repeat(fn, number=number, repeat=repeat)) / number
print(json.dumps(out))
"""


def run(pure: bool, repeat: int) -> dict:
    env = dict(os.environ)
    if pure:
        env["SIRSERIES_PURE_PYTHON"] = "1"
    else:
        env.pop("SIRSERIES_PURE_PYTHON", None)
    res = subprocess.run([sys.executable, "-c", WORKLOAD, str(repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    compiled = run(False, args.repeat)
    python = run(True, args.repeat)
    if compiled["backend"] != "cython":
        print("compiled extension not available; only the Python backend was timed\n")
    names = [k for k in python if k != "backend"]
    width = max(map(len, names))
    print(f"{'workload':<{width}}  {'cython':>11}  {'python':>11}  speedup")
    for name in names:
        c, p = compiled[name], python[name]
        print(f"{name:<{width}}  {c * 1e3:9.3f}ms  {p * 1e3:9.3f}ms  {p / c:6.1f}x")


if __name__ == "__main__":
    main()
