"""Compare the compiled and pure-Python branch-and-bound paths.

Each (case, mode) pair runs in a fresh interpreter so the TRISYS_DISABLE_JIT
flag is read at import time. ``cold`` is the first call (for the compiled path
this includes loading or building the numba cache, plus the sub-searches that
supply the one-vertex-smaller bound); ``warm`` is the best of ``--repeat``
further calls with those caches filled, i.e. mostly kernel time.

    python benchmarks/bench_search.py            # n <= 7 cases
    python benchmarks/bench_search.py --full     # adds n = 8 (pure Python takes minutes)
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

CASES = [
    (6, "ABCD", False),
    (7, "CD", False),
    (7, "AC", True),
    (7, "ABD", True),
]
FULL_CASES = [
    (8, "ABD", True),
    (8, "AD", False),
]

WORKER = r"""
import json, sys, time
from trisys import _accel
from trisys.search import max_free
n, S, enum, repeat = int(sys.argv[1]), sys.argv[2], sys.argv[3] == "1", int(sys.argv[4])
t0 = time.perf_counter()
r = max_free(n, S, enumerate=enum)
cold = time.perf_counter() - t0
warm = []
for _ in range(repeat):
    t0 = time.perf_counter()
    r2 = max_free(n, S, enumerate=enum)
    warm.append(time.perf_counter() - t0)
    assert r2.max_size == r.max_size
print(json.dumps({"jit": _accel.JIT_ENABLED, "max_size": r.max_size, "classes": r.class_count,
                  "nodes": r.nodes_expanded, "cold": cold, "warm": min(warm) if warm else cold}))
"""


def run_case(n: int, S: str, enum: bool, jit: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("TRISYS_DISABLE_JIT", None)
    if not jit:
        env["TRISYS_DISABLE_JIT"] = "1"
    out = subprocess.run(
        [sys.executable, "-c", WORKER, str(n), S, "1" if enum else "0", str(repeat)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--full", action="store_true", help="include the n = 8 cases")
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--json", help="also write the raw rows here")
    args = p.parse_args(argv)

    cases = CASES + (FULL_CASES if args.full else [])
    rows = []
    print(f"{'case':<16}{'nodes':>10}{'jit cold':>11}{'jit warm':>11}{'py warm':>11}{'speedup':>10}")
    for n, S, enum in cases:
        jit = run_case(n, S, enum, True, args.repeat)
        py = run_case(n, S, enum, False, max(1, args.repeat // 3))
        if (jit["max_size"], jit["classes"], jit["nodes"]) != (py["max_size"], py["classes"], py["nodes"]):
            print(f"mismatch on ({n}, {S}): {jit} vs {py}", file=sys.stderr)
            return 1
        speedup = py["warm"] / jit["warm"] if jit["warm"] > 0 else float("inf")
        label = f"n={n} {S}{' enum' if enum else ''}"
        print(f"{label:<16}{jit['nodes']:>10}{jit['cold']:>10.3f}s{jit['warm']:>10.4f}s{py['warm']:>10.3f}s{speedup:>9.0f}x")
        rows.append({"n": n, "forbid": S, "enumerate": enum, "jit": jit, "python": py, "speedup": speedup})
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
