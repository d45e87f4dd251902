"""Compare the numba kernels with the numpy fallback.

Each backend runs in its own interpreter because the backend is fixed at import
time by ``GW_KIT_DISABLE_NUMBA``.  Usage::

    python benchmarks/bench_kernels.py [--m 7] [--steps 6] [--repeat 5]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from gwkit import _kernels as k

m, steps, repeat = map(int, sys.argv[1:4])
perms = k.all_permutations(m)
trans = k.transpositions(m)
counts = np.zeros(len(perms), dtype=np.int64)
counts[0] = 1

def best(fn):
    fn()  # warm-up (includes numba compilation)
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out

res = {"backend": k.BACKEND}
res["rank"], ranks = best(lambda: k.rank_permutations(perms))
res["action_table"], table = best(lambda: k.action_table(perms, trans))
res["walk"], w = best(lambda: k.walk(table, counts, steps))
res["cycle_types"], cyc = best(lambda: k.cycle_types(perms))
res["checksum"] = [int(ranks.sum()), int(table.sum()), int(w.sum()), int(cyc.sum())]
print(json.dumps(res))
"""


def run_backend(disable: bool, m: int, steps: int, repeat: int) -> dict:
    env = dict(os.environ, GW_KIT_DISABLE_NUMBA="1" if disable else "0")
    out = subprocess.run([sys.executable, "-c", WORKER, str(m), str(steps), str(repeat)],
                         env=env, check=True, capture_output=True, text=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=7)
    ap.add_argument("--steps", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    fast = run_backend(False, args.m, args.steps, args.repeat)
    slow = run_backend(True, args.m, args.steps, args.repeat)
    print(f"S_{args.m}: {fast['backend']} vs {slow['backend']}, best of {args.repeat}")
    print(f"{'kernel':<14}{fast['backend']:>12}{slow['backend']:>12}{'speedup':>10}")
    for key in ("rank", "action_table", "walk", "cycle_types"):
        a, b = fast[key], slow[key]
        print(f"{key:<14}{a * 1e3:>10.2f}ms{b * 1e3:>10.2f}ms{b / a if a else float('inf'):>9.1f}x")
    same = fast["checksum"] == slow["checksum"]
    print("outputs agree" if same else "OUTPUTS DIFFER")
    return 0 if same else 1


if __name__ == "__main__":
    raise SystemExit(main())
