"""Time the kernels with numba and with the pure-Python fallback.

    python benchmarks/bench_kernels.py            # runs both, prints a table
    python benchmarks/bench_kernels.py --worker   # one backend, picked by EERBRAID_DISABLE_NUMBA

Each backend runs in its own interpreter because the flag is read at import.
The first call is timed separately so numba's compile cost is visible.
"""
import argparse
import json
import os
import random
import subprocess
import sys
import time

import numpy as np


def _time(fn, repeat):
    t0 = time.perf_counter()
    fn()
    first = time.perf_counter() - t0
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn()
    return first, (time.perf_counter() - t0) / repeat


def worker(scale):
    from eerbraid import _accel, kernels
    from eerbraid.garside import simples
    from eerbraid.oracle import RewriteSystem
    from eerbraid.presentation import presentation
    from eerbraid.reversing import complement_table

    rng = random.Random(0)
    table = complement_table(3, 4)
    ptr, ulen, vlen, buf, exps = table._arrays
    letters = [x for g in table.pres.letters() for x in (g, -g)]
    words = [np.array([rng.choice(letters) for _ in range(12)], np.int64) for _ in range(200 * scale)]

    def rev():
        for w in words:
            kernels.reverse_word(w, ptr, ulen, vlen, buf, table.pres.size, exps, 3, 100_000)

    system = RewriteSystem.from_relations(presentation(3, 3))
    arrays = system._rule_arrays()

    def closure():
        kernels.class_labels(4 + (scale > 1), 8, *arrays)

    lat = simples(3, 4)
    codes = [np.array([rng.randrange(15) for _ in range(20)], np.int64) for _ in range(200 * scale)]

    def greedy():
        for c in codes:
            kernels.greedy_factors(c, lat.mul, lat.lquot, 0)

    out = {"backend": _accel.backend()}
    for name, fn in (("reverse_word", rev), ("class_labels", closure), ("greedy_factors", greedy)):
        out[name] = _time(fn, 3)
    print(json.dumps(out))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--worker", action="store_true")
    ap.add_argument("--scale", type=int, default=1)
    args = ap.parse_args()
    if args.worker:
        worker(args.scale)
        return
    rows = []
    for flag in (None, "1"):
        env = dict(os.environ)
        env.pop("EERBRAID_DISABLE_NUMBA", None)
        if flag:
            env["EERBRAID_DISABLE_NUMBA"] = flag
        res = subprocess.run([sys.executable, __file__, "--worker", "--scale", str(args.scale)],
                             env=env, capture_output=True, text=True, check=True)
        rows.append(json.loads(res.stdout))
    fast, slow = rows
    print(f"{'kernel':16} {'numba first':>12} {'numba':>10} {'python':>10} {'speedup':>8}")
    for name in ("reverse_word", "class_labels", "greedy_factors"):
        f_first, f = fast[name]
        _, s = slow[name]
        print(f"{name:16} {f_first:12.4f} {f:10.4f} {s:10.4f} {s / f:8.1f}x")


if __name__ == "__main__":
    main()
