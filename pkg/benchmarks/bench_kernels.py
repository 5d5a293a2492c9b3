"""Time the hot kernels with numba on and off.

Each path runs in its own subprocess, since the switch is read at import
time (``SQEN_DISABLE_NUMBA``).  Numba timings exclude compilation: every
kernel is called once before the clock starts.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, time
import numpy as np
from sqenergy import _accel
from sqenergy.canon import canonical_labelling, enumerate_nonisomorphic
from sqenergy.coloring import chromatic_number
from sqenergy.graph import make_kneser
from sqenergy.random_graphs import sample_gnp

repeat = int(__import__("sys").argv[1])
canon_graphs = [sample_gnp(9, 0.5, s) for s in range(20)]
color_graphs = [sample_gnp(14, 0.5, s) for s in range(20)] + [make_kneser(6, 2)]

def canon():
    for g in canon_graphs:
        canonical_labelling(g)

def enum():
    sum(1 for _ in enumerate_nonisomorphic(6))

def color():
    for g in color_graphs:
        chromatic_number(g)

out = {"numba": _accel.USE_NUMBA}
for name, fn in (("canonical_code n=9 x20", canon), ("enumerate n=6", enum), ("chromatic n=14 x21", color)):
    fn()
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    out[name] = best
print(json.dumps(out))
"""


def run(disable: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env["SQEN_DISABLE_NUMBA"] = "1" if disable else "0"
    res = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(res.stdout.strip().splitlines()[-1])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    print(f"{'kernel':28s} {'numba [s]':>11s} {'fallback [s]':>13s} {'speedup':>9s}")
    for key in fast:
        if key == "numba":
            continue
        print(f"{key:28s} {fast[key]:11.4f} {slow[key]:13.4f} {slow[key] / fast[key]:8.1f}x")
    if not fast["numba"]:
        print("note: numba unavailable, both columns ran the fallback", file=sys.stderr)


if __name__ == "__main__":
    main()
