"""Compare the numba kernels with their pure-numpy fallbacks.

Kernel timings call both implementations in-process on identical inputs
and check that the outputs agree.  End-to-end timings run the homology
computation in subprocesses, with and without ``KHOVANOV_DISABLE_NUMBA=1``.

    python benchmarks/bench_kernels.py [--repeat 5] [--max-crossings 12]
"""
from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from khovanov import kernels
from khovanov.corpus import CORPUS, braid_closure
from khovanov.diagram import parse_pd
from khovanov.states import state_space

EXTRA = {
    "torus-3-5": ((1, 2) * 5, 3),
    "braid-12": ((1, -2, 3, -2, 1, 3, -2, 1, 3, -2, -1, 3), 4),
}


def diagrams(max_crossings):
    out = {n: parse_pd(pd) for n, pd in CORPUS.items()}
    out.update({n: braid_closure(w, s) for n, (w, s) in EXTRA.items()})
    return {n: d for n, d in out.items() if 4 <= d.n <= max_crossings}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        res = fn()
        times.append(time.perf_counter() - t0)
    return min(times), res


def kernel_rows(ds, repeat):
    rows = []
    for name, d in ds.items():
        slots = np.array(d.crossings, dtype=np.int64).reshape(-1, 4)
        E = d.edge_count
        t_nb, a = best_of(lambda: kernels._circle_labels_numba(slots, E, kernels._PAIRS), repeat)
        t_np, b = best_of(lambda: kernels._circle_labels_numpy(slots, E, kernels._PAIRS), repeat)
        assert np.array_equal(a, b), name
        rows.append((name, d.n, "circle_labels", t_nb, t_np))

        sp = state_space(d)
        args = (slots, sp.cidx, sp.ccount, sp.offset, d.free_loops)
        t_nb, a = best_of(lambda: kernels._incidence_numba(*args), repeat)
        t_np, b = best_of(lambda: kernels._incidence_numpy(*args), repeat)
        assert all(np.array_equal(np.sort(x), np.sort(y)) for x, y in zip(a, b)), name
        rows.append((name, d.n, "incidence", t_nb, t_np))
    return rows


END_TO_END = """
import sys, time
from khovanov.corpus import braid_closure, CORPUS
from khovanov.diagram import parse_pd
from khovanov.homology import homology_table
homology_table(parse_pd(CORPUS["hopf"]))
d = {name}
t0 = time.perf_counter()
homology_table(d)
print(time.perf_counter() - t0)
"""


def end_to_end(name, d):
    src = "braid_closure(%r, %d)" % EXTRA[name] if name in EXTRA else "parse_pd(CORPUS[%r])" % name
    out = {}
    for label, flag in (("numba", None), ("numpy", "1")):
        env = dict(os.environ)
        env.pop("KHOVANOV_DISABLE_NUMBA", None)
        if flag:
            env["KHOVANOV_DISABLE_NUMBA"] = flag
        res = subprocess.run([sys.executable, "-c", END_TO_END.format(name=src)], env=env,
                             capture_output=True, text=True, check=True)
        out[label] = float(res.stdout.split()[-1])
    return out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--max-crossings", type=int, default=12)
    args = p.parse_args(argv)
    ds = diagrams(args.max_crossings)
    kernel_rows({"hopf": parse_pd(CORPUS["hopf"])} | ds, 1)  # JIT warm-up

    print("%-20s %3s %-14s %12s %12s %8s" % ("diagram", "n", "kernel", "numba [ms]", "numpy [ms]",
                                               "speedup"))
    for name, n, kern, t_nb, t_np in kernel_rows(ds, args.repeat):
        print("%-20s %3d %-14s %12.3f %12.3f %7.1fx" % (name, n, kern, 1e3 * t_nb, 1e3 * t_np,
                                                         t_np / max(t_nb, 1e-9)))
    print()
    print("%-20s %3s %14s %14s" % ("homology", "n", "numba [s]", "numpy [s]"))
    for name, d in ds.items():
        t = end_to_end(name, d)
        print("%-20s %3d %14.3f %14.3f" % (name, d.n, t["numba"], t["numpy"]))


if __name__ == "__main__":
    main()
