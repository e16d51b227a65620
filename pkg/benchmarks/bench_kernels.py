"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat 5] [--json]

Each kernel is timed on the same inputs under every importable backend and
the outputs are checked for agreement before timings are reported.
"""

import argparse
import json
import random
import time

import numpy as np

from preplab.kernels import backends
from preplab.prepfind import initial_guesses


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def escape_case(mod, size):
    # z^2 + t over [-2, 2]^2, c = 0, radius 4
    acoef = np.array([1, 0, 0], dtype=complex)
    bcoef = np.array([0, 0, 1], dtype=complex)
    out = np.empty((size, size), dtype=np.int32)
    step = 4.0 / size

    def run():
        mod.escape_rows(acoef, bcoef, 0j, -2.0, step, -2.0, step, size, 0, size, 50, 4.0, out)
        return out.copy()
    return run


def aberth_case(mod, degree, seed=0):
    rng = np.random.default_rng(seed)
    c = np.sqrt(rng.random(degree + 1)) * np.exp(2j * np.pi * rng.random(degree + 1))
    c[0] = 1.0
    z0 = initial_guesses(list(c))
    return lambda: mod.aberth(list(c), z0, 500)


def convolve_case(mod, n, bits, seed=0):
    rng = random.Random(seed)
    a = [rng.getrandbits(bits) - (1 << (bits - 1)) for _ in range(n)]
    b = [rng.getrandbits(bits) - (1 << (bits - 1)) for _ in range(n)]
    return lambda: mod.int_convolve(a, b)


CASES = {
    "escape_rows 256x256": lambda m: escape_case(m, 256),
    "escape_rows 1024x1024": lambda m: escape_case(m, 1024),
    "aberth deg 64": lambda m: aberth_case(m, 64),
    "aberth deg 256": lambda m: aberth_case(m, 256),
    "int_convolve 64 x 64-bit": lambda m: convolve_case(m, 64, 64),
    "int_convolve 32 x 30-bit": lambda m: convolve_case(m, 32, 30),
}


def agree(a, b):
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    if isinstance(a, tuple):
        # aberth: compare root sets, order may differ after convergence
        ra, rb = np.sort_complex(a[0]), np.sort_complex(b[0])
        return bool(np.allclose(ra, rb, rtol=1e-8, atol=1e-10))
    return a == b


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    mods = backends()
    rows = []
    for name, make in CASES.items():
        timings, outputs = {}, {}
        for bname, mod in mods.items():
            timings[bname], outputs[bname] = best_of(make(mod), args.repeat)
        vals = list(outputs.values())
        row = {"case": name, **{f"{k}_s": v for k, v in timings.items()},
               "agree": all(agree(vals[0], v) for v in vals[1:])}
        if "cython" in timings:
            row["speedup"] = timings["python"] / timings["cython"]
        rows.append(row)
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"backends: {', '.join(mods)}")
    for r in rows:
        cells = [f"{r['case']:<26}", f"python {r['python_s'] * 1e3:9.2f} ms"]
        if "cython_s" in r:
            cells += [f"cython {r['cython_s'] * 1e3:9.2f} ms", f"x{r['speedup']:6.1f}"]
        cells.append("agree" if r["agree"] else "DISAGREE")
        print("  ".join(cells))


if __name__ == "__main__":
    main()
