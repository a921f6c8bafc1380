"""Compare the pure-Python and compiled kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json]

Kernel rows call each backend module directly on the same term maps.  The
``end-to-end`` rows rerun a normalizer workload in a subprocess with and
without ``CUNTZALG_PURE_PYTHON=1``, since the algebra layer binds its
backend at import.
"""
import argparse
import json
import os
import random
import subprocess
import sys
import timeit
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from cuntzalg import kernels  # noqa: E402
from cuntzalg.words import prefix_free_sets  # noqa: E402
from helpers import random_element  # noqa: E402

WORKLOAD = """
import time
from cuntzalg import AlgebraSpec, BACKEND, enumerate_S_sim, build_U_sigma, verify_U1, mul, equals
s = AlgebraSpec(2, [[[1, 1]], [[1, 2]], [[2, 1], [2, 2]]])
t0 = time.perf_counter()
units = {p: build_U_sigma(s, p).element for p in enumerate_S_sim(s)}
for p, U in units.items():
    assert verify_U1(U, s, 5)
    for q, V in units.items():
        assert equals(mul(U, V), units[p * q])
print(BACKEND, time.perf_counter() - t0)
"""


def kernel_cases(rng):
    xs = [random_element(rng, 3, 12, 4).terms for _ in range(40)]
    ys = [random_element(rng, 3, 12, 4).terms for _ in range(40)]
    targets = []
    for x in xs:
        lv = {}
        for a, b in x:
            d = len(a) - len(b)
            lv[d] = max(lv.get(d, 0), len(b) + 2)
        targets.append(lv)
    children = list(prefix_free_sets(2, 2))
    ks = [sum(2 ** (2 - len(w)) for w in c) for c in children]
    masks = [sum(1 << r for r, w in enumerate([(1, 1), (1, 2), (2, 1), (2, 2)])
                 if any(w[: len(p)] == p for p in c)) for c in children]

    def mul_case(k):
        for x, y in zip(xs, ys):
            k.mul_terms(x, y)

    def expand_collapse_case(k):
        for x, lv in zip(xs, targets):
            k.collapse_terms(k.expand_terms(x, lv, 3), 3)

    def shift_star_case(k):
        for x in xs:
            k.star_terms(k.shift_terms(x, 3))

    def census_case(k):
        k.census_product(ks, masks, 2, 8, 255)

    return {
        "mul_terms": mul_case,
        "expand+collapse": expand_collapse_case,
        "shift+star": shift_star_case,
        "census_product n=2 L=3": census_case,
    }


def end_to_end(pure: bool) -> float:
    env = dict(os.environ)
    if pure:
        env["CUNTZALG_PURE_PYTHON"] = "1"
    else:
        env.pop("CUNTZALG_PURE_PYTHON", None)
    out = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True,
                         text=True, check=True).stdout.split()
    return float(out[1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    backends = {"python": kernels.python_backend}
    if kernels.compiled_backend is not None:
        backends["cython"] = kernels.compiled_backend
    rows = []
    for name, case in kernel_cases(random.Random(0)).items():
        row = {"case": name}
        for bname, mod in backends.items():
            row[bname] = min(timeit.repeat(lambda: case(mod), number=1, repeat=args.repeat))
        rows.append(row)
    row = {"case": "end-to-end U_sigma group check"}
    row["python"] = min(end_to_end(True) for _ in range(args.repeat))
    if "cython" in backends:
        row["cython"] = min(end_to_end(False) for _ in range(args.repeat))
    rows.append(row)

    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'case':34} {'python (ms)':>12} {'cython (ms)':>12} {'speedup':>8}")
    for r in rows:
        py = r["python"] * 1e3
        cy = r.get("cython")
        if cy is None:
            print(f"{r['case']:34} {py:12.2f} {'n/a':>12} {'':>8}")
        else:
            print(f"{r['case']:34} {py:12.2f} {cy * 1e3:12.2f} {r['python'] / cy:7.2f}x")


if __name__ == "__main__":
    main()
