"""Compare the compiled blade kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--samples 300]

Reports the best wall time per workload for each backend and the speedup.
Results are also checked for bitwise agreement.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from hpfield.dirac import contraction_equivalence, standard_isotropy_suite
from hpfield.exterior import FORM, VECTOR, kernels, random_element
from hpfield.exterior.identities import algebra_suite


def _raw_kernels(samples: int):
    rng = np.random.default_rng(0)
    pairs = [(random_element(rng, 10, 4, FORM)._terms, random_element(rng, 10, 3, FORM)._terms) for _ in range(samples)]
    contr = [(random_element(rng, 10, 2, VECTOR)._terms, random_element(rng, 10, 6, FORM)._terms) for _ in range(samples)]

    def run():
        out = [kernels.wedge_terms(a, b) for a, b in pairs]
        out += [kernels.contract_terms(a, b) for a, b in contr]
        return out

    return run


WORKLOADS = {
    "raw_wedge_contract": lambda s: _raw_kernels(s),
    "algebra_suite": lambda s: (lambda: [r.max_residual for r in algebra_suite(s, 1)]),
    "contraction_n3_N2": lambda s: (lambda: contraction_equivalence(3, 2, s, 1).max_residual),
    "isotropy_n0_n1_n2": lambda s: (lambda: [r.max_residual for r in standard_isotropy_suite((0, 1, 2), max(1, s // 3), 1)]),
}


def best_time(fn, repeat: int):
    best, result = np.inf, None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--samples", type=int, default=300)
    args = ap.parse_args(argv)
    if not kernels.compiled_available():
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation` first")
        return 1
    previous = kernels.BACKEND
    print(f"{'workload':<22}{'python [s]':>12}{'compiled [s]':>14}{'speedup':>10}  identical")
    try:
        for name, make in WORKLOADS.items():
            fn = make(args.samples)
            kernels.use_backend("python")
            t_py, r_py = best_time(fn, args.repeat)
            kernels.use_backend("compiled")
            t_c, r_c = best_time(fn, args.repeat)
            print(f"{name:<22}{t_py:>12.4f}{t_c:>14.4f}{t_py / t_c:>9.1f}x  {r_py == r_c}")
    finally:
        kernels.use_backend(previous)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
