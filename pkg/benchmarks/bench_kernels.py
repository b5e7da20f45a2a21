"""Compare the compiled and numpy join kernels.

    python3 benchmarks/bench_kernels.py [--model derived_A2] [--repeat 20]

Times the raw star join on the model's triangle table and a full
extension-closure evaluation with each backend swapped in.
"""

import argparse
import time

import numpy as np

from tricat import bundled_model, kernels
from tricat.classes import Evaluator
from tricat.model import UniverseSpec
from tricat.parser import parse_expr

BACKENDS = {"numpy": (kernels.join_into_numpy, kernels.count_join_numpy)}
if kernels.BACKEND == "cython":
    BACKENDS["cython"] = (kernels.join_into_compiled, kernels.count_join_compiled)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--model", default="derived_A2")
    ap.add_argument("--repeat", type=int, default=20)
    ap.add_argument("--class", dest="cls", default="ucosusp(gen[S1, S2, P1])")
    args = ap.parse_args()

    m = bundled_model(args.model)
    u = Evaluator(m, UniverseSpec()).uni
    rng = np.random.default_rng(0)
    m1 = (rng.random(u.N) < 0.3).astype(np.uint8)
    m2 = (rng.random(u.N) < 0.3).astype(np.uint8)
    print(f"model {m.name}: {u.N} objects, {len(u.tri_x)} triangle rows")
    if "cython" not in BACKENDS:
        print("compiled kernels not built; numpy only")

    results = {}
    for name, (join_into, _) in BACKENDS.items():
        def star():
            out = np.zeros(u.N, dtype=np.uint8)
            join_into(u.tri_x, u.tri_y, u.tri_z, m1, m2, out)

        saved = kernels.join_into
        kernels.join_into = join_into
        try:
            def closure():
                ev = Evaluator(m, UniverseSpec(), uni=u)
                ev.eval(parse_expr(args.cls, m))
            results[name] = (best_of(star, args.repeat), best_of(closure, max(1, args.repeat // 5)))
        finally:
            kernels.join_into = saved

    print(f"{'backend':8s} {'star join':>12s} {'closure':>12s}")
    for name, (s, c) in results.items():
        print(f"{name:8s} {s * 1e3:10.3f}ms {c * 1e3:10.1f}ms")
    if len(results) == 2:
        (s0, c0), (s1, c1) = results["numpy"], results["cython"]
        print(f"speedup  {s0 / s1:11.1f}x {c0 / c1:11.1f}x")


if __name__ == "__main__":
    main()
