"""Compare the compiled and pure-Python wedge/differential kernels.

    python benchmarks/bench_kernels.py [--n 5] [--repeat 5]
"""

import argparse
import random
import sys
import timeit

sys.path.insert(0, __file__.rsplit("/", 2)[0] + "/tests")

from gen import normal_form_algebra, random_pd  # noqa: E402

from nilherm.forms import differential, use_backend  # noqa: E402
from nilherm.kernels import available_backends  # noqa: E402
from nilherm.metrics import classify, fundamental_form, omega_power  # noqa: E402


def workloads(n, rng):
    A, _ = normal_form_algebra(rng, n=n, k=max(1, n - 2), density=0.8)
    H = random_pd(rng, n)
    omega = fundamental_form(H)
    w = omega_power(omega, n - 2)
    return {
        "omega^(n-1)": lambda: omega_power(omega, n - 1),
        "d(omega^(n-2))": lambda: differential(w, A),
        "classify": lambda: classify(H, A),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the Python backend is available")
    rows = {}
    for name in backends:
        with use_backend(name):
            for label, fn in workloads(args.n, random.Random(0)).items():
                fn()  # warm caches
                rows.setdefault(label, {})[name] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
    print(f"n={args.n}, best of {args.repeat}")
    print(f"{'workload':<18}" + "".join(f"{b:>12}" for b in backends) + ("   speedup" if len(backends) > 1 else ""))
    for label, t in rows.items():
        line = f"{label:<18}" + "".join(f"{t[b] * 1e3:>10.2f}ms" for b in backends)
        if len(backends) > 1:
            line += f"   {t['python'] / t['cython']:>6.2f}x"
        print(line)


if __name__ == "__main__":
    main()
