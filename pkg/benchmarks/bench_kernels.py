"""Compare the compiled kernels with their pure-Python twins.

    python3 benchmarks/bench_kernels.py [--repeat N]

Prints one line per kernel with the best-of-N time for each backend and the
speedup.  Both backends are checked to return identical results first.
"""

import argparse
import importlib
import random
import timeit


def _workloads(rng):
    a = [rng.randrange(-10 ** 12, 10 ** 12) for _ in range(120)]
    b = [rng.randrange(-10 ** 12, 10 ** 12) for _ in range(120)]
    sturm_in = [rng.randrange(-50, 50) for _ in range(14)] + [1]
    wp = 512
    one = 1 << wp
    # 2F1(1/3, 5/7; 11/4; 8/9) in fixed point
    args_2f1 = (one // 3, 5 * one // 7, 11 * one // 4, 8 * one // 9, wp, wp + 8, 20000)
    return {
        "ipoly_mul(120x120)": ("ipoly_mul", (a, b)),
        "ipoly_prem(120/60)": ("ipoly_prem", (a, b[:60])),
        "sturm_chain(deg 14)": ("sturm_chain", (sturm_in,)),
        "hyp2f1_fixed(512 bits)": ("hyp2f1_fixed", args_2f1),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    py = importlib.import_module("gpfkit._pykernels")
    try:
        cy = importlib.import_module("gpfkit._ckernels")
    except ImportError:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation` with Cython available")
        return 1

    rng = random.Random(20240611)
    print(f"{'kernel':<26}{'python (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for label, (name, fargs) in _workloads(rng).items():
        f_py, f_cy = getattr(py, name), getattr(cy, name)
        if f_py(*fargs) != f_cy(*fargs):
            raise SystemExit(f"backends disagree on {label}")
        number = 20
        t_py = min(timeit.repeat(lambda: f_py(*fargs), number=number, repeat=args.repeat)) / number
        t_cy = min(timeit.repeat(lambda: f_cy(*fargs), number=number, repeat=args.repeat)) / number
        print(f"{label:<26}{t_py * 1e3:>14.3f}{t_cy * 1e3:>14.3f}{t_py / t_cy:>9.2f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
