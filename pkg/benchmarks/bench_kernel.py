"""Compare the compiled enumeration kernel with the pure-Python one.

    python3 benchmarks/bench_kernel.py            # quick cases
    python3 benchmarks/bench_kernel.py --slow     # adds (4, 4, 2), about 2.5 minutes

Both kernels must return the same skeletons; the script exits 1 otherwise.
"""

import argparse
import sys
import time

from dehn_graph.enumerate import KERNEL, EnumSpec, enumerate_skeletons

QUICK = [(2, 4, 1), (4, 4, 1), (3, 4, 2)]
SLOW = [(4, 4, 2)]


def timed(spec, p, q, d, pure):
    t0 = time.perf_counter()
    out = enumerate_skeletons(spec, p, q, d, pure_python=pure)
    return out, time.perf_counter() - t0


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--slow", action="store_true", help="include the (4, 4, 2) case")
    ap.add_argument("--repeat", type=int, default=1, help="best of N runs per kernel")
    args = ap.parse_args(argv)
    if KERNEL != "compiled":
        print("compiled kernel not built; reinstall with Cython and a C compiler", file=sys.stderr)
        return 1
    print(f"{'shape':>10} {'skeletons':>10} {'compiled':>10} {'python':>10} {'speedup':>8}")
    ok = True
    for p, q, d in QUICK + (SLOW if args.slow else []):
        spec = EnumSpec(p=p, q=q, delta=d)
        fast = min((timed(spec, p, q, d, False) for _ in range(args.repeat)), key=lambda r: r[1])
        slow = min((timed(spec, p, q, d, True) for _ in range(args.repeat)), key=lambda r: r[1])
        same = [s.key() for s in fast[0]] == [s.key() for s in slow[0]]
        ok &= same
        print(f"{str((p, q, d)):>10} {len(fast[0]):>10} {fast[1]:>9.2f}s {slow[1]:>9.2f}s "
              f"{slow[1] / max(fast[1], 1e-9):>7.1f}x{'' if same else '  MISMATCH'}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
