"""Exhaustive parity sweep over near-triangulations with an outer 4-cycle."""
import argparse
import time

from strongembed.neartri import sweep


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("n", type=int, nargs="?", default=12, help="maximum number of vertices")
    args = p.parse_args()
    for n in range(5, args.n + 1):
        t = time.perf_counter()
        r = sweep(n)
        print(f"n<={n:2d}  triangulations={r.triangulations:4d}  instances={r.instances:5d}  "
              f"mixed={r.mixed:5d}  uniform={r.uniform:4d}  counterexamples={len(r.counterexamples)}  "
              f"{time.perf_counter() - t:.1f}s")


if __name__ == "__main__":
    main()
