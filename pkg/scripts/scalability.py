"""Print analysis time against schema count and against problem size."""

import argparse

from tim.bench import loglog_slope, mystery_timings, od_timings


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()
    runs = od_timings([3, 6, 12, 24, 40, 60], args.repeats)
    print("schemas  seconds")
    for n, t in runs:
        print(f"{n:7d}  {t:.4f}")
    print(f"fit exponent {loglog_slope(*zip(*runs)):.2f}\n")
    runs = mystery_timings(range(1, 9), args.repeats)
    print("bytes  seconds")
    for s, t in runs:
        print(f"{s:5d}  {t:.4f}")
    print(f"fit exponent {loglog_slope(*zip(*runs)):.2f}")


if __name__ == "__main__":
    main()
