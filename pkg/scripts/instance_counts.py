"""Ground operator counts for the rocket domain as packages grow."""

import argparse

from tim.bench import rocket_instance_counts


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-packages", type=int, default=5)
    args = ap.parse_args()
    print("p  typed  4(p+1)  legal  static  (p+3)^2(p+5)+2p  all")
    for p in range(1, args.max_packages + 1):
        c = rocket_instance_counts(p)
        print(f"{p}  {c['typed']:5d}  {4 * (p + 1):6d}  {c['legal']:5d}  {c['static']:6d}"
              f"  {(p + 3) ** 2 * (p + 5) + 2 * p:15d}  {c['all']}")


if __name__ == "__main__":
    main()
