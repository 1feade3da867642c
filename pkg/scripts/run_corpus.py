"""Analyze every bundled domain and, where it is small enough, verify it."""

import argparse

from tim.analysis import analyze
from tim.corpus import NAMES, load
from tim.oracle import check_invariant, check_projection_soundness, enumerate_reachable

# too large to close exhaustively
SKIP_VERIFY = {"mystery", "logistics"}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--limit", type=int, default=200_000)
    args = ap.parse_args()
    for name in NAMES:
        a = analyze(*load(name))
        line = (f"{name:12s} {len(a.table.types):2d} types  {len(a.state_invariants):3d} state"
                f"  {len(a.domain_invariants):2d} domain  {len(a.subspace_invariants()):3d} sub-space")
        if name not in SKIP_VERIFY:
            reach = enumerate_reachable(a.domain, a.problem, args.limit)
            ok = check_projection_soundness(a.property_spaces(), reach).ok and all(
                check_invariant(i.formula, reach, a.members) for i in a.invariants())
            line += f"  {len(reach.states)} states {'ok' if ok else 'FAIL'}"
        print(line)


if __name__ == "__main__":
    main()
