#!/usr/bin/env python3
"""Tabulate the four-copy plane-filling experiment.

For each iteration n: verify the single curve never repeats an edge, verify
the four quarter-turned copies stay disjoint, and report the largest square
window whose interior edges are fully covered.
"""

import sys

from fractallab import dragonlab


def main() -> None:
    n_max = int(sys.argv[1]) if len(sys.argv) > 1 else 14
    print(f"{'n':>3} {'edges':>7} {'overlap':>8} {'4-copy':>7} {'side':>5}  corner")
    for n in range(1, n_max + 1):
        single = dragonlab.check_non_overlap(n)
        union = dragonlab.four_copy_union(n)
        square = dragonlab.max_filled_square(union)
        print(
            f"{n:>3} {single.edge_count:>7} "
            f"{'none' if single.ok else 'YES':>8} "
            f"{'ok' if max(union.values()) == 1 else 'HIT':>7} "
            f"{square.side:>5}  {square.corner}"
        )


if __name__ == "__main__":
    main()
