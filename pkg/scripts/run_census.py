#!/usr/bin/env python3
"""Print the cell census for small ranks: counts per stratum, dimension
multisets, and the alternating sum over cells (a regression constant)."""

import argparse
from collections import Counter

from tnncompact.cells import enumerate_cells


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=3)
    args = ap.parse_args()
    for n in range(2, args.nmax + 1):
        cells = enumerate_cells(n)
        per_j = Counter(tuple(sorted(label.J.J)) for label, _ in cells)
        dims = Counter(d for _, d in cells)
        euler = sum((-1) ** d for _, d in cells)
        print(f"n={n}: {len(cells)} cells, alternating sum {euler}")
        for js, count in sorted(per_j.items()):
            print(f"  J={set(js) if js else '{}'}: {count} cells")
        print("  dims:", dict(sorted(dims.items())))


if __name__ == "__main__":
    main()
