#!/usr/bin/env python3
"""Classify every small pattern by whether its semisaturation stays bounded.

Walks all nonzero 2D patterns up to --max-2d per side and all 3D patterns up
to --max-3d per side, prints census counts, and lists the bounded patterns.
With --verify, also checks each bounded pattern's corner-band construction
by flip verification, and spot-checks growth for a sample of unbounded
patterns via exact search.
"""

import argparse
from itertools import product
from math import prod

from satmat import (
    Matrix01,
    SearchBudget,
    Shape,
    classify_ssat,
    corner_block,
    exact_ssat,
    is_semisaturating,
)


def universe(dims, max_extent):
    for ext in product(*(range(1, max_extent + 1) for _ in range(dims))):
        shape = Shape(ext)
        for bits in range(1, 1 << shape.cell_count):
            yield Matrix01(shape, bits)


def one_line(p):
    rows = []
    for c in sorted(p.iter_ones()):
        rows.append("".join(str(x) for x in c))
    return f"{'x'.join(str(e) for e in p.shape.extents)}[{','.join(rows)}]"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-2d", type=int, default=3)
    ap.add_argument("--max-3d", type=int, default=2)
    ap.add_argument("--verify", action="store_true")
    ap.add_argument("--sample", type=int, default=20, help="unbounded growth spot checks")
    args = ap.parse_args(argv)

    for dims, max_extent in ((2, args.max_2d), (3, args.max_3d)):
        total = 0
        bounded = []
        why_i = why_ii = 0
        for p in universe(dims, max_extent):
            total += 1
            v = classify_ssat(p)
            if v.bounded:
                bounded.append(p)
            else:
                why_i += not v.property_i_holds
                why_ii += not v.property_ii_holds
        print(f"{dims}D up to extent {max_extent}: {total} patterns, "
              f"{len(bounded)} bounded; failures: face condition {why_i}, "
              f"lone entry {why_ii}")
        for p in bounded:
            print("  bounded:", one_line(p))
        if args.verify:
            checks = 0
            for p in bounded:
                l = p.shape.extents
                for n in range(max(1, 2 * max(l) - 1), 9):
                    cb = corner_block(p, n)
                    assert cb.weight == prod(2 * (li - 1) for li in l)
                    assert is_semisaturating(cb, p).verdict, one_line(p)
                    checks += 1
            print(f"  corner-band flip checks: {checks} ok")

    if args.verify:
        budget = SearchBudget(max_cells=16)
        grown = 0
        for p in universe(2, args.max_2d):
            if grown >= args.sample:
                break
            if classify_ssat(p).bounded or p.shape.cell_count > 9:
                continue
            vals = [exact_ssat(Shape((n, n)), p, budget).value for n in (2, 3, 4)]
            assert vals[0] <= vals[1] <= vals[2], one_line(p)
            grown += 1
        print(f"unbounded growth spot checks: {grown} ok")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
