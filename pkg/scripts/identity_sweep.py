#!/usr/bin/env python3
"""Sweep identity patterns across dimensions and layer counts.

Emits one CSV block per (d, k) combination with the closed form
n^d - (n-k)^d next to the greedy and nested-layer construction weights and,
within the cell budget, the exact search values.

Example:
    python3 scripts/identity_sweep.py --d 2 3 --k 1 2 --n-hi 7
"""

import argparse
import csv
import sys

from satmat import (
    BudgetExceededError,
    SearchBudget,
    Shape,
    cell_order,
    exact_ex,
    exact_sat,
    greedy_saturate,
    identity_layers,
    identity_pattern,
)


def sweep(d, k, n_lo, n_hi, budget, seed, writer):
    pattern = identity_pattern(d, k + 1)
    for n in range(max(n_lo, k + 1), n_hi + 1):
        shape = Shape((n,) * d)
        row = {
            "d": d,
            "k": k,
            "n": n,
            "closed_form": n**d - (n - k) ** d,
            "greedy_weight": greedy_saturate(
                pattern, shape, cell_order(shape, seed)
            ).weight,
            "layers_weight": identity_layers(shape, k).weight,
        }
        for name, fn in (("oracle_sat", exact_sat), ("oracle_ex", exact_ex)):
            try:
                row[name] = fn(shape, pattern, budget).value
            except BudgetExceededError:
                row[name] = "skipped"
        writer.writerow(row)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--k", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--n-lo", type=int, default=2)
    ap.add_argument("--n-hi", type=int, default=6)
    ap.add_argument("--budget-cells", type=int, default=16)
    ap.add_argument("--budget-seconds", type=float, default=None)
    ap.add_argument("--seed", type=int, default=None)
    args = ap.parse_args(argv)

    budget = SearchBudget(max_cells=args.budget_cells, time_limit=args.budget_seconds)
    fields = ["d", "k", "n", "closed_form", "greedy_weight", "layers_weight", "oracle_sat", "oracle_ex"]
    writer = csv.DictWriter(sys.stdout, fieldnames=fields)
    writer.writeheader()
    for d in args.d:
        for k in args.k:
            sweep(d, k, args.n_lo, args.n_hi, budget, args.seed, writer)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
