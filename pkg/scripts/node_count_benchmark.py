"""Search nodes and wall time with and without pruning for small carriers."""
import argparse
import time

from pamono.enumeration import pm_tables, st_roots


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-size", type=int, default=3)
    args = ap.parse_args()
    print(f"{'k':>2} {'mode':>8} {'roots':>6} {'nodes':>10} {'found':>6} {'seconds':>8}")
    for k in range(1, args.max_size + 1):
        for prune in (False, True):
            start = time.perf_counter()
            tables, nodes = pm_tables(k, prune=prune)
            elapsed = time.perf_counter() - start
            label = "pruned" if prune else "plain"
            print(f"{k:>2} {label:>8} {len(st_roots(k, prune)):>6} {nodes:>10} {len(tables):>6} {elapsed:>8.3f}")


if __name__ == "__main__":
    main()
