#!/usr/bin/env python3
"""Measure whether extraction time depends on line count, and the speedup
of the packed engine over the per-pixel oracle path.

Because the engine runs a fixed sequence of whole-image plane operations,
wall time should track image size only; the line-count ratio printed here
should sit near 1.0.
"""

import argparse

from dirmorph.benchmarks import compare_with_oracle, line_count_sensitivity
from dirmorph.extraction import PipelineConfig


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--size", type=int, default=1024)
    parser.add_argument("--lines", default="10,200")
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--skip-oracle", action="store_true",
                        help="skip the (slow) oracle comparison")
    args = parser.parse_args()

    cfg = PipelineConfig()
    counts = tuple(int(x) for x in args.lines.split(","))
    results = line_count_sensitivity(args.size, counts, args.repeat, args.seed, cfg)
    for r in results:
        print(f"{r.label:>24}: median {r.median * 1e3:8.1f} ms")
    base = results[0].median
    for r in results[1:]:
        print(f"{'ratio vs ' + results[0].label:>24}: {r.median / base:.3f}")

    if not args.skip_oracle:
        print("timing the oracle path once (slow)...")
        packed, oracle_s = compare_with_oracle(args.size, repeats=args.repeat,
                                               seed=args.seed, cfg=cfg)
        print(f"{'packed':>24}: median {packed.median * 1e3:8.1f} ms")
        print(f"{'oracle':>24}: {oracle_s * 1e3:8.1f} ms  (speedup {oracle_s / packed.median:.1f}x)")


if __name__ == "__main__":
    main()
