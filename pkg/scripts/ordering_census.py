"""Census of realizable product orderings across local dimensions.

For each n in 2..5, sample sorted non-negative vectors, record which strict
orderings of the pairwise products (squares, +products, -products) actually
occur, and report the count together with how quickly the census saturates.
The counts should come out 1, 2, 10, 114.

Run:  python3 scripts/ordering_census.py [--samples N] [--seeds 0,1,2]
"""

import argparse
import time
from dataclasses import dataclass

from pcpkit import enumerate_orderings
from pcpkit.defaults import DEFAULT_SEED, ORDERING_SAMPLES


@dataclass
class CensusConfig:
    samples: int = ORDERING_SAMPLES
    seeds: tuple = (DEFAULT_SEED, 0, 1)
    dims: tuple = (2, 3, 4, 5)


def run_census(cfg: CensusConfig) -> None:
    print(f"samples per run: {cfg.samples}")
    print(f"{'n':>3} {'seed':>10} {'orderings':>10} {'seconds':>9}   stable")
    for n in cfg.dims:
        reference = None
        for seed in cfg.seeds:
            start = time.perf_counter()
            tables = enumerate_orderings(n, samples=cfg.samples, seed=seed)
            elapsed = time.perf_counter() - start
            slots = [t.slots for t in tables]
            if reference is None:
                reference = slots
                stable = "-"
            else:
                stable = "yes" if slots == reference else "NO"
            print(f"{n:>3} {seed:>10} {len(tables):>10} {elapsed:>9.2f}   {stable}")
    print()
    print("saturation check for n = 5 (count as a function of sample budget):")
    for budget in (1_000, 5_000, 20_000, 100_000):
        tables = enumerate_orderings(5, samples=budget, seed=DEFAULT_SEED)
        print(f"  {budget:>7} samples -> {len(tables)} orderings")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=ORDERING_SAMPLES)
    parser.add_argument("--seeds", default=None,
                        help="comma-separated seeds (default: built-in triple)")
    args = parser.parse_args()
    cfg = CensusConfig(samples=args.samples)
    if args.seeds:
        cfg.seeds = tuple(int(s) for s in args.seeds.split(","))
    run_census(cfg)


if __name__ == "__main__":
    main()
