#!/usr/bin/env python3
"""Compare the recurring-set engine with the bounded lasso oracle on random networks."""
import argparse
import time
from collections import Counter

from justcheck.fairness import Fairness, LassoOracle, find_violating_recurring_set
from justcheck.generate import GenConfig, sample_networks, within_oracle_bounds
from justcheck.semantics import build_lts
from justcheck.syntax import pretty_print

NOTIONS = ("P", "J", "WC", "SC", "ST", "WT", "SA", "WA")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=400)
    ap.add_argument("--max-states", type=int, default=40)
    args = ap.parse_args()

    start = time.time()
    nets = sample_networks(args.seed, args.count, GenConfig(max_states=args.max_states))
    used = skipped = disagreements = 0
    violations: Counter = Counter()
    for net in nets:
        for sem in ("default", "reactive"):
            lts = build_lts(net, sem)
            if not within_oracle_bounds(lts):
                skipped += 1
                continue
            used += 1
            oracle = LassoOracle(lts)
            for name in NOTIONS:
                f = Fairness.parse(name)
                for avoid in [None, *lts.locations]:
                    engine = find_violating_recurring_set(lts, f, avoid) is not None
                    violations[name] += engine
                    if engine != (oracle.find(f, avoid) is not None):
                        disagreements += 1
                        print(f"disagreement: {name} avoiding {avoid} ({sem})\n{pretty_print(net)}")
    print(f"{used} transition systems compared, {skipped} outside the oracle bounds, "
          f"{disagreements} disagreements, {time.time() - start:.1f}s")
    print("violations found per notion: " + ", ".join(f"{k}={v}" for k, v in violations.items()))
    return 1 if disagreements else 0


if __name__ == "__main__":
    raise SystemExit(main())
