#!/usr/bin/env python3
"""Liveness verdicts for every bundled example under every fairness notion, as a matrix."""
import argparse

from justcheck.corpus import load_corpus
from justcheck.fairness import ALL_FAIRNESS, check_liveness, deadlock_free, padovani_lockfree, race_free
from justcheck.semantics import build_lts


def row(lts) -> list[str]:
    return ["+" if check_liveness(lts, f).holds else "." for f in ALL_FAIRNESS]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--semantics", choices=["default", "reactive"], default="default")
    args = ap.parse_args()

    names = [f.name for f in ALL_FAIRNESS]
    print(f"{'network':<18} {'states':>6}  DF RF LF  " + " ".join(f"{n:>3}" for n in names))
    for name, entry in sorted(load_corpus().items()):
        lts = build_lts(entry.network, args.semantics)
        flags = [deadlock_free(lts).holds, race_free(lts).holds, padovani_lockfree(lts).holds]
        cols = " ".join(f"{c:>3}" for c in row(lts))
        print(f"{name:<18} {len(lts.states):>6}  " + "  ".join("+" if x else "." for x in flags) + f"   {cols}")


if __name__ == "__main__":
    main()
