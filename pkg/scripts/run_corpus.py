#!/usr/bin/env python3
"""Check every bundled example against its recorded verdicts and print a table."""
import argparse
import json
import sys

from justcheck.corpus import run_corpus


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("entries", nargs="*", help="restrict to these entries")
    ap.add_argument("--out", help="also write the outcomes as JSON")
    ap.add_argument("--mismatches-only", action="store_true")
    args = ap.parse_args()

    outcomes = run_corpus(args.entries or None)
    for o in outcomes:
        if args.mismatches_only and o.ok:
            continue
        tag = "ok" if o.ok else ("draft" if o.draft else "MISMATCH")
        print(f"{tag:<9} {o.entry:<18} {o.property:<16} expected={o.expected!s:<6} actual={o.actual!s}")
    hard = sum(1 for o in outcomes if not o.ok and not o.draft)
    drafts = sum(1 for o in outcomes if not o.ok and o.draft)
    print(f"\n{len(outcomes)} checks, {hard} mismatches, {drafts} draft mismatches")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump([o.to_json() for o in outcomes], fh, indent=2)
    return 1 if hard else 0


if __name__ == "__main__":
    sys.exit(main())
