#!/usr/bin/env python3
"""Run the lemma/property check suites and exit nonzero on any failure.

Equivalent to `noisysubmax check`; kept as a script for quick iteration.
"""
import argparse
import sys

from noisysubmax.checks import run_all_checks


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    failed = 0
    for r in run_all_checks(args.seed):
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}"
              + (f"  ({r.detail})" if r.detail and not r.passed else ""))
        failed += not r.passed
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
