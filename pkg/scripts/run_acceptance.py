"""Run the acceptance criteria outside pytest and print one line per criterion."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

import test_acceptance  # noqa: E402


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("criteria", type=int, nargs="*", default=sorted(test_acceptance.CRITERIA))
    args = ap.parse_args()
    failed = 0
    for n in args.criteria:
        ok, _ = test_acceptance._run(n, test_acceptance.CRITERIA[n])
        failed += not ok
    print(f"{len(args.criteria) - failed}/{len(args.criteria)} criteria pass")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
