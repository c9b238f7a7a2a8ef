"""Run every named check and print one status line per case; exit 1 on any failure."""

import sys

from cpalie import suite

if __name__ == "__main__":
    cases = suite.run()
    for c in cases:
        print(f"{c.status.upper():12s}{c.id}")
    sys.exit(0 if all(c.status != suite.FAIL for c in cases) else 1)
