"""Recompute both published tables and diff them against the printed values.

    python scripts/reproduce_tables.py
"""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from golden_series.analysis import PAPER_ROWS, accuracy_row  # noqa: E402
from golden_series.cli import table_one  # noqa: E402
from published import TABLE1, TABLE2  # noqa: E402


def main():
    print("alpha_n to 20 places")
    for n, value in table_one():
        flag = "" if value == TABLE1[n] else f"   published {TABLE1[n]}"
        print(f"{n:>4}  {value}{flag}")

    print("\n   n      K  pred  alpha   beta    gap   (published)   seconds")
    for n, K in PAPER_ROWS:
        start = time.perf_counter()
        row = accuracy_row(n, K)
        got = (row.predicted, row.actual_alpha, row.actual_beta, row.actual_gap)
        pub = TABLE2[(n, K)]
        mark = "" if got == pub else "  *"
        print(f"{n:>4} {K:>6} {got[0]:>5} {got[1]:>6} {got[2]:>6} {got[3]:>6}   "
              f"{'/'.join(map(str, pub[1:])):<13} {time.perf_counter() - start:7.2f}{mark}")


if __name__ == "__main__":
    main()
