"""Per-term bit growth of the series numerators against the Stirling rate.

    python scripts/rate_study.py --n 2 --k-max 2000
"""

import argparse
import math

from golden_series.analysis import rate_bits, term_bits
from golden_series.series import SeriesKind


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--k-max", type=int, default=2000)
    args = p.parse_args()
    n = args.n
    limit = (n + 1) * math.log2(n + 1) - n * math.log2(n)
    print(f"n={n}: limiting growth {limit:.6f} bits/term, "
          f"net convergence {rate_bits(n):.6f} bits/term")
    print(f"{'k':>6} " + " ".join(f"{kind.value + ' bits/k':>14} {'slope':>8}" for kind in SeriesKind))
    k = 10
    while k <= args.k_max:
        cells = []
        for kind in SeriesKind:
            b, _ = term_bits(n, kind, k)
            b_half, _ = term_bits(n, kind, k // 2)
            cells.append(f"{b / k:>14.6f} {(b - b_half) / (k - k // 2):>8.4f}")
        print(f"{k:>6} " + " ".join(cells))
        k *= 2


if __name__ == "__main__":
    main()
