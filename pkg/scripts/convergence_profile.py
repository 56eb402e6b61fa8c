"""Measured digits of accuracy as the number of terms grows.

    python scripts/convergence_profile.py --n 3 --k-max 512
"""

import argparse

from golden_series.analysis import actual_accuracy, predicted_accuracy
from golden_series.series import SeriesKind


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--k-max", type=int, default=512)
    args = p.parse_args()
    print(f"{'K':>6} {'pred':>6} " + " ".join(f"{k.value:>6}" for k in SeriesKind))
    K = 1
    while K <= args.k_max:
        pred = predicted_accuracy(args.n, K)
        got = [actual_accuracy(args.n, kind, K) for kind in SeriesKind]
        print(f"{K:>6} {pred:>6} " + " ".join(f"{d:>6}" for d in got))
        K *= 2


if __name__ == "__main__":
    main()
