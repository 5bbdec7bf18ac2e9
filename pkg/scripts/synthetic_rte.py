"""WO vs WO+FM on synthetic pairs, swept over label fidelity and seeds."""

import argparse

import numpy as np

from modality_classes.rte import FeatureExtractor, evaluate_pairs
from modality_classes.synthetic import UNCERTAIN_VERBS, generate_pairs


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--k", type=int, default=10)
    args = ap.parse_args()

    extractor = FeatureExtractor(frozenset(UNCERTAIN_VERBS))
    print(f"{'fidelity':>8} {'WO':>8} {'WO+FM':>8} {'gain':>8}")
    for fidelity in (0.5, 0.6, 0.7, 0.8, 0.9, 1.0):
        wo, fm = [], []
        for seed in range(args.seeds):
            pairs = generate_pairs(args.n, fidelity, seed)
            wo.append(evaluate_pairs(pairs, extractor, "wo", args.k, seed).accuracy)
            fm.append(evaluate_pairs(pairs, extractor, "wo+fm", args.k, seed).accuracy)
        wo_m, fm_m = 100 * np.mean(wo), 100 * np.mean(fm)
        print(f"{fidelity:8.1f} {wo_m:8.2f} {fm_m:8.2f} {fm_m - wo_m:8.2f}")


if __name__ == "__main__":
    main()
