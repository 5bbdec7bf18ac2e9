"""Print the class of every fully specified signature, grouped by class."""

from collections import defaultdict

from modality_classes.signatures import CLASSES, IDIOSYNCRATIC, all_signatures, classify_signature, meaning_components


def main():
    groups = defaultdict(list)
    for sig in all_signatures():
        groups[classify_signature(sig).result].append(sig)
    for cls in sorted(CLASSES, key=lambda c: c.precedence_rank):
        sigs = groups[cls.name]
        print(f"{cls.name:18} {cls.pattern}  n={len(sigs):2d}  {' '.join(map(str, sigs))}")
    print(f"{IDIOSYNCRATIC:18} {'':6}  n={len(groups[IDIOSYNCRATIC]):2d}")
    print()
    for sig in all_signatures():
        comps = ",".join(sorted(c.value for c in meaning_components(sig)))
        print(sig, comps or "-")


if __name__ == "__main__":
    main()
