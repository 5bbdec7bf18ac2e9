"""Command-line entry point: ``modality-classes <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 data or validation error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import reduce
from pathlib import Path

from . import __version__, FORMAT_VERSION
from .corpus import (
    CorpusCounts, ReattachReport, TagConfig, class_distribution, class_type_distribution,
    count_corpus, frequency_filter, read_corpus, reattach_particles,
)
from .lexicon import Language, LexiconError, Signature, load_lexicon, load_sense_inventory, load_translations
from .linking import POLICIES, class_alignment, evaluate_links, link_lexicon, load_gold, load_links
from .rte import (
    FEATURE_SETS, LABEL_SETS, FeatureExtractor, evaluate_pairs, import_rte3, load_lemma_dict,
    load_pairs, membership_from_assignments, multi_class_membership, uncertainty_lemmas,
)
from .signatures import assignment_components, classify_lexicon, classify_signature, meaning_components

logger = logging.getLogger("modality_classes")


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _round(obj):
    if isinstance(obj, float):
        return round(obj, 4)
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, floats rounded to 4 decimals."""
    return json.dumps(_round(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out and out != "-":
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _check_paths(*paths) -> None:
    for p in paths:
        if p is not None and p != "-" and not Path(p).is_file():
            raise DataError(f"no such file: {p}")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_classify(args) -> None:
    _check_paths(args.lexicon)
    entries = load_lexicon(args.lexicon, args.language)
    assignments, hist = classify_lexicon(entries)
    verbs = [
        {
            "lemma": a.lemma,
            "class": a.result,
            "pattern": str(a.matched_pattern) if a.matched_pattern else None,
            "components": sorted(c.value for c in assignment_components(a)),
        }
        for a in assignments
    ]
    _emit(dumps({"verbs": verbs, "histogram": hist}), args.out)


def cmd_components(args) -> None:
    if args.signature:
        sigs = [("", Signature.parse(s)) for s in args.signature]
    elif args.lexicon:
        _check_paths(args.lexicon)
        sigs = [(e.lemma, e.signature) for e in load_lexicon(args.lexicon, args.language)
                if e.signature.fully_specified]
    else:
        raise UsageError("give --signature or --lexicon")
    rows = []
    for lemma, sig in sigs:
        row = {
            "signature": str(sig),
            "components": sorted(c.value for c in meaning_components(sig)),
            "class": classify_signature(sig).result,
        }
        if lemma:
            row["lemma"] = lemma
        rows.append(row)
    _emit(dumps(rows), args.out)


def cmd_link(args) -> None:
    policy = POLICIES[args.policy]
    if policy.crosslingual and not args.translations:
        raise UsageError(f"--policy {args.policy} requires --translations")
    _check_paths(args.lexicon, args.targets, args.translations)
    entries = load_lexicon(args.lexicon, Language.DE)
    targets = load_sense_inventory(args.targets)
    translations = load_translations(args.translations) if args.translations else None
    report = link_lexicon(entries, targets, policy, translations, jobs=args.jobs)
    for lemma in report.skipped:
        logger.warning("no translation for %s; skipped", lemma)
    _emit(dumps([link.to_json() for link in report.links]), args.out)


def cmd_link_eval(args) -> None:
    _check_paths(args.links, args.gold)
    accuracy = evaluate_links(load_links(args.links), load_gold(args.gold))
    _emit(dumps({"accuracy": accuracy}), args.out)


def cmd_align(args) -> None:
    _check_paths(args.lexicon, args.links, args.targets)
    assignments, _ = classify_lexicon(load_lexicon(args.lexicon, Language.DE))
    result = class_alignment(assignments, load_links(args.links), load_sense_inventory(args.targets))
    lines = ["class\ttarget_class\tlinked_verbs\tcoverage_pct"]
    for cls, coverage in result.coverage.items():
        row = result.table.get(cls, {})
        if not row:
            lines.append(f"{cls}\t\t0\t{coverage:.4f}")
        for label, n in row.items():
            lines.append(f"{cls}\t{label}\t{n}\t{coverage:.4f}")
    lines.append(f"TOTAL\t\t{result.linked_verbs}\t{result.total_coverage:.4f}")
    _emit("\n".join(lines) + "\n", args.out)


def _count_shard(job):
    sentences, lemmas, config, lowercase, reattach = job
    return count_corpus(sentences, lemmas, config, lowercase, reattach)


def cmd_stats(args) -> None:
    _check_paths(args.corpus, args.lexicon)
    language = Language(args.language)
    entries = load_lexicon(args.lexicon, language)
    assignments, _ = classify_lexicon(entries)
    lowercase = language is Language.EN
    if lowercase:
        assignments = [type(a)(a.lemma.lower(), a.result, a.matched_pattern) for a in assignments]
    config = TagConfig(tuple(p for p in args.verb_pos_prefixes.split(",") if p), args.particle_tag)
    fh = sys.stdin if args.corpus == "-" else open(args.corpus, encoding="utf-8")
    try:
        sentences = list(read_corpus(fh))
    finally:
        if fh is not sys.stdin:
            fh.close()
    lemmas = [e.lemma for e in entries]

    reattach = ReattachReport()
    if args.reattach_particles:
        sentences = [reattach_particles(s, config, reattach) for s in sentences]
    if args.jobs > 1 and len(sentences) > 1:
        size = -(-len(sentences) // args.jobs)
        shards = [(sentences[i:i + size], lemmas, config, lowercase, False)
                  for i in range(0, len(sentences), size)]
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            counts = reduce(lambda a, b: a + b, pool.map(_count_shard, shards), CorpusCounts())
    else:
        counts = count_corpus(sentences, lemmas, config, lowercase)

    report = {
        "tokens": counts.tokens,
        "verb_tokens": counts.verb_tokens,
        "lemma_counts": dict(counts.lemma_counts),
        "unit": args.unit,
    }
    if args.reattach_particles:
        report["particles"] = {"rewritten": reattach.rewritten, "skipped": reattach.skipped}
    if counts.verb_tokens:
        if args.unit == "tokens":
            by_verbs = class_distribution(counts.lemma_counts, assignments, counts.verb_tokens)
            by_tokens = class_distribution(counts.lemma_counts, assignments, counts.tokens)
            report["distribution_over_verb_tokens"] = by_verbs.percentages | {"all": by_verbs.all}
            report["distribution_over_all_tokens"] = by_tokens.percentages | {"all": by_tokens.all}
        else:
            by_types = class_type_distribution(counts.verb_lemmas, assignments)
            report["distribution_over_verb_types"] = by_types.percentages | {"all": by_types.all}
    else:
        logger.warning("corpus has no verb tokens; no distribution computed")
    if args.threshold is not None:
        norm = str.lower if lowercase else str
        counted = [
            type(e)(e.lemma, e.language, e.signature, e.frames, counts.lemma_counts.get(norm(e.lemma), 0))
            for e in entries
        ]
        kept, fraction = frequency_filter(counted, args.threshold)
        report["frequency_filter"] = {
            "threshold": args.threshold, "kept": sorted(e.lemma for e in kept), "fraction": fraction,
        }
    _emit(dumps(report), args.out)


def cmd_rte(args) -> None:
    _check_paths(args.pairs, args.lexicon, args.translations, args.lemma_dict)
    pairs = load_pairs(args.pairs, args.labels)
    assignments, _ = classify_lexicon(load_lexicon(args.lexicon, Language.DE))
    if args.translations:
        membership = multi_class_membership(load_translations(args.translations), assignments)
        lowercase = True
    else:
        membership = membership_from_assignments(assignments)
        lowercase = False
    lemma_dict = load_lemma_dict(args.lemma_dict) if args.lemma_dict else None
    extractor = FeatureExtractor(uncertainty_lemmas(membership), lemma_dict, lowercase)
    if args.k > len(pairs):
        raise DataError(f"--k {args.k} exceeds the number of pairs ({len(pairs)})")
    result = evaluate_pairs(pairs, extractor, args.features, args.k, args.seed, args.epsilon)
    _emit(dumps({
        "features": list(FEATURE_SETS[args.features]),
        "k": args.k,
        "seed": args.seed,
        "labels": list(LABEL_SETS[args.labels]),
        "pairs": result.total,
        "accuracy": result.accuracy,
        "fold_accuracies": result.fold_accuracies,
        "fold_sizes": result.fold_sizes,
    }), args.out)


def cmd_import_rte3(args) -> None:
    _check_paths(args.xml)
    pairs = import_rte3(args.xml, args.labels)
    _emit("".join(json.dumps(p.to_json(), ensure_ascii=False, sort_keys=True) + "\n" for p in pairs), args.out)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="modality-classes", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version",
                        version=f"modality-classes {__version__} (formats {FORMAT_VERSION})")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        return p

    p = add("classify", cmd_classify, "assign lexicon verbs to signature classes")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--language", choices=["de", "en"], default="de")
    p.add_argument("--out")

    p = add("components", cmd_components, "meaning components of signatures")
    p.add_argument("--signature", action="append")
    p.add_argument("--lexicon")
    p.add_argument("--language", choices=["de", "en"], default="de")
    p.add_argument("--out")

    p = add("link", cmd_link, "link lexicon verbs to target senses")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--targets", required=True)
    p.add_argument("--policy", choices=sorted(POLICIES), required=True)
    p.add_argument("--translations")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")

    p = add("link-eval", cmd_link_eval, "accuracy of links against gold judgments")
    p.add_argument("--links", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--out")

    p = add("align", cmd_align, "class alignment table (TSV)")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--links", required=True)
    p.add_argument("--targets", required=True)
    p.add_argument("--out")

    p = add("stats", cmd_stats, "class distribution over a lemmatized corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--lexicon", required=True)
    p.add_argument("--language", choices=["de", "en"], default="de")
    p.add_argument("--reattach-particles", action="store_true")
    p.add_argument("--verb-pos-prefixes", default="V,VV,VA,VM")
    p.add_argument("--particle-tag", default="PTKVZ")
    p.add_argument("--unit", choices=["tokens", "types"], default="tokens")
    p.add_argument("--threshold", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")

    p = add("rte", cmd_rte, "cross-validated Naive Bayes entailment run")
    p.add_argument("--pairs", required=True)
    p.add_argument("--lexicon", required=True)
    p.add_argument("--translations")
    p.add_argument("--lemma-dict")
    p.add_argument("--features", choices=sorted(FEATURE_SETS), default="wo+fm")
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--labels", choices=sorted(LABEL_SETS), default="2way")
    p.add_argument("--epsilon", type=float, default=1e-9)
    p.add_argument("--out")

    p = add("import-rte3", cmd_import_rte3, "convert RTE-3 XML to JSON Lines")
    p.add_argument("--xml", required=True)
    p.add_argument("--labels", choices=sorted(LABEL_SETS), default="3way")
    p.add_argument("--out")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "jobs", 1) < 1:
            parser.error("--jobs must be at least 1")
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (DataError, LexiconError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
