"""Verb sense linking by subcategorization frame agreement.

A source sense is a (lemma, frame) pair. It links to a target sense with
an equivalent lemma when one of the target's frames has the same number
of arguments and, pairing arguments by position, the features selected
by the policy agree.
"""

from __future__ import annotations

import json
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .lexicon import Category, SubcatFrame, SyntacticArgument, TranslationTable, VerbEntry, Sense
from .signatures import ClassAssignment

logger = logging.getLogger(__name__)


class Feature(Enum):
    COMPLEMENTIZER = "COMPLEMENTIZER"
    CASE = "CASE"
    CATEGORY = "CATEGORY"
    VERB_FORM = "VERB_FORM"


@dataclass(frozen=True)
class FeaturePolicy:
    name: str
    compared_features: frozenset[Feature]
    crosslingual: bool


GERMAN_GERMANET = FeaturePolicy(
    "GERMAN_GERMANET",
    frozenset({Feature.COMPLEMENTIZER, Feature.CASE, Feature.CATEGORY}),
    crosslingual=False,
)
CROSSLINGUAL_VERBNET = FeaturePolicy(
    "CROSSLINGUAL_VERBNET",
    frozenset({Feature.COMPLEMENTIZER, Feature.CATEGORY, Feature.VERB_FORM}),
    crosslingual=True,
)
POLICIES = {"germanet": GERMAN_GERMANET, "verbnet": CROSSLINGUAL_VERBNET}


# German and English categories that count as the same argument type.
# Categories outside this map only agree with themselves.
CATEGORY_EQUIVALENCE = {
    Category.DASS_CLAUSE: "that-clause",
    Category.THAT_CLAUSE: "that-clause",
    Category.OB_CLAUSE: "whether-clause",
    Category.WHETHER_IF_CLAUSE: "whether-clause",
    Category.ZU_INF_PRESENT: "inf-present",
    Category.TO_INF_PRESENT: "inf-present",
    Category.ZU_INF_PAST: "inf-past",
    Category.TO_INF_PAST: "inf-past",
}

COMPLEMENTIZER_EQUIVALENCE = {
    "dass": "that", "daß": "that", "that": "that",
    "ob": "whether", "whether": "whether", "if": "whether",
}

DEFAULT_COMPLEMENTIZER = {
    Category.DASS_CLAUSE: "dass",
    Category.OB_CLAUSE: "ob",
    Category.THAT_CLAUSE: "that",
    Category.WHETHER_IF_CLAUSE: "whether",
}

VERB_FORM = {
    Category.ZU_INF_PRESENT: "inf-present",
    Category.TO_INF_PRESENT: "inf-present",
    Category.ZU_INF_PAST: "inf-past",
    Category.TO_INF_PAST: "inf-past",
    Category.ING_FORM: "ing",
    Category.BARE_INF: "bare-inf",
    Category.DASS_CLAUSE: "finite",
    Category.OB_CLAUSE: "finite",
    Category.WH_CLAUSE: "finite",
    Category.DECL_CLAUSE: "finite",
    Category.THAT_CLAUSE: "finite",
    Category.WHETHER_IF_CLAUSE: "finite",
}


def argument_features(arg: SyntacticArgument, policy: FeaturePolicy) -> tuple:
    """Normalized feature tuple of ``arg``; two arguments agree iff tuples are equal."""
    out = []
    for feat in sorted(policy.compared_features, key=lambda f: f.value):
        if feat is Feature.CATEGORY:
            value = CATEGORY_EQUIVALENCE.get(arg.category, arg.category.value) if policy.crosslingual \
                else arg.category.value
        elif feat is Feature.CASE:
            value = arg.case.value if arg.case else None
        elif feat is Feature.COMPLEMENTIZER:
            value = arg.complementizer or DEFAULT_COMPLEMENTIZER.get(arg.category)
            if value is not None:
                value = value.lower()
                if policy.crosslingual:
                    value = COMPLEMENTIZER_EQUIVALENCE.get(value, value)
        else:
            value = VERB_FORM.get(arg.category)
        out.append((feat.value, value))
    return tuple(out)


def frames_compatible(src: SubcatFrame, tgt: SubcatFrame, policy: FeaturePolicy) -> bool:
    if len(src) != len(tgt):
        return False
    return all(
        argument_features(a, policy) == argument_features(b, policy)
        for a, b in zip(src.arguments, tgt.arguments)
    )


@dataclass(frozen=True)
class SenseLink:
    source_lemma: str
    frame_index: int
    source_frame: SubcatFrame
    target_sense_id: str
    target_frame_index: int
    policy: FeaturePolicy
    evidence: tuple[tuple[SyntacticArgument, SyntacticArgument], ...]

    def __post_init__(self):
        if len(self.evidence) != len(self.source_frame):
            raise ValueError("evidence must pair every source argument")

    @property
    def key(self) -> tuple[str, int, str]:
        return (self.source_lemma, self.frame_index, self.target_sense_id)

    def to_json(self) -> dict:
        return {
            "source_lemma": self.source_lemma,
            "frame_index": self.frame_index,
            "target_sense_id": self.target_sense_id,
            "target_frame_index": self.target_frame_index,
            "policy": self.policy.name,
            "source_frame": self.source_frame.to_json(),
            "target_frame": [b.to_dict() for _, b in self.evidence],
        }

    @classmethod
    def from_json(cls, data: dict) -> SenseLink:
        policy = {p.name: p for p in POLICIES.values()}[data["policy"]]
        src = SubcatFrame.from_json(data["source_frame"])
        tgt = SubcatFrame.from_json(data["target_frame"])
        return cls(
            data["source_lemma"], int(data["frame_index"]), src, data["target_sense_id"],
            int(data["target_frame_index"]), policy, tuple(zip(src.arguments, tgt.arguments)),
        )


def candidate_lemmas(lemma: str, policy: FeaturePolicy, translations: TranslationTable | None) -> frozenset[str]:
    if not policy.crosslingual:
        return frozenset({lemma})
    if translations is None:
        raise ValueError(f"policy {policy.name} needs a translation table")
    return translations[lemma]


def link_verb(
    src: VerbEntry,
    targets: Sequence[Sense],
    policy: FeaturePolicy,
    translations: TranslationTable | None = None,
) -> list[SenseLink]:
    lemmas = candidate_lemmas(src.lemma, policy, translations)
    if not lemmas:
        logger.info("no translation for %r, skipped", src.lemma)
        return []
    candidates = sorted((s for s in targets if s.lemma in lemmas), key=lambda s: s.sense_id)
    links = []
    for i, frame in enumerate(src.frames):
        for sense in candidates:
            for j, tframe in enumerate(sense.frames):
                if frames_compatible(frame, tframe, policy):
                    evidence = tuple(zip(frame.arguments, tframe.arguments))
                    links.append(SenseLink(src.lemma, i, frame, sense.sense_id, j, policy, evidence))
                    break
    return links


@dataclass
class LinkReport:
    links: list[SenseLink] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    @property
    def linked_lemmas(self) -> set[str]:
        return {link.source_lemma for link in self.links}


def link_lexicon(
    entries: Iterable[VerbEntry],
    targets: Sequence[Sense],
    policy: FeaturePolicy,
    translations: TranslationTable | None = None,
    jobs: int = 1,
) -> LinkReport:
    """Link every entry, returning links in (lemma, frame index, sense id) order."""
    entries = list(entries)
    if policy.crosslingual and translations is None:
        raise ValueError(f"policy {policy.name} needs a translation table")
    report = LinkReport()
    if policy.crosslingual:
        report.skipped = sorted(e.lemma for e in entries if e.lemma not in translations)
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            per_verb = list(pool.map(lambda e: link_verb(e, targets, policy, translations), entries))
    else:
        per_verb = [link_verb(e, targets, policy, translations) for e in entries]
    report.links = sorted((l for ls in per_verb for l in ls), key=lambda l: l.key)
    return report


def evaluate_links(links: Iterable[SenseLink], gold: Iterable[tuple[tuple[str, int, str], bool]]) -> float:
    """Fraction of gold-judged links marked correct."""
    emitted = {link.key for link in links}
    gold = list(gold)
    missing = [key for key, _ in gold if key not in emitted]
    if missing:
        shown = ", ".join("/".join(map(str, k)) for k in missing)
        raise ValueError(f"{len(missing)} gold key(s) not among links: {shown}")
    if not gold:
        raise ValueError("no gold judgments")
    return sum(ok for _, ok in gold) / len(gold)


def load_gold(path) -> list[tuple[tuple[str, int, str], bool]]:
    """Gold TSV rows: source_lemma, frame_index, target_sense_id, correct (1/0)."""
    gold = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) != 4 or cols[3].strip().lower() not in {"1", "0", "true", "false"}:
                raise ValueError(f"{path}:{lineno}: expected lemma, frame_index, sense_id, 1/0")
            correct = cols[3].strip().lower() in {"1", "true"}
            gold.append(((cols[0], int(cols[1]), cols[2]), correct))
    return gold


def load_links(path) -> list[SenseLink]:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        data = data["links"]
    return [SenseLink.from_json(d) for d in data]


@dataclass
class ClassAlignment:
    table: dict[str, dict[str, int]]
    coverage: dict[str, float]
    linked_verbs: int
    total_verbs: int

    @property
    def total_coverage(self) -> float:
        return 100.0 * self.linked_verbs / self.total_verbs if self.total_verbs else 0.0


def class_alignment(
    assignments: Iterable[ClassAssignment],
    links: Iterable[SenseLink],
    senses: Iterable[Sense],
) -> ClassAlignment:
    """Per source class, count distinct source verbs linked into each target class label.

    Coverage is the percentage of the class's verbs with at least one link.
    """
    by_lemma = {a.lemma: a.result for a in assignments}
    label = {s.sense_id: s.class_label for s in senses}
    class_size: dict[str, int] = defaultdict(int)
    for result in by_lemma.values():
        class_size[result] += 1
    verbs: dict[str, dict[str, set[str]]] = defaultdict(lambda: defaultdict(set))
    linked: dict[str, set[str]] = defaultdict(set)
    for link in links:
        if link.source_lemma not in by_lemma:
            raise ValueError(f"link source {link.source_lemma!r} has no class assignment")
        if link.target_sense_id not in label:
            raise ValueError(f"link target {link.target_sense_id!r} not in sense inventory")
        cls = by_lemma[link.source_lemma]
        verbs[cls][label[link.target_sense_id]].add(link.source_lemma)
        linked[cls].add(link.source_lemma)
    table = {cls: {lab: len(vs) for lab, vs in sorted(row.items())} for cls, row in sorted(verbs.items())}
    coverage = {cls: 100.0 * len(linked[cls]) / n for cls, n in sorted(class_size.items())}
    return ClassAlignment(
        table, coverage, sum(len(v) for v in linked.values()), len(by_lemma),
    )
