"""Entailment features: word overlap and factuality mismatch."""

from __future__ import annotations

import json
import string
import xml.etree.ElementTree as ET
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .lexicon import TranslationTable
from .naive_bayes import DEFAULT_EPSILON, CvResult, cross_validate
from .signatures import ClassAssignment

LABEL_SETS = {
    "2way": ("ENTAILMENT", "NO_ENTAILMENT"),
    "3way": ("CONTRADICTION", "ENTAILMENT", "UNKNOWN"),
}

# every class except the two factual ones marks uncertainty
UNCERTAINTY_CLASSES = frozenset({
    "ASPECTUAL", "FUTURE_ORIENTED", "INTERROGATIVE",
    "FO_WH_FACTUAL", "FO_WH_IF_FACTUAL", "NON_FACTUAL",
})

FEATURE_SETS = {
    "wo": ("WO",),
    "wo+fm": ("WO", "FM_OVERLAP", "FM_PRESENCE_MISMATCH"),
}


@dataclass(frozen=True)
class RtePair:
    id: str
    text: str
    hypothesis: str
    label: str
    text_lemmas: tuple[str, ...] | None = None
    hyp_lemmas: tuple[str, ...] | None = None

    @classmethod
    def from_json(cls, data: Mapping) -> RtePair:
        def lemmas(key):
            return tuple(data[key]) if data.get(key) is not None else None

        return cls(
            str(data["id"]), data["text"], data["hypothesis"], data["label"],
            lemmas("text_lemmas"), lemmas("hyp_lemmas"),
        )

    def to_json(self) -> dict:
        out = {"id": self.id, "text": self.text, "hypothesis": self.hypothesis, "label": self.label}
        if self.text_lemmas is not None:
            out["text_lemmas"] = list(self.text_lemmas)
        if self.hyp_lemmas is not None:
            out["hyp_lemmas"] = list(self.hyp_lemmas)
        return out


def load_pairs(path, labels: str | Sequence[str] = "2way") -> list[RtePair]:
    allowed = LABEL_SETS[labels] if isinstance(labels, str) else tuple(labels)
    pairs = []
    seen = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                pair = RtePair.from_json(json.loads(line))
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise ValueError(f"{path}:{lineno}: bad pair record: {exc}") from None
            if pair.label not in allowed:
                raise ValueError(f"{path}:{lineno}: label {pair.label!r} not in {allowed}")
            if pair.id in seen:
                raise ValueError(f"{path}:{lineno}: duplicate pair id {pair.id!r}")
            seen.add(pair.id)
            pairs.append(pair)
    return pairs


RTE3_LABELS = {
    "2way": {"YES": "ENTAILMENT", "NO": "NO_ENTAILMENT"},
    "3way": {"YES": "ENTAILMENT", "UNKNOWN": "UNKNOWN", "NO": "CONTRADICTION",
             "CONTRADICTION": "CONTRADICTION"},
}


def import_rte3(path, labels: str = "3way") -> list[RtePair]:
    """Read RTE-3 style XML (``<pair id entailment><t/><h/></pair>``)."""
    mapping = RTE3_LABELS[labels]
    pairs = []
    for el in ET.parse(path).getroot().iter("pair"):
        raw = (el.get("entailment") or "").upper()
        if raw not in mapping:
            raise ValueError(f"pair {el.get('id')}: unsupported entailment value {raw!r} for {labels}")
        pairs.append(RtePair(
            el.get("id"), (el.findtext("t") or "").strip(), (el.findtext("h") or "").strip(), mapping[raw],
        ))
    return pairs


_PUNCT = string.punctuation + "“”„‘’«»–—…"


def tokenize(text: str) -> list[str]:
    tokens = (t.strip(_PUNCT) for t in text.lower().split())
    return [t for t in tokens if t]


def word_overlap(text: str, hypothesis: str) -> int:
    return len(set(tokenize(text)) & set(tokenize(hypothesis)))


def membership_from_assignments(assignments: Iterable[ClassAssignment]) -> dict[str, frozenset[str]]:
    return {a.lemma: frozenset({a.result}) for a in assignments}


def multi_class_membership(
    translations: TranslationTable,
    assignments: Iterable[ClassAssignment],
) -> dict[str, frozenset[str]]:
    """English lemma -> union of the classes of its German sources."""
    classes = {a.lemma: a.result for a in assignments}
    out: dict[str, set[str]] = defaultdict(set)
    for de, ens in translations.mapping.items():
        if de not in classes:
            continue
        for en in ens:
            out[en].add(classes[de])
    return {en: frozenset(cs) for en, cs in out.items()}


def uncertainty_lemmas(
    membership: Mapping[str, Iterable[str]],
    uncertainty_classes: Iterable[str] = UNCERTAINTY_CLASSES,
) -> frozenset[str]:
    wanted = set(uncertainty_classes)
    return frozenset(l for l, cs in membership.items() if wanted.intersection(cs))


def factuality_mismatch(
    text_lemmas: Iterable[str],
    hyp_lemmas: Iterable[str],
    markers: frozenset[str] | Mapping[str, Iterable[str]],
) -> tuple[float, int]:
    """Return (Jaccard overlap of uncertainty markers, 1 if only one side has any).

    ``markers`` is either the set of uncertainty lemmas or a lemma -> classes map.
    """
    if isinstance(markers, Mapping):
        markers = uncertainty_lemmas(markers)
    u_t = markers.intersection(text_lemmas)
    u_h = markers.intersection(hyp_lemmas)
    union = u_t | u_h
    overlap = len(u_t & u_h) / len(union) if union else 0.0
    return overlap, int(bool(u_t) != bool(u_h))


class FeatureExtractor:
    """Compute named features for pairs, lemmatizing via a surface -> lemma dictionary
    when a pair has no lemma lists of its own."""

    def __init__(self, markers: frozenset[str] = frozenset(), lemma_dict: Mapping[str, str] | None = None,
                 lowercase: bool = False):
        self.markers = frozenset(m.lower() for m in markers) if lowercase else markers
        self.lemma_dict = lemma_dict or {}
        self.lowercase = lowercase

    def lemmas(self, given: Sequence[str] | None, raw: str) -> list[str]:
        if given is not None:
            out = list(given)
        else:
            out = [self.lemma_dict.get(t, t) for t in tokenize(raw)]
        return [l.lower() for l in out] if self.lowercase else out

    def __call__(self, pair: RtePair) -> dict[str, float]:
        fm_overlap, fm_mismatch = factuality_mismatch(
            self.lemmas(pair.text_lemmas, pair.text),
            self.lemmas(pair.hyp_lemmas, pair.hypothesis),
            self.markers,
        )
        return {
            "WO": float(word_overlap(pair.text, pair.hypothesis)),
            "FM_OVERLAP": fm_overlap,
            "FM_PRESENCE_MISMATCH": float(fm_mismatch),
        }


def load_lemma_dict(path) -> dict[str, str]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            cols = line.rstrip("\r\n").split("\t")
            if len(cols) >= 2 and cols[0] and not cols[0].startswith("#"):
                out[cols[0]] = cols[1]
    return out


def evaluate_pairs(
    pairs: Sequence[RtePair],
    extractor: FeatureExtractor,
    feature_set: str = "wo+fm",
    k: int = 10,
    seed: int = 0,
    epsilon: float = DEFAULT_EPSILON,
) -> CvResult:
    return cross_validate(
        pairs, extractor, lambda p: p.label, FEATURE_SETS[feature_set],
        k=k, seed=seed, epsilon=epsilon, key=lambda p: p.id,
    )
