"""Corpus statistics over the verb classes.

Input corpora are pre-lemmatized, one token per line
(``surface<TAB>lemma<TAB>pos``) with blank lines between sentences.
"""

from __future__ import annotations

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Mapping, Sequence, TextIO

from .lexicon import Sense, VerbEntry
from .signatures import ClassAssignment, TABLE_ORDER

logger = logging.getLogger(__name__)

DEFAULT_VERB_POS = ("V", "VV", "VA", "VM")
DEFAULT_PARTICLE_TAG = "PTKVZ"


@dataclass(frozen=True)
class Token:
    surface: str
    lemma: str
    pos: str
    # set on verbs and particles already joined, so rewriting is idempotent
    attached: bool = False

    def __post_init__(self):
        if not self.lemma:
            raise ValueError(f"token {self.surface!r} has an empty lemma")


Sentence = tuple[Token, ...]


@dataclass(frozen=True)
class TagConfig:
    verb_pos_prefixes: tuple[str, ...] = DEFAULT_VERB_POS
    particle_tag: str = DEFAULT_PARTICLE_TAG

    def is_verb(self, token: Token) -> bool:
        return token.pos.startswith(self.verb_pos_prefixes) and token.pos != self.particle_tag


def read_corpus(lines: Iterable[str]) -> Iterator[Sentence]:
    current: list[Token] = []
    for lineno, line in enumerate(lines, start=1):
        line = line.rstrip("\r\n")
        if not line.strip():
            if current:
                yield tuple(current)
                current = []
            continue
        cols = line.split("\t")
        if len(cols) < 3:
            raise ValueError(f"line {lineno}: expected surface, lemma, pos; got {line!r}")
        current.append(Token(cols[0], cols[1], cols[2]))
    if current:
        yield tuple(current)


def write_corpus(sentences: Iterable[Sentence], fh: TextIO) -> None:
    for sent in sentences:
        for tok in sent:
            fh.write(f"{tok.surface}\t{tok.lemma}\t{tok.pos}\n")
        fh.write("\n")


@dataclass
class ReattachReport:
    rewritten: int = 0
    skipped: int = 0


def reattach_particles(
    sentence: Sentence,
    config: TagConfig = TagConfig(),
    report: ReattachReport | None = None,
) -> Sentence:
    """Join separated verb particles to the nearest preceding verb.

    ``bietet(bieten) ... an(PTKVZ)`` becomes lemma ``anbieten``. The particle
    token is kept. A verb takes at most one particle.
    """
    tokens = list(sentence)
    for i, tok in enumerate(tokens):
        if tok.pos != config.particle_tag or tok.attached:
            continue
        target = next((j for j in range(i - 1, -1, -1) if config.is_verb(tokens[j])), None)
        if target is None or tokens[target].attached:
            if report is not None:
                report.skipped += 1
            continue
        verb = tokens[target]
        tokens[target] = replace(verb, lemma=tok.lemma + verb.lemma, attached=True)
        tokens[i] = replace(tok, attached=True)
        if report is not None:
            report.rewritten += 1
    return tuple(tokens)


@dataclass
class CorpusCounts:
    """Mergeable counts from one corpus shard."""

    lemma_counts: Counter = field(default_factory=Counter)
    verb_tokens: int = 0
    tokens: int = 0
    verb_lemmas: Counter = field(default_factory=Counter)

    def __add__(self, other: CorpusCounts) -> CorpusCounts:
        return CorpusCounts(
            self.lemma_counts + other.lemma_counts,
            self.verb_tokens + other.verb_tokens,
            self.tokens + other.tokens,
            self.verb_lemmas + other.verb_lemmas,
        )


def count_corpus(
    corpus: Iterable[Sentence],
    lemmas: Iterable[str],
    config: TagConfig = TagConfig(),
    lowercase: bool = False,
    reattach: bool = False,
) -> CorpusCounts:
    """Count verb tokens whose lemma is in ``lemmas``, plus corpus totals.

    ``lowercase`` folds case on both sides (English); German stays case-sensitive.
    """
    norm = str.lower if lowercase else (lambda s: s)
    wanted = {norm(l) for l in lemmas}
    out = CorpusCounts()
    for sent in corpus:
        if reattach:
            sent = reattach_particles(sent, config)
        out.tokens += len(sent)
        for tok in sent:
            if not config.is_verb(tok):
                continue
            lemma = norm(tok.lemma)
            out.verb_tokens += 1
            out.verb_lemmas[lemma] += 1
            if lemma in wanted:
                out.lemma_counts[lemma] += 1
    return out


def count_lemmas(corpus, lemmas, config: TagConfig = TagConfig(), lowercase: bool = False) -> dict[str, int]:
    return dict(count_corpus(corpus, lemmas, config, lowercase).lemma_counts)


@dataclass
class ClassDistribution:
    percentages: dict[str, float]
    total: int
    unit: str = "tokens"

    @property
    def all(self) -> float:
        return sum(self.percentages.values())


def _class_members(assignments: Iterable[ClassAssignment]) -> dict[str, str]:
    return {a.lemma: a.result for a in assignments if a.result in TABLE_ORDER}


def class_distribution(
    counts: Mapping[str, int],
    assignments: Iterable[ClassAssignment],
    total_verb_tokens: int,
) -> ClassDistribution:
    """Per-class share of verb tokens, in percent."""
    if total_verb_tokens <= 0:
        raise ValueError("total verb token count must be positive")
    member_of = _class_members(assignments)
    per_class = dict.fromkeys(TABLE_ORDER, 0)
    for lemma, n in counts.items():
        if lemma in member_of:
            per_class[member_of[lemma]] += n
    if sum(per_class.values()) > total_verb_tokens:
        raise ValueError("class counts exceed the total verb token count")
    return ClassDistribution(
        {c: 100.0 * n / total_verb_tokens for c, n in per_class.items()}, total_verb_tokens,
    )


def class_type_distribution(
    verb_lemmas: Mapping[str, int],
    assignments: Iterable[ClassAssignment],
) -> ClassDistribution:
    """Per-class share of distinct verb lemmas attested in the corpus."""
    if not verb_lemmas:
        raise ValueError("no verb types in corpus")
    member_of = _class_members(assignments)
    per_class = dict.fromkeys(TABLE_ORDER, 0)
    for lemma in verb_lemmas:
        if lemma in member_of:
            per_class[member_of[lemma]] += 1
    total = len(verb_lemmas)
    return ClassDistribution({c: 100.0 * n / total for c, n in per_class.items()}, total, "types")


def frequency_filter(entries: Sequence[VerbEntry], threshold: int) -> tuple[list[VerbEntry], float]:
    """Keep entries seen more than ``threshold`` times; also return the kept fraction."""
    missing = [e.lemma for e in entries if e.corpus_frequency is None]
    if missing:
        raise ValueError(f"no corpus frequency for: {', '.join(missing)}")
    kept = [e for e in entries if e.corpus_frequency > threshold]
    return kept, (len(kept) / len(entries) if entries else 0.0)


@dataclass
class PolysemyStats:
    restricted_mean: float | None
    overall_mean: float
    matched: int


def polysemy_stats(inventory: Iterable[Sense], verbs: Iterable[str]) -> PolysemyStats:
    senses_per_lemma: dict[str, int] = defaultdict(int)
    for sense in inventory:
        senses_per_lemma[sense.lemma] += 1
    if not senses_per_lemma:
        raise ValueError("empty sense inventory")
    matched = [senses_per_lemma[v] for v in set(verbs) if v in senses_per_lemma]
    overall = sum(senses_per_lemma.values()) / len(senses_per_lemma)
    restricted = sum(matched) / len(matched) if matched else None
    if not matched:
        logger.warning("none of the verbs occur in the sense inventory")
    return PolysemyStats(restricted, overall, len(matched))
