"""Verb lexicon data model and file I/O.

Holds the signature encoding for clause-embedding verbs, the
language-neutral subcategorization frame records used for sense linking,
sense inventories and German-English translation tables.
"""

from __future__ import annotations

import json
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from pathlib import Path
from typing import Iterable, Mapping, Sequence

logger = logging.getLogger(__name__)


class LexiconError(ValueError):
    """Raised for malformed lexicon, inventory or translation files."""

    def __init__(self, message: str, errors: Sequence[str] = ()):
        super().__init__(message)
        self.errors = list(errors)


class Slot(IntEnum):
    DASS_CLAUSE = 0
    ZU_INF_PRESENT = 1
    ZU_INF_PAST = 2
    WH_CLAUSE = 3
    OB_CLAUSE = 4
    DECLARATIVE_CLAUSE = 5


class Value(Enum):
    POSSIBLE = "1"
    IMPOSSIBLE = "0"
    UNSPECIFIED = "-"


N_SLOTS = len(Slot)


@dataclass(frozen=True)
class Signature:
    """Six ternary slots, one per clausal/infinitival argument type.

    Class patterns use UNSPECIFIED slots; verb signatures do not.
    """

    slots: tuple[Value, ...]

    def __post_init__(self):
        if len(self.slots) != N_SLOTS:
            raise ValueError(f"signature needs {N_SLOTS} slots, got {len(self.slots)}")
        if not all(isinstance(v, Value) for v in self.slots):
            raise TypeError("signature slots must be Value members")

    @classmethod
    def parse(cls, text: str) -> Signature:
        if len(text) != N_SLOTS:
            raise ValueError(f"signature length {len(text)} != {N_SLOTS}: {text!r}")
        try:
            return cls(tuple(Value(ch) for ch in text))
        except ValueError:
            bad = sorted({ch for ch in text if ch not in "10-"})
            raise ValueError(f"illegal signature character(s) {bad} in {text!r}") from None

    @classmethod
    def unspecified(cls) -> Signature:
        return cls((Value.UNSPECIFIED,) * N_SLOTS)

    def __str__(self) -> str:
        return "".join(v.value for v in self.slots)

    def __getitem__(self, slot: int) -> Value:
        return self.slots[slot]

    @property
    def fully_specified(self) -> bool:
        return Value.UNSPECIFIED not in self.slots

    @property
    def all_unspecified(self) -> bool:
        return all(v is Value.UNSPECIFIED for v in self.slots)

    def specified_slots(self) -> dict[int, Value]:
        return {i: v for i, v in enumerate(self.slots) if v is not Value.UNSPECIFIED}


class Language(Enum):
    DE = "de"
    EN = "en"


class Function(Enum):
    SUBJECT = "SUBJECT"
    DIRECT_OBJECT = "DIRECT_OBJECT"
    INDIRECT_OBJECT = "INDIRECT_OBJECT"
    PREP_OBJECT = "PREP_OBJECT"
    CLAUSAL_OBJECT = "CLAUSAL_OBJECT"
    INF_OBJECT = "INF_OBJECT"


class Category(Enum):
    NP = "NP"
    PP = "PP"
    DASS_CLAUSE = "DASS_CLAUSE"
    OB_CLAUSE = "OB_CLAUSE"
    WH_CLAUSE = "WH_CLAUSE"
    DECL_CLAUSE = "DECL_CLAUSE"
    ZU_INF_PRESENT = "ZU_INF_PRESENT"
    ZU_INF_PAST = "ZU_INF_PAST"
    THAT_CLAUSE = "THAT_CLAUSE"
    WHETHER_IF_CLAUSE = "WHETHER_IF_CLAUSE"
    TO_INF_PRESENT = "TO_INF_PRESENT"
    TO_INF_PAST = "TO_INF_PAST"
    ING_FORM = "ING_FORM"
    BARE_INF = "BARE_INF"
    OTHER = "OTHER"


class Case(Enum):
    NOM = "NOM"
    ACC = "ACC"
    DAT = "DAT"
    GEN = "GEN"


NOMINAL = frozenset({Category.NP, Category.PP})
CLAUSAL = frozenset({
    Category.DASS_CLAUSE, Category.OB_CLAUSE, Category.WH_CLAUSE, Category.DECL_CLAUSE,
    Category.THAT_CLAUSE, Category.WHETHER_IF_CLAUSE,
})

# argument categories that witness a POSSIBLE signature slot
CATEGORY_SLOT = {
    Category.DASS_CLAUSE: Slot.DASS_CLAUSE,
    Category.THAT_CLAUSE: Slot.DASS_CLAUSE,
    Category.ZU_INF_PRESENT: Slot.ZU_INF_PRESENT,
    Category.TO_INF_PRESENT: Slot.ZU_INF_PRESENT,
    Category.ZU_INF_PAST: Slot.ZU_INF_PAST,
    Category.TO_INF_PAST: Slot.ZU_INF_PAST,
    Category.WH_CLAUSE: Slot.WH_CLAUSE,
    Category.OB_CLAUSE: Slot.OB_CLAUSE,
    Category.WHETHER_IF_CLAUSE: Slot.OB_CLAUSE,
    Category.DECL_CLAUSE: Slot.DECLARATIVE_CLAUSE,
}

ARGUMENT_KEYS = ("function", "category", "case", "complementizer", "preposition")


@dataclass(frozen=True)
class SyntacticArgument:
    function: Function
    category: Category
    case: Case | None = None
    complementizer: str | None = None
    preposition: str | None = None

    def __post_init__(self):
        if self.case is not None and self.category not in NOMINAL:
            raise ValueError(f"case given for non-nominal category {self.category.value}")
        if self.complementizer is not None and self.category not in CLAUSAL:
            raise ValueError(f"complementizer given for non-clausal category {self.category.value}")

    @classmethod
    def from_dict(cls, data: Mapping) -> SyntacticArgument:
        unknown = set(data) - set(ARGUMENT_KEYS)
        if unknown:
            logger.warning("ignoring unmapped argument attribute(s): %s", ", ".join(sorted(unknown)))
        try:
            case = data.get("case")
            return cls(
                function=Function(data["function"]),
                category=Category(data["category"]),
                case=Case(case) if case is not None else None,
                complementizer=data.get("complementizer"),
                preposition=data.get("preposition"),
            )
        except KeyError as exc:
            raise ValueError(f"argument lacks required field {exc.args[0]!r}") from None

    def to_dict(self) -> dict:
        return {
            "function": self.function.value,
            "category": self.category.value,
            "case": self.case.value if self.case else None,
            "complementizer": self.complementizer,
            "preposition": self.preposition,
        }


@dataclass(frozen=True)
class SubcatFrame:
    arguments: tuple[SyntacticArgument, ...]

    def __post_init__(self):
        if not self.arguments:
            raise ValueError("a subcat frame needs at least one argument")
        n_subj = sum(a.function is Function.SUBJECT for a in self.arguments)
        if n_subj > 1:
            raise ValueError(f"frame has {n_subj} SUBJECT arguments")

    def __len__(self) -> int:
        return len(self.arguments)

    @classmethod
    def from_json(cls, data) -> SubcatFrame:
        # frames are written as argument lists; {"arguments": [...]} is accepted too
        if isinstance(data, Mapping):
            extra = set(data) - {"arguments"}
            if extra:
                logger.warning("ignoring unmapped frame attribute(s): %s", ", ".join(sorted(extra)))
            data = data.get("arguments", [])
        if not isinstance(data, list):
            raise ValueError("frame must be a list of arguments")
        return cls(tuple(SyntacticArgument.from_dict(a) for a in data))

    def to_json(self) -> list[dict]:
        return [a.to_dict() for a in self.arguments]

    def witnessed_slots(self) -> set[Slot]:
        return {CATEGORY_SLOT[a.category] for a in self.arguments if a.category in CATEGORY_SLOT}


@dataclass(frozen=True)
class VerbEntry:
    lemma: str
    language: Language
    signature: Signature
    frames: tuple[SubcatFrame, ...] = ()
    corpus_frequency: int | None = None

    def __post_init__(self):
        if not self.lemma:
            raise ValueError("empty lemma")
        if self.language is Language.DE and not self.signature.fully_specified:
            raise ValueError(f"German verb {self.lemma!r} needs a fully specified signature")
        if self.language is Language.EN and not (
            self.signature.fully_specified or self.signature.all_unspecified
        ):
            raise ValueError(f"partially specified signature for {self.lemma!r}")
        if self.corpus_frequency is not None and self.corpus_frequency < 0:
            raise ValueError(f"negative frequency for {self.lemma!r}")
        for i, frame in enumerate(self.frames):
            for slot in frame.witnessed_slots():
                if self.signature[slot] is Value.IMPOSSIBLE:
                    raise ValueError(
                        f"frame {i} of {self.lemma!r} witnesses {slot.name}, "
                        "which the signature marks impossible"
                    )


class Lexicon(Enum):
    GERMANET = "GERMANET"
    VERBNET = "VERBNET"
    FRAMENET = "FRAMENET"
    CUSTOM = "CUSTOM"


@dataclass(frozen=True)
class Sense:
    sense_id: str
    lemma: str
    lexicon: Lexicon
    frames: tuple[SubcatFrame, ...] = ()
    class_label: str = ""


@dataclass
class TranslationTable:
    """German lemma -> English lemmas (multimap, duplicates collapsed)."""

    mapping: dict[str, frozenset[str]] = field(default_factory=dict)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]]) -> TranslationTable:
        acc: dict[str, set[str]] = defaultdict(set)
        for de, en in pairs:
            if not de or not en:
                raise ValueError(f"empty lemma in translation pair ({de!r}, {en!r})")
            acc[de].add(en)
        return cls({de: frozenset(ens) for de, ens in acc.items()})

    def __getitem__(self, de: str) -> frozenset[str]:
        return self.mapping.get(de, frozenset())

    def __contains__(self, de: str) -> bool:
        return de in self.mapping

    def __len__(self) -> int:
        return len(self.mapping)

    def english_lemmas(self) -> set[str]:
        return set().union(*self.mapping.values()) if self.mapping else set()

    def pairs(self) -> list[tuple[str, str]]:
        return sorted((de, en) for de, ens in self.mapping.items() for en in ens)


# ---------------------------------------------------------------------------
# file I/O
# ---------------------------------------------------------------------------


def _data_lines(path):
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            yield lineno, line


def parse_lexicon_row(line: str, language: Language) -> VerbEntry:
    cols = [c.strip() for c in line.split("\t")]
    if len(cols) > 4:
        raise ValueError(f"expected at most 4 columns, got {len(cols)}")
    cols += [""] * (4 - len(cols))
    lemma, sig_text, frames_text, freq_text = cols
    if not lemma:
        raise ValueError("empty lemma")
    if not sig_text and language is Language.EN:
        signature = Signature.unspecified()
    else:
        signature = Signature.parse(sig_text)
    frames: tuple[SubcatFrame, ...] = ()
    if frames_text:
        try:
            raw = json.loads(frames_text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"invalid frames JSON: {exc.msg}") from None
        if not isinstance(raw, list):
            raise ValueError("frames column must be a JSON list of frames")
        frames = tuple(SubcatFrame.from_json(f) for f in raw)
    freq = None
    if freq_text:
        try:
            freq = int(freq_text)
        except ValueError:
            raise ValueError(f"frequency is not an integer: {freq_text!r}") from None
    return VerbEntry(lemma, language, signature, frames, freq)


def read_lexicon(path, language: Language | str = Language.DE) -> tuple[list[VerbEntry], list[str]]:
    """Parse a lexicon TSV, collecting one error string per rejected row.

    Every data row ends up either as an entry or as an error.
    """
    language = Language(language) if isinstance(language, str) else language
    entries: list[VerbEntry] = []
    errors: list[str] = []
    seen: dict[str, int] = {}
    for lineno, line in _data_lines(path):
        try:
            entry = parse_lexicon_row(line, language)
        except ValueError as exc:
            errors.append(f"{path}:{lineno}: {exc}")
            continue
        if entry.lemma in seen:
            errors.append(f"{path}:{lineno}: duplicate lemma {entry.lemma!r} (first on line {seen[entry.lemma]})")
            continue
        seen[entry.lemma] = lineno
        entries.append(entry)
    return entries, errors


def load_lexicon(path, language: Language | str = Language.DE) -> list[VerbEntry]:
    entries, errors = read_lexicon(path, language)
    if errors:
        raise LexiconError(f"{len(errors)} invalid row(s) in {path}:\n" + "\n".join(errors), errors)
    return entries


def format_lexicon_row(entry: VerbEntry) -> str:
    sig = "" if entry.signature.all_unspecified and entry.language is Language.EN else str(entry.signature)
    cols = [entry.lemma, sig]
    frames = json.dumps([f.to_json() for f in entry.frames], ensure_ascii=False) if entry.frames else ""
    freq = "" if entry.corpus_frequency is None else str(entry.corpus_frequency)
    if frames or freq:
        cols.append(frames)
    if freq:
        cols.append(freq)
    return "\t".join(cols)


def dump_lexicon(entries: Iterable[VerbEntry]) -> str:
    return "".join(format_lexicon_row(e) + "\n" for e in entries)


def write_lexicon(entries: Iterable[VerbEntry], path) -> None:
    Path(path).write_text(dump_lexicon(entries), encoding="utf-8")


def load_sense_inventory(path) -> list[Sense]:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise LexiconError(f"{path}: invalid JSON: {exc.msg}") from None
    return parse_sense_inventory(data, source=str(path))


def parse_sense_inventory(data, source: str = "<inventory>") -> list[Sense]:
    if not isinstance(data, Mapping) or "senses" not in data or "lexicon" not in data:
        raise LexiconError(f"{source}: expected an object with 'lexicon' and 'senses'")
    try:
        lexicon = Lexicon(str(data["lexicon"]).upper())
    except ValueError:
        raise LexiconError(f"{source}: unknown lexicon {data['lexicon']!r}") from None
    if not isinstance(data["senses"], list):
        raise LexiconError(f"{source}: 'senses' must be a list")
    senses = []
    seen = set()
    for i, raw in enumerate(data["senses"]):
        try:
            sense_id, lemma = raw["sense_id"], raw["lemma"]
            if not isinstance(sense_id, str) or not isinstance(lemma, str) or not sense_id or not lemma:
                raise ValueError("sense_id and lemma must be non-empty strings")
            frames = tuple(SubcatFrame.from_json(f) for f in raw.get("frames", []))
        except (KeyError, TypeError, ValueError) as exc:
            raise LexiconError(f"{source}: sense #{i}: schema violation: {exc}") from None
        if sense_id in seen:
            raise LexiconError(f"{source}: duplicate sense_id {sense_id!r}")
        seen.add(sense_id)
        senses.append(Sense(sense_id, lemma, lexicon, frames, str(raw.get("class_label", ""))))
    return senses


def dump_sense_inventory(senses: Sequence[Sense], lexicon: Lexicon | None = None) -> dict:
    if lexicon is None:
        lexicon = senses[0].lexicon if senses else Lexicon.CUSTOM
    return {
        "lexicon": lexicon.value,
        "senses": [
            {
                "sense_id": s.sense_id,
                "lemma": s.lemma,
                "class_label": s.class_label,
                "frames": [f.to_json() for f in s.frames],
            }
            for s in senses
        ],
    }


def load_translations(path) -> TranslationTable:
    pairs = []
    for lineno, line in _data_lines(path):
        cols = [c.strip() for c in line.split("\t")]
        if len(cols) != 2 or not cols[0] or not cols[1]:
            raise LexiconError(f"{path}:{lineno}: expected 'de_lemma<TAB>en_lemma', got {line!r}")
        pairs.append((cols[0], cols[1]))
    return TranslationTable.from_pairs(pairs)
