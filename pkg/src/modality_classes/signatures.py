"""Mapping from syntactic signatures to meaning components and classes."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .lexicon import Signature, VerbEntry


class Component(Enum):
    ASPECTUAL = "ASPECTUAL"
    FUTURE_ORIENTED = "FUTURE_ORIENTED"
    INTERROGATIVE = "INTERROGATIVE"
    WH_FACTUAL = "WH_FACTUAL"
    WH_IF_FACTUAL = "WH_IF_FACTUAL"
    NON_FACTUAL = "NON_FACTUAL"


IDIOSYNCRATIC = "IDIOSYNCRATIC"
UNCLASSIFIED = "UNCLASSIFIED"


@dataclass(frozen=True)
class SemanticClass:
    name: str
    pattern: Signature
    components: frozenset[Component]
    precedence_rank: int
    description: str = ""


def _cls(rank, name, pattern, components, description):
    return SemanticClass(name, Signature.parse(pattern), frozenset(components), rank, description)


_C = Component

# Listed in match order. Patterns with slot 4 = 1 are checked before 1111--
# so that 11111x resolves to WH_IF_FACTUAL.
CLASSES: tuple[SemanticClass, ...] = (
    _cls(0, "INTERROGATIVE", "00011-", {_C.INTERROGATIVE}, "marks AOs as under investigation"),
    _cls(1, "FO_WH_IF_FACTUAL", "11011-", {_C.FUTURE_ORIENTED, _C.WH_IF_FACTUAL},
         "objective verbs, future-oriented and factual AOs"),
    _cls(2, "FO_WH_FACTUAL", "11010-", {_C.FUTURE_ORIENTED, _C.WH_FACTUAL},
         "opinion verbs, future-oriented and factual AOs"),
    _cls(3, "WH_IF_FACTUAL", "1--11-", {_C.WH_IF_FACTUAL}, "objective verbs marking AOs as factual"),
    _cls(4, "WH_FACTUAL", "1111--", {_C.WH_FACTUAL}, "opinion verbs marking AOs as factual"),
    _cls(5, "NON_FACTUAL", "1110--", {_C.NON_FACTUAL}, "AOs not resolvable regarding factuality"),
    _cls(6, "FUTURE_ORIENTED", "1100--", {_C.FUTURE_ORIENTED}, "AOs anticipated or planned"),
    _cls(7, "ASPECTUAL", "010---", {_C.ASPECTUAL}, "ability of doing an action"),
)

CLASS_BY_NAME = {c.name: c for c in CLASSES}
CLASS_NAMES = tuple(c.name for c in CLASSES)

# row order of the published class table
TABLE_ORDER = (
    "ASPECTUAL", "FUTURE_ORIENTED", "INTERROGATIVE", "WH_FACTUAL",
    "FO_WH_FACTUAL", "WH_IF_FACTUAL", "FO_WH_IF_FACTUAL", "NON_FACTUAL",
)


@dataclass(frozen=True)
class ClassAssignment:
    lemma: str
    result: str
    matched_pattern: Signature | None = None

    def __post_init__(self):
        if (self.result in (IDIOSYNCRATIC, UNCLASSIFIED)) != (self.matched_pattern is None):
            raise ValueError("matched_pattern must be absent exactly for unmatched verbs")

    @property
    def semantic_class(self) -> SemanticClass | None:
        return CLASS_BY_NAME.get(self.result)


def _require_full(sig: Signature) -> None:
    if not sig.fully_specified:
        raise ValueError(f"signature {sig} is not fully specified")


def matches(pattern: Signature, sig: Signature) -> bool:
    _require_full(sig)
    return all(sig[i] is v for i, v in pattern.specified_slots().items())


def meaning_components(sig: Signature) -> set[Component]:
    """Substring-level components; INTERROGATIVE and NON_FACTUAL come only from classes."""
    _require_full(sig)
    text = str(sig)
    found = set()
    if text[:3] == "110":
        found.add(Component.FUTURE_ORIENTED)
    elif text[:3] == "010":
        found.add(Component.ASPECTUAL)
    if text[3] == "1":
        found.add(Component.WH_FACTUAL)
    if text[3:5] == "11":
        found.add(Component.WH_IF_FACTUAL)
    return found


def classify_signature(sig: Signature, lemma: str = "") -> ClassAssignment:
    _require_full(sig)
    for cls in CLASSES:
        if matches(cls.pattern, sig):
            return ClassAssignment(lemma, cls.name, cls.pattern)
    return ClassAssignment(lemma, IDIOSYNCRATIC)


def empty_histogram() -> dict[str, int]:
    return {name: 0 for name in TABLE_ORDER} | {IDIOSYNCRATIC: 0, UNCLASSIFIED: 0}


def classify_lexicon(entries: Iterable[VerbEntry]) -> tuple[list[ClassAssignment], dict[str, int]]:
    """Assign every entry; signatures without any specified slot are UNCLASSIFIED."""
    assignments = []
    for entry in entries:
        if entry.signature.all_unspecified:
            assignments.append(ClassAssignment(entry.lemma, UNCLASSIFIED))
        else:
            assignments.append(classify_signature(entry.signature, entry.lemma))
    hist = empty_histogram()
    hist.update(Counter(a.result for a in assignments))
    return assignments, hist


def all_signatures() -> list[Signature]:
    """The 64 fully specified signatures in binary counting order."""
    return [Signature.parse(format(n, "06b")) for n in range(2 ** 6)]


def assignment_components(assignment: ClassAssignment) -> set[Component]:
    cls = assignment.semantic_class
    return set(cls.components) if cls else set()


def instantiations(pattern: Signature) -> list[Signature]:
    """All fully specified signatures matching ``pattern``."""
    return [s for s in all_signatures() if matches(pattern, s)]

