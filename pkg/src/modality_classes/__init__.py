"""Modality verb classes from syntactic signatures of clause-embedding verbs."""

__version__ = "0.1.0"
FORMAT_VERSION = "lexicon-tsv/1, senses-json/1, links-json/1, pairs-jsonl/1"

from .lexicon import (  # noqa: E402
    Signature, Slot, Value, VerbEntry, SubcatFrame, SyntacticArgument, Sense, TranslationTable,
    load_lexicon, load_sense_inventory, load_translations,
)
from .signatures import (  # noqa: E402
    CLASSES, ClassAssignment, Component, classify_lexicon, classify_signature, matches, meaning_components,
)
