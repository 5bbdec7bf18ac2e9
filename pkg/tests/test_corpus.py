from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from modality_classes.corpus import (
    ReattachReport, Token, class_distribution, class_type_distribution, count_corpus, count_lemmas,
    frequency_filter, polysemy_stats, read_corpus, reattach_particles,
)
from modality_classes.lexicon import Language, Lexicon, Sense, Signature, VerbEntry, load_lexicon
from modality_classes.signatures import ClassAssignment, classify_lexicon

ASP = ClassAssignment("wagen", "ASPECTUAL", Signature.parse("010---"))


def sent(*triples):
    return tuple(Token(*t) for t in triples)


def test_reattach_basic():
    s = sent(("er", "er", "PPER"), ("bietet", "bieten", "VVFIN"), ("Hilfe", "Hilfe", "NN"), ("an", "an", "PTKVZ"))
    out = reattach_particles(s)
    assert out[1].lemma == "anbieten"
    assert out[3].lemma == "an" and len(out) == 4


def test_reattach_no_particle():
    s = sent(("er", "er", "PPER"), ("hofft", "hoffen", "VVFIN"))
    assert reattach_particles(s) == s


def test_reattach_nearest_preceding_verb():
    s = sent(("Er", "er", "PPER"), ("sagt", "sagen", "VVFIN"), (",", ",", "$,"), ("sie", "sie", "PPER"),
             ("bietet", "bieten", "VVFIN"), ("Hilfe", "Hilfe", "NN"), ("an", "an", "PTKVZ"))
    out = reattach_particles(s)
    assert [t.lemma for t in out if t.pos.startswith("VV")] == ["sagen", "anbieten"]


def test_reattach_without_verb_is_reported():
    report = ReattachReport()
    s = sent(("an", "an", "PTKVZ"), ("bietet", "bieten", "VVFIN"))
    assert reattach_particles(s, report=report) == s
    assert report.skipped == 1 and report.rewritten == 0


tokens = st.builds(
    Token,
    st.sampled_from(["a", "b"]),
    st.sampled_from(["an", "auf", "bieten", "geben", "Hilfe"]),
    st.sampled_from(["VVFIN", "VAFIN", "NN", "PTKVZ", "ADV"]),
)
sentences = st.lists(tokens, min_size=1, max_size=10).map(tuple)


@settings(max_examples=300)
@given(sentences)
def test_reattach_idempotent(s):
    once = reattach_particles(s)
    assert reattach_particles(once) == once
    assert len(once) == len(s)


def test_count_lemmas():
    corpus = [
        sent(("ich", "ich", "PPER"), ("hoffe", "hoffen", "VVFIN")),
        sent(("wir", "wir", "PPER"), ("hoffen", "hoffen", "VVFIN")),
        sent(("die", "die", "ART"), ("Hoffnung", "hoffen", "NN")),
    ]
    assert count_lemmas(corpus, {"hoffen"}) == {"hoffen": 2}
    assert count_lemmas([sent(("Hoffen", "hoffen", "NN"))], {"hoffen"}) == {}
    assert count_lemmas([], {"hoffen"}) == {}


def test_count_case_handling():
    corpus = [sent(("Hope", "Hope", "VB"))]
    assert count_lemmas(corpus, {"hope"}, lowercase=True) == {"hope": 1}
    assert count_lemmas(corpus, {"hope"}) == {}


@settings(max_examples=200)
@given(st.lists(sentences, max_size=8), st.lists(sentences, max_size=8))
def test_counting_additive(a, b):
    lemmas = {"bieten", "anbieten", "geben"}
    whole = count_corpus(a + b, lemmas, reattach=True)
    split = count_corpus(a, lemmas, reattach=True) + count_corpus(b, lemmas, reattach=True)
    assert whole == split


def test_class_distribution_small():
    dist = class_distribution({"wagen": 1}, [ASP], 4)
    assert dist.percentages["ASPECTUAL"] == 25.0
    assert dist.all == 25.0
    zero = class_distribution({}, [ASP], 4)
    assert zero.all == 0.0
    with pytest.raises(ValueError):
        class_distribution({}, [ASP], 0)
    with pytest.raises(ValueError):
        class_distribution({"wagen": 5}, [ASP], 4)


@given(st.integers(1, 5), st.integers(0, 20), st.integers(0, 20))
def test_distribution_duplication_invariant(times, members, others):
    total = members + others + 1
    once = class_distribution({"wagen": members}, [ASP], total)
    dup = class_distribution({"wagen": members * times}, [ASP], total * times)
    assert once.percentages == pytest.approx(dup.percentages, abs=1e-12)


def test_type_distribution():
    dist = class_type_distribution({"wagen": 3, "gehen": 1}, [ASP])
    assert dist.percentages["ASPECTUAL"] == 50.0 and dist.unit == "types"


# hand-counted: 50 tokens, 12 verb tokens; after particle reattachment the
# members are anbieten, fordern (FO), nachfragen (INT), wagen (ASP),
# einsehen (WHF), festlegen (FO_WH_IF), fürchten (NF)
FIXTURE_VERB_TOKENS = 12
FIXTURE_MEMBER_COUNTS = {
    "FUTURE_ORIENTED": 2, "INTERROGATIVE": 1, "ASPECTUAL": 1, "WH_FACTUAL": 1,
    "FO_WH_IF_FACTUAL": 1, "NON_FACTUAL": 1, "FO_WH_FACTUAL": 0, "WH_IF_FACTUAL": 0,
}
FIXTURE_MEMBER_COUNTS_NO_REATTACH = {
    "FUTURE_ORIENTED": 1, "INTERROGATIVE": 0, "ASPECTUAL": 1, "WH_FACTUAL": 1,
    "FO_WH_IF_FACTUAL": 0, "NON_FACTUAL": 1, "FO_WH_FACTUAL": 0, "WH_IF_FACTUAL": 0,
}


def hand_percent(counts, total):
    return {c: float(Fraction(100 * n, total)) for c, n in counts.items()}


def load_fixture(data_dir):
    with open(data_dir / "particle_corpus.conll", encoding="utf-8") as fh:
        corpus = list(read_corpus(fh))
    entries = load_lexicon(data_dir / "table2_examples.tsv")
    return corpus, entries


@pytest.mark.parametrize("reattach,expected", [
    (True, FIXTURE_MEMBER_COUNTS), (False, FIXTURE_MEMBER_COUNTS_NO_REATTACH),
])
def test_fixture_distribution(data_dir, reattach, expected):
    corpus, entries = load_fixture(data_dir)
    assert sum(len(s) for s in corpus) == 50
    counts = count_corpus(corpus, [e.lemma for e in entries], reattach=reattach)
    assert counts.tokens == 50 and counts.verb_tokens == FIXTURE_VERB_TOKENS
    assignments, _ = classify_lexicon(entries)
    dist = class_distribution(counts.lemma_counts, assignments, counts.verb_tokens)
    assert dist.percentages == hand_percent(expected, FIXTURE_VERB_TOKENS)
    assert dist.all == pytest.approx(float(Fraction(100 * sum(expected.values()), FIXTURE_VERB_TOKENS)), abs=1e-12)


def _entries(**counts):
    sig = Signature.parse("010000")
    return [VerbEntry(l, Language.DE, sig, (), n) for l, n in counts.items()]


def test_frequency_filter():
    kept, fraction = frequency_filter(_entries(a=51, b=50), 50)
    assert [e.lemma for e in kept] == ["a"] and fraction == 0.5
    kept, _ = frequency_filter(_entries(a=1, b=0, c=7), 0)
    assert [e.lemma for e in kept] == ["a", "c"]
    with pytest.raises(ValueError, match="no corpus frequency"):
        frequency_filter([VerbEntry("x", Language.DE, Signature.parse("010000"))], 1)


@given(st.lists(st.integers(0, 100), min_size=1, max_size=20), st.integers(0, 100), st.integers(0, 100))
def test_frequency_filter_monotone(freqs, t1, t2):
    lo, hi = sorted((t1, t2))
    entries = _entries(**{f"v{i}": n for i, n in enumerate(freqs)})
    assert {e.lemma for e in frequency_filter(entries, hi)[0]} <= {e.lemma for e in frequency_filter(entries, lo)[0]}


def test_polysemy():
    inv = [Sense("v1a", "v1", Lexicon.GERMANET), Sense("v1b", "v1", Lexicon.GERMANET),
           Sense("v2a", "v2", Lexicon.GERMANET)]
    stats = polysemy_stats(inv, {"v1"})
    assert (stats.restricted_mean, stats.overall_mean, stats.matched) == (2.0, 1.5, 1)
    none = polysemy_stats(inv, {"zz"})
    assert none.restricted_mean is None and none.overall_mean == 1.5 and none.matched == 0
    with pytest.raises(ValueError):
        polysemy_stats([], {"v1"})
