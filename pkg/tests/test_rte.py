import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from modality_classes.lexicon import Signature, TranslationTable
from modality_classes.rte import (
    FeatureExtractor, RtePair, evaluate_pairs, factuality_mismatch, import_rte3, load_pairs,
    membership_from_assignments, multi_class_membership, tokenize, uncertainty_lemmas, word_overlap,
)
from modality_classes.signatures import ClassAssignment, CLASS_BY_NAME
from modality_classes.synthetic import UNCERTAIN_VERBS, generate_pairs


def assign(lemma, cls):
    return ClassAssignment(lemma, cls, CLASS_BY_NAME[cls].pattern)


MEMBERS = [assign("hoffen", "NON_FACTUAL"), assign("fordern", "FUTURE_ORIENTED"),
           assign("bedauern", "WH_FACTUAL"), assign("hören", "WH_IF_FACTUAL")]
MARKERS = uncertainty_lemmas(membership_from_assignments(MEMBERS))


@pytest.mark.parametrize("text,tokens", [
    ("The cat sat.", ["the", "cat", "sat"]),
    ("", []),
    ("Will Grant's", ["will", "grant's"]),
    ("  ... --  ", []),
])
def test_tokenize(text, tokens):
    assert tokenize(text) == tokens


@pytest.mark.parametrize("t,h,n", [("a b c", "b c d", 2), ("a b a", "a b a", 2), ("a b", "c d", 0)])
def test_word_overlap(t, h, n):
    assert word_overlap(t, h) == n


def test_uncertainty_default_excludes_factual():
    assert MARKERS == {"hoffen", "fordern"}


@pytest.mark.parametrize("t,h,expected", [
    (["er", "hoffen"], ["er", "kommen"], (0.0, 1)),
    (["er", "kommen"], ["sie", "gehen"], (0.0, 0)),
    (["fordern"], ["fordern"], (1.0, 0)),
    (["fordern", "hoffen"], ["fordern"], (0.5, 0)),
    (["bedauern"], [], (0.0, 0)),
])
def test_factuality_mismatch(t, h, expected):
    assert factuality_mismatch(t, h, MARKERS) == expected


def test_factuality_mismatch_accepts_membership_map():
    assert factuality_mismatch(["hoffen"], [], membership_from_assignments(MEMBERS)) == (0.0, 1)


words = st.lists(st.sampled_from(["hoffen", "fordern", "bedauern", "und", "er", "hören"]), max_size=8)


@settings(max_examples=1000)
@given(words, words)
def test_fm_properties(t, h):
    overlap, mismatch = factuality_mismatch(t, h, MARKERS)
    assert 0.0 <= overlap <= 1.0 and mismatch in (0, 1)
    assert factuality_mismatch(t + t, h + h, MARKERS) == (overlap, mismatch)


text = st.text(alphabet=st.sampled_from("ab c.,'D"), max_size=30)


@settings(max_examples=1000)
@given(text, text)
def test_overlap_properties(t, h):
    assert word_overlap(t, h) == word_overlap(h, t)
    assert word_overlap(t, t) == len(set(tokenize(t)))
    assert word_overlap(t, h) >= 0


def test_multi_class_membership():
    table = TranslationTable.from_pairs([("hoffen", "hope"), ("fordern", "demand"), ("verlangen", "demand")])
    m = multi_class_membership(table, [assign("hoffen", "NON_FACTUAL"), assign("fordern", "FUTURE_ORIENTED"),
                                       assign("verlangen", "FUTURE_ORIENTED")])
    assert m == {"hope": {"NON_FACTUAL"}, "demand": {"FUTURE_ORIENTED"}}
    mixed = multi_class_membership(TranslationTable.from_pairs([("bedauern", "regret"), ("bereuen", "regret")]),
                                   [assign("bedauern", "WH_FACTUAL"), assign("bereuen", "NON_FACTUAL")])
    assert mixed == {"regret": {"WH_FACTUAL", "NON_FACTUAL"}}
    # membership in any uncertainty class makes a marker
    assert uncertainty_lemmas(mixed) == {"regret"}


def test_feature_extractor_uses_lemma_dict():
    ex = FeatureExtractor(frozenset({"hope"}), {"hopes": "hope"})
    pair = RtePair("1", "She hopes that it works.", "It works.", "NO_ENTAILMENT")
    assert ex(pair) == {"WO": 2.0, "FM_OVERLAP": 0.0, "FM_PRESENCE_MISMATCH": 1.0}
    lemmatized = RtePair("2", "x", "y", "ENTAILMENT", ("hope",), ("hope",))
    assert ex(lemmatized)["FM_OVERLAP"] == 1.0


def test_load_pairs(tmp_path):
    p = tmp_path / "p.jsonl"
    p.write_text(json.dumps({"id": "1", "text": "a", "hypothesis": "b", "label": "ENTAILMENT"}) + "\n"
                 + json.dumps({"id": "2", "text": "a", "hypothesis": "b", "label": "NO_ENTAILMENT",
                               "text_lemmas": ["a"], "hyp_lemmas": ["b"]}) + "\n")
    pairs = load_pairs(p)
    assert pairs[1].text_lemmas == ("a",)
    with pytest.raises(ValueError, match="not in"):
        load_pairs(p, "3way")


def test_import_rte3(data_dir):
    pairs = import_rte3(data_dir / "rte3_sample.xml", "3way")
    assert [(p.id, p.label) for p in pairs] == [("1", "ENTAILMENT"), ("2", "CONTRADICTION"), ("3", "UNKNOWN")]
    assert pairs[1].hypothesis == "Will Grant is researching a conflict with Mexicans."
    with pytest.raises(ValueError):
        import_rte3(data_dir / "rte3_sample.xml", "2way")


def test_synthetic_separable_by_wo():
    # WO alone determines the label
    pairs = [RtePair(f"p{i}", " ".join(f"t{j}" for j in range(i % 2 * 3 + 1)),
                     " ".join(f"t{j}" for j in range(i % 2 * 3 + 1)),
                     "ENTAILMENT" if i % 2 else "NO_ENTAILMENT") for i in range(10)]
    result = evaluate_pairs(pairs, FeatureExtractor(), "wo", k=10, seed=0)
    assert result.accuracy == 1.0


def test_pair_order_does_not_matter():
    pairs = generate_pairs(60, 0.9, seed=4)
    ex = FeatureExtractor(frozenset(UNCERTAIN_VERBS))
    shuffled = list(pairs)
    random.Random(1).shuffle(shuffled)
    a = evaluate_pairs(pairs, ex, "wo+fm", k=10, seed=8)
    b = evaluate_pairs(shuffled, ex, "wo+fm", k=10, seed=8)
    assert a.fold_accuracies == b.fold_accuracies
