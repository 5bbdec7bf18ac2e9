"""Synthetic entailment pairs where uncertainty-marker mismatch drives the label.

Word overlap is drawn independently of the label, so it carries no signal.
"""

from __future__ import annotations

import random

from .rte import RtePair

UNCERTAIN_VERBS = ("hope", "fear", "plan", "try", "ask", "offer", "demand", "hesitate")
FACTUAL_VERBS = ("regret", "know", "see", "describe", "hear", "remember")
FILLER = tuple(f"w{i:02d}" for i in range(60))


def _sentence(rng, shared, own, verb=None):
    words = list(shared) + list(own)
    rng.shuffle(words)
    if verb is not None:
        words.insert(rng.randrange(len(words) + 1), verb)
    return " ".join(words)


def generate_pairs(n: int = 200, fidelity: float = 0.9, seed: int = 0) -> list[RtePair]:
    """Return ``n`` two-way labelled pairs.

    A pair whose text and hypothesis disagree on containing an uncertainty
    verb is NO_ENTAILMENT, otherwise ENTAILMENT; each label is then flipped
    with probability ``1 - fidelity``.
    """
    rng = random.Random(seed)
    pairs = []
    for i in range(n):
        shared = rng.sample(FILLER, rng.randint(1, 6))
        rest = [w for w in FILLER if w not in shared]
        own_t = rng.sample(rest, rng.randint(2, 5))
        rest = [w for w in rest if w not in own_t]
        own_h = rng.sample(rest, rng.randint(1, 4))

        mismatch = rng.random() < 0.5
        if mismatch:
            u = rng.choice(UNCERTAIN_VERBS)
            f = rng.choice(FACTUAL_VERBS)
            t_verb, h_verb = (u, f) if rng.random() < 0.5 else (f, u)
        elif rng.random() < 0.5:
            # distinct markers on both sides keep them out of the word overlap
            t_verb, h_verb = rng.sample(UNCERTAIN_VERBS, 2)
        else:
            t_verb, h_verb = rng.sample(FACTUAL_VERBS, 2)

        label = "NO_ENTAILMENT" if mismatch else "ENTAILMENT"
        if rng.random() >= fidelity:
            label = "ENTAILMENT" if mismatch else "NO_ENTAILMENT"
        text = _sentence(rng, shared, own_t, t_verb)
        hyp = _sentence(rng, shared, own_h, h_verb)
        pairs.append(RtePair(f"syn{i:04d}", text, hyp, label, tuple(text.split()), tuple(hyp.split())))
    return pairs
