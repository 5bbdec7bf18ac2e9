"""Gaussian Naive Bayes and k-fold cross-validation."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

DEFAULT_EPSILON = 1e-9


@dataclass(frozen=True)
class NbModel:
    labels: tuple[str, ...]
    features: tuple[str, ...]
    priors: np.ndarray     # (n_labels,)
    means: np.ndarray      # (n_labels, n_features)
    variances: np.ndarray  # (n_labels, n_features), epsilon included
    epsilon: float


def _matrix(vectors: Sequence[Mapping[str, float]], features: Sequence[str]) -> np.ndarray:
    try:
        return np.array([[float(v[f]) for f in features] for v in vectors], dtype=np.float64)
    except KeyError as exc:
        raise ValueError(f"feature {exc.args[0]!r} missing from a vector") from None


def nb_train(
    vectors: Sequence[Mapping[str, float]],
    labels: Sequence[str],
    epsilon: float = DEFAULT_EPSILON,
    features: Sequence[str] | None = None,
) -> NbModel:
    if len(vectors) != len(labels):
        raise ValueError("vectors and labels differ in length")
    classes = tuple(sorted(set(labels)))
    if len(classes) < 2:
        raise ValueError(f"need at least two classes, got {classes}")
    if features is None:
        features = tuple(vectors[0])
    X = _matrix(vectors, features)
    y = np.asarray(labels)
    priors, means, variances = [], [], []
    for c in classes:
        Xc = X[y == c]
        priors.append(len(Xc) / len(X))
        means.append(Xc.mean(axis=0))
        variances.append(Xc.var(axis=0) + epsilon)
    return NbModel(classes, tuple(features), np.array(priors), np.array(means), np.array(variances), epsilon)


def log_posteriors(model: NbModel, vector: Mapping[str, float]) -> np.ndarray:
    """Unnormalized log posterior per label."""
    unknown = set(vector) - set(model.features)
    if unknown:
        raise ValueError(f"unknown feature(s): {', '.join(sorted(unknown))}")
    x = _matrix([vector], model.features)[0]
    ll = -0.5 * (np.log(2 * math.pi * model.variances) + (x - model.means) ** 2 / model.variances)
    return np.log(model.priors) + ll.sum(axis=1)


def nb_predict(model: NbModel, vector: Mapping[str, float]) -> str:
    # labels are sorted, so argmax's first-index rule breaks ties lexicographically
    return model.labels[int(np.argmax(log_posteriors(model, vector)))]


def make_folds(n: int, k: int, seed: int) -> list[list[int]]:
    """Seeded shuffle of range(n) cut into k contiguous near-equal slices."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if k > n:
        raise ValueError(f"k={k} exceeds the number of items ({n})")
    order = list(range(n))
    random.Random(seed).shuffle(order)
    base, extra = divmod(n, k)
    folds, start = [], 0
    for i in range(k):
        size = base + (i < extra)
        folds.append(order[start:start + size])
        start += size
    return folds


@dataclass
class CvResult:
    accuracy: float
    fold_accuracies: list[float]
    fold_sizes: list[int]
    correct: int
    total: int


def cross_validate(
    items: Sequence,
    featurize: Callable[[object], Mapping[str, float]],
    label_of: Callable[[object], str],
    features: Sequence[str],
    k: int = 10,
    seed: int = 0,
    epsilon: float = DEFAULT_EPSILON,
    key: Callable[[object], object] | None = None,
) -> CvResult:
    """k-fold CV with pooled accuracy (total correct / total items).

    Items are put in canonical order by ``key`` before the seeded shuffle, so
    the result does not depend on input order.
    """
    items = sorted(items, key=key) if key is not None else list(items)
    vectors = []
    for it in items:
        full = featurize(it)
        vectors.append({f: full[f] for f in features})
    labels = [label_of(it) for it in items]
    folds = make_folds(len(items), k, seed)
    fold_acc, correct = [], 0
    for test in folds:
        test_set = set(test)
        train = [i for i in range(len(items)) if i not in test_set]
        model = nb_train([vectors[i] for i in train], [labels[i] for i in train], epsilon, features)
        hits = sum(nb_predict(model, vectors[i]) == labels[i] for i in test)
        correct += hits
        fold_acc.append(hits / len(test))
    return CvResult(correct / len(items), fold_acc, [len(f) for f in folds], correct, len(items))
