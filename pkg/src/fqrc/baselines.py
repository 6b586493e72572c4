"""K-nearest-neighbour baseline for single-label comparisons."""

from __future__ import annotations

from collections import defaultdict
from typing import Sequence

import numpy as np

from fqrc.core import FeatureVector, LabeledSample, ValidationError


class KNNClassifier:
    """Unweighted Euclidean k-NN.

    Neighbours at equal distance are taken in training order. Vote ties go to
    the class with the smaller mean neighbour distance, then the lower index.
    """

    def __init__(self, k: int = 5):
        if k < 1:
            raise ValidationError(f"k must be positive, got {k}")
        self.k = k

    def fit(self, samples: Sequence[LabeledSample]) -> "KNNClassifier":
        if not samples:
            raise ValidationError("KNN needs at least one training sample")
        if self.k > len(samples):
            raise ValidationError(f"k={self.k} exceeds the {len(samples)} training samples")
        self.X_ = np.asarray([s.features.values for s in samples], dtype=np.float64)
        self.y_ = np.asarray([s.label for s in samples], dtype=np.int64)
        return self

    def _predict_one(self, q: np.ndarray) -> int:
        dist = np.sqrt(((self.X_ - q) ** 2).sum(axis=1))
        nearest = np.argsort(dist, kind="stable")[: self.k]
        votes: dict[int, list[float]] = defaultdict(list)
        for i in nearest:
            votes[int(self.y_[i])].append(float(dist[i]))
        return min(votes, key=lambda c: (-len(votes[c]), float(np.mean(votes[c])), c))

    def predict(self, X) -> list[int]:
        arr = np.atleast_2d(np.asarray(X, dtype=np.float64))
        if arr.shape[1] != self.X_.shape[1]:
            raise ValidationError(
                f"query has {arr.shape[1]} features, training data has {self.X_.shape[1]}"
            )
        return [self._predict_one(q) for q in arr]


def knn_classify(train: Sequence[LabeledSample], query, k: int = 5) -> int:
    q = query.values if isinstance(query, FeatureVector) else query
    return KNNClassifier(k).fit(train).predict([q])[0]
