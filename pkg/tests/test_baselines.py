import numpy as np
import pytest

from fqrc.baselines import KNNClassifier, knn_classify
from fqrc.core import FeatureVector, LabeledSample, ValidationError


def S(x, k):
    return LabeledSample(FeatureVector(x if isinstance(x, (list, tuple)) else [x]), k)


def test_self_query_k1():
    train = [S([0, 0], 0), S([1, 1], 1), S([2, 0], 2)]
    for s in train:
        assert knn_classify(train, s.features, k=1) == s.label


def test_hand_enumerated_three_neighbours():
    # distances from 0.4: 0.4 (c1), 0.6 (c1), 9.6 (c2)
    train = [S(0, 0), S(1, 0), S(10, 1)]
    assert knn_classify(train, [0.4], k=3) == 0


def test_vote_tie_broken_by_mean_distance():
    # two votes each; class 1 neighbours are closer on average
    train = [S(-1.0, 0), S(-1.2, 0), S(0.9, 1), S(1.1, 1)]
    assert knn_classify(train, [0.0], k=4) == 1


def test_vote_tie_then_lower_index():
    train = [S(-1.0, 1), S(1.0, 0)]
    assert knn_classify(train, [0.0], k=2) == 0


def test_k_equal_train_size_is_global_majority():
    train = [S(0, 0), S(1, 1), S(2, 1), S(50, 1), S(0.1, 0)]
    assert knn_classify(train, [0.0], k=5) == 1


def test_k_too_large():
    with pytest.raises(ValidationError):
        knn_classify([S(0, 0)], [0.0], k=2)


def test_dimension_mismatch():
    with pytest.raises(ValidationError):
        KNNClassifier(1).fit([S([0, 0], 0)]).predict([[0.0]])
