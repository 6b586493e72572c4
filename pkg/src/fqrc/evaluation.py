"""Multi-label evaluation: alpha-evaluation, cosine similarity, error
statistics and per-class F-score."""

from __future__ import annotations

import math
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from fqrc.core import ClassDistribution, EvalParams, EvalReport, ValidationError
from fqrc.infer import alpha_cut

LabelSet = frozenset
DistLike = Union[ClassDistribution, Sequence[float]]


def label_set(d: DistLike) -> frozenset[int]:
    """Binary form of a distribution: the classes with positive mass."""
    r = d.r if isinstance(d, ClassDistribution) else d
    return frozenset(k for k, v in enumerate(r) if v > 0)


def alpha_score(
    predicted: Iterable[int], truth: Iterable[int], params: EvalParams = EvalParams()
) -> float:
    """Score ``(1 - (beta*M + gamma*Q) / |Y u W|) ** alpha``.

    M counts missed labels, Q false positives. The base is clamped at 0,
    and a zero base scores 0 for every alpha (including alpha = 0, where
    Python's ``0 ** 0`` would give 1).
    """
    W, Y = frozenset(predicted), frozenset(truth)
    union = Y | W
    if not union:
        raise ValidationError("undefined union: predicted and truth are both empty")
    missed = len(Y - W)
    false_pos = len(W - Y)
    base = 1.0 - (params.beta_w * missed + params.gamma_w * false_pos) / len(union)
    base = min(max(base, 0.0), 1.0)
    if base == 0.0:
        return 0.0
    return base ** params.alpha


def dataset_accuracy(
    pairs: Sequence[tuple[Iterable[int], Iterable[int]]], params: EvalParams = EvalParams()
) -> float:
    if not pairs:
        raise ValidationError("accuracy over an empty dataset is undefined")
    return math.fsum(alpha_score(w, y, params) for w, y in pairs) / len(pairs)


def _vec(d: DistLike) -> np.ndarray:
    return np.asarray(d.r if isinstance(d, ClassDistribution) else d, dtype=np.float64)


def distribution_similarity(predicted: DistLike, reference: DistLike) -> float:
    """Cosine of the angle between two distributions (1 for identical)."""
    w, y = _vec(predicted), _vec(reference)
    if w.shape != y.shape:
        raise ValidationError(f"class count mismatch: {w.size} vs {y.size}")
    nw, ny = np.linalg.norm(w), np.linalg.norm(y)
    if nw == 0 or ny == 0:
        raise ValidationError("zero-norm distribution")
    c = float(np.dot(w, y) / (nw * ny))
    return min(max(c, 0.0), 1.0)


def mean_similarity(pairs: Sequence[tuple[DistLike, DistLike]]) -> float:
    """Average cosine similarity; a pair with an all-zero side contributes 0."""
    if not pairs:
        raise ValidationError("similarity over an empty dataset is undefined")
    total = []
    for w, y in pairs:
        if not np.any(_vec(w)) or not np.any(_vec(y)):
            total.append(0.0)
        else:
            total.append(distribution_similarity(w, y))
    return math.fsum(total) / len(total)


def error_vectors(pairs: Sequence[tuple[DistLike, DistLike]]) -> np.ndarray:
    if not pairs:
        raise ValidationError("error statistics need at least one pair")
    rows = []
    K = None
    for w, y in pairs:
        wv, yv = _vec(w), _vec(y)
        if wv.shape != yv.shape or (K is not None and wv.size != K):
            raise ValidationError("class count mismatch in error statistics")
        K = wv.size
        rows.append(np.abs(wv - yv))
    return np.vstack(rows)


def error_stats(pairs: Sequence[tuple[DistLike, DistLike]]) -> tuple[np.ndarray, np.ndarray]:
    """Per-class mean and population standard deviation of ``|W - Y|``."""
    err = error_vectors(pairs)
    return err.mean(axis=0), err.std(axis=0)


def precision_recall(
    predicted_labels: Sequence[Optional[int]], truth_labels: Sequence[int], n_classes: int
) -> tuple[np.ndarray, np.ndarray]:
    """One-vs-rest precision and recall per class.

    A predicted label of ``None`` (or -1) means no class was assigned; it
    counts as a miss for the true class and as nobody's false positive.
    """
    if len(predicted_labels) != len(truth_labels):
        raise ValidationError("prediction and truth lists differ in length")
    if not truth_labels:
        raise ValidationError("F-score over an empty list is undefined")
    tp = np.zeros(n_classes)
    fp = np.zeros(n_classes)
    fn = np.zeros(n_classes)
    for p, t in zip(predicted_labels, truth_labels):
        p = -1 if p is None else p
        if p == t:
            tp[t] += 1
            continue
        fn[t] += 1
        if p >= 0:
            fp[p] += 1
    with np.errstate(divide="ignore", invalid="ignore"):
        prec = np.where(tp + fp > 0, tp / (tp + fp), 0.0)
        rec = np.where(tp + fn > 0, tp / (tp + fn), 0.0)
    return prec, rec


def f_score(
    predicted_labels: Sequence[Optional[int]], truth_labels: Sequence[int], n_classes: int
) -> np.ndarray:
    prec, rec = precision_recall(predicted_labels, truth_labels, n_classes)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(prec + rec > 0, 2 * prec * rec / (prec + rec), 0.0)


def macro_f_score(predicted_labels, truth_labels, n_classes: int) -> float:
    return float(np.mean(f_score(predicted_labels, truth_labels, n_classes)))


def roc_points(
    scores: Sequence[float], positives: Sequence[bool]
) -> list[tuple[float, float, float]]:
    """(threshold, TPR, FPR) triples for a one-vs-rest score list."""
    s = np.asarray(scores, dtype=np.float64)
    pos = np.asarray(positives, dtype=bool)
    n_pos, n_neg = int(pos.sum()), int((~pos).sum())
    out = []
    for thr in np.unique(s)[::-1]:
        hit = s >= thr
        tpr = (hit & pos).sum() / n_pos if n_pos else 0.0
        fpr = (hit & ~pos).sum() / n_neg if n_neg else 0.0
        out.append((float(thr), float(tpr), float(fpr)))
    return out


def evaluate(
    predictions: Sequence[ClassDistribution],
    truth_labels: Sequence[int],
    references: Optional[Sequence[ClassDistribution]] = None,
    params: EvalParams = EvalParams(),
    class_names: Sequence[str] = (),
    cut_references: bool = False,
) -> EvalReport:
    """Score a batch of predicted distributions.

    Without ``references`` the truth of each sample is the one-hot
    distribution of its label. ``params.alpha_cut`` is applied to the
    predictions, and to the references too when ``cut_references`` is set.
    """
    if not predictions:
        raise ValidationError("nothing to evaluate")
    K = len(predictions[0])
    if references is None:
        references = [
            ClassDistribution(tuple(1.0 if k == t else 0.0 for k in range(K)))
            for t in truth_labels
        ]
    if not len(predictions) == len(truth_labels) == len(references):
        raise ValidationError("predictions, labels and references differ in length")

    tau = params.alpha_cut
    preds = [alpha_cut(d, tau) if tau is not None else d for d in predictions]
    refs = list(references)
    if tau is not None and cut_references:
        refs = [alpha_cut(d, tau) for d in refs]

    scores = []
    for w, y in zip(preds, refs):
        W, Y = label_set(w), label_set(y)
        # an all-zero reference paired with an all-zero prediction earns nothing
        scores.append(alpha_score(W, Y, params) if W | Y else 0.0)
    accuracy = math.fsum(scores) / len(scores)
    sim = mean_similarity(list(zip(preds, refs)))
    err_mean, err_std = error_stats(list(zip(preds, refs)))
    binary = [None if d.is_all_zero else int(np.argmax(d.r)) for d in preds]
    fs = f_score(binary, list(truth_labels), K)
    return EvalReport(
        accuracy=accuracy,
        mean_similarity=sim,
        error_mean=tuple(float(v) for v in err_mean),
        error_std=tuple(float(v) for v in err_std),
        f_scores=tuple(float(v) for v in fs),
        class_names=tuple(class_names),
        n_samples=len(preds),
        n_unclassified=sum(b is None for b in binary),
    )
