"""Learning trapezoidal membership functions from per-class histograms."""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from fqrc import _kernels
from fqrc.core import (
    FourTuple,
    HistogramSummary,
    LabeledSample,
    MembershipModel,
    ValidationError,
)

DEFAULT_BINS = 50


class EmptyClassError(ValidationError):
    def __init__(self, class_name: str):
        super().__init__(f"no training data for class {class_name!r}")
        self.class_name = class_name


def _as_values(values: Sequence[float]) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64).ravel()
    if arr.size == 0:
        raise ValidationError("no training data for class/feature")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("training values must be finite")
    return arr


def bin_edges(lo: float, hi: float, bins: int) -> np.ndarray:
    """Equal-width edges over ``[lo, hi]`` with width ``(hi - lo) / bins``.

    The last edge is pinned to ``hi`` so the maximum always lands in the
    final (right-closed) bin.
    """
    width = (hi - lo) / bins
    edges = lo + np.arange(bins + 1, dtype=np.float64) * width
    edges[-1] = hi
    return edges


def build_histogram(values: Sequence[float], bins: int = DEFAULT_BINS) -> HistogramSummary:
    if int(bins) != bins or bins < 1:
        raise ValidationError(f"bin count must be a positive integer, got {bins!r}")
    bins = int(bins)
    arr = _as_values(values)
    lo, hi = float(arr.min()), float(arr.max())
    if lo == hi:
        # zero range: one degenerate bin holds all the mass
        edges = np.full(bins + 1, lo)
        counts = np.zeros(bins, dtype=np.int64)
        counts[0] = arr.size
    else:
        edges = bin_edges(lo, hi, bins)
        counts = _kernels.bin_counts(arr, edges)
    nonempty = int(np.count_nonzero(counts))
    return HistogramSummary(
        bin_edges=tuple(float(e) for e in edges),
        counts=tuple(int(c) for c in counts),
        nonempty_bins=nonempty,
        mean_occupancy=arr.size / nonempty,
    )


def dominant_bins(hist: HistogramSummary) -> list[int]:
    """Bins whose count strictly exceeds the mean occupancy.

    A perfectly uniform histogram has no such bin; every nonempty bin is
    then treated as dominant.
    """
    dom = [i for i, c in enumerate(hist.counts) if c > hist.mean_occupancy]
    if not dom:
        dom = [i for i, c in enumerate(hist.counts) if c > 0]
    return dom


def extract_four_tuple(hist: HistogramSummary, values: Sequence[float]) -> FourTuple:
    arr = _as_values(values)
    if hist.total != arr.size:
        raise ValidationError("histogram was not built from these values")
    lo, hi = float(arr.min()), float(arr.max())
    if lo == hi:
        return FourTuple(lo, lo, 0.0, 0.0)
    dom = dominant_bins(hist)
    a = hist.bin_edges[dom[0]]
    b = hist.bin_edges[dom[-1] + 1]
    return FourTuple.from_support(lo, a, b, hi)


def learn_cell(values: Sequence[float], bins: int = DEFAULT_BINS) -> FourTuple:
    return extract_four_tuple(build_histogram(values, bins), values)


def train(
    samples: Sequence[LabeledSample],
    n_classes: int,
    bins: int = DEFAULT_BINS,
    class_names: Optional[Sequence[str]] = None,
    feature_names: Optional[Sequence[str]] = None,
) -> MembershipModel:
    """Learn one four-tuple per (feature, class) cell.

    Samples are grouped by label; for each feature and class a histogram of
    that class's values yields the plateau (dominant bins) and the support
    (observed min and max).
    """
    if n_classes < 1:
        raise ValidationError("need at least one class")
    if class_names is None:
        class_names = [f"C{k + 1}" for k in range(n_classes)]
    if len(class_names) != n_classes:
        raise ValidationError("class_names length must equal the class count")
    if not samples:
        raise ValidationError("no training samples")
    J = len(samples[0].features)
    if J == 0:
        raise ValidationError("samples have no features")
    if feature_names is None:
        feature_names = [f"f{j + 1}" for j in range(J)]
    if len(feature_names) != J:
        raise ValidationError("feature_names length must equal the feature count")

    groups: list[list[Sequence[float]]] = [[] for _ in range(n_classes)]
    for i, s in enumerate(samples):
        if len(s.features) != J:
            raise ValidationError(
                f"sample {i} has {len(s.features)} features, expected {J}"
            )
        if s.label >= n_classes:
            raise ValidationError(f"sample {i} has label {s.label} outside {n_classes} classes")
        groups[s.label].append(s.features.values)

    grids = []
    for k, rows in enumerate(groups):
        if not rows:
            raise EmptyClassError(class_names[k])
        grids.append(np.asarray(rows, dtype=np.float64))

    tuples = [
        [learn_cell(grids[k][:, j], bins) for k in range(n_classes)]
        for j in range(J)
    ]
    return MembershipModel(
        tuples=tuples,
        class_names=class_names,
        feature_names=feature_names,
        bins=bins,
        class_counts=[len(g) for g in groups],
    )


def check_support_invariant(model: MembershipModel, samples: Sequence[LabeledSample]) -> None:
    """Raise if any cell's support differs from its training min/max."""
    for k in range(model.n_classes):
        rows = [s.features.values for s in samples if s.label == k]
        for j in range(model.n_features):
            col = [r[j] for r in rows]
            t = model[j, k]
            if (t.lower, t.upper) != (min(col), max(col)):
                raise AssertionError(
                    f"support of cell ({j}, {k}) is {t.support}, data range is "
                    f"({min(col)}, {max(col)})"
                )
            if not t.lower <= t.a <= t.b <= t.upper:
                raise AssertionError(f"cell ({j}, {k}) plateau outside support")
