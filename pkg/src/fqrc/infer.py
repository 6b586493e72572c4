"""Class confidence inference from a learned membership model."""

from __future__ import annotations

from typing import Sequence, Union

import numpy as np

from fqrc import _kernels
from fqrc.core import ClassDistribution, FeatureVector, FourTuple, MembershipModel, ValidationError


class UnclassifiableError(ValueError):
    pass


def membership(t: FourTuple, x: float) -> float:
    """Trapezoidal membership of ``x``.

    Zero-width ramps are steps: with ``alpha == 0`` the value is 1 at
    ``x == a`` and 0 just below it (likewise on the right for ``beta``).
    """
    if x < t.lower:
        return 0.0
    if x < t.a:
        return (x - t.lower) / t.alpha
    if x <= t.b:
        return 1.0
    if x <= t.upper:
        return (t.upper - x) / t.beta
    return 0.0


def _as_matrix(model: MembershipModel, X) -> np.ndarray:
    if isinstance(X, FeatureVector):
        X = [X.values]
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[1] != model.n_features:
        raise ValidationError(
            f"expected {model.n_features} features per sample, got shape {arr.shape}"
        )
    if not np.all(np.isfinite(arr)):
        raise ValidationError("feature values must be finite")
    return arr


def membership_grid(model: MembershipModel, X) -> np.ndarray:
    """Memberships of each sample, shape (N, J, K)."""
    arr = _as_matrix(model, X)
    p = model.arrays
    return _kernels.memberships(arr, p["lower"], p["a"], p["b"], p["upper"],
                                p["alpha"], p["beta"])


def class_products(model: MembershipModel, X) -> np.ndarray:
    """Unnormalized per-class products, shape (N, K)."""
    arr = _as_matrix(model, X)
    p = model.arrays
    return _kernels.class_products(arr, p["lower"], p["a"], p["b"], p["upper"],
                                   p["alpha"], p["beta"])


def normalize(products: Sequence[float]) -> ClassDistribution:
    """Divide the products by their sum; a zero sum gives the all-zero sentinel."""
    P = np.asarray(products, dtype=np.float64)
    z = P.sum()
    if z == 0:
        return ClassDistribution.zeros(P.size)
    return ClassDistribution(tuple((P / z).tolist()))


def distribution_from_memberships(mu) -> ClassDistribution:
    """Normalize the column products of a (J, K) membership grid."""
    mu = np.asarray(mu, dtype=np.float64)
    P = np.ones(mu.shape[1])
    for row in mu:
        P = P * row
    return normalize(P)


def infer(model: MembershipModel, x: Union[FeatureVector, Sequence[float]]) -> ClassDistribution:
    arr = _as_matrix(model, x)
    if arr.shape[0] != 1:
        raise ValidationError("infer takes a single feature vector; use infer_batch")
    return normalize(class_products(model, arr)[0])


def infer_batch(model: MembershipModel, X) -> list[ClassDistribution]:
    return [normalize(P) for P in class_products(model, X)]


def alpha_cut(d: ClassDistribution, tau: float) -> ClassDistribution:
    """Zero entries below ``tau`` and renormalize.

    If every entry falls below ``tau`` the distribution is returned as is.
    """
    if not 0 <= tau < 1:
        raise ValidationError(f"alpha-cut threshold must lie in [0, 1), got {tau}")
    if d.is_all_zero:
        return d
    kept = [v if v >= tau else 0.0 for v in d.r]
    if not any(kept):
        return d
    return ClassDistribution.normalized(kept)


def classify_binary(d: ClassDistribution) -> int:
    """Max aggregation: index of the largest confidence, lowest index on ties."""
    if d.is_all_zero:
        raise UnclassifiableError("unclassifiable sample: all-zero distribution")
    return int(np.argmax(d.r))
