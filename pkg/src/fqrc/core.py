"""Domain types for the fuzzy qualitative rank classifier.

Classes and features are addressed by 0-based index inside the library and
by name at every external interface (CSV, model files, CLI output).
"""

from __future__ import annotations

import enum
import math
import sys
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np


class ValidationError(ValueError):
    """Raised when a value violates a domain invariant."""


def _check_finite(values: Sequence[float], what: str) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValidationError(f"{what} contains a non-finite value: {v!r}")


def _check_names(names: Sequence[str], what: str) -> None:
    if len(set(names)) != len(names):
        raise ValidationError(f"{what} names must be unique: {list(names)}")
    for n in names:
        if not n:
            raise ValidationError(f"{what} names must be non-empty")


@dataclass(frozen=True)
class FeatureVector:
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        _check_finite(self.values, "feature vector")

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, j: int) -> float:
        return self.values[j]


@dataclass(frozen=True)
class LabeledSample:
    features: FeatureVector
    label: int

    def __post_init__(self) -> None:
        if not isinstance(self.features, FeatureVector):
            object.__setattr__(self, "features", FeatureVector(self.features))
        if self.label < 0:
            raise ValidationError(f"label index must be >= 0, got {self.label}")


@dataclass(frozen=True)
class FourTuple:
    """Trapezoidal fuzzy number ``{a, b, alpha, beta}``.

    Membership is 1 on the plateau ``[a, b]`` and ramps linearly to 0 over
    ``alpha`` on the left and ``beta`` on the right.

    ``lower`` and ``upper`` hold the support endpoints ``a - alpha`` and
    ``b + beta``. They default to those differences, but the learner passes
    the observed min/max directly because ``a - (a - lo)`` does not round
    back to ``lo`` in floating point.
    """

    a: float
    b: float
    alpha: float
    beta: float
    lower: Optional[float] = None
    upper: Optional[float] = None

    def __post_init__(self) -> None:
        for name in ("a", "b", "alpha", "beta"):
            object.__setattr__(self, name, float(getattr(self, name)))
        _check_finite((self.a, self.b, self.alpha, self.beta), "four-tuple")
        if self.a > self.b:
            raise ValidationError(f"four-tuple needs a <= b, got a={self.a}, b={self.b}")
        if self.alpha < 0 or self.beta < 0:
            raise ValidationError(
                f"four-tuple needs alpha, beta >= 0, got {self.alpha}, {self.beta}"
            )
        lower = self.a - self.alpha if self.lower is None else float(self.lower)
        upper = self.b + self.beta if self.upper is None else float(self.upper)
        _check_finite((lower, upper), "four-tuple support")
        # explicit endpoints may differ from a-alpha / b+beta only by rounding
        if not (lower <= self.a and upper >= self.b):
            raise ValidationError("four-tuple support must contain [a, b]")
        eps = 4 * sys.float_info.epsilon
        if (abs(lower - (self.a - self.alpha)) > eps * max(abs(self.a), self.alpha, abs(lower))
                or abs(upper - (self.b + self.beta)) > eps * max(abs(self.b), self.beta, abs(upper))):
            raise ValidationError(
                "four-tuple support endpoints disagree with a-alpha / b+beta"
            )
        if (self.alpha == 0 and lower != self.a) or (self.beta == 0 and upper != self.b):
            raise ValidationError("zero-width ramp must coincide with its plateau edge")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def support(self) -> tuple[float, float]:
        return (self.lower, self.upper)

    @classmethod
    def from_support(cls, lower: float, a: float, b: float, upper: float) -> "FourTuple":
        return cls(a, b, max(a - lower, 0.0), max(upper - b, 0.0), lower=lower, upper=upper)


@dataclass(frozen=True)
class MembershipModel:
    """J x K grid of learned four-tuples (rows: features, columns: classes)."""

    tuples: tuple[tuple[FourTuple, ...], ...]
    class_names: tuple[str, ...]
    feature_names: tuple[str, ...]
    bins: Optional[int] = None
    class_counts: Optional[tuple[int, ...]] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "tuples", tuple(tuple(row) for row in self.tuples))
        object.__setattr__(self, "class_names", tuple(self.class_names))
        object.__setattr__(self, "feature_names", tuple(self.feature_names))
        if self.class_counts is not None:
            object.__setattr__(self, "class_counts", tuple(int(c) for c in self.class_counts))
        _check_names(self.class_names, "class")
        _check_names(self.feature_names, "feature")
        J, K = len(self.feature_names), len(self.class_names)
        if J == 0 or K == 0:
            raise ValidationError("model needs at least one feature and one class")
        if len(self.tuples) != J or any(len(row) != K for row in self.tuples):
            raise ValidationError(f"tuple grid must be {J}x{K}")
        for row in self.tuples:
            for t in row:
                if not isinstance(t, FourTuple):
                    raise ValidationError("every grid cell must hold a FourTuple")
        if self.class_counts is not None and len(self.class_counts) != K:
            raise ValidationError("class_counts length must equal K")

    @property
    def n_features(self) -> int:
        return len(self.feature_names)

    @property
    def n_classes(self) -> int:
        return len(self.class_names)

    def __getitem__(self, jk: tuple[int, int]) -> FourTuple:
        j, k = jk
        return self.tuples[j][k]

    @cached_property
    def arrays(self) -> dict[str, np.ndarray]:
        """Parameter grids of shape (J, K) in the layout the kernels expect."""
        out = {}
        for name in ("lower", "a", "b", "upper", "alpha", "beta"):
            out[name] = np.ascontiguousarray(
                [[getattr(t, name) for t in row] for row in self.tuples], dtype=np.float64
            )
        return out


@dataclass(frozen=True)
class HistogramSummary:
    bin_edges: tuple[float, ...]
    counts: tuple[int, ...]
    nonempty_bins: int
    mean_occupancy: float

    def __post_init__(self) -> None:
        if len(self.bin_edges) != len(self.counts) + 1:
            raise ValidationError("histogram needs len(edges) == len(counts) + 1")
        if any(c < 0 for c in self.counts):
            raise ValidationError("histogram counts must be non-negative")
        if self.nonempty_bins < 1:
            raise ValidationError("histogram needs at least one nonempty bin")

    @property
    def n_bins(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class ClassDistribution:
    """Normalized class confidences, or the all-zero sentinel."""

    r: tuple[float, ...]
    is_all_zero: bool = False

    def __post_init__(self) -> None:
        r = tuple(float(v) for v in self.r)
        object.__setattr__(self, "r", r)
        _check_finite(r, "distribution")
        if not r:
            raise ValidationError("distribution must have at least one class")
        if any(v < 0 or v > 1 for v in r):
            raise ValidationError(f"confidences must lie in [0, 1]: {r}")
        if self.is_all_zero:
            if any(v != 0 for v in r):
                raise ValidationError("all-zero distribution has a non-zero entry")
        elif abs(math.fsum(r) - 1.0) > 1e-9:
            raise ValidationError(f"confidences must sum to 1, got {math.fsum(r)!r}")

    @classmethod
    def zeros(cls, n: int) -> "ClassDistribution":
        return cls((0.0,) * n, is_all_zero=True)

    @classmethod
    def normalized(cls, weights: Sequence[float]) -> "ClassDistribution":
        """Divide non-negative weights by their sum; all-zero if the sum is 0."""
        w = [float(v) for v in weights]
        if any(v < 0 for v in w):
            raise ValidationError("weights must be non-negative")
        z = math.fsum(w)
        if z == 0:
            return cls.zeros(len(w))
        return cls(tuple(v / z for v in w))

    def __len__(self) -> int:
        return len(self.r)

    def support(self) -> frozenset[int]:
        """Indices with strictly positive confidence."""
        return frozenset(k for k, v in enumerate(self.r) if v > 0)


class Symbol(str, enum.Enum):
    TOP = "TOP"
    EQUAL = "EQUAL"
    HIGHER = "HIGHER"
    MUCH_HIGHER = "MUCH_HIGHER"


@dataclass(frozen=True)
class RankEntry:
    index: int
    r: float
    symbol: Symbol
    r_diff: Optional[float] = None


@dataclass(frozen=True)
class RankInterpretation:
    ranked: tuple[RankEntry, ...]
    excluded: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ranked", tuple(self.ranked))
        object.__setattr__(self, "excluded", frozenset(self.excluded))
        idx = [e.index for e in self.ranked]
        if len(set(idx)) != len(idx) or set(idx) & self.excluded:
            raise ValidationError("ranked and excluded classes must not overlap")
        for prev, cur in zip(self.ranked, self.ranked[1:]):
            if cur.r > prev.r:
                raise ValidationError("ranked entries must be sorted by r descending")
        if self.ranked and self.ranked[0].symbol is not Symbol.TOP:
            raise ValidationError("first ranked entry must carry TOP")

    @property
    def order(self) -> list[int]:
        return [e.index for e in self.ranked]


@dataclass(frozen=True)
class EvalParams:
    """Parameters of the alpha-evaluation score.

    ``alpha`` is the forgiveness exponent, ``beta_w`` weighs missed labels and
    ``gamma_w`` weighs false positives.
    """

    alpha: float = 0.5
    beta_w: float = 1.0
    gamma_w: float = 1.0
    alpha_cut: Optional[float] = None

    def __post_init__(self) -> None:
        _check_finite((self.alpha, self.beta_w, self.gamma_w), "eval params")
        if self.alpha < 0:
            raise ValidationError(f"alpha must be >= 0, got {self.alpha}")
        if self.beta_w <= 0 or self.gamma_w <= 0:
            raise ValidationError("beta and gamma weights must be > 0")
        if self.alpha_cut is not None and not 0 <= self.alpha_cut < 1:
            raise ValidationError(f"alpha_cut must lie in [0, 1), got {self.alpha_cut}")


@dataclass(frozen=True)
class EvalReport:
    accuracy: float
    mean_similarity: float
    error_mean: tuple[float, ...]
    error_std: tuple[float, ...]
    f_scores: tuple[float, ...]
    class_names: tuple[str, ...] = field(default=())
    n_samples: int = 0
    n_unclassified: int = 0

    def __post_init__(self) -> None:
        for name in ("error_mean", "error_std", "f_scores", "class_names"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        scalars = (self.accuracy, self.mean_similarity, *self.error_mean,
                   *self.error_std, *self.f_scores)
        _check_finite(scalars, "eval report")
        for name in ("accuracy", "mean_similarity"):
            v = getattr(self, name)
            if not 0 <= v <= 1:
                raise ValidationError(f"{name} must lie in [0, 1], got {v}")

    @property
    def error_std_average(self) -> float:
        return float(np.mean(self.error_std)) if self.error_std else 0.0

    @property
    def macro_f_score(self) -> float:
        return float(np.mean(self.f_scores)) if self.f_scores else 0.0
