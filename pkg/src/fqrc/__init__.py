"""Fuzzy qualitative rank classifier.

Learns a trapezoidal membership function per (feature, class) from labeled
tabular data, turns unseen samples into a normalized confidence
distribution over classes, and decodes that distribution into a symbolic
ranking such as ``Insidecity > Forest > Coast, definitely not: Opencountry``.
"""

from fqrc._kernels import BACKEND
from fqrc.core import (
    ClassDistribution,
    EvalParams,
    EvalReport,
    FeatureVector,
    FourTuple,
    HistogramSummary,
    LabeledSample,
    MembershipModel,
    RankEntry,
    RankInterpretation,
    Symbol,
    ValidationError,
)
from fqrc.infer import alpha_cut, classify_binary, infer, infer_batch, membership
from fqrc.learn import build_histogram, extract_four_tuple, train
from fqrc.rank import Thresholds, describe, interpret

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ClassDistribution",
    "EvalParams",
    "EvalReport",
    "FeatureVector",
    "FourTuple",
    "HistogramSummary",
    "LabeledSample",
    "MembershipModel",
    "RankEntry",
    "RankInterpretation",
    "Symbol",
    "Thresholds",
    "ValidationError",
    "alpha_cut",
    "build_histogram",
    "classify_binary",
    "describe",
    "extract_four_tuple",
    "infer",
    "infer_batch",
    "interpret",
    "membership",
    "train",
]
