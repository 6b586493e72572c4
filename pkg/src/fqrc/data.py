"""Tabular dataset ingestion and experiment protocols.

CSV layout: a header ``f:<feature>,...,label[,ref:<class>,...]`` with an
optional ``id`` column. ``ref:`` columns carry a reference distribution per
row (e.g. survey vote shares); they are normalized on load.
"""

from __future__ import annotations

import csv
import logging
import math
import warnings
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterator, Mapping, NamedTuple, Optional, Sequence, Union

import numpy as np

from fqrc.core import ClassDistribution, FeatureVector, LabeledSample, ValidationError

log = logging.getLogger(__name__)

PathLike = Union[str, Path]


class DataError(ValidationError):
    """Malformed or inconsistent input data."""


@dataclass(frozen=True)
class Dataset:
    samples: tuple[LabeledSample, ...]
    class_names: tuple[str, ...]
    feature_names: tuple[str, ...]
    references: Optional[tuple[ClassDistribution, ...]] = None
    ids: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "samples", tuple(self.samples))
        object.__setattr__(self, "class_names", tuple(self.class_names))
        object.__setattr__(self, "feature_names", tuple(self.feature_names))
        if self.references is not None:
            object.__setattr__(self, "references", tuple(self.references))
        if self.ids is not None:
            object.__setattr__(self, "ids", tuple(self.ids))
        J, K = len(self.feature_names), len(self.class_names)
        for i, s in enumerate(self.samples):
            if len(s.features) != J:
                raise DataError(f"sample {i} has {len(s.features)} features, expected {J}")
            if s.label >= K:
                raise DataError(f"sample {i} label {s.label} outside the {K} declared classes")
        if self.references is not None:
            if len(self.references) != len(self.samples):
                raise DataError("one reference distribution per sample is required")
            if any(len(r) != K for r in self.references):
                raise DataError(f"reference distributions must have {K} entries")
        if self.ids is not None and len(self.ids) != len(self.samples):
            raise DataError("one id per sample is required")

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def n_features(self) -> int:
        return len(self.feature_names)

    @property
    def n_classes(self) -> int:
        return len(self.class_names)

    @property
    def X(self) -> np.ndarray:
        return np.asarray([s.features.values for s in self.samples], dtype=np.float64).reshape(
            len(self.samples), self.n_features
        )

    @property
    def labels(self) -> list[int]:
        return [s.label for s in self.samples]

    def sample_id(self, i: int) -> str:
        return self.ids[i] if self.ids is not None else str(i + 1)

    def subset(self, indices: Sequence[int]) -> "Dataset":
        return Dataset(
            samples=[self.samples[i] for i in indices],
            class_names=self.class_names,
            feature_names=self.feature_names,
            references=None if self.references is None else [self.references[i] for i in indices],
            ids=None if self.ids is None else [self.ids[i] for i in indices],
        )

    def class_counts(self) -> list[int]:
        counts = [0] * self.n_classes
        for s in self.samples:
            counts[s.label] += 1
        return counts


def _parse_header(header: list[str], need_label: bool):
    feats, refs = [], []
    label_col = id_col = None
    for c, raw in enumerate(header):
        name = raw.strip()
        if name.startswith("f:") and len(name) > 2:
            feats.append((c, name[2:]))
        elif name.startswith("ref:") and len(name) > 4:
            refs.append((c, name[4:]))
        elif name == "label":
            label_col = c
        elif name == "id":
            id_col = c
        else:
            raise DataError(f"line 1: unrecognized column {raw!r}")
    if not feats:
        raise DataError("line 1: no feature columns (expected 'f:<name>')")
    if need_label and label_col is None:
        raise DataError("line 1: missing 'label' column")
    for what, cols in (("feature", feats), ("ref", refs)):
        names = [n for _, n in cols]
        if len(set(names)) != len(names):
            raise DataError(f"line 1: duplicate {what} column names")
    return feats, refs, label_col, id_col


def _parse_float(text: str, line: int, column: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise DataError(f"line {line}: non-numeric value {text!r} in column {column!r}") from None
    if not math.isfinite(v):
        raise DataError(f"line {line}: non-finite value {text!r} in column {column!r}")
    return v


def _read_rows(path: PathLike):
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        rows = [(reader.line_num, row) for row in reader]
    rows = [(n, r) for n, r in rows if r and any(cell.strip() for cell in r)]
    if not rows:
        raise DataError(f"{path}: empty file")
    return rows


def load_csv(
    path: PathLike,
    classes: Optional[Sequence[str]] = None,
) -> Dataset:
    """Parse a labeled CSV file.

    The class set is the sorted set of label values (plus any ``ref:``
    classes) unless ``classes`` fixes it explicitly.
    """
    rows = _read_rows(path)
    (_, header), body = rows[0], rows[1:]
    feats, refs, label_col, id_col = _parse_header(header, need_label=True)

    raw_labels, values, ref_values, ids = [], [], [], []
    for line, row in body:
        if len(row) != len(header):
            raise DataError(f"line {line}: expected {len(header)} fields, got {len(row)}")
        values.append([_parse_float(row[c], line, "f:" + n) for c, n in feats])
        label = row[label_col].strip()
        if not label:
            raise DataError(f"line {line}: empty label")
        raw_labels.append((line, label))
        if refs:
            rv = [_parse_float(row[c], line, "ref:" + n) for c, n in refs]
            if any(v < 0 for v in rv):
                raise DataError(f"line {line}: negative reference value")
            ref_values.append(rv)
        if id_col is not None:
            ids.append(row[id_col].strip())

    ref_classes = [n for _, n in refs]
    if classes is None:
        class_names = sorted({lab for _, lab in raw_labels} | set(ref_classes))
    else:
        class_names = list(classes)
        for n in ref_classes:
            if n not in class_names:
                raise DataError(f"line 1: ref column for unknown class {n!r}")
    index = {n: k for k, n in enumerate(class_names)}

    samples = []
    for (line, lab), vals in zip(raw_labels, values):
        if lab not in index:
            raise DataError(f"line {line}: unknown label {lab!r}")
        samples.append(LabeledSample(FeatureVector(vals), index[lab]))

    references = None
    if refs:
        references = []
        for rv in ref_values:
            full = [0.0] * len(class_names)
            for (_, n), v in zip(refs, rv):
                full[index[n]] = v
            references.append(ClassDistribution.normalized(full))

    ds = Dataset(
        samples=samples,
        class_names=class_names,
        feature_names=[n for _, n in feats],
        references=references,
        ids=ids if id_col is not None else None,
    )
    log.info("loaded %s: %d rows, %d features, %d classes", path, len(ds), ds.n_features,
             ds.n_classes)
    return ds


def load_features(path: PathLike) -> tuple[list[str], list[str], np.ndarray]:
    """Read an unlabeled feature table; returns (ids, feature names, X).

    ``label`` and ``ref:`` columns, if present, are ignored.
    """
    rows = _read_rows(path)
    (_, header), body = rows[0], rows[1:]
    feats, _, _, id_col = _parse_header(header, need_label=False)
    ids, X = [], []
    for i, (line, row) in enumerate(body):
        if len(row) != len(header):
            raise DataError(f"line {line}: expected {len(header)} fields, got {len(row)}")
        X.append([_parse_float(row[c], line, "f:" + n) for c, n in feats])
        ids.append(row[id_col].strip() if id_col is not None else str(i + 1))
    arr = np.asarray(X, dtype=np.float64).reshape(len(X), len(feats))
    return ids, [n for _, n in feats], arr


def _fmt(v: float) -> str:
    return format(v, ".17g")


def write_csv(ds: Dataset, path: PathLike) -> None:
    header = (["id"] if ds.ids is not None else []) + ["f:" + n for n in ds.feature_names]
    header.append("label")
    if ds.references is not None:
        header += ["ref:" + n for n in ds.class_names]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for i, s in enumerate(ds.samples):
            row = [ds.ids[i]] if ds.ids is not None else []
            row += [_fmt(v) for v in s.features.values]
            row.append(ds.class_names[s.label])
            if ds.references is not None:
                row += [_fmt(v) for v in ds.references[i].r]
            w.writerow(row)


class Fold(NamedTuple):
    train: Dataset
    test: LabeledSample
    index: int


class LeaveOneOut(Sequence):
    """N folds; fold ``i`` trains on every sample except ``i`` and tests on it."""

    def __init__(self, ds: Dataset):
        if len(ds) < 2:
            raise DataError(f"leave-one-out needs at least 2 samples, got {len(ds)}")
        self.ds = ds

    def __len__(self) -> int:
        return len(self.ds)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        n = len(self.ds)
        if i < 0:
            i += n
        if not 0 <= i < n:
            raise IndexError(i)
        keep = [j for j in range(n) if j != i]
        return Fold(self.ds.subset(keep), self.ds.samples[i], i)

    def __iter__(self) -> Iterator[Fold]:
        for i in range(len(self)):
            yield self[i]


def leave_one_out(ds: Dataset) -> LeaveOneOut:
    return LeaveOneOut(ds)


TRAIN, TEST = "train", "test"


def fixed_split(ds: Dataset, manifest: Mapping[int, str]) -> tuple[Dataset, Dataset]:
    """Split by a {row index (0-based): "train" | "test"} manifest.

    Rows the manifest does not mention are left out of both parts.
    """
    train_idx, test_idx = [], []
    for i, part in sorted(manifest.items()):
        if not 0 <= i < len(ds):
            raise DataError(f"manifest references missing row {i + 1}")
        if part == TRAIN:
            train_idx.append(i)
        elif part == TEST:
            test_idx.append(i)
        else:
            raise DataError(f"manifest row {i + 1}: unknown split {part!r}")
    skipped = len(ds) - len(train_idx) - len(test_idx)
    if skipped:
        log.info("manifest leaves %d rows unassigned", skipped)
    if not test_idx:
        warnings.warn("manifest assigns no rows to the test split", stacklevel=2)
    log.info("fixed split: %d train, %d test", len(train_idx), len(test_idx))
    return ds.subset(train_idx), ds.subset(test_idx)


def load_manifest(path: PathLike) -> dict[int, str]:
    """Read ``<row>,<train|test>`` lines (rows 1-based, ``#`` comments allowed)."""
    out: dict[int, str] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            parts = [p.strip() for p in text.split(",")]
            if parts == ["row", "split"]:
                continue
            if len(parts) != 2:
                raise DataError(f"manifest line {line_no}: expected '<row>,<split>'")
            try:
                row = int(parts[0])
            except ValueError:
                raise DataError(f"manifest line {line_no}: bad row number {parts[0]!r}") from None
            if row < 1:
                raise DataError(f"manifest line {line_no}: rows are numbered from 1")
            if row - 1 in out:
                raise DataError(f"manifest line {line_no}: row {row} assigned twice")
            if parts[1] not in (TRAIN, TEST):
                raise DataError(f"manifest line {line_no}: unknown split {parts[1]!r}")
            out[row - 1] = parts[1]
    return out


def make_separable(
    n_features: int = 2,
    n_classes: int = 3,
    n_extreme: int = 5,
    n_interior: int = 3,
    seed: int = 0,
    gap: float = 10.0,
) -> Dataset:
    """Synthetic classes on disjoint unit intervals ``[k * gap, k * gap + 1]``.

    Per class and feature, ``n_extreme`` values sit at each end of the
    interval and ``n_interior`` fall strictly inside, shuffled independently
    per feature. With ``n_extreme`` well above ``n_interior`` both end bins
    stay dominant after any single row is removed, so the learned plateau
    spans the whole interval and a held-out row always has membership 1 in
    its own class and 0 elsewhere.
    """
    rng = np.random.default_rng(seed)
    n = 2 * n_extreme + n_interior
    samples = []
    for k in range(n_classes):
        cols = []
        for _ in range(n_features):
            col = np.concatenate([
                np.zeros(n_extreme),
                np.ones(n_extreme),
                rng.uniform(0.1, 0.9, size=n_interior),
            ])
            cols.append(k * gap + rng.permutation(col))
        for i in range(n):
            samples.append(LabeledSample(FeatureVector([c[i] for c in cols]), k))
    return Dataset(
        samples=samples,
        class_names=[f"class{k + 1}" for k in range(n_classes)],
        feature_names=[f"x{j + 1}" for j in range(n_features)],
    )


def bundled_path(name: str = "synthetic3.csv") -> Path:
    return Path(str(resources.files("fqrc") / "data" / name))


def load_bundled(name: str = "synthetic3.csv") -> Dataset:
    return load_csv(bundled_path(name))
