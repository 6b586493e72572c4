"""Text persistence for models and evaluation reports.

Model file layout::

    fqrc-model
    version = 1
    J = 2
    K = 4
    bins = 50
    feature.1 = natural
    class.1 = Insidecity
    count.1 = 120
    [tuples]
    # j k a b alpha beta lower upper
    1 1 0 1 0.5 0.5 -0.5 1.5

Numbers are written with 17 significant digits, so loading restores every
float exactly and a second save is byte-identical to the first.
"""

from __future__ import annotations

from pathlib import Path
from typing import Union

from fqrc.core import EvalReport, FourTuple, MembershipModel, ValidationError

MAGIC = "fqrc-model"
FORMAT_VERSION = 1

PathLike = Union[str, Path]


class ModelFormatError(ValidationError):
    pass


def fmt(v: float) -> str:
    return format(float(v), ".17g")


def _check_name(name: str) -> None:
    if "\n" in name or "\r" in name or name != name.strip():
        raise ModelFormatError(f"name {name!r} cannot be stored (whitespace/newline)")


def dumps_model(model: MembershipModel) -> str:
    lines = [MAGIC, f"version = {FORMAT_VERSION}",
             f"J = {model.n_features}", f"K = {model.n_classes}",
             f"bins = {model.bins if model.bins is not None else 'none'}"]
    for j, name in enumerate(model.feature_names, start=1):
        _check_name(name)
        lines.append(f"feature.{j} = {name}")
    for k, name in enumerate(model.class_names, start=1):
        _check_name(name)
        lines.append(f"class.{k} = {name}")
    if model.class_counts is not None:
        for k, c in enumerate(model.class_counts, start=1):
            lines.append(f"count.{k} = {c}")
    lines.append("[tuples]")
    lines.append("# j k a b alpha beta lower upper")
    for j, row in enumerate(model.tuples, start=1):
        for k, t in enumerate(row, start=1):
            nums = " ".join(fmt(v) for v in (t.a, t.b, t.alpha, t.beta, t.lower, t.upper))
            lines.append(f"{j} {k} {nums}")
    return "\n".join(lines) + "\n"


def loads_model(text: str) -> MembershipModel:
    lines = text.splitlines()
    if not lines or lines[0].strip() != MAGIC:
        raise ModelFormatError("not an fqrc model file")
    meta: dict[str, str] = {}
    i = 1
    while i < len(lines) and lines[i].strip() != "[tuples]":
        line = lines[i]
        i += 1
        if not line.strip() or line.startswith("#"):
            continue
        key, sep, value = line.partition(" = ")
        if not sep:
            raise ModelFormatError(f"line {i}: expected 'key = value'")
        meta[key.strip()] = value
    if "version" not in meta:
        raise ModelFormatError("missing version field")
    try:
        version = int(meta["version"])
    except ValueError:
        raise ModelFormatError(f"bad version {meta['version']!r}") from None
    if version > FORMAT_VERSION:
        raise ModelFormatError(
            f"model format version {version} is newer than supported ({FORMAT_VERSION})"
        )
    try:
        J, K = int(meta["J"]), int(meta["K"])
        features = [meta[f"feature.{j}"] for j in range(1, J + 1)]
        classes = [meta[f"class.{k}"] for k in range(1, K + 1)]
    except (KeyError, ValueError) as exc:
        raise ModelFormatError(f"missing or bad header field: {exc}") from None
    bins = None if meta.get("bins", "none") == "none" else int(meta["bins"])
    counts = None
    if "count.1" in meta:
        counts = [int(meta[f"count.{k}"]) for k in range(1, K + 1)]

    grid: list[list[FourTuple | None]] = [[None] * K for _ in range(J)]
    for n, line in enumerate(lines[i + 1:], start=i + 2):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 8:
            raise ModelFormatError(f"line {n}: expected 8 fields in tuple row")
        try:
            j, k = int(parts[0]), int(parts[1])
            a, b, alpha, beta, lower, upper = (float(p) for p in parts[2:])
        except ValueError:
            raise ModelFormatError(f"line {n}: malformed tuple row") from None
        if not (1 <= j <= J and 1 <= k <= K):
            raise ModelFormatError(f"line {n}: cell ({j}, {k}) outside {J}x{K} grid")
        if grid[j - 1][k - 1] is not None:
            raise ModelFormatError(f"line {n}: cell ({j}, {k}) given twice")
        grid[j - 1][k - 1] = FourTuple(a, b, alpha, beta, lower=lower, upper=upper)
    if any(t is None for row in grid for t in row):
        raise ModelFormatError("tuple grid is incomplete")
    return MembershipModel(grid, classes, features, bins=bins, class_counts=counts)


def save_model(model: MembershipModel, path: PathLike) -> None:
    Path(path).write_text(dumps_model(model), encoding="utf-8")


def load_model(path: PathLike) -> MembershipModel:
    return loads_model(Path(path).read_text(encoding="utf-8"))


def report_items(report: EvalReport) -> list[tuple[str, str]]:
    names = report.class_names or tuple(f"C{k + 1}" for k in range(len(report.f_scores)))
    items = [
        ("accuracy", fmt(report.accuracy)),
        ("similarity", fmt(report.mean_similarity)),
        ("error_std_average", fmt(report.error_std_average)),
        ("macro_f_score", fmt(report.macro_f_score)),
        ("n_samples", str(report.n_samples)),
        ("n_unclassified", str(report.n_unclassified)),
    ]
    for k, name in enumerate(names):
        items.append((f"error_mean.{name}", fmt(report.error_mean[k])))
        items.append((f"error_std.{name}", fmt(report.error_std[k])))
        items.append((f"f_score.{name}", fmt(report.f_scores[k])))
    return items


def dumps_report(report: EvalReport) -> str:
    return "".join(f"{k} = {v}\n" for k, v in report_items(report))


def loads_report(text: str) -> dict[str, float]:
    out: dict[str, float] = {}
    for n, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        key, sep, value = line.partition(" = ")
        if not sep:
            raise ValidationError(f"report line {n}: expected 'key = value'")
        out[key] = float(value)
    return out


def report_from_items(items: dict[str, float]) -> EvalReport:
    """Rebuild an :class:`EvalReport` from :func:`loads_report` output."""
    names = [k.split(".", 1)[1] for k in items if k.startswith("f_score.")]
    return EvalReport(
        accuracy=items["accuracy"],
        mean_similarity=items["similarity"],
        error_mean=[items[f"error_mean.{n}"] for n in names],
        error_std=[items[f"error_std.{n}"] for n in names],
        f_scores=[items[f"f_score.{n}"] for n in names],
        class_names=names,
        n_samples=int(items["n_samples"]),
        n_unclassified=int(items["n_unclassified"]),
    )
