"""Symbolic ranking of class confidences.

Classes with zero confidence are marked "definitely not". The rest are
sorted by confidence and each one is compared with the class ranked just
above it: a zero difference reads as "equal to", a difference up to 0.5 as
"higher than" and anything larger as "much higher than".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from fqrc.core import ClassDistribution, RankEntry, RankInterpretation, Symbol, ValidationError

ASCII = {Symbol.EQUAL: "=", Symbol.HIGHER: ">", Symbol.MUCH_HIGHER: ">>"}
UNICODE = {Symbol.EQUAL: "≡", Symbol.HIGHER: ">", Symbol.MUCH_HIGHER: "≫"}

NO_CLASS_TEXT = "no class: sample outside all learned supports"


@dataclass(frozen=True)
class Thresholds:
    """Upper bounds of the r_diff intervals for each symbol."""

    equal: float = 0.0
    higher: float = 0.5
    much_higher: float = 1.0

    def __post_init__(self) -> None:
        if not 0 <= self.equal < self.higher <= self.much_higher:
            raise ValidationError(
                f"thresholds must satisfy 0 <= equal < higher <= much_higher, got {self}"
            )

    @classmethod
    def parse(cls, text: str) -> "Thresholds":
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise ValidationError(f"expected three comma-separated thresholds, got {text!r}")
        try:
            return cls(*(float(p) for p in parts))
        except ValueError as exc:
            raise ValidationError(f"bad threshold list {text!r}") from exc

    def symbol(self, r_diff: float) -> Symbol:
        if r_diff <= self.equal:
            return Symbol.EQUAL
        if r_diff <= self.higher:
            return Symbol.HIGHER
        return Symbol.MUCH_HIGHER


DEFAULT_THRESHOLDS = Thresholds()


def interpret(
    d: ClassDistribution,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
    diff_mode: str = "adjacent",
) -> RankInterpretation:
    """Rank the classes of ``d`` and attach comparison symbols.

    ``diff_mode="adjacent"`` (default) measures each class against the class
    ranked immediately above it. ``diff_mode="max"`` measures every class
    against the top confidence instead.
    """
    if diff_mode not in ("adjacent", "max"):
        raise ValidationError(f"diff_mode must be 'adjacent' or 'max', got {diff_mode!r}")
    excluded = frozenset(k for k, v in enumerate(d.r) if v == 0)
    live = sorted((k for k, v in enumerate(d.r) if v != 0), key=lambda k: (-d.r[k], k))
    ranked: list[RankEntry] = []
    for pos, k in enumerate(live):
        if pos == 0:
            ranked.append(RankEntry(k, d.r[k], Symbol.TOP))
            continue
        ref = d.r[live[pos - 1]] if diff_mode == "adjacent" else d.r[live[0]]
        r_diff = ref - d.r[k]
        ranked.append(RankEntry(k, d.r[k], thresholds.symbol(r_diff), r_diff))
    return RankInterpretation(tuple(ranked), excluded)


def _check_names(ri: RankInterpretation, class_names: Sequence[str]) -> None:
    n = len(ri.ranked) + len(ri.excluded)
    if len(class_names) < n or any(k >= len(class_names) for k in ri.order):
        raise ValidationError("class names do not cover every ranked class")


def describe(ri: RankInterpretation, class_names: Sequence[str]) -> str:
    """One-line text, e.g. ``Class1 > Class4 > Class2, definitely not: Class3``."""
    _check_names(ri, class_names)
    if not ri.ranked:
        return NO_CLASS_TEXT
    parts = [class_names[ri.ranked[0].index]]
    for e in ri.ranked[1:]:
        parts.append(ASCII[e.symbol])
        parts.append(class_names[e.index])
    text = " ".join(parts)
    if ri.excluded:
        text += ", definitely not: " + ",".join(class_names[k] for k in sorted(ri.excluded))
    return text


def symbol_string(
    ri: RankInterpretation, class_names: Sequence[str], unicode: bool = False
) -> str:
    """Compact form: ``C1>C4>C2|x:C3`` (or ``C1>C4>C2, ×C3`` with unicode)."""
    _check_names(ri, class_names)
    table = UNICODE if unicode else ASCII
    head = "".join(
        (table[e.symbol] if e.symbol is not Symbol.TOP else "") + class_names[e.index]
        for e in ri.ranked
    )
    if not ri.excluded:
        return head
    tail = ",".join(class_names[k] for k in sorted(ri.excluded))
    if unicode:
        return f"{head}, ×{tail}" if head else f"×{tail}"
    return f"{head}|x:{tail}"
