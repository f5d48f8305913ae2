"""Accuracy measures computed from exact confusion-language counts.

Precision and recall are exact rationals.  A 0/0 quotient is reported as the
explicit undefined marker ``None`` rather than silently coerced to 0 or 1;
CSV output writes the literal ``undefined`` for it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .automata import confusion_automata
from .counting import coefficients, compute_ogf


@dataclass(frozen=True)
class ConfusionCounts:
    """Per-length counts of true-positive, false-positive and false-negative
    traces for one (reference, inferred) pair."""

    tp: tuple[int, ...]
    fp: tuple[int, ...]
    fn: tuple[int, ...]
    alphabet_size: int

    def __post_init__(self):
        if not len(self.tp) == len(self.fp) == len(self.fn):
            raise ValueError("count sequences must share a length")

    @property
    def max_length(self):
        return len(self.tp) - 1


@dataclass(frozen=True)
class AssessmentRow:
    n: int
    precision: Fraction | None
    recall: Fraction | None


@dataclass
class AssessmentResult:
    """Per-length and/or cumulative precision and recall rows."""

    per_length: list[AssessmentRow] | None = None
    cumulative: list[AssessmentRow] | None = None
    c_tp: int = 0
    c_fp: int = 0
    c_fn: int = 0


def confusion_counts(reference, inferred, n_max, budget=None) -> ConfusionCounts:
    """Exact tp/fp/fn sequences up to n_max via the confusion automata."""
    a_tp, a_fp, a_fn = confusion_automata(reference, inferred)
    return ConfusionCounts(
        tp=tuple(coefficients(compute_ogf(a_tp, budget), n_max)),
        fp=tuple(coefficients(compute_ogf(a_fp, budget), n_max)),
        fn=tuple(coefficients(compute_ogf(a_fn, budget), n_max)),
        alphabet_size=len(reference.alphabet),
    )


def _ratio(num, den_extra):
    total = num + den_extra
    if total == 0:
        return None
    return Fraction(num, total)


def single_length_assessment(counts: ConfusionCounts) -> AssessmentResult:
    """Precision/recall over the traces of exactly each length."""
    rows = [
        AssessmentRow(n, _ratio(counts.tp[n], counts.fp[n]), _ratio(counts.tp[n], counts.fn[n]))
        for n in range(counts.max_length + 1)
    ]
    return AssessmentResult(per_length=rows)


def cumulative_assessment(counts: ConfusionCounts) -> AssessmentResult:
    """Precision/recall over all traces of length up to each n."""
    rows = []
    c_tp = c_fp = c_fn = 0
    for n in range(counts.max_length + 1):
        c_tp += counts.tp[n]
        c_fp += counts.fp[n]
        c_fn += counts.fn[n]
        rows.append(AssessmentRow(n, _ratio(c_tp, c_fp), _ratio(c_tp, c_fn)))
    return AssessmentResult(cumulative=rows, c_tp=c_tp, c_fp=c_fp, c_fn=c_fn)


def assess(counts: ConfusionCounts) -> AssessmentResult:
    """Both assessment flavors over one set of counts."""
    cumulative = cumulative_assessment(counts)
    cumulative.per_length = single_length_assessment(counts).per_length
    return cumulative


def bounded_jaccard(reference, inferred, n_max, budget=None) -> Fraction | None:
    """Jaccard distance between the two languages restricted to traces of
    length at most n_max; undefined (None) when the union is empty."""
    inter = reference.intersect(inferred).minimize()
    union = reference.union(inferred).minimize()
    inter_total = sum(coefficients(compute_ogf(inter, budget), n_max))
    union_total = sum(coefficients(compute_ogf(union, budget), n_max))
    if union_total == 0:
        return None
    return 1 - Fraction(inter_total, union_total)


def format_value(value: Fraction | None, digits: int = 6) -> str:
    """Exact decimal rendering (round-half-even); ``undefined`` for None."""
    if value is None:
        return "undefined"
    scaled = round(value * 10**digits)
    sign = "-" if scaled < 0 else ""
    text = str(abs(scaled)).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}" if digits else f"{sign}{text}"


CSV_HEADER = "n,precision_eq,recall_eq,precision_le,recall_le"


def assessment_csv(result: AssessmentResult, digits: int = 6) -> str:
    """Render rows in the shared schema; missing parts become ``undefined``."""
    per = {row.n: row for row in result.per_length or []}
    cum = {row.n: row for row in result.cumulative or []}
    lines = [CSV_HEADER]
    for n in sorted(per.keys() | cum.keys()):
        p = per.get(n)
        c = cum.get(n)
        lines.append(
            ",".join(
                [
                    str(n),
                    format_value(p.precision if p else None, digits),
                    format_value(p.recall if p else None, digits),
                    format_value(c.precision if c else None, digits),
                    format_value(c.recall if c else None, digits),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def counts_csv(counts: list[int]) -> str:
    lines = ["length,count"]
    lines += [f"{n},{c}" for n, c in enumerate(counts)]
    return "\n".join(lines) + "\n"
