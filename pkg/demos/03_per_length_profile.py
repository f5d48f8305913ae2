"""Accuracy is a function of trace length; one number hides that.

An inferred model can be decent on short traces and useless on long ones.
Here the inferred model agrees with the reference on the shortest traces
and collapses as length grows.  The per-length profile makes the cliff
visible, while the cumulative view shows how any single cut-off would have
blurred it.  The result lands in a CSV and an SVG rendered with the
bundled report helper.
"""

from pathlib import Path

from langcard.metrics import assess, assessment_csv, confusion_counts
from langcard.regexes import alt, one_of, seq, star, sym, to_dfa
from langcard.report import render_chart, series_from_csv

AB = ("a", "b")

# reference: any number of 'a'-or-'ba' blocks
reference = to_dfa(star(alt(sym("a"), seq(sym("b"), sym("a")))), AB)
# inferred: correct short behavior, but the long tail only keeps pure a-runs
# and invents b-suffixed noise
inferred = to_dfa(
    alt(
        seq(),
        sym("a"),
        seq(sym("a"), sym("a")),
        seq(one_of("a", "b"), sym("a"), sym("a"), star(sym("a"))),
        seq(sym("b"), sym("b"), star(one_of("a", "b"))),
    ),
    AB,
)

counts = confusion_counts(reference, inferred, 40)
result = assess(counts)

print("per-length vs cumulative precision:")
for row, cum in zip(result.per_length, result.cumulative):
    if row.n in (0, 1, 2, 3, 4, 5, 8, 16, 32, 40):
        p_eq = "undefined" if row.precision is None else f"{float(row.precision):.3f}"
        p_le = "undefined" if cum.precision is None else f"{float(cum.precision):.3f}"
        print(f"  n = {row.n:>2}: exact {p_eq:>9}   cumulative {p_le:>9}")

out_dir = Path(__file__).resolve().parent / "out"
out_dir.mkdir(exist_ok=True)
csv_path = out_dir / "per_length_profile.csv"
csv_path.write_text(assessment_csv(result))

series = [
    series_from_csv("precision per length", csv_path.read_text(), "precision_eq"),
    series_from_csv("recall per length", csv_path.read_text(), "recall_eq"),
]
(out_dir / "per_length_profile.svg").write_text(
    render_chart(series, title="accuracy by trace length")
)
print(f"\nwrote {csv_path} and the rendered chart next to it")
