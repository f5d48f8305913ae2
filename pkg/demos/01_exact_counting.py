"""Counting the traces of a model exactly, at any length.

A small vending-machine protocol: insert a coin, then any number of
(select, dispense) cycles, with a refund allowed instead of a selection.
The script derives the generating function of the model's language, reads
off exact per-length counts, and cross-checks them against the independent
dynamic-programming counter.
"""

from langcard import build_dfa
from langcard.counting import coefficients, compute_ogf, count_dp

machine = build_dfa(
    ["coin", "select", "dispense", "refund"],
    3,
    initial=0,
    accepting=[0],
    edges=[
        (0, "coin", 1),
        (1, "select", 2),
        (1, "refund", 0),
        (2, "dispense", 0),
    ],
)

ogf = compute_ogf(machine)
print("generating function:", ogf)

counts = coefficients(ogf, 30)
print("\ntraces per length:")
for n in (0, 2, 3, 5, 10, 20, 30):
    print(f"  length {n:>2}: {counts[n]}")

assert counts == count_dp(machine, 30), "independent counter disagrees"
print("\ndynamic-programming cross-check: OK")

total = sum(counts)
print(f"accepted traces up to length 30: {total}")
print("(enumerating those one by one would already be hopeless at length 30:")
print(f" the full trace space holds {sum(4**n for n in range(31))} candidates)")
