"""Exact trace counting for regular languages.

The central object is the ordinary generating function of a language's
cardinality sequence: the formal power series whose n-th coefficient is the
number of accepted traces of length n.  For a DFA the series is a rational
function, obtained here by node elimination on a digraph whose edges carry
rational functions: eliminating a node n rewires every predecessor/successor
pair (p, s) with

    E(p, s) += E(p, n) * E(n, s) * 1/(1 - E(n, n))

until only the distinguished entry and exit nodes remain.  Elimination order
does not affect the result (the canonical form is identical), only the cost;
the default order takes the node with the lowest self-loop degree first,
breaking ties by predecessor*successor pair count and then node id.

Coefficients come out of the rational function through the linear recurrence

    a_n = (b_n - sum_{j=1..n} c_j a_{n-j}) / c_0

with b and c the numerator and denominator coefficients.  An independent
dynamic-programming counter over the transition table serves as the
cross-check oracle throughout the test suite.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass

from .errors import (
    NonIntegerCoefficientError,
    ResourceLimitError,
    ZeroConstantDenominatorError,
)
from .polynomials import (
    RF_ONE,
    RF_ZERO,
    Polynomial,
    RationalFunction,
    kleene_star,
)

INITIAL = -1
FINAL = -2

CardinalitySequence = list[int]


@dataclass
class WorkBudget:
    """Degree / wall-clock ceiling for one generating-function computation."""

    max_degree: int = 50_000
    time_limit_s: float = 600.0


DEFAULT_BUDGET = WorkBudget()


class LabeledDigraph:
    """Digraph with rational-function edge labels; absent edge means zero.

    ``INITIAL`` has no incoming edges and ``FINAL`` no outgoing ones; interior
    nodes are the DFA states, eliminated one by one.
    """

    def __init__(self):
        self.nodes = set()
        self.labels = {}  # (src, dst) -> RationalFunction, never zero
        self.succ = {}  # node -> set of successors
        self.pred = {}  # node -> set of predecessors
        self.peak_degree = 0  # largest degree ever written to an edge

    def add_node(self, n):
        if n not in self.nodes:
            self.nodes.add(n)
            self.succ[n] = set()
            self.pred[n] = set()

    def label(self, u, v):
        return self.labels.get((u, v), RF_ZERO)

    def set_label(self, u, v, f):
        if f.is_zero:
            self.labels.pop((u, v), None)
            self.succ[u].discard(v)
            self.pred[v].discard(u)
        else:
            self.labels[(u, v)] = f
            self.succ[u].add(v)
            self.pred[v].add(u)
            if f.degree > self.peak_degree:
                self.peak_degree = f.degree

    def add_to_label(self, u, v, f):
        self.set_label(u, v, self.label(u, v) + f)

    def interior_nodes(self):
        return [n for n in self.nodes if n not in (INITIAL, FINAL)]

    def self_loop_degree(self, n):
        return self.label(n, n).degree

    def elimination_cost(self, n):
        """Heuristic key: self-loop degree, then pred*succ pairs, then id."""
        preds = len(self.pred[n] - {n})
        succs = len(self.succ[n] - {n})
        return (self.self_loop_degree(n), preds * succs, n)

    def eliminate(self, n):
        """Remove node n, rerouting its traffic through updated edges.

        Returns the nodes whose edge sets changed (the old neighbors of n).
        """
        if n in (INITIAL, FINAL):
            raise ValueError("cannot eliminate the entry or exit node")
        loop = kleene_star(self.label(n, n))
        trivial_loop = loop == RF_ONE
        self.set_label(n, n, RF_ZERO)
        preds = list(self.pred[n])
        succs = list(self.succ[n])
        for p in preds:
            into = self.label(p, n)
            if not trivial_loop:
                into = into * loop
            for s in succs:
                self.add_to_label(p, s, into * self.label(n, s))
            self.set_label(p, n, RF_ZERO)
        for s in succs:
            self.set_label(n, s, RF_ZERO)
        self.nodes.discard(n)
        del self.succ[n]
        del self.pred[n]
        return set(preds) | set(succs)


def digraph_construction(d) -> tuple[LabeledDigraph, int, int]:
    """Build the counting digraph of a DFA.

    A transition bundle of n symbols between two states is one edge labeled
    n*z; the entry edge and the edges from accepting states to the exit carry
    the constant 1.
    """
    g = LabeledDigraph()
    g.add_node(INITIAL)
    g.add_node(FINAL)
    for q in range(d.state_count):
        g.add_node(q)
    z = Polynomial((0, 1))
    for q, row in enumerate(d.transitions):
        bundle = {}
        for t in row:
            bundle[t] = bundle.get(t, 0) + 1
        for t, n in bundle.items():
            g.set_label(q, t, RationalFunction(z.scale(n)))
    g.set_label(INITIAL, d.initial, RF_ONE)
    for q in d.accepting:
        g.set_label(q, FINAL, RF_ONE)
    return g, INITIAL, FINAL


def compute_ogf(d, budget: WorkBudget | None = None, order=None) -> RationalFunction:
    """Generating function of the cardinality sequence of L(d).

    ``order`` overrides the elimination order (a sequence of state ids);
    any order yields the same canonical result.
    """
    budget = budget or DEFAULT_BUDGET
    g, _, _ = digraph_construction(d)
    deadline = time.monotonic() + budget.time_limit_s

    def check_budget():
        if time.monotonic() > deadline:
            raise ResourceLimitError(
                f"generating-function computation exceeded {budget.time_limit_s:.0f} s"
            )
        if g.peak_degree > budget.max_degree:
            raise ResourceLimitError(
                f"intermediate degree {g.peak_degree} exceeded budget {budget.max_degree}"
            )

    if order is not None:
        for n in order:
            g.eliminate(n)
            check_budget()
        remaining = g.interior_nodes()
        assert not remaining, "elimination order must cover every state"
        return g.label(INITIAL, FINAL)

    # lazy heap over the heuristic key; stale entries are re-queued, so the
    # node popped is always the one the plain minimum scan would pick
    live = set(g.interior_nodes())
    heap = [(g.elimination_cost(n), n) for n in live]
    heapq.heapify(heap)
    while live:
        key, n = heapq.heappop(heap)
        if n not in live:
            continue
        current = g.elimination_cost(n)
        if current != key:
            heapq.heappush(heap, (current, n))
            continue
        touched = g.eliminate(n)
        live.discard(n)
        for neighbor in touched:
            if neighbor in live:
                heapq.heappush(heap, (g.elimination_cost(neighbor), neighbor))
        check_budget()
    return g.label(INITIAL, FINAL)


def coefficients(f: RationalFunction, n_max: int) -> CardinalitySequence:
    """First n_max+1 series coefficients of f via the linear recurrence."""
    c = f.den.coeffs
    if not c or c[0] == 0:
        raise ZeroConstantDenominatorError(
            "series extraction needs a nonzero constant term in the denominator"
        )
    b = f.num.coeffs
    c0 = c[0]
    out = []
    for n in range(n_max + 1):
        s = b[n] if n < len(b) else 0
        for j in range(1, min(n, len(c) - 1) + 1):
            s -= c[j] * out[n - j]
        q, r = divmod(s, c0)
        if r:
            raise NonIntegerCoefficientError(
                f"coefficient {n} is not an integer; not a language series?"
            )
        out.append(q)
    return out


def count_dp(d, n_max: int) -> CardinalitySequence:
    """Accepted-trace counts per length by iterating a path-count vector.

    Independent of the generating-function machinery; used as the
    cross-check oracle.
    """
    incoming = [[] for _ in range(d.state_count)]
    for q, row in enumerate(d.transitions):
        bundle = {}
        for t in row:
            bundle[t] = bundle.get(t, 0) + 1
        for t, mult in bundle.items():
            incoming[t].append((q, mult))
    v = [0] * d.state_count
    v[d.initial] = 1
    acc_states = list(d.accepting)
    out = [sum(v[q] for q in acc_states)]
    for _ in range(n_max):
        v = [
            sum(v[q] * mult for q, mult in inc) if inc else 0
            for inc in incoming
        ]
        out.append(sum(v[q] for q in acc_states))
    return out


def approx_star_height(d) -> int:
    """Upper estimate of the star height of L(d).

    Runs the same node elimination with edges labeled by the star-nesting
    depth of the regular expression they would carry; each self-loop
    elimination adds one star level.  Returns 0 for finite languages.
    """
    heights = {}  # (u, v) -> int nesting depth of the edge regex
    succ = {INITIAL: set(), FINAL: set()}
    pred = {INITIAL: set(), FINAL: set()}
    nodes = []
    for q in range(d.state_count):
        succ[q] = set()
        pred[q] = set()
        nodes.append(q)

    def connect(u, v, h):
        key = (u, v)
        if key in heights:
            heights[key] = max(heights[key], h)
        else:
            heights[key] = h
            succ[u].add(v)
            pred[v].add(u)

    for q, row in enumerate(d.transitions):
        for t in set(row):
            connect(q, t, 0)
    connect(INITIAL, d.initial, 0)
    for q in d.accepting:
        connect(q, FINAL, 0)

    remaining = set(nodes)
    while remaining:

        def cost(n):
            loop = heights.get((n, n), -1)
            return (loop, len(pred[n] - {n}) * len(succ[n] - {n}), n)

        n = min(remaining, key=cost)
        remaining.discard(n)
        loop = heights.pop((n, n), None)
        succ[n].discard(n)
        pred[n].discard(n)
        loop_h = loop + 1 if loop is not None else 0
        for p in pred[n]:
            h_in = heights.pop((p, n))
            succ[p].discard(n)
            for s in succ[n]:
                connect(p, s, max(h_in, loop_h, heights[(n, s)]))
        for s in list(succ[n]):
            heights.pop((n, s))
            pred[s].discard(n)
        pred.pop(n)
        succ.pop(n)
    return heights.get((INITIAL, FINAL), 0)
