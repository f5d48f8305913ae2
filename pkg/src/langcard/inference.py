"""k-tails model inference from positive traces.

The prefix tree acceptor holds one state per distinct training prefix; the
k-tails step merges states whose sets of accepting suffixes of length at
most k coincide, which may introduce nondeterminism, so the quotient is
determinized and minimized before being returned.  Merging is confined to
tree states: the completion sink never joins a class.

With k larger than the longest training trace no proper generalization is
possible and the inferred language is exactly the training set.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .automata import Alphabet, Dfa, Trace, build_dfa
from .baselines import RandomWalkConfig, _walk, _WalkTables, derive_rng
from .errors import ResourceLimitError


@dataclass(frozen=True)
class TrainingSet:
    traces: tuple[Trace, ...]
    alphabet: Alphabet

    def __post_init__(self):
        n = len(self.alphabet)
        for t in self.traces:
            if any(not 0 <= s < n for s in t):
                raise ValueError("trace symbol outside the alphabet")

    @property
    def max_trace_length(self):
        return max((len(t) for t in self.traces), default=0)


@dataclass(frozen=True)
class InferenceConfig:
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")


class _Trie:
    """Prefix tree of the training traces; node 0 is the root."""

    def __init__(self, ts: TrainingSet):
        if not ts.traces:
            raise ValueError("training set must not be empty")
        self.children = [{}]  # node -> {symbol: node}
        self.accepting = set()
        for trace in ts.traces:
            node = 0
            for s in trace:
                nxt = self.children[node].get(s)
                if nxt is None:
                    nxt = len(self.children)
                    self.children.append({})
                    self.children[node][s] = nxt
                node = nxt
            self.accepting.add(node)

    def __len__(self):
        return len(self.children)

    def tails(self, k):
        """Per-node set of suffixes of length <= k that reach acceptance."""
        sets = [set() for _ in self.children]

        def visit(node):
            # suffixes of length <= k from node, collected over the subtree
            stack = [(node, ())]
            while stack:
                cur, path = stack.pop()
                if cur in self.accepting:
                    sets[node].add(path)
                if len(path) < k:
                    for s, nxt in self.children[cur].items():
                        stack.append((nxt, path + (s,)))

        for node in range(len(self.children)):
            visit(node)
        return [frozenset(s) for s in sets]


def build_pta(ts: TrainingSet) -> Dfa:
    """Prefix tree acceptor, completed with a sink; accepts exactly the
    training traces."""
    trie = _Trie(ts)
    edges = [
        (node, ts.alphabet.symbols[s], nxt)
        for node, kids in enumerate(trie.children)
        for s, nxt in kids.items()
    ]
    return build_dfa(ts.alphabet.symbols, len(trie), 0, trie.accepting, edges)


def k_tails(ts: TrainingSet, cfg: InferenceConfig) -> Dfa:
    """Infer a DFA by merging same-tail prefix-tree states."""
    trie = _Trie(ts)
    tails = trie.tails(cfg.k)
    classes = {}
    cls = []
    for node in range(len(trie)):
        cls.append(classes.setdefault(tails[node], len(classes)))
    # quotient NFA over classes
    n_classes = len(classes)
    moves = [{} for _ in range(n_classes)]
    for node, kids in enumerate(trie.children):
        for s, nxt in kids.items():
            moves[cls[node]].setdefault(s, set()).add(cls[nxt])
    accepting_classes = {cls[node] for node in trie.accepting}
    dfa = _determinize(moves, cls[0], accepting_classes, ts.alphabet)
    return dfa.minimize()


def _determinize(moves, start, accepting, alpha: Alphabet) -> Dfa:
    start_set = frozenset([start])
    ids = {start_set: 0}
    order = [start_set]
    rows = []
    i = 0
    while i < len(order):
        subset = order[i]
        i += 1
        row = []
        for s in alpha:
            targets = frozenset().union(*(moves[q].get(s, set()) for q in subset)) if subset else frozenset()
            if targets not in ids:
                ids[targets] = len(order)
                order.append(targets)
            row.append(ids[targets])
        rows.append(tuple(row))
    acc = frozenset(
        i for i, subset in enumerate(order) if subset & accepting
    )
    return Dfa(alpha, tuple(rows), 0, acc)


def generate_training_set(
    reference: Dfa,
    cfg: RandomWalkConfig,
    min_traces: int = 100,
    min_state_visits: int = 4,
) -> TrainingSet:
    """Random-walk training material with a coverage-based stopping rule:
    keep walking until at least ``min_traces`` traces exist and every
    visitable state was visited ``min_state_visits`` times."""
    tables = _WalkTables(reference, cfg.exclude_error_transitions)
    rng = derive_rng(cfg.seed, 2)
    visitable = set(reference.reachable_states()) - reference.error_states
    visits = {q: 0 for q in visitable}
    traces = []
    deadline = time.monotonic() + cfg.time_limit_s
    while True:
        trace, steps = _walk(tables, cfg, rng)
        traces.append(trace)
        visits[reference.initial] += 1
        for q, s in steps:
            visits[reference.transitions[q][s]] += 1
        if len(traces) >= min_traces and all(
            v >= min_state_visits for v in visits.values()
        ):
            break
        if time.monotonic() > deadline:
            raise ResourceLimitError(
                "state coverage not reached within the time limit"
            )
    return TrainingSet(tuple(traces), reference.alphabet)
