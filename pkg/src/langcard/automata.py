"""Complete deterministic finite automata and the operations on them.

The model type is always a *complete* DFA: the transition table is total by
construction, with a sink state inserted during parsing or regex compilation
whenever transitions are omitted.  Totality is what makes complementation a
plain flip of the accepting set.

All types are immutable; every operation returns a fresh automaton.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .errors import AlphabetMismatchError, ModelParseError

Trace = tuple[int, ...]


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of distinct symbol names; symbol ids are list positions."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("duplicate symbol name")
        if any(not s for s in self.symbols):
            raise ValueError("empty symbol name")

    @cached_property
    def index(self):
        return {name: i for i, name in enumerate(self.symbols)}

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(range(len(self.symbols)))

    def trace_from_names(self, names) -> Trace:
        return tuple(self.index[n] for n in names)

    def names(self, trace) -> tuple[str, ...]:
        return tuple(self.symbols[s] for s in trace)


def alphabet(*names) -> Alphabet:
    return Alphabet(tuple(names))


@dataclass(frozen=True)
class Dfa:
    """Complete DFA: ``transitions[state][symbol]`` is always defined."""

    alphabet: Alphabet
    transitions: tuple[tuple[int, ...], ...]
    initial: int
    accepting: frozenset[int]

    def __post_init__(self):
        n = len(self.transitions)
        if n == 0:
            raise ValueError("automaton needs at least one state")
        if not 0 <= self.initial < n:
            raise ValueError("initial state out of range")
        for row in self.transitions:
            if len(row) != len(self.alphabet):
                raise ValueError("transition row does not cover the alphabet")
            for t in row:
                if not 0 <= t < n:
                    raise ValueError("transition target out of range")
        for q in self.accepting:
            if not 0 <= q < n:
                raise ValueError("accepting state out of range")

    @property
    def state_count(self):
        return len(self.transitions)

    def step(self, state, symbol):
        return self.transitions[state][symbol]

    def run(self, trace, start=None):
        state = self.initial if start is None else start
        for s in trace:
            state = self.transitions[state][s]
        return state

    def accepts(self, trace) -> bool:
        return self.run(trace) in self.accepting

    @cached_property
    def error_states(self) -> frozenset[int]:
        """States from which no accepting state is reachable."""
        reverse = [[] for _ in range(self.state_count)]
        for q, row in enumerate(self.transitions):
            for t in row:
                reverse[t].append(q)
        alive = set(self.accepting)
        todo = deque(alive)
        while todo:
            q = todo.popleft()
            for p in reverse[q]:
                if p not in alive:
                    alive.add(p)
                    todo.append(p)
        return frozenset(range(self.state_count)) - alive

    def is_error_state(self, q) -> bool:
        return q in self.error_states

    def reachable_states(self) -> list[int]:
        """States reachable from the initial one, in BFS discovery order."""
        seen = {self.initial}
        order = [self.initial]
        todo = deque(order)
        while todo:
            q = todo.popleft()
            for t in self.transitions[q]:
                if t not in seen:
                    seen.add(t)
                    order.append(t)
                    todo.append(t)
        return order

    def complement(self) -> "Dfa":
        acc = frozenset(range(self.state_count)) - self.accepting
        return Dfa(self.alphabet, self.transitions, self.initial, acc)

    def intersect(self, other) -> "Dfa":
        return _product(self, other, lambda a, b: a and b)

    def union(self, other) -> "Dfa":
        return _product(self, other, lambda a, b: a or b)

    def minimize(self) -> "Dfa":
        return _minimize(self)

    def equivalent_to(self, other) -> bool:
        """Language equality via BFS over the product automaton.

        Searches for a reachable pair on which the two automata disagree;
        independent of minimization, so it doubles as an oracle in tests.
        """
        _check_alphabets(self, other)
        start = (self.initial, other.initial)
        seen = {start}
        todo = deque([start])
        while todo:
            qa, qb = todo.popleft()
            if (qa in self.accepting) != (qb in other.accepting):
                return False
            for s in self.alphabet:
                nxt = (self.transitions[qa][s], other.transitions[qb][s])
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        return True

    def reindex_to(self, target: Alphabet) -> "Dfa":
        """Re-map symbol ids onto ``target``; the name sets must coincide."""
        if set(self.alphabet.symbols) != set(target.symbols):
            raise AlphabetMismatchError(
                f"symbol sets differ: {sorted(self.alphabet.symbols)} vs {sorted(target.symbols)}"
            )
        perm = [self.alphabet.index[name] for name in target.symbols]
        rows = tuple(tuple(row[p] for p in perm) for row in self.transitions)
        return Dfa(target, rows, self.initial, self.accepting)


def _check_alphabets(a, b):
    if a.alphabet.symbols != b.alphabet.symbols:
        raise AlphabetMismatchError(
            f"alphabets differ: {a.alphabet.symbols} vs {b.alphabet.symbols}"
        )


def _product(a, b, combine):
    _check_alphabets(a, b)
    start = (a.initial, b.initial)
    ids = {start: 0}
    order = [start]
    todo = deque([start])
    while todo:
        pair = todo.popleft()
        qa, qb = pair
        for s in a.alphabet:
            nxt = (a.transitions[qa][s], b.transitions[qb][s])
            if nxt not in ids:
                ids[nxt] = len(order)
                order.append(nxt)
                todo.append(nxt)
    rows = []
    for qa, qb in order:
        rows.append(
            tuple(ids[(a.transitions[qa][s], b.transitions[qb][s])] for s in a.alphabet)
        )
    acc = frozenset(
        i for i, (qa, qb) in enumerate(order)
        if combine(qa in a.accepting, qb in b.accepting)
    )
    return Dfa(a.alphabet, tuple(rows), 0, acc)


def _minimize(d):
    # Moore partition refinement on the reachable part, then canonical
    # renumbering by BFS from the initial state so that equal languages give
    # structurally equal automata.
    reachable = d.reachable_states()
    cls = {q: (1 if q in d.accepting else 0) for q in reachable}
    if len(set(cls.values())) == 1:
        cls = {q: 0 for q in reachable}
    while True:
        sig = {}
        for q in reachable:
            sig[q] = (cls[q], tuple(cls[d.transitions[q][s]] for s in d.alphabet))
        renumber = {}
        for q in reachable:
            renumber.setdefault(sig[q], len(renumber))
        new_cls = {q: renumber[sig[q]] for q in reachable}
        if len(set(new_cls.values())) == len(set(cls.values())):
            cls = new_cls
            break
        cls = new_cls
    # BFS over classes, visiting symbols in id order
    rep = {}
    for q in reachable:
        rep.setdefault(cls[q], q)
    start = cls[d.initial]
    ids = {start: 0}
    order = [start]
    todo = deque([start])
    while todo:
        c = todo.popleft()
        q = rep[c]
        for s in d.alphabet:
            t = cls[d.transitions[q][s]]
            if t not in ids:
                ids[t] = len(order)
                order.append(t)
                todo.append(t)
    rows = []
    accepting = set()
    for c in order:
        q = rep[c]
        rows.append(tuple(ids[cls[d.transitions[q][s]]] for s in d.alphabet))
        if q in d.accepting:
            accepting.add(ids[c])
    return Dfa(d.alphabet, tuple(rows), 0, frozenset(accepting))


def confusion_automata(reference, inferred):
    """Minimized acceptors for true-positive, false-positive and
    false-negative traces of ``inferred`` against ``reference``."""
    _check_alphabets(reference, inferred)
    tp = reference.intersect(inferred).minimize()
    fp = reference.complement().intersect(inferred).minimize()
    fn = reference.intersect(inferred.complement()).minimize()
    return tp, fp, fn


def build_dfa(symbols, n_states, initial, accepting, edges) -> Dfa:
    """Assemble a complete DFA from sparse ``(src, symbol_name, dst)`` edges.

    Missing (state, symbol) pairs are routed to a fresh sink state with
    self-loops, mirroring the text format's implicit-sink rule.
    """
    alpha = Alphabet(tuple(symbols))
    table = [[None] * len(alpha) for _ in range(n_states)]
    for src, name, dst in edges:
        table[src][alpha.index[name]] = dst
    missing = any(t is None for row in table for t in row)
    if missing:
        sink = n_states
        table.append([sink] * len(alpha))
        rows = tuple(
            tuple(sink if t is None else t for t in row) for row in table
        )
        n_states += 1
    else:
        rows = tuple(tuple(row) for row in table)
    return Dfa(alpha, rows, initial, frozenset(accepting))


# ---------------------------------------------------------------------------
# Text formats


def parse_dfa(text) -> Dfa:
    """Parse the line-oriented DFA format.

    Header lines ``alphabet:``, ``states:``, ``initial:`` and ``accepting:``
    come first (in any order), followed by one ``src symbol dst`` line per
    transition.  Omitted (state, symbol) pairs go to an implicit sink.
    ``#`` starts a comment.
    """
    header = {}
    edges = []
    seen_edges = set()
    alpha = None
    n_states = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if sep and " " not in key:
            key = key.strip()
            if key not in ("alphabet", "states", "initial", "accepting"):
                raise ModelParseError(f"unknown header {key!r}", lineno)
            if key in header:
                raise ModelParseError(f"duplicate {key!r} header", lineno)
            header[key] = (rest.split(), lineno)
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ModelParseError("expected 'src symbol dst'", lineno)
        if alpha is None:
            if "alphabet" not in header or "states" not in header:
                raise ModelParseError(
                    "transitions before alphabet/states headers", lineno
                )
            alpha, n_states = _parse_headers(header)
        src = _parse_state(parts[0], n_states, lineno)
        if parts[1] not in alpha.index:
            raise ModelParseError(f"unknown symbol {parts[1]!r}", lineno)
        dst = _parse_state(parts[2], n_states, lineno, dangling=True)
        if (src, parts[1]) in seen_edges:
            raise ModelParseError(
                f"duplicate transition for state {src} on {parts[1]!r}", lineno
            )
        seen_edges.add((src, parts[1]))
        edges.append((src, parts[1], dst))
    if alpha is None:
        if "alphabet" not in header or "states" not in header:
            raise ModelParseError("missing alphabet/states headers")
        alpha, n_states = _parse_headers(header)
    if "initial" not in header:
        raise ModelParseError("missing initial state")
    tokens, lineno = header["initial"]
    if len(tokens) != 1:
        raise ModelParseError("initial takes exactly one state", lineno)
    initial = _parse_state(tokens[0], n_states, lineno)
    accepting = set()
    if "accepting" in header:
        tokens, lineno = header["accepting"]
        for tok in tokens:
            accepting.add(_parse_state(tok, n_states, lineno))
    return build_dfa(alpha.symbols, n_states, initial, accepting, edges)


def _parse_headers(header):
    tokens, lineno = header["alphabet"]
    if not tokens:
        raise ModelParseError("empty alphabet", lineno)
    if len(set(tokens)) != len(tokens):
        raise ModelParseError("duplicate symbol in alphabet", lineno)
    alpha = Alphabet(tuple(tokens))
    tokens, lineno = header["states"]
    if len(tokens) != 1 or not tokens[0].isdigit():
        raise ModelParseError("states header takes one number", lineno)
    n_states = int(tokens[0])
    if n_states < 1:
        raise ModelParseError("need at least one state", lineno)
    return alpha, n_states


def _parse_state(token, n_states, lineno, dangling=False):
    try:
        q = int(token)
    except ValueError:
        raise ModelParseError(f"bad state id {token!r}", lineno) from None
    if not 0 <= q < n_states:
        kind = "dangling transition target" if dangling else "state id out of range"
        raise ModelParseError(f"{kind}: {q}", lineno)
    return q


def serialize_dfa(d) -> str:
    """Write a DFA back in the text format, with the full transition table."""
    lines = [
        "alphabet: " + " ".join(d.alphabet.symbols),
        f"states: {d.state_count}",
        f"initial: {d.initial}",
        "accepting: " + " ".join(str(q) for q in sorted(d.accepting)),
    ]
    for q, row in enumerate(d.transitions):
        for s, t in enumerate(row):
            lines.append(f"{q} {d.alphabet.symbols[s]} {t}")
    return "\n".join(lines) + "\n"


def parse_traces(text, alpha: Alphabet) -> list[Trace]:
    """Trace file: one trace per line of symbol names; an empty line is the
    empty trace; ``#`` starts a comment (a comment-only line is skipped, not
    read as an empty trace)."""
    traces = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.lstrip().startswith("#"):
            continue
        names = raw.split("#", 1)[0].split()
        try:
            traces.append(alpha.trace_from_names(names))
        except KeyError as exc:
            raise ModelParseError(f"unknown symbol {exc.args[0]!r}", lineno) from None
    return traces


def format_traces(traces, alpha: Alphabet) -> str:
    return "\n".join(" ".join(alpha.names(t)) for t in traces) + "\n"


def format_trace_multiset(counted, alpha: Alphabet) -> str:
    """Counted variant: each line is ``count symbol symbol ...``."""
    lines = []
    for trace, count in counted:
        names = " ".join(alpha.names(trace))
        lines.append(f"{count} {names}".rstrip())
    return "\n".join(lines) + "\n"
