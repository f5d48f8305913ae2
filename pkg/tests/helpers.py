"""Shared test utilities: model generators and brute-force oracles.

The oracles here deliberately avoid the code paths they check: language
enumeration walks the transition table directly, equivalence goes through
product-automaton search, and counting sums over explicitly enumerated
traces.
"""

import random

from langcard import Alphabet, Dfa
from langcard.regexes import EPSILON, alt, one_of, seq, star, sym, to_dfa

SYMS = ("a", "b", "c", "d")


def random_dfa(rng, n_states, n_symbols, accept_p=0.4):
    rows = tuple(
        tuple(rng.randrange(n_states) for _ in range(n_symbols))
        for _ in range(n_states)
    )
    accepting = frozenset(q for q in range(n_states) if rng.random() < accept_p)
    return Dfa(Alphabet(SYMS[:n_symbols]), rows, 0, accepting)


def random_nonempty_dfa(rng, n_states, n_symbols, accept_p=0.4):
    while True:
        d = random_dfa(rng, n_states, n_symbols, accept_p)
        if d.initial not in d.error_states:
            return d


def random_trace(rng, n_symbols, max_len=12):
    return tuple(rng.randrange(n_symbols) for _ in range(rng.randrange(max_len + 1)))


def enumerate_counts(d, n_max):
    """Accepted traces per length by walking the full trace tree."""
    counts = [0] * (n_max + 1)
    rows = d.transitions
    accepting = d.accepting
    stack = [(d.initial, 0)]
    n_sym = len(d.alphabet)
    while stack:
        state, depth = stack.pop()
        if state in accepting:
            counts[depth] += 1
        if depth < n_max:
            row = rows[state]
            for s in range(n_sym):
                stack.append((row[s], depth + 1))
    return counts


def enumerate_language(d, n_max):
    """The set of accepted traces up to n_max, pruning dead branches."""
    out = set()
    errors = d.error_states

    def dfs(state, trace):
        if state in d.accepting:
            out.add(trace)
        if len(trace) == n_max:
            return
        for s in d.alphabet:
            t = d.transitions[state][s]
            if t not in errors:
                dfs(t, trace + (s,))

    if d.initial not in errors:
        dfs(d.initial, ())
    return out


SIGNATURE_ALPHABET = ("a", "b", "c", "d", "e", "f")


def signature_models():
    """Reconstruction of the sensitivity example: the reference accepts the
    empty trace plus a b {b..f}*, the inferred model adds a {c..f} {b..f}*
    (so one in five continuations after 'a' is correct)."""
    tail = star(one_of("b", "c", "d", "e", "f"))
    tp_lang = seq(sym("a"), sym("b"), tail)
    fp_lang = seq(sym("a"), one_of("c", "d", "e", "f"), tail)
    reference = to_dfa(alt(EPSILON, tp_lang), SIGNATURE_ALPHABET)
    inferred = to_dfa(alt(EPSILON, tp_lang, fp_lang), SIGNATURE_ALPHABET)
    return reference, inferred


def all_accepting(n_symbols):
    rows = (tuple(0 for _ in range(n_symbols)),)
    return Dfa(Alphabet(SYMS[:n_symbols]), rows, 0, frozenset([0]))


def empty_language(n_symbols):
    rows = (tuple(0 for _ in range(n_symbols)),)
    return Dfa(Alphabet(SYMS[:n_symbols]), rows, 0, frozenset())


def seeded(seed):
    return random.Random(seed)
