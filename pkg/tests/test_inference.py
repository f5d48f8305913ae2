import pytest

from langcard import Alphabet
from langcard.baselines import RandomWalkConfig
from langcard.inference import (
    InferenceConfig,
    TrainingSet,
    build_pta,
    generate_training_set,
    k_tails,
)
from langcard.metrics import confusion_counts, single_length_assessment
from langcard.regexes import alt, seq, star, sym, to_dfa

from helpers import enumerate_language, random_nonempty_dfa, seeded

AB = Alphabet(("a", "b"))


def training(*name_traces):
    return TrainingSet(
        tuple(AB.trace_from_names(names) for names in name_traces), AB
    )


def walk_cfg(**kw):
    base = dict(termination_probability=0.25, seed=11, time_limit_s=60.0)
    base.update(kw)
    return RandomWalkConfig(**base)


def test_pta_of_two_chained_traces():
    ts = training(["a"], ["a", "b"])
    pta = build_pta(ts)
    # prefixes: eps, a, ab -> three tree states plus the completion sink
    assert pta.state_count == 4
    assert enumerate_language(pta, 4) == set(ts.traces)


def test_pta_accepts_exactly_the_training_set():
    rng = seeded(60)
    for _ in range(20):
        traces = tuple(
            tuple(rng.randrange(2) for _ in range(rng.randrange(5)))
            for _ in range(rng.randrange(1, 8))
        )
        ts = TrainingSet(traces, AB)
        pta = build_pta(ts)
        max_len = max((len(t) for t in traces), default=0)
        assert enumerate_language(pta, max_len + 1) == set(traces)


def test_pta_state_count_is_number_of_prefixes_plus_sink():
    ts = training(["a", "b"], ["b", "b"])
    # prefixes: eps, a, ab, b, bb
    assert build_pta(ts).state_count == 5 + 1


def test_pta_needs_a_nonempty_training_set():
    with pytest.raises(ValueError):
        build_pta(TrainingSet((), AB))


def test_k_tails_with_large_k_returns_exactly_the_training_set():
    rng = seeded(61)
    for _ in range(15):
        traces = tuple(
            tuple(rng.randrange(2) for _ in range(rng.randrange(6)))
            for _ in range(rng.randrange(1, 10))
        )
        ts = TrainingSet(traces, AB)
        max_len = max((len(t) for t in traces), default=0)
        inferred = k_tails(ts, InferenceConfig(k=max_len + 1))
        assert enumerate_language(inferred, max_len + 1) == set(traces)


def test_k_tails_never_drops_training_traces():
    rng = seeded(62)
    for _ in range(15):
        traces = tuple(
            tuple(rng.randrange(2) for _ in range(rng.randrange(6)))
            for _ in range(rng.randrange(1, 10))
        )
        ts = TrainingSet(traces, AB)
        for k in (1, 2, 4):
            inferred = k_tails(ts, InferenceConfig(k=k))
            assert all(inferred.accepts(t) for t in traces)


def test_k_tails_output_is_minimal_and_complete():
    ts = training(["a", "b"], ["a", "b", "a", "b"], ["b"])
    inferred = k_tails(ts, InferenceConfig(k=2))
    assert inferred.minimize().state_count == inferred.state_count
    assert all(len(row) == 2 for row in inferred.transitions)


def test_k_tails_merges_shared_tails():
    # both branches end in the same single tail, so k=1 collapses them
    ts = training(["a", "b"], ["b", "b"])
    inferred = k_tails(ts, InferenceConfig(k=1))
    pta = build_pta(ts)
    assert inferred.state_count < pta.state_count


def test_k_tails_size_grows_with_k_on_protocol_sets():
    reference = to_dfa(
        star(alt(seq(sym("a"), sym("b")), sym("b"))), ("a", "b")
    )
    sizes = {2: [], 8: []}
    for seed in range(5):
        ts = generate_training_set(
            reference, walk_cfg(seed=seed), min_traces=30, min_state_visits=2
        )
        for k in sizes:
            sizes[k].append(k_tails(ts, InferenceConfig(k=k)).state_count)
    mean2 = sum(sizes[2]) / len(sizes[2])
    mean8 = sum(sizes[8]) / len(sizes[8])
    assert mean2 <= mean8


def test_inference_config_validation():
    with pytest.raises(ValueError):
        InferenceConfig(k=0)


def test_generate_training_set_follows_the_stopping_rule():
    reference = to_dfa(
        star(alt(seq(sym("a"), sym("b")), sym("b"))), ("a", "b")
    )
    ts = generate_training_set(reference, walk_cfg())
    assert len(ts.traces) >= 100
    assert all(reference.accepts(t) for t in ts.traces)
    # replay the traces and count state visits
    visits = {q: 0 for q in range(reference.state_count)}
    for t in ts.traces:
        state = reference.initial
        visits[state] += 1
        for s in t:
            state = reference.transitions[state][s]
            visits[state] += 1
    live = set(reference.reachable_states()) - reference.error_states
    assert all(visits[q] >= 4 for q in live)


def test_full_inference_round_trip_has_no_false_positives():
    rng = seeded(63)
    reference = random_nonempty_dfa(rng, 4, 2, accept_p=0.5)
    ts = generate_training_set(
        reference, walk_cfg(seed=5), min_traces=40, min_state_visits=2
    )
    inferred = k_tails(ts, InferenceConfig(k=ts.max_trace_length + 1))
    n_max = ts.max_trace_length + 2
    result = single_length_assessment(confusion_counts(reference, inferred, n_max))
    for row in result.per_length:
        assert row.precision in (None, 1)
