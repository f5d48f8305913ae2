from fractions import Fraction

from langcard import confusion_automata
from langcard.counting import count_dp
from langcard.metrics import (
    AssessmentRow,
    ConfusionCounts,
    assess,
    assessment_csv,
    bounded_jaccard,
    confusion_counts,
    counts_csv,
    cumulative_assessment,
    format_value,
    single_length_assessment,
)
from langcard.regexes import EPSILON, seq, sym, to_dfa

from helpers import (
    all_accepting,
    random_dfa,
    seeded,
    signature_models,
)


def brute_confusion(r, h, n_max):
    """Classify the whole trace space up to n_max by membership."""
    tp = [0] * (n_max + 1)
    fp = [0] * (n_max + 1)
    fn = [0] * (n_max + 1)

    def visit(qr, qh, depth):
        in_r, in_h = qr in r.accepting, qh in h.accepting
        if in_r and in_h:
            tp[depth] += 1
        elif in_h:
            fp[depth] += 1
        elif in_r:
            fn[depth] += 1
        if depth < n_max:
            for s in r.alphabet:
                visit(r.transitions[qr][s], h.transitions[qh][s], depth + 1)

    visit(r.initial, h.initial, 0)
    return tp, fp, fn


def test_confusion_counts_identical_all_accepting():
    top = all_accepting(2)
    c = confusion_counts(top, top, 3)
    assert list(c.tp) == [1, 2, 4, 8]
    assert list(c.fp) == [0, 0, 0, 0]
    assert list(c.fn) == [0, 0, 0, 0]


def test_confusion_counts_signature_example():
    reference, inferred = signature_models()
    c = confusion_counts(reference, inferred, 20)
    for length in range(2, 21):
        assert c.tp[length] == 5 ** (length - 2)
        assert c.fp[length] == 4 * 5 ** (length - 2)


def test_confusion_counts_match_enumeration():
    rng = seeded(31)
    for _ in range(20):
        n_sym = rng.randrange(1, 4)
        r = random_dfa(rng, rng.randrange(1, 6), n_sym)
        h = random_dfa(rng, rng.randrange(1, 6), n_sym)
        c = confusion_counts(r, h, 8)
        tp, fp, fn = brute_confusion(r, h, 8)
        assert list(c.tp) == tp
        assert list(c.fp) == fp
        assert list(c.fn) == fn


def test_confusion_counts_partition_against_models():
    rng = seeded(32)
    for _ in range(20):
        n_sym = rng.randrange(1, 4)
        r = random_dfa(rng, rng.randrange(1, 7), n_sym)
        h = random_dfa(rng, rng.randrange(1, 7), n_sym)
        c = confusion_counts(r, h, 15)
        h_counts = count_dp(h, 15)
        r_counts = count_dp(r, 15)
        for n in range(16):
            assert c.tp[n] + c.fp[n] == h_counts[n]
            assert c.tp[n] + c.fn[n] == r_counts[n]


def test_single_length_signature_precision():
    reference, inferred = signature_models()
    result = single_length_assessment(confusion_counts(reference, inferred, 40))
    for row in result.per_length:
        if row.n >= 2:
            assert row.precision == Fraction(1, 5)
            assert row.recall == 1


def test_single_length_zero_over_zero_is_undefined():
    c = ConfusionCounts(tp=(0,), fp=(0,), fn=(0,), alphabet_size=2)
    row = single_length_assessment(c).per_length[0]
    assert row.precision is None
    assert row.recall is None


def test_cumulative_signature_restricted_content():
    reference, inferred = signature_models()
    c = confusion_counts(reference, inferred, 30)
    for n in range(2, 31):
        c_tp = sum(c.tp[2 : n + 1])
        c_fp = sum(c.fp[2 : n + 1])
        assert Fraction(c_tp, c_tp + c_fp) == Fraction(1, 5)


def test_cumulative_at_zero_for_identical_epsilon_models():
    eps = to_dfa(EPSILON, ("a", "b"))
    result = cumulative_assessment(confusion_counts(eps, eps, 0))
    assert result.cumulative[0] == AssessmentRow(0, Fraction(1), Fraction(1))


def test_cumulative_running_sums():
    rng = seeded(33)
    r = random_dfa(rng, 5, 2)
    h = random_dfa(rng, 5, 2)
    c = confusion_counts(r, h, 12)
    result = cumulative_assessment(c)
    running = 0
    for n, row in enumerate(result.cumulative):
        running += c.tp[n]
        denom = running + sum(c.fp[: n + 1])
        expected = Fraction(running, denom) if denom else None
        assert row.precision == expected
    assert result.c_tp == sum(c.tp)


def test_results_are_model_independent():
    rng = seeded(34)
    for _ in range(10):
        r = random_dfa(rng, 5, 2)
        h = random_dfa(rng, 5, 2)
        # a language-equal but structurally different inferred model
        h_variant = h.intersect(all_accepting(2))
        assert assess(confusion_counts(r, h, 12)) == assess(
            confusion_counts(r, h_variant, 12)
        )


def test_defined_values_live_in_unit_interval():
    rng = seeded(35)
    for _ in range(15):
        r = random_dfa(rng, 4, 2)
        h = random_dfa(rng, 4, 2)
        result = assess(confusion_counts(r, h, 10))
        for row in result.per_length + result.cumulative:
            for value in (row.precision, row.recall):
                assert value is None or 0 <= value <= 1


def test_cumulative_precision_is_weighted_mean_of_single_lengths():
    rng = seeded(36)
    for _ in range(10):
        r = random_dfa(rng, 5, 2)
        h = random_dfa(rng, 5, 2)
        c = confusion_counts(r, h, 10)
        per = single_length_assessment(c).per_length
        cum = cumulative_assessment(c).cumulative
        for n in range(11):
            weights = [(c.tp[i] + c.fp[i]) for i in range(n + 1)]
            if sum(weights) == 0:
                assert cum[n].precision is None
                continue
            mean = sum(
                w * per[i].precision for i, w in enumerate(weights) if w
            ) / sum(weights)
            assert cum[n].precision == mean


def test_empty_false_positive_language_forces_precision_one():
    rng = seeded(37)
    for _ in range(10):
        r = random_dfa(rng, 5, 2)
        h = r.intersect(random_dfa(rng, 4, 2))  # subset of the reference
        _, fp, _ = confusion_automata(r, h)
        assert all(q not in fp.accepting for q in range(fp.state_count))
        result = assess(confusion_counts(r, h, 12))
        for row in result.per_length + result.cumulative:
            assert row.precision in (None, 1)


def test_bounded_jaccard_identical_models():
    r, _ = signature_models()
    assert bounded_jaccard(r, r, 10) == 0


def test_bounded_jaccard_disjoint_languages():
    a = to_dfa(sym("a"), ("a", "b"))
    b = to_dfa(sym("b"), ("a", "b"))
    assert bounded_jaccard(a, b, 5) == 1


def test_bounded_jaccard_undefined_for_empty_union():
    a = to_dfa(seq(sym("a"), sym("a"), sym("a")), ("a", "b"))
    assert bounded_jaccard(a, a, 1) is None


def test_bounded_jaccard_symmetry():
    rng = seeded(38)
    for _ in range(15):
        r = random_dfa(rng, 5, 2)
        h = random_dfa(rng, 5, 2)
        assert bounded_jaccard(r, h, 9) == bounded_jaccard(h, r, 9)


def test_format_value():
    assert format_value(Fraction(1, 5)) == "0.200000"
    assert format_value(None) == "undefined"
    assert format_value(Fraction(2, 3), 3) == "0.667"
    assert format_value(Fraction(1), 2) == "1.00"


def test_assessment_csv_layout():
    reference, inferred = signature_models()
    result = assess(confusion_counts(reference, inferred, 4))
    text = assessment_csv(result)
    lines = text.strip().splitlines()
    assert lines[0] == "n,precision_eq,recall_eq,precision_le,recall_le"
    assert lines[2] == "1,undefined,undefined,1.000000,1.000000"
    assert lines[4].startswith("3,0.200000,1.000000,")


def test_counts_csv():
    assert counts_csv([1, 2, 4]) == "length,count\n0,1\n1,2\n2,4\n"
