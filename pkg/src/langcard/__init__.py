"""langcard: exact accuracy assessment of inferred finite-state models.

Given a reference DFA and an inferred DFA over the same alphabet, the
toolkit counts true-positive, false-positive and false-negative traces per
trace length exactly (through generating functions of the confusion
languages) and derives deterministic precision/recall values, alongside the
classic statistical and model-based assessment baselines.
"""

__version__ = "0.1.0"

from .automata import (
    Alphabet,
    Dfa,
    alphabet,
    build_dfa,
    confusion_automata,
    format_traces,
    parse_dfa,
    parse_traces,
    serialize_dfa,
)
from .baselines import (
    RandomWalkConfig,
    WMethodConfig,
    characterization_set,
    mbt_assessment,
    random_walk_trace,
    sigma_sampling_assessment,
    state_cover,
    trace_similarity,
    trace_similarity_conditioned,
    w_method_test_set,
)
from .counting import (
    WorkBudget,
    approx_star_height,
    coefficients,
    compute_ogf,
    count_dp,
    digraph_construction,
)
from .inference import (
    InferenceConfig,
    TrainingSet,
    build_pta,
    generate_training_set,
    k_tails,
)
from .metrics import (
    AssessmentResult,
    ConfusionCounts,
    assess,
    bounded_jaccard,
    confusion_counts,
    cumulative_assessment,
    single_length_assessment,
)
from .polynomials import Polynomial, RationalFunction, kleene_star
from .regexes import EPSILON, alt, one_of, seq, star, sym, to_dfa

__all__ = [
    "Alphabet",
    "AssessmentResult",
    "ConfusionCounts",
    "Dfa",
    "EPSILON",
    "InferenceConfig",
    "Polynomial",
    "RandomWalkConfig",
    "RationalFunction",
    "TrainingSet",
    "WMethodConfig",
    "WorkBudget",
    "alphabet",
    "alt",
    "approx_star_height",
    "assess",
    "bounded_jaccard",
    "build_dfa",
    "build_pta",
    "characterization_set",
    "coefficients",
    "compute_ogf",
    "confusion_automata",
    "confusion_counts",
    "count_dp",
    "cumulative_assessment",
    "digraph_construction",
    "format_traces",
    "generate_training_set",
    "k_tails",
    "kleene_star",
    "mbt_assessment",
    "one_of",
    "parse_dfa",
    "parse_traces",
    "random_walk_trace",
    "seq",
    "serialize_dfa",
    "sigma_sampling_assessment",
    "single_length_assessment",
    "star",
    "state_cover",
    "sym",
    "to_dfa",
    "trace_similarity",
    "trace_similarity_conditioned",
    "w_method_test_set",
]
