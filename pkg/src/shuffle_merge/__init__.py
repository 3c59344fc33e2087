"""Instrumented perfect-shuffle in-place stable merge and its experiments."""

from .errors import ContractViolation, VerificationError
from .merge_engine import (
    LEFT,
    RIGHT,
    Element,
    MergeState,
    MergeStats,
    RotationRecord,
    merge_packed,
    right_going_merge,
    scan,
    tag_halves,
    verify_sorted_stable,
)
from .oracle import ExactRatio, binomial_exact, lemma_ratio_exact, stable_merge_reference
from .order_stats import (
    ProbCell,
    SampleModel,
    lemma1_prob,
    lemma2_prob,
    min_cdf,
    order_stat_cdf,
    prob_cross,
    uniform_cdf,
)
from .shuffle import MoveSink, in_shuffle, rotate_right, un_shuffle

__version__ = "0.1.0"

__all__ = [
    "ContractViolation",
    "VerificationError",
    "Element",
    "LEFT",
    "RIGHT",
    "MergeState",
    "MergeStats",
    "RotationRecord",
    "MoveSink",
    "ExactRatio",
    "ProbCell",
    "SampleModel",
    "binomial_exact",
    "in_shuffle",
    "lemma1_prob",
    "lemma2_prob",
    "lemma_ratio_exact",
    "merge_packed",
    "min_cdf",
    "order_stat_cdf",
    "prob_cross",
    "right_going_merge",
    "rotate_right",
    "scan",
    "stable_merge_reference",
    "tag_halves",
    "un_shuffle",
    "uniform_cdf",
    "verify_sorted_stable",
    "__version__",
]
