"""Unsupervised multiple-choice QA: candidate generation, weak-supervision losses, evaluation."""

from ._core import (  # noqa: F401
    Error,
    Example,
    ExampleSet,
    UsageError,
    accuracy,
    anneal_probability,
    baseline_predict,
    candidate_stats,
    classify_question_type,
    eqa_match_score,
    gestalt_similarity,
    inverse_count,
    load_mctest,
    load_race,
    loss,
    loss_and_grad,
    make_example,
    predict,
    preset,
    read_example_set,
    score_choices,
    select_candidates,
    sliding_window_score,
    softmax,
    tokenize,
    train,
    write_example_set,
)

__version__ = "0.1.0"
