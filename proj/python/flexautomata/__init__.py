"""Learn deterministic automata from labelled and real-valued sequences by state merging."""

from ._core import (
    Automaton,
    DomainError,
    Error,
    InconsistentSampleError,
    InputError,
    IntegrityError,
    IterationLimitError,
    ParseError,
    Sample,
    build_apta,
    discretize,
    hoeffding_bound,
    learn,
    merge,
    parse_abbadingo,
    parse_augmented,
    predict,
    sample_words,
)

__all__ = [
    "Automaton",
    "DomainError",
    "Error",
    "InconsistentSampleError",
    "InputError",
    "IntegrityError",
    "IterationLimitError",
    "ParseError",
    "Sample",
    "build_apta",
    "discretize",
    "hoeffding_bound",
    "learn",
    "merge",
    "parse_abbadingo",
    "parse_augmented",
    "predict",
    "sample_words",
]
