"""Word problem certificates for free group amalgams and their mapping tori."""

from .nielsen import (
    NielsenStep,
    NViolation,
    apply_log,
    find_n_violation,
    is_n_reduced,
    nielsen_reduce,
    reduce_combination,
    signed_family,
    split_word,
)
from .pairs import (
    ConstantsReport,
    RelatingPair,
    StemEntry,
    StemTable,
    compute_constants,
    enumerate_relating_pairs,
    enumerate_stems_twigs,
    find_matchless_identical_segments,
)
from .words import (
    Alphabet,
    Word,
    cancellation_length,
    concat,
    cyclic_reduce,
    free_reduce,
    inverse,
    is_reduced,
    letter_key,
    power,
    shortlex_key,
)

__version__ = "0.1.0"
