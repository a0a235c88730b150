"""Hyperlogarithms as coefficients of noncommutative Chen series.

Words are strings in dot syntax ("x1.x0"); the empty word is "1".
Exact inputs (poles, weights, basepoints for exact work) are strings such as
"1/2", "-3" or "1/2+i"; numeric points are Python complex numbers.
"""

from ._hyperlog import (
    GeometryError,
    Multiplier,
    ParseError,
    PoleSetMismatch,
    StepSizeUnderflow,
    certify,
    coshuffle,
    discover_relations,
    eval_coeffs,
    eval_tsv,
    graded_lex_compare,
    grouplike_defect,
    shuffle,
    verify_relation,
    words_up_to,
)


def polylog():
    """M = x0/z + x1/(1-z)."""
    return Multiplier.fuchsian(["0", "1"], ["1", "-1"])


__all__ = [
    "GeometryError",
    "Multiplier",
    "ParseError",
    "PoleSetMismatch",
    "StepSizeUnderflow",
    "certify",
    "coshuffle",
    "discover_relations",
    "eval_coeffs",
    "eval_tsv",
    "graded_lex_compare",
    "grouplike_defect",
    "polylog",
    "shuffle",
    "verify_relation",
    "words_up_to",
]
