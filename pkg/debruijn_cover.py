"""Dominating, resolving and determining sets of B(d, n), with their size formulas."""

# -*- coding: utf-8 -*-
# debruijn_cover.py
from dataclasses import dataclass
from enum import Enum

import numpy as np

from debruijn_core import ConstructionUnverifiedError, PreconditionError, UnsupportedParametersError, get_logger
from debruijn_graph import CodeSet, GraphSpace, SetKind, VertexSet
from debruijn_verify import verify_determining, verify_dominating, verify_resolving
from debruijn_words import SymbolPermutation, Word, apply_symbol_perm, symbol_permutations

LOGGER = get_logger(__name__)


class BoundCase(Enum):
    CONGRUENT = "congruent"
    OTHER = "other"


@dataclass(frozen=True)
class DominationBound:
    """Lower bound on the t-domination number and which branch produced it."""

    value: int
    case_tag: BoundCase


def _checked(code: CodeSet, report, expected=None) -> CodeSet:
    if not report.valid or (expected is not None and len(code) != expected):
        LOGGER.error(
            "%s %s on %s rejected: size %d, oracle %s %s",
            code.kind.value, code.theorem, code.space, len(code),
            report.failure_kind.value, [str(w) for w in report.witnesses],
        )
        raise ConstructionUnverifiedError(
            f"{code.kind.value} set '{code.theorem}' on {code.space} failed verification "
            f"({report.failure_kind.value}, size {len(code)})",
            report,
        )
    LOGGER.debug("%s %s on %s verified, size %d", code.kind.value, code.theorem, code.space, len(code))
    return code

# ==============================================================================
#  DOMINATION
# ==============================================================================


def domination_number_1(space: GraphSpace) -> int:
    """gamma_1(B(d, n)) = ceil(d^n / (d + 1))."""
    return -(-space.order // (space.d + 1))


def dominating_1(space: GraphSpace) -> CodeSet:
    """Minimum 1-dominating set: the ceil(d^n/(d+1)) consecutive ranks starting at the offset m."""
    d, n = space.d, space.n
    low = 0 if n % 2 == 0 else 1
    offset = sum(d ** e for e in range(n - 2, low - 1, -2)) % space.order
    size = domination_number_1(space)
    ranks = (offset + np.arange(size, dtype=np.int64)) % space.order
    code = CodeSet(space, VertexSet.from_ranks(space, ranks), 1, "ceiling", SetKind.DOMINATING)
    return _checked(code, verify_dominating(code, 1), size)


def _layered_size(space: GraphSpace, t: int) -> int:
    d, n = space.d, space.n
    return sum(d ** (n - j * (t + 1)) * (d - 1) for j in range(1, n // (t + 1) + 1))


def dominating_t(space: GraphSpace, t: int) -> CodeSet:
    """Words whose first non-zero letter sits at a multiple of t+1, plus 0^n."""
    d, n = space.d, space.n
    if t < 1 or n < t + 1:
        raise UnsupportedParametersError(f"layered dominating set needs 1 <= t < n, got {space} t={t}")
    blocks = [np.zeros(1, dtype=np.int64)]
    for k in range(1, n // (t + 1) + 1):
        # first non-zero letter at position k(t+1): exactly n - k(t+1) + 1 significant digits
        digits = n - k * (t + 1) + 1
        blocks.append(np.arange(d ** (digits - 1), d ** digits, dtype=np.int64))
    code = CodeSet(space, VertexSet.from_ranks(space, np.concatenate(blocks)), t, "layered", SetKind.DOMINATING)
    return _checked(code, verify_dominating(code, t), 1 + _layered_size(space, t))


def dominating_t_lower_bound(space: GraphSpace, t: int) -> DominationBound:
    if t < 1 or space.n < t + 1:
        raise PreconditionError(f"domination bound needs 1 <= t < n, got {space} t={t}")
    value = _layered_size(space, t)
    if space.n % (t + 1) == t:
        return DominationBound(value + 1, BoundCase.CONGRUENT)
    return DominationBound(value, BoundCase.OTHER)

# ==============================================================================
#  RESOLVING
# ==============================================================================


def metric_dimension(space: GraphSpace) -> int:
    return space.d ** (space.n - 1) * (space.d - 1)


def resolving_set(space: GraphSpace, variant: str = "nonzero_suffix") -> CodeSet:
    """
    Directed resolving set of size d^(n-1)(d-1): every word not ending in 0.

    variant="literal" returns the words ending in 0 instead; it only resolves for d = 2.
    """
    last = np.arange(space.order, dtype=np.int64) % space.d
    if variant == "nonzero_suffix":
        mask = last != 0
    elif variant == "literal":
        mask = last == 0
    else:
        raise PreconditionError(f"unknown resolving set variant {variant!r}")
    code = CodeSet(space, VertexSet(space, mask), None, variant, SetKind.RESOLVING)
    return _checked(code, verify_resolving(code))

# ==============================================================================
#  DETERMINING
# ==============================================================================


def determining_number(space: GraphSpace) -> int:
    """Det(B(d, n)) = ceil((d-1)/n)."""
    return -(-(space.d - 1) // space.n)


def determining_set(space: GraphSpace) -> CodeSet:
    """Letters 0..d-2 packed in order into words of length n, the last one padded with 0."""
    d, n = space.d, space.n
    letters = list(range(d - 1))
    words = []
    for i in range(determining_number(space)):
        chunk = letters[i * n:(i + 1) * n]
        words.append(Word(tuple(chunk) + (0,) * (n - len(chunk)), d))
    code = CodeSet.from_words(space, words, t=None, theorem="letter_packing", kind=SetKind.DETERMINING)
    return _checked(code, verify_determining(code), determining_number(space))


def loop_determining_set(space: GraphSpace) -> CodeSet:
    """The d constant words a^n."""
    words = [Word.constant(a, space.n, space.d) for a in range(space.d)]
    code = CodeSet.from_words(space, words, t=None, theorem="loops", kind=SetKind.DETERMINING)
    return _checked(code, verify_determining(code), space.d)


__all__ = [
    "BoundCase",
    "DominationBound",
    "SymbolPermutation",
    "apply_symbol_perm",
    "determining_number",
    "determining_set",
    "dominating_1",
    "dominating_t",
    "dominating_t_lower_bound",
    "domination_number_1",
    "loop_determining_set",
    "metric_dimension",
    "resolving_set",
    "symbol_permutations",
]
