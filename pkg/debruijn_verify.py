"""Brute-force oracles for identifying, dominating, resolving and determining sets, plus exhaustive minimum searches."""

# -*- coding: utf-8 -*-
# debruijn_verify.py
import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from debruijn_core import (
    Config,
    PreconditionError,
    ResourceLimitError,
    SearchBudgetError,
    SearchCancelled,
    check_cap,
    get_logger,
    run_partitioned,
)
from debruijn_graph import (
    BallMasks,
    CodeSet,
    Direction,
    GraphSpace,
    SetKind,
    VertexSet,
    ball_ranks,
    distances_from,
    find_twins,
    to_networkx,
    vertex_index,
    word_of,
)
from debruijn_words import SymbolPermutation, Word, apply_symbol_perm, symbol_permutations
from networkx.algorithms.isomorphism import DiGraphMatcher

LOGGER = get_logger(__name__)

# ==============================================================================
#  REPORT TYPES
# ==============================================================================
@dataclass(frozen=True)
class Signature:
    """ID_S(v) = B_t^-(v) & S as strictly increasing ranks."""

    ranks: tuple = ()

    def __post_init__(self):
        ranks = tuple(int(r) for r in self.ranks)
        if any(a >= b for a, b in zip(ranks, ranks[1:])) or any(r < 0 for r in ranks):
            raise PreconditionError(f"signature ranks must be strictly increasing and non-negative: {ranks}")
        object.__setattr__(self, "ranks", ranks)

    @classmethod
    def of(cls, space: GraphSpace, items) -> "Signature":
        """Build from words or ranks in any order."""
        ranks = set()
        for item in items:
            if isinstance(item, Word):
                space.check_word(item)
                ranks.add(vertex_index(item, space))
            else:
                ranks.add(int(item))
        for r in ranks:
            if r >= space.order:
                raise PreconditionError(f"rank {r} is not a vertex of {space}")
        return cls(tuple(sorted(ranks)))

    def words(self, space: GraphSpace) -> list:
        return [word_of(r, space) for r in self.ranks]

    def __len__(self):
        return len(self.ranks)


class FailureKind(Enum):
    NONE = "none"
    EMPTY_SIGNATURE = "empty_signature"
    DUPLICATE_SIGNATURE = "duplicate_signature"
    UNDOMINATED = "undominated"
    UNRESOLVED_PAIR = "unresolved_pair"
    NONTRIVIAL_STABILIZER = "nontrivial_stabilizer"


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of an oracle check."""

    valid: bool
    failure_kind: FailureKind = FailureKind.NONE
    witnesses: tuple = ()
    checked_count: int = 0

    def __post_init__(self):
        if self.valid != (self.failure_kind is FailureKind.NONE):
            raise PreconditionError(f"inconsistent report: valid={self.valid}, failure={self.failure_kind.value}")

    def __bool__(self):
        return self.valid


def _unpack(S):
    members = S.members if isinstance(S, CodeSet) else S
    if not isinstance(members, VertexSet):
        raise PreconditionError(f"expected a CodeSet or VertexSet, got {type(S).__name__}")
    check_cap(members.space.order, Config.SET_OPERATION_CAP, f"verification on {members.space}")
    return members.space, members


def _signatures(space, code_bits, t, workers, progress_callback):
    masks = BallMasks(space, t)

    def worker(start, stop):
        return [masks[r] & code_bits for r in range(start, stop)]

    chunks = run_partitioned(space.order, worker, workers, progress_callback)
    return list(itertools.chain.from_iterable(chunks))

# ==============================================================================
#  SIGNATURES
# ==============================================================================


def id_signature(S, v: Word, t: int) -> Signature:
    space, members = _unpack(S)
    space.check_word(v)
    ranks = ball_ranks(space, v, t)
    return Signature(tuple(int(r) for r in ranks[members.mask[ranks]]))


def signature_table(S, t: int) -> dict:
    """Signature -> vertices carrying it, in rank order."""
    space, members = _unpack(S)
    table = {}
    for rank, bits in enumerate(_signatures(space, members.to_int(), t, None, None)):
        sig = Signature(tuple(VertexSet.from_int(space, bits).ranks()))
        table.setdefault(sig, []).append(word_of(rank, space))
    return table


class SignatureDecoder:
    """Inverted signature table of S at radius t, built once and queried per observation."""

    def __init__(self, S, t: int, workers=None, progress_callback=None):
        space, members = _unpack(S)
        self.space = space
        self.t = t
        self._by_bits = {}
        self._shared = {}
        for rank, bits in enumerate(_signatures(space, members.to_int(), t, workers, progress_callback)):
            first = self._by_bits.setdefault(bits, rank)
            if first != rank:
                self._shared.setdefault(bits, (first, rank))

    def decode(self, observed) -> Optional[Word]:
        """
        The unique vertex whose signature equals observed, or None.

        Raises PreconditionError when two vertices share the observed signature,
        which means S is not t-identifying.
        """
        space = self.space
        if not isinstance(observed, Signature):
            observed = Signature.of(space, observed)
        if not len(observed):
            LOGGER.debug("Empty signature observed; no vertex of a valid code matches")
            return None
        target = 0
        for r in observed.ranks:
            if r >= space.order:
                return None
            target |= 1 << r
        if target in self._shared:
            a, b = (word_of(r, space) for r in self._shared[target])
            raise PreconditionError(f"set is not {self.t}-identifying: {a} and {b} share signature {observed.ranks}")
        rank = self._by_bits.get(target)
        return word_of(rank, space) if rank is not None else None


def decode_signature(S, t: int, observed) -> Optional[Word]:
    """One-off decode; build a SignatureDecoder to decode many observations."""
    return SignatureDecoder(S, t).decode(observed)

# ==============================================================================
#  ORACLES
# ==============================================================================


def verify_identifying(S, t: int, workers=None, progress_callback=None) -> VerificationReport:
    """Every signature non-empty and all d^n signatures pairwise distinct."""
    space, members = _unpack(S)
    sigs = _signatures(space, members.to_int(), t, workers, progress_callback)
    seen = {}
    for rank, sig in enumerate(sigs):
        if not sig:
            return VerificationReport(False, FailureKind.EMPTY_SIGNATURE, (word_of(rank, space),), rank + 1)
        first = seen.setdefault(sig, rank)
        if first != rank:
            pair = (word_of(first, space), word_of(rank, space))
            return VerificationReport(False, FailureKind.DUPLICATE_SIGNATURE, pair, rank + 1)
    return VerificationReport(True, checked_count=space.order)


def verify_dominating(S, t: int, workers=None, progress_callback=None) -> VerificationReport:
    space, members = _unpack(S)
    for rank, sig in enumerate(_signatures(space, members.to_int(), t, workers, progress_callback)):
        if not sig:
            return VerificationReport(False, FailureKind.UNDOMINATED, (word_of(rank, space),), rank + 1)
    return VerificationReport(True, checked_count=space.order)


def _first_collision(labels):
    seen = {}
    for rank, label in enumerate(labels.tolist()):
        first = seen.setdefault(label, rank)
        if first != rank:
            return first, rank
    return None


def verify_resolving(S, workers=None, progress_callback=None) -> VerificationReport:
    """Every vertex pair is separated by the directed distance from some member."""
    space, members = _unpack(S)
    order = space.order
    pairs = order * (order - 1) // 2
    sources = members.ranks()

    def worker(start, stop):
        return [distances_from(space, s) for s in sources[start:stop]]

    # refine vertex classes by one distance row at a time
    labels = np.zeros(order, dtype=np.int64)
    for chunk in run_partitioned(len(sources), worker, workers, progress_callback):
        for dist in chunk:
            _, labels = np.unique(labels * (space.n + 1) + dist, return_inverse=True)
            labels = labels.reshape(-1).astype(np.int64)
    collision = _first_collision(labels)
    if collision is None:
        return VerificationReport(True, checked_count=pairs)
    pair = tuple(word_of(r, space) for r in collision)
    return VerificationReport(False, FailureKind.UNRESOLVED_PAIR, pair, pairs)


def verify_determining(S) -> VerificationReport:
    """
    Only the identity symbol permutation fixes every member.

    A permutation fixes a word pointwise iff it fixes each of its letters. For n = 1
    the symbol permutations are all vertex permutations, so the check is exhaustive there too.
    """
    space, members = _unpack(S)
    if space.d > Config.MAX_PERMUTATION_ALPHABET:
        raise ResourceLimitError(f"d = {space.d} exceeds the permutation cap {Config.MAX_PERMUTATION_ALPHABET}")
    words = members.words()
    used = set()
    for w in words:
        used.update(w.letters)
    checked = 0
    for sigma in symbol_permutations(space.d):
        checked += 1
        if sigma.is_identity():
            continue
        if sigma.fixes(used):
            return VerificationReport(False, FailureKind.NONTRIVIAL_STABILIZER, (sigma,), checked)
    return VerificationReport(True, checked_count=checked)

# ==============================================================================
#  AUTOMORPHISMS
# ==============================================================================


def enumerate_automorphisms(space: GraphSpace) -> list:
    """Every edge-preserving vertex permutation, as tuples of image ranks (tiny graphs only)."""
    if space.order > Config.AUTOMORPHISM_CAP:
        raise ResourceLimitError(
            f"{space} has {space.order} vertices; automorphism enumeration is capped at {Config.AUTOMORPHISM_CAP}"
        )
    graph = to_networkx(space)
    matcher = DiGraphMatcher(graph, graph)
    found = sorted(tuple(mapping[r] for r in range(space.order)) for mapping in matcher.isomorphisms_iter())
    LOGGER.debug("%s has %d automorphisms", space, len(found))
    return found


def automorphism_of(space: GraphSpace, sigma: SymbolPermutation) -> tuple:
    """Vertex permutation induced by applying sigma to every coordinate."""
    return tuple(vertex_index(apply_symbol_perm(sigma, word_of(r, space)), space) for r in range(space.order))

# ==============================================================================
#  EXHAUSTIVE SEARCH
# ==============================================================================
@dataclass(frozen=True)
class LevelRecord:
    """One fully enumerated size level."""

    size: int
    candidates: int
    valid: int


@dataclass
class SearchResult:
    """Minimum found by exhaustive search, with the exhausted levels as certificate."""

    kind: SetKind
    space: GraphSpace
    t: Optional[int]
    code: Optional[CodeSet] = None
    codes: list = field(default_factory=list)
    levels: list = field(default_factory=list)
    twins: Optional[tuple] = None

    @property
    def found(self) -> bool:
        return self.code is not None

    @property
    def minimum(self) -> Optional[int]:
        return len(self.code) if self.code is not None else None

    @property
    def last_exhausted_size(self) -> Optional[int]:
        empty = [level.size for level in self.levels if not level.valid]
        return max(empty) if empty else None


def _identifies(masks, bits) -> bool:
    seen = set()
    for mask in masks:
        sig = mask & bits
        if not sig or sig in seen:
            return False
        seen.add(sig)
    return True


def _cancel_check(check_cancel, last_size):
    if check_cancel and check_cancel():
        raise SearchCancelled("search cancelled", last_exhausted_size=last_size)


def min_identifying_search(
    space: GraphSpace,
    t: int,
    size_cap: Optional[int] = None,
    collect_all: bool = False,
    workers=None,
    progress_callback=None,
    check_cancel=None,
) -> SearchResult:
    """
    Minimum t-identifying code by exhaustive search over size levels.

    Every code keeps at least d-1 words of each prefix class, so level
    d^(n-1)(d-1) + k only enumerates the choices of k full classes and one missing
    letter in every other class. Ties are broken by the sorted rank tuple. Twins are
    checked first and end the search with no code.
    """
    if t < 1:
        raise PreconditionError(f"radius must be at least 1, got {t}")
    check_cap(space.order, Config.SET_OPERATION_CAP, f"search on {space}")
    result = SearchResult(SetKind.IDENTIFYING, space, t)
    twins = find_twins(space, t)
    if twins:
        result.twins = (twins[0][0], twins[0][1])
        LOGGER.info("%s has %d-twins %s/%s; no identifying code exists", space, t, *result.twins)
        return result

    d, order = space.d, space.order
    classes = d ** (space.n - 1)
    lower = classes * (d - 1)
    size_cap = order if size_cap is None else min(size_cap, order)
    masks = BallMasks(space, t).all()
    full = (1 << order) - 1
    class_bits = [[1 << (c * d + a) for a in range(d)] for c in range(classes)]
    last_size = None

    for k in range(classes + 1):
        size = lower + k
        if size > size_cap:
            break
        count = math.comb(classes, k) * d ** (classes - k)
        if count > Config.SEARCH_CANDIDATE_CAP:
            raise SearchBudgetError(
                f"{count} candidates of size {size} exceed the search budget {Config.SEARCH_CANDIDATE_CAP}",
                last_exhausted_size=last_size,
            )
        combos = list(itertools.combinations(range(classes), k))

        def worker(start, stop, combos=combos, size=last_size):
            found = []
            for idx, full_classes in enumerate(combos[start:stop]):
                if idx % 64 == 0:
                    _cancel_check(check_cancel, size)
                chosen = set(full_classes)
                open_bits = [class_bits[c] for c in range(classes) if c not in chosen]
                for missing in itertools.product(*open_bits):
                    bits = full ^ sum(missing)
                    if _identifies(masks, bits):
                        found.append(bits)
            return found

        valid = list(itertools.chain.from_iterable(run_partitioned(len(combos), worker, workers, progress_callback)))
        result.levels.append(LevelRecord(size, count, len(valid)))
        LOGGER.info("%s t=%d: size %d exhausted, %d candidates, %d codes", space, t, size, count, len(valid))
        if valid:
            sets = sorted((VertexSet.from_int(space, bits) for bits in valid), key=lambda vs: vs.ranks())
            codes = [CodeSet(space, vs, t, "search", SetKind.IDENTIFYING) for vs in sets]
            result.code = codes[0]
            result.codes = codes if collect_all else codes[:1]
            return result
        last_size = size
    return result


def _subset_search(space, kind, t, accepts, check_cancel=None):
    order = space.order
    result = SearchResult(kind, space, t)
    total = 0
    for size in range(order + 1):
        count = math.comb(order, size)
        total += count
        if total > Config.SUBSET_SEARCH_CAP:
            raise SearchBudgetError(
                f"subset search on {space} needs more than {Config.SUBSET_SEARCH_CAP} candidates",
                last_exhausted_size=result.last_exhausted_size,
            )
        _cancel_check(check_cancel, result.last_exhausted_size)
        for subset in itertools.combinations(range(order), size):
            if accepts(subset):
                result.levels.append(LevelRecord(size, count, 1))
                result.code = CodeSet(space, VertexSet.from_ranks(space, subset), t, "search", kind)
                result.codes = [result.code]
                return result
        result.levels.append(LevelRecord(size, count, 0))
        LOGGER.debug("%s %s search: size %d exhausted", space, kind.value, size)
    return result


def min_dominating_search(space: GraphSpace, t: int = 1, check_cancel=None) -> SearchResult:
    """Smallest t-dominating set by subset enumeration (tiny graphs)."""
    reach = BallMasks(space, t, Direction.OUT).all()
    full = (1 << space.order) - 1

    def accepts(subset):
        covered = 0
        for r in subset:
            covered |= reach[r]
        return covered == full

    return _subset_search(space, SetKind.DOMINATING, t, accepts, check_cancel)


def min_resolving_search(space: GraphSpace, check_cancel=None) -> SearchResult:
    """Smallest directed resolving set by subset enumeration (tiny graphs)."""
    check_cap(space.order, Config.DOT_EXPORT_CAP, f"distance matrix of {space}")
    matrix = np.stack([distances_from(space, r) for r in range(space.order)])

    def accepts(subset):
        if not subset:
            return space.order < 2
        columns = matrix[list(subset)].T
        return np.unique(columns, axis=0).shape[0] == space.order

    return _subset_search(space, SetKind.RESOLVING, None, accepts, check_cancel)


def min_determining_search(space: GraphSpace, check_cancel=None) -> SearchResult:
    """Smallest determining set by subset enumeration (tiny graphs)."""

    def accepts(subset):
        return verify_determining(VertexSet.from_ranks(space, subset)).valid

    return _subset_search(space, SetKind.DETERMINING, None, accepts, check_cancel)
