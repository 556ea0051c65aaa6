"""Implicit model of the directed de Bruijn graph B(d, n): ranks, distances, balls and vertex sets."""

# -*- coding: utf-8 -*-
# debruijn_graph.py
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional

import numpy as np

from debruijn_core import (
    AlphabetError,
    Config,
    SpaceMismatchError,
    WordRangeError,
    check_cap,
    get_logger,
)
from debruijn_words import Word, concat, prefix, suffix

try:
    import networkx as nx
except ImportError:
    raise ImportError("networkx library missing. Please install it.")

LOGGER = get_logger(__name__)

# ==============================================================================
#  SPACE
# ==============================================================================
@dataclass(frozen=True)
class GraphSpace:
    """The pair (d, n); adjacency is never stored."""

    d: int
    n: int

    def __post_init__(self):
        if not 2 <= self.d <= Config.MAX_ALPHABET:
            raise AlphabetError(f"alphabet size must be in 2..{Config.MAX_ALPHABET}, got {self.d}")
        if self.n < 1:
            raise WordRangeError(f"word length must be at least 1, got {self.n}")

    @property
    def order(self) -> int:
        return self.d ** self.n

    def __str__(self):
        return f"B({self.d},{self.n})"

    def vertices(self) -> Iterator[Word]:
        for rank in range(self.order):
            yield word_of(rank, self)

    def check_word(self, w: Word) -> None:
        if w.d != self.d or len(w) != self.n:
            raise SpaceMismatchError(f"word {w} (d={w.d}) is not a vertex of {self}")


class Direction(Enum):
    IN = "in"
    OUT = "out"


def vertex_index(w: Word, space: GraphSpace) -> int:
    """Rank sum(w_i * d^(n-i)), w_1 most significant."""
    if len(w) != space.n:
        raise WordRangeError(f"word {w} has length {len(w)}, expected {space.n}")
    if w.d != space.d:
        raise SpaceMismatchError(f"word {w} is over A_{w.d}, expected A_{space.d}")
    rank = 0
    for letter in w.letters:
        rank = rank * space.d + letter
    return rank


def word_of(rank: int, space: GraphSpace) -> Word:
    """Inverse of vertex_index."""
    if not 0 <= rank < space.order:
        raise WordRangeError(f"rank {rank} outside 0..{space.order - 1}")
    letters = [0] * space.n
    for i in range(space.n - 1, -1, -1):
        rank, letters[i] = divmod(rank, space.d)
    return Word(tuple(letters), space.d)


def _as_rank(space: GraphSpace, v) -> int:
    if isinstance(v, Word):
        space.check_word(v)
        return vertex_index(v, space)
    rank = int(v)
    if not 0 <= rank < space.order:
        raise WordRangeError(f"rank {rank} outside 0..{space.order - 1}")
    return rank

# ==============================================================================
#  DISTANCES AND BALLS
# ==============================================================================


def directed_distance(space: GraphSpace, u: Word, v: Word) -> int:
    """Least t with u(t+1:n) = v(1:n-t); at most n."""
    space.check_word(u)
    space.check_word(v)
    n = space.n
    for t in range(n + 1):
        if u.letters[t:] == v.letters[:n - t]:
            return t
    return n


def distances_from(space: GraphSpace, source) -> np.ndarray:
    """Directed distance from source to every vertex, indexed by rank."""
    check_cap(space.order, Config.SET_OPERATION_CAP, f"distance row on {space}")
    d, n = space.d, space.n
    s = _as_rank(space, source)
    ranks = np.arange(space.order, dtype=np.int64)
    dist = np.full(space.order, n, dtype=np.int16)
    for k in range(n - 1, -1, -1):
        dist[(ranks // d ** k) == (s % d ** (n - k))] = k
    return dist


def _check_radius(space: GraphSpace, t: int) -> None:
    if not 0 <= t <= space.n:
        raise WordRangeError(f"radius {t} outside 0..{space.n} for {space}")


def ball_ranks(space: GraphSpace, v, t: int, direction=Direction.IN) -> np.ndarray:
    """Sorted distinct ranks of the radius-t in- or out-ball of v."""
    _check_radius(space, t)
    direction = Direction(direction)
    d, n = space.d, space.n
    r = _as_rank(space, v)
    parts = []
    for s in range(t + 1):
        block = np.arange(d ** s, dtype=np.int64)
        if direction is Direction.IN:
            parts.append(block * d ** (n - s) + r // d ** s)
        else:
            parts.append((r % d ** (n - s)) * d ** s + block)
    return np.unique(np.concatenate(parts))


def ball(space: GraphSpace, v: Word, t: int, direction=Direction.IN) -> "VertexSet":
    """B_t^-(v) (direction in) or B_t^+(v) (direction out)."""
    return VertexSet.from_ranks(space, ball_ranks(space, v, t, direction))


class BallMasks:
    """Radius-t balls of every vertex as Python int bitmasks, for the oracles and searches."""

    def __init__(self, space: GraphSpace, t: int, direction=Direction.IN):
        _check_radius(space, t)
        check_cap(space.order, Config.SET_OPERATION_CAP, f"ball masks on {space}")
        self.space = space
        self.t = t
        self.direction = Direction(direction)
        d, n = space.d, space.n
        # level-s in-ball members of rank r are w*d^(n-s) + r//d^s, so one comb per level
        self._combs = []
        for s in range(t + 1):
            comb = 0
            for w in range(d ** s):
                comb |= 1 << (w * d ** (n - s))
            self._combs.append(comb)

    def __getitem__(self, rank: int) -> int:
        d, n = self.space.d, self.space.n
        mask = 0
        if self.direction is Direction.IN:
            for s, comb in enumerate(self._combs):
                mask |= comb << (rank // d ** s)
        else:
            for s in range(self.t + 1):
                mask |= ((1 << d ** s) - 1) << ((rank % d ** (n - s)) * d ** s)
        return mask

    def all(self) -> list:
        return [self[rank] for rank in range(self.space.order)]


def in_neighbors(space: GraphSpace, v: Word) -> list:
    """N^-(v): the d words a + v(1:n-1), loops included."""
    space.check_word(v)
    head = prefix(v)
    return [concat(Word((a,), space.d), head) for a in range(space.d)]


def out_neighbors(space: GraphSpace, v: Word) -> list:
    """N^+(v): the d words v(2:n) + a, loops included."""
    space.check_word(v)
    tail = suffix(v)
    return [concat(tail, Word((a,), space.d)) for a in range(space.d)]


def prefix_class(space: GraphSpace, w: Word) -> list:
    """The d vertices sharing w's length n-1 prefix."""
    space.check_word(w)
    head = prefix(w)
    return [concat(head, Word((a,), space.d)) for a in range(space.d)]


def edges(space: GraphSpace) -> Iterator[tuple]:
    """Every edge (u, v) as words, one per (vertex, letter) pair."""
    check_cap(space.order, Config.DOT_EXPORT_CAP, f"explicit edge list of {space}")
    for u in space.vertices():
        for v in out_neighbors(space, u):
            yield u, v


def to_networkx(space: GraphSpace) -> "nx.DiGraph":
    """Explicit digraph on ranks, with the digit string stored as node attribute 'word'."""
    check_cap(space.order, Config.DOT_EXPORT_CAP, f"explicit digraph of {space}")
    graph = nx.DiGraph()
    d = space.d
    for rank in range(space.order):
        graph.add_node(rank, word=str(word_of(rank, space)))
    for rank in range(space.order):
        base = (rank * d) % space.order
        for a in range(d):
            graph.add_edge(rank, base + a)
    return graph


def bfs_distances(space: GraphSpace, source: Word) -> dict:
    """Shortest-path lengths from source over explicit edges, keyed by rank."""
    graph = to_networkx(space)
    return dict(nx.single_source_shortest_path_length(graph, _as_rank(space, source)))


def find_twins(space: GraphSpace, t: int) -> list:
    """
    Groups of at least two vertices with identical radius-t in-balls, in rank order.

    Radii beyond n behave as radius n.
    """
    radius = min(t, space.n)
    masks = BallMasks(space, radius)
    groups = defaultdict(list)
    for rank in range(space.order):
        groups[masks[rank]].append(rank)
    twins = [tuple(word_of(r, space) for r in members) for members in groups.values() if len(members) > 1]
    twins.sort(key=lambda group: vertex_index(group[0], space))
    LOGGER.debug("find_twins %s t=%d: %d groups", space, t, len(twins))
    return twins

# ==============================================================================
#  VERTEX SETS
# ==============================================================================
class VertexSet:
    """Subset of the vertices of one B(d, n), stored as a boolean array indexed by rank."""

    __slots__ = ("space", "_mask")

    def __init__(self, space: GraphSpace, mask: np.ndarray):
        check_cap(space.order, Config.SET_OPERATION_CAP, f"vertex set on {space}")
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (space.order,):
            raise WordRangeError(f"membership array of shape {mask.shape} does not fit {space}")
        mask = mask.copy()
        mask.flags.writeable = False
        self.space = space
        self._mask = mask

    @classmethod
    def empty(cls, space: GraphSpace) -> "VertexSet":
        check_cap(space.order, Config.SET_OPERATION_CAP, f"vertex set on {space}")
        return cls(space, np.zeros(space.order, dtype=bool))

    @classmethod
    def full(cls, space: GraphSpace) -> "VertexSet":
        check_cap(space.order, Config.SET_OPERATION_CAP, f"vertex set on {space}")
        return cls(space, np.ones(space.order, dtype=bool))

    @classmethod
    def from_ranks(cls, space: GraphSpace, ranks) -> "VertexSet":
        check_cap(space.order, Config.SET_OPERATION_CAP, f"vertex set on {space}")
        mask = np.zeros(space.order, dtype=bool)
        ranks = np.asarray(list(ranks) if not isinstance(ranks, np.ndarray) else ranks, dtype=np.int64)
        if ranks.size:
            if ranks.min() < 0 or ranks.max() >= space.order:
                raise WordRangeError(f"rank outside 0..{space.order - 1}")
            mask[ranks] = True
        return cls(space, mask)

    @classmethod
    def from_words(cls, space: GraphSpace, words) -> "VertexSet":
        return cls.from_ranks(space, [_as_rank(space, w) for w in words])

    @classmethod
    def from_int(cls, space: GraphSpace, bits: int) -> "VertexSet":
        check_cap(space.order, Config.SET_OPERATION_CAP, f"vertex set on {space}")
        raw = np.frombuffer(bits.to_bytes((space.order + 7) // 8, "little"), dtype=np.uint8)
        return cls(space, np.unpackbits(raw, bitorder="little")[:space.order].astype(bool))

    @property
    def mask(self) -> np.ndarray:
        return self._mask

    def to_int(self) -> int:
        return int.from_bytes(np.packbits(self._mask, bitorder="little").tobytes(), "little")

    def ranks(self) -> list:
        return [int(r) for r in np.flatnonzero(self._mask)]

    def words(self) -> list:
        return [word_of(r, self.space) for r in self.ranks()]

    def __len__(self):
        return int(np.count_nonzero(self._mask))

    def __iter__(self):
        return iter(self.words())

    def __contains__(self, item) -> bool:
        if isinstance(item, Word):
            if item.d != self.space.d or len(item) != self.space.n:
                return False
            return bool(self._mask[vertex_index(item, self.space)])
        return 0 <= int(item) < self.space.order and bool(self._mask[int(item)])

    def _other(self, other) -> np.ndarray:
        if not isinstance(other, VertexSet):
            raise TypeError(f"expected a VertexSet, got {type(other).__name__}")
        if other.space != self.space:
            raise SpaceMismatchError(f"cannot combine sets of {self.space} and {other.space}")
        return other._mask

    def __or__(self, other):
        return VertexSet(self.space, self._mask | self._other(other))

    def __and__(self, other):
        return VertexSet(self.space, self._mask & self._other(other))

    def __sub__(self, other):
        return VertexSet(self.space, self._mask & ~self._other(other))

    def complement(self) -> "VertexSet":
        return VertexSet(self.space, ~self._mask)

    def issubset(self, other: "VertexSet") -> bool:
        return not np.any(self._mask & ~self._other(other))

    def __eq__(self, other):
        if not isinstance(other, VertexSet):
            return NotImplemented
        return self.space == other.space and np.array_equal(self._mask, other._mask)

    __hash__ = None

    def __repr__(self):
        preview = ", ".join(str(w) for w in self.words()[:8])
        more = ", ..." if len(self) > 8 else ""
        return f"VertexSet({self.space}, {{{preview}{more}}})"

# ==============================================================================
#  CODE SETS
# ==============================================================================
class SetKind(Enum):
    IDENTIFYING = "identifying"
    DOMINATING = "dominating"
    RESOLVING = "resolving"
    DETERMINING = "determining"


@dataclass(frozen=True)
class CodeSet:
    """A vertex set together with how it was obtained (kind, radius, construction tag)."""

    space: GraphSpace
    members: VertexSet
    t: Optional[int] = None
    theorem: str = "custom"
    kind: SetKind = SetKind.IDENTIFYING

    def __post_init__(self):
        if self.members.space != self.space:
            raise SpaceMismatchError(f"members belong to {self.members.space}, not {self.space}")

    def __len__(self):
        return len(self.members)

    def __contains__(self, item):
        return item in self.members

    def words(self) -> list:
        return self.members.words()

    def ranks(self) -> list:
        return self.members.ranks()

    @classmethod
    def from_words(cls, space: GraphSpace, words, **kwargs) -> "CodeSet":
        return cls(space, VertexSet.from_words(space, words), **kwargs)
