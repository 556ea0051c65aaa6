"""Word primitives over A_d = {0, ..., d-1}: slicing, letter shifts and periodicity tests."""

# -*- coding: utf-8 -*-
# debruijn_words.py
import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from debruijn_core import AlphabetError, Config, PreconditionError, ResourceLimitError, WordRangeError, get_logger

LOGGER = get_logger(__name__)

# ==============================================================================
#  WORD TYPE
# ==============================================================================
@dataclass(frozen=True)
class Word:
    """Immutable word over A_d; positions in the public API are 1-indexed."""

    letters: tuple
    d: int

    def __post_init__(self):
        letters = tuple(int(x) for x in self.letters)
        object.__setattr__(self, "letters", letters)
        if not 2 <= self.d <= Config.MAX_ALPHABET:
            raise AlphabetError(f"alphabet size must be in 2..{Config.MAX_ALPHABET}, got {self.d}")
        for letter in letters:
            if not 0 <= letter < self.d:
                raise AlphabetError(f"letter {letter} is not in A_{self.d}")

    @classmethod
    def parse(cls, text: str, d: int) -> "Word":
        """Build a word from a digit string ("0120"); the alphabet size is never inferred."""
        letters = []
        for ch in text.strip().lower():
            idx = Config.DIGITS.find(ch)
            if idx < 0:
                raise AlphabetError(f"unexpected character {ch!r} in word {text!r}")
            letters.append(idx)
        return cls(tuple(letters), d)

    @classmethod
    def constant(cls, letter: int, n: int, d: int) -> "Word":
        return cls((letter,) * n, d)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self):
        return "".join(Config.DIGITS[x] for x in self.letters)

    def __repr__(self):
        return f"Word({str(self)!r}, d={self.d})"

    def letter(self, i: int) -> int:
        """Letter at 1-indexed position i."""
        if not 1 <= i <= len(self.letters):
            raise WordRangeError(f"position {i} outside 1..{len(self.letters)}")
        return self.letters[i - 1]


class PeriodKind(Enum):
    PERIODIC = "periodic"
    ALMOST_PERIODIC = "almost_periodic"
    NONE = "none"


@dataclass(frozen=True)
class PeriodClass:
    """Periodicity classification of a word by its minimal period."""

    kind: PeriodKind
    ell: int = 0


def all_words(d: int, n: int) -> Iterator[Word]:
    """Every word of length n over A_d, in rank order."""
    for letters in itertools.product(range(d), repeat=n):
        yield Word(letters, d)

# ==============================================================================
#  SLICING AND CONCATENATION
# ==============================================================================


def slice_word(w: Word, a: int, b: int) -> Word:
    """
    Substring x(a:b) = x_a ... x_b with 1-indexed inclusive bounds.

    b = a - 1 yields the empty word, which keeps the overlap formulas total.
    """
    n = len(w)
    if a < 1 or b > n or b < a - 1:
        raise WordRangeError(f"slice ({a}:{b}) outside a word of length {n}")
    return Word(w.letters[a - 1:b], w.d)


def prefix(w: Word) -> Word:
    """x^- : the first n-1 letters."""
    if not len(w):
        raise WordRangeError("the empty word has no prefix")
    return Word(w.letters[:-1], w.d)


def suffix(w: Word) -> Word:
    """x^+ : the last n-1 letters."""
    if not len(w):
        raise WordRangeError("the empty word has no suffix")
    return Word(w.letters[1:], w.d)


def concat(x: Word, y: Word) -> Word:
    if x.d != y.d:
        raise AlphabetError(f"cannot concatenate words over A_{x.d} and A_{y.d}")
    return Word(x.letters + y.letters, x.d)


def power(w: Word, k: int) -> Word:
    """z^k: w repeated k times."""
    if k < 0:
        raise PreconditionError(f"power exponent must be non-negative, got {k}")
    return Word(w.letters * k, w.d)


def shift_letter(w: Word, t: int, m: int) -> Word:
    """w^(t,m): letter t replaced by (w_t + m) mod d."""
    if not 1 <= t <= len(w):
        raise WordRangeError(f"position {t} outside 1..{len(w)}")
    letters = list(w.letters)
    letters[t - 1] = (letters[t - 1] + m) % w.d
    return Word(tuple(letters), w.d)

# ==============================================================================
#  PERIODICITY
# ==============================================================================


def _border_table(letters) -> list:
    # KMP prefix function: longest proper border of letters[:i + 1]
    table = [0] * len(letters)
    k = 0
    for q in range(1, len(letters)):
        while k > 0 and letters[k] != letters[q]:
            k = table[k - 1]
        if letters[k] == letters[q]:
            k += 1
        table[q] = k
    return table


def has_period(w: Word, ell: int) -> bool:
    """True iff w_i = w_{i+ell} for every i in 1..n-ell; vacuous when ell >= n."""
    if ell < 1:
        raise PreconditionError(f"period length must be positive, got {ell}")
    letters = w.letters
    return all(letters[i] == letters[i + ell] for i in range(len(letters) - ell))


def periods(w: Word) -> list:
    """All period lengths 1..n of w, ascending (n itself is always included)."""
    n = len(w)
    if not n:
        return []
    table = _border_table(w.letters)
    found = []
    border = table[-1]
    while border:
        found.append(n - border)
        border = table[border - 1]
    found.append(n)
    return found


def minimal_period(w: Word) -> int:
    """Smallest ell >= 1 with has_period(w, ell); 1 for the empty word."""
    if not len(w):
        return 1
    return len(w) - _border_table(w.letters)[-1]


def is_ell_periodic(w: Word, ell: int) -> bool:
    """True iff 2*ell <= n and ell is the minimal period of w."""
    if ell < 1:
        raise PreconditionError(f"period length must be positive, got {ell}")
    return 2 * ell <= len(w) and minimal_period(w) == ell


def forced_extension(w: Word, ell: int) -> Word:
    """w followed by the 2*ell - n letters that an ell-period forces (w'_i = w_{n-ell+i})."""
    n = len(w)
    letters = list(w.letters)
    for i in range(2 * ell - n):
        letters.append(letters[n - ell + i])
    return Word(tuple(letters), w.d)


def is_almost_ell_periodic(w: Word, ell: int) -> bool:
    """
    True iff w extends to an ell-periodic word of length 2*ell.

    Requires n/2 < ell <= n. The extension is unique, so only the forced one is tested.
    """
    n = len(w)
    if ell < 1 or 2 * ell <= n or ell > n:
        raise PreconditionError(f"almost periodicity needs n/2 < ell <= n (n={n}, ell={ell})")
    if not has_period(w, ell):
        return False
    return is_ell_periodic(forced_extension(w, ell), ell)


def is_periodic_or_almost(w: Word, ell: int) -> bool:
    """ell-periodic when 2*ell <= n, almost ell-periodic when n/2 < ell <= n, else False."""
    n = len(w)
    if 2 * ell <= n:
        return is_ell_periodic(w, ell)
    if ell <= n:
        return is_almost_ell_periodic(w, ell)
    return False


def period_class(w: Word) -> PeriodClass:
    """Classify w by its minimal period p: periodic when 2p <= n, otherwise almost p-periodic."""
    n = len(w)
    if not n:
        return PeriodClass(PeriodKind.NONE)
    p = minimal_period(w)
    if 2 * p <= n:
        return PeriodClass(PeriodKind.PERIODIC, p)
    return PeriodClass(PeriodKind.ALMOST_PERIODIC, p)

# ==============================================================================
#  SYMBOL PERMUTATIONS
# ==============================================================================
@dataclass(frozen=True)
class SymbolPermutation:
    """A bijection on A_d, stored as its image array."""

    images: tuple

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(len(images))) or len(images) < 2:
            raise PreconditionError(f"{list(images)} is not a permutation of A_d")

    @property
    def d(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, d: int) -> "SymbolPermutation":
        return cls(tuple(range(d)))

    @classmethod
    def transposition(cls, d: int, a: int, b: int) -> "SymbolPermutation":
        images = list(range(d))
        images[a], images[b] = images[b], images[a]
        return cls(tuple(images))

    def __call__(self, letter: int) -> int:
        return self.images[letter]

    def compose(self, other: "SymbolPermutation") -> "SymbolPermutation":
        """self after other."""
        if self.d != other.d:
            raise AlphabetError(f"cannot compose permutations of A_{self.d} and A_{other.d}")
        return SymbolPermutation(tuple(self.images[x] for x in other.images))

    def inverse(self) -> "SymbolPermutation":
        inv = [0] * self.d
        for src, dst in enumerate(self.images):
            inv[dst] = src
        return SymbolPermutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(src == dst for src, dst in enumerate(self.images))

    def fixes(self, letters) -> bool:
        return all(self.images[x] == x for x in letters)


def symbol_permutations(d: int) -> Iterator[SymbolPermutation]:
    """All d! permutations of A_d, identity first."""
    if d > Config.MAX_PERMUTATION_ALPHABET:
        raise ResourceLimitError(f"{d}! symbol permutations exceed the cap (d <= {Config.MAX_PERMUTATION_ALPHABET})")
    for images in itertools.permutations(range(d)):
        yield SymbolPermutation(images)


def apply_symbol_perm(sigma: SymbolPermutation, w: Word) -> Word:
    """Apply sigma letter by letter."""
    if sigma.d != w.d:
        raise AlphabetError(f"permutation of A_{sigma.d} applied to a word over A_{w.d}")
    return Word(tuple(sigma.images[x] for x in w.letters), w.d)
