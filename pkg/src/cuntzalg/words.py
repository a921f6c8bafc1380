"""Words over the alphabet {1..n}: ordering, expansion and prefix codes.

Words are plain tuples of 1-based letters; the empty tuple is the empty word.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

Word = tuple  # tuple[int, ...]

LT, EQ, GT = -1, 0, 1


class WordError(ValueError):
    """A letter lies outside the alphabet, or a word is malformed."""


@dataclass(frozen=True)
class Alphabet:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise WordError(f"alphabet size must be an integer >= 2, got {self.n!r}")

    def word(self, letters: Iterable[int]) -> Word:
        return make_word(letters, self.n)

    def words_of_length(self, length: int) -> list[Word]:
        return all_words(self.n, length)


def make_word(letters: Iterable[int], n: int) -> Word:
    w = tuple(letters)
    check_word(w, n)
    return w


def check_word(w: Sequence[int], n: int) -> None:
    for pos, a in enumerate(w):
        if isinstance(a, bool) or not isinstance(a, int) or not 1 <= a <= n:
            raise WordError(f"letter {a!r} at position {pos} is not in 1..{n}")


def word_key(w: Word) -> tuple:
    """Sort key for the shortlex order: length first, then letters."""
    return (len(w), w)


def lex_compare(a: Word, b: Word, n: int | None = None) -> int:
    """Three-way shortlex comparison, returning LT, EQ or GT.

    On words of equal length this is the ordinary lexicographic order; a
    shorter word always precedes a longer one.
    """
    if n is not None:
        check_word(a, n)
        check_word(b, n)
    ka, kb = word_key(tuple(a)), word_key(tuple(b))
    return (ka > kb) - (ka < kb)


def sort_words(words: Iterable[Word]) -> list[Word]:
    return sorted((tuple(w) for w in words), key=word_key)


def all_words(n: int, length: int) -> list[Word]:
    """All n**length words of the given length, ascending."""
    if length < 0:
        raise WordError(f"negative length {length}")
    return list(itertools.product(range(1, n + 1), repeat=length))


def expand_word(w: Word, m: int, n: int) -> list[Word]:
    """All extensions ``w + nu`` with ``len(nu) == m``, ascending."""
    if m < 0:
        raise WordError(f"expansion depth must be >= 0, got {m}")
    w = make_word(w, n)
    return [w + nu for nu in all_words(n, m)]


class PrefixSplit(NamedTuple):
    kind: str  # "a_prefix", "b_prefix", "equal" or "disjoint"
    residual: Word = ()


def prefix_split(a: Word, b: Word) -> PrefixSplit:
    """Classify how two words overlap as prefixes.

    ``a_prefix`` with residual r means ``b == a + r`` (r nonempty),
    ``b_prefix`` means ``a == b + r``.
    """
    la, lb = len(a), len(b)
    if la == lb:
        return PrefixSplit("equal") if a == b else PrefixSplit("disjoint")
    if la < lb:
        if b[:la] == a:
            return PrefixSplit("a_prefix", tuple(b[la:]))
        return PrefixSplit("disjoint")
    if a[:lb] == b:
        return PrefixSplit("b_prefix", tuple(a[lb:]))
    return PrefixSplit("disjoint")


def is_prefix(p: Word, w: Word) -> bool:
    return len(p) <= len(w) and tuple(w[: len(p)]) == tuple(p)


class PrefixCodeReport(NamedTuple):
    prefix_free: bool
    kraft_sum: Fraction
    complete: bool


def kraft_sum(words: Iterable[Word], n: int) -> Fraction:
    return sum((Fraction(1, n ** len(w)) for w in words), Fraction(0))


def is_prefix_free(words: Iterable[Word]) -> bool:
    # after shortlex sorting a prefix always comes before its extensions,
    # but not necessarily adjacent, so check against every shorter word
    ws = sort_words(set(words))
    seen: set[Word] = set()
    for w in ws:
        for k in range(len(w) + 1):
            if w[:k] in seen:
                return False
        seen.add(w)
    return True


def validate_prefix_code(words: Iterable[Word], n: int) -> PrefixCodeReport:
    ws = [make_word(w, n) for w in words]
    if len(set(ws)) != len(ws):
        free = False
    else:
        free = is_prefix_free(ws)
    total = kraft_sum(set(ws), n)
    return PrefixCodeReport(free, total, free and total == 1)


@dataclass(frozen=True)
class DiagonalProjection:
    """A projection in the diagonal MASA, given by a prefix-free word set."""

    n: int
    words: tuple

    def __init__(self, words: Iterable[Word], n: int):
        ws = sort_words(make_word(w, n) for w in words)
        if len(set(ws)) != len(ws) or not is_prefix_free(ws):
            raise WordError(f"word set {ws} is not prefix-free")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "words", tuple(ws))

    def trace(self) -> Fraction:
        return kraft_sum(self.words, self.n)

    @property
    def max_length(self) -> int:
        return max((len(w) for w in self.words), default=0)

    def expanded(self, length: int) -> list[Word]:
        """The same projection written with words of one common length."""
        out: list[Word] = []
        for w in self.words:
            if len(w) > length:
                raise WordError(f"cannot expand word {w} down to length {length}")
            out.extend(expand_word(w, length - len(w), self.n))
        return sort_words(out)

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.words)


def prefix_free_sets(n: int, max_len: int):
    """Yield every prefix-free set of words of length <= max_len (the empty
    set included), each as a shortlex-sorted tuple."""
    if max_len < 0:
        raise WordError(f"negative length {max_len}")
    yield ()
    yield ((),)
    if max_len == 0:
        return
    children = list(prefix_free_sets(n, max_len - 1))
    for combo in itertools.product(children, repeat=n):
        if not any(combo):
            continue
        ws = [(i,) + w for i, child in enumerate(combo, 1) for w in child]
        yield tuple(sort_words(ws))


def cover_mask(words: Iterable[Word], n: int, depth: int) -> int:
    """Bit r set iff the r-th length-``depth`` word has a prefix in ``words``."""
    mask = 0
    for r, w in enumerate(all_words(n, depth)):
        if any(w[: len(p)] == p for p in words):
            mask |= 1 << r
    return mask


class CensusReport(NamedTuple):
    total: int
    kraft_complete: int
    cover_complete: int
    mismatches: int


def prefix_code_census(n: int, max_len: int, backend=None) -> CensusReport:
    """Exhaustive check that Kraft sum 1 and full coverage coincide.

    A nonempty prefix-free set other than ``{()}`` is an n-tuple of codes in
    the child subtrees, so the sets are enumerated as products of the
    depth ``max_len - 1`` codes.  Each child is profiled once (integer Kraft
    numerator, coverage bitmask); the product walk runs in ``backend``.
    """
    from . import kernels

    backend = backend or kernels
    if max_len == 0:
        return CensusReport(2, 1, 1, 0)
    d = max_len - 1
    ks, masks = [], []
    for code in prefix_free_sets(n, d):
        ks.append(sum(n ** (d - len(w)) for w in code))
        masks.append(cover_mask(code, n, d))
    full_mask = (1 << n**max_len) - 1
    total, kc, cc, bad = backend.census_product(ks, masks, n, n**max_len, full_mask)
    # the products include the empty set once; add {()} separately
    return CensusReport(total + 1, kc + 1, cc + 1, bad)
