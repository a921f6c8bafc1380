"""Direct sums of corners ``A = (+)_j e_j F_n e_j`` with diagonal blocks e_j."""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import Element, normal_form
from .words import (
    DiagonalProjection,
    WordError,
    check_word,
    expand_word,
    is_prefix_free,
    kraft_sum,
    sort_words,
)

__all__ = [
    "SpecError",
    "AlgebraSpec",
    "UniformSpec",
    "SpecReport",
    "Perm",
    "validate_spec",
    "uniformize",
    "ratio_power_of_n",
    "equivalence_classes",
    "is_admissible",
    "enumerate_S_sim",
    "build_conjugator",
]


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraSpec:
    """Alphabet size and the ordered blocks e_1..e_k, each a set of words.

    Construction only checks letters; call :func:`validate_spec` for the
    partition-of-unity conditions.
    """

    n: int
    blocks: tuple

    def __init__(self, n: int, blocks: Iterable[Iterable[Sequence[int]]]):
        if not isinstance(n, int) or n < 2:
            raise SpecError(f"alphabet size must be an integer >= 2, got {n!r}")
        bs = []
        for j, block in enumerate(blocks, 1):
            ws = [tuple(w) for w in block]
            try:
                for w in ws:
                    check_word(w, n)
            except WordError as exc:
                raise SpecError(f"block {j}: {exc}") from None
            bs.append(tuple(sort_words(ws)))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "blocks", tuple(bs))

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def level(self) -> int:
        return max((len(w) for b in self.blocks for w in b), default=0)

    def traces(self) -> list[Fraction]:
        return [kraft_sum(b, self.n) for b in self.blocks]

    def projection(self, j: int) -> DiagonalProjection:
        return DiagonalProjection(self.blocks[j - 1], self.n)

    def block_element(self, j: int) -> Element:
        """e_j as an element of O_n (1-based j)."""
        return Element.diagonal(self.blocks[j - 1], self.n)

    def to_json(self) -> dict:
        return {"n": self.n, "blocks": [[list(w) for w in b] for b in self.blocks]}

    @classmethod
    def from_json(cls, data) -> "AlgebraSpec":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            n, blocks = data["n"], data["blocks"]
        except (KeyError, TypeError):
            raise SpecError('spec must be an object with keys "n" and "blocks"') from None
        if not isinstance(blocks, list) or not all(
            isinstance(b, list) and all(isinstance(w, list) for w in b) for b in blocks
        ):
            raise SpecError('"blocks" must be a list of lists of words')
        return cls(n, blocks)

    @classmethod
    def load(cls, path) -> "AlgebraSpec":
        with open(path) as fh:
            try:
                return cls.from_json(json.load(fh))
            except json.JSONDecodeError as exc:
                raise SpecError(f"{path}: invalid JSON: {exc}") from None


@dataclass(frozen=True)
class UniformSpec:
    """All blocks rewritten with words of one length ``level``, each block sorted."""

    n: int
    level: int
    blocks: tuple

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def words(self) -> list:
        return [w for b in self.blocks for w in b]

    @property
    def sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]

    @property
    def counts(self) -> list[int]:
        """Cumulative block boundaries m_0 = 0 < m_1 < ... < m_k."""
        return [0] + list(itertools.accumulate(self.sizes))

    def block(self, j: int) -> tuple:
        return self.blocks[j - 1]

    def block_element(self, j: int) -> Element:
        return Element.diagonal(self.blocks[j - 1], self.n)


@dataclass
class SpecReport:
    ok: bool
    problems: list
    traces: list
    prefix_free: bool
    trace_sum: Fraction

    def __bool__(self):
        return self.ok


def validate_spec(s: AlgebraSpec) -> SpecReport:
    problems = []
    if s.k < 1:
        problems.append("spec has no blocks")
    for j, b in enumerate(s.blocks, 1):
        if not b:
            problems.append(f"block {j} is empty")
        if len(set(b)) != len(b):
            problems.append(f"block {j} repeats a word")
    union = [w for b in s.blocks for w in b]
    owner = {}
    for j, b in enumerate(s.blocks, 1):
        for w in b:
            owner.setdefault(w, j)
    free = len(set(union)) == len(union) and is_prefix_free(union)
    if not free:
        for w in sort_words(set(union)):
            for p in set(union):
                if p != w and len(p) < len(w) and w[: len(p)] == p:
                    problems.append(
                        f"word {list(p)} (block {owner[p]}) is a prefix of {list(w)} (block {owner[w]})"
                    )
        if len(set(union)) != len(union):
            seen = set()
            for w in union:
                if w in seen:
                    problems.append(f"word {list(w)} appears more than once")
                seen.add(w)
    traces = s.traces()
    total = sum(traces, Fraction(0))
    if total != 1:
        problems.append(f"block traces sum to {total}, not 1")
    return SpecReport(not problems, problems, traces, free, total)


def _require_valid(s: AlgebraSpec) -> None:
    report = validate_spec(s)
    if not report.ok:
        raise SpecError("invalid spec: " + "; ".join(report.problems))


def uniformize(s: AlgebraSpec, level: int | None = None) -> UniformSpec:
    _require_valid(s)
    top = s.level
    if level is None:
        level = top
    elif level < top:
        raise SpecError(f"level {level} is below the longest word length {top}")
    blocks = []
    for b in s.blocks:
        ws = []
        for w in b:
            ws.extend(expand_word(w, level - len(w), s.n))
        blocks.append(tuple(sort_words(ws)))
    return UniformSpec(s.n, level, tuple(blocks))


def ratio_power_of_n(r, n: int) -> int | None:
    """The integer m with ``r == n**m``, or None."""
    r = Fraction(r)
    if r <= 0:
        raise ValueError(f"ratio must be positive, got {r}")
    if r.numerator != 1 and r.denominator != 1:
        return None
    big, sign = (r.numerator, 1) if r.denominator == 1 else (r.denominator, -1)
    m = 0
    while big % n == 0:
        big //= n
        m += 1
    return sign * m if big == 1 else None


def equivalence_classes(s: AlgebraSpec) -> list[tuple[int, ...]]:
    """Blocks grouped by trace ratio in n^Z; classes ordered by least member."""
    _require_valid(s)
    traces = s.traces()
    classes: list[list[int]] = []
    for j in range(1, s.k + 1):
        for cls in classes:
            if ratio_power_of_n(traces[j - 1] / traces[cls[0] - 1], s.n) is not None:
                cls.append(j)
                break
        else:
            classes.append([j])
    return [tuple(c) for c in classes]


@dataclass(frozen=True)
class Perm:
    """Permutation of {1..k} stored as its images (1-based)."""

    images: tuple

    def __post_init__(self):
        imgs = tuple(self.images)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise SpecError(f"{list(imgs)} is not a permutation of 1..{len(imgs)}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, k: int) -> "Perm":
        return cls(tuple(range(1, k + 1)))

    @classmethod
    def from_cycles(cls, k: int, *cycles: Sequence[int]) -> "Perm":
        imgs = list(range(1, k + 1))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                imgs[a - 1] = b
        return cls(tuple(imgs))

    @classmethod
    def parse(cls, text: str, k: int | None = None) -> "Perm":
        """Parse ``"1:3,2:2,3:1"`` (meaning 1->3, 2->2, 3->1)."""
        mapping = {}
        try:
            for part in text.split(","):
                a, b = part.split(":")
                a, b = int(a), int(b)
                if a in mapping:
                    raise SpecError(f"{a} is mapped twice in {text!r}")
                mapping[a] = b
        except ValueError as exc:
            if isinstance(exc, SpecError):
                raise
            raise SpecError(f"malformed permutation {text!r}; expected e.g. 1:2,2:1") from None
        size = k if k is not None else len(mapping)
        if set(mapping) != set(range(1, size + 1)):
            raise SpecError(f"permutation {text!r} must list each of 1..{size} exactly once")
        return cls(tuple(mapping[j] for j in range(1, size + 1)))

    @property
    def k(self) -> int:
        return len(self.images)

    def __call__(self, j: int) -> int:
        return self.images[j - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        """Composition ``(self * other)(j) == self(other(j))``."""
        return Perm(tuple(self(other(j)) for j in range(1, other.k + 1)))

    def inverse(self) -> "Perm":
        inv = [0] * self.k
        for j, img in enumerate(self.images, 1):
            inv[img - 1] = j
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.k + 1))

    def format(self) -> str:
        return ",".join(f"{j}:{img}" for j, img in enumerate(self.images, 1))

    def __str__(self):
        return self.format()


def is_admissible(s: AlgebraSpec, sigma: Perm) -> bool:
    if sigma.k != s.k:
        raise SpecError(f"permutation acts on {sigma.k} points but the spec has {s.k} blocks")
    return all({sigma(j) for j in cls} == set(cls) for cls in equivalence_classes(s))


def enumerate_S_sim(s: AlgebraSpec, limit: int = 100_000) -> list[Perm]:
    """All class-preserving permutations, in lexicographic order of images."""
    classes = equivalence_classes(s)
    size = math.prod(math.factorial(len(c)) for c in classes)
    if size > limit:
        raise SpecError(f"the group has {size} elements, above the limit {limit}")
    perms = []
    for choice in itertools.product(*(itertools.permutations(c) for c in classes)):
        imgs = [0] * s.k
        for cls, image in zip(classes, choice):
            for j, h in zip(cls, image):
                imgs[j - 1] = h
        perms.append(Perm(tuple(imgs)))
    return sorted(perms, key=lambda p: p.images)


def build_conjugator(a: AlgebraSpec, b: AlgebraSpec) -> Element:
    """Degree-0 unitary u with ``u e_j u^* == f_j`` for every block j.

    Each partial isometry v_j pairs the sorted common-level words of e_j with
    those of f_j in order.
    """
    if a.n != b.n:
        raise SpecError(f"alphabet mismatch: n={a.n} vs n={b.n}")
    if a.k != b.k:
        raise SpecError(f"block count mismatch: {a.k} vs {b.k}")
    for j, (ta, tb) in enumerate(zip(a.traces(), b.traces()), 1):
        if ta != tb:
            raise SpecError(f"block {j}: trace {ta} differs from {tb}")
    level = max(a.level, b.level)
    ua, ub = uniformize(a, level), uniformize(b, level)
    terms = {}
    for ea, fb in zip(ua.blocks, ub.blocks):
        for src, dst in zip(ea, fb):
            terms[(dst, src)] = 1
    return normal_form(Element(a.n, terms))
