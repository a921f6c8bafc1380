"""Exact polynomial elements of the Cuntz algebra O_n.

An :class:`Element` is a finite combination of monomials ``S_alpha S_beta^*``
with Gaussian-rational coefficients.  Multiplication uses only
``S_i^* S_j = delta_ij``; the relation ``sum_i S_i S_i^* = 1`` enters through
:func:`expand_to_level` and :func:`normal_form`, which together decide
equality.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping

from . import kernels
from .scalar import ONE, Scalar, as_scalar
from .words import Word, check_word, word_key

__all__ = [
    "AlgebraError",
    "Element",
    "Zero",
    "SliceMatrix",
    "mono_mul",
    "add",
    "sub",
    "scalar_mul",
    "mul",
    "star",
    "expand_to_level",
    "normal_form",
    "equals",
    "degree_split",
    "is_homogeneous",
    "is_in_core",
    "trace",
    "phi_shift",
    "slice_matrix",
    "slice_equal",
    "is_unitary",
    "is_projection",
    "is_partial_isometry",
]


class AlgebraError(ValueError):
    pass


class _ZeroType:
    """Homogeneity outcome of the zero element (homogeneous of every degree)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Zero"

    def __bool__(self):
        return False


Zero = _ZeroType()


def _term_key(item):
    (a, b), _ = item
    return (len(a) - len(b), word_key(b), word_key(a))


class Element:
    """Finite sum of ``c * S_alpha S_beta^*``; treat instances as immutable.

    ``terms`` maps ``(alpha, beta)`` word pairs to nonzero :class:`Scalar`
    coefficients.  ``==`` is equality in O_n (via :func:`equals`), not
    equality of representations; use :meth:`same_terms` for the latter.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping | None = None, *, check: bool = True):
        if not isinstance(n, int) or n < 2:
            raise AlgebraError(f"alphabet size must be an integer >= 2, got {n!r}")
        self.n = n
        if terms is None:
            self.terms = {}
            return
        if check:
            clean = {}
            for (a, b), c in terms.items():
                a, b = tuple(a), tuple(b)
                check_word(a, n)
                check_word(b, n)
                c = as_scalar(c)
                old = clean.get((a, b))
                clean[(a, b)] = c if old is None else old + c
            terms = kernels.prune(clean)
        self.terms = dict(sorted(terms.items(), key=_term_key))

    @classmethod
    def zero(cls, n: int) -> "Element":
        return cls(n)

    @classmethod
    def one(cls, n: int) -> "Element":
        return cls(n, {((), ()): ONE}, check=False)

    @classmethod
    def monomial(cls, alpha: Iterable[int], beta: Iterable[int], n: int, coeff=1) -> "Element":
        return cls(n, {(tuple(alpha), tuple(beta)): coeff})

    @classmethod
    def s(cls, word: Iterable[int], n: int) -> "Element":
        return cls.monomial(word, (), n)

    @classmethod
    def s_star(cls, word: Iterable[int], n: int) -> "Element":
        return cls.monomial((), word, n)

    @classmethod
    def projection(cls, word: Iterable[int], n: int) -> "Element":
        w = tuple(word)
        return cls.monomial(w, w, n)

    @classmethod
    def diagonal(cls, words: Iterable[Iterable[int]], n: int) -> "Element":
        return cls(n, {(tuple(w), tuple(w)): 1 for w in words})

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            if other.n != self.n:
                raise AlgebraError(f"alphabet mismatch: n={self.n} vs n={other.n}")
            return other
        return Element(self.n, {((), ()): as_scalar(other)})

    def __add__(self, other):
        return add(self, self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, self._coerce(other))

    def __rsub__(self, other):
        return sub(self._coerce(other), self)

    def __neg__(self):
        return Element(self.n, {k: -c for k, c in self.terms.items()}, check=False)

    def __mul__(self, other):
        if isinstance(other, Element):
            return mul(self, other)
        return scalar_mul(other, self)

    def __rmul__(self, other):
        return scalar_mul(other, self)

    def star(self) -> "Element":
        return star(self)

    def __eq__(self, other):
        if isinstance(other, Element) or isinstance(other, (int, Fraction, Scalar)):
            return equals(self, self._coerce(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(normal_form(self).terms.items())))

    def same_terms(self, other: "Element") -> bool:
        return self.n == other.n and self.terms == other.terms

    def is_zero(self) -> bool:
        return not normal_form(self).terms

    def __bool__(self):
        return not self.is_zero()

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __repr__(self):
        return f"Element(n={self.n}, {str(self)!r})"

    def __str__(self):
        from .expr import render_element

        return render_element(self)


def _same_alphabet(x: Element, y: Element) -> None:
    if x.n != y.n:
        raise AlgebraError(f"alphabet mismatch: n={x.n} vs n={y.n}")


def mono_mul(x: tuple[Word, Word], y: tuple[Word, Word]) -> tuple[Word, Word] | None:
    """Product of two monomials given as ``(alpha, beta)`` pairs; None means zero."""
    (a, b), (c, d) = x, y
    return kernels.mono_mul(tuple(a), tuple(b), tuple(c), tuple(d))


def add(x: Element, y: Element) -> Element:
    _same_alphabet(x, y)
    return Element(x.n, kernels.add_terms(x.terms, y.terms), check=False)


def sub(x: Element, y: Element) -> Element:
    _same_alphabet(x, y)
    return Element(x.n, kernels.add_terms(x.terms, y.terms, -1), check=False)


def scalar_mul(c, x: Element) -> Element:
    c = as_scalar(c)
    if not c:
        return Element(x.n)
    return Element(x.n, {k: c * v for k, v in x.terms.items()}, check=False)


def mul(x: Element, y: Element) -> Element:
    _same_alphabet(x, y)
    return Element(x.n, kernels.mul_terms(x.terms, y.terms), check=False)


def star(x: Element) -> Element:
    return Element(x.n, kernels.star_terms(x.terms), check=False)


def _max_beta_by_degree(terms) -> dict[int, int]:
    levels: dict[int, int] = {}
    for a, b in terms:
        d = len(a) - len(b)
        if levels.get(d, -1) < len(b):
            levels[d] = len(b)
    return levels


def expand_to_level(x: Element, levels: Mapping[int, int] | int) -> Element:
    """Rewrite x so every degree-d monomial has ``|beta| == levels[d]``.

    An int applies the same beta-length to all degrees.  Uses
    ``S_a S_b^* = sum_{|nu|=k} S_{a nu} S_{b nu}^*``.
    """
    if isinstance(levels, int):
        levels = {d: levels for d in _max_beta_by_degree(x.terms)}
    else:
        levels = dict(levels)
        for d in _max_beta_by_degree(x.terms):
            if d not in levels:
                raise AlgebraError(f"no target level given for degree {d}")
    try:
        return Element(x.n, kernels.expand_terms(x.terms, levels, x.n), check=False)
    except ValueError as exc:
        raise AlgebraError(str(exc)) from None


def normal_form(x: Element) -> Element:
    """Canonical representative: expand per degree to the longest beta, then
    collapse complete families ``{(a i, b i)}_i`` with equal coefficients."""
    if not x.terms:
        return x
    expanded = kernels.expand_terms(x.terms, _max_beta_by_degree(x.terms), x.n)
    return Element(x.n, kernels.collapse_terms(expanded, x.n), check=False)


def equals(x: Element, y: Element) -> bool:
    _same_alphabet(x, y)
    return not normal_form(sub(x, y)).terms


def degree_split(x: Element) -> dict[int, Element]:
    """Gauge-grading components, keyed by degree ``|alpha| - |beta|``.

    Components that vanish in O_n are dropped.
    """
    parts: dict[int, dict] = {}
    for (a, b), c in x.terms.items():
        parts.setdefault(len(a) - len(b), {})[(a, b)] = c
    out = {}
    for d in sorted(parts):
        comp = normal_form(Element(x.n, parts[d], check=False))
        if comp.terms:
            out[d] = comp
    return out


def is_homogeneous(x: Element):
    """The degree of x if it has one, ``Zero`` for the zero element, else None."""
    parts = degree_split(x)
    if not parts:
        return Zero
    if len(parts) == 1:
        return next(iter(parts))
    return None


def is_in_core(x: Element) -> bool:
    return set(degree_split(x)) <= {0}


def trace(x: Element) -> Scalar:
    """Normalized trace on the core: ``tau(S_a S_b^*) = delta_ab n^-|a|``."""
    parts = degree_split(x)
    if set(parts) - {0}:
        raise AlgebraError(f"trace is only defined on the core; degrees {sorted(parts)} present")
    total = Scalar(0)
    for (a, b), c in x.terms.items():
        if a == b:
            total = total + c * Fraction(1, x.n ** len(a))
    return total


def phi_shift(x: Element) -> Element:
    """Canonical shift ``x -> sum_i S_i x S_i^*``."""
    return Element(x.n, kernels.shift_terms(x.terms, x.n), check=False)


@dataclass(frozen=True)
class SliceMatrix:
    """Exact matrix of one graded piece acting on words of a fixed length.

    ``entries`` is sparse: ``{(row_word, col_word): Scalar}`` with no zeros.
    """

    rows: tuple
    cols: tuple
    entries: dict = field(hash=False)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.cols))

    def dense(self) -> list[list[Scalar]]:
        ri = {w: i for i, w in enumerate(self.rows)}
        ci = {w: j for j, w in enumerate(self.cols)}
        out = [[Scalar(0)] * len(self.cols) for _ in self.rows]
        for (r, c), v in self.entries.items():
            out[ri[r]][ci[c]] = v
        return out


def slice_matrix(x: Element, level: int) -> dict[int, SliceMatrix]:
    """Action of each graded piece of x on the span of length-``level`` words.

    Degree d maps basis words of length ``level`` to length ``level + d`` via
    ``e_w -> [beta prefixes w] e_{alpha + w[len(beta):]}``.  Computed straight
    from the terms, independently of :func:`normal_form`.  Degrees whose
    matrix vanishes are omitted.
    """
    if x.terms and level < max(len(b) for _, b in x.terms):
        raise AlgebraError(f"slice level {level} is below the longest beta in the element")
    letters = range(1, x.n + 1)
    acc: dict[int, dict] = {}
    for (a, b), c in x.terms.items():
        d = len(a) - len(b)
        ent = acc.setdefault(d, {})
        for nu in product(letters, repeat=level - len(b)):
            key = (a + nu, b + nu)
            old = ent.get(key)
            ent[key] = c if old is None else old + c
    out = {}
    for d in sorted(acc):
        ent = {k: v for k, v in acc[d].items() if v}
        if ent:
            rows = tuple(product(letters, repeat=level + d))
            cols = tuple(product(letters, repeat=level))
            out[d] = SliceMatrix(rows, cols, ent)
    return out


def slice_equal(x: Element, y: Element, level: int) -> bool:
    _same_alphabet(x, y)
    sx, sy = slice_matrix(x, level), slice_matrix(y, level)
    return sx.keys() == sy.keys() and all(sx[d].entries == sy[d].entries for d in sx)


def is_unitary(u: Element) -> bool:
    one = Element.one(u.n)
    us = star(u)
    return equals(mul(u, us), one) and equals(mul(us, u), one)


def is_projection(p: Element) -> bool:
    return equals(p, star(p)) and equals(mul(p, p), p)


def is_partial_isometry(v: Element) -> bool:
    return equals(mul(mul(v, star(v)), v), v)
