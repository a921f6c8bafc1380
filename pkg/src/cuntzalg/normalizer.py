"""Canonical normalizer unitaries U_sigma of ``A = (+)_j e_j F_n e_j``.

For an admissible block permutation sigma, U_sigma carries block e_j onto
e_sigma(j) by an order-preserving relabelling of words, so that
``U_sigma e_j`` is a sum of ``S_alpha S_beta^*`` of one degree.  Every
normalizer V of A factors as ``V = W U_sigma`` with W a unitary of A.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    Element,
    Zero,
    equals,
    expand_to_level,
    is_homogeneous,
    is_in_core,
    is_unitary,
    mul,
    normal_form,
    star,
)
from .scalar import ONE
from .subalg import (
    AlgebraSpec,
    Perm,
    SpecError,
    UniformSpec,
    equivalence_classes,
    is_admissible,
    ratio_power_of_n,
    uniformize,
)
from .words import DiagonalProjection, all_words, word_key

__all__ = [
    "NormalizerError",
    "BlockIsometry",
    "PsiBijection",
    "NormalizerUnitary",
    "Verdict",
    "Factorization",
    "NotNormalizer",
    "block_exponent",
    "build_psi",
    "build_block",
    "build_U_sigma",
    "corner_units",
    "verify_U1",
    "verify_U2",
    "verify_U3",
    "group_law_check",
    "factorize",
    "lemma1_check",
    "example3_unitary",
    "uniqueness_search",
]


class NormalizerError(ValueError):
    pass


@dataclass(frozen=True)
class PsiBijection:
    """Order-preserving matching of ``(source word, suffix)`` pairs to targets.

    ``domain[t] = (mu, nu)`` is sent to ``image[t]``; domain is sorted by the
    concatenation ``mu + nu`` and image is sorted, so the match is monotone.
    """

    domain: tuple
    image: tuple

    def pairs(self):
        return zip(self.domain, self.image)

    def is_order_preserving(self) -> bool:
        cat = [mu + nu for mu, nu in self.domain]
        return all(
            (cat[s] < cat[t]) == (self.image[s] < self.image[t])
            for s in range(len(cat))
            for t in range(len(cat))
            if s != t
        )


@dataclass(frozen=True)
class BlockIsometry:
    """Partial isometry u_j with ``u_j u_j^* = e_j`` and ``u_j^* u_j = e_h``."""

    j: int
    h: int
    m: int
    element: Element


@dataclass(frozen=True)
class NormalizerUnitary:
    sigma: Perm
    element: Element
    block_exponents: tuple

    def to_json(self) -> dict:
        return {
            "sigma": list(self.sigma.images),
            "element": str(normal_form(self.element)),
            "block_exponents": list(self.block_exponents),
        }

    @classmethod
    def from_json(cls, data: dict, n: int) -> "NormalizerUnitary":
        from .expr import parse_element

        try:
            sigma = Perm(tuple(data["sigma"]))
            element = parse_element(data["element"], n).element
            exps = tuple(int(m) for m in data.get("block_exponents", ()))
        except (KeyError, TypeError) as exc:
            raise NormalizerError(f"malformed normalizer record: {exc}") from None
        return cls(sigma, element, exps)


@dataclass
class Verdict:
    """Outcome of one verification; falsy on failure, with a witness element."""

    condition: str
    passed: bool
    witness: Element | None = None
    detail: str = ""

    def __bool__(self):
        return self.passed


@dataclass(frozen=True)
class Factorization:
    """``V == W * U_sigma`` with W a unitary of A."""

    W: Element
    sigma: Perm
    U_sigma: Element

    def __bool__(self):
        return True


@dataclass(frozen=True)
class NotNormalizer:
    reason: str
    block: int | None = None
    witness: Element | None = field(default=None, compare=False)

    def __bool__(self):
        return False


def _check_admissible(s: AlgebraSpec, sigma: Perm) -> None:
    if not is_admissible(s, sigma):
        for cls in equivalence_classes(s):
            moved = [j for j in cls if sigma(j) not in cls]
            if moved:
                raise NormalizerError(
                    f"permutation {sigma} is not admissible: it moves block {moved[0]} "
                    f"out of its class {list(cls)}"
                )


def block_exponent(u: UniformSpec, sigma: Perm, j: int) -> int:
    """The m with ``size(j) == size(sigma(j)) * n**m``."""
    h = sigma(j)
    m = ratio_power_of_n(Fraction(len(u.block(j)), len(u.block(h))), u.n)
    if m is None:
        raise NormalizerError(
            f"block sizes {len(u.block(j))} and {len(u.block(h))} do not differ by a power of {u.n}"
        )
    return m


def build_psi(u: UniformSpec, j: int, h: int, m: int) -> PsiBijection:
    """Monotone bijection (block h words) x (suffixes of length m) -> block j words."""
    if m < 0:
        raise NormalizerError(f"build_psi needs m >= 0, got {m}")
    source = [(mu, nu) for mu in u.block(h) for nu in all_words(u.n, m)]
    source.sort(key=lambda p: p[0] + p[1])
    target = sorted(u.block(j))
    if len(source) != len(target):
        raise NormalizerError(
            f"size mismatch: {len(source)} source pairs vs {len(target)} words in block {j}"
        )
    psi = PsiBijection(tuple(source), tuple(target))
    # all source concatenations have equal length, so tuple order is the word order
    assert psi.is_order_preserving()
    return psi


def build_block(u: UniformSpec, sigma: Perm, j: int) -> BlockIsometry:
    h = sigma(j)
    m = block_exponent(u, sigma, j)
    terms = {}
    if m >= 0:
        for (mu, nu), target in build_psi(u, j, h, m).pairs():
            terms[(target, mu + nu)] = ONE
    else:
        # mirror case: block j's words are the ones extended
        for (mu, nu), target in build_psi(u, h, j, -m).pairs():
            terms[(mu + nu, target)] = ONE
    return BlockIsometry(j, h, m, Element(u.n, terms, check=False))


def build_U_sigma(s: AlgebraSpec, sigma: Perm) -> NormalizerUnitary:
    """``U_sigma = sum_j u_j^*``; ``U_sigma e_j`` has degree ``m_j``.

    The element keeps the constructed monomials (no collapsing); serialization
    renders its normal form.
    """
    _check_admissible(s, sigma)
    u = uniformize(s)
    pieces = [build_block(u, sigma, j) for j in range(1, s.k + 1)]
    terms = {}
    for p in pieces:
        terms.update(star(p.element).terms)
    element = Element(s.n, terms, check=False)
    return NormalizerUnitary(sigma, element, tuple(p.m for p in pieces))


def corner_units(s: AlgebraSpec, j: int, level: int) -> list[Element]:
    """Matrix units ``S_a S_b^*`` of ``e_j F_n e_j`` over level-``level`` words."""
    words = uniformize(s, level).block(j)
    return [Element(s.n, {(a, b): ONE}, check=False) for a in words for b in words]


def _block_support(y: Element, blocks: list[Element]) -> int | None:
    for h, e in enumerate(blocks, 1):
        if equals(mul(mul(e, y), e), y):
            return h
    return None


def verify_U1(U: Element, s: AlgebraSpec, level: int | None = None) -> Verdict:
    """U is unitary and conjugation by U and U^* maps each corner-generating
    matrix unit (up to ``level``, default N + 2) into a single corner."""
    if level is None:
        level = s.level + 2
    if level < s.level:
        raise SpecError(f"level {level} is below the spec level {s.level}")
    if not is_unitary(U):
        one = Element.one(s.n)
        left, right = normal_form(mul(U, star(U)) - one), normal_form(mul(star(U), U) - one)
        if left.terms:
            return Verdict("U1", False, left, "U U^* - 1 is nonzero")
        return Verdict("U1", False, right, "U^* U - 1 is nonzero")
    blocks = [s.block_element(j) for j in range(1, s.k + 1)]
    Us = star(U)
    for j in range(1, s.k + 1):
        for x in corner_units(s, j, level):
            for left, right, name in ((U, Us, "U x U^*"), (Us, U, "U^* x U")):
                y = normal_form(mul(mul(left, x), right))
                if not is_in_core(y):
                    return Verdict("U1", False, y, f"{name} leaves the core for x={x} in block {j}")
                if _block_support(y, blocks) is None:
                    return Verdict("U1", False, y, f"{name} is not inside one block for x={x} in block {j}")
    return Verdict("U1", True, detail=f"unitary; corner generators checked to level {level}")


def verify_U2(U: Element, s: AlgebraSpec, sigma: Perm) -> Verdict:
    Us = star(U)
    for j in range(1, s.k + 1):
        y = mul(mul(U, s.block_element(j)), Us)
        if not equals(y, s.block_element(sigma(j))):
            return Verdict("U2", False, normal_form(y), f"U e_{j} U^* differs from e_{sigma(j)}")
    return Verdict("U2", True, detail=f"U e_j U^* = e_sigma(j) for sigma={sigma}")


def verify_U3(U: Element, s: AlgebraSpec) -> Verdict:
    """Each ``U e_j`` is a 0/1 sum of one-degree monomials with the beta-order
    matching the alpha-order (compared after expansion to a common length)."""
    for j in range(1, s.k + 1):
        y = normal_form(mul(U, s.block_element(j)))
        if any(c != ONE for c in y.terms.values()):
            return Verdict("U3", False, y, f"U e_{j} has a coefficient other than 1")
        degrees = {len(a) - len(b) for a, b in y.terms}
        if len(degrees) > 1:
            return Verdict("U3", False, y, f"U e_{j} mixes degrees {sorted(degrees)}")
        if not y.terms:
            return Verdict("U3", False, y, f"U e_{j} is zero")
        top = max(len(b) for _, b in y.terms)
        flat = sorted(expand_to_level(y, top).terms, key=lambda ab: word_key(ab[1]))
        alphas = [a for a, _ in flat]
        if any(not alphas[t] < alphas[t + 1] for t in range(len(alphas) - 1)):
            return Verdict("U3", False, y, f"U e_{j} is not order-preserving")
    return Verdict("U3", True, detail="monomial, homogeneous, order-preserving on every block")


def group_law_check(s: AlgebraSpec, sigma: Perm, tau: Perm) -> bool:
    """``U_sigma U_tau == U_{sigma tau}``."""
    lhs = mul(build_U_sigma(s, sigma).element, build_U_sigma(s, tau).element)
    return equals(lhs, build_U_sigma(s, sigma * tau).element)


def factorize(V: Element, s: AlgebraSpec, level: int | None = None):
    """Split a normalizer as ``V = W U_sigma``.

    Returns :class:`Factorization`, or :class:`NotNormalizer` naming the
    failing block and a witness.  With ``level`` given, V is additionally
    checked against the corner generators via :func:`verify_U1`.
    """
    if V.n != s.n:
        raise SpecError(f"alphabet mismatch: element n={V.n}, spec n={s.n}")
    if not is_unitary(V):
        return NotNormalizer("not unitary", None, normal_form(mul(V, star(V)) - Element.one(s.n)))
    blocks = [s.block_element(j) for j in range(1, s.k + 1)]
    Vs = star(V)
    images = []
    for j, e in enumerate(blocks, 1):
        y = mul(mul(V, e), Vs)
        h = next((h for h, f in enumerate(blocks, 1) if equals(y, f)), None)
        if h is None:
            return NotNormalizer(f"V e_{j} V^* is not a block projection", j, normal_form(y))
        images.append(h)
    if len(set(images)) != len(images):
        return NotNormalizer(f"blocks are not permuted: images {images}", None, None)
    sigma = Perm(tuple(images))
    if not is_admissible(s, sigma):
        return NotNormalizer(f"permutation {sigma} does not preserve the trace classes", None, None)
    U = build_U_sigma(s, sigma).element
    W = normal_form(mul(V, star(U)))
    if not is_in_core(W):
        return NotNormalizer("V U_sigma^* is not in the core", None, W)
    diag = Element(s.n)
    for e in blocks:
        diag = diag + mul(mul(e, W), e)
    if not equals(diag, W):
        return NotNormalizer("V U_sigma^* is not block-diagonal", None, normal_form(W - diag))
    if not is_unitary(W):
        return NotNormalizer("V U_sigma^* is not unitary", None, W)
    if not equals(mul(W, U), V):
        raise NormalizerError("V != W U_sigma after factorization")
    if level is not None:
        verdict = verify_U1(V, s, level)
        if not verdict:
            return NotNormalizer(verdict.detail, None, verdict.witness)
    return Factorization(W, sigma, U)


def lemma1_check(
    U: Element, e: DiagonalProjection, f: DiagonalProjection, level: int | None = None
) -> int:
    """Degree ``m`` of ``U e`` for a unitary U with ``U e F_n e U^* = f F_n f``.

    Also checks ``tau(f) / tau(e) == n**-m`` and that the core witness of the
    matching sign case exists.  Raises NormalizerError otherwise.
    """
    n = U.n
    if not is_unitary(U):
        raise NormalizerError("U is not unitary")
    E = Element.diagonal(e.words, n)
    F = Element.diagonal(f.words, n)
    Us = star(U)
    if not equals(mul(mul(U, E), Us), F):
        raise NormalizerError("U e U^* != f")
    if level is None:
        level = max(e.max_length, f.max_length) + 1
    ewords = e.expanded(max(level, e.max_length))
    for a in ewords:
        for b in ewords:
            y = mul(mul(U, Element(n, {(a, b): ONE}, check=False)), Us)
            if not is_in_core(y) or not equals(mul(mul(F, y), F), y):
                raise NormalizerError(f"U S_{list(a)} S_{list(b)}^* U^* is not in f F_n f")
    Ue = mul(U, E)
    m = is_homogeneous(Ue)
    if m is None or m is Zero:
        raise NormalizerError("U e is not homogeneous")
    ratio = f.trace() / e.trace()
    if ratio_power_of_n(ratio, n) != -m:
        raise NormalizerError(f"trace ratio {ratio} is not {n}**{-m}")
    if m > 0:
        witness = mul(Ue, Element(n, {((), (1,) * m): ONE}, check=False))
    elif m < 0:
        witness = mul(Element(n, {((1,) * -m, ()): ONE}, check=False), Ue)
    else:
        witness = Ue
    if not is_in_core(witness):
        raise NormalizerError(f"core witness for degree {m} is not in the core")
    return m


def example3_unitary(s: AlgebraSpec, sigma: Perm) -> Element:
    """``sum_j S_{mu_sigma(j)} S_{mu_j}^*`` for single-word blocks."""
    for j, b in enumerate(s.blocks, 1):
        if len(b) != 1:
            raise NormalizerError(f"block {j} has {len(b)} words; expected exactly one")
    if sigma.k != s.k:
        raise SpecError(f"permutation acts on {sigma.k} points but the spec has {s.k} blocks")
    terms = {(s.blocks[sigma(j) - 1][0], s.blocks[j - 1][0]): ONE for j in range(1, s.k + 1)}
    return normal_form(Element(s.n, terms, check=False))


def uniqueness_search(
    s: AlgebraSpec, sigma: Perm, extra_levels: int = 1, degree_window: int = 2
) -> list[Element]:
    """Brute-force every [U3]-shaped candidate realizing sigma; return the
    distinct ones passing [U1]-[U3].

    Per block j the candidate pieces are ``sum_t S_{alpha_t} S_{beta_t}^*``
    with the betas the level-L words of e_j (N <= L <= N + extra_levels),
    the alphas any equally many sorted words of one length L + d
    (|d| <= degree_window), matched in order.  Pieces with
    ``p p^* != e_sigma(j)`` are discarded before combining blocks.
    """
    _check_admissible(s, sigma)
    blocks = [s.block_element(j) for j in range(1, s.k + 1)]
    per_block = []
    for j in range(1, s.k + 1):
        target = blocks[sigma(j) - 1]
        twords = s.blocks[sigma(j) - 1]
        ttrace = s.traces()[sigma(j) - 1]
        found: list[Element] = []
        for level in range(s.level, s.level + extra_levels + 1):
            betas = uniformize(s, level).block(j)
            for d in range(-degree_window, degree_window + 1):
                if level + d < 0:
                    continue
                # necessary for p p^* = e_sigma(j): every alpha meets the target
                # block and the ranges have the right total trace
                pool = [
                    a
                    for a in all_words(s.n, level + d)
                    if any(a[: len(t)] == t or t[: len(a)] == a for t in twords)
                ]
                if Fraction(len(betas), s.n ** (level + d)) != ttrace:
                    continue
                for alphas in itertools.combinations(pool, len(betas)):
                    piece = Element(
                        s.n, {(a, b): ONE for a, b in zip(alphas, betas)}, check=False
                    )
                    if not equals(mul(piece, star(piece)), target):
                        continue
                    if not any(equals(piece, p) for p in found):
                        found.append(piece)
        per_block.append(found)
    passing: list[Element] = []
    for choice in itertools.product(*per_block):
        terms = {}
        for piece in choice:
            terms.update(piece.terms)
        U = Element(s.n, terms, check=False)
        if verify_U1(U, s, s.level + 1) and verify_U2(U, s, sigma) and verify_U3(U, s):
            if not any(equals(U, p) for p in passing):
                passing.append(normal_form(U))
    return passing
