"""Acceptance criteria, one test each, exact equality throughout.

Each test prints a single ``[PASS]``/``[FAIL]`` line (see ``criterion`` in
conftest.py) and fails if the check itself takes 10 seconds or more.
"""
import itertools
import random
import time
from fractions import Fraction

import pytest

from cuntzalg import kernels
from cuntzalg.algebra import (
    Element,
    equals,
    is_in_core,
    is_unitary,
    mul,
    normal_form,
    phi_shift,
    slice_equal,
    star,
    trace,
)
from cuntzalg.expr import parse_element
from cuntzalg.normalizer import (
    Factorization,
    NotNormalizer,
    build_U_sigma,
    factorize,
    lemma1_check,
    verify_U1,
    verify_U2,
    verify_U3,
)
from cuntzalg.scalar import Scalar
from cuntzalg.subalg import (
    AlgebraSpec,
    Perm,
    build_conjugator,
    enumerate_S_sim,
    equivalence_classes,
    uniformize,
)
from cuntzalg.words import all_words, prefix_code_census, prefix_free_sets, validate_prefix_code

from helpers import COEFFS, random_block_unitary, random_element

BUDGET = 10.0

EX3 = AlgebraSpec(2, [[[1]], [[2, 1]], [[2, 2]]])
MIXED = AlgebraSpec(2, [[[1, 1]], [[1, 2]], [[2, 1], [2, 2]]])
SWAP13 = Perm.from_cycles(3, [1, 3])


def el(text, n=2):
    return parse_element(text, n).element


class Clock:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0

    def within(self):
        return self.elapsed < BUDGET


def test_criterion_1_example3_cayley_table(criterion):
    with Clock() as clock:
        classes = equivalence_classes(EX3)
        perms = enumerate_S_sim(EX3)
        units = {p: build_U_sigma(EX3, p).element for p in perms}
        verified = all(
            verify_U1(units[p], EX3) and verify_U2(units[p], EX3, p) and verify_U3(units[p], EX3)
            for p in perms
        )
        # S_3 reference table from composing image tuples directly
        s3 = {
            (p, q): Perm(tuple(p.images[q.images[i] - 1] for i in range(3)))
            for p in perms
            for q in perms
        }
        table_ok = all(equals(mul(units[p], units[q]), units[s3[p, q]]) for p in perms for q in perms)
        star_ok = all(equals(star(units[p]), units[p.inverse()]) for p in perms)
        distinct = all(not equals(units[p], units[q]) for p, q in itertools.combinations(perms, 2))
    ok = (
        len(classes) == 1
        and len(perms) == 6
        and verified
        and table_ok
        and star_ok
        and distinct
        and clock.within()
    )
    criterion(
        "1 single-word blocks, Cayley table",
        ok,
        f"classes={len(classes)}, |S_~|={len(perms)}, U1-U3={verified}, table={table_ok}, "
        f"star=inverse={star_ok}, {clock.elapsed:.2f}s",
    )


def test_criterion_2_mixed_size_blocks(criterion):
    expected = el(
        "S([2,1])S*([1,1,1]) + S([2,2])S*([1,1,2]) + P([1,2]) + S([1,1,1])S*([2,1]) + S([1,1,2])S*([2,2])"
    )
    with Clock() as clock:
        U = build_U_sigma(MIXED, SWAP13).element
        exact = U.same_terms(expected)
        v1 = verify_U1(U, MIXED, 4)
        v2 = verify_U2(U, MIXED, SWAP13)
        v3 = verify_U3(U, MIXED)
    ok = exact and v1 and v2 and v3 and clock.within()
    criterion(
        "2 mixed-size U_sigma",
        bool(ok),
        f"terms exact={exact}, U1(L=4)={v1.passed}, U2={v2.passed}, U3={v3.passed}, {clock.elapsed:.2f}s",
    )


def test_criterion_3_lemma1_consistency(criterion):
    with Clock() as clock:
        U = build_U_sigma(MIXED, SWAP13).element
        p1, p3 = MIXED.projection(1), MIXED.projection(3)
        e1, e3 = MIXED.block_element(1), MIXED.block_element(3)
        m1 = lemma1_check(U, p1, p3)
        m3 = lemma1_check(U, p3, p1)
        r1 = p3.trace() / p1.trace()
        r3 = p1.trace() / p3.trace()
        w1 = is_in_core(mul(Element.s((1,), 2), mul(U, e1)))
        w3 = is_in_core(mul(mul(U, e3), Element.s_star((1,), 2)))
    ok = (
        m1 == -1
        and r1 == 2 == Fraction(2) ** -m1
        and m3 == 1
        and r3 == Fraction(1, 2) == Fraction(2) ** -m3
        and w1
        and w3
        and clock.within()
    )
    criterion(
        "3 block degrees and trace ratios",
        ok,
        f"deg(U e_1)={m1} ratio {r1}, deg(U e_3)={m3} ratio {r3}, witnesses in core {w1},{w3}, "
        f"{clock.elapsed:.2f}s",
    )


def test_criterion_4_rigidity(criterion):
    s = AlgebraSpec(2, [[[1, 1], [1, 2], [2, 1]], [[2, 2]]])
    with Clock() as clock:
        classes = equivalence_classes(s)
        perms = enumerate_S_sim(s)
        # pair the first word of block 1 with the only word of block 2
        naive = el("S([2,2])S*([1,1]) + S([1,1])S*([2,2]) + P([1,2]) + P([2,1])")
        result = factorize(naive, s)
    ok = (
        classes == [(1,), (2,)]
        and perms == [Perm.identity(2)]
        and is_unitary(naive)
        and isinstance(result, NotNormalizer)
        and clock.within()
    )
    criterion(
        "4 rigidity of S_~",
        ok,
        f"classes={classes}, S_~={[p.format() for p in perms]}, naive swap rejected: "
        f"{getattr(result, 'reason', result)}, "
        f"{clock.elapsed:.2f}s",
    )


def test_criterion_5_factorization_round_trip(criterion):
    rng = random.Random(20261015)
    perms = enumerate_S_sim(MIXED)
    units = {p: build_U_sigma(MIXED, p).element for p in perms}
    good = 0
    with Clock() as clock:
        for _ in range(100):
            sigma = rng.choice(perms)
            W0 = random_block_unitary(rng, MIXED, (2, 3))
            V = mul(W0, units[sigma])
            f = factorize(V, MIXED)
            if (
                isinstance(f, Factorization)
                and f.sigma == sigma
                and equals(f.W, W0)
                and equals(mul(f.W, f.U_sigma), V)
            ):
                good += 1
    criterion(
        "5 factorization round-trip",
        good == 100 and clock.within(),
        f"{good}/100 recovered (W0, sigma) exactly, {clock.elapsed:.2f}s",
    )


def test_criterion_6_conjugator(criterion):
    a = AlgebraSpec(2, [[[1, 1]], [[1, 2], [2, 1], [2, 2]]])
    b = AlgebraSpec(2, [[[2, 2]], [[1, 1], [1, 2], [2, 1]]])
    with Clock() as clock:
        u = build_conjugator(a, b)
        unitary = is_unitary(u)
        core = is_in_core(u)
        maps = [equals(mul(mul(u, a.block_element(j)), star(u)), b.block_element(j)) for j in (1, 2)]
    ok = unitary and core and all(maps) and clock.within()
    criterion(
        "6 conjugator",
        ok,
        f"unitary={unitary}, core={core}, u e_j u* = f_j: {maps}, {clock.elapsed:.2f}s",
    )


def _related(x: Element, rng: random.Random, level: int) -> Element:
    """x rewritten by random Cuntz-relation expansions that keep |beta| <= level."""
    terms = {}
    for (a, b), c in x.terms.items():
        k = rng.randint(0, level - len(b))
        for nu in itertools.product(range(1, x.n + 1), repeat=k):
            key = (a + nu, b + nu)
            terms[key] = terms.get(key, Scalar(0)) + c
    items = list(terms.items())
    rng.shuffle(items)
    return Element(x.n, dict(items))


def test_criterion_7_algebra_substrate(criterion):
    rng = random.Random(7)
    counts = dict(idempotent=0, associative=0, involution=0, oracle=0, related=0)
    with Clock() as clock:
        for t in range(500):
            n = 2 + t % 2
            M = 3 + (t // 2) % 2
            x = random_element(rng, n, 4, 3)
            y = random_element(rng, n, 3, 3)
            z = random_element(rng, n, 3, 3)
            nf = normal_form(x)
            counts["idempotent"] += normal_form(nf).same_terms(nf) and equals(nf, x)
            counts["associative"] += equals(mul(mul(x, y), z), mul(x, mul(y, z)))
            c = rng.choice(COEFFS)
            counts["involution"] += (
                equals(star(mul(x, y)), mul(star(y), star(x)))
                and star(star(x)).same_terms(x)
                and equals(star(c * x + y), c.conjugate() * star(x) + star(y))
            )
            if t % 2:
                w = _related(x, rng, M)
                if rng.random() < 0.5:
                    w = w + Element.monomial((rng.randint(1, n),), (rng.randint(1, n),), n)
                counts["related"] += 1
            else:
                w = random_element(rng, n, 4, 3)
            counts["oracle"] += equals(x, w) == slice_equal(x, w, M)
        phi_ok = 0
        for t in range(100):
            n = 2 + t % 2
            x = random_element(rng, n, 4, 3)
            px = phi_shift(x)
            phi_ok += all(
                equals(mul(Element.s((i,), n), x), mul(px, Element.s((i,), n))) for i in range(1, n + 1)
            )
    ok = all(counts[k] == 500 for k in ("idempotent", "associative", "involution", "oracle"))
    ok = ok and phi_ok == 100 and clock.within()
    criterion(
        "7 algebra substrate",
        ok,
        f"idempotent {counts['idempotent']}/500, associative {counts['associative']}/500, "
        f"involution {counts['involution']}/500, oracle {counts['oracle']}/500 "
        f"({counts['related']} related pairs), phi {phi_ok}/100, {clock.elapsed:.2f}s",
    )


def _brute_complete(words, n):
    """Every word of the maximal length has a prefix in the set."""
    top = max(len(w) for w in words)
    return all(any(w[: len(p)] == p for p in words) for w in all_words(n, top))


def test_criterion_8_prefix_code_completeness(criterion):
    if kernels.compiled_backend is None:
        pytest.skip("exhaustive n=3, length 3 census needs the compiled kernels")
    details = []
    ok = True
    with Clock() as clock:
        # library verdicts on every prefix-free set, against the literal brute force
        for n, L in ((2, 3), (3, 2)):
            sets = [c for c in prefix_free_sets(n, L) if c]
            agree = sum(
                (rep := validate_prefix_code(c, n)).prefix_free
                and rep.complete == (rep.kraft_sum == 1) == _brute_complete(c, n)
                for c in sets
            )
            ok &= agree == len(sets)
            details.append(f"n={n} L<={L}: {agree}/{len(sets)} sets agree")
        # n=3, L<=3 through the library as well, on a seeded sample of child triples
        rng = random.Random(8)
        children = list(prefix_free_sets(3, 2))
        sample = 0
        for _ in range(3000):
            combo = [rng.choice(children) for _ in range(3)]
            code = [(i,) + w for i, c in enumerate(combo, 1) for w in c]
            if not code:
                continue
            rep = validate_prefix_code(code, 3)
            ok &= rep.prefix_free and rep.complete == (rep.kraft_sum == 1) == _brute_complete(code, 3)
            sample += 1
        details.append(f"n=3 L<=3 library sample: {sample} sets agree" if ok else "library sample disagrees")
        # all 389,017,001 sets for n=3, L<=3 via the compiled census
        for n, L in ((2, 3), (3, 2), (3, 3)):
            rep = prefix_code_census(n, L, kernels.compiled_backend)
            ok &= rep.mismatches == 0 and rep.kraft_complete == rep.cover_complete
            details.append(
                f"census n={n} L<={L}: {rep.total} sets, {rep.kraft_complete} complete, "
                f"{rep.mismatches} mismatches"
            )
    ok = ok and clock.within()
    criterion("8 prefix-code completeness", ok, "; ".join(details) + f", {clock.elapsed:.2f}s")


def test_criterion_9_trace_scaling(criterion):
    rng = random.Random(9)
    rec = build_U_sigma(MIXED, SWAP13)
    U, Us = rec.element, star(rec.element)
    good = 0
    with Clock() as clock:
        for _ in range(50):
            j = rng.randint(1, 3)
            words = uniformize(MIXED, rng.choice([2, 3])).block(j)
            terms = {
                (a, b): rng.choice(COEFFS) for a in words for b in words if rng.random() < 0.5
            }
            x = Element(2, terms)
            m = rec.block_exponents[j - 1]
            good += trace(mul(mul(U, x), Us)) == Fraction(2) ** -m * trace(x)
    criterion(
        "9 trace scaling",
        good == 50 and clock.within(),
        f"{good}/50 exact, exponents {list(rec.block_exponents)}, {clock.elapsed:.2f}s",
    )
