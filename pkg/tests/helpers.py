"""Random generators shared by the property tests."""
import itertools
import random
from fractions import Fraction

from cuntzalg import AlgebraSpec, Element, Scalar

COEFFS = [Scalar(1), Scalar(-1), Scalar(2), Scalar(Fraction(1, 2)), Scalar(0, 1), Scalar(1, -1)]


def random_word(rng: random.Random, n: int, max_len: int) -> tuple:
    return tuple(rng.randint(1, n) for _ in range(rng.randint(0, max_len)))


def random_element(rng, n, max_terms=4, max_len=3, core=False) -> Element:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        a = random_word(rng, n, max_len)
        if core:
            b = tuple(rng.randint(1, n) for _ in a)
        else:
            b = random_word(rng, n, max_len)
        terms[(a, b)] = rng.choice(COEFFS)
    return Element(n, terms)


def reexpress(x: Element, rng: random.Random, depth: int = 1) -> Element:
    """Same element written differently: random terms expanded via the Cuntz relation."""
    terms = {}
    for (a, b), c in x.terms.items():
        k = rng.randint(0, depth)
        for nu in itertools.product(range(1, x.n + 1), repeat=k):
            key = (a + nu, b + nu)
            terms[key] = terms.get(key, Scalar(0)) + c
    items = list(terms.items())
    rng.shuffle(items)
    return Element(x.n, dict(items))


def random_code(rng: random.Random, n: int, max_len: int) -> list:
    """A random complete prefix code: split leaves of the n-ary tree at random."""
    leaves = [()]
    for _ in range(rng.randint(0, 2 * n)):
        cands = [w for w in leaves if len(w) < max_len]
        if not cands:
            break
        w = rng.choice(cands)
        leaves.remove(w)
        leaves.extend(w + (i,) for i in range(1, n + 1))
    return leaves


def random_spec(rng: random.Random, n: int = 2, max_len: int = 3, max_k: int = 4) -> AlgebraSpec:
    code = random_code(rng, n, max_len)
    while len(code) < 2:
        code = random_code(rng, n, max_len)
    rng.shuffle(code)
    k = rng.randint(1, min(max_k, len(code)))
    cuts = sorted(rng.sample(range(1, len(code)), k - 1))
    blocks = [code[i:j] for i, j in zip([0] + cuts, cuts + [len(code)])]
    return AlgebraSpec(n, blocks)


def random_block_unitary(rng: random.Random, s: AlgebraSpec, levels=(2, 3)) -> Element:
    """Signed permutation of level-L matrix units inside each block."""
    from cuntzalg import uniformize

    terms = {}
    for j in range(1, s.k + 1):
        level = max(rng.choice(levels), s.level)
        words = list(uniformize(s, level).block(j))
        images = words[:]
        rng.shuffle(images)
        for src, dst in zip(words, images):
            terms[(dst, src)] = rng.choice([Scalar(1), Scalar(-1)])
    return Element(s.n, terms)
