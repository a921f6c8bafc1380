import itertools
import math
import random
from fractions import Fraction

import pytest

from cuntzalg.algebra import Element, equals, is_in_core, is_unitary, mul, star
from cuntzalg.subalg import (
    AlgebraSpec,
    Perm,
    SpecError,
    build_conjugator,
    enumerate_S_sim,
    equivalence_classes,
    is_admissible,
    ratio_power_of_n,
    uniformize,
    validate_spec,
)

from helpers import random_spec


def spec(*blocks, n=2):
    return AlgebraSpec(n, [[list(w) for w in b] for b in blocks])


MIXED = spec([(1, 1)], [(1, 2)], [(2, 1), (2, 2)])
EX3 = spec([(1,)], [(2, 1)], [(2, 2)])


def test_validate_spec_examples():
    assert validate_spec(spec([(1,)], [(2, 1)], [(2, 2)])).ok
    rep = validate_spec(spec([(1,)], [(1, 2)]))
    assert not rep.ok and any("prefix" in p for p in rep.problems)
    rep = validate_spec(spec([(1, 1)], [(1, 2)]))
    assert not rep.ok and rep.trace_sum == Fraction(1, 2)


def test_validate_spec_other_violations():
    assert not validate_spec(AlgebraSpec(2, [])).ok
    assert not validate_spec(spec([(1,)], [], [(2,)])).ok
    assert not validate_spec(spec([(1,), (1,)], [(2,)])).ok
    with pytest.raises(SpecError):
        spec([(3,)])


def test_uniformize_examples():
    u = uniformize(spec([(1,)], [(2, 1), (2, 2)]))
    assert u.level == 2
    assert u.blocks == (((1, 1), (1, 2)), ((2, 1), (2, 2)))
    assert u.sizes == [2, 2]
    assert u.counts == [0, 2, 4]
    s = spec([(2, 2), (2, 1)], [(1, 1), (1, 2)])
    assert uniformize(s).blocks == (((2, 1), (2, 2)), ((1, 1), (1, 2)))
    assert uniformize(spec([(1, 1)], [(1, 2)], [(2,)])).sizes == [1, 1, 2]
    with pytest.raises(SpecError):
        uniformize(spec([(1, 1)], [(1, 2)]))


@pytest.mark.parametrize("seed", range(30))
def test_uniformize_preserves_blocks(seed):
    rng = random.Random(seed)
    s = random_spec(rng, rng.choice([2, 3]))
    u = uniformize(s)
    assert sum(u.sizes) == s.n**u.level
    assert sorted(u.words) == sorted(itertools.product(range(1, s.n + 1), repeat=u.level))
    for j in range(1, s.k + 1):
        assert equals(s.block_element(j), u.block_element(j))
        assert list(u.block(j)) == sorted(u.block(j))
        assert Fraction(u.sizes[j - 1], s.n**u.level) == s.traces()[j - 1]


@pytest.mark.parametrize(
    "r, n, m",
    [(Fraction(1, 2), 2, -1), (8, 2, 3), (Fraction(3, 4), 2, None), (1, 3, 0), (Fraction(1, 9), 3, -2), (6, 3, None)],
)
def test_ratio_power_of_n(r, n, m):
    assert ratio_power_of_n(r, n) == m


def test_ratio_power_rejects_nonpositive():
    with pytest.raises(ValueError):
        ratio_power_of_n(0, 2)


def test_equivalence_classes_examples():
    assert equivalence_classes(MIXED) == [(1, 2, 3)]
    assert equivalence_classes(spec([(1, 1), (1, 2), (2, 1)], [(2, 2)])) == [(1,), (2,)]
    assert equivalence_classes(spec([(1,)], [(2, 1)], [(2, 2)])) == [(1, 2, 3)]


@pytest.mark.parametrize("seed", range(30))
def test_equivalence_is_a_partition(seed):
    rng = random.Random(seed)
    s = random_spec(rng, rng.choice([2, 3]), max_k=5)
    classes = equivalence_classes(s)
    assert sorted(j for c in classes for j in c) == list(range(1, s.k + 1))
    t = s.traces()
    related = lambda i, j: ratio_power_of_n(t[i - 1] / t[j - 1], s.n) is not None  # noqa: E731
    for i, j in itertools.product(range(1, s.k + 1), repeat=2):
        same = any(i in c and j in c for c in classes)
        assert same == related(i, j) == related(j, i)
    assert len(enumerate_S_sim(s)) == math.prod(math.factorial(len(c)) for c in classes)


def test_is_admissible_examples():
    assert all(is_admissible(MIXED, p) for p in enumerate_S_sim(MIXED))
    two = spec([(1, 1), (1, 2), (2, 1)], [(2, 2)])
    assert not is_admissible(two, Perm((2, 1)))
    # traces 1/3, 2/9, 4/9: no ratio is a power of 3
    s = AlgebraSpec(3, [[[1]], [[2, 1], [2, 2]], [[3], [2, 3]]])
    assert equivalence_classes(s) == [(1,), (2,), (3,)]
    s = AlgebraSpec(2, [[[1]], [[2, 1], [2, 2, 1]], [[2, 2, 2]]])
    assert equivalence_classes(s) == [(1, 3), (2,)]
    assert is_admissible(s, Perm.from_cycles(3, [1, 3]))
    with pytest.raises(SpecError):
        is_admissible(s, Perm((1, 2)))


def test_enumerate_examples():
    assert len(enumerate_S_sim(MIXED)) == 6
    assert enumerate_S_sim(spec([(1, 1), (1, 2), (2, 1)], [(2, 2)])) == [Perm((1, 2))]
    s = AlgebraSpec(2, [[[1]], [[2, 2, 2]], [[2, 1], [2, 2, 1]]])
    perms = enumerate_S_sim(s)
    assert perms == [Perm((1, 2, 3)), Perm((2, 1, 3))]
    with pytest.raises(SpecError):
        enumerate_S_sim(MIXED, limit=5)


def test_perm_helpers():
    p = Perm.parse("1:3,2:2,3:1")
    assert p.images == (3, 2, 1)
    assert p == Perm.from_cycles(3, [1, 3])
    assert p.format() == "1:3,2:2,3:1"
    q = Perm.from_cycles(3, [1, 2, 3])
    assert (p * q)(1) == p(q(1))
    assert (q * q.inverse()).is_identity()
    for bad in ("1:2", "1:1,1:2", "a:b", "1:2,2:2"):
        with pytest.raises(SpecError):
            Perm.parse(bad, 2)


def test_spec_json_round_trip(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text('{"n": 2, "blocks": [[[1]], [[2,1]], [[2,2]]]}')
    s = AlgebraSpec.load(path)
    assert s == EX3
    assert AlgebraSpec.from_json(s.to_json()) == s
    for bad in ('{"n": 2}', '{"n": 2, "blocks": [1]}', "[]"):
        with pytest.raises(SpecError):
            AlgebraSpec.from_json(bad)


def _check_conjugator(a, b):
    u = build_conjugator(a, b)
    assert is_unitary(u)
    assert is_in_core(u)
    for j in range(1, a.k + 1):
        assert equals(mul(mul(u, a.block_element(j)), star(u)), b.block_element(j))
    return u


def test_build_conjugator_examples():
    assert _check_conjugator(MIXED, MIXED).same_terms(Element.one(2))
    a = spec([(1, 1)], [(1, 2), (2, 1), (2, 2)])
    b = spec([(2, 2)], [(1, 1), (1, 2), (2, 1)])
    _check_conjugator(a, b)
    with pytest.raises(SpecError):
        build_conjugator(spec([(1,)], [(2,)]), spec([(1, 1)], [(1, 2), (2,)]))
    with pytest.raises(SpecError):
        build_conjugator(spec([(1,)], [(2,)]), spec([(1,), (2,)]))


@pytest.mark.parametrize("seed", range(20))
def test_build_conjugator_random(seed):
    rng = random.Random(seed)
    a = random_spec(rng, 2)
    # same traces, different words: relabel letters 1 <-> 2
    b = AlgebraSpec(2, [[[3 - x for x in w] for w in blk] for blk in a.blocks])
    _check_conjugator(a, b)
