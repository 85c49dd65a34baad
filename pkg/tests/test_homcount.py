import itertools
import random

import pytest

from cuspidal.errors import BudgetExceeded, InvalidParameter
from cuspidal.homcount import (compose, count_homs, identity_perm, invert_perm,
                               iter_homs, relator_triviality_check, word_image)
from cuspidal.words import GroupMap, Presentation


def naive_count(p: Presentation, k: int) -> int:
    """Try every assignment of permutations to generators."""
    perms = list(itertools.permutations(range(k)))
    ident = identity_perm(k)
    total = 0
    for assignment in itertools.product(perms, repeat=len(p.generators)):
        asg = {i + 1: perm for i, perm in enumerate(assignment)}
        if all((not r) or word_image(r, asg) == ident for r in p.relators):
            total += 1
    return total


def random_presentation(rng, ngen=2, nrel=2, maxlen=6):
    relators = []
    for _ in range(nrel):
        relators.append(tuple(
            rng.choice([s * g for s in (1, -1) for g in range(1, ngen + 1)])
            for _ in range(rng.randrange(1, maxlen + 1))))
    return Presentation([f"g{i}" for i in range(ngen)], relators)


def test_permutation_algebra():
    a = (1, 2, 0)
    b = (0, 2, 1)
    # left-to-right composition: (a then b)
    assert compose(a, b) == tuple(b[x] for x in a)
    assert compose(a, invert_perm(a)) == identity_perm(3)
    assert word_image((1, -1), {1: a}) == identity_perm(3)


def test_count_matches_naive_enumeration():
    rng = random.Random(31)
    for _ in range(200):
        p = random_presentation(rng)
        k = rng.choice((2, 3))
        assert count_homs(p, k).total == naive_count(p, k)


def test_known_counts():
    # free group of rank 2: every pair of permutations works
    free2 = Presentation(("a", "b"), [])
    assert count_homs(free2, 3).total == 36
    # Z/2 * Z/3: 4 choices of order <= 2 times 3 choices of order dividing 3
    oka3 = Presentation(("a", "b"), [(1, 1), (2, 2, 2)])
    assert count_homs(oka3, 3).total == 12
    # cyclic group of order 2 into S_4: identity + 9 involutions
    z2 = Presentation(("a",), [(1, 1)])
    assert count_homs(z2, 4).total == 10


def test_surjective_counting():
    free1 = Presentation(("a",), [])
    rep = count_homs(free1, 3, count_surjective=True)
    assert rep.total == 6
    assert rep.surjective == 0  # S_3 is not cyclic
    free2 = Presentation(("a", "b"), [])
    rep = count_homs(free2, 2, count_surjective=True)
    assert rep.total == 4 and rep.surjective == 3


def test_symbol_range_validated():
    p = Presentation(("a",), [])
    with pytest.raises(InvalidParameter):
        count_homs(p, 1)
    with pytest.raises(InvalidParameter):
        count_homs(p, 6)


def test_budget_exceeded():
    p = Presentation(tuple(f"g{i}" for i in range(4)), [])
    with pytest.raises(BudgetExceeded):
        count_homs(p, 5, budget=10)


def test_iter_homs_respects_relators():
    p = Presentation(("a", "b"), [(1, 1, 1), (2, 2), (-1, -2, 1, 2)])
    ident = identity_perm(3)
    for h in iter_homs(p, 3):
        asg = {i + 1: perm for i, perm in enumerate(h)}
        for r in p.relators:
            assert word_image(r, asg) == ident


def test_triviality_check_flags_bad_maps():
    src = Presentation(("a",), [(1, 1)])        # Z/2
    tgt = Presentation(("b",), [(1, 1, 1)])     # Z/3
    bad = GroupMap(src, tgt, ((1,),))           # a -> b is not well defined
    rep = relator_triviality_check(bad, 3)
    assert not rep.passed
    assert rep.witnesses
    good = GroupMap(src, tgt, ((),))            # a -> 1 is fine
    rep = relator_triviality_check(good, 3)
    assert rep.passed and not rep.witnesses
    assert rep.homs_checked[3] == 3
