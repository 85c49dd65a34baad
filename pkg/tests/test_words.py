import random

import pytest

from cuspidal.words import (GroupMap, Presentation, commutator, conjugate,
                            cyclic_normal_form, cyclic_reduce, format_presentation,
                            format_word, invert, multiply, parse_presentation,
                            parse_word, power, presentation_from_json,
                            presentation_to_json, reduce_word, simplify,
                            simplify_with_map, tietze_eliminate)


def naive_reduce(letters):
    """One-pass-at-a-time cancellation, iterated to a fixed point."""
    out = list(letters)
    changed = True
    while changed:
        changed = False
        for i in range(len(out) - 1):
            if out[i] == -out[i + 1]:
                del out[i:i + 2]
                changed = True
                break
    return tuple(out)


def random_letters(rng, ngen=4, maxlen=12):
    return tuple(rng.choice([s * g for s in (1, -1)
                             for g in range(1, ngen + 1)])
                 for _ in range(rng.randrange(maxlen + 1)))


def random_word(rng, ngen=4, maxlen=12):
    return reduce_word(random_letters(rng, ngen, maxlen))


def test_reduce_matches_naive_fixed_point():
    rng = random.Random(11)
    for _ in range(300):
        w = random_letters(rng)
        assert reduce_word(w) == naive_reduce(w)


def test_multiply_and_invert():
    rng = random.Random(12)
    for _ in range(200):
        u, v = random_word(rng), random_word(rng)
        assert multiply(u, invert(u)) == ()
        assert invert(multiply(u, v)) == multiply(invert(v), invert(u))
        # on reduced inputs, multiplication is concatenation + reduction
        assert multiply(u, v) == reduce_word(tuple(u) + tuple(v))


def test_power_and_commutator():
    assert power((1,), 3) == (1, 1, 1)
    assert power((1, 2), -2) == (-2, -1, -2, -1)
    assert power((1,), 0) == ()
    assert commutator((1,), (2,)) == (-1, -2, 1, 2)
    assert conjugate((1,), (2,)) == (-2, 1, 2)  # by^-1 w by


def test_cyclic_normal_form_is_rotation_and_inversion_invariant():
    rng = random.Random(13)
    for _ in range(200):
        w = cyclic_reduce(reduce_word(random_word(rng)))
        if not w:
            continue
        nf = cyclic_normal_form(w)
        k = rng.randrange(len(w))
        rotated = w[k:] + w[:k]
        assert cyclic_normal_form(rotated) == nf
        assert cyclic_normal_form(invert(w)) == nf


def test_presentation_validation():
    with pytest.raises(ValueError):
        Presentation(("a", "a"), [])
    with pytest.raises(ValueError):
        Presentation(("a",), [(2,)])
    with pytest.raises(ValueError):
        Presentation(("1bad",), [])


def test_word_parsing_round_trip():
    p = Presentation(("a", "b_2", "c"), [])
    w = p.word("a b_2^-1 c c a^-1")
    assert w == (1, -2, 3, 3, -1)
    assert format_word(w, p.generators) == "a b_2^-1 c c a^-1"
    assert parse_word("", p.generators) == ()


def test_presentation_text_and_json_round_trip():
    p = Presentation(("x", "y"), [(1, 1), (1, 2, -1, -2)])
    q = parse_presentation(format_presentation(p))
    assert q.generators == p.generators and q.relators == p.relators
    r = presentation_from_json(presentation_to_json(p))
    assert r.generators == p.generators and r.relators == p.relators


def test_tietze_eliminate_substitutes_everywhere():
    # <a, b | b = a^2, b^3> -> <a | a^6>
    p = Presentation(("a", "b"), [(2, -1, -1), (2, 2, 2)])
    q = tietze_eliminate(p, "b", (1, 1))
    assert q.generators == ("a",)
    assert q.relators == (cyclic_normal_form((1,) * 6),)


def test_simplify_eliminates_single_occurrence_generators():
    # <a, b, c | c a b, a^2 b^2> : the first relator defines one generator
    # in terms of the others, so simplify must shed a generator and the
    # defining relator
    p = Presentation(("a", "b", "c"), [(3, 1, 2), (1, 1, 2, 2)])
    q = simplify(p, 100)
    assert len(q.generators) == 2
    assert len(q.relators) == 1


def test_simplify_with_map_tracks_images():
    from cuspidal.homcount import identity_perm, iter_homs, word_image

    p = Presentation(("a", "b", "c"), [(3, -1, -2), (1, 1, 1), (2, 2)])
    q, image_map = simplify_with_map(p, 100)
    assert set(image_map) == {"a", "b", "c"}
    gm = GroupMap(p, q, tuple(image_map[g] for g in p.generators))
    # every source relator image must be trivial in the quotient: check in
    # all homomorphisms of q into the symmetric group on 3 symbols
    images = [gm.apply(r) for r in p.relators]
    for h in iter_homs(q, 3):
        asg = {i + 1: perm for i, perm in enumerate(h)}
        for w in images:
            if w:
                assert word_image(w, asg) == identity_perm(3)


def test_group_map_apply():
    src = Presentation(("a",), [])
    tgt = Presentation(("x", "y"), [])
    gm = GroupMap(src, tgt, ((1, 2),))
    assert gm.apply((1, 1)) == (1, 2, 1, 2)
    assert gm.apply((-1,)) == (-2, -1)
