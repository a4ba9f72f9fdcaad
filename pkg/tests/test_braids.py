import random

import pytest

from braidmono import braids as B
from braidmono.permutations import Permutation
from braidmono.words import FreeWord


def w(n, *letters):
    return B.word(n, letters)


def test_compose_inverse_pair_cancels():
    assert B.compose(w(3, 1), w(3, -1)).letters == ()


def test_compose_identity():
    assert B.compose(w(3, 1, 2, 1), B.identity(3)).letters == (1, 2, 1)


def test_compose_braid_relation():
    assert B.words_equal(B.compose(w(3, 1), w(3, 2, 1)), w(3, 2, 1, 2))


def test_compose_rejects_strand_mismatch():
    with pytest.raises(ValueError):
        B.compose(w(3, 1), w(4, 1))


def test_invert_examples():
    assert B.invert(B.identity(5)).letters == ()
    assert B.invert(w(3, 1, 2)).letters == (-2, -1)


def test_invert_property_random_words():
    rng = random.Random(20240811)
    for _ in range(100):
        ls = tuple(rng.choice([1, -1]) * rng.randint(1, 5) for _ in range(rng.randint(0, 20)))
        a = w(6, *ls)
        assert B.words_equal(B.compose(a, B.invert(a)), B.identity(6))
        assert B.words_equal_by_action(B.compose(a, B.invert(a)), B.identity(6))


def test_permutation_of_examples():
    assert B.permutation_of(w(3, 1)) == Permutation.transposition(3, 1, 2)
    assert B.permutation_of(B.full_twist(6)).is_identity()
    band13 = w(3, 2, 1, -2)
    assert B.permutation_of(band13) == Permutation.transposition(3, 1, 3)


def test_exponent_sum_examples():
    assert B.exponent_sum(B.full_twist(6)) == 30
    assert B.exponent_sum(w(3, -1, 2)) == 0


def test_linking_number_examples():
    assert B.linking_number(w(2, 1), 1, 2) == 1
    ft = B.full_twist(6)
    assert all(
        B.linking_number(ft, p, q) == 2 for p in range(1, 6) for q in range(p + 1, 7)
    )
    assert sum(
        B.linking_number(ft, p, q) for p in range(1, 6) for q in range(p + 1, 7)
    ) == B.exponent_sum(ft) == 30


def test_linking_number_range_check():
    with pytest.raises(ValueError):
        B.linking_number(w(3, 1), 2, 2)


def test_full_twist_small():
    assert B.full_twist(2).letters == (1, 1)


def test_full_twist_central():
    for k in range(1, 4):
        assert B.words_equal(
            B.compose(B.full_twist(4), w(4, k)), B.compose(w(4, k), B.full_twist(4))
        )


def test_garside_normal_form_identity_and_braid_relation():
    nf = B.garside_normal_form(B.identity(3))
    assert nf.infimum == 0 and nf.factors == ()
    assert B.garside_normal_form(w(3, 1, 2, 1)) == B.garside_normal_form(w(3, 2, 1, 2))


def test_garside_normal_form_reconstruction_round_trip():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.choice([2, 3, 4, 5])
        ls = tuple(rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(rng.randint(0, 16)))
        a = w(n, *ls)
        nf = B.garside_normal_form(a)
        assert B.words_equal(B.normal_form_word(nf), a)
        for factor in nf.factors:
            assert not factor.is_identity()
            assert factor.images != tuple(range(n, 0, -1))


def test_word_problem_matches_artin_action_oracle():
    rng = random.Random(99)
    cases = 0
    while cases < 200:
        n = rng.choice([4, 5, 6])
        a = w(n, *(rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(rng.randint(0, 15))))
        b = w(n, *(rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(rng.randint(0, 15))))
        assert B.words_equal(a, b) == B.words_equal_by_action(a, b)
        cases += 1


def _random_rewrite(rng, letters, n):
    """A braid-relation or free-insertion rewrite preserving the element."""
    letters = list(letters)
    mode = rng.randint(0, 2)
    pos = rng.randint(0, len(letters))
    if mode == 0:
        k = rng.choice([1, -1]) * rng.randint(1, n - 1)
        letters[pos:pos] = [k, -k]
    elif mode == 1 and len(letters) >= 2:
        for i in range(len(letters) - 1):
            a, b = letters[i], letters[i + 1]
            if a > 0 and b > 0 and abs(abs(a) - abs(b)) >= 2:
                letters[i], letters[i + 1] = b, a
                break
    else:
        k = rng.randint(1, n - 2)
        letters[pos:pos] = [k, k + 1, k, -(k + 1), -k, -(k + 1)]
    return tuple(letters)


def test_invariants_constant_under_relation_rewrites():
    rng = random.Random(4242)
    for _ in range(40):
        n = rng.choice([3, 4, 5, 6])
        ls = tuple(rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(rng.randint(1, 12)))
        a = w(n, *ls)
        b = w(n, *_random_rewrite(rng, ls, n))
        assert B.words_equal(a, b)
        assert B.permutation_of(a) == B.permutation_of(b)
        assert B.exponent_sum(a) == B.exponent_sum(b)
        assert all(
            B.linking_number(a, p, q) == B.linking_number(b, p, q)
            for p in range(1, n)
            for q in range(p + 1, n + 1)
        )


def test_artin_image_defining_action():
    assert B.artin_image(w(3, 1), 1).letters == (1, 2, -1)
    assert B.artin_image(w(3, 1), 2).letters == (1,)
    assert B.artin_image(B.identity(3), 3).letters == (3,)


def test_artin_image_full_twist_conjugates_by_boundary():
    for n in (2, 3, 4):
        boundary = tuple(range(1, n + 1))
        for j in range(1, n + 1):
            img = B.artin_image(B.full_twist(n), j)
            expected = FreeWord(n, boundary + (j,) + tuple(-x for x in reversed(boundary)))
            assert img == expected


def test_meridian_image_preserves_descending_boundary():
    rng = random.Random(5)
    for _ in range(25):
        n = rng.choice([3, 4, 5])
        a = w(n, *(rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(rng.randint(0, 12))))
        boundary = FreeWord(n, tuple(range(n, 0, -1)))
        assert B.meridian_image(a, boundary) == boundary


def test_seven_strand_words_work_too():
    assert B.words_equal(w(7, 6, 5, 6), w(7, 5, 6, 5))
    assert B.words_equal(
        B.compose(B.full_twist(7), w(7, 3)), B.compose(w(7, 3), B.full_twist(7))
    )
    assert B.exponent_sum(B.full_twist(7)) == 42
