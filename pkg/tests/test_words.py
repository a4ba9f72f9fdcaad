import pytest
from hypothesis import given
from hypothesis import strategies as st

from braidmono.permutations import Permutation
from braidmono.words import FreeWord, commutator, cyclic_reduce, free_reduce, triple_relation

letters = st.lists(
    st.integers(min_value=-4, max_value=4).filter(lambda x: x != 0), max_size=24
)


@given(letters)
def test_free_reduction_is_idempotent(ls):
    once = free_reduce(ls)
    assert free_reduce(once) == once


@given(letters)
def test_inverse_cancels(ls):
    w = FreeWord(4, tuple(ls))
    assert (w * w.inverse()).letters == ()


@given(letters)
def test_cyclic_reduction_has_no_cancelling_ends(ls):
    w = cyclic_reduce(tuple(ls))
    assert not (len(w) >= 2 and w[0] == -w[-1])


def test_substitute():
    w = FreeWord(2, (1, 2, -1))
    out = w.substitute({2: FreeWord(2, (1,))}, 2)
    assert out.letters == (1,)


def test_exponent_sums():
    assert FreeWord(3, (1, 2, -1, 2, 3)).exponent_sums() == (0, 2, 1)


def test_relator_shapes():
    a, b = FreeWord(2, (1,)), FreeWord(2, (2,))
    assert commutator(a, b).letters == (1, 2, -1, -2)
    assert triple_relation(a, b).letters == (1, 2, 1, -2, -1, -2)


def test_letter_range_enforced():
    with pytest.raises(ValueError):
        FreeWord(2, (3,))


def test_permutation_basics():
    s = Permutation.transposition(3, 1, 2)
    t = Permutation.transposition(3, 2, 3)
    assert (s * t)(1) == 3  # left-to-right composition
    assert s.inverse() == s
    assert Permutation.identity(3).is_identity()
    assert s.is_transposition()
    assert str(Permutation.from_cycles(3, [(1, 2, 3)])) == "(1 2 3)"


def test_permutation_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation((1, 1, 3))
