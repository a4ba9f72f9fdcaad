import pytest

from braidmono import factorization as FZ
from braidmono import vankampen as VK
from braidmono.covers import (
    MonodromyGraph,
    MonodromyMap,
    boundary_loop_quotient,
    boundary_loops,
    eta_name,
    monodromy_graph,
    parse_monodromy,
    rs_generators,
    rs_presentation,
    schreier_transversal,
)
from braidmono.vankampen import Presentation
from braidmono.words import FreeWord

MONODROMY_TEXT = "gamma1 -> (2 3)\ngamma2 -> (1 3)\ngamma3 -> (1 2)\n"


@pytest.fixture(scope="module")
def simplified():
    affine = VK.presentation_affine(FZ.builtin_fixture("cayley"))
    pres, _ = VK.tietze_simplify(affine)
    return pres


@pytest.fixture(scope="module")
def mono():
    return parse_monodromy(MONODROMY_TEXT)


def test_parse_monodromy(mono):
    assert mono.transposition("γ1") == (2, 3)
    assert mono.transposition("γ3") == (1, 2)


def test_map_kills_relators(simplified, mono):
    assert mono.kills(simplified) == []


def test_map_that_does_not_kill_is_reported(simplified):
    bad = MonodromyMap(3, (("γ1", (2, 3)), ("γ2", (2, 3)), ("γ3", (1, 2))))
    with pytest.raises(ValueError):
        monodromy_graph(simplified, bad)


def test_triangle_graph(simplified, mono):
    g = monodromy_graph(simplified, mono)
    assert g.edges == ((2, 3), (1, 3), (1, 2))
    assert g.is_connected()


def test_single_edge_transversal():
    p = Presentation(("γ1",), ())
    m = MonodromyMap(2, (("γ1", (1, 2)),))
    data = schreier_transversal(monodromy_graph(p, m))
    assert data.chains == ((), (1,))  # RS = {Id, γ1}


def test_disconnected_graph_rejected():
    g = MonodromyGraph(4, ((1, 2), (3, 4)))
    assert not g.is_connected()
    with pytest.raises(ValueError):
        schreier_transversal(g)


def test_subtree_policy_reproduces_chains(simplified, mono):
    data = schreier_transversal(monodromy_graph(simplified, mono))
    assert data.tree_edges == (1, 3)
    assert data.chains == ((), (3,), (3, 1))  # RS = {Id, γ3, γ3 γ1}


def test_eta_words_match_the_nine_expected(simplified, mono):
    data = schreier_transversal(monodromy_graph(simplified, mono))
    table = {
        name: (word.letters, trivial)
        for name, word, trivial in rs_generators(simplified, mono, data)
    }
    assert table[eta_name(1, 1)] == ((1,), False)
    assert table[eta_name(1, 2)] == ((2, -1, -3), False)
    assert table[eta_name(1, 3)] == ((), True)
    assert table[eta_name(2, 1)] == ((), True)
    assert table[eta_name(2, 2)] == ((3, 2, -3), False)
    assert table[eta_name(2, 3)] == ((3, 3), False)
    assert table[eta_name(3, 1)] == ((3, 1, 1, -3), False)
    assert table[eta_name(3, 2)] == ((3, 1, 2), False)
    assert table[eta_name(3, 3)] == ((3, 1, 3, -1, -3), False)


def test_schreier_index_law(simplified, mono):
    data = schreier_transversal(monodromy_graph(simplified, mono))
    gens = rs_generators(simplified, mono, data)
    n, d = simplified.rank(), mono.degree
    assert len(gens) == n * d
    assert sum(1 for *_, trivial in gens if not trivial) == n * d - (d - 1)


def test_eta_words_stabilize_the_basepoint(simplified, mono):
    data = schreier_transversal(monodromy_graph(simplified, mono))
    for _, word, _ in rs_generators(simplified, mono, data):
        assert mono.word_permutation(simplified, word)(1) == 1


def test_rs_presentation_generator_count(simplified, mono):
    sub, _ = rs_presentation(simplified, mono)
    assert len(sub.generators) == 7


def test_rs_rewriting_of_identification_is_trivial():
    p = Presentation(("γ1", "γ2"), (FreeWord(2, (1, -2)),))
    m = MonodromyMap(2, (("γ1", (1, 2)), ("γ2", (1, 2))))
    sub, _ = rs_presentation(p, m)
    # the rewritten identification relators freely collapse or die in cleanup
    assert all(len(r) <= 2 for r in sub.relators)


def test_rs_on_projective_presentation_abelianization(simplified, mono):
    from braidmono.snf import invariant_factors_by_minors

    affine = VK.presentation_affine(FZ.builtin_fixture("cayley"))
    proj = VK.presentation_projective(affine, affine.generators)
    psimp, _ = VK.tietze_simplify(proj, VK.SimplifyPolicy(drop_redundant=True))
    sub, _ = rs_presentation(psimp, mono)
    group = VK.abelianization(sub)
    # frozen computed value for the index-3 stabilizer of the projective group,
    # cross-checked against the gcd-of-minors oracle
    assert group == VK.AbelianGroup((2, 2), 1)
    oracle = invariant_factors_by_minors(VK.exponent_matrix(sub))
    assert tuple(d for d in oracle if d > 1) == (2, 2)


def test_boundary_loops_classes(simplified, mono):
    data = schreier_transversal(monodromy_graph(simplified, mono))
    loops = boundary_loops(simplified, mono, data)
    singles = {pairs[0] for kind, pairs in loops if len(pairs) == 1}
    assert singles == {(1, 1), (2, 2), (3, 3), (2, 3), (3, 1)}
    pair_loops = {pairs for kind, pairs in loops if len(pairs) == 2}
    assert ((1, 2), (3, 2)) in pair_loops


def test_boundary_quotient_is_order_two(simplified, mono):
    sub, data = rs_presentation(simplified, mono)
    quotient, log = boundary_loop_quotient(sub, simplified, mono, data)
    assert len(quotient.generators) == 1
    assert [r.letters for r in quotient.relators] == [(1, 1)]
    assert VK.abelianization(quotient) == VK.AbelianGroup((2,), 0)
    # every logged move preserves the group
    groups = {str(VK.abelianization(m.result)) for m in log}
    assert groups == {"Z/2"}


def test_quotient_survivor_is_a_loop_through_the_middle_generator(simplified, mono):
    sub, data = rs_presentation(simplified, mono)
    quotient, _ = boundary_loop_quotient(sub, simplified, mono, data)
    (survivor,) = quotient.generators
    table = {name: word for name, word, _ in rs_generators(simplified, mono, data)}
    assert survivor in (eta_name(1, 2), eta_name(3, 2))
    # the two surviving loops multiply to the square of the middle generator
    product = table[eta_name(1, 2)] * table[eta_name(3, 2)]
    assert product == FreeWord(3, (2, 2))
