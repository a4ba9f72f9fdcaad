import random

import pytest

from braidmono import factorization as FZ
from braidmono import mcg
from braidmono.covers import parse_monodromy
from braidmono.snf import AbelianGroup, IntMatrix

ALPHA = mcg.HomologyClass(1, 0)
BETA = mcg.HomologyClass(0, 1)
BMA = mcg.HomologyClass(-1, 1)
BM2A = mcg.HomologyClass(-2, 1)

MONODROMY = "gamma1 -> (2 3)\ngamma2 -> (1 3)\ngamma3 -> (1 2)\n"
SEEDS = """
factor 4 -> class (0, 1)
factor 5 -> class (1, 0)
factor 8 -> class (1, 0)
factor 9 -> class (1, 0)
factor 10 -> class (1, 0)
factor 1 -> conjugate-of 4 by Z{1,1'}^-1, Z{3,3'}^-1
factor 2 -> conjugate-of 4 by Z{3,3'}^-1
factor 3 -> conjugate-of 4 by Z{1,1'}^-1
"""


@pytest.fixture(scope="module")
def cayley_lift():
    b = FZ.builtin_fixture("cayley")
    lift, log = mcg.lift_factorization(b, parse_monodromy(MONODROMY), mcg.parse_seeds(SEEDS))
    return lift, log


def test_twist_matrices_match_the_four_displayed():
    assert mcg.dehn_twist_matrix(ALPHA).rows == ((1, 1), (0, 1))
    assert mcg.dehn_twist_matrix(BETA).rows == ((1, 0), (-1, 1))
    assert mcg.dehn_twist_matrix(BMA).rows == ((2, 1), (-1, 0))
    assert mcg.dehn_twist_matrix(BM2A).rows == ((3, 4), (-1, -1))


def test_twist_matrix_formula_on_imprimitive_class():
    assert mcg.dehn_twist_matrix(mcg.HomologyClass(2, 0)).rows == ((1, 4), (0, 1))


def test_zero_class_rejected():
    with pytest.raises(ValueError):
        mcg.dehn_twist_matrix(mcg.HomologyClass(0, 0))


def test_twist_matrices_have_determinant_one():
    rng = random.Random(11)
    for _ in range(40):
        c = mcg.HomologyClass(rng.randint(-5, 5), rng.randint(-5, 5))
        if c.u == 0 and c.v == 0:
            continue
        assert mcg.dehn_twist_matrix(c).determinant() == 1


def test_twist_conjugation_identity():
    # M(g(c)) = M_g M(c) M_g^-1 for any SL2 g and class c.
    rng = random.Random(23)
    for _ in range(25):
        c = mcg.HomologyClass(rng.randint(-3, 3), rng.randint(-3, 3))
        if (c.u, c.v) == (0, 0):
            continue
        g = mcg.dehn_twist_matrix(
            mcg.HomologyClass(rng.choice([1, -1, 2]), rng.choice([0, 1, -1]))
        )
        gc = mcg.apply_matrix(g, c)
        ginv = IntMatrix.from_rows(
            [[g.rows[1][1], -g.rows[0][1]], [-g.rows[1][0], g.rows[0][0]]]
        )
        assert (g * mcg.dehn_twist_matrix(c) * ginv).rows == mcg.dehn_twist_matrix(gc).rows


def test_cayley_lift_class_multiset(cayley_lift):
    lift, _ = cayley_lift
    classes = sorted(((t.cls.u, t.cls.v), t.exponent) for t in lift.twists)
    assert classes == sorted(
        [((1, 0), 1)] * 4 + [((0, 1), 2), ((-1, 1), 2), ((-1, 1), 2), ((-2, 1), 2)]
    )


def test_cusps_are_skipped_with_kernel_check(cayley_lift):
    _, log = cayley_lift
    assert sum("cusp cluster" in line for line in log) == 2


def test_conjugate_seed_transport():
    # conjugating the beta twist by the inverse alpha twist moves beta to beta - alpha
    m = mcg.twist_power_matrix(mcg.PoweredTwist(ALPHA, -1))
    assert mcg.apply_matrix(m, BETA) == BMA
    assert mcg.apply_matrix(m, BMA) == BM2A
    identity = IntMatrix.identity(2)
    assert mcg.apply_matrix(identity, BETA) == BETA


def test_factorization_order_lift_composes_to_identity(cayley_lift):
    lift, _ = cayley_lift
    assert mcg.verify_mcg_identity(lift)


def test_displayed_eight_twist_identity():
    seq = mcg.MCGFactorization(
        (
            mcg.PoweredTwist(ALPHA, 1),
            mcg.PoweredTwist(ALPHA, 1),
            mcg.PoweredTwist(BETA, 2),
            mcg.PoweredTwist(BMA, 2),
            mcg.PoweredTwist(BMA, 2),
            mcg.PoweredTwist(BM2A, 2),
            mcg.PoweredTwist(ALPHA, 1),
            mcg.PoweredTwist(ALPHA, 1),
        )
    )
    assert mcg.verify_mcg_identity(seq, reverse=True)


def test_empty_factorization_is_identity():
    assert mcg.verify_mcg_identity(mcg.MCGFactorization(()))


def test_cokernel_is_z2(cayley_lift):
    lift, _ = cayley_lift
    assert mcg.mcg_cokernel(lift) == AbelianGroup((2,), 0)


def test_single_alpha_twist_cokernel():
    lift = mcg.MCGFactorization((mcg.PoweredTwist(ALPHA, 1),))
    assert mcg.mcg_cokernel(lift) == AbelianGroup((), 1)


def test_relation_columns_stay_in_alpha_2beta_span(cayley_lift):
    lift, _ = cayley_lift
    assert mcg.columns_in_expected_span(lift)


def test_unliftable_factor_is_reported():
    b = FZ.builtin_fixture("cayley")
    seeds = mcg.parse_seeds("factor 4 -> class (0, 1)\n")
    with pytest.raises(mcg.LiftError):
        mcg.lift_factorization(b, parse_monodromy(MONODROMY), seeds)


def test_wrong_conjugate_declaration_is_rejected():
    b = FZ.builtin_fixture("cayley")
    seeds = mcg.parse_seeds(
        SEEDS.replace(
            "factor 2 -> conjugate-of 4 by Z{3,3'}^-1",
            "factor 2 -> conjugate-of 4 by Z{1,1'}^-1",
        )
    )
    with pytest.raises(mcg.LiftError):
        mcg.lift_factorization(b, parse_monodromy(MONODROMY), seeds)


def test_seed_parse_errors():
    with pytest.raises(ValueError):
        mcg.parse_seeds("factor one -> class (0, 1)\n")
