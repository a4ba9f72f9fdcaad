"""Braid monodromy factorizations and the groups they present.

The package computes with braid monodromy factorizations of plane branch
curves: exact braid arithmetic (Garside normal form), halftwist algebra,
factorization files, curve-complement group presentations, subgroup
presentations of branched covers, and torus mapping-class-group lifts.
"""

from .braids import (
    ArtinWord,
    GarsideNormalForm,
    artin_image,
    compose,
    exponent_sum,
    full_twist,
    garside_normal_form,
    half_twist_delta,
    invert,
    linking_number,
    meridian_image,
    permutation_of,
    words_equal,
)
from .covers import (
    MonodromyMap,
    boundary_loop_quotient,
    monodromy_graph,
    rs_presentation,
    schreier_transversal,
)
from .factorization import (
    BMF,
    LabelMap,
    builtin_fixture,
    complete_branch_points,
    degree_census,
    forgetting_degree,
    is_delta_squared,
    parse_bmf,
    print_bmf,
    product_word,
)
from .halftwists import (
    Atom,
    Composite,
    Factor,
    FullTwistBase,
    Puncture,
    band_word,
    conjugate_factor,
    expand_composite,
    factor_word,
)
from .mcg import (
    HomologyClass,
    MCGFactorization,
    PoweredTwist,
    dehn_twist_matrix,
    lift_factorization,
    mcg_cokernel,
    verify_mcg_identity,
)
from .permutations import Permutation
from .snf import AbelianGroup, IntMatrix, smith_normal_form
from .vankampen import (
    Presentation,
    abelianization,
    presentation_affine,
    presentation_projective,
    relation_from_factor,
    tietze_simplify,
)
from .words import FreeWord

__all__ = [name for name in dir() if not name.startswith("_")]
