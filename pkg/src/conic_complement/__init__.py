"""Exact computations in the automorphism group of the complement of the
conic xz + y^2 = 0 in the projective plane."""

from .fields import NEG_INF, FieldSpec, RATIONALS, Scalar, field_of
from .poly import TriPoly, UniPoly, parse_poly, q0_form, tri_eval
from .subalgebra import subalgebra_membership
from .conic import (
    INFINITY,
    Conic,
    ProjLine,
    ProjPoint,
    normalize_conic,
    on_conic,
    pencil_member,
    tangent_line,
)
from .curves import CurveParam, line_L0, line_L1, validate
from .group import (
    FiberedLetter,
    GroupWord,
    MoebiusLetter,
    NormalWord,
    apply_letter_curve,
    apply_letter_point,
    apply_word_curve,
    apply_word_point,
    gamma,
    invert_word,
    normal_form,
    q0_pullback_check,
    scaling_character,
)
from .lines import (
    degree_conditions,
    double_cover_chart,
    embedding_report,
    exotic_line,
    is_closed_embedding,
    rectify,
)
from .chains import apply_move, dg_invariant, reachable, to_standard_form

__version__ = "0.1.0"
