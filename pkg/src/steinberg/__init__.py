"""Exact-arithmetic word problem, spinor norm and double-coset toolkit for
symplectic and orthogonal similitude groups over odd prime fields and Q."""

from .field import Field, QQ, SquareClass, square_class, canonical_nonsquare
from .matrix import Matrix
from .forms import (
    Family,
    GroupDescriptor,
    build_descriptor,
    is_member,
    multiplier,
    twisted_epsilon,
)
from .generators import (
    GeneratorToken,
    Word,
    derived_h,
    derived_w,
    evaluate_word,
    parse_token,
    parse_word,
    token_inverse,
    token_matrix,
)
from .eliminate import Decomposition, decompose, decompose_gl, word_length_stats
from .spinor import (
    in_commutator_subgroup,
    reflection_factorization,
    spinor_norm,
    wall_spinor_norm,
)
from .coset import CosetLabel, coset_census, coset_label, is_in_parabolic
from .harness import Enumeration, enumerate_group, random_member

__all__ = [
    "Field",
    "QQ",
    "SquareClass",
    "square_class",
    "canonical_nonsquare",
    "Matrix",
    "Family",
    "GroupDescriptor",
    "build_descriptor",
    "is_member",
    "multiplier",
    "twisted_epsilon",
    "GeneratorToken",
    "Word",
    "derived_h",
    "derived_w",
    "evaluate_word",
    "parse_token",
    "parse_word",
    "token_inverse",
    "token_matrix",
    "Decomposition",
    "decompose",
    "decompose_gl",
    "word_length_stats",
    "spinor_norm",
    "wall_spinor_norm",
    "reflection_factorization",
    "in_commutator_subgroup",
    "CosetLabel",
    "coset_label",
    "coset_census",
    "is_in_parabolic",
    "Enumeration",
    "enumerate_group",
    "random_member",
]

__version__ = "0.1.0"
