"""Exact computations with normalizers of corner subalgebras of the Cuntz algebra O_n."""
from .algebra import (
    AlgebraError,
    Element,
    SliceMatrix,
    Zero,
    degree_split,
    equals,
    expand_to_level,
    is_homogeneous,
    is_in_core,
    is_partial_isometry,
    is_projection,
    is_unitary,
    mono_mul,
    mul,
    normal_form,
    phi_shift,
    slice_equal,
    slice_matrix,
    star,
    trace,
)
from .expr import ParseError, parse_element, render_element
from .kernels import BACKEND
from .normalizer import (
    Factorization,
    NormalizerError,
    NormalizerUnitary,
    NotNormalizer,
    build_U_sigma,
    example3_unitary,
    factorize,
    group_law_check,
    lemma1_check,
    verify_U1,
    verify_U2,
    verify_U3,
)
from .scalar import Scalar
from .subalg import (
    AlgebraSpec,
    Perm,
    SpecError,
    build_conjugator,
    enumerate_S_sim,
    equivalence_classes,
    is_admissible,
    uniformize,
    validate_spec,
)
from .words import (
    Alphabet,
    DiagonalProjection,
    WordError,
    expand_word,
    lex_compare,
    prefix_code_census,
    validate_prefix_code,
)

__version__ = "0.1.0"

__all__ = [
    "ParseError",
    "Scalar",
    "parse_element",
    "render_element",
    "AlgebraError",
    "AlgebraSpec",
    "Alphabet",
    "BACKEND",
    "DiagonalProjection",
    "Element",
    "Factorization",
    "NormalizerError",
    "NormalizerUnitary",
    "NotNormalizer",
    "Perm",
    "SliceMatrix",
    "SpecError",
    "WordError",
    "Zero",
    "build_U_sigma",
    "build_conjugator",
    "degree_split",
    "enumerate_S_sim",
    "equals",
    "equivalence_classes",
    "example3_unitary",
    "expand_to_level",
    "expand_word",
    "factorize",
    "group_law_check",
    "is_admissible",
    "is_homogeneous",
    "is_in_core",
    "is_partial_isometry",
    "is_projection",
    "is_unitary",
    "lemma1_check",
    "lex_compare",
    "mono_mul",
    "mul",
    "normal_form",
    "phi_shift",
    "prefix_code_census",
    "slice_equal",
    "slice_matrix",
    "star",
    "trace",
    "uniformize",
    "validate_prefix_code",
    "validate_spec",
    "verify_U1",
    "verify_U2",
    "verify_U3",
]
