"""Realizing orthogonal groups of rational form families as self-equivalences of Sullivan models."""

from .cdga import (
    Cdga,
    DgaMorphism,
    FreeGCA,
    GcaElement,
    Generator,
    apply_differential,
    check_d_squared,
    format_cdga,
    format_morphism,
    is_chain_map,
    is_minimal,
    parse_cdga,
    parse_morphism,
)
from .errors import *  # noqa: F401,F403
from .families import (
    RealizabilityReport,
    RealizableFamily,
    check_prerealizable,
    check_realizable,
    family_from_forms,
    format_family,
    g2_family,
    make_prerealizable,
    orthogonal_presentation,
    parse_family,
    symmetric_family,
)
from .groups import (
    FiniteMatrixGroup,
    FormFamily,
    act,
    diagonalize_quadratic,
    group_closure,
    invariant_monomials,
    is_orthogonal,
    minimal_generators,
    reynolds,
)
from .model import (
    ClassificationResult,
    ModelSpec,
    SullivanModel,
    build_model,
    classify,
    decompose_A,
    homotopy_witness,
    lift_group_element,
    realize_all,
    scalar_constraints,
    spec_from_model,
)
from .polycore import Poly, VarSpace, parse_poly, substitute_linear
from .qmatrix import QMatrix, parse_matrix, parse_matrix_list

__version__ = "0.1.0"
