"""Exact computations for bound quiver algebras with special loops."""

from .blocks import BlockDecomposition, assemble_rep, project_rep, rho_blocks
from .classify import (
    UnsupportedPresentation,
    classify,
    is_clannish,
    is_finite_dimensional,
    is_gentle_pair,
    is_skewed_gentle,
    is_special_biserial,
)
from .dsl import load_presentation, parse_presentation, serialize_presentation
from .formats import parse_decomposition, parse_rep, serialize_rep
from .linalg import Field, Matrix
from .quiver import (
    Arrow,
    IdempotentLoop,
    LinearCombination,
    Path,
    Presentation,
    Quiver,
    ZeroPath,
)
from .repvar import (
    Representation,
    check_rep,
    component_dim,
    hom_dim,
    idempotent_component,
    maximal_rank_sequences,
    orbit_dim,
    tangent_dim,
)
from .split import skewed_gentle_envelope, split_presentation, split_rep
from .stability import check_stability, moduli_shape, subrep_dimension_vectors, weight_pairing
from .words import band_module, enumerate_bands, enumerate_strings, string_module

__all__ = [
    "Arrow",
    "assemble_rep",
    "band_module",
    "BlockDecomposition",
    "check_rep",
    "check_stability",
    "classify",
    "component_dim",
    "enumerate_bands",
    "enumerate_strings",
    "Field",
    "hom_dim",
    "idempotent_component",
    "IdempotentLoop",
    "is_clannish",
    "is_finite_dimensional",
    "is_gentle_pair",
    "is_skewed_gentle",
    "is_special_biserial",
    "LinearCombination",
    "load_presentation",
    "Matrix",
    "maximal_rank_sequences",
    "moduli_shape",
    "orbit_dim",
    "parse_decomposition",
    "parse_presentation",
    "parse_rep",
    "Path",
    "Presentation",
    "project_rep",
    "Quiver",
    "Representation",
    "rho_blocks",
    "serialize_presentation",
    "serialize_rep",
    "skewed_gentle_envelope",
    "split_presentation",
    "split_rep",
    "string_module",
    "subrep_dimension_vectors",
    "tangent_dim",
    "UnsupportedPresentation",
    "weight_pairing",
    "ZeroPath",
]
