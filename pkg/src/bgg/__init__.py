"""Exact-arithmetic construction and verification of signed Verma-module
complexes (and their parabolic quotients) for Kac-Moody algebras, with a
quantum-group analog over the rational-function field in q.
"""

from .cartan import (
    GCM,
    Weight,
    dot_action_simple,
    pairing,
    rho,
    simple_root_weight,
    symmetrizer,
    validate_gcm,
    weight,
)
from .characters import (
    denominator_identity_check,
    euler_check,
    freudenthal,
    verma_character,
)
from .complexes import BGGComplex, ParabolicBGGComplex, build_bgg, build_bggl
from .nilpotent import build_nilpotent, split_parabolic
from .quantum import QuantumEngine, q_serre_ideal_degree, quantum_engine
from .verma import (
    InclusionFamily,
    VermaEngine,
    generalized_verma_dims,
    integrable_quotient,
    singular_vectors,
)
from .weyl import BruhatTable, WeylGroup, enumerate_for_depth, is_reflection

__all__ = [
    "GCM",
    "Weight",
    "BGGComplex",
    "BruhatTable",
    "InclusionFamily",
    "ParabolicBGGComplex",
    "QuantumEngine",
    "VermaEngine",
    "WeylGroup",
    "build_bgg",
    "build_bggl",
    "build_nilpotent",
    "denominator_identity_check",
    "dot_action_simple",
    "enumerate_for_depth",
    "euler_check",
    "freudenthal",
    "generalized_verma_dims",
    "integrable_quotient",
    "is_reflection",
    "pairing",
    "q_serre_ideal_degree",
    "quantum_engine",
    "rho",
    "simple_root_weight",
    "singular_vectors",
    "split_parabolic",
    "symmetrizer",
    "validate_gcm",
    "verma_character",
    "weight",
]
