"""Neighbour-transitive codes in Hamming graphs: constructions, exact
automorphism groups, distance partitions and transitivity certificates."""

from .autsearch import SearchConfig, SearchExhausted, automorphism_group, brute_force_aut, find_equivalence
from .certify import (
    TransitivityCertificate,
    certify_code,
    classify_2nt,
    lemma_checks,
    nt_level,
    theorem_audit,
    verify_extension,
    verify_subgroup,
)
from .codes import (
    Code,
    LinearCode,
    dual,
    even_weight_subcode,
    hadamard12,
    paley_matrix_12,
    parse_code,
    punctured_hadamard,
    read_code,
    repetition_code,
    singleton_check,
    subspace_embed,
    write_code,
)
from .groups import AutElement, AutGroup, generate, read_generators, translation_group, write_generators
from .hamming import BudgetExceeded, HammingScheme, Vertex, distance, sphere
from .perm import PermGroup, StabChain
from .regularity import completely_regular, design_identities, distance_partition, s_regularity, weight_design

__all__ = [
    "AutElement",
    "AutGroup",
    "BudgetExceeded",
    "Code",
    "HammingScheme",
    "LinearCode",
    "PermGroup",
    "SearchConfig",
    "SearchExhausted",
    "StabChain",
    "TransitivityCertificate",
    "Vertex",
    "automorphism_group",
    "brute_force_aut",
    "certify_code",
    "classify_2nt",
    "completely_regular",
    "design_identities",
    "distance",
    "distance_partition",
    "dual",
    "even_weight_subcode",
    "find_equivalence",
    "generate",
    "hadamard12",
    "lemma_checks",
    "nt_level",
    "paley_matrix_12",
    "parse_code",
    "punctured_hadamard",
    "read_code",
    "read_generators",
    "repetition_code",
    "s_regularity",
    "singleton_check",
    "sphere",
    "subspace_embed",
    "theorem_audit",
    "translation_group",
    "verify_extension",
    "verify_subgroup",
    "weight_design",
    "write_code",
    "write_generators",
]

__version__ = "0.1.0"
