"""Ring toolkit for graded extensions of fusion rings."""
from .core import (AxiomReport, FusionRing, Violation, as_vector, basis_vector, is_commutative, multiply,
                   relabel, restrict, ring_from_rules, simple_index, subring_generated, support,
                   tensor_product, validate_ring)
from .errors import (ComputationError, ConfigurationError, FusionError, PrecisionError, PreconditionError,
                     StructuralError, TheoryViolation)
from .extensions import (Factorization, SimilarityWitness, check_exact_factorization, factorize_via_pointed,
                         is_similar_component, is_slightly_trivial, synthesize_slightly_trivial)
from .fpdim import Dim, compare_dims, fp_dim_ring, fp_dim_simple, fp_dims, left_mult_matrix, quantize_subtwo, \
    smallest_dim_index
from .grading import (ComponentType, Grading, check_component_dims, component_type, invertible_objects,
                      pointed_part, universal_grading, validate_grading)
from .groups import FiniteGroup, cyclic, direct_product, group_from_name
from .library import a15, fibonacci, ising, pointed, rank_one, rep_s3
from .ringio import emit_ring, load_ring, parse_document, parse_ring

__all__ = [
    'AxiomReport', 'FusionRing', 'Violation', 'as_vector', 'basis_vector', 'is_commutative', 'multiply',
    'relabel', 'restrict', 'ring_from_rules', 'simple_index', 'subring_generated', 'support',
    'tensor_product', 'validate_ring', 'ComputationError', 'ConfigurationError', 'FusionError',
    'PrecisionError', 'PreconditionError', 'StructuralError', 'TheoryViolation', 'Factorization',
    'SimilarityWitness', 'check_exact_factorization', 'factorize_via_pointed', 'is_similar_component',
    'is_slightly_trivial', 'synthesize_slightly_trivial', 'Dim', 'compare_dims', 'fp_dim_ring',
    'fp_dim_simple', 'fp_dims', 'left_mult_matrix', 'quantize_subtwo', 'smallest_dim_index', 'ComponentType',
    'Grading', 'check_component_dims', 'component_type', 'invertible_objects', 'pointed_part',
    'universal_grading', 'validate_grading', 'FiniteGroup', 'cyclic', 'direct_product', 'group_from_name',
    'a15', 'fibonacci', 'ising', 'pointed', 'rank_one', 'rep_s3', 'emit_ring', 'load_ring', 'parse_document',
    'parse_ring',
]

__version__ = '0.1.0'
