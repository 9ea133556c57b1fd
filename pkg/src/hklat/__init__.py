"""Exact integer quadratic lattices: hyperbolic planes U(N), isotropic vectors
and wall/chamber structure of rank-2 positive cones."""
from .catalog import CatalogEntry, catalog_get, catalog_list
from .chambers import (
    ChamberDecomposition,
    MbmSpec,
    RoundStatus,
    RoundVerdict,
    candidate_walls,
    chambers_rank2,
    is_round,
    nef_isotropic_generators,
    positive_cone_boundary,
)
from .embedding import (
    EmbedResult,
    EmbedStatus,
    UnWitness,
    embed_un,
    round_picard_witness,
    second_intersection,
)
from .errors import ContractViolation, HklatError, InputFormatError, UnsupportedRank
from .isotropy import (
    IsotropicPair,
    IsotropicRay,
    SearchBudget,
    SearchStatus,
    distinct_invariants,
    enumerate_isotropic_pairs,
    enumerate_primitive_isotropic,
    find_isotropic,
    pair_invariant,
)
from .lattice import (
    GramLattice,
    Signature,
    SublatticeEmbedding,
    direct_sum,
    discriminant,
    divisibility,
    eval_form,
    hyperbolic,
    is_primitive_vector,
    quotient_isotropic,
    saturate,
    signature,
    un_recognize,
    value_divisor,
)

__version__ = "0.1.0"
