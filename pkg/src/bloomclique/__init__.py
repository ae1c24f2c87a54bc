"""Planted-clique Bloom filters as candidate one-way functions.

An input string picks a log2(n)-vertex clique of an n-vertex graph and
hashes its edges into succinct filter arrays.  Recovering any generating
clique from the arrays is the inversion problem; this package provides
the four construction variants, brute-force inversion oracles, exact
log2-domain probability bounds, and Monte Carlo harnesses that check the
bounds at desk scale.
"""

from ._kernels import BACKEND
from .analysis import (
    LogProb,
    birthday_collision,
    constants_table,
    derived_params_extra,
    last_ratio_restated,
    log2_int,
    masked_map_probability,
    spurious_sum,
    term_exact,
    term_ratio,
    term_simplified,
    total_bound,
)
from .bits import BitArray
from .errors import (
    BloomCliqueError,
    DomainError,
    GuardExceeded,
    IndexOutOfRange,
    LengthMismatch,
    MalformedSolution,
    NotEnoughTriples,
    NotPowerOfTwo,
    NotStrictlyOrdered,
    OutOfRange,
    ParseError,
    StringTooShort,
    TooSmall,
    UnqueryableVariant,
)
from .experiments import (
    TrialReport,
    attack_simulation,
    density_experiment,
    gnp_spurious_trials,
    rng_for_trial,
    univalence_trials,
)
from .extract import (
    VARIANTS,
    CliqueSeed,
    RandomString,
    extract_distinct_vertices,
    extract_hash_params,
    required_bits,
)
from .fileformat import (
    parse_instance,
    parse_solution,
    serialize_instance,
    serialize_solution,
)
from .hashing import (
    HASH_KINDS,
    CWHashSpec,
    PolyHashSpec,
    ToeplitzHashSpec,
    cw_hash,
    decode_edge,
    derive_specs_from_clique,
    encode_edge,
    hash_value,
    poly_hash,
    toeplitz_hash,
)
from .oracle import (
    ExplicitGraph,
    count_preimages,
    find_cliques,
    materialize,
    measure_density,
    preimages,
)
from .owf import (
    GenerationResult,
    Instance,
    Solution,
    array_densities,
    clique_edges,
    edge_query_batch,
    generate,
    generate_basic,
    generate_derived,
    generate_masked,
    generate_multi,
    implicit_edge_query,
    rebuild_arrays,
    recovered_order,
    verify,
)
from .params import ParamSet, derive_params, smallest_prime_greater

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BitArray",
    "BloomCliqueError",
    "CWHashSpec",
    "CliqueSeed",
    "DomainError",
    "ExplicitGraph",
    "GenerationResult",
    "GuardExceeded",
    "HASH_KINDS",
    "IndexOutOfRange",
    "Instance",
    "LengthMismatch",
    "LogProb",
    "MalformedSolution",
    "NotEnoughTriples",
    "NotPowerOfTwo",
    "NotStrictlyOrdered",
    "OutOfRange",
    "ParamSet",
    "ParseError",
    "PolyHashSpec",
    "RandomString",
    "Solution",
    "StringTooShort",
    "ToeplitzHashSpec",
    "TrialReport",
    "TooSmall",
    "UnqueryableVariant",
    "VARIANTS",
    "array_densities",
    "attack_simulation",
    "birthday_collision",
    "clique_edges",
    "constants_table",
    "count_preimages",
    "cw_hash",
    "decode_edge",
    "density_experiment",
    "derive_params",
    "derive_specs_from_clique",
    "derived_params_extra",
    "edge_query_batch",
    "encode_edge",
    "extract_distinct_vertices",
    "extract_hash_params",
    "find_cliques",
    "generate",
    "generate_basic",
    "generate_derived",
    "generate_masked",
    "generate_multi",
    "gnp_spurious_trials",
    "hash_value",
    "implicit_edge_query",
    "last_ratio_restated",
    "log2_int",
    "masked_map_probability",
    "materialize",
    "measure_density",
    "parse_instance",
    "parse_solution",
    "poly_hash",
    "preimages",
    "rebuild_arrays",
    "recovered_order",
    "required_bits",
    "rng_for_trial",
    "serialize_instance",
    "serialize_solution",
    "smallest_prime_greater",
    "spurious_sum",
    "term_exact",
    "term_ratio",
    "term_simplified",
    "toeplitz_hash",
    "total_bound",
    "univalence_trials",
    "verify",
]
