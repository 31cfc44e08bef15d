//! MDS symbol-pair codes over finite fields.
//!
//! * [`field`] and [`poly`]: exact GF(p^e) arithmetic and polynomials.
//! * [`pair_metric`]: symbol-pair reads, weights and run shapes.
//! * [`code`]: the interleaved evaluation-code construction.
//! * [`spectrum`]: exhaustive pair-weight distributions, closed forms for
//!   dimensions 3 and 4, and the family census behind them.

pub mod code;
pub mod field;
pub mod pair_metric;
pub mod poly;
pub mod spectrum;

pub use code::{
    block_parameters, is_mds_pair, matrix_rank, singleton_pair_cap, CodeError, CodeSpec, CodeSpecJson, Codeword,
    EvalPoint, Layout, PointSet,
};
pub use field::{prime_power, Field, FieldElement, FieldError, DEFAULT_FIELD_CEILING};
pub use pair_metric::{
    hamming_distance, hamming_weight, pair_distance, pair_read, pair_weight, shape_bound, shape_decompose, MetricError,
    Shape, SymbolVector,
};
pub use poly::{count_monic_irreducible, Degree, Polynomial};
pub use spectrum::{
    brute_min_pair_distance, check_closed_form, closed_form_a3, closed_form_a4, compare_distributions, family_census,
    pair_weight_distribution, CensusTable, DistributionDiff, EnumConfig, SpectrumError, WeightDistribution,
    DEFAULT_ENUMERATION_CEILING,
};
