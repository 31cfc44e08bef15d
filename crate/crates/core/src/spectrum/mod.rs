//! Pair-weight distributions: exhaustive enumeration, the closed forms for
//! dimensions 3 and 4, and the polynomial-class census behind them.

mod census;
mod classes;
mod closed_form;
mod enumerate;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::code::CodeError;

pub use census::{family_census, CensusRow, CensusTable};
pub use classes::{classify, predicted_weight, Parity, PolyClass};
pub use closed_form::{closed_form_a3, closed_form_a4, closed_form_for};
pub use enumerate::{
    brute_min_pair_distance, case_buckets, check_closed_form, enumerate_code, min_weight_witness,
    pair_weight_distribution, witness_at, CaseBuckets, ClosedFormCheck, Enumeration, Witness,
};

/// Default bound on the number of messages (or polynomials) enumerated.
pub const DEFAULT_ENUMERATION_CEILING: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("enumeration of {size} items exceeds the ceiling {ceiling}")]
    TooLarge { size: u128, ceiling: u64 },
    #[error("closed form not defined: {0}")]
    BadParams(String),
    #[error(transparent)]
    Code(#[from] CodeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumConfig {
    pub ceiling: u64,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig { ceiling: DEFAULT_ENUMERATION_CEILING, jobs: None }
    }
}

impl EnumConfig {
    pub fn check(&self, q: u32, k: usize) -> Result<u64, SpectrumError> {
        let size = (q as u128).pow(k as u32);
        if size > self.ceiling as u128 {
            return Err(SpectrumError::TooLarge { size, ceiling: self.ceiling });
        }
        Ok(size as u64)
    }
}

/// Exact map from pair weight to codeword count. Zero counts are not stored,
/// so two distributions are equal iff their maps are.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct WeightDistribution {
    counts: BTreeMap<usize, u64>,
    total: u64,
}

impl WeightDistribution {
    pub fn from_counts(counts: impl IntoIterator<Item = (usize, u64)>) -> Self {
        let mut map = BTreeMap::new();
        for (w, c) in counts {
            if c > 0 {
                *map.entry(w).or_insert(0) += c;
            }
        }
        let total = map.values().sum();
        WeightDistribution { counts: map, total }
    }

    pub fn get(&self, weight: usize) -> u64 {
        self.counts.get(&weight).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<usize, u64> {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Smallest positive weight with a nonzero count.
    pub fn min_positive_weight(&self) -> Option<usize> {
        self.counts.keys().copied().find(|&w| w > 0)
    }

    pub fn max_weight(&self) -> Option<usize> {
        self.counts.keys().next_back().copied()
    }
}

/// Weights where two distributions differ, as `left - right`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DistributionDiff {
    pub deltas: BTreeMap<usize, i128>,
    pub first_discrepancy: Option<usize>,
    pub left_total: u64,
    pub right_total: u64,
}

impl DistributionDiff {
    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }
}

pub fn compare_distributions(left: &WeightDistribution, right: &WeightDistribution) -> DistributionDiff {
    let weights: std::collections::BTreeSet<usize> = left.counts.keys().chain(right.counts.keys()).copied().collect();
    let deltas: BTreeMap<usize, i128> = weights
        .into_iter()
        .filter_map(|w| {
            let d = left.get(w) as i128 - right.get(w) as i128;
            (d != 0).then_some((w, d))
        })
        .collect();
    DistributionDiff {
        first_discrepancy: deltas.keys().next().copied(),
        deltas,
        left_total: left.total,
        right_total: right.total,
    }
}
