//! Exhaustive enumeration of every codeword.
//!
//! Messages are numbered as base-q counters over the coefficient vector with
//! the constant term fastest. The index space is cut into fixed contiguous
//! ranges (independent of the worker count); each range tallies privately and
//! the tallies are summed, so results do not depend on scheduling.
//!
//! Within a range the kernel evaluates the non-constant part of the message
//! once per block of `q` consecutive indices: adding the constant `c` zeroes
//! exactly the positions whose partial value is `-c`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::code::{CodeSpec, Codeword};
use crate::pair_metric::{pair_weight, pair_weight_mask};
use crate::poly::polynomial_from_index;

use super::classes::{classify, predicted_weight};
use super::closed_form::closed_form_for;
use super::{compare_distributions, DistributionDiff, EnumConfig, SpectrumError, WeightDistribution};

/// Blocks of `q` messages per parallel task.
const BLOCKS_PER_TASK: u64 = 64;

#[derive(Debug, Clone)]
struct Tally {
    counts: Vec<u64>,
    first: Vec<Option<u64>>,
}

impl Tally {
    fn new(n: usize) -> Self {
        Tally { counts: vec![0; n + 1], first: vec![None; n + 1] }
    }

    #[inline]
    fn record(&mut self, weight: usize, index: u64) {
        self.counts[weight] += 1;
        if self.first[weight].is_none() {
            self.first[weight] = Some(index);
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        for (a, b) in self.first.iter_mut().zip(other.first) {
            *a = match (*a, b) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, y) => x.or(y),
            };
        }
        self
    }
}

struct Kernel<'a> {
    spec: &'a CodeSpec,
    points: Vec<u32>,
}

impl Kernel<'_> {
    /// Messages `block * q .. (block + 1) * q` for `block` in `blocks`.
    fn run(&self, blocks: std::ops::Range<u64>) -> Tally {
        let field = self.spec.field();
        let q = field.order();
        let k = self.spec.k();
        let n = self.points.len();
        let mut tally = Tally::new(n);
        let mut partial = vec![0u32; n];
        let mut upper = vec![0u32; k - 1];
        let mut scratch = if n <= 64 { vec![0u64; q as usize] } else { Vec::new() };

        for block in blocks {
            // digits of the block index are the coefficients of x^1 .. x^(k-1)
            let mut rest = block;
            for c in upper.iter_mut() {
                *c = (rest % q as u64) as u32;
                rest /= q as u64;
            }
            for (slot, &x) in partial.iter_mut().zip(&self.points) {
                let h = upper.iter().rev().fold(0, |acc, &c| field.add_raw(field.mul_raw(acc, x), c));
                *slot = field.mul_raw(h, x);
            }
            let base = block * q as u64;
            if n <= 64 {
                for (j, &v) in partial.iter().enumerate() {
                    scratch[v as usize] |= 1 << j;
                }
                let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
                for c in 0..q {
                    let zeros = scratch[field.neg_raw(c) as usize];
                    tally.record(pair_weight_mask(full & !zeros, n as u32) as usize, base + c as u64);
                }
                for &v in &partial {
                    scratch[v as usize] = 0;
                }
            } else {
                for c in 0..q {
                    let neg = field.neg_raw(c);
                    let zero = |j: usize| partial[j] == neg;
                    let w_h = (0..n).filter(|&j| !zero(j)).count();
                    let runs = (0..n).filter(|&j| zero(j) && !zero((j + n - 1) % n)).count();
                    tally.record(w_h + runs, base + c as u64);
                }
            }
        }
        tally
    }
}

fn tally(spec: &CodeSpec, cfg: &EnumConfig) -> Result<Tally, SpectrumError> {
    let total = cfg.check(spec.q(), spec.k())?;
    let kernel = Kernel { spec, points: spec.eval_points().iter().map(|p| p.value()).collect() };
    let blocks = total / spec.q() as u64;
    let tasks: Vec<std::ops::Range<u64>> = (0..blocks)
        .step_by(BLOCKS_PER_TASK as usize)
        .map(|start| start..(start + BLOCKS_PER_TASK).min(blocks))
        .collect();
    let n = spec.n();
    let work = || tasks.par_iter().map(|r| kernel.run(r.clone())).reduce(|| Tally::new(n), Tally::merge);
    Ok(match cfg.jobs {
        Some(jobs) => {
            rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool").install(work)
        }
        None => work(),
    })
}

/// Distribution plus the first message index reaching each weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub distribution: WeightDistribution,
    pub first_index: BTreeMap<usize, u64>,
}

pub fn enumerate_code(spec: &CodeSpec, cfg: &EnumConfig) -> Result<Enumeration, SpectrumError> {
    let t = tally(spec, cfg)?;
    let distribution = WeightDistribution::from_counts(t.counts.iter().copied().enumerate());
    let first_index = t.first.iter().enumerate().filter_map(|(w, i)| i.map(|i| (w, i))).collect();
    Ok(Enumeration { distribution, first_index })
}

pub fn pair_weight_distribution(spec: &CodeSpec, cfg: &EnumConfig) -> Result<WeightDistribution, SpectrumError> {
    Ok(enumerate_code(spec, cfg)?.distribution)
}

/// Minimum pair weight over nonzero codewords, which for a linear code is the
/// minimum pair distance.
pub fn brute_min_pair_distance(spec: &CodeSpec, cfg: &EnumConfig) -> Result<usize, SpectrumError> {
    let d = pair_weight_distribution(spec, cfg)?;
    Ok(d.min_positive_weight().expect("k >= 1 gives nonzero codewords"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub class: String,
    pub codeword: Vec<u32>,
    pub message: String,
    pub message_index: u64,
    /// Weight assigned by the case analysis, when there is one.
    pub predicted_weight: Option<usize>,
    pub weight: usize,
}

/// Witness for the message with the given enumeration index.
pub fn witness_at(spec: &CodeSpec, index: u64) -> Witness {
    let f = polynomial_from_index(spec.field(), spec.k(), index);
    let c: Codeword = spec.encode(&f).expect("degree below k");
    let class = classify(spec.points(), &f);
    Witness {
        class: class.to_string(),
        codeword: c.entries.raw().to_vec(),
        message: f.to_string(),
        message_index: index,
        predicted_weight: predicted_weight(spec.k(), spec.m(), class),
        weight: pair_weight(&c.entries),
    }
}

/// The first nonzero message (in enumeration order) of minimum pair weight.
pub fn min_weight_witness(spec: &CodeSpec, cfg: &EnumConfig) -> Result<Witness, SpectrumError> {
    let e = enumerate_code(spec, cfg)?;
    let (_, &index) = e.first_index.iter().find(|(&w, _)| w > 0).expect("nonzero codewords exist");
    Ok(witness_at(spec, index))
}

/// Enumerated distribution against the closed form, for `k` in {3, 4}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedFormCheck {
    pub closed_form: WeightDistribution,
    pub diff: DistributionDiff,
    pub enumerated: WeightDistribution,
    /// On mismatch: the first message whose weight differs from its class's
    /// assigned weight.
    pub witness: Option<Witness>,
}

impl ClosedFormCheck {
    pub fn matches(&self) -> bool {
        self.diff.is_empty()
    }
}

pub fn check_closed_form(spec: &CodeSpec, cfg: &EnumConfig) -> Result<Option<ClosedFormCheck>, SpectrumError> {
    let Some(closed_form) = closed_form_for(spec).transpose()? else {
        return Ok(None);
    };
    let enumerated = pair_weight_distribution(spec, cfg)?;
    let diff = compare_distributions(&enumerated, &closed_form);
    let witness = if diff.is_empty() { None } else { first_misclassified(spec) };
    Ok(Some(ClosedFormCheck { enumerated, closed_form, diff, witness }))
}

fn first_misclassified(spec: &CodeSpec) -> Option<Witness> {
    let total = (spec.q() as u64).pow(spec.k() as u32);
    (1..total).map(|index| witness_at(spec, index)).find(|w| w.predicted_weight != Some(w.weight))
}

/// Nonzero messages split by which β points they vanish at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CaseBuckets {
    pub both: u64,
    pub exactly_one: u64,
    pub neither: u64,
}

pub fn case_buckets(spec: &CodeSpec, cfg: &EnumConfig) -> Result<CaseBuckets, SpectrumError> {
    let total = cfg.check(spec.q(), spec.k())?;
    let (b1, b2) = (spec.points().beta1().value(), spec.points().beta2().value());
    let mut out = CaseBuckets { both: 0, exactly_one: 0, neither: 0 };
    for index in 1..total {
        let f = polynomial_from_index(spec.field(), spec.k(), index);
        match (f.eval_raw(b1) == 0, f.eval_raw(b2) == 0) {
            (true, true) => out.both += 1,
            (false, false) => out.neither += 1,
            _ => out.exactly_one += 1,
        }
    }
    Ok(out)
}
