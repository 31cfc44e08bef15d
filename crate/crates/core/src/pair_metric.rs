//! Symbol-pair reads, weights and distances, and the run decomposition of a
//! vector into alternating zero / nonzero blocks.
//!
//! Pair weight is computed through the run identity `w_p = w_H + Z`, where `Z`
//! is the number of maximal zero runs under cyclic adjacency. This holds for
//! every vector: the zero vector has `Z = 0` and a vector without zeros has
//! `w_H = n`.
//!
//! The lower bound `w_p >= w_H + ceil((l - 1) / 2)` over the linear run count
//! `l` is exposed separately as [`shape_bound`]. When both end coordinates are
//! nonzero the exact value is `w_H + (l - 1) / 2`, not `w_H + (l + 1) / 2`: the
//! wrap pair `(x_n, x_1)` is only one position. The bound is unaffected.

use thiserror::Error;

use crate::field::{Field, FieldElement, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("vectors must have length at least 2, got {0}")]
    TooShort(usize),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("the zero vector has no shape")]
    ZeroVector,
}

/// A vector of length `n >= 2` over one field.
#[derive(Clone, PartialEq, Eq)]
pub struct SymbolVector {
    field: Field,
    entries: Vec<u32>,
}

impl std::fmt::Debug for SymbolVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("SymbolVector").field(&self.entries).finish()
    }
}

impl SymbolVector {
    pub fn new(field: &Field, entries: &[FieldElement]) -> Result<Self, MetricError> {
        let raw = entries.iter().map(|&e| field.check(e)).collect::<Result<Vec<_>, _>>()?;
        Self::from_raw(field, raw)
    }

    pub fn from_raw(field: &Field, entries: Vec<u32>) -> Result<Self, MetricError> {
        if entries.len() < 2 {
            return Err(MetricError::TooShort(entries.len()));
        }
        if let Some(&bad) = entries.iter().find(|&&v| v >= field.order()) {
            return Err(FieldError::OutOfRange { value: bad as u64, q: field.order() }.into());
        }
        Ok(SymbolVector { field: field.clone(), entries })
    }

    pub fn zero(field: &Field, n: usize) -> Result<Self, MetricError> {
        Self::from_raw(field, vec![0; n])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> Vec<FieldElement> {
        self.entries.iter().map(|&v| self.field.wrap(v)).collect()
    }

    pub fn raw(&self) -> &[u32] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    fn compatible(&self, other: &Self) -> Result<(), MetricError> {
        if self.field != other.field {
            return Err(FieldError::FieldMismatch { left: self.field.order(), right: other.field.order() }.into());
        }
        if self.len() != other.len() {
            return Err(MetricError::LengthMismatch(self.len(), other.len()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, MetricError> {
        self.compatible(other)?;
        let f = &self.field;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| f.add_raw(a, b)).collect();
        Ok(SymbolVector { field: f.clone(), entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MetricError> {
        self.compatible(other)?;
        let f = &self.field;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| f.sub_raw(a, b)).collect();
        Ok(SymbolVector { field: f.clone(), entries })
    }

    pub fn scale(&self, c: FieldElement) -> Result<Self, MetricError> {
        let c = self.field.check(c)?;
        let f = &self.field;
        Ok(SymbolVector { field: f.clone(), entries: self.entries.iter().map(|&a| f.mul_raw(a, c)).collect() })
    }
}

/// The cyclic pair read `((x1,x2), (x2,x3), .., (xn,x1))`.
pub fn pair_read(x: &SymbolVector) -> Vec<(FieldElement, FieldElement)> {
    let n = x.len();
    let e = x.entries();
    (0..n).map(|i| (e[i], e[(i + 1) % n])).collect()
}

/// Componentwise sum of two pair reads.
pub fn add_pair_reads(
    field: &Field,
    a: &[(FieldElement, FieldElement)],
    b: &[(FieldElement, FieldElement)],
) -> Result<Vec<(FieldElement, FieldElement)>, MetricError> {
    if a.len() != b.len() {
        return Err(MetricError::LengthMismatch(a.len(), b.len()));
    }
    a.iter().zip(b).map(|(&(a0, a1), &(b0, b1))| Ok((field.add(a0, b0)?, field.add(a1, b1)?))).collect()
}

pub fn hamming_weight(x: &SymbolVector) -> usize {
    x.entries.iter().filter(|&&v| v != 0).count()
}

pub fn hamming_distance(x: &SymbolVector, y: &SymbolVector) -> Result<usize, MetricError> {
    Ok(hamming_weight(&x.sub(y)?))
}

/// Number of maximal zero runs with position `n` adjacent to position `1`.
pub fn cyclic_zero_runs(x: &SymbolVector) -> usize {
    let e = &x.entries;
    let n = e.len();
    // a run starts at i when x_i = 0 and its cyclic predecessor is nonzero
    (0..n).filter(|&i| e[i] == 0 && e[(i + n - 1) % n] != 0).count()
}

pub fn pair_weight(x: &SymbolVector) -> usize {
    hamming_weight(x) + cyclic_zero_runs(x)
}

pub fn pair_distance(x: &SymbolVector, y: &SymbolVector) -> Result<usize, MetricError> {
    Ok(pair_weight(&x.sub(y)?))
}

/// Pair weight of a length-`n` vector given the bitmask of its nonzero
/// coordinates (bit `i` set iff `x_i != 0`), `2 <= n <= 64`.
#[inline]
pub fn pair_weight_mask(nonzero: u64, n: u32) -> u32 {
    debug_assert!((2..=64).contains(&n));
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let zero = !nonzero & full;
    // predecessor of i is i-1, of 0 is n-1
    let pred_zero = ((zero << 1) | (zero >> (n - 1))) & full;
    nonzero.count_ones() + (zero & !pred_zero).count_ones()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunKind {
    Zero,
    Nonzero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    pub kind: RunKind,
    pub len: usize,
}

/// Left-to-right maximal runs plus the cyclic zero-run count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    pub runs: Vec<Run>,
    pub cyclic_zero_runs: usize,
}

impl Shape {
    /// Linear run count `l`.
    pub fn run_count(&self) -> usize {
        self.runs.len()
    }
}

pub fn shape_decompose(x: &SymbolVector) -> Shape {
    let mut runs: Vec<Run> = Vec::new();
    for &v in &x.entries {
        let kind = if v == 0 { RunKind::Zero } else { RunKind::Nonzero };
        match runs.last_mut() {
            Some(run) if run.kind == kind => run.len += 1,
            _ => runs.push(Run { kind, len: 1 }),
        }
    }
    let cyclic = if x.is_zero() {
        0
    } else {
        let zero_runs = runs.iter().filter(|r| r.kind == RunKind::Zero).count();
        let merges = runs.len() > 1
            && runs.first().map(|r| r.kind) == Some(RunKind::Zero)
            && runs.last().map(|r| r.kind) == Some(RunKind::Zero);
        zero_runs - usize::from(merges)
    };
    Shape { runs, cyclic_zero_runs: cyclic }
}

/// `w_H(x) + ceil((l - 1) / 2)` from the linear shape of a nonzero `x`.
pub fn shape_bound(x: &SymbolVector) -> Result<usize, MetricError> {
    if x.is_zero() {
        return Err(MetricError::ZeroVector);
    }
    let l = shape_decompose(x).run_count();
    Ok(hamming_weight(x) + l / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(f: &Field, e: &[u32]) -> SymbolVector {
        SymbolVector::from_raw(f, e.to_vec()).unwrap()
    }

    #[test]
    fn pair_read_examples() {
        let f = Field::new(5, 1).unwrap();
        let pr: Vec<(u32, u32)> = pair_read(&v(&f, &[1, 0, 0])).iter().map(|(a, b)| (a.value(), b.value())).collect();
        assert_eq!(pr, vec![(1, 0), (0, 0), (0, 1)]);
        let pr: Vec<(u32, u32)> = pair_read(&v(&f, &[3, 4])).iter().map(|(a, b)| (a.value(), b.value())).collect();
        assert_eq!(pr, vec![(3, 4), (4, 3)]);
    }

    #[test]
    fn weights() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(pair_weight(&v(&f, &[1, 0, 0])), 2);
        assert_eq!(pair_weight(&v(&f, &[0, 0, 0])), 0);
        assert_eq!(pair_weight(&v(&f, &[1, 0, 1])), 3);
        assert_eq!(pair_weight(&v(&f, &[1, 1, 1, 1])), 4);
        assert_eq!(hamming_weight(&v(&f, &[1, 0, 0])), 1);
        assert_eq!(pair_distance(&v(&f, &[1, 0, 0]), &v(&f, &[0, 0, 1])).unwrap(), 3);
    }

    #[test]
    fn errors() {
        let f = Field::new(2, 1).unwrap();
        let g = Field::new(3, 1).unwrap();
        assert_eq!(SymbolVector::from_raw(&f, vec![1]).unwrap_err(), MetricError::TooShort(1));
        assert_eq!(pair_distance(&v(&f, &[1, 0]), &v(&f, &[1, 0, 0])).unwrap_err(), MetricError::LengthMismatch(2, 3));
        assert!(matches!(hamming_distance(&v(&f, &[1, 0]), &v(&g, &[1, 0])), Err(MetricError::Field(_))));
        assert_eq!(shape_bound(&v(&f, &[0, 0])).unwrap_err(), MetricError::ZeroVector);
        assert!(SymbolVector::from_raw(&f, vec![0, 2]).is_err());
    }

    #[test]
    fn shapes() {
        let f = Field::new(2, 1).unwrap();
        let s = shape_decompose(&v(&f, &[1, 0, 0]));
        assert_eq!(s.runs, vec![Run { kind: RunKind::Nonzero, len: 1 }, Run { kind: RunKind::Zero, len: 2 }]);
        assert_eq!(s.cyclic_zero_runs, 1);

        let s = shape_decompose(&v(&f, &[0, 1, 1, 0, 1]));
        assert_eq!(s.run_count(), 4);
        assert_eq!(s.cyclic_zero_runs, 2);

        let s = shape_decompose(&v(&f, &[1, 0, 1]));
        assert_eq!((s.run_count(), s.cyclic_zero_runs), (3, 1));

        // leading and trailing zero runs merge cyclically
        let s = shape_decompose(&v(&f, &[0, 1, 0]));
        assert_eq!((s.run_count(), s.cyclic_zero_runs), (3, 1));

        let s = shape_decompose(&v(&f, &[0, 0, 0]));
        assert_eq!((s.run_count(), s.cyclic_zero_runs), (1, 0));
    }

    #[test]
    fn bound_examples() {
        let f = Field::new(2, 1).unwrap();
        for (x, bound, wp) in [([1, 0, 0], 2, 2), ([0, 1, 0], 2, 2), ([1, 0, 1], 3, 3)] {
            let x = v(&f, &x);
            assert_eq!(shape_bound(&x).unwrap(), bound);
            assert_eq!(pair_weight(&x), wp);
        }
    }

    #[test]
    fn mask_matches_vector_path() {
        let f = Field::new(2, 1).unwrap();
        for n in 2..=9u32 {
            for mask in 0..(1u64 << n) {
                let e: Vec<u32> = (0..n).map(|i| ((mask >> i) & 1) as u32).collect();
                assert_eq!(pair_weight_mask(mask, n) as usize, pair_weight(&v(&f, &e)));
            }
        }
        assert_eq!(pair_weight_mask(u64::MAX, 64), 64);
        assert_eq!(pair_weight_mask(1, 64), 2);
    }
}
