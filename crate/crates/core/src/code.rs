//! Evaluation codes with interleaved β points.
//!
//! A code is fixed by two distinct points `β1, β2` and `m` further distinct
//! points `α1..αm`. With `t = floor((k-1)/2)` and `m1 = floor(m/t)`, the
//! codeword of a message polynomial `f` (degree at most `k-1`) lists `f`
//! evaluated along the layout
//!
//! ```text
//! block j = α_{(j-1)t+1} .. α_{jt}, then β1 (j odd) or β2 (j even),  j = 1..B
//! tail    = α_{tB+1} .. α_m
//! ```
//!
//! where `B = m1` for even `m1` and `m1 - 1` for odd `m1`. The length is
//! `n = m + B`, and the minimum pair distance is `n - k + 2`, meeting the
//! Singleton-type bound `|C| <= q^(n - d_p + 2)`.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Field, FieldElement, FieldError};
use crate::pair_metric::SymbolVector;
use crate::poly::{Degree, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("k must satisfy 3 <= k < m (got k={k}, m={m})")]
    BadDimension { k: usize, m: usize },
    #[error("m must satisfy m <= q-2 (got m={m}, q={q})")]
    BadM { m: usize, q: u32 },
    #[error("bad evaluation points: {0}")]
    BadPoints(String),
    #[error("message degree {degree} exceeds k-1 = {max}")]
    DegreeTooHigh { degree: usize, max: usize },
    #[error("pair distance must be at least 2, got {0}")]
    BadDp(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("malformed code description: {0}")]
    Json(String),
}

/// `(t, m1, n)` for dimension `k >= 3` and `m` α points, without range checks.
pub fn block_parameters(k: usize, m: usize) -> (usize, usize, usize) {
    let t = (k - 1) / 2;
    let m1 = m / t;
    let n = if m1.is_multiple_of(2) { m + m1 } else { m + m1 - 1 };
    (t, m1, n)
}

/// `β1`, `β2` and the ordered `α` list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    field: Field,
    beta1: FieldElement,
    beta2: FieldElement,
    alphas: Vec<FieldElement>,
}

impl PointSet {
    /// Validates distinctness and membership; `alphas` may have any length up
    /// to `q - 2`.
    pub fn new(
        field: &Field,
        beta1: FieldElement,
        beta2: FieldElement,
        alphas: Vec<FieldElement>,
    ) -> Result<Self, CodeError> {
        let bad = |msg: String| Err(CodeError::BadPoints(msg));
        for &pt in [beta1, beta2].iter().chain(&alphas) {
            if pt.order() != field.order() {
                return bad(format!("point {pt} is not in GF({})", field.order()));
            }
        }
        if beta1 == beta2 {
            return bad(format!("beta1 and beta2 must differ (both {beta1})"));
        }
        let mut seen = vec![false; field.order() as usize];
        seen[beta1.value() as usize] = true;
        seen[beta2.value() as usize] = true;
        for a in &alphas {
            if std::mem::replace(&mut seen[a.value() as usize], true) {
                return bad(format!("alpha {a} repeats a beta or another alpha"));
            }
        }
        Ok(PointSet { field: field.clone(), beta1, beta2, alphas })
    }

    /// `β1 = 0`, `β2 = 1` and the first `m` remaining elements in canonical order.
    pub fn default_for(field: &Field, m: usize) -> Result<Self, CodeError> {
        let alphas: Vec<FieldElement> = field.elements().into_iter().skip(2).take(m).collect();
        if alphas.len() < m {
            return Err(CodeError::BadM { m, q: field.order() });
        }
        Self::new(field, field.zero(), field.one(), alphas)
    }

    /// Fills in whichever parts are missing with the defaults; the default α
    /// list skips the chosen β points.
    pub fn with_defaults(
        field: &Field,
        m: usize,
        beta1: Option<FieldElement>,
        beta2: Option<FieldElement>,
        alphas: Option<Vec<FieldElement>>,
    ) -> Result<Self, CodeError> {
        let beta1 = beta1.unwrap_or_else(|| field.zero());
        let beta2 = beta2.unwrap_or_else(|| field.one());
        let alphas = match alphas {
            Some(a) => {
                if a.len() != m {
                    return Err(CodeError::BadPoints(format!("expected {m} alphas, got {}", a.len())));
                }
                a
            }
            None => {
                let a: Vec<FieldElement> =
                    field.elements().into_iter().filter(|&x| x != beta1 && x != beta2).take(m).collect();
                if a.len() < m {
                    return Err(CodeError::BadM { m, q: field.order() });
                }
                a
            }
        };
        Self::new(field, beta1, beta2, alphas)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn beta1(&self) -> FieldElement {
        self.beta1
    }

    pub fn beta2(&self) -> FieldElement {
        self.beta2
    }

    pub fn alphas(&self) -> &[FieldElement] {
        &self.alphas
    }

    pub fn m(&self) -> usize {
        self.alphas.len()
    }

    /// `β_i` for `i` in {1, 2}.
    pub fn beta(&self, i: usize) -> FieldElement {
        match i {
            1 => self.beta1,
            2 => self.beta2,
            _ => panic!("beta index must be 1 or 2, got {i}"),
        }
    }
}

/// One position of the layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvalPoint {
    /// 1-based α index.
    Alpha(usize),
    Beta1,
    Beta2,
}

impl fmt::Display for EvalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalPoint::Alpha(i) => write!(f, "a{i}"),
            EvalPoint::Beta1 => f.write_str("b1"),
            EvalPoint::Beta2 => f.write_str("b2"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    pub points: Vec<EvalPoint>,
}

impl Layout {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSpec {
    points: PointSet,
    k: usize,
    t: usize,
    m1: usize,
    n: usize,
}

impl CodeSpec {
    pub fn new(points: PointSet, k: usize) -> Result<Self, CodeError> {
        let m = points.m();
        let q = points.field.order();
        if k < 3 || k >= m {
            return Err(CodeError::BadDimension { k, m });
        }
        if m + 2 > q as usize {
            return Err(CodeError::BadM { m, q });
        }
        let (t, m1, n) = block_parameters(k, m);
        Ok(CodeSpec { points, k, t, m1, n })
    }

    /// Range checks come first so an oversize `m` reports `BadM` rather than
    /// running out of default points.
    pub fn with_defaults(field: &Field, k: usize, m: usize) -> Result<Self, CodeError> {
        Self::build(field, k, m, None, None, None)
    }

    pub fn build(
        field: &Field,
        k: usize,
        m: usize,
        beta1: Option<FieldElement>,
        beta2: Option<FieldElement>,
        alphas: Option<Vec<FieldElement>>,
    ) -> Result<Self, CodeError> {
        if k < 3 || k >= m {
            return Err(CodeError::BadDimension { k, m });
        }
        if m + 2 > field.order() as usize {
            return Err(CodeError::BadM { m, q: field.order() });
        }
        Self::new(PointSet::with_defaults(field, m, beta1, beta2, alphas)?, k)
    }

    pub fn field(&self) -> &Field {
        &self.points.field
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn q(&self) -> u32 {
        self.points.field.order()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.points.m()
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn m1(&self) -> usize {
        self.m1
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of β-terminated blocks.
    pub fn blocks(&self) -> usize {
        if self.m1.is_multiple_of(2) {
            self.m1
        } else {
            self.m1 - 1
        }
    }

    pub fn layout(&self) -> Layout {
        let (t, blocks, m) = (self.t, self.blocks(), self.m());
        let mut points = Vec::with_capacity(self.n);
        for j in 1..=blocks {
            points.extend(((j - 1) * t + 1..=j * t).map(EvalPoint::Alpha));
            points.push(if j % 2 == 1 { EvalPoint::Beta1 } else { EvalPoint::Beta2 });
        }
        points.extend((t * blocks + 1..=m).map(EvalPoint::Alpha));
        debug_assert_eq!(points.len(), self.n);
        Layout { points }
    }

    pub fn resolve(&self, pt: EvalPoint) -> FieldElement {
        match pt {
            EvalPoint::Alpha(i) => self.points.alphas[i - 1],
            EvalPoint::Beta1 => self.points.beta1,
            EvalPoint::Beta2 => self.points.beta2,
        }
    }

    /// Layout points as field elements, in codeword order.
    pub fn eval_points(&self) -> Vec<FieldElement> {
        self.layout().points.into_iter().map(|p| self.resolve(p)).collect()
    }

    pub fn encode(&self, f: &Polynomial) -> Result<Codeword, CodeError> {
        if f.field() != self.field() {
            return Err(FieldError::FieldMismatch { left: self.q(), right: f.field().order() }.into());
        }
        if let Degree::Finite(d) = f.degree() {
            if d >= self.k {
                return Err(CodeError::DegreeTooHigh { degree: d, max: self.k - 1 });
            }
        }
        let entries = self.eval_points().into_iter().map(|x| f.eval_raw(x.value())).collect();
        let entries = SymbolVector::from_raw(self.field(), entries).expect("n >= 2 and entries in range");
        Ok(Codeword { entries, message: Some(f.clone()) })
    }

    /// Row `i` is the codeword of `x^i`.
    pub fn generator_matrix(&self) -> Vec<Vec<FieldElement>> {
        let field = self.field();
        let pts = self.eval_points();
        (0..self.k).map(|i| pts.iter().map(|&x| field.pow(x, i as u64).expect("same field")).collect()).collect()
    }

    /// `m + m1 - k + 2` for even `m1`, `m + m1 - k + 1` for odd.
    pub fn theoretical_dp(&self) -> usize {
        if self.m1.is_multiple_of(2) {
            self.m() + self.m1 + 2 - self.k
        } else {
            self.m() + self.m1 + 1 - self.k
        }
    }

    /// Canonical JSON description with sorted keys.
    pub fn to_json(&self) -> CodeSpecJson {
        let f = self.field();
        CodeSpecJson {
            alphas: self.points.alphas.iter().map(|a| a.value()).collect(),
            beta1: self.points.beta1.value(),
            beta2: self.points.beta2.value(),
            e: f.degree(),
            k: self.k,
            m: self.m(),
            m1: self.m1,
            n: self.n,
            p: f.characteristic(),
            q: f.order(),
            t: self.t,
        }
    }

    /// Rebuilds a spec from its JSON description, checking that the derived
    /// fields agree.
    pub fn from_json(desc: &CodeSpecJson) -> Result<Self, CodeError> {
        let field = Field::new(desc.p as u64, desc.e)?;
        if field.order() != desc.q {
            return Err(CodeError::Json(format!("q={} but p^e={}", desc.q, field.order())));
        }
        let el = |v: u32| field.element(v as u64);
        let alphas = desc.alphas.iter().map(|&a| el(a)).collect::<Result<Vec<_>, _>>()?;
        if alphas.len() != desc.m {
            return Err(CodeError::Json(format!("m={} but {} alphas", desc.m, alphas.len())));
        }
        let spec = CodeSpec::new(PointSet::new(&field, el(desc.beta1)?, el(desc.beta2)?, alphas)?, desc.k)?;
        if (spec.t, spec.m1, spec.n) != (desc.t, desc.m1, desc.n) {
            return Err(CodeError::Json(format!(
                "derived (t, m1, n) = ({}, {}, {}) disagrees with ({}, {}, {})",
                spec.t, spec.m1, spec.n, desc.t, desc.m1, desc.n
            )));
        }
        Ok(spec)
    }
}

/// Interchange form of a [`CodeSpec`]; elements are canonical encodings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSpecJson {
    pub alphas: Vec<u32>,
    pub beta1: u32,
    pub beta2: u32,
    pub e: u32,
    pub k: usize,
    pub m: usize,
    pub m1: usize,
    pub n: usize,
    pub p: u32,
    pub q: u32,
    pub t: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    pub entries: SymbolVector,
    /// The message polynomial, when known.
    pub message: Option<Polynomial>,
}

/// `q^(n - dp + 2)`.
pub fn singleton_pair_cap(q: u64, n: usize, dp: usize) -> Result<BigUint, CodeError> {
    if dp < 2 {
        return Err(CodeError::BadDp(dp));
    }
    let exp = (n + 2).checked_sub(dp).ok_or(CodeError::BadDp(dp))?;
    Ok(BigUint::from(q).pow(exp as u32))
}

/// Whether a code of this size meets the Singleton-type bound at `dp_observed`.
pub fn is_mds_pair(spec: &CodeSpec, dp_observed: usize) -> Result<bool, CodeError> {
    let size = BigUint::from(spec.q()).pow(spec.k() as u32);
    Ok(singleton_pair_cap(spec.q() as u64, spec.n(), dp_observed)? == size)
}

/// Rank by Gaussian elimination over the field.
pub fn matrix_rank(field: &Field, rows: &[Vec<FieldElement>]) -> usize {
    let mut m: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|e| e.value()).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = field.inv_raw(m[rank][col]).expect("nonzero pivot");
        let pivot_row: Vec<u32> = m[rank].iter().map(|&v| field.mul_raw(v, inv)).collect();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let c = row[col];
            for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub_raw(*x, field.mul_raw(c, pv));
            }
        }
        m[rank] = pivot_row;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pair_metric::pair_weight;

    fn spec(q: u64, k: usize, m: usize) -> CodeSpec {
        CodeSpec::with_defaults(&Field::from_order(q).unwrap(), k, m).unwrap()
    }

    #[test]
    fn derived_parameters() {
        let s = spec(7, 3, 4);
        assert_eq!((s.t(), s.m1(), s.n()), (1, 4, 8));
        let alphas: Vec<u32> = s.points().alphas().iter().map(|a| a.value()).collect();
        assert_eq!(alphas, vec![2, 3, 4, 5]);
        let s = spec(7, 3, 5);
        assert_eq!((s.m1(), s.n()), (5, 9));
        // k = 5, m = 5 only exercises the arithmetic; k < m rejects the code itself
        assert_eq!(block_parameters(5, 5), (2, 2, 7));
        let f = Field::new(7, 1).unwrap();
        assert!(matches!(CodeSpec::with_defaults(&f, 5, 5), Err(CodeError::BadDimension { .. })));
    }

    #[test]
    fn parameter_errors() {
        let f = Field::new(7, 1).unwrap();
        assert_eq!(CodeSpec::with_defaults(&f, 3, 6).unwrap_err(), CodeError::BadM { m: 6, q: 7 });
        assert!(matches!(CodeSpec::with_defaults(&f, 2, 4), Err(CodeError::BadDimension { .. })));
        assert!(matches!(CodeSpec::with_defaults(&f, 4, 4), Err(CodeError::BadDimension { .. })));
        let e = |v| f.element(v).unwrap();
        let clash = CodeSpec::build(&f, 3, 4, Some(e(2)), Some(e(2)), None);
        assert!(matches!(clash, Err(CodeError::BadPoints(_))));
        let overlap = CodeSpec::build(&f, 3, 4, None, None, Some(vec![e(0), e(2), e(3), e(4)]));
        assert!(matches!(overlap, Err(CodeError::BadPoints(_))));
        let short = CodeSpec::build(&f, 3, 4, None, None, Some(vec![e(2), e(3), e(4)]));
        assert!(matches!(short, Err(CodeError::BadPoints(_))));
    }

    #[test]
    fn five_point_field_has_no_valid_code() {
        let f = Field::new(5, 1).unwrap();
        assert!(CodeSpec::with_defaults(&f, 3, 4).is_err());
    }

    #[test]
    fn explicit_points_shift_default_alphas() {
        let f = Field::new(7, 1).unwrap();
        let e = |v| f.element(v).unwrap();
        let s = CodeSpec::build(&f, 3, 4, Some(e(2)), Some(e(3)), None).unwrap();
        let alphas: Vec<u32> = s.points().alphas().iter().map(|a| a.value()).collect();
        assert_eq!(alphas, vec![0, 1, 4, 5]);
    }

    #[test]
    fn layouts() {
        use EvalPoint::*;
        assert_eq!(
            spec(7, 3, 4).layout().points,
            vec![Alpha(1), Beta1, Alpha(2), Beta2, Alpha(3), Beta1, Alpha(4), Beta2]
        );
        assert_eq!(
            spec(7, 3, 5).layout().points,
            vec![Alpha(1), Beta1, Alpha(2), Beta2, Alpha(3), Beta1, Alpha(4), Beta2, Alpha(5)]
        );
        let s = spec(11, 5, 7);
        assert_eq!((s.t(), s.m1(), s.n()), (2, 3, 9));
        assert_eq!(
            s.layout().points,
            vec![Alpha(1), Alpha(2), Beta1, Alpha(3), Alpha(4), Beta2, Alpha(5), Alpha(6), Alpha(7)]
        );
    }

    #[test]
    fn layout_structure_over_grid() {
        for q in [7u64, 8, 9, 11, 13, 16] {
            for k in 3..8 {
                for m in k + 1..=(q as usize - 2) {
                    let s = spec(q, k, m);
                    let pts = s.layout().points;
                    assert_eq!(pts.len(), s.n());
                    let mut alphas: Vec<usize> =
                        pts.iter().filter_map(|p| if let EvalPoint::Alpha(i) = p { Some(*i) } else { None }).collect();
                    alphas.sort_unstable();
                    assert_eq!(alphas, (1..=m).collect::<Vec<_>>());
                    let b1 = pts.iter().filter(|&&p| p == EvalPoint::Beta1).count();
                    let b2 = pts.iter().filter(|&&p| p == EvalPoint::Beta2).count();
                    assert_eq!((b1, b2), (s.blocks().div_ceil(2), s.blocks() / 2));
                    assert_eq!(s.theoretical_dp(), s.n() + 2 - k);
                }
            }
        }
    }

    #[test]
    fn encode_examples() {
        let s = spec(7, 3, 4);
        let f = s.field().clone();
        let zero = s.encode(&Polynomial::zero(&f)).unwrap();
        assert!(zero.entries.is_zero());
        assert_eq!(zero.entries.len(), 8);

        // x(x - 1) vanishes on both betas only
        let g = Polynomial::from_roots(&f, f.one(), &[f.zero(), f.one()]).unwrap();
        assert_eq!(g.raw_coeffs(), &[0, 6, 1]);
        let c = s.encode(&g).unwrap();
        assert_eq!(pair_weight(&c.entries), 8);

        // x(x - α1)
        let h = Polynomial::from_roots(&f, f.one(), &[f.zero(), f.element(2).unwrap()]).unwrap();
        let c = s.encode(&h).unwrap();
        let zeros: Vec<usize> = c.entries.raw().iter().enumerate().filter(|(_, &v)| v == 0).map(|(i, _)| i).collect();
        assert_eq!(zeros, vec![0, 1, 5]);
        assert_eq!(pair_weight(&c.entries), 7);

        let cubic = Polynomial::from_raw(&f, vec![0, 0, 0, 1]);
        assert_eq!(s.encode(&cubic).unwrap_err(), CodeError::DegreeTooHigh { degree: 3, max: 2 });
    }

    #[test]
    fn generator_rows() {
        let s = spec(7, 3, 4);
        let g = s.generator_matrix();
        assert!(g[0].iter().all(|&x| x == s.field().one()));
        assert_eq!(g[1], s.eval_points());
        assert_eq!(matrix_rank(s.field(), &g), 3);
    }

    #[test]
    fn rank_detects_dependence() {
        let f = Field::new(5, 1).unwrap();
        let e = |v| f.element(v).unwrap();
        let rows = vec![vec![e(1), e(2), e(3)], vec![e(2), e(4), e(1)], vec![e(0), e(1), e(1)]];
        assert_eq!(matrix_rank(&f, &rows), 2);
    }

    #[test]
    fn theory_and_singleton() {
        assert_eq!(spec(7, 3, 4).theoretical_dp(), 7);
        assert_eq!(spec(7, 3, 5).theoretical_dp(), 8);
        assert_eq!(spec(8, 4, 6).theoretical_dp(), 10);
        assert_eq!(singleton_pair_cap(7, 8, 7).unwrap(), BigUint::from(343u32));
        assert_eq!(singleton_pair_cap(5, 6, 8).unwrap(), BigUint::from(1u32));
        assert_eq!(singleton_pair_cap(2, 4, 2).unwrap(), BigUint::from(16u32));
        assert_eq!(singleton_pair_cap(2, 4, 1).unwrap_err(), CodeError::BadDp(1));
        let s = spec(7, 3, 4);
        assert!(is_mds_pair(&s, 7).unwrap());
        assert!(!is_mds_pair(&s, 6).unwrap());
        assert!(is_mds_pair(&s, s.theoretical_dp()).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let s = spec(9, 4, 6);
        let json = serde_json::to_string(&s.to_json()).unwrap();
        assert!(json.starts_with(
            r#"{"alphas":[2,3,4,5,6,7],"beta1":0,"beta2":1,"e":2,"k":4,"m":6,"m1":6,"n":12,"p":3,"q":9,"t":1}"#
        ));
        let back: CodeSpecJson = serde_json::from_str(&json).unwrap();
        assert_eq!(CodeSpec::from_json(&back).unwrap(), s);

        let mut tampered = back.clone();
        tampered.n = 11;
        assert!(matches!(CodeSpec::from_json(&tampered), Err(CodeError::Json(_))));
    }
}
