//! Polynomials over a [`Field`], plus irreducibility and the Möbius count of
//! monic irreducibles.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::field::{prime_power, Field, FieldElement, FieldError};

/// Polynomial degree with `-inf` for the zero polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    /// `true` when `self <= bound`; the zero polynomial satisfies every bound.
    pub fn at_most(self, bound: usize) -> bool {
        self <= Degree::Finite(bound)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Coefficients are stored constant term first with trailing zeros trimmed.
#[derive(Clone)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<u32>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.order().hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

fn trim(mut coeffs: Vec<u32>) -> Vec<u32> {
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    coeffs
}

impl Polynomial {
    pub fn new(field: &Field, coeffs: &[FieldElement]) -> Result<Self, FieldError> {
        let raw = coeffs.iter().map(|&c| field.check(c)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_raw(field, raw))
    }

    /// Builds from canonical encodings; panics if any value is out of range.
    pub fn from_raw(field: &Field, coeffs: Vec<u32>) -> Self {
        assert!(coeffs.iter().all(|&c| c < field.order()), "coefficient outside GF({})", field.order());
        Polynomial { field: field.clone(), coeffs: trim(coeffs) }
    }

    pub fn zero(field: &Field) -> Self {
        Polynomial { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement, field: &Field) -> Result<Self, FieldError> {
        Self::new(field, &[c])
    }

    /// `c * x^degree`.
    pub fn monomial(field: &Field, c: FieldElement, degree: usize) -> Result<Self, FieldError> {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = field.check(c)?;
        Ok(Self::from_raw(field, coeffs))
    }

    /// `leading * prod (x - r)`; repeated roots allowed.
    pub fn from_roots(field: &Field, leading: FieldElement, roots: &[FieldElement]) -> Result<Self, FieldError> {
        let lead = field.check(leading)?;
        if lead == 0 {
            return Err(FieldError::ZeroLeading);
        }
        let mut coeffs = vec![lead];
        for &r in roots {
            let r = field.neg_raw(field.check(r)?);
            // multiply by (x + r)
            let mut next = vec![0u32; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] = field.add_raw(next[i + 1], c);
                next[i] = field.add_raw(next[i], field.mul_raw(c, r));
            }
            coeffs = next;
        }
        Ok(Polynomial { field: field.clone(), coeffs })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> Vec<FieldElement> {
        self.coeffs.iter().map(|&c| self.field.wrap(c)).collect()
    }

    pub fn raw_coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> FieldElement {
        self.field.wrap(self.coeffs.last().copied().unwrap_or(0))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn eval(&self, x: FieldElement) -> Result<FieldElement, FieldError> {
        let x = self.field.check(x)?;
        Ok(self.field.wrap(self.eval_raw(x)))
    }

    #[inline]
    pub fn eval_raw(&self, x: u32) -> u32 {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add_raw(f.mul_raw(acc, x), c))
    }

    fn same_field(&self, other: &Self) -> Result<(), FieldError> {
        if self.field != other.field {
            return Err(FieldError::FieldMismatch { left: self.field.order(), right: other.field.order() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                f.add_raw(a, b)
            })
            .collect();
        Ok(Polynomial { field: f.clone(), coeffs: trim(coeffs) })
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Polynomial { field: f.clone(), coeffs: self.coeffs.iter().map(|&c| f.neg_raw(c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: FieldElement) -> Result<Self, FieldError> {
        let c = self.field.check(c)?;
        let f = &self.field;
        let coeffs = self.coeffs.iter().map(|&a| f.mul_raw(a, c)).collect();
        Ok(Polynomial { field: f.clone(), coeffs: trim(coeffs) })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.field));
        }
        let f = &self.field;
        let mut coeffs = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add_raw(coeffs[i + j], f.mul_raw(a, b));
            }
        }
        Ok(Polynomial { field: f.clone(), coeffs: trim(coeffs) })
    }

    /// Euclidean division: `self = quot * divisor + rem` with `deg rem < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), FieldError> {
        self.same_field(divisor)?;
        let f = &self.field;
        let lead_inv = f.inv_raw(divisor.leading().value()).ok_or(FieldError::DivisionByZero)?;
        let d = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![0u32; rem.len() - d];
        for top in (d..rem.len()).rev() {
            let c = f.mul_raw(rem[top], lead_inv);
            if c == 0 {
                continue;
            }
            quot[top - d] = c;
            for (i, &dc) in divisor.coeffs.iter().enumerate() {
                let idx = top - d + i;
                rem[idx] = f.sub_raw(rem[idx], f.mul_raw(c, dc));
            }
        }
        Ok((Polynomial { field: f.clone(), coeffs: trim(quot) }, Polynomial { field: f.clone(), coeffs: trim(rem) }))
    }

    /// Roots in the field, ascending, without multiplicity.
    pub fn roots(&self) -> Vec<FieldElement> {
        (0..self.field.order()).filter(|&x| self.eval_raw(x) == 0).map(|x| self.field.wrap(x)).collect()
    }

    /// Irreducibility over the polynomial's own field.
    ///
    /// Degrees 2 and 3 use root absence; higher degrees use trial division by
    /// every monic polynomial of degree up to `deg / 2`.
    pub fn is_irreducible(&self) -> Result<bool, FieldError> {
        let deg = match self.degree() {
            Degree::Finite(d) if d >= 1 => d,
            _ => return Err(FieldError::DegreeTooSmall),
        };
        Ok(match deg {
            1 => true,
            2 | 3 => (0..self.field.order()).all(|x| self.eval_raw(x) != 0),
            _ => (1..=deg / 2)
                .all(|d| monic_polynomials(&self.field, d).all(|g| !self.div_rem(&g).expect("same field").1.is_zero())),
        })
    }
}

/// All monic polynomials of the given degree, in base-q counter order over
/// the lower coefficients (constant term fastest).
pub fn monic_polynomials(field: &Field, degree: usize) -> impl Iterator<Item = Polynomial> + '_ {
    let q = field.order() as u64;
    let count = q.pow(degree as u32);
    (0..count).map(move |idx| {
        let mut coeffs = vec![0u32; degree + 1];
        let mut rest = idx;
        for c in coeffs.iter_mut().take(degree) {
            *c = (rest % q) as u32;
            rest /= q;
        }
        coeffs[degree] = 1;
        Polynomial::from_raw(field, coeffs)
    })
}

/// The polynomial whose `len` coefficients are the base-q digits of `index`,
/// constant term least significant. Ranging `index` over `0..q^len` visits
/// every polynomial of degree below `len`.
pub fn polynomial_from_index(field: &Field, len: usize, mut index: u64) -> Polynomial {
    let q = field.order() as u64;
    let coeffs = (0..len)
        .map(|_| {
            let c = (index % q) as u32;
            index /= q;
            c
        })
        .collect();
    Polynomial::from_raw(field, coeffs)
}

pub fn mobius(mut n: u64) -> i64 {
    let mut result = 1i64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of monic irreducible polynomials of degree `n` over GF(q):
/// `(1/n) * sum_{d | n} mu(d) q^(n/d)`, exactly.
pub fn count_monic_irreducible(q: u64, n: u32) -> Result<BigUint, FieldError> {
    prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
    if n == 0 {
        return Err(FieldError::DegreeTooSmall);
    }
    let qb = BigInt::from(q);
    let sum: BigInt =
        (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| BigInt::from(mobius(d as u64)) * qb.pow(n / d)).sum();
    let count = sum / BigInt::from(n);
    debug_assert!(!count.is_negative());
    Ok(count.to_biguint().unwrap_or_else(BigUint::zero))
}

/// Convenience for small results.
pub fn count_monic_irreducible_u64(q: u64, n: u32) -> Result<u64, FieldError> {
    let c = count_monic_irreducible(q, n)?;
    Ok(c.to_u64().expect("count fits in u64"))
}

/// Orders polynomials by degree, then by coefficients from the top.
impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .order()
            .cmp(&other.field.order())
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Field {
        Field::from_order(q).unwrap()
    }

    fn poly(f: &Field, c: &[u32]) -> Polynomial {
        Polynomial::from_raw(f, c.to_vec())
    }

    #[test]
    fn eval_examples() {
        let f = gf(5);
        let x2 = f.element(2).unwrap();
        assert_eq!(poly(&f, &[1, 0, 1]).eval(x2).unwrap().value(), 0);
        assert_eq!(Polynomial::zero(&f).eval(x2).unwrap().value(), 0);
        assert_eq!(poly(&f, &[3]).eval(x2).unwrap().value(), 3);
    }

    #[test]
    fn eval_rejects_foreign_point() {
        let f = gf(5);
        let g = gf(7);
        assert!(matches!(poly(&f, &[1, 1]).eval(g.one()), Err(FieldError::FieldMismatch { .. })));
        assert!(g.poly_eval(&poly(&f, &[1]), g.one()).is_err());
    }

    #[test]
    fn from_roots_examples() {
        let f = gf(7);
        let e = |v| f.element(v).unwrap();
        assert_eq!(Polynomial::from_roots(&f, f.one(), &[e(2)]).unwrap(), poly(&f, &[5, 1]));
        assert_eq!(Polynomial::from_roots(&f, f.one(), &[e(1), e(1)]).unwrap(), poly(&f, &[1, 5, 1]));
        let g = gf(5);
        let two = g.element(2).unwrap();
        assert_eq!(Polynomial::from_roots(&g, two, &[]).unwrap(), poly(&g, &[2]));
        assert_eq!(Polynomial::from_roots(&g, g.zero(), &[]).unwrap_err(), FieldError::ZeroLeading);
    }

    #[test]
    fn degree_sentinel() {
        let f = gf(3);
        assert_eq!(Polynomial::zero(&f).degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert!(Polynomial::zero(&f).degree().at_most(0));
        assert_eq!(poly(&f, &[1, 2, 0, 0]).degree(), Degree::Finite(1));
    }

    #[test]
    fn irreducibility_examples() {
        let f = gf(2);
        assert!(poly(&f, &[1, 1, 1]).is_irreducible().unwrap());
        assert!(!poly(&f, &[1, 0, 1]).is_irreducible().unwrap());
        assert!(poly(&f, &[1, 1]).is_irreducible().unwrap());
        assert_eq!(poly(&f, &[1]).is_irreducible().unwrap_err(), FieldError::DegreeTooSmall);
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2 has no roots but is reducible
        assert!(!poly(&f, &[1, 0, 1, 0, 1]).is_irreducible().unwrap());
        assert!(poly(&f, &[1, 1, 0, 0, 1]).is_irreducible().unwrap());
    }

    #[test]
    fn division_identity() {
        let f = gf(7);
        let a = poly(&f, &[3, 0, 5, 1, 6]);
        let b = poly(&f, &[2, 4, 1]);
        let (quot, rem) = a.div_rem(&b).unwrap();
        assert!(rem.degree() < b.degree());
        assert_eq!(quot.mul(&b).unwrap().add(&rem).unwrap(), a);
    }

    #[test]
    fn mobius_values() {
        let mu: Vec<i64> = (1..=10).map(mobius).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }

    #[test]
    fn irreducible_counts() {
        assert_eq!(count_monic_irreducible_u64(7, 2).unwrap(), 21);
        assert_eq!(count_monic_irreducible_u64(5, 3).unwrap(), 40);
        assert_eq!(count_monic_irreducible_u64(9, 1).unwrap(), 9);
        // 2^30 - 2^15 - 2^10 - 2^6 + 2^5 + 2^3 + 2^2 - 2, over 30
        assert_eq!(count_monic_irreducible_u64(2, 30).unwrap(), 35_790_267);
        assert!(count_monic_irreducible(6, 2).is_err());
    }

    #[test]
    fn irreducible_count_matches_scan() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let f = gf(q);
            for n in 1..=3usize {
                let scanned = monic_polynomials(&f, n).filter(|g| g.is_irreducible().unwrap()).count() as u64;
                assert_eq!(scanned, count_monic_irreducible_u64(q, n as u32).unwrap(), "q={q} n={n}");
            }
        }
    }
}
