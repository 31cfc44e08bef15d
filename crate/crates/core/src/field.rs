//! Arithmetic in GF(p^e).
//!
//! Elements use the canonical integer encoding `0..q`: the base-p digits of
//! the integer are the coordinates in the polynomial basis `1, x, .., x^(e-1)`.
//! `0` is the additive identity and `1` the multiplicative identity for every
//! field, prime or not.
//!
//! Fields up to [`TABLE_LIMIT`] elements carry log/antilog tables plus a Zech
//! logarithm table so that both addition and multiplication are table lookups
//! in the enumeration kernels. Larger fields (only reachable by raising the
//! construction ceiling) fall back to reducing products by the modulus.

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::poly::Polynomial;

/// Default upper bound on `p^e` accepted by [`Field::new`].
pub const DEFAULT_FIELD_CEILING: u64 = 1 << 16;

/// Fields at or below this order get lookup tables.
pub const TABLE_LIMIT: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    BadExponent,
    #[error("field order {p}^{e} exceeds the ceiling {ceiling}")]
    TooLarge { p: u64, e: u32, ceiling: u64 },
    #[error("operands belong to different fields (GF({left}) vs GF({right}))")]
    FieldMismatch { left: u32, right: u32 },
    #[error("{value} is not an element of GF({q})")]
    OutOfRange { value: u64, q: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("leading coefficient must be nonzero")]
    ZeroLeading,
    #[error("irreducibility is not defined for constant polynomials")]
    DegreeTooSmall,
}

/// An element of some GF(q), tagged with the field order.
///
/// Field construction is deterministic, so the order identifies the field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    value: u32,
    q: u32,
}

impl FieldElement {
    pub fn value(self) -> u32 {
        self.value
    }

    /// Order of the field this element belongs to.
    pub fn order(self) -> u32 {
        self.q
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_u32(self.value)
    }
}

struct Tables {
    /// `exp[i] = g^i` for `i < 2(q-1)`, doubled to skip a reduction.
    exp: Vec<u32>,
    /// `log[a]` for `a != 0`; `log[0]` is unused.
    log: Vec<u32>,
    /// `zech[i] = log(1 + g^i)`, or `ZECH_ZERO` when `1 + g^i = 0`.
    zech: Vec<u32>,
}

const ZECH_ZERO: u32 = u32::MAX;

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus, constant term first, length `e + 1`. `[0, 1]` for prime fields.
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

/// A finite field GF(p^e). Cheap to clone; all state is shared and immutable.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.inner.q == other.inner.q && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.e == 1 {
            write!(f, "GF({})", self.inner.q)
        } else {
            write!(f, "GF({}^{})", self.inner.p, self.inner.e)
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^e` with `p` prime, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        // no divisor up to sqrt(q): q itself is prime
        return Some((q, 1));
    }
    let (mut rest, mut e) = (q, 0u32);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// GF(p^e) with the default ceiling on the order.
    pub fn new(p: u64, e: u32) -> Result<Self, FieldError> {
        Self::with_ceiling(p, e, DEFAULT_FIELD_CEILING)
    }

    /// GF(q) for a prime power `q`.
    pub fn from_order(q: u64) -> Result<Self, FieldError> {
        let (p, e) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Self::new(p, e)
    }

    pub fn with_ceiling(p: u64, e: u32, ceiling: u64) -> Result<Self, FieldError> {
        if e == 0 {
            return Err(FieldError::BadExponent);
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let q = p.checked_pow(e).filter(|&q| q <= ceiling && q <= u32::MAX as u64).ok_or(FieldError::TooLarge {
            p,
            e,
            ceiling,
        })?;
        let (p32, q32) = (p as u32, q as u32);

        let modulus = if e == 1 { vec![0, 1] } else { smallest_irreducible(p32, e) };
        let mut inner = Inner { p: p32, e, q: q32, modulus, tables: None };
        if q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(Field { inner: Arc::new(inner) })
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.e
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    /// Monic modulus coefficients over GF(p), constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn has_tables(&self) -> bool {
        self.inner.tables.is_some()
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    pub fn element(&self, value: u64) -> Result<FieldElement, FieldError> {
        if value >= self.inner.q as u64 {
            return Err(FieldError::OutOfRange { value, q: self.inner.q });
        }
        Ok(self.wrap(value as u32))
    }

    /// All elements in ascending canonical order.
    pub fn elements(&self) -> Vec<FieldElement> {
        (0..self.inner.q).map(|v| self.wrap(v)).collect()
    }

    /// Nonzero elements in ascending canonical order.
    pub fn units(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.inner.q).map(|v| self.wrap(v))
    }

    pub(crate) fn wrap(&self, value: u32) -> FieldElement {
        debug_assert!(value < self.inner.q);
        FieldElement { value, q: self.inner.q }
    }

    pub(crate) fn check(&self, a: FieldElement) -> Result<u32, FieldError> {
        if a.q != self.inner.q {
            return Err(FieldError::FieldMismatch { left: self.inner.q, right: a.q });
        }
        Ok(a.value)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.wrap(self.add_raw(self.check(a)?, self.check(b)?)))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.wrap(self.sub_raw(self.check(a)?, self.check(b)?)))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.wrap(self.mul_raw(self.check(a)?, self.check(b)?)))
    }

    pub fn neg(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.wrap(self.neg_raw(self.check(a)?)))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        let a = self.check(a)?;
        self.inv_raw(a).map(|v| self.wrap(v)).ok_or(FieldError::DivisionByZero)
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        let inv = self.inv(b)?;
        self.mul(a, inv)
    }

    pub fn pow(&self, a: FieldElement, exp: u64) -> Result<FieldElement, FieldError> {
        Ok(self.wrap(self.pow_raw(self.check(a)?, exp)))
    }

    // Unchecked arithmetic on canonical encodings. Callers guarantee every
    // operand is `< q`; these are the kernels' entry points.

    #[inline]
    pub fn add_raw(&self, a: u32, b: u32) -> u32 {
        let inner = &*self.inner;
        if inner.e == 1 {
            let s = a + b;
            return if s >= inner.q { s - inner.q } else { s };
        }
        if inner.p == 2 {
            return a ^ b;
        }
        match &inner.tables {
            Some(t) => zech_add(t, inner.q, a, b),
            None => digit_add(inner.p, inner.e, a, b),
        }
    }

    #[inline]
    pub fn neg_raw(&self, a: u32) -> u32 {
        let inner = &*self.inner;
        if a == 0 || inner.p == 2 {
            return a;
        }
        if inner.e == 1 {
            return inner.q - a;
        }
        digit_neg(inner.p, inner.e, a)
    }

    #[inline]
    pub fn sub_raw(&self, a: u32, b: u32) -> u32 {
        self.add_raw(a, self.neg_raw(b))
    }

    #[inline]
    pub fn mul_raw(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &*self.inner;
        match &inner.tables {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize],
            None => mul_by_reduction(inner, a, b),
        }
    }

    pub fn inv_raw(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let inner = &*self.inner;
        Some(match &inner.tables {
            Some(t) => {
                let order = inner.q - 1;
                t.exp[((order - t.log[a as usize]) % order) as usize]
            }
            // a^(q-2) = a^-1
            None => self.pow_raw(a, inner.q as u64 - 2),
        })
    }

    pub fn pow_raw(&self, a: u32, mut exp: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Product computed by schoolbook multiplication reduced by the modulus,
    /// bypassing the tables.
    pub fn mul_reference(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        let (a, b) = (self.check(a)?, self.check(b)?);
        Ok(self.wrap(mul_by_reduction(&self.inner, a, b)))
    }

    /// Sum computed coordinatewise mod p, bypassing the tables.
    pub fn add_reference(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        let (a, b) = (self.check(a)?, self.check(b)?);
        Ok(self.wrap(digit_add(self.inner.p, self.inner.e, a, b)))
    }

    /// Evaluates `f` at `x` (Horner).
    pub fn poly_eval(&self, f: &Polynomial, x: FieldElement) -> Result<FieldElement, FieldError> {
        if f.field() != self {
            return Err(FieldError::FieldMismatch { left: self.order(), right: f.field().order() });
        }
        f.eval(x)
    }
}

fn digits(p: u32, e: u32, mut a: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(e as usize);
    for _ in 0..e {
        out.push(a % p);
        a /= p;
    }
    out
}

fn undigits(p: u32, ds: &[u32]) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn digit_add(p: u32, e: u32, a: u32, b: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let (mut out, mut place) = (0u32, 1u32);
    for _ in 0..e {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place = place.wrapping_mul(p);
    }
    out
}

fn digit_neg(p: u32, e: u32, a: u32) -> u32 {
    let ds: Vec<u32> = digits(p, e, a).into_iter().map(|d| (p - d) % p).collect();
    undigits(p, &ds)
}

fn zech_add(t: &Tables, q: u32, a: u32, b: u32) -> u32 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let order = q - 1;
    let (la, lb) = (t.log[a as usize], t.log[b as usize]);
    // a + b = a * (1 + g^(lb - la))
    let d = if lb >= la { lb - la } else { lb + order - la };
    match t.zech[d as usize] {
        ZECH_ZERO => 0,
        z => t.exp[(la + z) as usize],
    }
}

/// Multiplies two encodings as polynomials over GF(p) and reduces by the modulus.
fn mul_by_reduction(inner: &Inner, a: u32, b: u32) -> u32 {
    let (p, e) = (inner.p, inner.e);
    if e == 1 {
        return ((a as u64 * b as u64) % p as u64) as u32;
    }
    let (da, db) = (digits(p, e, a), digits(p, e, b));
    let mut prod = vec![0u64; 2 * e as usize - 1];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let m = &inner.modulus;
    for top in (e as usize..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        // x^top = -(m_0 .. m_{e-1}) x^(top-e)
        for (i, &mi) in m[..e as usize].iter().enumerate() {
            let idx = top - e as usize + i;
            prod[idx] = (prod[idx] + (p as u64 - mi as u64) * c) % p as u64;
        }
        prod[top] = 0;
    }
    let low: Vec<u32> = prod[..e as usize].iter().map(|&v| v as u32).collect();
    undigits(p, &low)
}

/// Lexicographically smallest monic irreducible of degree `e` over GF(p),
/// comparing coefficients from the constant term upward.
fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    let base = Field::new(p as u64, 1).expect("prime field");
    let count = (p as u64).pow(e);
    for idx in 0..count {
        // the constant term is the most significant comparison key
        let mut coeffs = vec![0u32; e as usize + 1];
        let mut rest = idx;
        for i in (0..e as usize).rev() {
            coeffs[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        coeffs[e as usize] = 1;
        let f = Polynomial::from_raw(&base, coeffs.clone());
        if f.is_irreducible().unwrap_or(false) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over GF({p})")
}

fn build_tables(inner: &Inner) -> Tables {
    let q = inner.q;
    let order = q - 1;
    let factors = prime_factors(order as u64);
    let pow = |a: u32, mut k: u64| {
        let (mut base, mut acc) = (a, 1u32);
        while k > 0 {
            if k & 1 == 1 {
                acc = mul_by_reduction(inner, acc, base);
            }
            base = mul_by_reduction(inner, base, base);
            k >>= 1;
        }
        acc
    };
    let generator = (1..q)
        .find(|&g| factors.iter().all(|&r| pow(g, order as u64 / r) != 1))
        .expect("multiplicative group is cyclic");

    let mut exp = vec![0u32; 2 * order as usize];
    let mut log = vec![0u32; q as usize];
    let mut acc = 1u32;
    for i in 0..order {
        exp[i as usize] = acc;
        exp[(i + order) as usize] = acc;
        log[acc as usize] = i;
        acc = mul_by_reduction(inner, acc, generator);
    }
    let zech = (0..order)
        .map(|i| match digit_add(inner.p, inner.e, 1, exp[i as usize]) {
            0 => ZECH_ZERO,
            s => log[s as usize],
        })
        .collect();
    Tables { exp, log, zech }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(f: &Field, v: u64) -> FieldElement {
        f.element(v).unwrap()
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::new(7, 1).unwrap();
        assert_eq!(f.order(), 7);
        assert_eq!(f.mul(el(&f, 3), el(&f, 5)).unwrap(), el(&f, 1));
        assert_eq!(f.inv(el(&f, 3)).unwrap(), el(&f, 5));
        assert_eq!(f.sub(el(&f, 2), el(&f, 5)).unwrap(), el(&f, 4));
        assert_eq!(f.neg(el(&f, 0)).unwrap(), el(&f, 0));
    }

    #[test]
    fn gf4_modulus_and_products() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // x * x = x + 1
        assert_eq!(f.mul(el(&f, 2), el(&f, 2)).unwrap(), el(&f, 3));
        assert_eq!(f.inv(el(&f, 2)).unwrap(), el(&f, 3));
    }

    #[test]
    fn modulus_is_smallest_constant_first() {
        // x^3 + x^2 + 1 = (1, 0, 1) precedes x^3 + x + 1 = (1, 1, 0)
        assert_eq!(Field::new(2, 3).unwrap().modulus(), &[1, 0, 1, 1]);
        // x^2 + 1 is irreducible over GF(3)
        assert_eq!(Field::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(Field::new(3, 0).unwrap_err(), FieldError::BadExponent);
        assert!(matches!(Field::new(2, 17), Err(FieldError::TooLarge { .. })));
        assert!(Field::new(2, 16).is_ok());
        assert_eq!(Field::from_order(12).unwrap_err(), FieldError::NotPrimePower(12));
    }

    #[test]
    fn inverse_of_zero_and_mismatch() {
        let f = Field::new(5, 1).unwrap();
        let g = Field::new(7, 1).unwrap();
        assert_eq!(f.inv(f.zero()).unwrap_err(), FieldError::DivisionByZero);
        assert_eq!(f.add(f.one(), g.one()).unwrap_err(), FieldError::FieldMismatch { left: 5, right: 7 });
    }

    #[test]
    fn elements_in_canonical_order() {
        let f = Field::new(2, 2).unwrap();
        let vals: Vec<u32> = f.elements().iter().map(|a| a.value()).collect();
        assert_eq!(vals, vec![0, 1, 2, 3]);
        assert_eq!(Field::new(3, 1).unwrap().elements().len(), 3);
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(13), Some((13, 1)));
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(18), None);
    }

    #[test]
    fn tables_agree_with_reduction_exhaustively() {
        for (p, e) in [(2, 3), (3, 2), (2, 4), (5, 2), (7, 1)] {
            let f = Field::new(p, e).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b).unwrap(), f.mul_reference(a, b).unwrap());
                    assert_eq!(f.add(a, b).unwrap(), f.add_reference(a, b).unwrap());
                }
            }
        }
    }

    #[test]
    fn reduction_path_without_tables() {
        let f = Field::with_ceiling(2, 17, 1 << 20).unwrap();
        assert!(!f.has_tables());
        let a = f.element(12345).unwrap();
        let inv = f.inv(a).unwrap();
        assert_eq!(f.mul(a, inv).unwrap(), f.one());
    }
}
