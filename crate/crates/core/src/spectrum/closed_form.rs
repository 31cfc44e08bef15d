//! Closed-form pair-weight distributions for dimensions 3 and 4.
//!
//! With `k` in {3, 4} the block width is 1, so `m1 = m` and the parity of `m`
//! selects the branch.

use crate::code::CodeSpec;
use crate::field::prime_power;

use super::{SpectrumError, WeightDistribution};

fn check(q: u32, m: usize, min_m: usize) -> Result<(i128, i128), SpectrumError> {
    if prime_power(q as u64).is_none() {
        return Err(SpectrumError::BadParams(format!("{q} is not a prime power")));
    }
    if m < min_m || m + 2 > q as usize {
        return Err(SpectrumError::BadParams(format!("need {min_m} <= m <= q-2, got m={m}, q={q}")));
    }
    Ok((q as i128, m as i128))
}

fn build(parts: &[(i128, i128)]) -> WeightDistribution {
    WeightDistribution::from_counts(parts.iter().map(|&(w, c)| {
        debug_assert!(c >= 0 && w >= 0);
        (w as usize, c as u64)
    }))
}

pub fn closed_form_a3(q: u32, m: usize) -> Result<WeightDistribution, SpectrumError> {
    let (q, m) = check(q, m, 4)?;
    Ok(if m % 2 == 0 {
        build(&[(0, 1), (2 * m - 1, 2 * m * (q - 1)), (2 * m, (q * q + q - 2 * m + 1) * (q - 1))])
    } else {
        build(&[(0, 1), (2 * m - 2, (2 * m - 1) * (q - 1)), (2 * m - 1, (q * q + q - 2 * m + 2) * (q - 1))])
    })
}

pub fn closed_form_a4(q: u32, m: usize) -> Result<WeightDistribution, SpectrumError> {
    let (q, m) = check(q, m, 5)?;
    Ok(if m % 2 == 0 {
        build(&[
            (0, 1),
            (2 * m - 2, m * m * (q - 1)),
            (2 * m - 1, 2 * m * (q + 1 - m) * (q - 1)),
            (2 * m, (q * q * q + q * q + q + 1 + m * m - 2 * m * (q + 1)) * (q - 1)),
        ])
    } else {
        build(&[
            (0, 1),
            (2 * m - 3, (m - 2) * (m - 1) * (q - 1)),
            (2 * m - 2, ((2 * m - 1) * q - 2 * m * m + 7 * m - 2) * (q - 1)),
            (2 * m - 1, (q * q * q + q * q + (2 - 2 * m) * q + m * m - 4 * m + 1) * (q - 1)),
        ])
    })
}

/// The closed form matching `spec`, or `None` when `k` is not 3 or 4.
pub fn closed_form_for(spec: &CodeSpec) -> Option<Result<WeightDistribution, SpectrumError>> {
    match spec.k() {
        3 => Some(closed_form_a3(spec.q(), spec.m())),
        4 => Some(closed_form_a4(spec.q(), spec.m())),
        _ => None,
    }
}
