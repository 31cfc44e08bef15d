//! Shared inputs for the criterion benchmarks.

use sympair_core::poly::polynomial_from_index;
use sympair_core::{CodeSpec, Field, SymbolVector};

/// Codes of increasing size used by the enumeration benchmarks, as `(q, k, m)`.
pub const ENUMERATION_CASES: [(u64, usize, usize); 4] = [(7, 3, 5), (11, 4, 9), (13, 4, 11), (13, 5, 11)];

pub fn code(q: u64, k: usize, m: usize) -> CodeSpec {
    CodeSpec::with_defaults(&Field::from_order(q).expect("prime power"), k, m).expect("valid parameters")
}

/// Deterministic pseudo-random codewords of `spec`.
pub fn codewords(spec: &CodeSpec, count: usize) -> Vec<SymbolVector> {
    let size = (spec.q() as u64).pow(spec.k() as u32);
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    (0..count)
        .map(|_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let f = polynomial_from_index(spec.field(), spec.k(), (state >> 11) % size);
            spec.encode(&f).expect("degree below k").entries
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_are_valid() {
        for (q, k, m) in ENUMERATION_CASES {
            let spec = code(q, k, m);
            let words = codewords(&spec, 8);
            assert!(words.iter().all(|w| w.len() == spec.n()));
        }
    }
}
