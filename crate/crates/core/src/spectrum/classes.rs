//! Classification of low-degree messages by their roots among the β and α
//! points, and the pair weight each class is assigned by the case analysis
//! behind the closed forms.
//!
//! Notation, for a point set with `β1, β2` and `A = {α1..αm}`:
//!
//! * `A_1 = A \ {αm}`, `A_2 = A \ {α1}`; the "α side" of `β_i` is `A` for even
//!   `m` and `A_i` for odd `m`.
//! * the "rest side" of `β_i` is everything outside `{β_j} ∪ (α side)`, where
//!   `j` is the other index. It contains `β_i` itself, so double roots at `β_i`
//!   land in the D_4 / D_6 / D_8 / D_9 families.
//!
//! Families (a ranges over nonzero scalars):
//!
//! | class | members |
//! |-------|---------|
//! | S_1   | a(x-β1)(x-β2) |
//! | S_2 / S_3 | a(x-β1)(x-β2)(x-b), b ∉ A / b ∈ A |
//! | D_1(i) | a(x-β_i) |
//! | D_2(i) | a(x-β_i)g, g monic irreducible quadratic |
//! | D_3 / D_4 | a(x-β_i)(x-b), b on the α / rest side |
//! | D_5 / D_6 | a(x-β_i)(x-b)^2, b on the α / rest side |
//! | D_7 / D_8 / D_9 | a(x-β_i)(x-b1)(x-b2), b1 ≠ b2, both α / one each / both rest |
//! | M_3   | a(x-α1)(x-αm) |
//! | M_4   | a(x-α1)(x-αm)(x-b), b ∉ {β1, β2} |
//!
//! Everything else that avoids both β roots falls in M_1 (degree ≤ 2) or M_2
//! (degree ≤ 3).

use std::fmt;

use crate::code::PointSet;
use crate::field::FieldElement;
use crate::poly::{Degree, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(m: usize) -> Self {
        if m.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolyClass {
    Zero,
    /// `S_1..S_3`.
    S(u8),
    /// `D_index(i)` with `beta` = i.
    D {
        index: u8,
        beta: u8,
    },
    /// Both β values nonzero; flags membership in `M_3` / `M_4`.
    M {
        in_m3: bool,
        in_m4: bool,
    },
    /// Degree above 3.
    Unclassified,
}

impl fmt::Display for PolyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PolyClass::Zero => f.write_str("0"),
            PolyClass::S(i) => write!(f, "S_{i}"),
            PolyClass::D { index, beta } if index <= 2 => write!(f, "D_{index}({beta})"),
            PolyClass::D { index, beta } => write!(f, "D_{index}(m,{beta})"),
            PolyClass::M { in_m3: true, .. } => f.write_str("M_3"),
            PolyClass::M { in_m4: true, .. } => f.write_str("M_4"),
            PolyClass::M { .. } => f.write_str("M"),
            PolyClass::Unclassified => f.write_str("unclassified"),
        }
    }
}

/// The α points on `β_i`'s side for this parity.
pub(crate) fn alpha_side(points: &PointSet, i: usize) -> &[FieldElement] {
    let a = points.alphas();
    match (Parity::of(a.len()), i) {
        (Parity::Even, _) => a,
        (Parity::Odd, 1) => &a[..a.len() - 1],
        (Parity::Odd, _) => &a[1..],
    }
}

/// Elements outside `{β_j}` and `β_i`'s α side.
pub(crate) fn rest_side(points: &PointSet, i: usize) -> Vec<FieldElement> {
    let other = points.beta(3 - i);
    let side = alpha_side(points, i);
    points.field().elements().into_iter().filter(|&x| x != other && !side.contains(&x)).collect()
}

/// Divides `f` by `(x - r)`; `r` must be a root.
fn deflate(f: &Polynomial, r: FieldElement) -> Polynomial {
    let field = f.field();
    let lin = Polynomial::from_roots(field, field.one(), &[r]).expect("monic");
    let (quot, rem) = f.div_rem(&lin).expect("same field");
    debug_assert!(rem.is_zero());
    quot
}

/// Roots of a polynomial of degree at most 2, with multiplicity.
fn small_roots(g: &Polynomial) -> Vec<FieldElement> {
    let mut out = Vec::new();
    let mut g = g.clone();
    while let Degree::Finite(d) = g.degree() {
        if d == 0 {
            break;
        }
        match g.roots().first() {
            Some(&r) => {
                out.push(r);
                g = deflate(&g, r);
            }
            None => break,
        }
    }
    out
}

pub fn classify(points: &PointSet, f: &Polynomial) -> PolyClass {
    let deg = match f.degree() {
        Degree::NegInfinity => return PolyClass::Zero,
        Degree::Finite(d) if d > 3 => return PolyClass::Unclassified,
        Degree::Finite(d) => d,
    };
    let alphas = points.alphas();
    let (b1, b2) = (points.beta1(), points.beta2());
    let z1 = f.eval(b1).expect("same field").is_zero();
    let z2 = f.eval(b2).expect("same field").is_zero();

    match (z1, z2) {
        (true, true) => {
            let g = deflate(&deflate(f, b1), b2);
            match small_roots(&g).first() {
                None => PolyClass::S(1),
                Some(b) if alphas.contains(b) => PolyClass::S(3),
                Some(_) => PolyClass::S(2),
            }
        }
        (true, false) | (false, true) => {
            let i = if z1 { 1 } else { 2 };
            let g = deflate(f, points.beta(i));
            let side = alpha_side(points, i);
            let roots = small_roots(&g);
            let on_side = roots.iter().filter(|r| side.contains(r)).count();
            let index = match (g.degree(), roots.as_slice()) {
                (Degree::Finite(0), _) => 1,
                (Degree::Finite(2), []) => 2,
                (Degree::Finite(1), _) => {
                    if on_side == 1 {
                        3
                    } else {
                        4
                    }
                }
                (_, [r1, r2]) if r1 == r2 => {
                    if on_side > 0 {
                        5
                    } else {
                        6
                    }
                }
                _ => match on_side {
                    2 => 7,
                    1 => 8,
                    _ => 9,
                },
            };
            PolyClass::D { index, beta: i as u8 }
        }
        (false, false) => {
            let ends = [alphas[0], alphas[alphas.len() - 1]];
            let vanish = alphas.len() >= 2 && ends.iter().all(|&a| f.eval(a).expect("same field").is_zero());
            PolyClass::M { in_m3: vanish && deg == 2, in_m4: vanish && deg == 3 }
        }
    }
}

/// The pair weight the case analysis assigns to a nonzero class, for codes of
/// dimension `k` in {3, 4} with `m` α points.
pub fn predicted_weight(k: usize, m: usize, class: PolyClass) -> Option<usize> {
    use PolyClass::*;
    let full = match Parity::of(m) {
        Parity::Even => 2 * m,
        Parity::Odd => 2 * m - 1,
    };
    let odd = m % 2 == 1;
    Some(match (k, class) {
        (_, Zero) => 0,
        (3 | 4, S(1)) => full,
        (4, S(2)) => full,
        (4, S(3)) => 2 * m - 2,
        (3 | 4, D { index: 1 | 2 | 4 | 6 | 9, .. }) => full,
        (3 | 4, D { index: 3 | 5 | 8, .. }) => full - 1,
        (4, D { index: 7, .. }) => full - 2,
        (3, M { in_m3: true, .. }) if odd => full - 1,
        (4, M { in_m4: true, .. }) if odd => full - 1,
        (3 | 4, M { .. }) => full,
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn setup(q: u64, m: usize) -> (Field, PointSet) {
        let f = Field::from_order(q).unwrap();
        let p = PointSet::default_for(&f, m).unwrap();
        (f, p)
    }

    fn roots(f: &Field, r: &[u32]) -> Polynomial {
        let r: Vec<FieldElement> = r.iter().map(|&v| f.element(v as u64).unwrap()).collect();
        Polynomial::from_roots(f, f.one(), &r).unwrap()
    }

    #[test]
    fn sides() {
        let (_, p) = setup(7, 5);
        let vals = |s: &[FieldElement]| s.iter().map(|e| e.value()).collect::<Vec<_>>();
        assert_eq!(vals(alpha_side(&p, 1)), vec![2, 3, 4, 5]);
        assert_eq!(vals(alpha_side(&p, 2)), vec![3, 4, 5, 6]);
        assert_eq!(vals(&rest_side(&p, 1)), vec![0, 6]);
        assert_eq!(vals(&rest_side(&p, 2)), vec![1, 2]);
        let (_, p) = setup(7, 4);
        assert_eq!(vals(&rest_side(&p, 1)), vec![0, 6]);
    }

    #[test]
    fn classification_examples() {
        let (f, p) = setup(7, 5);
        // alphas 2..6, beta1 = 0, beta2 = 1
        assert_eq!(classify(&p, &Polynomial::zero(&f)), PolyClass::Zero);
        assert_eq!(classify(&p, &roots(&f, &[0, 1])), PolyClass::S(1));
        assert_eq!(classify(&p, &roots(&f, &[0, 1, 0])), PolyClass::S(2));
        assert_eq!(classify(&p, &roots(&f, &[0, 1, 4])), PolyClass::S(3));
        assert_eq!(classify(&p, &roots(&f, &[0])), PolyClass::D { index: 1, beta: 1 });
        assert_eq!(classify(&p, &roots(&f, &[0, 6])), PolyClass::D { index: 4, beta: 1 });
        assert_eq!(classify(&p, &roots(&f, &[1, 6])), PolyClass::D { index: 3, beta: 2 });
        assert_eq!(classify(&p, &roots(&f, &[0, 0])), PolyClass::D { index: 4, beta: 1 });
        assert_eq!(classify(&p, &roots(&f, &[0, 3, 3])), PolyClass::D { index: 5, beta: 1 });
        assert_eq!(classify(&p, &roots(&f, &[0, 0, 0])), PolyClass::D { index: 6, beta: 1 });
        assert_eq!(classify(&p, &roots(&f, &[0, 2, 5])), PolyClass::D { index: 7, beta: 1 });
        assert_eq!(classify(&p, &roots(&f, &[0, 2, 6])), PolyClass::D { index: 8, beta: 1 });
        assert_eq!(classify(&p, &roots(&f, &[1, 2, 1])), PolyClass::D { index: 9, beta: 2 });
        assert_eq!(classify(&p, &roots(&f, &[2, 6])), PolyClass::M { in_m3: true, in_m4: false });
        assert_eq!(classify(&p, &roots(&f, &[2, 6, 2])), PolyClass::M { in_m3: false, in_m4: true });
        assert_eq!(classify(&p, &roots(&f, &[3])), PolyClass::M { in_m3: false, in_m4: false });
        // x^2 + 1 has no roots in GF(7); times (x - beta2)
        let irr = Polynomial::from_raw(&f, vec![1, 0, 1]).mul(&roots(&f, &[1])).unwrap();
        assert_eq!(classify(&p, &irr), PolyClass::D { index: 2, beta: 2 });
        assert_eq!(classify(&p, &Polynomial::from_raw(&f, vec![0, 0, 0, 0, 1])), PolyClass::Unclassified);
    }

    #[test]
    fn predicted_weights() {
        assert_eq!(predicted_weight(3, 4, PolyClass::D { index: 3, beta: 1 }), Some(7));
        assert_eq!(predicted_weight(3, 5, PolyClass::M { in_m3: true, in_m4: false }), Some(8));
        assert_eq!(predicted_weight(4, 5, PolyClass::D { index: 7, beta: 2 }), Some(7));
        assert_eq!(predicted_weight(4, 6, PolyClass::S(3)), Some(10));
        assert_eq!(predicted_weight(5, 6, PolyClass::S(1)), None);
    }
}
