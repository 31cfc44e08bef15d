//! Cardinalities of the polynomial families used by the closed forms, counted
//! two ways: by building every member from its defining product, and by the
//! closed-form count.

use std::collections::HashSet;

use serde::Serialize;

use crate::code::PointSet;
use crate::field::{Field, FieldElement};
use crate::poly::{monic_polynomials, polynomial_from_index, Polynomial};

use super::classes::{alpha_side, classify, rest_side, Parity, PolyClass};
use super::{EnumConfig, SpectrumError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub class: String,
    /// `enumerated - formula`.
    pub delta: i64,
    pub enumerated: u64,
    pub formula: u64,
}

impl CensusRow {
    fn new(class: String, enumerated: u64, formula: u64) -> Self {
        CensusRow { class, delta: enumerated as i64 - formula as i64, enumerated, formula }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusTable {
    /// D families sharing a β index never share a member.
    pub d_families_disjoint: bool,
    pub m: usize,
    /// Every constructed member classifies back into its own family.
    pub membership_consistent: bool,
    pub parity: String,
    pub q: u32,
    pub rows: Vec<CensusRow>,
}

impl CensusTable {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.delta == 0)
    }

    pub fn passes(&self) -> bool {
        self.all_match() && self.d_families_disjoint && self.membership_consistent
    }

    pub fn row(&self, class: &str) -> Option<&CensusRow> {
        self.rows.iter().find(|r| r.class == class)
    }
}

type Members = HashSet<Polynomial>;

struct Builder<'a> {
    field: &'a Field,
    units: Vec<FieldElement>,
}

impl Builder<'_> {
    /// `{ a * prod(x - r) : a != 0 }` for each root list.
    fn products<I: IntoIterator<Item = Vec<FieldElement>>>(&self, root_lists: I) -> Members {
        let mut out = Members::new();
        for roots in root_lists {
            for &a in &self.units {
                out.insert(Polynomial::from_roots(self.field, a, &roots).expect("nonzero leading"));
            }
        }
        out
    }
}

fn unordered_pairs(set: &[FieldElement]) -> Vec<(FieldElement, FieldElement)> {
    let mut out = Vec::new();
    for (i, &a) in set.iter().enumerate() {
        for &b in &set[i + 1..] {
            out.push((a, b));
        }
    }
    out
}

/// Counts every family for the given β/α points. The even/odd branch follows
/// the parity of `m`; `2 <= m <= q - 2` is required and `q^4` must fit the
/// enumeration ceiling (the M families are found by filtering all cubics).
pub fn family_census(points: &PointSet, cfg: &EnumConfig) -> Result<CensusTable, SpectrumError> {
    let field = points.field();
    let q = field.order();
    let m = points.m();
    if m < 2 || m + 2 > q as usize {
        return Err(SpectrumError::BadParams(format!("census needs 2 <= m <= q-2, got m={m}, q={q}")));
    }
    cfg.check(q, 4)?;
    let parity = Parity::of(m);
    let b = Builder { field, units: field.units().collect() };
    let alphas = points.alphas();
    let (b1, b2) = (points.beta1(), points.beta2());

    let (qi, mi) = (q as u64, m as u64);
    let unit = qi - 1;
    let even = parity == Parity::Even;

    let mut rows = Vec::new();
    let mut push = |class: String, members: &Members, formula: u64| {
        rows.push(CensusRow::new(class, members.len() as u64, formula));
    };

    let non_alpha: Vec<FieldElement> = field.elements().into_iter().filter(|x| !alphas.contains(x)).collect();
    let s1 = b.products([vec![b1, b2]]);
    let s2 = b.products(non_alpha.iter().map(|&x| vec![b1, b2, x]));
    let s3 = b.products(alphas.iter().map(|&x| vec![b1, b2, x]));
    push("S_1".into(), &s1, unit);
    push("S_2".into(), &s2, (qi - mi) * unit);
    push("S_3".into(), &s3, mi * unit);

    let mut membership_consistent = [(&s1, 1u8), (&s2, 2), (&s3, 3)]
        .iter()
        .all(|(set, idx)| set.iter().all(|f| classify(points, f) == PolyClass::S(*idx)));

    let irreducible_quadratics: Vec<Polynomial> =
        monic_polynomials(field, 2).filter(|g| g.is_irreducible().expect("degree 2")).collect();

    let mut d_families_disjoint = true;
    for i in 1..=2usize {
        let beta = points.beta(i);
        let side = alpha_side(points, i);
        let rest = rest_side(points, i);
        let lin = Polynomial::from_roots(field, field.one(), &[beta]).expect("monic");

        let d1 = b.products([vec![beta]]);
        let d2: Members = irreducible_quadratics
            .iter()
            .flat_map(|g| {
                let base = lin.mul(g).expect("same field");
                b.units.iter().map(move |&a| base.scale(a).expect("same field"))
            })
            .collect();
        let d3 = b.products(side.iter().map(|&x| vec![beta, x]));
        let d4 = b.products(rest.iter().map(|&x| vec![beta, x]));
        let d5 = b.products(side.iter().map(|&x| vec![beta, x, x]));
        let d6 = b.products(rest.iter().map(|&x| vec![beta, x, x]));
        let d7 = b.products(unordered_pairs(side).into_iter().map(|(x, y)| vec![beta, x, y]));
        let d8 = b.products(side.iter().flat_map(|&x| rest.iter().map(move |&y| vec![beta, x, y])));
        let d9 = b.products(unordered_pairs(&rest).into_iter().map(|(x, y)| vec![beta, x, y]));

        let formulas = if even {
            [
                unit,
                qi * unit * unit / 2,
                mi * unit,
                (qi - 1 - mi) * unit,
                mi * unit,
                (qi - 1 - mi) * unit,
                (mi - 1) * mi * unit / 2,
                mi * (qi - 1 - mi) * unit,
                (qi - 2 - mi) * (qi - 1 - mi) * unit / 2,
            ]
        } else {
            [
                unit,
                qi * unit * unit / 2,
                (mi - 1) * unit,
                (qi - mi) * unit,
                (mi - 1) * unit,
                (qi - mi) * unit,
                (mi - 2) * (mi - 1) * unit / 2,
                (mi - 1) * (qi - mi) * unit,
                (qi - 1 - mi) * (qi - mi) * unit / 2,
            ]
        };
        let families = [&d1, &d2, &d3, &d4, &d5, &d6, &d7, &d8, &d9];
        for (idx, (set, formula)) in families.iter().zip(formulas).enumerate() {
            let index = idx as u8 + 1;
            let label = PolyClass::D { index, beta: i as u8 }.to_string();
            push(label, set, formula);
            membership_consistent &= set.iter().all(|f| classify(points, f) == PolyClass::D { index, beta: i as u8 });
            for other in &families[idx + 1..] {
                d_families_disjoint &= set.is_disjoint(other);
            }
        }
        let other = points.beta(3 - i);
        d_families_disjoint &= families.iter().all(|set| {
            set.iter()
                .all(|f| f.eval(beta).expect("same field").is_zero() && !f.eval(other).expect("same field").is_zero())
        });
    }

    let nonvanishing = |len: usize| -> Members {
        (0..(qi).pow(len as u32))
            .map(|idx| polynomial_from_index(field, len, idx))
            .filter(|f| !f.eval(b1).expect("same field").is_zero() && !f.eval(b2).expect("same field").is_zero())
            .collect()
    };
    let m1 = nonvanishing(3);
    let m2 = nonvanishing(4);
    let ends = [alphas[0], alphas[m - 1]];
    let m3 = b.products([ends.to_vec()]);
    let others: Vec<FieldElement> = field.elements().into_iter().filter(|&x| x != b1 && x != b2).collect();
    let m4 = b.products(others.iter().map(|&x| vec![ends[0], ends[1], x]));
    push("M_1".into(), &m1, qi * unit * unit);
    push("M_2".into(), &m2, qi * qi * unit * unit);
    push("M_3".into(), &m3, unit);
    push("M_4".into(), &m4, (qi - 2) * unit);
    membership_consistent &= m3.iter().all(|f| matches!(classify(points, f), PolyClass::M { in_m3: true, .. }))
        && m4.iter().all(|f| matches!(classify(points, f), PolyClass::M { in_m4: true, .. }))
        && m3.is_subset(&m1)
        && m4.is_subset(&m2);

    Ok(CensusTable { q, m, parity: parity.to_string(), rows, d_families_disjoint, membership_consistent })
}
