//! Degree-truncated linear algebra used as ground truth for the basis engine.
//!
//! Everything here works with finite-dimensional slices of the polynomial
//! ring: the degree-d part for homogeneous ideals, and 𝕜[x]/𝔪^D for local
//! ideals. Columns are ordered ascending by the local degree order, so the
//! pivot of a row in semi-echelon form is the initial exponent of the
//! polynomial it represents.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::basis::HomogeneousIdeal;
use crate::error::{Error, Result};
use crate::poly::{count_of_degree, exponents_of_degree, Coeff, Exponent, Field, HomogeneousForm, Polynomial};

/// Default cap on the number of columns of one linear system.
pub const DEFAULT_MAX_COLUMNS: usize = 50_000;

/// Column cap, overridable through `SBLAB_MAX_SLICE_COLS`.
pub fn max_columns() -> usize {
    std::env::var("SBLAB_MAX_SLICE_COLS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_COLUMNS)
}

fn check_columns(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::Resource(format!("linear system needs {n} columns, cap is {cap}")));
    }
    Ok(())
}

type Row = Vec<(usize, Coeff)>;

/// Scales a row to a canonical representative: integral and primitive with a
/// positive pivot over ℚ, pivot one over 𝔽_p.
fn normalize(row: &mut Row) {
    let Some((_, lead)) = row.first() else { return };
    match lead.field() {
        Field::Rationals => {
            let mut den = BigInt::one();
            for (_, c) in row.iter() {
                den = den.lcm(c.as_rational().expect("rational").denom());
            }
            let mut g = BigInt::zero();
            for (_, c) in row.iter() {
                let q = c.as_rational().expect("rational");
                g = g.gcd(&(q.numer() * (&den / q.denom())));
            }
            if row[0].1.is_negative() {
                g = -g;
            }
            let scale = Coeff::Rational((den, g).into());
            for (_, c) in row.iter_mut() {
                *c = c.mul(&scale);
            }
        }
        Field::Prime(_) => {
            let inv = lead.inv();
            for (_, c) in row.iter_mut() {
                *c = c.mul(&inv);
            }
        }
    }
}

/// a·row − b·other, with both rows sorted by column.
fn combine(row: &Row, a: &Coeff, other: &Row, b: &Coeff) -> Row {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let take_left = j == other.len() || (i < row.len() && row[i].0 < other[j].0);
        let take_right = i == row.len() || (j < other.len() && other[j].0 < row[i].0);
        if take_left {
            out.push((row[i].0, row[i].1.mul(a)));
            i += 1;
        } else if take_right {
            out.push((other[j].0, other[j].1.mul(b).neg()));
            j += 1;
        } else {
            let c = row[i].1.mul(a).sub(&other[j].1.mul(b));
            if !c.is_zero() {
                out.push((row[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rows in semi-echelon form, keyed by pivot column.
#[derive(Default)]
struct Echelon {
    pivots: HashMap<usize, Row>,
}

impl Echelon {
    /// Eliminates pivots from the front of `row` until its first column is
    /// free; an empty result means the row was in the span.
    fn reduce(&self, mut row: Row) -> Row {
        normalize(&mut row);
        while let Some((col, lead)) = row.first() {
            let Some(p) = self.pivots.get(col) else { break };
            let lead = lead.clone();
            row = combine(&row, &p[0].1, p, &lead);
            normalize(&mut row);
        }
        row
    }

    fn insert(&mut self, row: Row) -> bool {
        let row = self.reduce(row);
        match row.first() {
            Some(&(col, _)) => {
                self.pivots.insert(col, row);
                true
            }
            None => false,
        }
    }
}

/// The degree-d part of a homogeneous ideal as a matrix over the monomials
/// of degree d.
#[derive(Clone, Debug)]
pub struct DegreeSlice {
    pub degree: u32,
    /// All monomials of the degree, ascending in the local degree order.
    pub monomial_basis: Vec<Exponent>,
    /// Spanning rows x^γ·h, sparse over column indices.
    pub matrix: Vec<Vec<(usize, Coeff)>>,
}

impl DegreeSlice {
    pub fn build(h: &HomogeneousIdeal, degree: u32) -> Result<DegreeSlice> {
        let nvars = h.ring().nvars();
        check_columns(count_of_degree(nvars, degree) as usize, max_columns())?;
        let monomial_basis = exponents_of_degree(nvars, degree);
        let index: HashMap<&Exponent, usize> = monomial_basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut matrix = Vec::new();
        for g in h.generators() {
            if g.degree() > degree {
                continue;
            }
            for gamma in exponents_of_degree(nvars, degree - g.degree()) {
                let mut row: Row = g
                    .poly()
                    .terms()
                    .iter()
                    .map(|(e, c)| (index[&e.add(&gamma)], c.clone()))
                    .collect();
                row.sort_by_key(|(i, _)| *i);
                matrix.push(row);
            }
        }
        Ok(DegreeSlice {
            degree,
            monomial_basis,
            matrix,
        })
    }

    fn echelon(&self) -> Echelon {
        let mut ech = Echelon::default();
        for row in &self.matrix {
            ech.insert(row.clone());
        }
        ech
    }

    /// Dimension of the slice.
    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    fn row_of(&self, f: &Polynomial) -> Option<Row> {
        let mut row = Vec::with_capacity(f.len());
        for (e, c) in f.terms() {
            let i = self.monomial_basis.binary_search(e).ok()?;
            row.push((i, c.clone()));
        }
        row.sort_by_key(|(i, _)| *i);
        Some(row)
    }
}

/// Decides f ∈ H by row reduction in the degree slice of f.
pub fn homog_member(f: &HomogeneousForm, h: &HomogeneousIdeal) -> Result<bool> {
    if f.poly().nvars() != h.ring().nvars() || f.poly().field() != h.ring().field {
        return Err(Error::ContextMismatch);
    }
    if f.poly().is_zero() {
        return Ok(true);
    }
    let slice = DegreeSlice::build(h, f.degree())?;
    let row = slice.row_of(f.poly()).expect("homogeneous of the slice degree");
    Ok(slice.echelon().reduce(row).is_empty())
}

/// The truncated quotient 𝕜[x]/𝔪^D with the span of a generator list.
struct Truncation {
    columns: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
    echelon: Echelon,
}

impl Truncation {
    fn new(gens: &[Polynomial], bound: u32, cap: usize) -> Result<Truncation> {
        let nvars = gens.first().map_or(0, |g| g.nvars());
        let total: u128 = (0..bound).map(|d| count_of_degree(nvars, d)).sum();
        check_columns(total.min(usize::MAX as u128) as usize, cap)?;
        let columns: Vec<Exponent> = (0..bound).flat_map(|d| exponents_of_degree(nvars, d)).collect();
        let index = columns.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let mut t = Truncation {
            columns,
            index,
            echelon: Echelon::default(),
        };
        for g in gens {
            let Some(ord) = g.ord().finite() else { continue };
            if ord >= bound {
                continue;
            }
            for shift in 0..bound - ord {
                for gamma in exponents_of_degree(nvars, shift) {
                    let row = t.row_of(&g.mul_monomial(&gamma));
                    t.echelon.insert(row);
                }
            }
        }
        Ok(t)
    }

    /// Row of f mod 𝔪^D.
    fn row_of(&self, f: &Polynomial) -> Row {
        let mut row: Row = f
            .terms()
            .iter()
            .filter_map(|(e, c)| self.index.get(e).map(|&i| (i, c.clone())))
            .collect();
        row.sort_by_key(|(i, _)| *i);
        row
    }

    fn pivots(&self) -> Vec<Exponent> {
        let mut cols: Vec<usize> = self.echelon.pivots.keys().copied().collect();
        cols.sort_unstable();
        cols.into_iter().map(|c| self.columns[c].clone()).collect()
    }
}

fn max_degree(gens: &[Polynomial]) -> u32 {
    gens.iter().filter_map(|g| g.degree()).max().unwrap_or(0)
}

/// Decides f ∈ (gens) + 𝔪^D. Requires D > deg f + max generator degree.
/// A true answer persists at smaller D but can turn false at larger D.
pub fn truncated_member(f: &Polynomial, gens: &[Polynomial], bound: u32) -> Result<bool> {
    if gens.iter().any(|g| g.nvars() != f.nvars() || g.field() != f.field()) {
        return Err(Error::ContextMismatch);
    }
    let required = f.degree().unwrap_or(0) + max_degree(gens) + 1;
    if bound < required {
        return Err(Error::TruncationTooLow { given: bound, required });
    }
    let t = Truncation::new(gens, bound, max_columns())?;
    Ok(t.echelon.reduce(t.row_of(f)).is_empty())
}

/// Minimal generators of the initial-exponent semigroup of a local ideal,
/// read off a truncation at degree D.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Staircase {
    pub bound: u32,
    pub margin: u32,
    /// Generators of degree at most D − margin.
    pub certified: Vec<Exponent>,
    /// Generators found closer to the cutoff.
    pub provisional: Vec<Exponent>,
}

impl Staircase {
    pub fn all(&self) -> Vec<Exponent> {
        let mut v = self.certified.clone();
        v.extend(self.provisional.iter().cloned());
        v
    }

    pub fn is_fully_certified(&self) -> bool {
        self.provisional.is_empty()
    }
}

/// Minimal elements under componentwise divisibility, sorted ascending.
pub fn minimal_exponents(exps: &[Exponent]) -> Vec<Exponent> {
    let mut sorted = exps.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut out: Vec<Exponent> = Vec::new();
    for e in sorted {
        // divisors have smaller degree, so they are already in `out`
        if !out.iter().any(|m| m.divides(&e)) {
            out.push(e);
        }
    }
    out
}

/// Staircase of the local ideal (gens) from the truncation at degree D, with
/// the default margin of max generator degree + 1.
pub fn staircase(gens: &[Polynomial], bound: u32) -> Result<Staircase> {
    staircase_with_margin(gens, bound, max_degree(gens) + 1)
}

pub fn staircase_with_margin(gens: &[Polynomial], bound: u32, margin: u32) -> Result<Staircase> {
    if bound == 0 {
        return Err(Error::InvalidArgument("truncation degree must be at least 1".into()));
    }
    let t = Truncation::new(gens, bound, max_columns())?;
    let minimal = minimal_exponents(&t.pivots());
    let limit = bound.saturating_sub(margin);
    let (certified, provisional) = minimal.into_iter().partition(|e| e.degree() <= limit);
    Ok(Staircase {
        bound,
        margin,
        certified,
        provisional,
    })
}

/// Exponents of degree below D outside the staircase, i.e. monomials
/// spanning (𝕜[x]/𝔪^D)/(I + 𝔪^D).
pub fn count_standard_monomials(gens: &[Polynomial], bound: u32) -> Result<usize> {
    let t = Truncation::new(gens, bound, max_columns())?;
    Ok(t.columns.len() - t.echelon.pivots.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::standard_basis;
    use crate::poly::testutil::p2;
    use crate::poly::{MonomialOrder, Ring};

    fn exps(v: &[(u32, u32)]) -> Vec<Exponent> {
        v.iter().map(|&(a, b)| Exponent::new([a, b])).collect()
    }

    fn homog(gens: &[&str]) -> HomogeneousIdeal {
        let ring = Ring::global(Field::Rationals, 2);
        HomogeneousIdeal::from_polys(ring, gens.iter().map(|s| p2(s).with_order(ring.order).unwrap())).unwrap()
    }

    fn form(s: &str) -> HomogeneousForm {
        HomogeneousForm::new(p2(s).with_order(MonomialOrder::global(2)).unwrap()).unwrap()
    }

    #[test]
    fn homogeneous_membership() {
        assert!(homog_member(&form("y^5"), &homog(&["x^2", "x*y", "y^5"])).unwrap());
        assert!(homog_member(&form("x^2*y^2"), &homog(&["x*y"])).unwrap());
        let sq = homog(&["x^4", "x^3*y", "x^2*y^2", "x^2*y^5", "x*y^6", "y^10"]);
        assert!(!homog_member(&form("y^9"), &sq).unwrap());
        assert!(homog_member(&form("x*y^8"), &sq).unwrap());
        assert!(!homog_member(&form("x + y"), &homog(&["x - y"])).unwrap());
    }

    #[test]
    fn slice_dimensions() {
        let s = DegreeSlice::build(&homog(&["x^2", "x*y"]), 4).unwrap();
        assert_eq!(s.monomial_basis.len(), 5);
        assert_eq!(s.rank(), 4);
    }

    #[test]
    fn truncated_membership() {
        let gens = [p2("x^2"), p2("y^3 - x*y")];
        assert!(truncated_member(&p2("y^5"), &gens, 12).unwrap());
        assert!(!truncated_member(&p2("y^4"), &gens, 12).unwrap());
        for g in &gens {
            assert!(truncated_member(g, &gens, 12).unwrap());
        }
        assert!(matches!(
            truncated_member(&p2("y^5"), &gens, 8),
            Err(Error::TruncationTooLow { given: 8, required: 9 })
        ));
    }

    #[test]
    fn worked_example_staircases() {
        let gens = [p2("x^2"), p2("y^3 - x*y")];
        let s = staircase(&gens, 12).unwrap();
        assert_eq!(s.certified, exps(&[(1, 1), (2, 0), (0, 5)]));
        assert!(s.is_fully_certified());
        let sq: Vec<Polynomial> = vec![p2("x^4"), p2("x^2*(y^3 - x*y)"), p2("(y^3 - x*y)^2")];
        let s = staircase(&sq, 16).unwrap();
        assert_eq!(s.certified, exps(&[(2, 2), (3, 1), (4, 0), (1, 6), (0, 9)]));
        assert_eq!(staircase(&[p2("x")], 3).unwrap().all(), exps(&[(1, 0)]));
    }

    #[test]
    fn near_cutoff_generators_are_provisional() {
        let s = staircase(&[p2("x^2"), p2("y^3 - x*y")], 8).unwrap();
        // margin 4: only degree ≤ 4 is certified
        assert_eq!(s.certified, exps(&[(1, 1), (2, 0)]));
        assert_eq!(s.provisional, exps(&[(0, 5)]));
    }

    #[test]
    fn staircase_agrees_with_engine() {
        for gens in [
            vec![p2("x^3 + y^4"), p2("x*y^2")],
            vec![p2("x^2 - y^3 + x*y^2"), p2("x*y - y^4")],
            vec![p2("y^2 + x^3"), p2("x^2*y + y^5")],
        ] {
            let sb = standard_basis(&gens, MonomialOrder::local(2)).unwrap().minimalize();
            let mut engine = sb.leading_exps().to_vec();
            engine.sort();
            let s = staircase(&gens, sb.max_order().unwrap() + 2 * 5 + 2).unwrap();
            assert_eq!(s.certified, engine, "{gens:?}");
        }
    }

    #[test]
    fn column_guardrail() {
        let r = Truncation::new(&[p2("x^2")], 20, 10);
        assert!(matches!(r, Err(Error::Resource(_))));
    }

    #[test]
    fn prime_field_rows() {
        let f = Field::prime(7).unwrap();
        let ring = Ring::local(f, 2);
        let g = [
            Polynomial::from_terms(ring, [(Exponent::new([2, 0]), f.from_i64(3)), (Exponent::new([0, 3]), f.one())]).unwrap(),
        ];
        let m = Polynomial::monomial(ring, Exponent::new([0, 3]), f.from_i64(2)).unwrap();
        assert!(!truncated_member(&m, &g, 8).unwrap());
        assert!(truncated_member(&g[0].scale(&f.from_i64(5)), &g, 8).unwrap());
    }
}
