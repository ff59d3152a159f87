//! The worked example I = (x², y³ − xy): closed form of the tangent cones of
//! its powers and the witnesses y^{4n+1} ∈ (Iⁿ)* \ (I*)ⁿ.

use serde::Serialize;

use super::{run_jobs, Report};
use crate::basis::tangent_cone_of;
use crate::error::{Error, Result};
use crate::ideal::{ideal_equal, ideal_power, ideal_sum, member, IdealHandle, Setting};
use crate::poly::{Exponent, Field, MonomialOrder, Polynomial, Ring};

const NAMES: [&str; 2] = ["x", "y"];

#[derive(Clone, Debug, Serialize)]
pub struct PaperExampleRow {
    pub n: u32,
    pub cone_generators: Vec<String>,
    pub expected_generators: Vec<String>,
    pub cone_matches: bool,
    /// y^{4n+1} ∈ (Iⁿ)*, checked for n ≥ 2.
    pub witness_in_cone_of_power: Option<bool>,
    /// y^{4n+1} ∈ (I*)ⁿ, checked for n ≥ 2.
    pub witness_in_power_of_cone: Option<bool>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PaperExampleReport {
    pub n_max: u32,
    pub rows: Vec<PaperExampleRow>,
    pub passed: bool,
    /// First failing n.
    pub failed_at: Option<u32>,
}

impl Report for PaperExampleReport {}

fn names() -> Vec<String> {
    NAMES.iter().map(|s| s.to_string()).collect()
}

fn monomial(ring: Ring, a: u32, b: u32) -> Polynomial {
    Polynomial::monomial(ring, Exponent::new([a, b]), ring.field.one()).expect("two variables")
}

fn show(h: &IdealHandle) -> Vec<String> {
    let names = names();
    let mut v: Vec<String> = h.generators().iter().map(|g| g.display_with(&names).to_string()).collect();
    v.sort();
    v
}

/// The local ideal (x², y³ − xy).
pub fn example_ideal() -> IdealHandle {
    let ring = Ring::local(Field::Rationals, 2);
    let g = monomial(ring, 0, 3).sub(&monomial(ring, 1, 1)).expect("same ring");
    IdealHandle::new(Field::Rationals, 2, Setting::Local, [monomial(ring, 2, 0), g]).expect("valid generators")
}

/// ((xy, x²)ⁿ, {xⁱ y^{4n−3i+1} : 0 ≤ i ≤ n−1}) in the graded ring.
pub fn expected_cone(n: u32) -> Result<IdealHandle> {
    let ring = Ring::global(Field::Rationals, 2);
    let base = IdealHandle::new(
        Field::Rationals,
        2,
        Setting::Homogeneous,
        [monomial(ring, 1, 1), monomial(ring, 2, 0)],
    )?;
    let tails = IdealHandle::new(
        Field::Rationals,
        2,
        Setting::Homogeneous,
        (0..n).map(|i| monomial(ring, i, 4 * n - 3 * i + 1)),
    )?;
    ideal_sum(&ideal_power(&base, n)?, &tails)
}

fn cone(ideal: &IdealHandle) -> Result<IdealHandle> {
    IdealHandle::from_homogeneous(&tangent_cone_of(ideal.basis()?)?)
}

fn check_row(n: u32, i: &IdealHandle, cone_of_i: &IdealHandle) -> Result<PaperExampleRow> {
    let power_cone = cone(&ideal_power(i, n)?)?;
    let expected = expected_cone(n)?;
    let cone_matches = ideal_equal(&power_cone, &expected)?;
    let (mut in_cone, mut in_power) = (None, None);
    if n >= 2 {
        let w = monomial(Ring::global(Field::Rationals, 2), 0, 4 * n + 1);
        in_cone = Some(member(&w, &power_cone)?);
        in_power = Some(member(&w, &ideal_power(cone_of_i, n)?)?);
    }
    let passed = cone_matches && in_cone != Some(false) && in_power != Some(true);
    Ok(PaperExampleRow {
        n,
        cone_generators: show(&power_cone),
        expected_generators: show(&expected),
        cone_matches,
        witness_in_cone_of_power: in_cone,
        witness_in_power_of_cone: in_power,
        passed,
    })
}

pub fn paper_example_check(n_max: u32) -> Result<PaperExampleReport> {
    if n_max < 2 {
        return Err(Error::InvalidArgument("nmax must be at least 2".into()));
    }
    let i = example_ideal();
    let cone_of_i = cone(&i)?;
    debug_assert_eq!(cone_of_i.ring().order, MonomialOrder::global(2));
    let ns: Vec<u32> = (1..=n_max).collect();
    let rows = run_jobs(&ns, |&n| check_row(n, &i, &cone_of_i))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let failed_at = rows.iter().find(|r| !r.passed).map(|r| r.n);
    Ok(PaperExampleReport {
        n_max,
        passed: failed_at.is_none(),
        failed_at,
        rows,
    })
}
