//! Orders of minimal standard bases of J + Iⁿ as n grows.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::{run_jobs, ProblemIdeals, Report, Table, Truncation};
use crate::basis::PairStrategy;
use crate::error::{Error, Result};
use crate::ideal::{graded_minimal_basis, IdealHandle};
use crate::parser::ProblemSpec;
use crate::poly::{render_rational, Exponent};

/// One n of a growth run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub n: u32,
    /// Number of minimal generators of the tangent cone of J + Iⁿ.
    pub p_n: usize,
    /// Orders r₁ ≤ … ≤ r_p of the minimal standard basis.
    pub ord_list: Vec<u32>,
    pub max_ord: u32,
    /// Initial exponents of the same basis elements.
    pub leading_exps: Vec<Exponent>,
    /// Largest |exp(fᵢ)|; equals max_ord since the order refines degree.
    pub max_exp_degree: u32,
}

/// The (p_n, ord multiset) pair of an ideal, an invariant of the ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisProfile {
    pub p: usize,
    pub ords: Vec<u32>,
    pub leading_exps: Vec<Exponent>,
}

pub fn basis_profile(ideal: &IdealHandle) -> Result<BasisProfile> {
    let basis = graded_minimal_basis(ideal)?;
    let mut pairs: Vec<(u32, Exponent)> = basis
        .iter()
        .map(|f| (f.ord().finite().expect("nonzero"), f.lead_exp().cloned().expect("nonzero")))
        .collect();
    pairs.sort();
    Ok(BasisProfile {
        p: pairs.len(),
        ords: pairs.iter().map(|(o, _)| *o).collect(),
        leading_exps: pairs.into_iter().map(|(_, e)| e).collect(),
    })
}

impl GrowthRow {
    fn from_profile(n: u32, profile: BasisProfile) -> GrowthRow {
        let max_ord = profile.ords.iter().copied().max().unwrap_or(0);
        let max_exp_degree = profile.leading_exps.iter().map(|e| e.degree()).max().unwrap_or(0);
        GrowthRow {
            n,
            p_n: profile.p,
            ord_list: profile.ords,
            max_ord,
            leading_exps: profile.leading_exps,
            max_exp_degree,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthConfig {
    pub n_max: u32,
    pub order: &'static str,
    pub strategy: PairStrategy,
    /// Tail-reduction cutoff; growth runs use minimal (unreduced) bases.
    pub reduce_cutoff: Option<u32>,
}

/// Names of the two quantities the rows measure.
#[derive(Clone, Debug, Serialize)]
pub struct Readings {
    pub max_ord: &'static str,
    pub max_exp_degree: &'static str,
}

const READINGS: Readings = Readings {
    max_ord: "largest ord(f_i) over a minimal standard basis of J + I^n; bounded by lambda*n",
    max_exp_degree: "largest |exp(f_i)| over the same basis; bounded by a polynomial P(n)",
};

#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub problem: serde_json::Value,
    pub config: GrowthConfig,
    pub readings: Readings,
    pub rows: Vec<GrowthRow>,
    /// max over rows of ceil(max_ord / n).
    pub lambda_hat: Option<u32>,
    /// Least-squares slope of max_ord against n, as an exact fraction.
    pub slope_estimate: Option<String>,
    pub truncated: Option<Truncation>,
}

/// Exact least-squares slope of the points, or None with fewer than two.
pub fn least_squares_slope(points: &[(u32, u32)]) -> Option<BigRational> {
    if points.len() < 2 {
        return None;
    }
    let k = BigInt::from(points.len());
    let sx: BigInt = points.iter().map(|&(x, _)| BigInt::from(x)).sum();
    let sy: BigInt = points.iter().map(|&(_, y)| BigInt::from(y)).sum();
    let sxy: BigInt = points.iter().map(|&(x, y)| BigInt::from(x) * y).sum();
    let sxx: BigInt = points.iter().map(|&(x, _)| BigInt::from(x) * x).sum();
    let den = &k * sxx - &sx * &sx;
    if den == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(k * sxy - sx * sy, den))
}

pub fn lambda_hat(rows: &[GrowthRow]) -> Option<u32> {
    rows.iter().map(|r| r.max_ord.div_ceil(r.n)).max()
}

pub fn growth_experiment(spec: &ProblemSpec, n_max: u32) -> Result<GrowthReport> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("nmax must be at least 1".into()));
    }
    let ideals = ProblemIdeals::new(spec)?;
    let ns: Vec<u32> = (1..=n_max).collect();
    let results = run_jobs(&ns, |&n| ideals.j_plus_power(n).and_then(|k| basis_profile(&k)));

    let mut rows = Vec::new();
    let mut truncated = None;
    for (n, result) in ns.into_iter().zip(results) {
        match result {
            Ok(profile) => rows.push(GrowthRow::from_profile(n, profile)),
            Err(e) => {
                truncated = Some(Truncation::from_error(n, e)?);
                break;
            }
        }
    }
    let points: Vec<(u32, u32)> = rows.iter().map(|r| (r.n, r.max_ord)).collect();
    Ok(GrowthReport {
        problem: spec.summary_json(),
        config: GrowthConfig {
            n_max,
            order: "paper_local_deglex",
            strategy: PairStrategy::Normal,
            reduce_cutoff: None,
        },
        readings: READINGS,
        lambda_hat: lambda_hat(&rows),
        slope_estimate: least_squares_slope(&points).map(|q| render_rational(&q)),
        rows,
        truncated,
    })
}

impl Report for GrowthReport {
    fn table(&self) -> Option<Table> {
        Some(Table {
            header: vec!["n", "p_n", "max_ord", "ord_list"],
            rows: self
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.p_n.to_string(),
                        r.max_ord.to_string(),
                        r.ord_list.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(" "),
                    ]
                })
                .collect(),
        })
    }
}
