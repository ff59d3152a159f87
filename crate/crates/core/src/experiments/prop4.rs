//! Both sides of the criterion for I ∩ 𝔪^{m+l} = (I ∩ 𝔪^l)·𝔪^m (all m ≥ 0)
//! in terms of a minimal standard basis f₁,…,f_p with initial exponents
//! α₁ ≤ … ≤ α_p: with r = r(l) = #{i : |αᵢ| ≤ l}, the equality holds for all
//! m iff r ≥ 1 and every f_j, j > r, lies in Σ_{i≤r} 𝔪^{|α_j|−|αᵢ|}·fᵢ.

use serde::Serialize;

use super::{ProblemIdeals, Report, Table};
use crate::error::{Error, Result};
use crate::ideal::{ideal_equal, ideal_product, ideal_sum, intersect, m_power, member, IdealHandle, Setting};
use crate::parser::ProblemSpec;
use crate::poly::{exponents_of_degree, Exponent};

#[derive(Clone, Debug, Serialize)]
pub struct RhsCheck {
    /// 1-based basis index j > r(l).
    pub j: usize,
    pub member: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop4Report {
    pub problem: serde_json::Value,
    pub l: u32,
    pub m_max: u32,
    pub basis_exps: Vec<Exponent>,
    pub r_of_l: usize,
    /// Left side for m = 0..=m_max.
    pub lhs_holds: Vec<bool>,
    pub rhs_checks: Vec<RhsCheck>,
    pub rhs_holds: bool,
    pub consistent: bool,
}

pub fn prop4_experiment(spec: &ProblemSpec, l: u32, m_max: u32) -> Result<Prop4Report> {
    if l == 0 {
        return Err(Error::InvalidArgument("l must be at least 1".into()));
    }
    let ideals = ProblemIdeals::new(spec)?;
    let ideal = ideal_sum(&ideals.j, &ideals.i)?;
    let (field, nvars) = (spec.field, spec.nvars());
    let m_pow = |k| m_power(field, nvars, Setting::Local, k);

    let basis = ideal.basis()?;
    let exps = basis.leading_exps().to_vec();
    let r = exps.iter().filter(|e| e.degree() <= l).count();

    let low = intersect(&ideal, &m_pow(l))?;
    let mut lhs_holds = Vec::new();
    for m in 0..=m_max {
        let left = intersect(&ideal, &m_pow(m + l))?;
        let right = if m == 0 { low.clone() } else { ideal_product(&low, &m_pow(m))? };
        lhs_holds.push(ideal_equal(&left, &right)?);
    }

    let mut rhs_checks = Vec::new();
    if r >= 1 {
        for j in r..exps.len() {
            let dj = exps[j].degree();
            let mut gens = Vec::new();
            for (f, e) in basis.elements().iter().zip(&exps).take(r) {
                for gamma in exponents_of_degree(nvars, dj - e.degree()) {
                    gens.push(f.mul_monomial(&gamma));
                }
            }
            let target = IdealHandle::new(field, nvars, Setting::Local, gens)?;
            rhs_checks.push(RhsCheck {
                j: j + 1,
                member: member(&basis.elements()[j], &target)?,
            });
        }
    }
    let rhs_holds = r >= 1 && rhs_checks.iter().all(|c| c.member);
    let consistent = lhs_holds.iter().all(|&b| b) == rhs_holds;
    Ok(Prop4Report {
        problem: spec.summary_json(),
        l,
        m_max,
        basis_exps: exps,
        r_of_l: r,
        lhs_holds,
        rhs_checks,
        rhs_holds,
        consistent,
    })
}

impl Report for Prop4Report {
    fn table(&self) -> Option<Table> {
        Some(Table {
            header: vec!["m", "lhs_holds"],
            rows: self
                .lhs_holds
                .iter()
                .enumerate()
                .map(|(m, h)| vec![m.to_string(), h.to_string()])
                .collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_problem;

    fn worked() -> ProblemSpec {
        parse_problem("ring(x, y)\nfield Q\nI = [x^2, y^3 - x*y]\n").unwrap()
    }

    #[test]
    fn worked_example_l5() {
        let r = prop4_experiment(&worked(), 5, 4).unwrap();
        assert_eq!(r.r_of_l, 3);
        assert!(r.rhs_checks.is_empty() && r.rhs_holds);
        assert!(r.lhs_holds.iter().all(|&b| b));
        assert!(r.consistent);
    }

    #[test]
    fn worked_example_l1() {
        let r = prop4_experiment(&worked(), 1, 4).unwrap();
        assert_eq!(r.r_of_l, 0);
        assert!(!r.rhs_holds);
        assert!(r.lhs_holds.iter().any(|&b| !b));
        assert!(r.consistent);
    }

    #[test]
    fn principal_univariate() {
        let spec = parse_problem("ring(x)\nfield Q\nI = [x]\n").unwrap();
        let r = prop4_experiment(&spec, 1, 4).unwrap();
        assert!(r.rhs_holds && r.lhs_holds.iter().all(|&b| b) && r.consistent);
    }
}
