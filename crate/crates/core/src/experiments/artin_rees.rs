//! Search for a uniform Artin–Rees exponent λ with
//! (J+Iᵐ) ∩ 𝔞ⁿ = ((J+Iᵐ) ∩ 𝔞^{λm})·𝔞^{n−λm} for all n ≥ λm.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{run_jobs, show_all, ProblemIdeals, Report, Table, Truncation};
use crate::error::{Error, Result};
use crate::ideal::{ideal_contains, ideal_product, intersect, IdealHandle};
use crate::parser::ProblemSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LambdaMin {
    Found(u32),
    NotFoundWithin(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArCell {
    pub m: u32,
    pub n: u32,
    /// The equality holds.
    pub holds: bool,
    /// The always-true inclusion of the right side in the left.
    pub rhs_in_lhs: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArGrid {
    pub lambda: u32,
    pub cells: Vec<ArCell>,
    pub all_hold: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArConfig {
    pub m_max: u32,
    pub n_pad: u32,
    pub lambda_bound: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArtinReesReport {
    pub problem: serde_json::Value,
    pub config: ArConfig,
    pub a_ideal: Vec<String>,
    pub grids: Vec<ArGrid>,
    pub lambda_min: LambdaMin,
    pub truncated: Option<Truncation>,
}

impl ArtinReesReport {
    /// Every tested cell satisfies RHS ⊆ LHS.
    pub fn inclusion_everywhere(&self) -> bool {
        self.grids.iter().all(|g| g.cells.iter().all(|c| c.rhs_in_lhs))
    }

    pub fn cell(&self, lambda: u32, m: u32, n: u32) -> Option<&ArCell> {
        self.grids
            .iter()
            .find(|g| g.lambda == lambda)?
            .cells
            .iter()
            .find(|c| c.m == m && c.n == n)
    }
}

fn check_cell(lhs: &IdealHandle, base: &IdealHandle, a_pow: &IdealHandle, shift: u32) -> Result<(bool, bool)> {
    let rhs = if shift == 0 {
        base.clone()
    } else {
        ideal_product(base, a_pow)?
    };
    let rhs_in_lhs = ideal_contains(lhs, &rhs)?;
    let holds = rhs_in_lhs && ideal_contains(&rhs, lhs)?;
    Ok((holds, rhs_in_lhs))
}

pub fn artin_rees_experiment(spec: &ProblemSpec, m_max: u32, n_pad: u32, lambda_bound: u32) -> Result<ArtinReesReport> {
    if m_max == 0 || lambda_bound == 0 {
        return Err(Error::InvalidArgument("mmax and lambda-bound must be at least 1".into()));
    }
    let ideals = ProblemIdeals::new(spec)?;
    let mut report = ArtinReesReport {
        problem: spec.summary_json(),
        config: ArConfig {
            m_max,
            n_pad,
            lambda_bound,
        },
        a_ideal: show_all(spec, ideals.a.generators()),
        grids: Vec::new(),
        lambda_min: LambdaMin::NotFoundWithin(lambda_bound),
        truncated: None,
    };

    let ms: Vec<u32> = (1..=m_max).collect();
    let mut ks = Vec::new();
    let mut kset: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
    for &m in &ms {
        for lambda in 1..=lambda_bound {
            kset.entry(m).or_default().extend(lambda * m..=lambda * m + n_pad);
        }
    }
    let max_k = kset.values().filter_map(|s| s.last()).copied().max().unwrap_or(0);

    // J + Iᵐ, 𝔞ᵏ and their intersections are shared by every λ
    let k_ideals = run_jobs(&ms, |&m| ideals.j_plus_power(m));
    let powers: Vec<u32> = (0..=max_k).collect();
    let a_powers = run_jobs(&powers, |&k| ideals.a_power(k));
    let a_powers: Vec<IdealHandle> = a_powers.into_iter().collect::<Result<_>>()?;
    let mut k_handles = BTreeMap::new();
    for (m, k) in ms.iter().zip(k_ideals) {
        match k {
            Ok(h) => {
                k_handles.insert(*m, h);
            }
            Err(e) => {
                report.truncated = Some(Truncation::from_error(*m, e)?);
                break;
            }
        }
    }
    for (&m, set) in &kset {
        ks.extend(set.iter().map(|&k| (m, k)));
    }
    ks.retain(|(m, _)| k_handles.contains_key(m));
    let inters = run_jobs(&ks, |&(m, k)| {
        let h = intersect(&k_handles[&m], &a_powers[k as usize])?;
        h.basis()?;
        Ok::<_, Error>(h)
    });
    let mut meets: BTreeMap<(u32, u32), IdealHandle> = BTreeMap::new();
    for (key, r) in ks.iter().zip(inters) {
        match r {
            Ok(h) => {
                meets.insert(*key, h);
            }
            Err(e) => {
                let t = Truncation::from_error(key.0, e)?;
                if report.truncated.as_ref().is_none_or(|old| t.at < old.at) {
                    report.truncated = Some(t);
                }
            }
        }
    }
    let complete_m = match &report.truncated {
        Some(t) => t.at.saturating_sub(1),
        None => m_max,
    };

    let mut cells = Vec::new();
    for lambda in 1..=lambda_bound {
        for m in 1..=complete_m {
            for n in lambda * m..=lambda * m + n_pad {
                cells.push((lambda, m, n));
            }
        }
    }
    let verdicts = run_jobs(&cells, |&(lambda, m, n)| {
        check_cell(
            &meets[&(m, n)],
            &meets[&(m, lambda * m)],
            &a_powers[(n - lambda * m) as usize],
            n - lambda * m,
        )
    });

    let mut grids: BTreeMap<u32, Vec<ArCell>> = BTreeMap::new();
    for (&(lambda, m, n), v) in cells.iter().zip(verdicts) {
        let (holds, rhs_in_lhs) = match v {
            Ok(v) => v,
            Err(e) => {
                let t = Truncation::from_error(m, e)?;
                report.truncated = Some(t);
                return Ok(report);
            }
        };
        grids.entry(lambda).or_default().push(ArCell { m, n, holds, rhs_in_lhs });
    }
    report.grids = grids
        .into_iter()
        .map(|(lambda, cells)| ArGrid {
            lambda,
            all_hold: cells.iter().all(|c| c.holds),
            cells,
        })
        .collect();
    if report.truncated.is_none() {
        if let Some(g) = report.grids.iter().find(|g| g.all_hold) {
            report.lambda_min = LambdaMin::Found(g.lambda);
        }
    }
    Ok(report)
}

impl Report for ArtinReesReport {
    fn table(&self) -> Option<Table> {
        Some(Table {
            header: vec!["lambda", "m", "n", "holds", "rhs_in_lhs"],
            rows: self
                .grids
                .iter()
                .flat_map(|g| {
                    g.cells.iter().map(move |c| {
                        vec![
                            g.lambda.to_string(),
                            c.m.to_string(),
                            c.n.to_string(),
                            c.holds.to_string(),
                            c.rhs_in_lhs.to_string(),
                        ]
                    })
                })
                .collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_problem;

    #[test]
    fn univariate_control() {
        let spec = parse_problem("ring(x)\nfield Q\nI = [x^2]\na = [x]\n").unwrap();
        let r = artin_rees_experiment(&spec, 4, 4, 4).unwrap();
        assert_eq!(r.lambda_min, LambdaMin::Found(2));
        let c = r.cell(1, 2, 3).unwrap();
        assert!(!c.holds && c.rhs_in_lhs);
        assert!(r.inclusion_everywhere());
        // monotone in λ on the tested cells
        for g in &r.grids {
            if g.lambda >= 2 {
                assert!(g.all_hold);
            }
        }
    }

    #[test]
    fn principal_ideal_in_the_plane() {
        // (x) ∩ 𝔪ⁿ = x·𝔪^{n−1}, so λ = 1 works
        let spec = parse_problem("ring(x, y)\nfield Q\nI = [x]\n").unwrap();
        let r = artin_rees_experiment(&spec, 2, 2, 2).unwrap();
        assert_eq!(r.lambda_min, LambdaMin::Found(1));
    }

    #[test]
    fn bound_too_small() {
        let spec = parse_problem("ring(x)\nfield Q\nI = [x^3]\na = [x]\n").unwrap();
        let r = artin_rees_experiment(&spec, 2, 2, 2).unwrap();
        assert_eq!(r.lambda_min, LambdaMin::NotFoundWithin(2));
        assert!(r.inclusion_everywhere());
    }
}
