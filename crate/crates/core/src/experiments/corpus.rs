//! The problem corpus shipped with the crate and its pinned regression values.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use super::ProblemIdeals;
use crate::error::Result;
use crate::basis::BasisConfig;
use crate::ideal::{ideal_power, ideal_sum, IdealHandle};
use crate::parser::{parse_problem, ProblemSpec};
use crate::poly::{exponents_of_degree, Field, Polynomial, Ring};

/// (name, problem file text) for every corpus entry.
pub const ENTRIES: [(&str, &str); 6] = [
    ("paper_example", include_str!("../../corpus/paper_example.txt")),
    ("univariate_square", include_str!("../../corpus/univariate_square.txt")),
    ("maximal_ideal", include_str!("../../corpus/maximal_ideal.txt")),
    ("monomial_control", include_str!("../../corpus/monomial_control.txt")),
    ("random_2var", include_str!("../../corpus/random_2var.txt")),
    ("random_3var", include_str!("../../corpus/random_3var.txt")),
];

/// Seeds and variable counts behind the two generated entries.
pub const RANDOM_ENTRIES: [(&str, u64, usize); 2] = [("random_2var", 7, 2), ("random_3var", 11, 3)];

pub fn corpus() -> Result<Vec<(&'static str, ProblemSpec)>> {
    ENTRIES.iter().map(|(name, text)| Ok((*name, parse_problem(text)?))).collect()
}

pub fn entry(name: &str) -> Option<ProblemSpec> {
    let (_, text) = ENTRIES.iter().find(|(n, _)| *n == name)?;
    parse_problem(text).ok()
}

/// Largest total degree of an initial exponent in the minimal standard basis
/// of J + I allowed for generated entries.
pub const MAX_BASIS_DEGREE: u32 = 5;

/// Powers whose standard bases generated entries must compute within a
/// small reduction budget.
pub const SCREENED_POWERS: u32 = 4;

/// None when every monomial of the drawn tail degree is a multiple of the
/// lead.
fn random_poly(rng: &mut ChaCha8Rng, ring: Ring) -> Option<Polynomial> {
    let nvars = ring.nvars();
    let field = ring.field;
    let ord = rng.gen_range(2..=3u32);
    let mut terms = Vec::new();
    let mut lead = exponents_of_degree(nvars, ord);
    lead.shuffle(rng);
    lead.truncate(rng.gen_range(1..=2));
    for e in &lead {
        terms.push((e.clone(), field.from_i64(nonzero(rng))));
    }
    // a tail outside the lead's multiples keeps the generator from being a
    // unit times a form
    let tail_degree = ord + rng.gen_range(1..=2u32);
    let tail: Vec<_> = exponents_of_degree(nvars, tail_degree)
        .into_iter()
        .filter(|t| !lead.iter().any(|e| e.divides(t)))
        .collect();
    let e = tail.choose(rng)?.clone();
    terms.push((e, field.from_i64(nonzero(rng))));
    Some(Polynomial::from_terms(ring, terms).expect("valid terms"))
}

fn nonzero(rng: &mut ChaCha8Rng) -> i64 {
    let v = rng.gen_range(1..=3i64);
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}

/// Budget that keeps generated entries cheap enough for the test suites.
fn screening_config() -> BasisConfig {
    BasisConfig {
        max_jobs: 2_000,
        max_reduction_steps: 300,
        max_coefficient_bits: 256,
        ..BasisConfig::default()
    }
}

fn within_budget(ideal: IdealHandle) -> Result<bool> {
    let config = screening_config();
    match ideal.with_config(config.clone()).basis().and_then(|b| b.certify(&config)) {
        Ok(certified) => Ok(certified),
        Err(e) if e.is_resource() => Ok(false),
        Err(e) => Err(e),
    }
}

fn accept(spec: &ProblemSpec) -> Result<bool> {
    let ideals = ProblemIdeals::new(spec)?;
    let ideal: IdealHandle = ideal_sum(&ideals.j, &ideals.i)?;
    if !within_budget(ideal.clone())? {
        return Ok(false);
    }
    let basis = ideal.basis()?;
    let degrees_ok = basis.leading_exps().iter().all(|e| e.degree() <= MAX_BASIS_DEGREE);
    if !degrees_ok || basis.len() < 2 {
        return Ok(false);
    }
    for n in 1..=SCREENED_POWERS {
        if !within_budget(ideals.j_plus_power(n)?)? || !within_budget(ideal_power(&ideals.i, n)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A seeded pseudo-random problem over ℚ: two generators of order 2 or 3
/// with one higher-order term each, not a multiple of their lower terms,
/// plus one generator of J in three or more variables. Candidates are drawn
/// until the minimal standard basis of J + I
/// has initial exponents of degree at most [`MAX_BASIS_DEGREE`] and the
/// first [`SCREENED_POWERS`] powers stay within a small reduction budget.
pub fn random_problem(seed: u64, nvars: usize) -> Result<ProblemSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = Ring::local(Field::Rationals, nvars);
    let variables: Vec<String> = ["x", "y", "z", "w"][..nvars].iter().map(|s| s.to_string()).collect();
    loop {
        let draws = if nvars >= 3 { 3 } else { 2 };
        let Some(mut gens_i) = (0..draws).map(|_| random_poly(&mut rng, ring)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let gens_j = gens_i.split_off(2);
        let Ok(spec) = ProblemSpec::new(variables.clone(), Field::Rationals, gens_i, gens_j, None) else {
            continue;
        };
        if accept(&spec)? {
            return Ok(spec);
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct RegressionEntry {
    /// λ̂ for nmax = 2, 3 and 4 (it must not change).
    pub lambda_hat: u32,
    /// Least Artin–Rees exponent for 𝔞 = 𝔪 with mmax = 3, npad = 3,
    /// lambda bound 8, where recorded.
    #[serde(default)]
    pub artin_rees_lambda_min: Option<u32>,
}

/// Pinned values per corpus entry.
pub fn regression() -> BTreeMap<String, RegressionEntry> {
    serde_json::from_str(include_str!("../../corpus/regression.json")).expect("regression file is valid")
}
