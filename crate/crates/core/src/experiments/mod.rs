//! Experiments on ideal powers: growth of standard-basis orders, uniform
//! Artin–Rees exponents, the equivalence between the 𝔪-adic splitting of an
//! ideal and its standard basis, and the worked example's tangent cones.

pub mod artin_rees;
pub mod corpus;
pub mod growth;
pub mod paper_example;
pub mod prop4;
pub mod report;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ideal::{ideal_power, ideal_sum, m_power, IdealHandle, Setting};
use crate::parser::ProblemSpec;

pub use artin_rees::{artin_rees_experiment, ArtinReesReport, LambdaMin};
pub use growth::{basis_profile, growth_experiment, BasisProfile, GrowthReport};
pub use paper_example::{example_ideal, paper_example_check, PaperExampleReport};
pub use prop4::{prop4_experiment, Prop4Report};
pub use report::{emit_report, render_report, Report, ReportFormat, Table};

/// Worker count from `SBLAB_WORKERS`, defaulting to the available cores.
pub fn workers() -> usize {
    std::env::var("SBLAB_WORKERS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Runs `f` over `jobs` on a bounded pool; results come back in job order.
pub(crate) fn run_jobs<J, T, F>(jobs: &[J], f: F) -> Vec<T>
where
    J: Sync,
    T: Send,
    F: Fn(&J) -> T + Sync + Send,
{
    match rayon::ThreadPoolBuilder::new().num_threads(workers()).build() {
        Ok(pool) => pool.install(|| jobs.par_iter().map(&f).collect()),
        Err(_) => jobs.iter().map(f).collect(),
    }
}

/// Marker for a run cut short by a resource guardrail.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Truncation {
    /// First index (n or m) that could not be computed.
    pub at: u32,
    pub reason: String,
}

impl Truncation {
    /// Turns a resource error into a marker; other errors propagate.
    pub(crate) fn from_error(at: u32, err: Error) -> Result<Truncation> {
        match err {
            Error::Resource(reason) => Ok(Truncation { at, reason }),
            other => Err(other),
        }
    }
}

/// The ideals I, J and 𝔞 of a problem as local ideal handles.
pub struct ProblemIdeals {
    pub i: IdealHandle,
    pub j: IdealHandle,
    pub a: IdealHandle,
}

impl ProblemIdeals {
    pub fn new(spec: &ProblemSpec) -> Result<ProblemIdeals> {
        let local = |gens: Vec<_>| IdealHandle::new(spec.field, spec.nvars(), Setting::Local, gens);
        Ok(ProblemIdeals {
            i: local(spec.generators_i.clone())?,
            j: local(spec.generators_j.clone())?,
            a: local(spec.a_generators())?,
        })
    }

    /// J + Iⁿ for n ≥ 1.
    pub fn j_plus_power(&self, n: u32) -> Result<IdealHandle> {
        ideal_sum(&self.j, &ideal_power(&self.i, n)?)
    }

    /// 𝔞ⁿ, with 𝔞⁰ the unit ideal.
    pub fn a_power(&self, n: u32) -> Result<IdealHandle> {
        let ring = self.a.ring();
        if n == 0 {
            return Ok(IdealHandle::unit(ring.field, ring.nvars(), Setting::Local));
        }
        if self.a.maximal_power() == Some(1) {
            return Ok(m_power(ring.field, ring.nvars(), Setting::Local, n));
        }
        ideal_power(&self.a, n)
    }
}

/// Renders generators with the problem's variable names.
pub(crate) fn show_all(spec: &ProblemSpec, gens: &[crate::poly::Polynomial]) -> Vec<String> {
    gens.iter().map(|g| spec.show(g)).collect()
}
