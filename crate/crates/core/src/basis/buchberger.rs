//! Completion to a standard basis by S-pair processing with a weak normal
//! form (Mora's tangent-cone algorithm for local orders, Buchberger for
//! global ones).

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::normal_form::{reduce_with, s_polynomial, Limits, Reducer};
use super::StandardBasis;
use crate::error::{Error, Result};
use crate::poly::{Exponent, MonomialOrder, Polynomial};

/// Order in which pending generators and S-pairs are processed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairStrategy {
    /// Smallest lcm first: total degree, then degree-lex, then creation order.
    Normal,
    /// Pseudo-random selection from a seeded generator.
    Shuffled(u64),
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisConfig {
    pub strategy: PairStrategy,
    /// Guardrail on processed generators plus S-pairs.
    pub max_jobs: usize,
    /// Guardrail on the reduction steps of a single normal form.
    pub max_reduction_steps: usize,
    /// Guardrail on the bit size of initial coefficients during a normal
    /// form over ℚ.
    pub max_coefficient_bits: u64,
}

impl BasisConfig {
    pub(crate) fn limits(&self) -> Limits {
        Limits {
            steps: self.max_reduction_steps,
            coefficient_bits: self.max_coefficient_bits,
        }
    }
}

impl Default for BasisConfig {
    fn default() -> Self {
        BasisConfig {
            strategy: PairStrategy::Normal,
            max_jobs: 2_000_000,
            max_reduction_steps: 5_000_000,
            max_coefficient_bits: u64::MAX,
        }
    }
}

enum Job {
    Generator(Polynomial),
    Pair(usize, usize),
}

struct Queue {
    strategy: PairStrategy,
    heap: BinaryHeap<Reverse<(u32, Exponent, usize)>>,
    slots: Vec<Option<Job>>,
    pending: Vec<usize>,
    rng: ChaCha8Rng,
}

impl Queue {
    fn new(strategy: PairStrategy) -> Queue {
        let seed = match strategy {
            PairStrategy::Shuffled(s) => s,
            PairStrategy::Normal => 0,
        };
        Queue {
            strategy,
            heap: BinaryHeap::new(),
            slots: Vec::new(),
            pending: Vec::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn push(&mut self, key: Exponent, job: Job) {
        let seq = self.slots.len();
        self.slots.push(Some(job));
        match self.strategy {
            PairStrategy::Normal => self.heap.push(Reverse((key.degree(), key, seq))),
            PairStrategy::Shuffled(_) => self.pending.push(seq),
        }
    }

    fn pop(&mut self) -> Option<Job> {
        let seq = match self.strategy {
            PairStrategy::Normal => self.heap.pop()?.0 .2,
            PairStrategy::Shuffled(_) => {
                if self.pending.is_empty() {
                    return None;
                }
                let i = self.rng.gen_range(0..self.pending.len());
                self.pending.swap_remove(i)
            }
        };
        self.slots[seq].take()
    }
}

/// Computes a standard basis of the ideal generated by `gens` under `order`.
pub fn standard_basis(gens: &[Polynomial], order: MonomialOrder) -> Result<StandardBasis> {
    standard_basis_with(gens, order, &BasisConfig::default())
}

pub fn standard_basis_with(
    gens: &[Polynomial],
    order: MonomialOrder,
    config: &BasisConfig,
) -> Result<StandardBasis> {
    let mut queue = Queue::new(config.strategy);
    let mut ring = None;
    for g in gens {
        if *ring.get_or_insert(g.ring().field) != g.field() {
            return Err(Error::ContextMismatch);
        }
        let g = g.with_order(order)?;
        if g.is_zero() {
            continue;
        }
        let key = g.lead_exp().cloned().expect("nonzero");
        queue.push(key, Job::Generator(g.primitive()));
    }

    let global = order.is_global();
    let mut basis: Vec<Reducer> = Vec::new();
    let mut jobs = 0usize;
    while let Some(job) = queue.pop() {
        jobs += 1;
        if jobs > config.max_jobs {
            return Err(Error::Resource(format!(
                "standard basis exceeded {} reduction jobs",
                config.max_jobs
            )));
        }
        let candidate = match job {
            Job::Generator(f) => f,
            Job::Pair(i, j) => s_polynomial(&basis[i].poly, &basis[j].poly),
        };
        let h = reduce_with(candidate, &basis, config.limits())?;
        if h.is_zero() {
            continue;
        }
        let h = Reducer::new(h.primitive());
        let k = basis.len();
        for (i, r) in basis.iter().enumerate() {
            // coprime initial terms: the pair reduces to zero for global orders
            if global && r.lead.is_coprime(&h.lead) {
                continue;
            }
            queue.push(r.lead.lcm(&h.lead), Job::Pair(i, k));
        }
        basis.push(h);
    }

    Ok(StandardBasis::from_elements(
        basis.into_iter().map(|r| r.poly).collect(),
        order,
    ))
}
