//! Weak normal forms: plain top-reduction for global orders and Mora's
//! écart-driven reduction for local and mixed orders.

use crate::error::{Error, Result};
use crate::poly::{Coeff, Exponent, Field, Polynomial};

/// A divisor with its initial exponent and écart cached.
#[derive(Clone, Debug)]
pub(crate) struct Reducer {
    pub poly: Polynomial,
    pub lead: Exponent,
    pub ecart: u32,
}

impl Reducer {
    pub fn new(poly: Polynomial) -> Reducer {
        let lead = poly.lead_exp().cloned().expect("reducers are nonzero");
        let ecart = poly.ecart();
        Reducer { poly, lead, ecart }
    }
}

/// One reduction step: cancels the initial term of `h` against `g`, whose
/// initial exponent must divide it. Over ℚ the step is fraction-free and the
/// result is made primitive.
pub(crate) fn reduce_step(h: &Polynomial, g: &Polynomial) -> Polynomial {
    let (he, hc) = h.lead().expect("nonzero");
    let (ge, gc) = g.lead().expect("nonzero");
    let shift = he.checked_sub(ge).expect("divisible initial terms");
    match h.field() {
        Field::Rationals => {
            let ratio = hc.div(gc);
            let q = ratio.as_rational().expect("rational");
            let a = Coeff::Rational(q.denom().clone().into());
            let b = Coeff::Rational(q.numer().clone().into());
            h.combine(&a, &b, &shift, g).primitive()
        }
        Field::Prime(_) => h.combine(&h.field().one(), &hc.div(gc), &shift, g),
    }
}

/// S-polynomial of f and g: the combination of x^(lcm−α_f)·f and
/// x^(lcm−α_g)·g cancelling the initial terms.
pub(crate) fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fe, _) = f.lead().expect("nonzero");
    let (ge, _) = g.lead().expect("nonzero");
    let lcm = fe.lcm(ge);
    let lifted = f.mul_monomial(&lcm.checked_sub(fe).expect("lcm is a multiple"));
    reduce_step(&lifted, g)
}

/// Guardrails on a single normal form.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Limits {
    pub steps: usize,
    /// Bound on the size of the initial coefficient of intermediate results.
    pub coefficient_bits: u64,
}

impl Limits {
    pub const NONE: Limits = Limits {
        steps: usize::MAX,
        coefficient_bits: u64::MAX,
    };
}

/// Reduces `f` against `divisors` until its initial term is divisible by no
/// initial term of the (growing, for local orders) divisor set. Fails with a
/// resource error when a limit is exceeded.
pub(crate) fn reduce_with(f: Polynomial, divisors: &[Reducer], limits: Limits) -> Result<Polynomial> {
    let max_steps = limits.steps;
    let global = f.order().is_global();
    let mut extra: Vec<Reducer> = Vec::new();
    let mut h = f;
    let mut steps = 0usize;
    while let Some(he) = h.lead_exp() {
        let mut best: Option<&Reducer> = None;
        for r in divisors.iter().chain(extra.iter()) {
            if r.lead.divides(he) && best.is_none_or(|b| r.ecart < b.ecart) {
                best = Some(r);
                if r.ecart == 0 {
                    break;
                }
            }
        }
        let Some(g) = best else { break };
        steps += 1;
        if steps > max_steps {
            return Err(Error::Resource(format!("normal form exceeded {max_steps} reduction steps")));
        }
        let push = !global && g.ecart > h.ecart();
        let next = reduce_step(&h, &g.poly);
        if push {
            extra.push(Reducer::new(h));
        }
        h = next;
        if let Some(c) = h.lead_coeff() {
            if c.bits() > limits.coefficient_bits {
                return Err(Error::Resource(format!(
                    "normal form coefficients exceeded {} bits",
                    limits.coefficient_bits
                )));
            }
        }
    }
    Ok(h)
}

/// A weak normal form h of `f` with respect to `divisors`: u·f = Σ qᵢgᵢ + h
/// for a unit u of the local ring (u = 1 for global orders), and h is zero or
/// its initial exponent is divisible by no initial exponent of `divisors`.
///
/// The result is determined up to a nonzero scalar; over ℚ it is returned
/// primitive.
pub fn weak_normal_form(f: &Polynomial, divisors: &[Polynomial]) -> Result<Polynomial> {
    let mut reducers = Vec::with_capacity(divisors.len());
    for g in divisors {
        if g.ring() != f.ring() {
            return Err(Error::ContextMismatch);
        }
        if g.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        reducers.push(Reducer::new(g.clone()));
    }
    reduce_with(f.clone(), &reducers, Limits::NONE)
}
