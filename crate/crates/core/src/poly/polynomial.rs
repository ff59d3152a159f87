use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::coeff::{Coeff, Field};
use super::exponent::Exponent;
use super::order::MonomialOrder;
use crate::error::{Error, Result};

/// Ring context shared by a polynomial's terms: number of variables (carried
/// by the order), coefficient field and active monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Ring {
    pub field: Field,
    pub order: MonomialOrder,
}

impl Ring {
    pub fn new(field: Field, order: MonomialOrder) -> Ring {
        Ring { field, order }
    }

    pub fn local(field: Field, nvars: usize) -> Ring {
        Ring::new(field, MonomialOrder::local(nvars))
    }

    pub fn global(field: Field, nvars: usize) -> Ring {
        Ring::new(field, MonomialOrder::global(nvars))
    }

    pub fn nvars(&self) -> usize {
        self.order.nvars
    }

    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        Ring::new(self.field, order)
    }
}

/// The order ord(f) of a polynomial: its lowest term degree, or infinity for 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(d) => Some(d),
            Valuation::Infinity => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(d) => write!(f, "{d}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

/// Sparse polynomial with exact coefficients.
///
/// Terms are kept sorted by the ring's order with the distinguished term
/// first; no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Exponent, Coeff)>,
}

impl Polynomial {
    pub fn zero(ring: Ring) -> Polynomial {
        Polynomial {
            ring,
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: Ring, c: Coeff) -> Polynomial {
        Polynomial::monomial(ring, Exponent::zero(ring.nvars()), c).expect("zero exponent fits")
    }

    pub fn one(ring: Ring) -> Polynomial {
        Polynomial::constant(ring, ring.field.one())
    }

    pub fn var(ring: Ring, i: usize) -> Result<Polynomial> {
        if i >= ring.nvars() {
            return Err(Error::InvalidArgument(format!(
                "variable index {i} out of range for {} variables",
                ring.nvars()
            )));
        }
        Polynomial::monomial(ring, Exponent::unit(ring.nvars(), i), ring.field.one())
    }

    pub fn monomial(ring: Ring, exp: Exponent, c: Coeff) -> Result<Polynomial> {
        Polynomial::from_terms(ring, [(exp, c)])
    }

    /// Builds a polynomial from arbitrary terms: like terms are combined,
    /// zero coefficients dropped and the result sorted.
    pub fn from_terms(
        ring: Ring,
        terms: impl IntoIterator<Item = (Exponent, Coeff)>,
    ) -> Result<Polynomial> {
        let mut acc: HashMap<Exponent, Coeff> = HashMap::new();
        for (e, c) in terms {
            e.check_len(ring.nvars())?;
            if c.field() != ring.field {
                return Err(Error::ContextMismatch);
            }
            match acc.get_mut(&e) {
                Some(v) => *v = v.add(&c),
                None => {
                    acc.insert(e, c);
                }
            }
        }
        Ok(Polynomial::from_map(ring, acc))
    }

    fn from_map(ring: Ring, acc: HashMap<Exponent, Coeff>) -> Polynomial {
        let mut terms: Vec<(Exponent, Coeff)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order;
        terms.sort_unstable_by(|a, b| order.leading_cmp(&b.0, &a.0));
        Polynomial { ring, terms }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn field(&self) -> Field {
        self.ring.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order
    }

    pub fn terms(&self) -> &[(Exponent, Coeff)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The distinguished term under the ring's order.
    pub fn lead(&self) -> Option<&(Exponent, Coeff)> {
        self.terms.first()
    }

    pub fn lead_exp(&self) -> Option<&Exponent> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lead_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.1)
    }

    /// Exponent of the initial term under the ring's order.
    pub fn initial_exp(&self) -> Result<Exponent> {
        self.lead_exp().cloned().ok_or(Error::ZeroPolynomial)
    }

    pub fn coeff_of(&self, e: &Exponent) -> Option<&Coeff> {
        self.terms.iter().find(|(x, _)| x == e).map(|(_, c)| c)
    }

    /// ord(f): the minimal total degree of a term.
    pub fn ord(&self) -> Valuation {
        self.terms
            .iter()
            .map(|(e, _)| e.degree())
            .min()
            .map_or(Valuation::Infinity, Valuation::Finite)
    }

    /// Maximal total degree of a term, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(e, _)| e.degree()).max()
    }

    /// deg(f) − |lead(f)|; equals deg(f) − ord(f) under the local order.
    pub fn ecart(&self) -> u32 {
        match (self.degree(), self.lead_exp()) {
            (Some(d), Some(e)) => d - e.degree(),
            _ => 0,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((e, _)) => self.terms.iter().all(|(x, _)| x.degree() == e.degree()),
        }
    }

    /// Sum of the terms of degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().filter(|(e, _)| e.degree() == d).cloned().collect(),
        }
    }

    /// The homogeneous components, ascending by degree.
    pub fn homogeneous_components(&self) -> Vec<Polynomial> {
        let mut degrees: Vec<u32> = self.terms.iter().map(|(e, _)| e.degree()).collect();
        degrees.sort_unstable();
        degrees.dedup();
        degrees.into_iter().map(|d| self.homogeneous_part(d)).collect()
    }

    /// f mod 𝔪^bound: drops every term of degree ≥ bound.
    pub fn truncate_below(&self, bound: u32) -> Polynomial {
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().filter(|(e, _)| e.degree() < bound).cloned().collect(),
        }
    }

    /// The leading form f*: the terms of degree ord(f).
    pub fn leading_form(&self) -> Result<HomogeneousForm> {
        let d = self.ord().finite().ok_or(Error::ZeroPolynomial)?;
        Ok(HomogeneousForm {
            poly: self.homogeneous_part(d),
            degree: d,
        })
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let one = self.ring.field.one();
        Ok(self.combine(&one, &one.neg(), &Exponent::zero(self.nvars()), other))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let one = self.ring.field.one();
        Ok(self.combine(&one, &one, &Exponent::zero(self.nvars()), other))
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.ring);
        }
        if self.len() == 1 {
            let (e, c) = &self.terms[0];
            return other.mul_term(e, c);
        }
        if other.len() == 1 {
            let (e, c) = &other.terms[0];
            return self.mul_term(e, c);
        }
        let mut acc: HashMap<Exponent, Coeff> = HashMap::with_capacity(self.len() * other.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.add(eb);
                let c = ca.mul(cb);
                match acc.get_mut(&e) {
                    Some(v) => *v = v.add(&c),
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        Polynomial::from_map(self.ring, acc)
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ring);
        }
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x.mul(c))).collect(),
        }
    }

    /// c·x^e·self. Order is preserved since monomial orders are multiplicative.
    pub fn mul_term(&self, e: &Exponent, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ring);
        }
        Polynomial {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(x, y)| (x.add(e), if c.is_one() { y.clone() } else { y.mul(c) }))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, e: &Exponent) -> Polynomial {
        self.mul_term(e, &self.ring.field.one())
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.ring);
        for _ in 0..n {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// a·self − b·x^shift·g, by a single merge of the sorted term lists.
    pub(crate) fn combine(&self, a: &Coeff, b: &Coeff, shift: &Exponent, g: &Polynomial) -> Polynomial {
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.len() + g.len());
        let mut left = self.terms.iter().peekable();
        let mut right = g.terms.iter().map(|(e, c)| (e.add(shift), c)).peekable();
        let scale = |x: &Coeff, k: &Coeff| if k.is_one() { x.clone() } else { x.mul(k) };
        loop {
            let step = match (left.peek(), right.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some((ea, _)), Some((eb, _))) => order.leading_cmp(ea, eb),
            };
            match step {
                Ordering::Greater => {
                    let (e, c) = left.next().unwrap();
                    out.push((e.clone(), scale(c, a)));
                }
                Ordering::Less => {
                    let (e, c) = right.next().unwrap();
                    out.push((e, scale(c, b).neg()));
                }
                Ordering::Equal => {
                    let (e, ca) = left.next().unwrap();
                    let (_, cb) = right.next().unwrap();
                    let c = scale(ca, a).sub(&scale(cb, b));
                    if !c.is_zero() {
                        out.push((e.clone(), c));
                    }
                }
            }
        }
        Polynomial {
            ring: self.ring,
            terms: out,
        }
    }

    /// Same polynomial, re-sorted under another order on the same variables.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Polynomial> {
        if order.nvars != self.nvars() {
            return Err(Error::Dimension {
                expected: order.nvars,
                found: self.nvars(),
            });
        }
        let mut terms = self.terms.clone();
        terms.sort_unstable_by(|a, b| order.leading_cmp(&b.0, &a.0));
        Ok(Polynomial {
            ring: self.ring.with_order(order),
            terms,
        })
    }

    /// Embeds into the ring with an extra leading variable t (under `ring`,
    /// which must have one more variable), multiplied by t^t_power.
    pub fn lift_aux(&self, ring: Ring, t_power: u32) -> Polynomial {
        debug_assert_eq!(ring.nvars(), self.nvars() + 1);
        let mut terms: Vec<_> = self.terms.iter().map(|(e, c)| (e.prepend(t_power), c.clone())).collect();
        terms.sort_unstable_by(|a, b| ring.order.leading_cmp(&b.0, &a.0));
        Polynomial { ring, terms }
    }

    /// Inverse of [`Polynomial::lift_aux`] for polynomials free of t.
    pub fn drop_aux(&self, ring: Ring) -> Option<Polynomial> {
        if self.terms.iter().any(|(e, _)| e.parts()[0] != 0) {
            return None;
        }
        let mut terms: Vec<_> = self.terms.iter().map(|(e, c)| (e.tail(), c.clone())).collect();
        terms.sort_unstable_by(|a, b| ring.order.leading_cmp(&b.0, &a.0));
        Some(Polynomial { ring, terms })
    }

    pub fn involves_var(&self, i: usize) -> bool {
        self.terms.iter().any(|(e, _)| e.parts()[i] != 0)
    }

    /// Leading coefficient scaled to 1.
    pub fn monic(&self) -> Polynomial {
        match self.lead_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv()),
        }
    }

    /// Normalized associate: over ℚ, coprime integer coefficients with a
    /// positive leading coefficient; over 𝔽_p, monic.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        match self.ring.field {
            Field::Prime(_) => self.monic(),
            Field::Rationals => {
                let mut num_gcd = BigInt::zero();
                let mut den_lcm = BigInt::one();
                for (_, c) in &self.terms {
                    let q = c.as_rational().expect("rational coefficient");
                    num_gcd = num_gcd.gcd(q.numer());
                    den_lcm = den_lcm.lcm(q.denom());
                }
                let mut factor = BigRational::new(den_lcm, num_gcd);
                if self.terms[0].1.is_negative() {
                    factor = -factor;
                }
                if factor.is_one() {
                    return self.clone();
                }
                self.scale(&Coeff::Rational(factor))
            }
        }
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }

    /// Generic variable names x1, …, xs.
    pub fn default_names(nvars: usize) -> Vec<String> {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = Polynomial::default_names(self.nvars());
        write!(f, "{}", self.display_with(&names))
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.poly.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = if negative { c.neg() } else { c.clone() };
            let mut factors: Vec<String> = Vec::new();
            if e.is_zero() || !abs.is_one() {
                factors.push(abs.to_string());
            }
            for (k, &p) in e.parts().iter().enumerate() {
                let name = self.names.get(k).map_or("?", String::as_str);
                match p {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{p}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// A homogeneous polynomial together with its degree; an element of the
/// associated graded ring, which for a localized polynomial ring is again the
/// polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogeneousForm {
    poly: Polynomial,
    degree: u32,
}

impl HomogeneousForm {
    pub fn new(poly: Polynomial) -> Result<HomogeneousForm> {
        if !poly.is_homogeneous() {
            return Err(Error::InvalidArgument(format!("{poly} is not homogeneous")));
        }
        let degree = poly.degree().unwrap_or(0);
        Ok(HomogeneousForm { poly, degree })
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn into_poly(self) -> Polynomial {
        self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }
}
