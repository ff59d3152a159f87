use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// An exponent vector α ∈ ℕ^s together with its total degree |α|.
///
/// The natural `Ord` is the degree-lexicographic comparison of
/// (|α|, α₁, …, α_s).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Exponent {
    parts: SmallVec<[u32; 4]>,
    degree: u32,
}

impl Exponent {
    pub fn new(parts: impl IntoIterator<Item = u32>) -> Exponent {
        let parts: SmallVec<[u32; 4]> = parts.into_iter().collect();
        let degree = parts.iter().sum();
        Exponent { parts, degree }
    }

    pub fn zero(nvars: usize) -> Exponent {
        Exponent {
            parts: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    /// The exponent of the variable x_i.
    pub fn unit(nvars: usize, i: usize) -> Exponent {
        let mut e = Exponent::zero(nvars);
        e.parts[i] = 1;
        e.degree = 1;
        e
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.degree == 0
    }

    pub fn check_len(&self, nvars: usize) -> Result<()> {
        if self.len() != nvars {
            return Err(Error::Dimension {
                expected: nvars,
                found: self.len(),
            });
        }
        Ok(())
    }

    /// Componentwise `self ≤ other`, i.e. x^self divides x^other.
    pub fn divides(&self, other: &Exponent) -> bool {
        self.degree <= other.degree && self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.len(), other.len());
        Exponent {
            parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    /// `self − other`, when other divides self.
    pub fn checked_sub(&self, other: &Exponent) -> Option<Exponent> {
        if !other.divides(self) {
            return None;
        }
        Some(Exponent {
            parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a - b).collect(),
            degree: self.degree - other.degree,
        })
    }

    pub fn lcm(&self, other: &Exponent) -> Exponent {
        Exponent::new(self.parts.iter().zip(&other.parts).map(|(a, b)| *a.max(b)))
    }

    pub fn is_coprime(&self, other: &Exponent) -> bool {
        self.parts.iter().zip(&other.parts).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Exponent with an extra leading coordinate (used for the auxiliary
    /// elimination variable).
    pub fn prepend(&self, head: u32) -> Exponent {
        let mut parts = SmallVec::with_capacity(self.len() + 1);
        parts.push(head);
        parts.extend_from_slice(&self.parts);
        Exponent {
            parts,
            degree: self.degree + head,
        }
    }

    /// Drops the leading coordinate.
    pub fn tail(&self) -> Exponent {
        Exponent::new(self.parts[1..].iter().copied())
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.parts.iter())
    }
}

/// All exponents of total degree `degree` in `nvars` variables, in
/// ascending degree-lex order.
pub fn exponents_of_degree(nvars: usize, degree: u32) -> Vec<Exponent> {
    fn rec(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if prefix.len() + 1 == nvars {
            prefix.push(left);
            out.push(Exponent::new(prefix.iter().copied()));
            prefix.pop();
            return;
        }
        for a in 0..=left {
            prefix.push(a);
            rec(nvars, left - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Exponent::zero(0));
        }
        return out;
    }
    rec(nvars, degree, &mut Vec::with_capacity(nvars), &mut out);
    out
}

/// Number of monomials of degree exactly `degree` in `nvars` variables.
pub fn count_of_degree(nvars: usize, degree: u32) -> u128 {
    if nvars == 0 {
        return u128::from(degree == 0);
    }
    binomial(degree as u128 + nvars as u128 - 1, nvars as u128 - 1)
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}
