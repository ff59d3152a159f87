//! Exact coefficient fields: the rationals and prime fields 𝔽_p with p < 2³¹.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Coefficient field descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Field {
    Rationals,
    Prime(u32),
}

impl Field {
    /// The prime field 𝔽_p; rejects composite moduli and p ≥ 2³¹.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn zero(&self) -> Coeff {
        self.from_i64(0)
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match *self {
            Field::Rationals => Coeff::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Coeff::Modular {
                value: v.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match *self {
            Field::Rationals => Coeff::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Coeff::Modular {
                    value: r.to_u32().expect("residue below modulus"),
                    modulus: p,
                }
            }
        }
    }

    /// The field element num/den; fails when den vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Coeff> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "denominator {den} is zero in {self}"
            )));
        }
        Ok(self.from_bigint(num).mul(&d.inv()))
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self, Field::Rationals)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp {p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of a coefficient field. Rationals are kept in lowest terms with a
/// positive denominator; modular values are canonical representatives in [0, p).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rational(BigRational),
    Modular { value: u32, modulus: u32 },
}

impl Coeff {
    pub fn field(&self) -> Field {
        match self {
            Coeff::Rational(_) => Field::Rationals,
            Coeff::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rational(q) => q.is_zero(),
            Coeff::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rational(q) => q.is_one(),
            Coeff::Modular { value, .. } => *value == 1,
        }
    }

    /// Bits of numerator plus denominator; zero for modular values.
    pub fn bits(&self) -> u64 {
        match self {
            Coeff::Rational(q) => q.numer().bits() + q.denom().bits(),
            Coeff::Modular { .. } => 0,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Rational(q) => q.is_negative(),
            Coeff::Modular { .. } => false,
        }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a + b),
            (Coeff::Modular { value: a, modulus: p }, Coeff::Modular { value: b, modulus: q })
                if p == q =>
            {
                Coeff::Modular {
                    value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                    modulus: *p,
                }
            }
            _ => panic!("coefficient field mismatch"),
        }
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Rational(a) => Coeff::Rational(-a),
            Coeff::Modular { value, modulus } => Coeff::Modular {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a * b),
            (Coeff::Modular { value: a, modulus: p }, Coeff::Modular { value: b, modulus: q })
                if p == q =>
            {
                Coeff::Modular {
                    value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                    modulus: *p,
                }
            }
            _ => panic!("coefficient field mismatch"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Coeff {
        assert!(!self.is_zero(), "inverse of zero coefficient");
        match self {
            Coeff::Rational(a) => Coeff::Rational(a.recip()),
            Coeff::Modular { value, modulus } => {
                let p = *modulus as i64;
                let ext = (*value as i64).extended_gcd(&p);
                Coeff::Modular {
                    value: ext.x.rem_euclid(p) as u32,
                    modulus: *modulus,
                }
            }
        }
    }

    pub fn div(&self, other: &Coeff) -> Coeff {
        self.mul(&other.inv())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coeff::Rational(q) => Some(q),
            Coeff::Modular { .. } => None,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Coeff::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Canonical "p/q" rendering of a rational (plain "p" for integers).
pub fn render_rational(q: &BigRational) -> String {
    Coeff::Rational(q.clone()).to_string()
}
