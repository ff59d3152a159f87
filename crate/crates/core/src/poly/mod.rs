//! Exact sparse multivariate polynomials over ℚ and 𝔽_p with monomial orders,
//! orders ord(f), leading forms f* and initial exponents exp(f).

mod coeff;
mod exponent;
mod order;
mod polynomial;

pub use coeff::{render_rational, Coeff, Field};
pub use exponent::{count_of_degree, exponents_of_degree, Exponent};
pub use order::{compare_exp, MonomialOrder, OrderKind};
pub use polynomial::{HomogeneousForm, PolyDisplay, Polynomial, Ring, Valuation};


use crate::error::{Error, Result};

/// ord(f) = sup{k : f ∈ 𝔪^k}.
pub fn order_of(f: &Polynomial) -> Valuation {
    f.ord()
}

/// f*: the homogeneous component of f of degree ord(f).
pub fn leading_form(f: &Polynomial) -> Result<HomogeneousForm> {
    f.leading_form()
}

/// exp(f) under `ord`: the minimal exponent for local orders, the maximal one
/// for global orders.
pub fn initial_exp(f: &Polynomial, ord: &MonomialOrder) -> Result<Exponent> {
    if ord.nvars != f.nvars() {
        return Err(Error::Dimension {
            expected: ord.nvars,
            found: f.nvars(),
        });
    }
    if f.order() == *ord {
        return f.initial_exp();
    }
    let exps = f.terms().iter().map(|(e, _)| e);
    let pick = if ord.initial_is_min() {
        exps.min_by(|a, b| ord.compare(a, b))
    } else {
        exps.max_by(|a, b| ord.compare(a, b))
    };
    pick.cloned().ok_or(Error::ZeroPolynomial)
}
