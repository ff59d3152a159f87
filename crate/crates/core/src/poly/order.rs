//! Monomial orders.
//!
//! Every order here is described by a comparator `compare` on exponents and a
//! rule for which term of a polynomial is distinguished (its initial term):
//! the minimum for local orders, the maximum for global ones. `leading_cmp`
//! folds both into a single priority comparison, `Greater` meaning "closer to
//! the distinguished term".

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use super::exponent::Exponent;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum OrderKind {
    /// (|α|, α₁, …, α_s) compared lexicographically; the initial term is the
    /// minimal one. A local order: every variable is below 1.
    PaperLocalDegLex,
    /// Same comparator, distinguished term is the maximal one (classical
    /// graded-lex Gröbner convention). Used for homogeneous ideals.
    GlobalGradedLex,
    /// Auxiliary variable t in position 0, compared first with larger powers
    /// of t leading; ties broken by `PaperLocalDegLex` on the remaining
    /// variables. Used for intersections of local ideals.
    LocalElimination,
    /// As `LocalElimination` but with `GlobalGradedLex` on the remaining
    /// variables.
    GlobalElimination,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub nvars: usize,
}

impl MonomialOrder {
    pub fn local(nvars: usize) -> MonomialOrder {
        MonomialOrder {
            kind: OrderKind::PaperLocalDegLex,
            nvars,
        }
    }

    pub fn global(nvars: usize) -> MonomialOrder {
        MonomialOrder {
            kind: OrderKind::GlobalGradedLex,
            nvars,
        }
    }

    /// The elimination order on t, x₁, …, x_s extending `self`.
    pub fn elimination(&self) -> MonomialOrder {
        let kind = match self.kind {
            OrderKind::PaperLocalDegLex | OrderKind::LocalElimination => OrderKind::LocalElimination,
            OrderKind::GlobalGradedLex | OrderKind::GlobalElimination => OrderKind::GlobalElimination,
        };
        MonomialOrder {
            kind,
            nvars: self.nvars + 1,
        }
    }

    /// The order on x₁, …, x_s that an elimination order restricts to.
    pub fn eliminated(&self) -> MonomialOrder {
        match self.kind {
            OrderKind::LocalElimination => MonomialOrder::local(self.nvars - 1),
            OrderKind::GlobalElimination => MonomialOrder::global(self.nvars - 1),
            _ => *self,
        }
    }

    pub fn is_global(&self) -> bool {
        matches!(self.kind, OrderKind::GlobalGradedLex | OrderKind::GlobalElimination)
    }

    pub fn is_elimination(&self) -> bool {
        matches!(self.kind, OrderKind::LocalElimination | OrderKind::GlobalElimination)
    }

    /// Whether the distinguished (initial) term is the minimum under
    /// [`MonomialOrder::compare`].
    pub fn initial_is_min(&self) -> bool {
        !self.is_global()
    }

    /// Unchecked comparator. For the two base kinds this is the degree-lex
    /// comparison of (|α|, α₁, …, α_s).
    pub fn compare(&self, a: &Exponent, b: &Exponent) -> Ordering {
        match self.kind {
            OrderKind::PaperLocalDegLex | OrderKind::GlobalGradedLex => a.cmp(b),
            OrderKind::LocalElimination => eliminate_cmp(a, b, true).reverse(),
            OrderKind::GlobalElimination => eliminate_cmp(a, b, false),
        }
    }

    /// Priority of `a` over `b` as the distinguished term.
    #[inline]
    pub fn leading_cmp(&self, a: &Exponent, b: &Exponent) -> Ordering {
        match self.kind {
            OrderKind::PaperLocalDegLex => b.cmp(a),
            OrderKind::GlobalGradedLex => a.cmp(b),
            OrderKind::LocalElimination => eliminate_cmp(a, b, true),
            OrderKind::GlobalElimination => eliminate_cmp(a, b, false),
        }
    }
}

fn eliminate_cmp(a: &Exponent, b: &Exponent, local_tail: bool) -> Ordering {
    let (pa, pb) = (a.parts(), b.parts());
    pa[0].cmp(&pb[0]).then_with(|| {
        let tail = (a.degree() - pa[0])
            .cmp(&(b.degree() - pb[0]))
            .then_with(|| pa[1..].cmp(&pb[1..]));
        if local_tail {
            tail.reverse()
        } else {
            tail
        }
    })
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            OrderKind::PaperLocalDegLex => "local-deglex",
            OrderKind::GlobalGradedLex => "global-grlex",
            OrderKind::LocalElimination => "elim-local",
            OrderKind::GlobalElimination => "elim-global",
        };
        write!(f, "{name}({})", self.nvars)
    }
}

/// Compares two exponents under `ord`, checking their lengths.
pub fn compare_exp(a: &Exponent, b: &Exponent, ord: &MonomialOrder) -> Result<Ordering> {
    a.check_len(ord.nvars)?;
    b.check_len(ord.nvars)?;
    Ok(ord.compare(a, b))
}
