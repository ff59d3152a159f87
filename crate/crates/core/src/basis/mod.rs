//! Standard bases: weak normal forms, completion, minimalization, truncated
//! reduction and tangent cones.

mod buchberger;
mod normal_form;

pub use buchberger::{standard_basis, standard_basis_with, BasisConfig, PairStrategy};
pub use normal_form::weak_normal_form;

pub(crate) use normal_form::{reduce_with, s_polynomial, Limits, Reducer};

use crate::error::{Error, Result};
use crate::poly::{Exponent, HomogeneousForm, MonomialOrder, Polynomial, Ring};

/// A computed standard basis f₁, …, f_p with initial exponents αᵢ and orders
/// rᵢ = ord(fᵢ), sorted by increasing initial exponent (hence r₁ ≤ ⋯ ≤ r_p
/// for degree-compatible orders).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardBasis {
    elements: Vec<Polynomial>,
    order: MonomialOrder,
    leading_exps: Vec<Exponent>,
    orders: Vec<u32>,
    minimal: bool,
    reduced: Option<u32>,
}

impl StandardBasis {
    pub(crate) fn from_elements(mut elements: Vec<Polynomial>, order: MonomialOrder) -> StandardBasis {
        elements.retain(|f| !f.is_zero());
        // stable: equal initial exponents keep their discovery order
        elements.sort_by(|a, b| {
            let (ea, eb) = (a.lead_exp().unwrap(), b.lead_exp().unwrap());
            a.ord().cmp(&b.ord()).then_with(|| ea.cmp(eb))
        });
        let leading_exps = elements.iter().map(|f| f.lead_exp().unwrap().clone()).collect();
        let orders = elements.iter().map(|f| f.ord().finite().unwrap()).collect();
        StandardBasis {
            elements,
            order,
            leading_exps,
            orders,
            minimal: false,
            reduced: None,
        }
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<Polynomial> {
        self.elements
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn leading_exps(&self) -> &[Exponent] {
        &self.leading_exps
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// The tail-reduction cutoff, when the basis has been reduced.
    pub fn reduced_cutoff(&self) -> Option<u32> {
        self.reduced
    }

    pub fn max_order(&self) -> Option<u32> {
        self.orders.iter().copied().max()
    }

    /// Keeps the elements whose initial exponents are minimal under
    /// componentwise divisibility (the first of equal exponents).
    pub fn minimalize(&self) -> StandardBasis {
        let mut keep: Vec<usize> = Vec::new();
        for (i, e) in self.leading_exps.iter().enumerate() {
            if !keep.iter().any(|&k| self.leading_exps[k].divides(e)) {
                keep.push(i);
            }
        }
        // an element sorted later can only divide an earlier one if equal
        StandardBasis {
            elements: keep.iter().map(|&i| self.elements[i].clone()).collect(),
            order: self.order,
            leading_exps: keep.iter().map(|&i| self.leading_exps[i].clone()).collect(),
            orders: keep.iter().map(|&i| self.orders[i]).collect(),
            minimal: true,
            reduced: self.reduced,
        }
    }

    /// Canonical form of a minimal basis: every element monic with all tail
    /// terms of degree ≤ `cutoff` outside the initial ideal; terms above the
    /// cutoff are discarded. For a fixed ideal, order and cutoff the output is
    /// unique.
    pub fn reduce(&self, cutoff: u32) -> StandardBasis {
        let base = if self.minimal { self.clone() } else { self.minimalize() };
        let reducers: Vec<Polynomial> = base.elements.iter().map(Polynomial::monic).collect();
        let mut out = Vec::with_capacity(reducers.len());
        for f in &reducers {
            out.push(tail_reduce(f, &reducers, cutoff));
        }
        let mut b = StandardBasis::from_elements(out, self.order);
        b.minimal = true;
        b.reduced = Some(cutoff);
        b
    }

    /// Checks the standard-basis criterion: every S-polynomial has weak
    /// normal form zero.
    pub fn is_certified(&self) -> bool {
        self.certify(&BasisConfig::default()).unwrap_or(false)
    }

    /// Like [`StandardBasis::is_certified`], with each normal form held to
    /// the reduction guardrails of `config`.
    pub fn certify(&self, config: &BasisConfig) -> Result<bool> {
        let reducers: Vec<Reducer> = self.elements.iter().cloned().map(Reducer::new).collect();
        for i in 0..self.elements.len() {
            for j in i + 1..self.elements.len() {
                let s = s_polynomial(&self.elements[i], &self.elements[j]);
                if !reduce_with(s, &reducers, config.limits())?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Weak normal form against this basis.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        let f = f.with_order(self.order)?;
        if let Some(g) = self.elements.first() {
            if g.ring() != f.ring() {
                return Err(Error::ContextMismatch);
            }
        }
        let reducers: Vec<Reducer> = self.elements.iter().cloned().map(Reducer::new).collect();
        reduce_with(f, &reducers, Limits::NONE)
    }

    /// Whether the initial exponent of `e` lies in the monoid ideal generated
    /// by the initial exponents.
    pub fn exp_in_initial_ideal(&self, e: &Exponent) -> bool {
        self.leading_exps.iter().any(|a| a.divides(e))
    }
}

fn tail_reduce(f: &Polynomial, reducers: &[Polynomial], cutoff: u32) -> Polynomial {
    let mut h = f.truncate_below(cutoff + 1);
    let mut start = 1;
    loop {
        let hit = h.terms().iter().enumerate().skip(start).find_map(|(k, (e, c))| {
            reducers
                .iter()
                .find(|g| g.lead_exp().unwrap().divides(e))
                .map(|g| (k, e.clone(), c.clone(), g))
        });
        let Some((k, e, c, g)) = hit else { break };
        let shift = e.checked_sub(g.lead_exp().unwrap()).unwrap();
        let lc = g.lead_coeff().unwrap();
        let one = h.field().one();
        h = h.combine(&one, &c.div(lc), &shift, g).truncate_below(cutoff + 1);
        // the cancelled term and everything before it are settled
        start = k;
    }
    h
}

/// A graded ideal of the associated graded ring, given by homogeneous
/// generators over the global graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousIdeal {
    ring: Ring,
    generators: Vec<HomogeneousForm>,
}

impl HomogeneousIdeal {
    pub fn new(ring: Ring, generators: Vec<HomogeneousForm>) -> Result<HomogeneousIdeal> {
        let ring = Ring::global(ring.field, ring.nvars());
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.poly().is_zero() {
                return Err(Error::InvalidArgument("zero generator in homogeneous ideal".into()));
            }
            if g.poly().nvars() != ring.nvars() || g.poly().field() != ring.field {
                return Err(Error::ContextMismatch);
            }
            gens.push(HomogeneousForm::new(g.poly().with_order(ring.order)?)?);
        }
        Ok(HomogeneousIdeal {
            ring,
            generators: gens,
        })
    }

    /// From arbitrary homogeneous polynomials.
    pub fn from_polys(ring: Ring, polys: impl IntoIterator<Item = Polynomial>) -> Result<HomogeneousIdeal> {
        let forms = polys
            .into_iter()
            .filter(|p| !p.is_zero())
            .map(HomogeneousForm::new)
            .collect::<Result<Vec<_>>>()?;
        HomogeneousIdeal::new(ring, forms)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn generators(&self) -> &[HomogeneousForm] {
        &self.generators
    }

    pub fn polys(&self) -> Vec<Polynomial> {
        self.generators.iter().map(|g| g.poly().clone()).collect()
    }
}

/// The tangent cone I*: generated by the leading forms of a minimal standard
/// basis of I under the local order.
pub fn tangent_cone(gens: &[Polynomial]) -> Result<HomogeneousIdeal> {
    let Some(first) = gens.first() else {
        return Err(Error::InvalidArgument("tangent cone needs a ring context; got no generators".into()));
    };
    let ring = first.ring();
    let sb = standard_basis(gens, MonomialOrder::local(ring.nvars()))?.minimalize();
    tangent_cone_of(&sb)
}

/// Leading forms of a standard basis computed under the local order.
pub fn tangent_cone_of(sb: &StandardBasis) -> Result<HomogeneousIdeal> {
    let ring = Ring::global(
        sb.elements.first().map_or(crate::poly::Field::Rationals, |f| f.field()),
        sb.order.nvars,
    );
    let forms = sb
        .elements
        .iter()
        .map(|f| f.leading_form())
        .collect::<Result<Vec<_>>>()?;
    HomogeneousIdeal::new(ring, forms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::testutil::p2;

    fn exps(sb: &StandardBasis) -> Vec<Exponent> {
        sb.leading_exps().to_vec()
    }

    fn e(p: &[u32]) -> Exponent {
        Exponent::new(p.iter().copied())
    }

    #[test]
    fn worked_example_basis() {
        let sb = standard_basis(&[p2("x^2"), p2("y^3 - x*y")], MonomialOrder::local(2)).unwrap();
        assert!(sb.is_certified());
        let m = sb.minimalize();
        assert_eq!(exps(&m), vec![e(&[1, 1]), e(&[2, 0]), e(&[0, 5])]);
        assert_eq!(m.orders(), &[2, 2, 5]);
        assert!(m.is_certified());
    }

    #[test]
    fn y5_in_and_y4_not_in_paper_example() {
        let sb = standard_basis(&[p2("x^2"), p2("y^3 - x*y")], MonomialOrder::local(2)).unwrap();
        // y⁵ = (y² + x)(y³ − xy) + y·x²
        let witness = p2("(y^2 + x)*(y^3 - x*y) + y*x^2");
        assert_eq!(witness, p2("y^5"));
        assert!(weak_normal_form(&p2("y^5"), sb.elements()).unwrap().is_zero());
        let r = weak_normal_form(&p2("y^4"), sb.elements()).unwrap();
        assert_eq!(r.initial_exp().unwrap(), e(&[0, 4]));
    }

    #[test]
    fn principal_and_global_examples() {
        let sb = standard_basis(&[p2("x")], MonomialOrder::local(2)).unwrap();
        assert_eq!(sb.elements(), &[p2("x")]);
        let sb = standard_basis(&[p2("x - y"), p2("y")], MonomialOrder::global(2)).unwrap().minimalize();
        let mut got = exps(&sb);
        got.sort();
        assert_eq!(got, vec![e(&[0, 1]), e(&[1, 0])]);
    }

    #[test]
    fn minimalize_drops_divisible_exponents() {
        let gens = [p2("x^2"), p2("x*y"), p2("y^5"), p2("x^2*y")];
        let sb = StandardBasis::from_elements(gens.to_vec(), MonomialOrder::local(2));
        let m = sb.minimalize();
        assert_eq!(m.len(), 3);
        assert!(!m.leading_exps().contains(&e(&[2, 1])));
        assert_eq!(m.minimalize(), m);
    }

    #[test]
    fn minimal_basis_of_square() {
        let f = p2("y^3 - x*y");
        let gens = [p2("x^4"), p2("x^2").mul(&f).unwrap(), f.mul(&f).unwrap()];
        let m = standard_basis(&gens, MonomialOrder::local(2)).unwrap().minimalize();
        let mut got = exps(&m);
        got.sort();
        let mut want = vec![e(&[4, 0]), e(&[3, 1]), e(&[2, 2]), e(&[1, 6]), e(&[0, 9])];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn reduce_examples() {
        let sb = standard_basis(&[p2("x"), p2("x + y^2")], MonomialOrder::local(2)).unwrap();
        let r = sb.reduce(6);
        assert_eq!(r.elements(), &[p2("x"), p2("y^2")]);
        let mono = StandardBasis::from_elements(vec![p2("x^2"), p2("y^3")], MonomialOrder::local(2)).minimalize();
        assert_eq!(mono.reduce(10).elements(), mono.elements());
    }

    #[test]
    fn reduce_is_canonical_under_shuffles() {
        let gens = [p2("x^2"), p2("y^3 - x*y"), p2("x^2 + 2*x*y^3 - y^6")];
        let a = standard_basis(&gens, MonomialOrder::local(2)).unwrap().reduce(12);
        let shuffled = [gens[2].clone(), gens[0].clone(), gens[1].clone()];
        let b = standard_basis(&shuffled, MonomialOrder::local(2)).unwrap().reduce(12);
        assert_eq!(a.elements(), b.elements());
        assert_eq!(a.reduced_cutoff(), Some(12));
    }

    #[test]
    fn tangent_cone_examples() {
        let tc = tangent_cone(&[p2("x^2"), p2("y^3 - x*y")]).unwrap();
        let mut forms: Vec<String> = tc.polys().iter().map(|p| p.monic().to_string()).collect();
        forms.sort();
        assert_eq!(forms, vec!["x1*x2", "x1^2", "x2^5"]);
        let tc = tangent_cone(&[p2("x^2 + y^3")]).unwrap();
        assert_eq!(tc.polys().len(), 1);
        assert_eq!(tc.polys()[0], p2("x^2").with_order(MonomialOrder::global(2)).unwrap());
        let tc = tangent_cone(&[p2("x + y^2"), p2("y - x^3")]).unwrap();
        let mut got: Vec<Exponent> = tc.polys().iter().map(|p| p.lead_exp().unwrap().clone()).collect();
        got.sort();
        assert_eq!(got, vec![e(&[0, 1]), e(&[1, 0])]);
    }

    #[test]
    fn shuffled_strategy_gives_same_staircase() {
        let gens = [p2("x^2"), p2("y^3 - x*y")];
        let normal = standard_basis(&gens, MonomialOrder::local(2)).unwrap().minimalize();
        for seed in 0..5 {
            let cfg = BasisConfig {
                strategy: PairStrategy::Shuffled(seed),
                ..BasisConfig::default()
            };
            let sb = standard_basis_with(&gens, MonomialOrder::local(2), &cfg).unwrap().minimalize();
            assert_eq!(sb.leading_exps(), normal.leading_exps());
            assert!(sb.is_certified());
        }
    }

    #[test]
    fn job_guardrail() {
        let cfg = BasisConfig {
            max_jobs: 1,
            ..BasisConfig::default()
        };
        let r = standard_basis_with(&[p2("x^2"), p2("y^3 - x*y")], MonomialOrder::local(2), &cfg);
        assert!(matches!(r, Err(Error::Resource(_))));
    }
}
