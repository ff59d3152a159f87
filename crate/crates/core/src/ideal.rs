//! Ideal-level arithmetic in the local ring 𝕜[x]_(x) and in the graded ring.
//!
//! Constructions (sum, product, power) act on generator lists; a minimal
//! standard basis is computed lazily and cached the first time membership is
//! asked.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::basis::{standard_basis, standard_basis_with, BasisConfig, HomogeneousIdeal, StandardBasis};
use crate::error::{Error, Result};
use crate::poly::{count_of_degree, exponents_of_degree, Field, MonomialOrder, Polynomial, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Setting {
    /// Ideals of the local ring, under the local degree-lex order.
    Local,
    /// Homogeneous ideals of the graded ring, under global graded-lex.
    Homogeneous,
}

impl Setting {
    fn order(self, nvars: usize) -> MonomialOrder {
        match self {
            Setting::Local => MonomialOrder::local(nvars),
            Setting::Homogeneous => MonomialOrder::global(nvars),
        }
    }
}

pub struct IdealHandle {
    ring: Ring,
    setting: Setting,
    generators: Vec<Polynomial>,
    /// Set when the generators are exactly the monomials of one degree k.
    maximal_power: Option<u32>,
    config: BasisConfig,
    basis: OnceLock<StandardBasis>,
}

impl Clone for IdealHandle {
    fn clone(&self) -> Self {
        let basis = OnceLock::new();
        if let Some(b) = self.basis.get() {
            let _ = basis.set(b.clone());
        }
        IdealHandle {
            ring: self.ring,
            setting: self.setting,
            generators: self.generators.clone(),
            maximal_power: self.maximal_power,
            config: self.config.clone(),
            basis,
        }
    }
}

impl fmt::Debug for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.generators.iter().map(|g| g.to_string()).join(", "))
    }
}

impl IdealHandle {
    /// The ideal generated by `gens`; zero generators are dropped and
    /// duplicates (up to scalars) merged.
    pub fn new(field: Field, nvars: usize, setting: Setting, gens: impl IntoIterator<Item = Polynomial>) -> Result<IdealHandle> {
        let ring = Ring::new(field, setting.order(nvars));
        let mut seen = HashSet::new();
        let mut generators = Vec::new();
        for g in gens {
            if g.field() != field {
                return Err(Error::ContextMismatch);
            }
            let g = g.with_order(ring.order)?;
            if g.is_zero() {
                continue;
            }
            if setting == Setting::Homogeneous && !g.is_homogeneous() {
                return Err(Error::InvalidArgument(format!(
                    "{g} is not homogeneous; homogeneous ideals need homogeneous generators"
                )));
            }
            let g = g.primitive();
            if seen.insert(g.clone()) {
                generators.push(g);
            }
        }
        let maximal_power = detect_maximal_power(&generators, nvars);
        Ok(IdealHandle {
            ring,
            setting,
            generators,
            maximal_power,
            config: BasisConfig::default(),
            basis: OnceLock::new(),
        })
    }

    /// A local ideal from generators living in a local ring.
    pub fn local(gens: &[Polynomial]) -> Result<IdealHandle> {
        let first = gens
            .first()
            .ok_or_else(|| Error::InvalidArgument("use IdealHandle::new for the zero ideal".into()))?;
        IdealHandle::new(first.field(), first.nvars(), Setting::Local, gens.iter().cloned())
    }

    pub fn from_homogeneous(h: &HomogeneousIdeal) -> Result<IdealHandle> {
        IdealHandle::new(h.ring().field, h.ring().nvars(), Setting::Homogeneous, h.polys())
    }

    pub fn zero(field: Field, nvars: usize, setting: Setting) -> IdealHandle {
        IdealHandle::new(field, nvars, setting, []).expect("empty generator list")
    }

    pub fn unit(field: Field, nvars: usize, setting: Setting) -> IdealHandle {
        let ring = Ring::new(field, setting.order(nvars));
        IdealHandle::new(field, nvars, setting, [Polynomial::one(ring)]).expect("constant generator")
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn setting(&self) -> Setting {
        self.setting
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// k when this ideal is 𝔪^k.
    pub fn maximal_power(&self) -> Option<u32> {
        self.maximal_power
    }

    /// Selects the pair strategy and guardrail used for this ideal's basis;
    /// drops any cached basis.
    pub fn with_config(mut self, config: BasisConfig) -> IdealHandle {
        self.config = config;
        self.basis = OnceLock::new();
        self
    }

    /// Cached minimal standard basis under the setting's order.
    pub fn basis(&self) -> Result<&StandardBasis> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let sb = standard_basis_with(&self.generators, self.ring.order, &self.config)?.minimalize();
        let _ = self.basis.set(sb);
        Ok(self.basis.get().expect("just set"))
    }

    /// Same ideal, generated by its cached minimal basis.
    pub fn basis_handle(&self) -> Result<IdealHandle> {
        let b = self.basis()?.clone();
        let mut h = IdealHandle::new(self.ring.field, self.ring.nvars(), self.setting, b.elements().iter().cloned())?;
        h.basis = OnceLock::from(b);
        Ok(h)
    }

    fn with_basis(mut self, basis: StandardBasis) -> IdealHandle {
        self.basis = OnceLock::from(basis);
        self
    }

    fn check_compatible(&self, other: &IdealHandle) -> Result<()> {
        if self.ring != other.ring || self.setting != other.setting {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    fn derived(&self, gens: impl IntoIterator<Item = Polynomial>) -> Result<IdealHandle> {
        IdealHandle::new(self.ring.field, self.ring.nvars(), self.setting, gens)
    }
}

fn detect_maximal_power(gens: &[Polynomial], nvars: usize) -> Option<u32> {
    let first = gens.first()?;
    let d = first.degree()?;
    let all_monomials = gens.iter().all(|g| g.len() == 1 && g.degree() == Some(d));
    (all_monomials && gens.len() as u128 == count_of_degree(nvars, d)).then_some(d)
}

/// Ia + Ib.
pub fn ideal_sum(a: &IdealHandle, b: &IdealHandle) -> Result<IdealHandle> {
    a.check_compatible(b)?;
    a.derived(a.generators.iter().chain(&b.generators).cloned())
}

/// Ia · Ib, generated by all pairwise products.
pub fn ideal_product(a: &IdealHandle, b: &IdealHandle) -> Result<IdealHandle> {
    a.check_compatible(b)?;
    let mut gens = Vec::with_capacity(a.generators.len() * b.generators.len());
    for f in &a.generators {
        for g in &b.generators {
            gens.push(f.mul(g)?);
        }
    }
    a.derived(gens)
}

/// Iⁿ for n ≥ 1, generated by the products over multisets of n generators.
pub fn ideal_power(a: &IdealHandle, n: u32) -> Result<IdealHandle> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "the zeroth power is the unit ideal, outside the maximal ideal".into(),
        ));
    }
    let gens: Vec<Polynomial> = (0..a.generators.len())
        .combinations_with_replacement(n as usize)
        .map(|combo| {
            combo
                .into_iter()
                .map(|i| &a.generators[i])
                .fold(Polynomial::one(a.ring), |acc, g| acc.mul(g).expect("same ring"))
        })
        .collect();
    a.derived(gens)
}

/// 𝔪ⁿ, generated by all monomials of degree n (the unit ideal for n = 0).
pub fn m_power(field: Field, nvars: usize, setting: Setting, n: u32) -> IdealHandle {
    let ring = Ring::new(field, setting.order(nvars));
    let gens = exponents_of_degree(nvars, n)
        .into_iter()
        .map(|e| Polynomial::monomial(ring, e, field.one()).expect("exponent length"));
    let h = IdealHandle::new(field, nvars, setting, gens).expect("monomials are valid generators");
    // monomials of one degree are already a minimal standard basis
    let sb = StandardBasis::from_elements(h.generators.clone(), ring.order).minimalize();
    h.with_basis(sb)
}

/// Ia ∩ Ib.
///
/// Intersections with a power 𝔪^k use the standard-basis identity
/// K ∩ 𝔪^k = Σ 𝔪^max(0, k − ord gᵢ)·gᵢ over a standard basis (gᵢ) of K, which
/// holds because the order is degree-compatible. Everything else goes
/// through elimination.
pub fn intersect(a: &IdealHandle, b: &IdealHandle) -> Result<IdealHandle> {
    a.check_compatible(b)?;
    if a.is_zero() || b.is_zero() {
        return Ok(IdealHandle::zero(a.ring.field, a.ring.nvars(), a.setting));
    }
    if let Some(k) = b.maximal_power {
        return intersect_maximal_power(a, k);
    }
    if let Some(k) = a.maximal_power {
        return intersect_maximal_power(b, k);
    }
    intersect_by_elimination(a, b)
}

fn intersect_maximal_power(a: &IdealHandle, k: u32) -> Result<IdealHandle> {
    let nvars = a.ring.nvars();
    // homogeneous generators already give a standard representation by degree
    let gens = match a.setting {
        Setting::Local => a.basis()?.elements(),
        Setting::Homogeneous => a.generators(),
    };
    let mut out = Vec::new();
    for g in gens {
        let ord = g.ord().finite().expect("nonzero");
        for gamma in exponents_of_degree(nvars, k.saturating_sub(ord)) {
            out.push(g.mul_monomial(&gamma));
        }
    }
    let h = a.derived(out)?;
    match a.setting {
        Setting::Local => {
            let basis = StandardBasis::from_elements(h.generators.clone(), a.ring.order).minimalize();
            Ok(h.with_basis(basis))
        }
        Setting::Homogeneous => Ok(h),
    }
}

/// Ia ∩ Ib by elimination: a standard basis of t·Ia + (1−t)·Ib under an
/// order with t global and compared first; the elements free of t generate
/// the intersection.
pub fn intersect_by_elimination(a: &IdealHandle, b: &IdealHandle) -> Result<IdealHandle> {
    a.check_compatible(b)?;
    if a.is_zero() || b.is_zero() {
        return Ok(IdealHandle::zero(a.ring.field, a.ring.nvars(), a.setting));
    }
    let ext = Ring::new(a.ring.field, a.ring.order.elimination());
    let mut gens = Vec::with_capacity(a.generators.len() + b.generators.len());
    for f in &a.generators {
        gens.push(f.lift_aux(ext, 1));
    }
    for g in &b.generators {
        gens.push(g.lift_aux(ext, 0).sub(&g.lift_aux(ext, 1))?);
    }
    let sb = standard_basis(&gens, ext.order)?;
    let free: Vec<Polynomial> = sb
        .elements()
        .iter()
        .filter_map(|f| f.drop_aux(a.ring))
        .collect();
    match a.setting {
        Setting::Local => {
            let basis = StandardBasis::from_elements(free, a.ring.order).minimalize();
            Ok(a.derived(basis.elements().iter().cloned())?.with_basis(basis))
        }
        Setting::Homogeneous => a.derived(free.iter().flat_map(|f| f.homogeneous_components())),
    }
}

/// The elements of the minimal standard basis of a local ideal whose leading
/// forms minimally generate its tangent cone, in ascending order. Their
/// number and orders are invariants of the ideal.
pub fn graded_minimal_basis(a: &IdealHandle) -> Result<Vec<Polynomial>> {
    if a.setting != Setting::Local {
        return Err(Error::InvalidArgument("graded minimal bases are taken of local ideals".into()));
    }
    let field = a.ring.field;
    let nvars = a.ring.nvars();
    let mut kept: Vec<Polynomial> = Vec::new();
    let mut forms: Vec<Polynomial> = Vec::new();
    for f in a.basis()?.elements() {
        let form = f.leading_form()?.into_poly().with_order(MonomialOrder::global(nvars))?;
        let cone = IdealHandle::new(field, nvars, Setting::Homogeneous, forms.iter().cloned())?;
        if !member(&form, &cone)? {
            kept.push(f.clone());
            forms.push(form);
        }
    }
    Ok(kept)
}

/// f ∈ Ia, decided by the weak normal form against a standard basis.
pub fn member(f: &Polynomial, a: &IdealHandle) -> Result<bool> {
    if f.nvars() != a.ring.nvars() || f.field() != a.ring.field {
        return Err(Error::ContextMismatch);
    }
    if f.is_zero() {
        return Ok(true);
    }
    if a.is_zero() {
        return Ok(false);
    }
    Ok(a.basis()?.normal_form(f)?.is_zero())
}

/// Ib ⊆ Ia.
pub fn ideal_contains(a: &IdealHandle, b: &IdealHandle) -> Result<bool> {
    a.check_compatible(b)?;
    a.basis()?;
    let verdicts = b
        .generators
        .par_iter()
        .map(|g| member(g, a))
        .collect::<Result<Vec<bool>>>()?;
    Ok(verdicts.into_iter().all(|v| v))
}

/// Ia = Ib by mutual containment.
pub fn ideal_equal(a: &IdealHandle, b: &IdealHandle) -> Result<bool> {
    Ok(ideal_contains(a, b)? && ideal_contains(b, a)?)
}

/// Equality through canonical reduced bases truncated at `cutoff`.
pub fn ideal_equal_reduced(a: &IdealHandle, b: &IdealHandle, cutoff: u32) -> Result<bool> {
    a.check_compatible(b)?;
    let ra = a.basis()?.reduce(cutoff);
    let rb = b.basis()?.reduce(cutoff);
    Ok(ra.elements() == rb.elements())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::testutil::p2;
    use crate::poly::Exponent;
    use proptest::prelude::*;

    fn local(gens: &[&str]) -> IdealHandle {
        IdealHandle::new(Field::Rationals, 2, Setting::Local, gens.iter().map(|s| p2(s))).unwrap()
    }

    fn same_set(a: &IdealHandle, want: &[&str]) -> bool {
        let mut got: Vec<String> = a.generators().iter().map(|g| g.to_string()).collect();
        let mut want: Vec<String> = local(want).generators().iter().map(|g| g.to_string()).collect();
        got.sort();
        want.sort();
        got == want
    }

    #[test]
    fn constructions() {
        let p = ideal_power(&local(&["x*y", "x^2"]), 2).unwrap();
        assert!(same_set(&p, &["x^2*y^2", "x^3*y", "x^4"]));
        let i = local(&["x^2", "y^3 - x*y"]);
        let s = ideal_sum(&i, &IdealHandle::zero(Field::Rationals, 2, Setting::Local)).unwrap();
        assert!(ideal_equal(&s, &i).unwrap());
        let sq = ideal_power(&i, 2).unwrap();
        assert!(same_set(&sq, &["x^4", "x^2*(y^3 - x*y)", "(y^3 - x*y)^2"]));
        assert!(ideal_power(&i, 0).is_err());
    }

    #[test]
    fn maximal_ideal_powers() {
        assert!(same_set(&m_power(Field::Rationals, 2, Setting::Local, 2), &["x^2", "x*y", "y^2"]));
        assert!(same_set(&m_power(Field::Rationals, 2, Setting::Local, 1), &["x", "y"]));
        let m = m_power(Field::Rationals, 1, Setting::Local, 3);
        assert_eq!(m.generators().len(), 1);
        assert_eq!(m.generators()[0].lead_exp().unwrap(), &Exponent::new([3]));
    }

    #[test]
    fn intersections() {
        let r = intersect(&local(&["x"]), &local(&["y"])).unwrap();
        assert!(same_set(&r, &["x*y"]));
        let r = intersect(&local(&["x^2", "x*y"]), &local(&["y^2"])).unwrap();
        assert!(ideal_equal(&r, &local(&["x^2*y^2", "x*y^2"])).unwrap());
        let x4 = m_power(Field::Rationals, 1, Setting::Local, 4);
        let x3 = m_power(Field::Rationals, 1, Setting::Local, 3);
        let r = intersect(&x4, &x3).unwrap();
        assert_eq!(r.generators(), x4.generators());
    }

    #[test]
    fn intersection_with_units_in_play() {
        // (x) ∩ (x − x²) is (x) locally, since 1 − x is a unit
        let r = intersect(&local(&["x"]), &local(&["x - x^2"])).unwrap();
        assert!(ideal_equal(&r, &local(&["x"])).unwrap());
        // (x² + y³) ∩ 𝔪³ contains (x² + y³)·𝔪 and nothing of order 2
        let f = local(&["x^2 + y^3"]);
        let r = intersect(&f, &m_power(Field::Rationals, 2, Setting::Local, 3)).unwrap();
        assert!(ideal_equal(&r, &ideal_product(&f, &local(&["x", "y"])).unwrap()).unwrap());
    }

    #[test]
    fn maximal_power_fast_path_matches_elimination() {
        let m3 = m_power(Field::Rationals, 2, Setting::Local, 3);
        assert_eq!(m3.maximal_power(), Some(3));
        assert_eq!(local(&["x", "y"]).maximal_power(), Some(1));
        assert_eq!(local(&["x^2", "y^2"]).maximal_power(), None);
        for gens in [&["x^2", "y^3 - x*y"][..], &["x^2 + y^3", "x*y^2"], &["x - y^2 + x^3"]] {
            let i = local(gens);
            for k in 1..7 {
                let m = m_power(Field::Rationals, 2, Setting::Local, k);
                let fast = intersect(&i, &m).unwrap();
                let slow = intersect_by_elimination(&i, &m).unwrap();
                assert!(ideal_equal(&fast, &slow).unwrap(), "{gens:?} k={k}");
                assert!(fast.basis().unwrap().is_certified());
            }
        }
    }

    #[test]
    fn graded_minimal_counts() {
        let i = local(&["x^2", "y^3 - x*y"]);
        assert_eq!(graded_minimal_basis(&i).unwrap().len(), 3);
        // (x² + y², xy) has a three-element standard basis but two minimal
        // generators of its tangent cone
        let h = local(&["x^2 + y^2", "x*y"]);
        assert!(h.basis().unwrap().len() > 2);
        let g = graded_minimal_basis(&h).unwrap();
        assert_eq!(g.iter().map(|f| f.ord().finite().unwrap()).collect::<Vec<_>>(), vec![2, 2]);
    }

    #[test]
    fn membership_examples() {
        let i = local(&["x^2", "y^3 - x*y"]);
        assert!(member(&p2("y^5"), &i).unwrap());
        assert!(!member(&p2("y^4"), &i).unwrap());
        assert!(member(&p2("0"), &i).unwrap());
        assert!(member(&p2("0"), &IdealHandle::zero(Field::Rationals, 2, Setting::Local)).unwrap());
    }

    #[test]
    fn containment_and_equality() {
        assert!(ideal_equal(&local(&["x", "y"]), &local(&["y", "x + y"])).unwrap());
        assert!(ideal_contains(&local(&["x^2"]), &local(&["x^3"])).unwrap());
        assert!(!ideal_contains(&local(&["x^3"]), &local(&["x^2"])).unwrap());
        let i = local(&["x^2", "y^3 - x*y"]);
        let j = local(&["x^2", "x*y", "y^5"]);
        // locally equal is false: I is not monomial
        assert!(!ideal_equal(&i, &j).unwrap());
        assert!(ideal_equal_reduced(&i, &i.basis_handle().unwrap(), 10).unwrap());
    }

    #[test]
    fn homogeneous_setting() {
        let g = |s: &str| p2(s).with_order(MonomialOrder::global(2)).unwrap();
        let h = IdealHandle::new(Field::Rationals, 2, Setting::Homogeneous, [g("x^2"), g("x*y"), g("y^5")]).unwrap();
        assert!(member(&g("x*y^4"), &h).unwrap());
        assert!(!member(&g("y^4"), &h).unwrap());
        assert!(IdealHandle::new(Field::Rationals, 2, Setting::Homogeneous, [g("x + y^2")]).is_err());
        let a = IdealHandle::new(Field::Rationals, 2, Setting::Homogeneous, [g("x")]).unwrap();
        let b = IdealHandle::new(Field::Rationals, 2, Setting::Homogeneous, [g("x + y")]).unwrap();
        let r = intersect(&a, &b).unwrap();
        assert!(r.generators().iter().all(|f| f.is_homogeneous()));
        let prod = ideal_product(&a, &b).unwrap();
        assert!(ideal_equal(&r, &prod).unwrap());
        let local_x = local(&["x"]);
        assert!(matches!(ideal_sum(&a, &local_x), Err(Error::ContextMismatch)));
    }

    /// Componentwise-max rule for monomial ideals.
    fn monomial_intersection(a: &[Exponent], b: &[Exponent]) -> Vec<Exponent> {
        a.iter().flat_map(|x| b.iter().map(move |y| x.lcm(y))).collect()
    }

    fn monomial_ideal(exps: &[Exponent]) -> IdealHandle {
        let ring = Ring::local(Field::Rationals, 2);
        IdealHandle::new(
            Field::Rationals,
            2,
            Setting::Local,
            exps.iter().map(|e| Polynomial::monomial(ring, e.clone(), Field::Rationals.one()).unwrap()),
        )
        .unwrap()
    }

    fn arb_monomials() -> impl Strategy<Value = Vec<Exponent>> {
        proptest::collection::vec((0u32..4, 0u32..4), 1..4)
            .prop_map(|v| v.into_iter().filter(|&(a, b)| a + b > 0).map(|(a, b)| Exponent::new([a, b])).collect::<Vec<_>>())
            .prop_filter("nonempty", |v| !v.is_empty())
    }

    fn arb_local() -> impl Strategy<Value = IdealHandle> {
        proptest::collection::vec(
            proptest::collection::vec(((0u32..3, 0u32..3), -2i64..3), 1..3),
            1..3,
        )
        .prop_map(|gens| {
            let ring = Ring::local(Field::Rationals, 2);
            let polys = gens.into_iter().map(|terms| {
                Polynomial::from_terms(
                    ring,
                    terms.into_iter().map(|((a, b), c)| (Exponent::new([a + 1, b]), Field::Rationals.from_i64(c))),
                )
                .unwrap()
            });
            IdealHandle::new(Field::Rationals, 2, Setting::Local, polys).unwrap()
        })
        .prop_filter("nonzero", |i| !i.is_zero())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn intersect_matches_monomial_oracle(a in arb_monomials(), b in arb_monomials()) {
            let got = intersect(&monomial_ideal(&a), &monomial_ideal(&b)).unwrap();
            let want = monomial_ideal(&monomial_intersection(&a, &b));
            prop_assert!(ideal_equal(&got, &want).unwrap());
        }

        #[test]
        fn power_is_product_of_powers(i in arb_local(), a in 1u32..3, b in 1u32..3) {
            let lhs = ideal_power(&i, a + b).unwrap();
            let rhs = ideal_product(&ideal_power(&i, a).unwrap(), &ideal_power(&i, b).unwrap()).unwrap();
            prop_assert!(ideal_equal(&lhs, &rhs).unwrap());
        }

        #[test]
        fn product_distributes(a in arb_local(), b in arb_local(), c in arb_local()) {
            let lhs = ideal_product(&ideal_sum(&a, &b).unwrap(), &c).unwrap();
            let rhs = ideal_sum(&ideal_product(&a, &c).unwrap(), &ideal_product(&b, &c).unwrap()).unwrap();
            prop_assert!(ideal_contains(&rhs, &lhs).unwrap());
            prop_assert!(ideal_equal(&lhs, &rhs).unwrap());
        }

        #[test]
        fn intersection_is_contained_in_both(a in arb_local(), b in arb_local()) {
            let r = intersect(&a, &b).unwrap();
            prop_assert!(ideal_contains(&a, &r).unwrap());
            prop_assert!(ideal_contains(&b, &r).unwrap());
            prop_assert!(ideal_contains(&r, &ideal_product(&a, &b).unwrap()).unwrap());
            prop_assert!(r.basis().unwrap().is_certified());
        }
    }
}
