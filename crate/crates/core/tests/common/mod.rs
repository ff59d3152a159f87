//! Checks shared by the integration tests and the acceptance runner. Each
//! returns a description of the first mismatch.

#![allow(dead_code)]

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sblab::basis::{tangent_cone_of, BasisConfig, HomogeneousIdeal, PairStrategy, StandardBasis};
use sblab::experiments::corpus::{self, regression};
use sblab::experiments::{
    artin_rees_experiment, basis_profile, growth_experiment, paper_example_check, prop4_experiment, LambdaMin,
    ProblemIdeals,
};
use sblab::ideal::{ideal_power, member, IdealHandle};
use sblab::oracle::{homog_member, staircase};
use sblab::parser::{parse_polynomial, ProblemSpec};
use sblab::poly::{exponents_of_degree, Exponent, HomogeneousForm, Polynomial, Ring};

pub type Check = Result<(), String>;

static CERTIFIED: AtomicUsize = AtomicUsize::new(0);
static UNCERTIFIED: Mutex<Vec<String>> = Mutex::new(Vec::new());

fn fail<T>(msg: impl Into<String>) -> Result<T, String> {
    Err(msg.into())
}

fn ok_or_msg<T>(r: sblab::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

/// The minimal standard basis of `h`, with its S-pair criterion checked and
/// the outcome recorded for [`certification`].
pub fn certified_basis<'a>(h: &'a IdealHandle, what: &str) -> Result<&'a StandardBasis, String> {
    let b = ok_or_msg(h.basis(), what)?;
    if b.is_certified() {
        CERTIFIED.fetch_add(1, Ordering::Relaxed);
    } else {
        UNCERTIFIED.lock().unwrap().push(what.to_string());
    }
    Ok(b)
}

/// Every basis passed through [`certified_basis`] so far satisfied the
/// S-pair criterion.
pub fn certification() -> Check {
    let bad = UNCERTIFIED.lock().unwrap();
    let good = CERTIFIED.load(Ordering::Relaxed);
    if !bad.is_empty() {
        return fail(format!("{} of {} bases failed: {:?}", bad.len(), bad.len() + good, *bad));
    }
    if good == 0 {
        return fail("no bases were checked");
    }
    Ok(())
}

pub fn certified_count() -> usize {
    CERTIFIED.load(Ordering::Relaxed)
}

pub fn corpus() -> Vec<(&'static str, ProblemSpec)> {
    corpus::corpus().expect("shipped corpus parses")
}

pub fn poly(text: &str, names: &[&str], ring: Ring) -> Polynomial {
    let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    parse_polynomial(text, &names, ring).expect("valid polynomial")
}

fn max_generator_degree(spec: &ProblemSpec) -> u32 {
    spec.generators_i
        .iter()
        .chain(&spec.generators_j)
        .filter_map(|g| g.degree())
        .max()
        .unwrap_or(0)
}

fn cone(h: &IdealHandle, what: &str) -> Result<HomogeneousIdeal, String> {
    ok_or_msg(tangent_cone_of(certified_basis(h, what)?), what)
}

pub fn worked_example_cones() -> Check {
    let r = ok_or_msg(paper_example_check(5), "worked example")?;
    if !r.passed {
        return fail(format!("failed at n = {:?}", r.failed_at));
    }
    let i = sblab::experiments::example_ideal();
    for n in 1..=5 {
        certified_basis(&ok_or_msg(ideal_power(&i, n), "power")?, &format!("I^{n} of the example"))?;
    }
    Ok(())
}

pub fn worked_example_growth() -> Check {
    let spec = corpus::entry("paper_example").expect("corpus entry");
    let r = ok_or_msg(growth_experiment(&spec, 5), "growth")?;
    let got: Vec<(u32, u32)> = r.rows.iter().map(|row| (row.n, row.max_ord)).collect();
    let want: Vec<(u32, u32)> = (1..=5).map(|n| (n, 4 * n + 1)).collect();
    if got != want {
        return fail(format!("maxOrd rows {got:?}, expected {want:?}"));
    }
    if r.lambda_hat != Some(5) {
        return fail(format!("lambdaHat {:?}", r.lambda_hat));
    }
    Ok(())
}

pub fn artin_rees_univariate() -> Check {
    let spec = corpus::entry("univariate_square").expect("corpus entry");
    let r = ok_or_msg(artin_rees_experiment(&spec, 4, 4, 4), "artin-rees")?;
    if r.lambda_min != LambdaMin::Found(2) {
        return fail(format!("lambdaMin {:?}", r.lambda_min));
    }
    match r.cell(1, 2, 3) {
        Some(c) if !c.holds => Ok(()),
        other => fail(format!("cell (λ=1, m=2, n=3) is {other:?}")),
    }
}

pub fn artin_rees_worked_example() -> Check {
    let spec = corpus::entry("paper_example").expect("corpus entry");
    let r = ok_or_msg(artin_rees_experiment(&spec, 3, 3, 8), "artin-rees")?;
    if !r.inclusion_everywhere() {
        return fail("RHS ⊆ LHS fails in some cell");
    }
    let pinned = regression()["paper_example"].artin_rees_lambda_min;
    match (r.lambda_min, pinned) {
        (LambdaMin::Found(l), Some(p)) if l == p => {}
        (got, p) => return fail(format!("lambdaMin {got:?}, pinned {p:?}")),
    }
    artin_rees_monotone(&r)
}

pub fn artin_rees_monotone(r: &sblab::experiments::ArtinReesReport) -> Check {
    for w in r.grids.windows(2) {
        if w[0].all_hold && !w[1].all_hold {
            return fail(format!("grid holds for λ = {} but not for λ = {}", w[0].lambda, w[1].lambda));
        }
    }
    Ok(())
}

pub fn prop4_consistency() -> Check {
    for (name, spec) in corpus() {
        for l in 1..=max_generator_degree(&spec) + 3 {
            let r = ok_or_msg(prop4_experiment(&spec, l, 4), name)?;
            if !r.consistent {
                return fail(format!("{name}, l = {l}: lhs {:?}, rhs {}", r.lhs_holds, r.rhs_holds));
            }
        }
    }
    Ok(())
}

fn sorted(mut v: Vec<Exponent>) -> Vec<Exponent> {
    v.sort();
    v
}

/// Staircase from the truncation against the minimal initial exponents of
/// the engine's basis, for I and I² of every corpus entry.
pub fn staircase_equivalence() -> Check {
    for (name, spec) in corpus() {
        let ideals = ok_or_msg(ProblemIdeals::new(&spec), name)?;
        for n in 1..=2 {
            let h = ok_or_msg(ideal_power(&ideals.i, n), name)?;
            let what = format!("{name}, I^{n}");
            let engine = sorted(certified_basis(&h, &what)?.leading_exps().to_vec());
            let margin = h.generators().iter().filter_map(|g| g.degree()).max().unwrap_or(0) + 1;
            let top = engine.iter().map(|e| e.degree()).max().unwrap_or(0);
            let s = ok_or_msg(staircase(h.generators(), top + margin), &what)?;
            if s.certified != engine {
                return fail(format!("{what}: staircase {:?}, engine {engine:?}", s.certified));
            }
        }
    }
    Ok(())
}

/// A random homogeneous form of degree `d`: a combination of multiples of
/// the generators of `h`, plus a stray monomial half of the time.
fn random_query(rng: &mut ChaCha8Rng, h: &HomogeneousIdeal, d: u32) -> Polynomial {
    let ring = h.ring();
    let field = ring.field;
    let mut f = Polynomial::zero(ring);
    for _ in 0..rng.gen_range(1..=3) {
        let g = h.generators().choose(rng).expect("nonzero ideal");
        let Some(k) = d.checked_sub(g.degree()) else { continue };
        let gamma = exponents_of_degree(ring.nvars(), k).choose(rng).cloned().expect("nonempty");
        let c = field.from_i64(*[-3, -2, -1, 1, 2, 3].choose(rng).expect("nonempty"));
        f = f.add(&g.poly().mul_term(&gamma, &c)).expect("same ring");
    }
    if rng.gen_bool(0.5) {
        let e = exponents_of_degree(ring.nvars(), d).choose(rng).cloned().expect("nonempty");
        let stray = Polynomial::monomial(ring, e, field.one()).expect("valid exponent");
        f = f.add(&stray).expect("same ring");
    }
    f
}

/// Outcomes (member, non-member) over the queries.
pub fn homogeneous_membership(queries_per_cone: usize) -> Result<(usize, usize), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut yes, mut no) = (0, 0);
    for (name, spec) in corpus() {
        let ideals = ok_or_msg(ProblemIdeals::new(&spec), name)?;
        for n in 1..=2 {
            let what = format!("{name}, (I^{n})*");
            let h = cone(&ok_or_msg(ideal_power(&ideals.i, n), &what)?, &what)?;
            let handle = ok_or_msg(IdealHandle::from_homogeneous(&h), &what)?;
            let degrees: Vec<u32> = h.generators().iter().map(|g| g.degree()).collect();
            let (lo, hi) = (*degrees.iter().min().unwrap(), *degrees.iter().max().unwrap() + 2);
            for _ in 0..queries_per_cone {
                let d = rng.gen_range(lo..=hi);
                let f = random_query(&mut rng, &h, d);
                let by_oracle = ok_or_msg(
                    HomogeneousForm::new(f.clone()).and_then(|form| homog_member(&form, &h)),
                    &what,
                )?;
                let by_engine = ok_or_msg(member(&f, &handle), &what)?;
                if by_oracle != by_engine {
                    return fail(format!("{what}: {f} oracle {by_oracle}, engine {by_engine}"));
                }
                if by_oracle {
                    yes += 1;
                } else {
                    no += 1;
                }
            }
        }
    }
    Ok((yes, no))
}

pub fn oracle_equivalence() -> Check {
    staircase_equivalence()?;
    let (yes, no) = homogeneous_membership(20)?;
    if yes + no < 200 || yes == 0 || no == 0 {
        return fail(format!("query mix too thin: {yes} members, {no} non-members"));
    }
    Ok(())
}

/// J + Iⁿ with its generators shuffled and a seeded pair strategy.
pub fn shuffled(h: &IdealHandle, seed: u64) -> IdealHandle {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens = h.generators().to_vec();
    gens.shuffle(&mut rng);
    let ring = h.ring();
    IdealHandle::new(ring.field, ring.nvars(), h.setting(), gens)
        .expect("same generators")
        .with_config(BasisConfig {
            strategy: PairStrategy::Shuffled(seed),
            ..BasisConfig::default()
        })
}

pub fn nakayama_invariance() -> Check {
    for (name, spec) in corpus() {
        let ideals = ok_or_msg(ProblemIdeals::new(&spec), name)?;
        for n in 1..=3 {
            let what = format!("{name}, J+I^{n}");
            let h = ok_or_msg(ideals.j_plus_power(n), &what)?;
            certified_basis(&h, &what)?;
            let base = ok_or_msg(basis_profile(&h), &what)?;
            for seed in 1..=3 {
                let s = shuffled(&h, seed);
                certified_basis(&s, &what)?;
                let p = ok_or_msg(basis_profile(&s), &what)?;
                if (p.p, &p.ords) != (base.p, &base.ords) {
                    return fail(format!(
                        "{what}, seed {seed}: ({}, {:?}) vs ({}, {:?})",
                        p.p, p.ords, base.p, base.ords
                    ));
                }
            }
        }
    }
    Ok(())
}

/// (I*)ⁿ ⊆ (Iⁿ)*, one generator product at a time.
pub fn inclusion_property() -> Check {
    for (name, spec) in corpus() {
        let ideals = ok_or_msg(ProblemIdeals::new(&spec), name)?;
        let cone_of_i = ok_or_msg(IdealHandle::from_homogeneous(&cone(&ideals.i, name)?), name)?;
        for n in 1..=4 {
            let what = format!("{name}, n = {n}");
            let power_cone = cone(&ok_or_msg(ideal_power(&ideals.i, n), &what)?, &what)?;
            let target = ok_or_msg(IdealHandle::from_homogeneous(&power_cone), &what)?;
            let products = ok_or_msg(ideal_power(&cone_of_i, n), &what)?;
            for g in products.generators() {
                if !ok_or_msg(member(g, &target), &what)? {
                    return fail(format!("{what}: {} ∉ (Iⁿ)*", spec.show(g)));
                }
            }
        }
    }
    Ok(())
}

/// λ̂ matches the pinned value for nmax = 2, 3, 4 and bounds every row.
pub fn lambda_hat_stability() -> Check {
    let pinned = regression();
    for (name, spec) in corpus() {
        let want = pinned[name].lambda_hat;
        for n_max in 2..=4 {
            let r = ok_or_msg(growth_experiment(&spec, n_max), name)?;
            if r.lambda_hat != Some(want) {
                return fail(format!("{name}, nmax {n_max}: lambdaHat {:?}, pinned {want}", r.lambda_hat));
            }
            if let Some(row) = r.rows.iter().find(|row| row.max_ord > want * row.n) {
                return fail(format!("{name}: maxOrd {} above {want}·{}", row.max_ord, row.n));
            }
        }
    }
    Ok(())
}
