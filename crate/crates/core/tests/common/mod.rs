//! Invariant checks on random forms over the bundled models, shared by the property
//! suite and the acceptance run.

#![allow(dead_code)]

use std::sync::Arc;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};

use folcoh::algebra::{Algebra, Form, Monomial};
use folcoh::foliation::{bigrade_split, contraction, j_action, lie_derivative};
use folcoh::model::{bundled, Model};
use folcoh::scalar::{rational, ParamScalar, Rational, Scalar};

pub const CASES: u32 = 150;

pub fn config() -> Config {
    config_with(CASES)
}

pub fn config_with(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(0x5eed_f01c), failure_persistence: None, ..Config::default() }
}

/// `(monomial selector, real part, imaginary part)`
pub type RawTerms = Vec<(usize, i64, i64)>;

pub fn raw_terms() -> impl Strategy<Value = RawTerms> {
    prop::collection::vec((any::<usize>(), -4i64..=4, -4i64..=4), 1..6)
}

pub fn parameter() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=7).prop_map(|(n, d)| rational(n, d))
}

fn form_from(alg: &Arc<Algebra>, basis: &[Monomial], raw: &RawTerms) -> Form {
    if basis.is_empty() {
        return Form::zero(alg);
    }
    raw.iter().fold(Form::zero(alg), |acc, &(i, re, im)| {
        let c = ParamScalar::constant(Scalar::gaussian(re, im));
        &acc + &Form::monomial(alg, basis[i % basis.len()], c)
    })
}

fn homogeneous(alg: &Arc<Algebra>, k: u32, raw: &RawTerms) -> Form {
    form_from(alg, &alg.monomials_of_degree(k), raw)
}

/// Non-parametric models with a differential: S6 in both coframes, the tori, and the
/// family at a sampled value.
fn model(idx: usize, s: &Rational) -> Model {
    match idx % 5 {
        0 => bundled::s6(),
        1 => bundled::s6_real(),
        2 => bundled::torus1(),
        3 => bundled::torus2(),
        _ => bundled::hopf_family().evaluate(s),
    }
}

fn sign(k: u32) -> Scalar {
    Scalar::from_int(if k.is_multiple_of(2) { 1 } else { -1 })
}

/// Hermitian product with the coframe monomials orthonormal.
fn inner(x: &Form, y: &Form) -> Scalar {
    x.terms().iter().fold(Scalar::zero(), |acc, (m, c)| {
        let d = y.coefficient(*m);
        &acc + &(&c.as_constant().unwrap().conj() * &d.as_constant().unwrap())
    })
}

type Check = std::result::Result<(), TestCaseError>;

pub fn d_squared(idx: usize, s: &Rational, k: u32, raw: &RawTerms) -> Check {
    let m = model(idx, s);
    let x = homogeneous(m.algebra(), k, raw);
    prop_assert!(m.d(&m.d(&x).unwrap()).unwrap().is_zero());
    Ok(())
}

pub fn leibniz(idx: usize, s: &Rational, k: u32, l: u32, rx: &RawTerms, ry: &RawTerms) -> Check {
    let m = model(idx, s);
    let x = homogeneous(m.algebra(), k, rx);
    let y = homogeneous(m.algebra(), l, ry);
    let lhs = m.d(&x.wedge(&y).unwrap()).unwrap();
    let a = m.d(&x).unwrap().wedge(&y).unwrap();
    let b = x.wedge(&m.d(&y).unwrap()).unwrap().scale_scalar(&sign(k));
    prop_assert_eq!(lhs, &a + &b);
    Ok(())
}

pub fn graded_commutativity(idx: usize, s: &Rational, k: u32, l: u32, rx: &RawTerms, ry: &RawTerms) -> Check {
    let m = model(idx, s);
    let x = homogeneous(m.algebra(), k, rx);
    let y = homogeneous(m.algebra(), l, ry);
    prop_assert_eq!(x.wedge(&y).unwrap(), y.wedge(&x).unwrap().scale_scalar(&sign(k * l)));
    Ok(())
}

pub fn conjugation(idx: usize, k: u32, raw: &RawTerms) -> Check {
    let m = model(idx % 4, &rational(0, 1));
    let x = homogeneous(m.algebra(), k, raw);
    let c = x.conjugate().unwrap();
    prop_assert_eq!(c.conjugate().unwrap(), x.clone());
    prop_assert_eq!(m.d(&c).unwrap(), m.d(&x).unwrap().conjugate().unwrap());
    Ok(())
}

pub fn contraction_squared(s: &Rational, k: u32, raw: &RawTerms) -> Check {
    let m = bundled::hopf_family();
    let x = homogeneous(m.algebra(), k, raw);
    let once = contraction(&m, &x, s).unwrap();
    prop_assert!(contraction(&m, &once, s).unwrap().is_zero());
    Ok(())
}

pub fn lie_commutes_with_d(s: &Rational, k: u32, raw: &RawTerms) -> Check {
    let m = bundled::hopf_family().evaluate(s);
    let x = homogeneous(m.algebra(), k, raw);
    let lhs = lie_derivative(&m, &m.d(&x).unwrap(), s).unwrap();
    let rhs = m.d(&lie_derivative(&m, &x, s).unwrap()).unwrap();
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn j_eigenspaces(torus: bool, p: u32, q: u32, raw: &RawTerms) -> Check {
    let m = if torus { bundled::torus2() } else { bundled::s6() };
    let b = bigrade_split(&m).unwrap();
    let alg = m.algebra();
    let x = form_from(alg, &alg.monomials_of_bidegree(p, q), raw);
    let expected = x.scale_scalar(&Scalar::gaussian(0, p as i64 - q as i64));
    prop_assert_eq!(j_action(&b, &x).unwrap(), expected);
    Ok(())
}

pub const SKEW_VALUES: [(i64, i64); 3] = [(0, 1), (1, 7), (1, 2)];

pub fn lie_skew(which: usize, k: u32, ru: &RawTerms, rv: &RawTerms) -> Check {
    let (n, d) = SKEW_VALUES[which % SKEW_VALUES.len()];
    let s = rational(n, d);
    let m = bundled::hopf_family().evaluate(&s);
    let alg = m.algebra();
    // Ker ι is generated by α1, α2, α4 and (1 − s)γ − sα3.
    let mut gens: Vec<Form> = [1, 2, 4].iter().map(|&i| Form::generator(alg, i)).collect();
    let one_minus = Scalar::real(rational(1, 1) - &s);
    gens.push(
        &Form::generator(alg, 0).scale_scalar(&one_minus) - &Form::generator(alg, 3).scale_scalar(&Scalar::real(s.clone())),
    );
    let products: Vec<Form> = (0u32..16)
        .filter(|bits| bits.count_ones() == k)
        .map(|bits| (0..4).filter(|i| bits >> i & 1 == 1).fold(Form::unit(alg), |acc, i| acc.wedge(&gens[i]).unwrap()))
        .collect();
    let combine = |raw: &RawTerms| {
        raw.iter().fold(Form::zero(alg), |acc, &(i, re, im)| {
            &acc + &products[i % products.len()].scale_scalar(&Scalar::gaussian(re, im))
        })
    };
    let u = combine(ru);
    let v = combine(rv);
    prop_assert!(contraction(&m, &u, &s).unwrap().is_zero());
    let lu = lie_derivative(&m, &u, &s).unwrap();
    let lv = lie_derivative(&m, &v, &s).unwrap();
    prop_assert!((&inner(&lu, &v) + &inner(&u, &lv)).is_zero());
    Ok(())
}

/// Runs every invariant through a seeded runner; returns `(name, outcome)` pairs.
pub fn run_all(cases: u32) -> Vec<(&'static str, std::result::Result<u32, String>)> {
    fn go<S: Strategy>(
        cases: u32,
        name: &'static str,
        strategy: S,
        test: impl Fn(S::Value) -> Check,
    ) -> (&'static str, std::result::Result<u32, String>) {
        let mut runner = TestRunner::new(config_with(cases));
        (name, runner.run(&strategy, test).map(|_| cases).map_err(|e| e.to_string()))
    }
    vec![
        go(cases, "d² = 0", (0usize..5, parameter(), 0u32..5, raw_terms()), |(i, s, k, r)| d_squared(i, &s, k, &r)),
        go(cases, "Leibniz", (0usize..5, parameter(), 0u32..4, 0u32..4, raw_terms(), raw_terms()), |(i, s, k, l, x, y)| {
            leibniz(i, &s, k, l, &x, &y)
        }),
        go(
            cases,
            "graded commutativity",
            (0usize..5, parameter(), 0u32..4, 0u32..4, raw_terms(), raw_terms()),
            |(i, s, k, l, x, y)| graded_commutativity(i, &s, k, l, &x, &y),
        ),
        go(cases, "conjugation", (0usize..4, 0u32..5, raw_terms()), |(i, k, r)| conjugation(i, k, &r)),
        go(cases, "ι² = 0", (parameter(), 0u32..6, raw_terms()), |(s, k, r)| contraction_squared(&s, k, &r)),
        go(cases, "L_ξ d = d L_ξ", (parameter(), 0u32..5, raw_terms()), |(s, k, r)| lie_commutes_with_d(&s, k, &r)),
        go(cases, "J eigenspaces", (any::<bool>(), 0u32..3, 0u32..3, raw_terms()), |(t, p, q, r)| j_eigenspaces(t, p, q, &r)),
        go(cases, "L_ξ skew on Ker ι", (0usize..3, 0u32..5, raw_terms(), raw_terms()), |(w, k, u, v)| lie_skew(w, k, &u, &v)),
    ]
}
