use std::fmt;

use crate::algebra::{Form, GenType};
use crate::error::{FolError, Result};

use super::Model;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Warn,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Warn => "warn",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub verdict: Verdict,
    pub witness: Option<Form>,
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn pass(name: &str, detail: Option<String>) -> Self {
        CheckResult { name: name.into(), verdict: Verdict::Pass, witness: None, detail }
    }

    pub fn fail(name: &str, witness: Option<Form>, detail: String) -> Self {
        CheckResult { name: name.into(), verdict: Verdict::Fail, witness, detail: Some(detail) }
    }

    pub fn warn(name: &str, witness: Option<Form>, detail: String) -> Self {
        CheckResult { name: name.into(), verdict: Verdict::Warn, witness, detail: Some(detail) }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn accepted(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.verdict == Verdict::Warn)
    }

    /// The first hard failure as an invalid-model error.
    pub fn into_result(self) -> Result<ValidationReport> {
        let failure = self.failures().next().cloned();
        match failure {
            None => Ok(self),
            Some(c) => Err(FolError::InvalidModel {
                check: c.name.clone(),
                witness: c
                    .witness
                    .as_ref()
                    .map_or_else(|| c.detail.clone().unwrap_or_default(), |w| w.to_string()),
            }),
        }
    }
}

/// Runs the hard checks in order (d² = 0, conjugation, purity, contraction) and the
/// declared-∂̄ comparison, which only ever warns.
pub fn validate_model(m: &Model) -> ValidationReport {
    let checks = vec![
        check_d_squared(m),
        check_conjugation(m),
        check_purity(m),
        check_contraction(m),
        check_declared_dbar(m),
    ];
    ValidationReport { checks }
}

fn gen_name(m: &Model, i: usize) -> &str {
    &m.alg.generators()[i].name
}

fn check_d_squared(m: &Model) -> CheckResult {
    const NAME: &str = "d-squared";
    for i in 0..m.alg.len() {
        let g = Form::generator(&m.alg, i);
        let dd = m.d(&g).and_then(|x| m.d(&x));
        match dd {
            Ok(dd) if dd.is_zero() => {}
            Ok(dd) => return CheckResult::fail(NAME, Some(dd), format!("d(d {}) ≠ 0", gen_name(m, i))),
            Err(e) => return CheckResult::fail(NAME, None, e.to_string()),
        }
    }
    CheckResult::pass(NAME, None)
}

fn check_conjugation(m: &Model) -> CheckResult {
    const NAME: &str = "conjugation";
    for (i, g) in m.alg.generators().iter().enumerate() {
        if g.kind.is_some() && m.alg.conjugate_of(i).is_none() {
            return CheckResult::fail(NAME, None, format!("typed generator `{}` has no conjugate", g.name));
        }
    }
    for i in 0..m.alg.len() {
        let g = Form::generator(&m.alg, i);
        let lhs = m.d(&g).and_then(|x| x.conjugate());
        let rhs = g.conjugate().and_then(|x| m.d(&x));
        match (lhs, rhs) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(a), Ok(b)) => {
                return CheckResult::fail(NAME, Some(&a - &b), format!("conj(d {0}) ≠ d(conj {0})", gen_name(m, i)))
            }
            (Err(e), _) | (_, Err(e)) => return CheckResult::fail(NAME, None, e.to_string()),
        }
    }
    CheckResult::pass(NAME, None)
}

fn check_purity(m: &Model) -> CheckResult {
    const NAME: &str = "bigrading-purity";
    if !m.alg.is_bigraded() {
        return CheckResult::pass(NAME, Some("not bigraded; nothing to check".into()));
    }
    for (i, g) in m.alg.generators().iter().enumerate() {
        let (p, q) = g.kind.and_then(GenType::bidegree).expect("bigraded");
        let image = match m.d(&Form::generator(&m.alg, i)) {
            Ok(f) => f,
            Err(e) => return CheckResult::fail(NAME, None, e.to_string()),
        };
        let allowed = [(p + 1, q), (p, q + 1)];
        let bad = Form::from_terms(
            &m.alg,
            image
                .terms()
                .iter()
                .filter(|(mono, _)| !mono.bidegree(&m.alg).is_some_and(|b| allowed.contains(&b)))
                .map(|(mono, c)| (*mono, c.clone())),
        );
        if !bad.is_zero() {
            return CheckResult::fail(NAME, Some(bad), format!("d {} has a forbidden component", g.name));
        }
    }
    CheckResult::pass(NAME, None)
}

fn check_contraction(m: &Model) -> CheckResult {
    const NAME: &str = "contraction";
    let Some(iota) = &m.contraction else {
        return CheckResult::pass(NAME, Some("no contraction table".into()));
    };
    for i in 0..m.alg.len() {
        match iota.apply(&Form::generator(&m.alg, i)).and_then(|x| iota.apply(&x)) {
            Ok(x) if x.is_zero() => {}
            Ok(x) => return CheckResult::fail(NAME, Some(x), format!("ι(ι {}) ≠ 0", gen_name(m, i))),
            Err(e) => return CheckResult::fail(NAME, None, e.to_string()),
        }
    }
    CheckResult::pass(NAME, None)
}

fn check_declared_dbar(m: &Model) -> CheckResult {
    const NAME: &str = "declared-dbar";
    if m.declared_dbar.is_empty() {
        return CheckResult::pass(NAME, Some("no declared table".into()));
    }
    if !m.alg.is_bigraded() {
        return CheckResult::warn(NAME, None, "declared ∂̄ table on a model that is not bigraded".into());
    }
    let mut mismatched = Vec::new();
    let mut first_witness = None;
    for (&i, declared) in &m.declared_dbar {
        let (p, q) = m.alg.generators()[i].kind.and_then(GenType::bidegree).expect("bigraded");
        let Ok(image) = m.d(&Form::generator(&m.alg, i)) else { continue };
        let derived = image.component(p, q + 1);
        if &derived != declared {
            mismatched.push(format!("{}: declared {}, derived {}", gen_name(m, i), declared, derived));
            first_witness.get_or_insert(&derived - declared);
        }
    }
    if mismatched.is_empty() {
        CheckResult::pass(NAME, None)
    } else {
        CheckResult::warn(NAME, first_witness, mismatched.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_model;

    #[test]
    fn d_squared_failure_has_witness() {
        let m = parse_model(
            "model bad\ngenerator a : deg=1\ngenerator a1 : deg=1\ngenerator a2 : deg=1\ngenerator a3 : deg=1\n\
             d a = a^a3\nd a3 = -2*a1^a2\nend\n",
        )
        .unwrap();
        let r = validate_model(&m);
        assert_eq!(r.checks[0].verdict, Verdict::Fail);
        assert_eq!(r.checks[0].witness.as_ref().unwrap().to_string(), "2*a^a1^a2");
        assert!(matches!(r.into_result(), Err(FolError::InvalidModel { .. })));
    }

    #[test]
    fn conjugation_must_commute_with_d() {
        let m = parse_model(
            "model c\ngenerator b : deg=1, type=(1,0), conj=c\ngenerator c : deg=1, type=(0,1)\nd b = i*b^c\nend\n",
        )
        .unwrap();
        let r = validate_model(&m);
        assert_eq!(r.checks[1].verdict, Verdict::Fail);
    }
}
