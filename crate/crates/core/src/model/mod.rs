//! Model descriptions: generators, differential, contraction, metric and orientation.

pub mod bundled;
pub mod parse;
mod validate;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::algebra::{Algebra, Derivation, Form};
use crate::error::{FolError, Result};
use crate::scalar::{ParamScalar, Rational, Scalar};

pub use parse::{parse_model, DiagCode, ParseError};
pub use validate::{validate_model, CheckResult, ValidationReport, Verdict};

/// A finitely generated differential-algebra model.
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub(crate) name: String,
    pub(crate) param: Option<String>,
    pub(crate) alg: Arc<Algebra>,
    pub(crate) differential: Derivation,
    pub(crate) contraction: Option<Derivation>,
    pub(crate) metric: bool,
    /// Sign of the declared volume relative to the canonical top monomial.
    pub(crate) orientation: Option<i32>,
    pub(crate) declared_dbar: BTreeMap<usize, Form>,
}

impl Model {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn param_name(&self) -> Option<&str> {
        self.param.as_deref()
    }

    pub fn differential(&self) -> &Derivation {
        &self.differential
    }

    pub fn contraction(&self) -> Option<&Derivation> {
        self.contraction.as_ref()
    }

    pub fn declared_dbar(&self) -> &BTreeMap<usize, Form> {
        &self.declared_dbar
    }

    pub fn has_metric(&self) -> bool {
        self.metric && self.orientation.is_some()
    }

    pub fn orientation(&self) -> Option<i32> {
        self.orientation
    }

    pub fn is_bigraded(&self) -> bool {
        self.alg.is_bigraded()
    }

    pub fn generator(&self, name: &str) -> Option<Form> {
        self.alg.index_of(name).map(|i| Form::generator(&self.alg, i))
    }

    /// `d` applied to a form.
    pub fn d(&self, x: &Form) -> Result<Form> {
        self.differential.apply(x)
    }

    /// Whether any table entry still depends on the parameter.
    pub fn is_parametric(&self) -> bool {
        let d = (0..self.alg.len()).any(|i| self.differential.image(i).is_some_and(|f| !f.is_parameter_free()));
        let c = self.contraction.as_ref().is_some_and(|c| {
            (0..self.alg.len()).any(|i| c.image(i).is_some_and(|f| !f.is_parameter_free()))
        });
        d || c
    }

    /// The member of the family at `s = s0`; parameter-free.
    pub fn evaluate(&self, s0: &Rational) -> Model {
        Model {
            name: self.name.clone(),
            param: self.param.clone(),
            alg: self.alg.clone(),
            differential: self.differential.evaluate(s0),
            contraction: self.contraction.as_ref().map(|c| c.evaluate(s0)),
            metric: self.metric,
            orientation: self.orientation,
            declared_dbar: self.declared_dbar.iter().map(|(k, f)| (*k, f.evaluate(s0))).collect(),
        }
    }

    /// The same model with its contraction table multiplied by `c`.
    pub fn with_scaled_contraction(&self, c: &Scalar) -> Model {
        let mut m = self.clone();
        m.contraction = self.contraction.as_ref().map(|d| d.scale(&ParamScalar::constant(c.clone())));
        m
    }

    /// The declared volume form `±e_1∧…∧e_N`.
    pub fn volume(&self) -> Result<Form> {
        let sign = self.orientation.ok_or(FolError::MissingMetric)?;
        Ok(Form::monomial(
            &self.alg,
            self.alg.top(),
            ParamScalar::constant(Scalar::from_int(sign as i64)),
        ))
    }

    /// Serializes back to the model language. Parsing the output yields an equal model.
    pub fn to_dsl(&self) -> String {
        let mut out = String::new();
        let names = |i: usize| self.alg.generators()[i].name.clone();
        writeln!(out, "model {}", self.name).unwrap();
        if let Some(p) = &self.param {
            writeln!(out, "param {p}").unwrap();
        }
        for g in self.alg.generators() {
            write!(out, "generator {} : deg={}", g.name, g.degree).unwrap();
            if let Some(k) = g.kind {
                write!(out, ", type={}", k.dsl_name()).unwrap();
            }
            if let Some(c) = g.conj {
                write!(out, ", conj={}", names(c)).unwrap();
            }
            out.push('\n');
        }
        for i in 0..self.alg.len() {
            if let Some(image) = self.differential.image(i) {
                writeln!(out, "d {} = {}", names(i), image).unwrap();
            }
        }
        if let Some(c) = &self.contraction {
            let mut any = false;
            for i in 0..self.alg.len() {
                if let Some(image) = c.image(i).filter(|f| !f.is_zero()) {
                    writeln!(out, "iota {} = {}", names(i), image).unwrap();
                    any = true;
                }
            }
            if let (false, Some(g)) = (any, self.alg.generators().iter().find(|g| g.degree == 1)) {
                writeln!(out, "iota {} = 0", g.name).unwrap();
            }
        }
        if self.metric {
            writeln!(out, "metric orthonormal").unwrap();
        }
        if let Some(sign) = self.orientation {
            let top = self.alg.top().display(&self.alg).to_string();
            writeln!(out, "orient {}{}", if sign < 0 { "-" } else { "" }, top).unwrap();
        }
        for (i, f) in &self.declared_dbar {
            writeln!(out, "dbar {} = {}", names(*i), f).unwrap();
        }
        out.push_str("end\n");
        out
    }
}
