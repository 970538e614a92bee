use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use crate::error::{FolError, Result};
use crate::scalar::{require_constant, ParamScalar, Rational, Scalar};

use super::{Algebra, Monomial};

/// A finite linear combination of monomials with (possibly parametric) coefficients.
///
/// Zero coefficients are never stored, so equality is map equality.
#[derive(Clone)]
pub struct Form {
    alg: Arc<Algebra>,
    terms: BTreeMap<Monomial, ParamScalar>,
}

impl PartialEq for Form {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg) && self.terms == other.terms
    }
}

impl Eq for Form {}

impl Form {
    pub fn zero(alg: &Arc<Algebra>) -> Self {
        Form { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn unit(alg: &Arc<Algebra>) -> Self {
        Form::monomial(alg, Monomial::UNIT, ParamScalar::one())
    }

    pub fn constant(alg: &Arc<Algebra>, c: ParamScalar) -> Self {
        Form::monomial(alg, Monomial::UNIT, c)
    }

    pub fn generator(alg: &Arc<Algebra>, index: usize) -> Self {
        Form::monomial(alg, Monomial::generator(index), ParamScalar::one())
    }

    pub fn monomial(alg: &Arc<Algebra>, m: Monomial, c: ParamScalar) -> Self {
        let mut f = Form::zero(alg);
        f.add_term(m, &c);
        f
    }

    pub fn from_terms(alg: &Arc<Algebra>, terms: impl IntoIterator<Item = (Monomial, ParamScalar)>) -> Self {
        let mut f = Form::zero(alg);
        for (m, c) in terms {
            f.add_term(m, &c);
        }
        f
    }

    /// Builds `Σ coords[j]·basis[j]`.
    pub fn from_coords(alg: &Arc<Algebra>, basis: &[Monomial], coords: &[Scalar]) -> Self {
        debug_assert_eq!(basis.len(), coords.len());
        Form::from_terms(
            alg,
            basis
                .iter()
                .zip(coords)
                .map(|(m, c)| (*m, ParamScalar::constant(c.clone()))),
        )
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, ParamScalar> {
        &self.terms
    }

    pub fn coefficient(&self, m: Monomial) -> ParamScalar {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_parameter_free(&self) -> bool {
        self.terms.values().all(ParamScalar::is_constant)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &ParamScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_default();
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn check_same(&self, other: &Form) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg {
            Ok(())
        } else {
            Err(FolError::ModelMismatch)
        }
    }

    pub fn scale(&self, c: &ParamScalar) -> Form {
        Form::from_terms(&self.alg, self.terms.iter().map(|(m, x)| (*m, x * c)))
    }

    pub fn scale_scalar(&self, c: &Scalar) -> Form {
        self.scale(&ParamScalar::constant(c.clone()))
    }

    /// Graded-commutative product.
    pub fn wedge(&self, other: &Form) -> Result<Form> {
        self.check_same(other)?;
        let mut out = Form::zero(&self.alg);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((sign, m)) = a.wedge(*b) {
                    let c = ca * cb;
                    out.add_term(m, &if sign < 0 { -&c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// The unique total degree, or `None` for zero or mixed forms.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.degree(&self.alg));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn require_degree(&self) -> Result<u32> {
        if self.is_zero() {
            return Err(FolError::Purity("zero form has no degree".into()));
        }
        self.degree()
            .ok_or_else(|| FolError::Purity(format!("mixed degrees in {self}")))
    }

    /// The unique bidegree, or `None` for zero, mixed or untyped forms.
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        let mut bds = self.terms.keys().map(|m| m.bidegree(&self.alg));
        let first = bds.next()??;
        bds.all(|b| b == Some(first)).then_some(first)
    }

    /// Keeps only the terms of bidegree `(p, q)`.
    pub fn component(&self, p: u32, q: u32) -> Form {
        Form {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.bidegree(&self.alg) == Some((p, q)))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Keeps only the terms of total degree `k`.
    pub fn degree_part(&self, k: u32) -> Form {
        Form {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree(&self.alg) == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Antilinear involution induced by the generator pairing.
    pub fn conjugate(&self) -> Result<Form> {
        let mut out = Form::zero(&self.alg);
        for (m, c) in &self.terms {
            let mut image = Vec::with_capacity(m.len());
            for i in m.indices() {
                let j = self
                    .alg
                    .conjugate_of(i)
                    .ok_or_else(|| FolError::MissingConjugate(self.alg.generators()[i].name.clone()))?;
                image.push(j);
            }
            let (sign, mono) = Monomial::from_indices(&image).ok_or_else(|| {
                FolError::InternalConsistency("conjugation is not injective on generators".into())
            })?;
            let cc = c.conj();
            out.add_term(mono, &if sign < 0 { -&cc } else { cc });
        }
        Ok(out)
    }

    /// Substitutes `s = s0` in every coefficient.
    pub fn evaluate(&self, s0: &Rational) -> Form {
        Form::from_terms(
            &self.alg,
            self.terms
                .iter()
                .map(|(m, c)| (*m, ParamScalar::constant(c.evaluate(s0)))),
        )
    }

    /// Coordinates with respect to an ordered monomial basis. Fails if the form has a
    /// term outside the basis or a parametric coefficient.
    pub fn coords(&self, basis: &[Monomial]) -> Result<Vec<Scalar>> {
        let mut out = vec![Scalar::zero(); basis.len()];
        for (m, c) in &self.terms {
            let pos = basis.iter().position(|b| b == m).ok_or_else(|| {
                FolError::Purity(format!("term {} outside the requested graded piece", m.display(&self.alg)))
            })?;
            out[pos] = require_constant(c)?;
        }
        Ok(out)
    }
}

impl Add for &Form {
    type Output = Form;
    fn add(self, o: &Form) -> Form {
        self.check_same(o).expect("adding forms over different algebras");
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Sub for &Form {
    type Output = Form;
    fn sub(self, o: &Form) -> Form {
        self + &(-o)
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        Form {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl fmt::Display for Form {
    /// Same syntax the model language accepts: `i*β1^β2 - 1/2*γ + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mono = m.display(&self.alg).to_string();
            let coef = c.coefficient_string();
            let term = if m.is_unit() {
                coef
            } else if coef == "1" {
                mono
            } else if coef == "-1" {
                format!("-{mono}")
            } else {
                format!("{coef}*{mono}")
            };
            match (k, term.strip_prefix('-')) {
                (0, _) => write!(f, "{term}")?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {term}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GenType, Generator};

    fn pair_algebra() -> Arc<Algebra> {
        let g = |name: &str, kind, conj| Generator { name: name.into(), degree: 1, kind: Some(kind), conj: Some(conj) };
        Arc::new(Algebra::new(vec![
            g("b1", GenType::Holomorphic, 2),
            g("b2", GenType::Holomorphic, 3),
            g("c1", GenType::Antiholomorphic, 0),
            g("c2", GenType::Antiholomorphic, 1),
        ]))
    }

    #[test]
    fn odd_generator_squares_to_zero() {
        let alg = pair_algebra();
        let b1 = Form::generator(&alg, 0);
        assert!(b1.wedge(&b1).unwrap().is_zero());
    }

    #[test]
    fn degree_one_generators_anticommute() {
        let alg = pair_algebra();
        let x = Form::generator(&alg, 2);
        let y = Form::generator(&alg, 1);
        assert_eq!(x.wedge(&y).unwrap(), -&y.wedge(&x).unwrap());
    }

    #[test]
    fn conjugation_swaps_pairs_antilinearly() {
        let alg = pair_algebra();
        let i = ParamScalar::constant(Scalar::i());
        let x = Form::generator(&alg, 0).wedge(&Form::generator(&alg, 3)).unwrap().scale(&i);
        // conj(i b1^c2) = -i c1^b2 = i b2^c1
        let expected = Form::generator(&alg, 1)
            .wedge(&Form::generator(&alg, 2))
            .unwrap()
            .scale(&i);
        assert_eq!(x.conjugate().unwrap(), expected);
        assert_eq!(x.conjugate().unwrap().conjugate().unwrap(), x);
        assert_eq!(x.bidegree(), Some((1, 1)));
    }

    #[test]
    fn missing_conjugate_is_reported() {
        let alg = Arc::new(Algebra::new(vec![Generator {
            name: "b".into(),
            degree: 1,
            kind: Some(GenType::Holomorphic),
            conj: None,
        }]));
        assert_eq!(
            Form::generator(&alg, 0).conjugate(),
            Err(FolError::MissingConjugate("b".into()))
        );
    }

    #[test]
    fn mismatched_algebras_are_rejected() {
        let a = pair_algebra();
        let b = Arc::new(Algebra::new(vec![Generator { name: "x".into(), degree: 1, kind: None, conj: None }]));
        assert_eq!(Form::unit(&a).wedge(&Form::unit(&b)), Err(FolError::ModelMismatch));
    }

    #[test]
    fn display_round_trips_signs() {
        let alg = pair_algebra();
        let x = &Form::generator(&alg, 0).scale_scalar(&Scalar::frac(1, 2))
            - &Form::generator(&alg, 2).scale_scalar(&Scalar::i());
        assert_eq!(x.to_string(), "1/2*b1 - i*c1");
        assert_eq!(Form::zero(&alg).to_string(), "0");
        assert_eq!(Form::unit(&alg).scale_scalar(&Scalar::from_int(-3)).to_string(), "-3");
    }

    #[test]
    fn mixed_degree_purity() {
        let alg = pair_algebra();
        let x = &Form::unit(&alg) + &Form::generator(&alg, 0);
        assert_eq!(x.degree(), None);
        assert!(matches!(x.require_degree(), Err(FolError::Purity(_))));
    }
}
