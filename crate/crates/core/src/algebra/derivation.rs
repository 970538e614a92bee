use std::sync::Arc;

use crate::error::{FolError, Result};
use crate::scalar::ParamScalar;

use super::{Algebra, Form, Monomial};

/// Degree shift of an odd derivation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// degree +1, like `d`
    Raising,
    /// degree −1, like a contraction
    Lowering,
}

impl Parity {
    pub fn shift(self, degree: u32) -> Option<u32> {
        match self {
            Parity::Raising => Some(degree + 1),
            Parity::Lowering => degree.checked_sub(1),
        }
    }
}

/// An odd derivation given by its values on generators and extended by the graded
/// Leibniz rule `D(x∧y) = Dx∧y + (−1)^{deg x} x∧Dy`.
#[derive(Debug, Clone, PartialEq)]
pub struct Derivation {
    alg: Arc<Algebra>,
    parity: Parity,
    images: Vec<Option<Form>>,
}

impl Derivation {
    /// Fails with a purity error if an image has the wrong degree.
    pub fn new(alg: &Arc<Algebra>, parity: Parity, images: Vec<Option<Form>>) -> Result<Self> {
        assert_eq!(images.len(), alg.len());
        for (g, image) in alg.generators().iter().zip(&images) {
            let Some(image) = image else { continue };
            if image.algebra() != alg {
                return Err(FolError::ModelMismatch);
            }
            if image.is_zero() {
                continue;
            }
            let want = parity.shift(g.degree);
            if image.degree() != want {
                return Err(FolError::Purity(format!(
                    "image of `{}` must have degree {:?}, got {}",
                    g.name, want, image
                )));
            }
        }
        Ok(Derivation { alg: alg.clone(), parity, images })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn image(&self, index: usize) -> Option<&Form> {
        self.images[index].as_ref()
    }

    pub fn apply(&self, x: &Form) -> Result<Form> {
        if x.algebra() != &self.alg {
            return Err(FolError::ModelMismatch);
        }
        let mut out = Form::zero(&self.alg);
        for (m, c) in x.terms() {
            let mut before = Monomial::UNIT;
            let mut sign_before = 1;
            for g in m.indices() {
                let image = self.images[g]
                    .as_ref()
                    .ok_or_else(|| FolError::IncompleteDerivation(self.alg.generators()[g].name.clone()))?;
                let after = m.without(before).without(Monomial::generator(g));
                for (t, ct) in image.terms() {
                    let Some((s1, left)) = before.wedge(*t) else { continue };
                    let Some((s2, mono)) = left.wedge(after) else { continue };
                    let coeff = c * ct;
                    let coeff = if sign_before * s1 * s2 < 0 { -&coeff } else { coeff };
                    out.add_term(mono, &coeff);
                }
                before = Monomial::from_bits(before.bits() | Monomial::generator(g).bits());
                if self.alg.generators()[g].degree % 2 == 1 {
                    sign_before = -sign_before;
                }
            }
        }
        Ok(out)
    }

    /// Evaluates every image at `s = s0`.
    pub fn evaluate(&self, s0: &crate::scalar::Rational) -> Derivation {
        Derivation {
            alg: self.alg.clone(),
            parity: self.parity,
            images: self.images.iter().map(|f| f.as_ref().map(|f| f.evaluate(s0))).collect(),
        }
    }

    /// Multiplies every image by `c`.
    pub fn scale(&self, c: &ParamScalar) -> Derivation {
        Derivation {
            alg: self.alg.clone(),
            parity: self.parity,
            images: self.images.iter().map(|f| f.as_ref().map(|f| f.scale(c))).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Generator;
    use crate::scalar::Scalar;

    fn real_alg(n: usize) -> Arc<Algebra> {
        Arc::new(Algebra::new(
            (0..n)
                .map(|i| Generator { name: format!("a{}", i + 1), degree: 1, kind: None, conj: None })
                .collect(),
        ))
    }

    fn e(alg: &Arc<Algebra>, ix: &[usize]) -> Form {
        let (s, m) = Monomial::from_indices(ix).unwrap();
        Form::monomial(alg, m, ParamScalar::constant(Scalar::from_int(s as i64)))
    }

    fn sphere_times_circle(alg: &Arc<Algebra>) -> Derivation {
        let c = |k: i64| ParamScalar::constant(Scalar::from_int(k));
        Derivation::new(
            alg,
            Parity::Raising,
            vec![
                Some(e(alg, &[1, 2]).scale(&c(-2))),
                Some(e(alg, &[0, 2]).scale(&c(2))),
                Some(e(alg, &[0, 1]).scale(&c(-2))),
                Some(Form::zero(alg)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn differential_of_generator_and_product() {
        let alg = real_alg(4);
        let d = sphere_times_circle(&alg);
        let two = ParamScalar::constant(Scalar::from_int(-2));
        assert_eq!(d.apply(&e(&alg, &[0])).unwrap(), e(&alg, &[1, 2]).scale(&two));
        assert_eq!(d.apply(&e(&alg, &[0, 3])).unwrap(), e(&alg, &[1, 2, 3]).scale(&two));
        assert!(d.apply(&Form::unit(&alg)).unwrap().is_zero());
    }

    #[test]
    fn missing_image_is_an_error() {
        let alg = real_alg(2);
        let d = Derivation::new(&alg, Parity::Raising, vec![Some(Form::zero(&alg)), None]).unwrap();
        assert_eq!(
            d.apply(&e(&alg, &[0, 1])),
            Err(FolError::IncompleteDerivation("a2".into()))
        );
    }

    #[test]
    fn wrong_image_degree_is_rejected() {
        let alg = real_alg(2);
        let res = Derivation::new(&alg, Parity::Raising, vec![Some(e(&alg, &[1])), Some(Form::zero(&alg))]);
        assert!(matches!(res, Err(FolError::Purity(_))));
    }

    #[test]
    fn contraction_expands_with_signs() {
        let alg = real_alg(3);
        let one = ParamScalar::one();
        let iota = Derivation::new(
            &alg,
            Parity::Lowering,
            vec![Some(Form::zero(&alg)), Some(Form::zero(&alg)), Some(Form::constant(&alg, one))],
        )
        .unwrap();
        // ι(a1∧a3) = ι(a1)a3 − a1 ι(a3) = −a1
        assert_eq!(iota.apply(&e(&alg, &[0, 2])).unwrap(), -&e(&alg, &[0]));
    }
}
