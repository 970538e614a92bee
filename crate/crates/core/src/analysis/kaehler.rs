use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Form, GenType, Monomial};
use crate::error::{FolError, Result};
use crate::foliation::Bicomplex;
use crate::linalg::{kernel_basis, Matrix};
use crate::scalar::{ParamScalar, Rational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct KaehlerWitness {
    /// `ω = i Σ H_jk β_j ∧ β̄_k`
    pub form: Form,
    pub hermitian: Matrix,
}

#[derive(Debug, Clone, PartialEq)]
pub enum KaehlerVerdict {
    Witness(KaehlerWitness),
    /// `ω^n` vanishes for every real closed (1,1) form.
    ImpossibleNondegenerate,
    /// No positive form found among the sampled candidates.
    Inconclusive { trials: usize },
}

/// The outcome of re-checking a candidate Kähler form from scratch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCheck {
    pub real: bool,
    pub closed: bool,
    pub type_11: bool,
    pub top_power_nonzero: bool,
    pub positive_definite: bool,
}

impl WitnessCheck {
    pub fn all(&self) -> bool {
        self.real && self.closed && self.type_11 && self.top_power_nonzero && self.positive_definite
    }
}

/// Pairs `(holomorphic index, index of its conjugate)`.
fn coframe(b: &Bicomplex) -> Result<Vec<(usize, usize)>> {
    b.complex_dimension()?;
    let alg = b.algebra();
    alg.generators()
        .iter()
        .enumerate()
        .filter(|(_, g)| g.kind == Some(GenType::Holomorphic))
        .map(|(i, g)| {
            let j = alg.conjugate_of(i).ok_or_else(|| FolError::MissingConjugate(g.name.clone()))?;
            Ok((i, j))
        })
        .collect()
}

/// `β_j ∧ β̄_k = sign · mono`.
fn pair_monomial(frame: &[(usize, usize)], j: usize, k: usize) -> (i32, Monomial) {
    Monomial::from_indices(&[frame[j].0, frame[k].1]).expect("distinct generators")
}

/// `i Σ H_jk β_j ∧ β̄_k`.
fn form_of(b: &Bicomplex, frame: &[(usize, usize)], h: &Matrix) -> Form {
    let n = frame.len();
    let mut terms = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            let (sign, m) = pair_monomial(frame, j, k);
            let c = &Scalar::i() * &h[(j, k)];
            terms.push((m, ParamScalar::constant(if sign < 0 { -c } else { c })));
        }
    }
    Form::from_terms(b.algebra(), terms)
}

/// Real basis of the Hermitian `n × n` matrices: `E_jj`, `E_jk + E_kj`, `i(E_jk − E_kj)`.
fn hermitian_basis(n: usize) -> Vec<Matrix> {
    let mut out = Vec::with_capacity(n * n);
    for j in 0..n {
        let mut m = Matrix::zeros(n, n);
        m[(j, j)] = Scalar::one();
        out.push(m);
    }
    for j in 0..n {
        for k in j + 1..n {
            let mut s = Matrix::zeros(n, n);
            s[(j, k)] = Scalar::one();
            s[(k, j)] = Scalar::one();
            out.push(s);
            let mut a = Matrix::zeros(n, n);
            a[(j, k)] = Scalar::i();
            a[(k, j)] = -Scalar::i();
            out.push(a);
        }
    }
    out
}

fn combine(basis: &[Matrix], t: &[Rational]) -> Matrix {
    let n = basis[0].rows();
    let mut acc = Matrix::zeros(n, n);
    for (m, c) in basis.iter().zip(t) {
        if !c.is_zero() {
            acc = &acc + &(&Matrix::scalar_identity(n, &Scalar::real(c.clone())) * m);
        }
    }
    acc
}

/// Hermitian matrices whose forms are d-closed, as a rational basis.
fn closed_hermitian(b: &Bicomplex, frame: &[(usize, usize)]) -> Result<Vec<Matrix>> {
    let basis = hermitian_basis(frame.len());
    let alg = b.algebra();
    let three = alg.monomials_of_degree(3);
    let mut columns = Vec::with_capacity(basis.len());
    for h in &basis {
        let dw = b.differential().apply(&form_of(b, frame, h))?;
        let coords = dw.coords(&three)?;
        let mut col: Vec<Scalar> = coords.iter().map(|c| Scalar::real(c.re.clone())).collect();
        col.extend(coords.iter().map(|c| Scalar::real(c.im.clone())));
        columns.push(col);
    }
    let system = Matrix::from_columns(2 * three.len(), &columns);
    let kernel = kernel_basis(&system);
    Ok(kernel
        .basis()
        .iter()
        .map(|v| combine(&basis, &v.iter().map(|x| x.re.clone()).collect::<Vec<_>>()))
        .collect())
}

/// Coefficient of the top monomial in `ω^n`.
fn top_power(b: &Bicomplex, omega: &Form, n: usize) -> Result<Scalar> {
    let mut acc = Form::unit(b.algebra());
    for _ in 0..n {
        acc = acc.wedge(omega)?;
    }
    Ok(acc.coefficient(b.algebra().top()).evaluate(&Rational::zero()))
}

fn positive_definite(h: &Matrix) -> bool {
    h.is_hermitian() && h.leading_principal_minors().iter().all(|m| m.is_real() && m.re.is_positive())
}

/// Whether `(Σ t_a ω_a)^n` vanishes identically, decided by a random screen and, when
/// the screen sees only zeros, by expanding over all multisets of size `n`.
fn top_power_vanishes(b: &Bicomplex, forms: &[Form], n: usize, rng: &mut ChaCha8Rng) -> Result<bool> {
    for _ in 0..4 {
        let mut omega = Form::zero(b.algebra());
        for f in forms {
            omega = &omega + &f.scale_scalar(&Scalar::from_int(rng.gen_range(-5..=5)));
        }
        if !top_power(b, &omega, n)?.is_zero() {
            return Ok(false);
        }
    }
    let m = forms.len();
    let mut idx = vec![0usize; n];
    loop {
        let mut acc = Form::unit(b.algebra());
        for &a in &idx {
            acc = acc.wedge(&forms[a])?;
        }
        if !acc.coefficient(b.algebra().top()).is_zero() {
            return Ok(false);
        }
        // next non-decreasing index sequence
        let Some(pos) = (0..n).rev().find(|&i| idx[i] + 1 < m) else { return Ok(true) };
        let v = idx[pos] + 1;
        for x in &mut idx[pos..] {
            *x = v;
        }
    }
}

/// Searches for a real closed positive (1,1) form.
pub fn kaehler_witness(b: &Bicomplex, trials: usize, seed: u64) -> Result<KaehlerVerdict> {
    let frame = coframe(b)?;
    let n = frame.len();
    let closed = closed_hermitian(b, &frame)?;
    if closed.is_empty() {
        return Ok(KaehlerVerdict::ImpossibleNondegenerate);
    }
    let forms: Vec<Form> = closed.iter().map(|h| form_of(b, &frame, h)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if n > 0 && top_power_vanishes(b, &forms, n, &mut rng)? {
        return Ok(KaehlerVerdict::ImpossibleNondegenerate);
    }

    let m = closed.len();
    let mut tried = 0;
    let mut candidates = (0..2 * m).map(|i| {
        let mut t = vec![Rational::zero(); m];
        t[i / 2] = Rational::from_integer(if i % 2 == 0 { 1 } else { -1 }.into());
        t
    });
    while tried < trials {
        let t = candidates.next().unwrap_or_else(|| {
            (0..m).map(|_| Rational::from_integer(rng.gen_range(-3i64..=3).into())).collect()
        });
        tried += 1;
        let h = combine(&closed, &t);
        if positive_definite(&h) {
            let form = form_of(b, &frame, &h);
            return Ok(KaehlerVerdict::Witness(KaehlerWitness { form, hermitian: h }));
        }
    }
    Ok(KaehlerVerdict::Inconclusive { trials })
}

/// Re-checks a candidate form directly: real, closed, of type (1,1), with `ω^n` a
/// nonzero multiple of the volume, and a positive-definite coefficient matrix.
pub fn verify_kaehler_witness(b: &Bicomplex, omega: &Form) -> Result<WitnessCheck> {
    let frame = coframe(b)?;
    let n = frame.len();
    let alg = b.algebra();
    let type_11 = omega.terms().keys().all(|m| m.bidegree(alg) == Some((1, 1)));
    let real = omega.conjugate()? == *omega;
    let closed = b.differential().apply(omega)?.is_zero();
    let top_power_nonzero = !top_power(b, omega, n)?.is_zero();
    let mut h = Matrix::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            let (sign, m) = pair_monomial(&frame, j, k);
            let c = omega.coefficient(m).as_constant().ok_or(FolError::ParameterNotEvaluated)?;
            // c = i · sign · H_jk
            let v = &c * &Scalar::gaussian(0, -1);
            h[(j, k)] = if sign < 0 { -v } else { v };
        }
    }
    Ok(WitnessCheck { real, closed, type_11, top_power_nonzero, positive_definite: type_11 && positive_definite(&h) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foliation::bigrade_split;
    use crate::model::bundled;

    #[test]
    fn torus_witnesses() {
        let b = bigrade_split(&bundled::torus1()).unwrap();
        let KaehlerVerdict::Witness(w) = kaehler_witness(&b, 10, 0).unwrap() else { panic!() };
        assert_eq!(w.form.to_string(), "i*β^β̄");
        assert!(verify_kaehler_witness(&b, &w.form).unwrap().all());

        let b2 = bigrade_split(&bundled::torus2()).unwrap();
        let KaehlerVerdict::Witness(w2) = kaehler_witness(&b2, 200, 0).unwrap() else { panic!() };
        assert!(verify_kaehler_witness(&b2, &w2.form).unwrap().all());
    }

    #[test]
    fn s6_is_impossible() {
        let b = bigrade_split(&bundled::s6()).unwrap();
        assert_eq!(kaehler_witness(&b, 50, 1).unwrap(), KaehlerVerdict::ImpossibleNondegenerate);
    }

    #[test]
    fn closed_real_11_space_of_s6() {
        let b = bigrade_split(&bundled::s6()).unwrap();
        let frame = coframe(&b).unwrap();
        let closed = closed_hermitian(&b, &frame).unwrap();
        assert_eq!(closed.len(), 1);
        assert_eq!(form_of(&b, &frame, &closed[0]).to_string(), "i*β1^β̄1");
    }
}
