//! Basic subcomplexes cut out by a contraction, and the bigraded splitting `d = ∂ + ∂̄`.

use std::sync::Arc;

use crate::algebra::{Algebra, Derivation, Form, GenType, Monomial};
use crate::error::{FolError, Result};
use crate::linalg::{kernel_basis, Matrix, Subspace};
use crate::model::Model;
use crate::scalar::{ParamScalar, Rational, Scalar};

/// Matrix of a linear map on forms, columns indexed by `src`, rows by `dst`.
pub(crate) fn operator_matrix(
    alg: &Arc<Algebra>,
    src: &[Monomial],
    dst: &[Monomial],
    f: impl Fn(&Form) -> Result<Form>,
) -> Result<Matrix> {
    let mut columns = Vec::with_capacity(src.len());
    for m in src {
        let image = f(&Form::monomial(alg, *m, ParamScalar::one()))?;
        columns.push(image.coords(dst)?);
    }
    Ok(Matrix::from_columns(dst.len(), &columns))
}

fn require_parameter_free(d: &Derivation) -> Result<()> {
    let alg = d.algebra();
    let free = (0..alg.len()).all(|i| d.image(i).is_none_or(Form::is_parameter_free));
    if free {
        Ok(())
    } else {
        Err(FolError::ParameterNotEvaluated)
    }
}

/// A cochain complex given as a subspace of each `Λ^k` together with the restricted
/// differentials in echelon-basis coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedComplex {
    alg: Arc<Algebra>,
    parameter: Option<Rational>,
    ambient: Vec<Vec<Monomial>>,
    spaces: Vec<Subspace>,
    /// `differentials[k]` has shape `dim_{k+1} × dim_k`.
    differentials: Vec<Matrix>,
}

impl GradedComplex {
    /// The whole exterior algebra with the model's differential.
    pub fn full(m: &Model) -> Result<Self> {
        Self::full_with(m.differential(), None)
    }

    pub(crate) fn full_with(d: &Derivation, parameter: Option<Rational>) -> Result<Self> {
        let alg = d.algebra().clone();
        let ambient: Vec<Vec<Monomial>> = (0..=alg.top_degree()).map(|k| alg.monomials_of_degree(k)).collect();
        let spaces = ambient.iter().map(|b| Subspace::full(b.len())).collect();
        Self::from_spaces(d, ambient, spaces, parameter)
    }

    /// Restricts `d` to the given spaces, failing if some space is not carried into the next.
    pub(crate) fn from_spaces(
        d: &Derivation,
        ambient: Vec<Vec<Monomial>>,
        spaces: Vec<Subspace>,
        parameter: Option<Rational>,
    ) -> Result<Self> {
        require_parameter_free(d)?;
        let alg = d.algebra().clone();
        let top = ambient.len() - 1;
        let mut differentials = Vec::with_capacity(ambient.len());
        for k in 0..=top {
            if k == top {
                differentials.push(Matrix::zeros(0, spaces[k].dim()));
                continue;
            }
            let full = operator_matrix(&alg, &ambient[k], &ambient[k + 1], |x| d.apply(x))?;
            let mut columns = Vec::with_capacity(spaces[k].dim());
            for v in spaces[k].basis() {
                let image = full.apply(v);
                let coords = spaces[k + 1].coordinates(&image).ok_or_else(|| {
                    FolError::InternalConsistency(format!("subcomplex is not d-stable in degree {k}"))
                })?;
                columns.push(coords);
            }
            differentials.push(Matrix::from_columns(spaces[k + 1].dim(), &columns));
        }
        Ok(GradedComplex { alg, parameter, ambient, spaces, differentials })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    /// The parameter value the complex was extracted at, if any.
    pub fn parameter(&self) -> Option<&Rational> {
        self.parameter.as_ref()
    }

    /// Highest degree index (the complex lives in degrees `0..=top_degree`).
    pub fn top_degree(&self) -> usize {
        self.spaces.len() - 1
    }

    /// Highest degree with a nonzero space.
    pub fn top_nonzero_degree(&self) -> Option<usize> {
        (0..self.spaces.len()).rev().find(|&k| self.spaces[k].dim() > 0)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Subspace::dim).collect()
    }

    pub fn dim(&self, k: usize) -> usize {
        self.spaces.get(k).map_or(0, Subspace::dim)
    }

    pub fn ambient_basis(&self, k: usize) -> &[Monomial] {
        &self.ambient[k]
    }

    pub fn space(&self, k: usize) -> &Subspace {
        &self.spaces[k]
    }

    /// Restricted differential out of degree `k`, in echelon-basis coordinates.
    pub fn differential(&self, k: usize) -> &Matrix {
        &self.differentials[k]
    }

    /// The form with the given echelon-basis coordinates in degree `k`.
    pub fn form(&self, k: usize, coords: &[Scalar]) -> Form {
        let mut ambient = vec![Scalar::zero(); self.ambient[k].len()];
        for (c, row) in coords.iter().zip(self.spaces[k].basis()) {
            if c.is_zero() {
                continue;
            }
            for (a, x) in ambient.iter_mut().zip(row) {
                *a += &(c * x);
            }
        }
        Form::from_coords(&self.alg, &self.ambient[k], &ambient)
    }

    /// Echelon basis of degree `k` as forms.
    pub fn basis_forms(&self, k: usize) -> Vec<Form> {
        self.spaces[k]
            .basis()
            .iter()
            .map(|row| Form::from_coords(&self.alg, &self.ambient[k], row))
            .collect()
    }

    /// Echelon-basis coordinates of a homogeneous degree-`k` form, if it lies in the complex.
    pub fn coordinates(&self, k: usize, x: &Form) -> Option<Vec<Scalar>> {
        let v = x.coords(&self.ambient[k]).ok()?;
        self.spaces[k].coordinates(&v)
    }

    /// Membership test for a parameter-free form of any degree.
    pub fn contains(&self, x: &Form) -> bool {
        (0..self.spaces.len()).all(|k| {
            let part = x.degree_part(k as u32);
            part.is_zero() || self.coordinates(k, &part).is_some()
        })
    }
}

/// `ι_ξ x` at `s = s0`.
pub fn contraction(m: &Model, x: &Form, s0: &Rational) -> Result<Form> {
    let iota = m.contraction().ok_or(FolError::MissingFoliation)?;
    Ok(iota.apply(x)?.evaluate(s0))
}

/// `L_ξ x = d ι_ξ x + ι_ξ d x` at `s = s0`.
pub fn lie_derivative(m: &Model, x: &Form, s0: &Rational) -> Result<Form> {
    let iota = m.contraction().ok_or(FolError::MissingFoliation)?;
    let a = m.d(&iota.apply(x)?)?;
    let b = iota.apply(&m.d(x)?)?;
    Ok((&a + &b).evaluate(s0))
}

/// Per degree, `{x : ι_ξ x = 0, ι_ξ dx = 0}` at `s = s0`, with the restricted differential.
pub fn basic_subcomplex(m: &Model, s0: &Rational) -> Result<GradedComplex> {
    let iota = m.contraction().ok_or(FolError::MissingFoliation)?.evaluate(s0);
    let d = m.differential().evaluate(s0);
    let alg = m.algebra().clone();
    let top = alg.top_degree();
    let ambient: Vec<Vec<Monomial>> = (0..=top).map(|k| alg.monomials_of_degree(k)).collect();
    let empty = Vec::new();
    let mut spaces = Vec::with_capacity(ambient.len());
    for k in 0..=top as usize {
        let below = if k == 0 { &empty } else { &ambient[k - 1] };
        let above = ambient.get(k + 1).unwrap_or(&empty);
        let i_k = operator_matrix(&alg, &ambient[k], below, |x| iota.apply(x))?;
        let d_k = operator_matrix(&alg, &ambient[k], above, |x| d.apply(x))?;
        let i_up = operator_matrix(&alg, above, &ambient[k], |x| iota.apply(x))?;
        spaces.push(kernel_basis(&i_k.vstack(&(&i_up * &d_k))));
    }
    GradedComplex::from_spaces(&d, ambient, spaces, Some(s0.clone()))
}

/// The Dolbeault double complex of a bigraded model: bases of each `Λ^{p,q}` and the
/// matrices of `∂` and `∂̄` between them.
#[derive(Debug, Clone, PartialEq)]
pub struct Bicomplex {
    alg: Arc<Algebra>,
    d: Derivation,
    np: usize,
    nq: usize,
    bases: Vec<Vec<Vec<Monomial>>>,
    del: Vec<Vec<Matrix>>,
    dbar: Vec<Vec<Matrix>>,
}

/// Splits `d` into `∂` (type (1,0)) and `∂̄` (type (0,1)), rejecting any other component.
pub fn bigrade_split(m: &Model) -> Result<Bicomplex> {
    let alg = m.algebra().clone();
    if !alg.is_bigraded() {
        return Err(FolError::NotBigraded(format!("model `{}` has untyped or real generators", m.name())));
    }
    let d = m.differential().clone();
    require_parameter_free(&d)?;
    for (i, g) in alg.generators().iter().enumerate() {
        let (p, q) = g.kind.and_then(GenType::bidegree).expect("bigraded");
        let image = d.apply(&Form::generator(&alg, i))?;
        let bad = Form::from_terms(
            &alg,
            image
                .terms()
                .iter()
                .filter(|(mono, _)| {
                    let b = mono.bidegree(&alg);
                    b != Some((p + 1, q)) && b != Some((p, q + 1))
                })
                .map(|(mono, c)| (*mono, c.clone())),
        );
        if !bad.is_zero() {
            return Err(FolError::Integrability { generator: g.name.clone(), witness: bad.to_string() });
        }
    }

    let np = alg.generators().iter().filter(|g| g.kind == Some(GenType::Holomorphic)).count();
    let nq = alg.len() - np;
    let bases: Vec<Vec<Vec<Monomial>>> = (0..=np)
        .map(|p| (0..=nq).map(|q| alg.monomials_of_bidegree(p as u32, q as u32)).collect())
        .collect();
    let empty = Vec::new();
    let mut del = Vec::with_capacity(np + 1);
    let mut dbar = Vec::with_capacity(np + 1);
    for p in 0..=np {
        let mut row_del = Vec::with_capacity(nq + 1);
        let mut row_dbar = Vec::with_capacity(nq + 1);
        for q in 0..=nq {
            let src = &bases[p][q];
            let right = bases.get(p + 1).map_or(&empty, |r| &r[q]);
            let up = bases[p].get(q + 1).unwrap_or(&empty);
            row_del.push(operator_matrix(&alg, src, right, |x| {
                Ok(d.apply(x)?.component(p as u32 + 1, q as u32))
            })?);
            row_dbar.push(operator_matrix(&alg, src, up, |x| Ok(d.apply(x)?.component(p as u32, q as u32 + 1)))?);
        }
        del.push(row_del);
        dbar.push(row_dbar);
    }
    let b = Bicomplex { alg, d, np, nq, bases, del, dbar };
    b.verify_relations()?;
    Ok(b)
}

impl Bicomplex {
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    /// The (parameter-free) total differential.
    pub fn differential(&self) -> &Derivation {
        &self.d
    }

    /// Number of (1,0) generators.
    pub fn np(&self) -> usize {
        self.np
    }

    /// Number of (0,1) generators.
    pub fn nq(&self) -> usize {
        self.nq
    }

    /// Complex dimension `n`, requiring as many (1,0) as (0,1) generators.
    pub fn complex_dimension(&self) -> Result<usize> {
        if self.np == self.nq {
            Ok(self.np)
        } else {
            Err(FolError::NotBigraded("unequal numbers of (1,0) and (0,1) generators".into()))
        }
    }

    pub fn in_range(&self, p: i64, q: i64) -> bool {
        p >= 0 && q >= 0 && p as usize <= self.np && q as usize <= self.nq
    }

    /// Canonical monomial basis of `Λ^{p,q}`; empty outside the range.
    pub fn basis(&self, p: i64, q: i64) -> &[Monomial] {
        if self.in_range(p, q) {
            &self.bases[p as usize][q as usize]
        } else {
            &[]
        }
    }

    pub fn dim(&self, p: i64, q: i64) -> usize {
        self.basis(p, q).len()
    }

    /// `∂ : Λ^{p,q} → Λ^{p+1,q}`; a correctly shaped zero matrix outside the range.
    pub fn del(&self, p: i64, q: i64) -> Matrix {
        if self.in_range(p, q) {
            self.del[p as usize][q as usize].clone()
        } else {
            Matrix::zeros(self.dim(p + 1, q), self.dim(p, q))
        }
    }

    /// `∂̄ : Λ^{p,q} → Λ^{p,q+1}`.
    pub fn dbar(&self, p: i64, q: i64) -> Matrix {
        if self.in_range(p, q) {
            self.dbar[p as usize][q as usize].clone()
        } else {
            Matrix::zeros(self.dim(p, q + 1), self.dim(p, q))
        }
    }

    /// `∂∂̄ : Λ^{p,q} → Λ^{p+1,q+1}`.
    pub fn del_dbar(&self, p: i64, q: i64) -> Matrix {
        &self.del(p, q + 1) * &self.dbar(p, q)
    }

    /// All bidegrees in lexicographic order.
    pub fn bidegrees(&self) -> Vec<(i64, i64)> {
        (0..=self.np as i64)
            .flat_map(|p| (0..=self.nq as i64).map(move |q| (p, q)))
            .collect()
    }

    pub fn form(&self, p: i64, q: i64, coords: &[Scalar]) -> Form {
        Form::from_coords(&self.alg, self.basis(p, q), coords)
    }

    /// Coordinates of a form in `Λ^{p,q}`; fails if it has terms of another type.
    pub fn coords(&self, p: i64, q: i64, x: &Form) -> Result<Vec<Scalar>> {
        x.coords(self.basis(p, q))
    }

    /// The total complex `(Λ, d)`.
    pub fn total_complex(&self) -> Result<GradedComplex> {
        GradedComplex::full_with(&self.d, None)
    }

    fn verify_relations(&self) -> Result<()> {
        for (p, q) in self.bidegrees() {
            let dd = &self.del(p + 1, q) * &self.del(p, q);
            let bb = &self.dbar(p, q + 1) * &self.dbar(p, q);
            let mixed = &(&self.del(p, q + 1) * &self.dbar(p, q)) + &(&self.dbar(p + 1, q) * &self.del(p, q));
            for (what, m) in [("∂²", dd), ("∂̄²", bb), ("∂∂̄ + ∂̄∂", mixed)] {
                if !m.is_zero() {
                    return Err(FolError::InternalConsistency(format!("{what} ≠ 0 on bidegree ({p},{q})")));
                }
            }
        }
        Ok(())
    }
}

/// Multiplies each `(p,q)` component by `i(p − q)`.
pub fn j_action(b: &Bicomplex, x: &Form) -> Result<Form> {
    if x.algebra() != b.algebra() {
        return Err(FolError::ModelMismatch);
    }
    if x.is_zero() {
        return Ok(x.clone());
    }
    x.require_degree()?;
    let alg = b.algebra();
    let mut terms = Vec::with_capacity(x.terms().len());
    for (m, c) in x.terms() {
        let (p, q) = m
            .bidegree(alg)
            .ok_or_else(|| FolError::NotBigraded(format!("monomial {} has no type", m.display(alg))))?;
        let eigen = Scalar::gaussian(0, p as i64 - q as i64);
        terms.push((*m, c.scale(&eigen)));
    }
    Ok(Form::from_terms(alg, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{bundled, parse_model};
    use crate::scalar::rational;

    fn g(m: &Model, name: &str) -> Form {
        m.generator(name).unwrap()
    }

    #[test]
    fn contraction_values() {
        let m = bundled::hopf_family();
        let x = contraction(&m, &g(&m, "α3"), &rational(1, 3)).unwrap();
        assert_eq!(x.to_string(), "2/3");
        let y = g(&m, "α1").wedge(&g(&m, "α3")).unwrap();
        assert_eq!(contraction(&m, &y, &rational(0, 1)).unwrap(), -&g(&m, "α1"));
    }

    #[test]
    fn lie_derivative_values() {
        let m = bundled::hopf_family();
        let s0 = rational(0, 1);
        assert_eq!(lie_derivative(&m, &g(&m, "α1"), &s0).unwrap().to_string(), "2*α2");
        for s in [rational(0, 1), rational(1, 2), rational(1, 1)] {
            assert!(lie_derivative(&m, &g(&m, "α4"), &s).unwrap().is_zero());
            assert!(lie_derivative(&m, &g(&m, "γ"), &s).unwrap().is_zero());
        }
    }

    #[test]
    fn hopf_basic_dimensions() {
        let m = bundled::hopf_family();
        assert_eq!(basic_subcomplex(&m, &rational(0, 1)).unwrap().dims(), vec![1, 2, 2, 2, 1, 0]);
        let half = basic_subcomplex(&m, &rational(1, 2)).unwrap();
        assert_eq!(half.dims(), vec![1, 2, 2, 2, 1, 0]);
        let names: Vec<String> = half.basis_forms(1).iter().map(ToString::to_string).collect();
        assert_eq!(names, vec!["γ - α3", "α4"]);
        assert_eq!(basic_subcomplex(&m, &rational(1, 1)).unwrap().dims(), vec![1, 4, 6, 4, 1, 0]);
    }

    #[test]
    fn zero_contraction_gives_everything() {
        let m = parse_model("model z\ngenerator a : deg=1\ngenerator b : deg=1\niota a = 0\nend\n").unwrap();
        assert_eq!(basic_subcomplex(&m, &rational(0, 1)).unwrap().dims(), vec![1, 2, 1]);
    }

    #[test]
    fn missing_contraction_is_an_error() {
        let m = bundled::torus1();
        assert_eq!(basic_subcomplex(&m, &rational(0, 1)), Err(FolError::MissingFoliation));
    }

    #[test]
    fn s6_split() {
        let m = bundled::s6();
        let b = bigrade_split(&m).unwrap();
        // ∂̄β2 = −iβ1∧β̄1
        let beta2 = g(&m, "β2");
        let col = b.dbar(1, 0).apply(&b.coords(1, 0, &beta2).unwrap());
        assert_eq!(b.form(1, 1, &col).to_string(), "-i*β1^β̄1");
        let t = bigrade_split(&bundled::torus1()).unwrap();
        assert!(t.bidegrees().iter().all(|&(p, q)| t.del(p, q).is_zero() && t.dbar(p, q).is_zero()));
    }

    #[test]
    fn integrability_failure() {
        let m = parse_model(
            "model bad\ngenerator β : deg=1, type=(1,0), conj=β̄\ngenerator β1 : deg=1, type=(1,0), conj=β̄1\n\
             generator β̄ : deg=1, type=(0,1)\ngenerator β̄1 : deg=1, type=(0,1)\nd β = β̄^β̄1\nend\n",
        )
        .unwrap();
        assert!(matches!(bigrade_split(&m), Err(FolError::Integrability { .. })));
        assert!(matches!(bigrade_split(&bundled::hopf_family()), Err(FolError::NotBigraded(_))));
    }

    #[test]
    fn j_action_eigenvalues() {
        let m = bundled::s6();
        let b = bigrade_split(&m).unwrap();
        let b1 = g(&m, "β1");
        assert_eq!(j_action(&b, &b1).unwrap().to_string(), "i*β1");
        let b12 = b1.wedge(&g(&m, "β2")).unwrap();
        assert_eq!(j_action(&b, &b12).unwrap().to_string(), "2i*β1^β2");
        let b11 = b1.wedge(&g(&m, "β̄1")).unwrap();
        assert!(j_action(&b, &b11).unwrap().is_zero());
    }
}
