//! Declared orthonormal metric: star operator, adjoints, Laplacians, and the
//! decomposition, duality and skewness checks built on them.

use std::fmt;

use crate::algebra::{Form, Monomial};
use crate::cohomology::{aeppli, bott_chern, de_rham, dolbeault};
use crate::error::{FolError, Result};
use crate::foliation::{bigrade_split, operator_matrix, Bicomplex};
use crate::linalg::{hermitian_product, image, kernel_basis, Matrix, Subspace};
use crate::model::Model;
use crate::scalar::{ParamScalar, Rational, Scalar};

/// A model with a declared orthonormal coframe and orientation. The monomials of the
/// coframe are an orthonormal basis, so adjoints are conjugate transposes.
#[derive(Debug, Clone)]
pub struct MetricContext {
    model: Model,
    orientation: i32,
    bicomplex: Option<Bicomplex>,
}

impl MetricContext {
    pub fn new(m: &Model) -> Result<Self> {
        if !m.has_metric() {
            return Err(FolError::MissingMetric);
        }
        let orientation = m.orientation().expect("checked by has_metric");
        let bicomplex = if m.is_bigraded() && !m.is_parametric() { Some(bigrade_split(m)?) } else { None };
        Ok(MetricContext { model: m.clone(), orientation, bicomplex })
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn orientation(&self) -> i32 {
        self.orientation
    }

    pub fn volume(&self) -> Form {
        Form::monomial(
            self.model.algebra(),
            self.model.algebra().top(),
            ParamScalar::constant(Scalar::from_int(self.orientation as i64)),
        )
    }

    pub fn bicomplex(&self) -> Result<&Bicomplex> {
        self.bicomplex
            .as_ref()
            .ok_or_else(|| FolError::NotBigraded(format!("model `{}`", self.model.name())))
    }
}

/// `∗e_I = ε · sgn(I, I^c) · e_{I^c}`, where `e_I ∧ e_{I^c} = sgn(I, I^c) · e_top` and
/// `ε` is the orientation sign. Complex-linear; sends `Λ^{p,q}` to `Λ^{n−p,n−q}`.
pub fn hodge_star(ctx: &MetricContext, x: &Form) -> Result<Form> {
    let alg = ctx.model.algebra();
    if x.algebra() != alg {
        return Err(FolError::ModelMismatch);
    }
    if !x.is_zero() {
        x.require_degree()?;
    }
    let top = alg.top();
    let eps = ParamScalar::constant(Scalar::from_int(ctx.orientation as i64));
    let mut terms = Vec::with_capacity(x.terms().len());
    for (m, c) in x.terms() {
        let rest = top.without(*m);
        let (sign, _) = m.wedge(rest).expect("complementary monomials");
        let c = &eps * c;
        terms.push((rest, if sign < 0 { -&c } else { c }));
    }
    Ok(Form::from_terms(alg, terms))
}

/// Matrix of `∗ : Λ^{p,q} → Λ^{n−p,n−q}`.
pub fn star_matrix(ctx: &MetricContext, p: i64, q: i64) -> Result<Matrix> {
    let b = ctx.bicomplex()?;
    let n = b.complex_dimension()? as i64;
    operator_matrix(ctx.model.algebra(), b.basis(p, q), b.basis(n - p, n - q), |x| hodge_star(ctx, x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grade {
    Degree(usize),
    Bidegree(i64, i64),
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grade::Degree(k) => write!(f, "{k}"),
            Grade::Bidegree(p, q) => write!(f, "({p},{q})"),
        }
    }
}

/// A linear operator between graded pieces, in orthonormal monomial bases.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    pub tag: String,
    pub source: Grade,
    pub target: Grade,
    pub matrix: Matrix,
}

impl OperatorMatrix {
    pub fn del(b: &Bicomplex, p: i64, q: i64) -> Self {
        OperatorMatrix {
            tag: "∂".into(),
            source: Grade::Bidegree(p, q),
            target: Grade::Bidegree(p + 1, q),
            matrix: b.del(p, q),
        }
    }

    pub fn dbar(b: &Bicomplex, p: i64, q: i64) -> Self {
        OperatorMatrix {
            tag: "∂̄".into(),
            source: Grade::Bidegree(p, q),
            target: Grade::Bidegree(p, q + 1),
            matrix: b.dbar(p, q),
        }
    }
}

/// Conjugate transpose, which is the adjoint for orthonormal bases on both sides.
pub fn adjoint_matrix(op: &OperatorMatrix) -> OperatorMatrix {
    OperatorMatrix {
        tag: format!("{}*", op.tag),
        source: op.target,
        target: op.source,
        matrix: op.matrix.adjoint(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaplacianKind {
    Dolbeault,
    BottChern,
    Aeppli,
}

impl LaplacianKind {
    pub fn tag(self) -> &'static str {
        match self {
            LaplacianKind::Dolbeault => "Δ_∂̄",
            LaplacianKind::BottChern => "Δ_BC",
            LaplacianKind::Aeppli => "Δ_A",
        }
    }
}

fn aat(a: &Matrix) -> Matrix {
    a * &a.adjoint()
}

fn ata(a: &Matrix) -> Matrix {
    &a.adjoint() * a
}

/// The Laplacian of the given kind on `Λ^{p,q}`, assembled term by term.
pub fn laplacian(ctx: &MetricContext, kind: LaplacianKind, p: i64, q: i64) -> Result<OperatorMatrix> {
    let b = ctx.bicomplex()?;
    let matrix = laplacian_matrix(b, kind, p, q);
    Ok(OperatorMatrix { tag: kind.tag().into(), source: Grade::Bidegree(p, q), target: Grade::Bidegree(p, q), matrix })
}

pub(crate) fn laplacian_matrix(b: &Bicomplex, kind: LaplacianKind, p: i64, q: i64) -> Matrix {
    match kind {
        LaplacianKind::Dolbeault => &aat(&b.dbar(p, q - 1)) + &ata(&b.dbar(p, q)),
        LaplacianKind::BottChern => {
            // ∂∂̄ into and out of (p,q)
            let into = b.del_dbar(p - 1, q - 1);
            let out = b.del_dbar(p, q);
            // ∂̄*∂ : (p−1,q+1) → (p,q) and (p,q) → (p+1,q−1)
            let s_into = &b.dbar(p, q).adjoint() * &b.del(p - 1, q + 1);
            let s_out = &b.dbar(p + 1, q - 1).adjoint() * &b.del(p, q);
            let terms = [aat(&into), ata(&out), aat(&s_into), ata(&s_out), ata(&b.dbar(p, q)), ata(&b.del(p, q))];
            sum(terms)
        }
        LaplacianKind::Aeppli => {
            let into = b.del_dbar(p - 1, q - 1);
            let out = b.del_dbar(p, q);
            // ∂̄∂* : (p+1,q−1) → (p,q) and (p,q) → (p−1,q+1)
            let t_into = &b.dbar(p, q - 1) * &b.del(p, q - 1).adjoint();
            let t_out = &b.dbar(p - 1, q) * &b.del(p - 1, q).adjoint();
            let terms = [
                aat(&b.del(p - 1, q)),
                aat(&b.dbar(p, q - 1)),
                ata(&out),
                aat(&into),
                ata(&t_out),
                aat(&t_into),
            ];
            sum(terms)
        }
    }
}

fn sum<const N: usize>(terms: [Matrix; N]) -> Matrix {
    let mut it = terms.into_iter();
    let first = it.next().expect("nonempty");
    it.fold(first, |acc, t| &acc + &t)
}

/// Per-bidegree dimensions of the harmonic spaces and of the orthogonal summands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionRow {
    pub p: usize,
    pub q: usize,
    pub dim: usize,
    pub ker_dbar_laplacian: usize,
    pub h_dbar: usize,
    pub ker_bc_laplacian: usize,
    pub im_ddbar: usize,
    pub im_adjoints: usize,
    pub h_bc: usize,
    pub ker_a_laplacian: usize,
    pub im_sum: usize,
    pub im_ddbar_adjoint: usize,
    pub h_a: usize,
    pub orthogonal_bc: bool,
    pub orthogonal_a: bool,
    pub hermitian: bool,
}

impl DecompositionRow {
    pub fn holds(&self) -> bool {
        self.ker_dbar_laplacian == self.h_dbar
            && self.ker_bc_laplacian == self.h_bc
            && self.ker_a_laplacian == self.h_a
            && self.ker_bc_laplacian + self.im_ddbar + self.im_adjoints == self.dim
            && self.ker_a_laplacian + self.im_sum + self.im_ddbar_adjoint == self.dim
            && self.orthogonal_bc
            && self.orthogonal_a
            && self.hermitian
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub rows: Vec<DecompositionRow>,
}

impl DecompositionReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(DecompositionRow::holds)
    }
}

fn mutually_orthogonal(spaces: &[&Subspace]) -> bool {
    spaces
        .iter()
        .enumerate()
        .all(|(i, a)| spaces[i + 1..].iter().all(|b| a.is_orthogonal_to(b)))
}

/// Checks `Λ^{p,q} = Ker Δ_BC ⊕ Im ∂∂̄ ⊕ (Im ∂* + Im ∂̄*)` and
/// `Λ^{p,q} = Ker Δ_A ⊕ (Im ∂ + Im ∂̄) ⊕ Im (∂∂̄)*`, and compares harmonic dimensions
/// with the cohomology quotients.
pub fn decomposition_check(ctx: &MetricContext) -> Result<DecompositionReport> {
    let b = ctx.bicomplex()?;
    let dol = dolbeault(b, false)?;
    let bc = bott_chern(b)?;
    let a = aeppli(b)?;
    let mut rows = Vec::new();
    for (p, q) in b.bidegrees() {
        let l_dbar = laplacian_matrix(b, LaplacianKind::Dolbeault, p, q);
        let l_bc = laplacian_matrix(b, LaplacianKind::BottChern, p, q);
        let l_a = laplacian_matrix(b, LaplacianKind::Aeppli, p, q);
        let ker_bc = kernel_basis(&l_bc);
        let im_ddbar = image(&b.del_dbar(p - 1, q - 1));
        let im_adj = image(&b.del(p, q).adjoint()).sum(&image(&b.dbar(p, q).adjoint()));
        let ker_a = kernel_basis(&l_a);
        let im_sum = image(&b.del(p - 1, q)).sum(&image(&b.dbar(p, q - 1)));
        let im_ddbar_adj = image(&b.del_dbar(p, q).adjoint());
        let (pu, qu) = (p as usize, q as usize);
        rows.push(DecompositionRow {
            p: pu,
            q: qu,
            dim: b.dim(p, q),
            ker_dbar_laplacian: kernel_basis(&l_dbar).dim(),
            h_dbar: dol.dim(pu, qu),
            ker_bc_laplacian: ker_bc.dim(),
            im_ddbar: im_ddbar.dim(),
            im_adjoints: im_adj.dim(),
            h_bc: bc.dim(pu, qu),
            ker_a_laplacian: ker_a.dim(),
            im_sum: im_sum.dim(),
            im_ddbar_adjoint: im_ddbar_adj.dim(),
            h_a: a.dim(pu, qu),
            orthogonal_bc: mutually_orthogonal(&[&ker_bc, &im_ddbar, &im_adj]),
            orthogonal_a: mutually_orthogonal(&[&ker_a, &im_sum, &im_ddbar_adj]),
            hermitian: l_dbar.is_hermitian() && l_bc.is_hermitian() && l_a.is_hermitian(),
        });
    }
    Ok(DecompositionReport { rows })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityRow {
    pub p: usize,
    pub q: usize,
    pub h_bc: usize,
    /// `h_A^{n−p,n−q}`
    pub h_a_dual: usize,
    /// `Δ_A ∗ = ∗ Δ_BC` on `Λ^{p,q}`.
    pub conjugation_identity: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    pub n: usize,
    pub orientable: bool,
    pub rows: Vec<DualityRow>,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.h_bc == r.h_a_dual && r.conjugation_identity)
    }
}

/// Compares `H_BC^{p,q}` with `H_A^{n−p,n−q}` and checks `Δ_A = ∗ Δ_BC ∗⁻¹` exactly.
pub fn duality_check(ctx: &MetricContext) -> Result<DualityReport> {
    let b = ctx.bicomplex()?;
    let n = b.complex_dimension()?;
    let dr = de_rham(&b.total_complex()?)?;
    let orientable = dr.dim(2 * n, 0) == 1;
    let bc = bott_chern(b)?;
    let a = aeppli(b)?;
    let ni = n as i64;
    let mut rows = Vec::new();
    for (p, q) in b.bidegrees() {
        let star = star_matrix(ctx, p, q)?;
        let l_bc = laplacian_matrix(b, LaplacianKind::BottChern, p, q);
        let l_a = laplacian_matrix(b, LaplacianKind::Aeppli, ni - p, ni - q);
        rows.push(DualityRow {
            p: p as usize,
            q: q as usize,
            h_bc: bc.dim(p as usize, q as usize),
            h_a_dual: a.dim((ni - p) as usize, (ni - q) as usize),
            conjugation_identity: &l_a * &star == &star * &l_bc,
        });
    }
    Ok(DualityReport { n, orientable, rows })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SkewRow {
    pub degree: usize,
    /// Dimension of `Ker ι_ξ` in this degree.
    pub dim: usize,
    /// Matrix of `L_ξ` on the echelon basis of `Ker ι_ξ`.
    pub matrix: Matrix,
    pub skew: bool,
    /// Basis pair with `⟨Lu, v⟩ + ⟨u, Lv⟩ ≠ 0`.
    pub witness: Option<(Form, Form)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SkewnessReport {
    pub s0: Rational,
    pub rows: Vec<SkewRow>,
}

impl SkewnessReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.skew)
    }
}

/// Checks that `L_ξ` at `s0` is skew-Hermitian on `Ker ι_ξ` in every degree.
pub fn lie_skewness_check(ctx: &MetricContext, s0: &Rational) -> Result<SkewnessReport> {
    let m = ctx.model.evaluate(s0);
    let iota = m.contraction().ok_or(FolError::MissingFoliation)?;
    let alg = m.algebra();
    let mut rows = Vec::new();
    for k in 0..=alg.top_degree() as usize {
        let basis: Vec<Monomial> = alg.monomials_of_degree(k as u32);
        let below: Vec<Monomial> = if k == 0 { Vec::new() } else { alg.monomials_of_degree(k as u32 - 1) };
        let i_k = operator_matrix(alg, &basis, &below, |x| iota.apply(x))?;
        let lie = operator_matrix(alg, &basis, &basis, |x| {
            Ok(&m.d(&iota.apply(x)?)? + &iota.apply(&m.d(x)?)?)
        })?;
        let kernel = kernel_basis(&i_k);
        let images: Vec<Vec<Scalar>> = kernel.basis().iter().map(|v| lie.apply(v)).collect();
        let mut columns = Vec::with_capacity(images.len());
        for w in &images {
            let c = kernel.coordinates(w).ok_or_else(|| {
                FolError::InternalConsistency(format!("L_ξ does not preserve Ker ι_ξ in degree {k}"))
            })?;
            columns.push(c);
        }
        let mut witness = None;
        'outer: for (i, u) in kernel.basis().iter().enumerate() {
            for (j, v) in kernel.basis().iter().enumerate() {
                let s = &hermitian_product(&images[i], v) + &hermitian_product(u, &images[j]);
                if !s.is_zero() {
                    witness = Some((Form::from_coords(alg, &basis, u), Form::from_coords(alg, &basis, v)));
                    break 'outer;
                }
            }
        }
        rows.push(SkewRow {
            degree: k,
            dim: kernel.dim(),
            matrix: Matrix::from_columns(kernel.dim(), &columns),
            skew: witness.is_none(),
            witness,
        });
    }
    Ok(SkewnessReport { s0: s0.clone(), rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::bundled;
    use crate::scalar::rational;

    #[test]
    fn star_basics() {
        let m = bundled::s6_real();
        let ctx = MetricContext::new(&m).unwrap();
        let one = Form::unit(m.algebra());
        assert_eq!(hodge_star(&ctx, &one).unwrap(), ctx.volume());
        let a1 = m.generator("α1").unwrap();
        assert_eq!(hodge_star(&ctx, &a1).unwrap().to_string(), "α2^α3^α4");
    }

    #[test]
    fn s6_laplacian_kernels() {
        let ctx = MetricContext::new(&bundled::s6()).unwrap();
        let bc = laplacian(&ctx, LaplacianKind::BottChern, 1, 1).unwrap();
        assert_eq!(kernel_basis(&bc.matrix).dim(), 1);
        let dol = laplacian(&ctx, LaplacianKind::Dolbeault, 0, 1).unwrap();
        assert_eq!(kernel_basis(&dol.matrix).dim(), 1);
        let r = decomposition_check(&ctx).unwrap();
        assert!(r.holds(), "{r:?}");
        let row = r.rows.iter().find(|r| (r.p, r.q) == (1, 1)).unwrap();
        assert_eq!((row.ker_bc_laplacian, row.im_ddbar, row.im_adjoints), (1, 0, 3));
        let d = duality_check(&ctx).unwrap();
        assert!(d.orientable && d.holds(), "{d:?}");
    }

    #[test]
    fn torus_laplacians_vanish() {
        let ctx = MetricContext::new(&bundled::torus1()).unwrap();
        let b = ctx.bicomplex().unwrap().clone();
        for (p, q) in b.bidegrees() {
            for kind in [LaplacianKind::Dolbeault, LaplacianKind::BottChern, LaplacianKind::Aeppli] {
                assert!(laplacian(&ctx, kind, p, q).unwrap().matrix.is_zero());
            }
        }
    }

    #[test]
    fn hopf_skewness() {
        let ctx = MetricContext::new(&bundled::hopf_family()).unwrap();
        let r = lie_skewness_check(&ctx, &rational(0, 1)).unwrap();
        assert!(r.holds());
        let deg1 = &r.rows[1];
        assert_eq!(deg1.dim, 4);
        // basis γ, α1, α2, α4
        assert_eq!(deg1.matrix[(1, 2)], Scalar::from_int(-2));
        assert_eq!(deg1.matrix[(2, 1)], Scalar::from_int(2));
        assert!(lie_skewness_check(&ctx, &rational(1, 2)).unwrap().holds());
    }

    #[test]
    fn laplacians_need_bigrading() {
        let ctx = MetricContext::new(&bundled::hopf_family()).unwrap();
        assert!(matches!(laplacian(&ctx, LaplacianKind::Dolbeault, 0, 0), Err(FolError::NotBigraded(_))));
    }
}
