//! Cohomology theories as exact quotients `Ker / Im`, and Frölicher spectral-sequence pages.

mod spectral;

use std::fmt;

use rayon::prelude::*;

use crate::algebra::Form;
use crate::error::{FolError, Result};
use crate::foliation::{Bicomplex, GradedComplex};
use crate::linalg::{image, kernel_basis, Subspace};
use crate::scalar::Scalar;

pub use spectral::{default_pages, froelicher_pages, SpectralPages};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theory {
    DeRham,
    Dolbeault,
    DolbeaultConjugate,
    BottChern,
    Aeppli,
}

impl Theory {
    pub const ALL: [Theory; 5] =
        [Theory::DeRham, Theory::Dolbeault, Theory::DolbeaultConjugate, Theory::BottChern, Theory::Aeppli];

    pub fn tag(self) -> &'static str {
        match self {
            Theory::DeRham => "deRham",
            Theory::Dolbeault => "dolbeault",
            Theory::DolbeaultConjugate => "dolbeault-conjugate",
            Theory::BottChern => "bottChern",
            Theory::Aeppli => "aeppli",
        }
    }

    pub fn is_bigraded(self) -> bool {
        self != Theory::DeRham
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// One cell of a table. De Rham entries use `p` for the degree and `q = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CohomologyEntry {
    pub p: usize,
    pub q: usize,
    pub dim: usize,
    pub representatives: Vec<Form>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CohomologyTable {
    pub theory: Theory,
    /// Display name; the theory tag unless renamed (e.g. by a sweep).
    pub name: String,
    pub entries: Vec<CohomologyEntry>,
}

impl CohomologyTable {
    fn new(theory: Theory, entries: Vec<CohomologyEntry>) -> Self {
        CohomologyTable { theory, name: theory.tag().to_string(), entries }
    }

    pub fn entry(&self, p: usize, q: usize) -> Option<&CohomologyEntry> {
        self.entries.iter().find(|e| e.p == p && e.q == q)
    }

    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.entry(p, q).map_or(0, |e| e.dim)
    }

    /// Dimensions in total degree order: `Σ_{p+q=k} dim` for `k = 0, 1, …`.
    pub fn degree_dims(&self) -> Vec<usize> {
        let top = self.entries.iter().map(|e| e.p + e.q).max().unwrap_or(0);
        (0..=top)
            .map(|k| self.entries.iter().filter(|e| e.p + e.q == k).map(|e| e.dim).sum())
            .collect()
    }
}

/// Dimension and canonical representatives of `num / den`.
pub(crate) fn quotient(num: &Subspace, den: &Subspace, what: &str) -> Result<(usize, Vec<Vec<Scalar>>)> {
    if !num.contains(den) {
        return Err(FolError::InternalConsistency(format!("{what}: denominator not contained in numerator")));
    }
    let reps = num.complement_of(den)?;
    debug_assert_eq!(reps.len(), num.dim() - den.dim());
    Ok((reps.len(), reps))
}

/// `H^k = Ker d_k / Im d_{k−1}` of a graded complex.
pub fn de_rham(c: &GradedComplex) -> Result<CohomologyTable> {
    let mut entries = Vec::with_capacity(c.top_degree() + 1);
    for k in 0..=c.top_degree() {
        let z = kernel_basis(c.differential(k));
        let b = if k == 0 { Subspace::zero(c.dim(0)) } else { image(c.differential(k - 1)) };
        let (dim, reps) = quotient(&z, &b, "de Rham")?;
        entries.push(CohomologyEntry {
            p: k,
            q: 0,
            dim,
            representatives: reps.iter().map(|v| c.form(k, v)).collect(),
        });
    }
    Ok(CohomologyTable::new(Theory::DeRham, entries))
}

fn bigraded_table(
    b: &Bicomplex,
    theory: Theory,
    spaces: impl Fn(i64, i64) -> (Subspace, Subspace) + Sync,
) -> Result<CohomologyTable> {
    let entries: Result<Vec<CohomologyEntry>> = b
        .bidegrees()
        .into_par_iter()
        .map(|(p, q)| {
            let (num, den) = spaces(p, q);
            let (dim, reps) = quotient(&num, &den, theory.tag())?;
            Ok(CohomologyEntry {
                p: p as usize,
                q: q as usize,
                dim,
                representatives: reps.iter().map(|v| b.form(p, q, v)).collect(),
            })
        })
        .collect();
    Ok(CohomologyTable::new(theory, entries?))
}

/// `Ker ∂̄ / Im ∂̄`, or `Ker ∂ / Im ∂` for the conjugate theory.
pub fn dolbeault(b: &Bicomplex, conjugate: bool) -> Result<CohomologyTable> {
    if conjugate {
        bigraded_table(b, Theory::DolbeaultConjugate, |p, q| {
            (kernel_basis(&b.del(p, q)), image(&b.del(p - 1, q)))
        })
    } else {
        bigraded_table(b, Theory::Dolbeault, |p, q| (kernel_basis(&b.dbar(p, q)), image(&b.dbar(p, q - 1))))
    }
}

/// `(Ker ∂ ∩ Ker ∂̄) / Im ∂∂̄`.
pub fn bott_chern(b: &Bicomplex) -> Result<CohomologyTable> {
    bigraded_table(b, Theory::BottChern, |p, q| {
        let num = kernel_basis(&b.del(p, q).vstack(&b.dbar(p, q)));
        (num, image(&b.del_dbar(p - 1, q - 1)))
    })
}

/// `Ker ∂∂̄ / (Im ∂ + Im ∂̄)`.
pub fn aeppli(b: &Bicomplex) -> Result<CohomologyTable> {
    bigraded_table(b, Theory::Aeppli, |p, q| {
        let den = image(&b.del(p - 1, q)).sum(&image(&b.dbar(p, q - 1)));
        (kernel_basis(&b.del_dbar(p, q)), den)
    })
}

/// De Rham of the total complex plus the four bigraded theories, in [`Theory::ALL`] order.
pub fn all_tables(b: &Bicomplex) -> Result<Vec<CohomologyTable>> {
    Ok(vec![
        de_rham(&b.total_complex()?)?,
        dolbeault(b, false)?,
        dolbeault(b, true)?,
        bott_chern(b)?,
        aeppli(b)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foliation::{basic_subcomplex, bigrade_split};
    use crate::model::bundled;
    use crate::scalar::rational;

    #[test]
    fn s6_tables() {
        let b = bigrade_split(&bundled::s6()).unwrap();
        let t = all_tables(&b).unwrap();
        assert_eq!(t[0].degree_dims(), vec![1, 1, 0, 1, 1]);
        assert_eq!(t[0].entry(1, 0).unwrap().representatives[0].to_string(), "β2 - β̄2");
        for (p, q) in [(2, 0), (1, 1), (0, 2)] {
            assert_eq!(t[1].dim(p, q), 0);
        }
        assert_eq!(t[1].dim(0, 1), 1);
        let bc = &t[3];
        assert_eq!(bc.dim(1, 1), 1);
        assert_eq!(bc.entry(1, 1).unwrap().representatives[0].to_string(), "β1^β̄1");
        assert_eq!(bc.dim(2, 0), 0);
        let a = &t[4];
        assert_eq!(a.dim(1, 1), 1);
        assert_eq!(a.dim(1, 0), 1);
        assert_eq!(a.entry(1, 0).unwrap().representatives[0].to_string(), "β2");
    }

    #[test]
    fn torus_theories_coincide() {
        let b = bigrade_split(&bundled::torus1()).unwrap();
        let t = all_tables(&b).unwrap();
        assert_eq!(t[0].degree_dims(), vec![1, 2, 1]);
        for table in &t[1..] {
            for (p, q) in b.bidegrees() {
                assert_eq!(table.dim(p as usize, q as usize), 1);
            }
        }
    }

    #[test]
    fn hopf_basic_cohomology() {
        let m = bundled::hopf_family();
        let h = de_rham(&basic_subcomplex(&m, &rational(1, 2)).unwrap()).unwrap();
        assert_eq!(h.degree_dims(), vec![1, 1, 0, 1, 1, 0]);
        let h0 = de_rham(&basic_subcomplex(&m, &rational(0, 1)).unwrap()).unwrap();
        assert_eq!(h0.degree_dims(), vec![1, 2, 2, 2, 1, 0]);
    }
}
