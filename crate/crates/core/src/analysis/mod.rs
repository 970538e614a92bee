//! Diagnostics on top of the cohomology engine: the ∂∂̄-lemma, the Frölicher-type
//! inequality, homological orientability, Kähler witnesses and parameter sweeps.

mod kaehler;
mod sweep;

use std::fmt;

use crate::algebra::Form;
use crate::cohomology::{aeppli, bott_chern, de_rham};
use crate::error::{FolError, Result};
use crate::foliation::{Bicomplex, GradedComplex};
use crate::linalg::{image, kernel_basis};

pub use kaehler::{kaehler_witness, verify_kaehler_witness, KaehlerVerdict, KaehlerWitness, WitnessCheck};
pub use sweep::{parameter_sweep, SemicontinuityCheck, SweepPoint, SweepReport};

/// Which of the two space equalities of the ∂∂̄-lemma failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DdbarClause {
    /// `Ker ∂̄ ∩ Im ∂ ≠ Im ∂∂̄`
    DbarClosedDelExact,
    /// `Ker ∂ ∩ Im ∂̄ ≠ Im ∂∂̄`
    DelClosedDbarExact,
}

impl fmt::Display for DdbarClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DdbarClause::DbarClosedDelExact => "Ker∂̄∩Im∂ ≠ Im∂∂̄",
            DdbarClause::DelClosedDbarExact => "Ker∂∩Im∂̄ ≠ Im∂∂̄",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DdbarFailure {
    pub p: usize,
    pub q: usize,
    pub clause: DdbarClause,
    /// Lies in the larger space and not in `Im ∂∂̄`.
    pub witness: Form,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DdbarVerdict {
    pub holds: bool,
    pub failure: Option<DdbarFailure>,
}

/// Decides `Ker∂ ∩ Im∂̄ = Ker∂̄ ∩ Im∂ = Im∂∂̄` bidegree by bidegree in lexicographic
/// order, returning the first failure with an echelon witness.
pub fn ddbar_check(b: &Bicomplex) -> Result<DdbarVerdict> {
    for (p, q) in b.bidegrees() {
        let ddbar = image(&b.del_dbar(p - 1, q - 1));
        let dbar_closed_del_exact = kernel_basis(&b.dbar(p, q)).intersect(&image(&b.del(p - 1, q)));
        let del_closed_dbar_exact = kernel_basis(&b.del(p, q)).intersect(&image(&b.dbar(p, q - 1)));
        for (clause, space) in [
            (DdbarClause::DbarClosedDelExact, dbar_closed_del_exact),
            (DdbarClause::DelClosedDbarExact, del_closed_dbar_exact),
        ] {
            if space == ddbar {
                continue;
            }
            let reps = space.complement_of(&ddbar).map_err(|_| {
                FolError::InternalConsistency(format!("Im∂∂̄ not contained in {clause} space at ({p},{q})"))
            })?;
            let v = &reps[0];
            if !space.contains_vector(v) || ddbar.contains_vector(v) {
                return Err(FolError::InternalConsistency("ddbar witness failed its membership test".into()));
            }
            return Ok(DdbarVerdict {
                holds: false,
                failure: Some(DdbarFailure { p: p as usize, q: q as usize, clause, witness: b.form(p, q, v) }),
            });
        }
    }
    Ok(DdbarVerdict { holds: true, failure: None })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityRow {
    pub k: usize,
    pub bott_chern: usize,
    pub aeppli: usize,
    pub de_rham: usize,
    pub lhs: usize,
    pub rhs: usize,
    /// `lhs − rhs`; negative would contradict the inequality.
    pub slack: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityReport {
    pub rows: Vec<InequalityRow>,
}

impl InequalityReport {
    /// The inequality holds in every degree.
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.slack >= 0)
    }

    /// Equality in every degree.
    pub fn equality(&self) -> bool {
        self.rows.iter().all(|r| r.slack == 0)
    }
}

/// `Σ_{p+q=k} (h_BC + h_A)` against `2 · dim H^k` for every total degree.
pub fn froelicher_inequality_report(b: &Bicomplex) -> Result<InequalityReport> {
    let dr = de_rham(&b.total_complex()?)?.degree_dims();
    let bc = bott_chern(b)?.degree_dims();
    let a = aeppli(b)?.degree_dims();
    let rows = (0..dr.len())
        .map(|k| {
            let (x, y) = (bc.get(k).copied().unwrap_or(0), a.get(k).copied().unwrap_or(0));
            let lhs = x + y;
            let rhs = 2 * dr[k];
            InequalityRow { k, bott_chern: x, aeppli: y, de_rham: dr[k], lhs, rhs, slack: lhs as i64 - rhs as i64 }
        })
        .collect();
    Ok(InequalityReport { rows })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Orientability {
    /// Highest degree in which the complex is nonzero.
    pub top_degree: usize,
    pub dim: usize,
    pub representative: Option<Form>,
    pub orientable: bool,
}

/// Whether the top-degree cohomology is one-dimensional.
pub fn homological_orientability_check(c: &GradedComplex) -> Result<Orientability> {
    let Some(top) = c.top_nonzero_degree() else {
        return Ok(Orientability { top_degree: 0, dim: 0, representative: None, orientable: false });
    };
    let table = de_rham(c)?;
    let entry = table.entry(top, 0).expect("every degree has an entry");
    Ok(Orientability {
        top_degree: top,
        dim: entry.dim,
        representative: entry.representatives.first().cloned(),
        orientable: entry.dim == 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foliation::{basic_subcomplex, bigrade_split};
    use crate::model::bundled;
    use crate::scalar::rational;

    #[test]
    fn s6_ddbar_fails_at_11() {
        let b = bigrade_split(&bundled::s6()).unwrap();
        let v = ddbar_check(&b).unwrap();
        assert!(!v.holds);
        let f = v.failure.unwrap();
        assert_eq!((f.p, f.q), (1, 1));
        assert_eq!(f.clause, DdbarClause::DbarClosedDelExact);
        assert_eq!(f.witness.to_string(), "β1^β̄1");
    }

    #[test]
    fn torus_ddbar_holds() {
        for m in [bundled::torus1(), bundled::torus2()] {
            assert!(ddbar_check(&bigrade_split(&m).unwrap()).unwrap().holds);
        }
    }

    #[test]
    fn s6_inequality() {
        let b = bigrade_split(&bundled::s6()).unwrap();
        let r = froelicher_inequality_report(&b).unwrap();
        let slack: Vec<i64> = r.rows.iter().map(|r| r.slack).collect();
        assert_eq!(slack, vec![0, 0, 2, 0, 0]);
        assert_eq!((r.rows[1].lhs, r.rows[1].rhs), (2, 2));
        assert_eq!((r.rows[1].bott_chern, r.rows[1].aeppli), (0, 2));
    }

    #[test]
    fn orientability() {
        let b = bigrade_split(&bundled::s6()).unwrap();
        let o = homological_orientability_check(&b.total_complex().unwrap()).unwrap();
        assert!(o.orientable);
        assert_eq!(o.top_degree, 4);
        let m = bundled::hopf_family();
        let c = basic_subcomplex(&m, &rational(1, 2)).unwrap();
        let o = homological_orientability_check(&c).unwrap();
        assert!(o.orientable);
        assert_eq!(o.top_degree, 4);
        // proportional to α1∧α2∧(γ − α3)∧α4
        let g = |n: &str| m.generator(n).unwrap();
        let expected = g("α1").wedge(&g("α2")).unwrap().wedge(&(&g("γ") - &g("α3"))).unwrap().wedge(&g("α4")).unwrap();
        let rep = o.representative.unwrap();
        let ratio = expected.terms().iter().next().map(|(mono, c)| (rep.coefficient(*mono), c.clone())).unwrap();
        let scale = &ratio.0.as_constant().unwrap() / &ratio.1.as_constant().unwrap();
        assert_eq!(rep, expected.scale_scalar(&scale));
    }
}
