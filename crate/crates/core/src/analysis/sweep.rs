use rayon::prelude::*;

use crate::algebra::Form;
use crate::cohomology::{de_rham, CohomologyTable};
use crate::error::{FolError, Result};
use crate::foliation::basic_subcomplex;
use crate::model::{validate_model, Model};
use crate::scalar::Rational;

use super::homological_orientability_check;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub s: Rational,
    /// Dimensions of the basic subcomplex, degree by degree.
    pub subcomplex_dims: Vec<usize>,
    /// Basic de Rham cohomology; the table is named `deRham@s=<value>`.
    pub table: CohomologyTable,
    /// Basic Betti numbers up to the top nonzero degree of the subcomplex.
    pub dims: Vec<usize>,
    pub orientable: bool,
    pub top_representative: Option<Form>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemicontinuityCheck {
    pub reference: usize,
    pub neighbours: Vec<usize>,
    /// `(grid index, degree, dim there, dim at the reference)` where the neighbour is larger.
    pub violations: Vec<(usize, usize, usize, usize)>,
}

impl SemicontinuityCheck {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub model: String,
    pub points: Vec<SweepPoint>,
    /// Adjacent grid indices whose dimension vectors differ.
    pub jumps: Vec<(usize, usize)>,
    pub semicontinuity: Option<SemicontinuityCheck>,
}

fn padded(v: &[usize], len: usize) -> Vec<usize> {
    let mut out = v.to_vec();
    out.resize(len, 0);
    out
}

/// Evaluates the basic cohomology at each grid value (in parallel, collected in grid
/// order), lists jumps, and compares the neighbours of `reference` against it.
pub fn parameter_sweep(m: &Model, grid: &[Rational], reference: Option<usize>) -> Result<SweepReport> {
    if grid.is_empty() {
        return Err(FolError::Usage("the sweep grid is empty".into()));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(FolError::Usage("the sweep grid must be strictly increasing".into()));
    }
    if reference.is_some_and(|r| r >= grid.len()) {
        return Err(FolError::Usage("the reference value is not on the grid".into()));
    }
    if m.contraction().is_none() {
        return Err(FolError::MissingFoliation);
    }
    validate_model(m).into_result()?;

    let points: Result<Vec<SweepPoint>> = grid
        .par_iter()
        .map(|s| {
            let c = basic_subcomplex(m, s)?;
            let mut table = de_rham(&c)?;
            table.name = format!("deRham@s={s}");
            let orient = homological_orientability_check(&c)?;
            let top = c.top_nonzero_degree().unwrap_or(0);
            let dims = table.degree_dims()[..=top].to_vec();
            Ok(SweepPoint {
                s: s.clone(),
                subcomplex_dims: c.dims()[..=top].to_vec(),
                table,
                dims,
                orientable: orient.orientable,
                top_representative: orient.representative,
            })
        })
        .collect();
    let points = points?;

    let width = points.iter().map(|p| p.dims.len()).max().unwrap_or(0);
    let jumps = (1..points.len())
        .filter(|&i| padded(&points[i - 1].dims, width) != padded(&points[i].dims, width))
        .map(|i| (i - 1, i))
        .collect();

    let semicontinuity = reference.map(|r| {
        let neighbours: Vec<usize> = [r.checked_sub(1), Some(r + 1)]
            .into_iter()
            .flatten()
            .filter(|&i| i < points.len())
            .collect();
        let base = padded(&points[r].dims, width);
        let mut violations = Vec::new();
        for &i in &neighbours {
            for (k, (&x, &y)) in padded(&points[i].dims, width).iter().zip(&base).enumerate() {
                if x > y {
                    violations.push((i, k, x, y));
                }
            }
        }
        SemicontinuityCheck { reference: r, neighbours, violations }
    });

    Ok(SweepReport { model: m.name().to_string(), points, jumps, semicontinuity })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::bundled;
    use crate::scalar::rational;

    #[test]
    fn hopf_sweep() {
        let grid = [rational(0, 1), rational(1, 7), rational(1, 2)];
        let r = parameter_sweep(&bundled::hopf_family(), &grid, Some(0)).unwrap();
        assert_eq!(r.points[0].dims, vec![1, 2, 2, 2, 1]);
        assert_eq!(r.points[1].dims, vec![1, 1, 0, 1, 1]);
        assert_eq!(r.points[2].dims, vec![1, 1, 0, 1, 1]);
        assert_eq!(r.jumps, vec![(0, 1)]);
        assert!(r.semicontinuity.unwrap().holds());
        assert_eq!(r.points[1].table.name, "deRham@s=1/7");
    }

    #[test]
    fn bad_grids() {
        let m = bundled::hopf_family();
        assert!(matches!(parameter_sweep(&m, &[], None), Err(FolError::Usage(_))));
        let g = [rational(1, 2), rational(0, 1)];
        assert!(matches!(parameter_sweep(&m, &g, None), Err(FolError::Usage(_))));
    }
}
