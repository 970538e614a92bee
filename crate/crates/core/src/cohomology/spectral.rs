use crate::error::{FolError, Result};
use crate::foliation::Bicomplex;
use crate::linalg::{kernel_basis, Matrix, Subspace};

use super::de_rham;

/// Dimensions of the pages `E_1, …, E_{r_max}` of the Frölicher spectral sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralPages {
    /// `pages[r − 1][p][q] = dim E_r^{p,q}`.
    pub pages: Vec<Vec<Vec<usize>>>,
    /// Smallest `r` whose total dimensions match de Rham in every degree.
    pub degeneration: Option<usize>,
    /// De Rham dimensions of the total complex.
    pub de_rham: Vec<usize>,
}

impl SpectralPages {
    pub fn dim(&self, r: usize, p: usize, q: usize) -> usize {
        self.pages[r - 1].get(p).and_then(|row| row.get(q)).copied().unwrap_or(0)
    }

    /// `Σ_{p+q=k} dim E_r^{p,q}` for every `k`.
    pub fn totals(&self, r: usize) -> Vec<usize> {
        let page = &self.pages[r - 1];
        let mut out = vec![0; self.de_rham.len()];
        for (p, row) in page.iter().enumerate() {
            for (q, d) in row.iter().enumerate() {
                out[p + q] += d;
            }
        }
        out
    }

    /// The last computed page, which equals `E_∞` once `r_max` is large enough.
    pub fn last(&self) -> usize {
        self.pages.len()
    }
}

/// Kernel of a block system: unknowns live in the listed bidegrees and each equation
/// is a sum of blocks landing in one target bidegree.
/// An equation block: target bidegree and `(variable index, operator)` terms.
type Equation = ((i64, i64), Vec<(usize, Matrix)>);

fn block_kernel(b: &Bicomplex, vars: &[(i64, i64)], eqs: &[Equation]) -> Subspace {
    let offsets: Vec<usize> = vars
        .iter()
        .scan(0, |acc, &(p, q)| {
            let o = *acc;
            *acc += b.dim(p, q);
            Some(o)
        })
        .collect();
    let cols: usize = vars.iter().map(|&(p, q)| b.dim(p, q)).sum();
    let rows: usize = eqs.iter().map(|&((p, q), _)| b.dim(p, q)).sum();
    let mut m = Matrix::zeros(rows, cols);
    let mut r0 = 0;
    for ((p, q), blocks) in eqs {
        for (var, block) in blocks {
            m.set_block(r0, offsets[*var], block);
        }
        r0 += b.dim(*p, *q);
    }
    kernel_basis(&m)
}

/// `x_0 ∈ A^{p,q}` extending to a zigzag `∂̄x_0 = 0, ∂x_{i−1} + ∂̄x_i = 0` of length `r`.
fn cycles(b: &Bicomplex, r: usize, p: i64, q: i64) -> Subspace {
    let r = r as i64;
    let vars: Vec<(i64, i64)> = (0..r).map(|i| (p + i, q - i)).collect();
    let mut eqs = vec![((p, q + 1), vec![(0, b.dbar(p, q))])];
    for i in 1..r {
        eqs.push((
            (p + i, q - i + 1),
            vec![((i - 1) as usize, b.del(p + i - 1, q - i + 1)), (i as usize, b.dbar(p + i, q - i))],
        ));
    }
    block_kernel(b, &vars, &eqs).project(0..b.dim(p, q))
}

/// `∂̄w + ∂y_{r−1}` where `∂̄y_1 = 0` and `∂y_j + ∂̄y_{j+1} = 0`.
fn boundaries(b: &Bicomplex, r: usize, p: i64, q: i64) -> Subspace {
    let r = r as i64;
    // unknowns: w, y_1, …, y_{r−1}
    let mut vars = vec![(p, q - 1)];
    vars.extend((1..r).map(|j| (p - r + j, q + r - j - 1)));
    let mut eqs = Vec::new();
    if r >= 2 {
        eqs.push(((p - r + 1, q + r - 1), vec![(1, b.dbar(p - r + 1, q + r - 2))]));
    }
    for j in 1..r - 1 {
        let (a, c) = (p - r + j, q + r - j - 1);
        eqs.push(((a + 1, c), vec![(j as usize, b.del(a, c)), (j as usize + 1, b.dbar(a + 1, c - 1))]));
    }
    let kernel = block_kernel(b, &vars, &eqs);
    let mut map = Matrix::zeros(b.dim(p, q), kernel.ambient());
    map.set_block(0, 0, &b.dbar(p, q - 1));
    if r >= 2 {
        let off = kernel.ambient() - b.dim(p - 1, q);
        map.set_block(0, off, &b.del(p - 1, q));
    }
    kernel.map(&map)
}

/// Pages `E_1 … E_{r_max}` via `E_r = Z_r / B_r`, with `E_1` the Dolbeault cohomology.
pub fn froelicher_pages(b: &Bicomplex, r_max: usize) -> Result<SpectralPages> {
    let r_max = r_max.max(1);
    let de_rham = de_rham(&b.total_complex()?)?.degree_dims();
    let mut pages = Vec::with_capacity(r_max);
    for r in 1..=r_max {
        let mut page = vec![vec![0; b.nq() + 1]; b.np() + 1];
        for (p, q) in b.bidegrees() {
            let z = cycles(b, r, p, q);
            let bd = boundaries(b, r, p, q);
            if !z.contains(&bd) {
                return Err(FolError::InternalConsistency(format!("B_{r} ⊄ Z_{r} at ({p},{q})")));
            }
            page[p as usize][q as usize] = z.dim() - bd.dim();
        }
        pages.push(page);
    }
    let mut out = SpectralPages { pages, degeneration: None, de_rham };
    out.degeneration = (1..=r_max).find(|&r| out.totals(r) == out.de_rham);
    Ok(out)
}

/// Default number of pages: enough for every differential to have vanished.
pub fn default_pages(b: &Bicomplex) -> usize {
    b.np().min(b.nq()) + 2
}
