//! Serializable reports and their text, JSON and CSV renderings.
//!
//! JSON keys, in order: `model`, `parameter_value`, `theories`, `checks`, then the
//! optional sections `froelicher`, `inequality`, `decomposition`, `duality`,
//! `skewness`, `kaehler`, `orientability`, `sweep`. Absent sections are omitted, so an
//! empty report is `{"theories":[]}`. CSV carries one `theory,p,q,dim` row per table
//! entry and nothing else.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::analysis::{
    DdbarVerdict, InequalityReport, KaehlerVerdict, Orientability, SweepReport, WitnessCheck,
};
use crate::cohomology::{CohomologyTable, SpectralPages};
use crate::hodge::{DecompositionReport, DualityReport, SkewnessReport};
use crate::linalg::Matrix;
use crate::model::{ValidationReport, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format `{other}` (expected text, json or csv)")),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Report {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameter_value: Option<String>,
    pub theories: Vec<TheoryDto>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub froelicher: Option<FroelicherDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inequality: Option<InequalityDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duality: Option<DualityDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skewness: Option<SkewnessDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kaehler: Option<KaehlerDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orientability: Option<OrientabilityDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepDto>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoryDto {
    pub name: String,
    pub table: Vec<EntryDto>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryDto {
    pub p: usize,
    pub q: usize,
    pub dim: usize,
    pub representatives: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckDto {
    pub name: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FroelicherDto {
    /// `pages[r-1][p][q] = dim E_r^{p,q}`
    pub pages: Vec<Vec<Vec<usize>>>,
    pub degeneration: Option<usize>,
    pub de_rham: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityRowDto {
    pub k: usize,
    pub bott_chern: usize,
    pub aeppli: usize,
    pub de_rham: usize,
    pub lhs: usize,
    pub rhs: usize,
    pub slack: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityDto {
    pub rows: Vec<InequalityRowDto>,
    pub holds: bool,
    pub equality: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionRowDto {
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
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionDto {
    pub rows: Vec<DecompositionRowDto>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityRowDto {
    pub p: usize,
    pub q: usize,
    pub h_bc: usize,
    pub h_a_dual: usize,
    pub star_conjugation: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityDto {
    pub n: usize,
    pub orientable: bool,
    pub rows: Vec<DualityRowDto>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkewRowDto {
    pub degree: usize,
    pub dim: usize,
    pub skew: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkewnessDto {
    pub s: String,
    pub rows: Vec<SkewRowDto>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessCheckDto {
    pub real: bool,
    pub closed: bool,
    pub type_11: bool,
    pub top_power_nonzero: bool,
    pub positive_definite: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KaehlerDto {
    /// `witness`, `impossible-nondegenerate` or `inconclusive`.
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hermitian: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<WitnessCheckDto>,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrientabilityDto {
    pub top_degree: usize,
    pub dim: usize,
    pub orientable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representative: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepPointDto {
    pub s: String,
    pub subcomplex_dims: Vec<usize>,
    pub dims: Vec<usize>,
    pub orientable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub top_representative: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationDto {
    pub index: usize,
    pub degree: usize,
    pub dim: usize,
    pub reference_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemicontinuityDto {
    pub reference: usize,
    pub neighbours: Vec<usize>,
    pub holds: bool,
    pub violations: Vec<ViolationDto>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepDto {
    pub grid: Vec<String>,
    pub points: Vec<SweepPointDto>,
    pub jumps: Vec<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub semicontinuity: Option<SemicontinuityDto>,
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect()
}

impl TheoryDto {
    pub fn from_table(t: &CohomologyTable) -> Self {
        TheoryDto {
            name: t.name.clone(),
            table: t
                .entries
                .iter()
                .map(|e| EntryDto {
                    p: e.p,
                    q: e.q,
                    dim: e.dim,
                    representatives: e.representatives.iter().map(ToString::to_string).collect(),
                })
                .collect(),
        }
    }
}

impl Report {
    pub fn new(model: &str) -> Self {
        Report { model: Some(model.to_string()), ..Report::default() }
    }

    pub fn push_table(&mut self, t: &CohomologyTable) {
        self.theories.push(TheoryDto::from_table(t));
    }

    pub fn push_check(&mut self, name: &str, verdict: Verdict, witness: Option<String>, detail: Option<String>) {
        self.checks.push(CheckDto { name: name.into(), verdict: verdict.as_str().into(), witness, detail });
    }

    pub fn push_validation(&mut self, v: &ValidationReport) {
        for c in &v.checks {
            self.push_check(&c.name, c.verdict, c.witness.as_ref().map(ToString::to_string), c.detail.clone());
        }
    }

    pub fn push_ddbar(&mut self, v: &DdbarVerdict) {
        match &v.failure {
            None => self.push_check("ddbar-lemma", Verdict::Pass, None, None),
            Some(f) => self.push_check(
                "ddbar-lemma",
                Verdict::Fail,
                Some(f.witness.to_string()),
                Some(format!("bidegree ({},{}): {}", f.p, f.q, f.clause)),
            ),
        }
    }

    pub fn set_froelicher(&mut self, s: &SpectralPages) {
        self.froelicher = Some(FroelicherDto {
            pages: s.pages.clone(),
            degeneration: s.degeneration,
            de_rham: s.de_rham.clone(),
        });
    }

    pub fn set_inequality(&mut self, r: &InequalityReport) {
        self.inequality = Some(InequalityDto {
            rows: r
                .rows
                .iter()
                .map(|x| InequalityRowDto {
                    k: x.k,
                    bott_chern: x.bott_chern,
                    aeppli: x.aeppli,
                    de_rham: x.de_rham,
                    lhs: x.lhs,
                    rhs: x.rhs,
                    slack: x.slack,
                })
                .collect(),
            holds: r.holds(),
            equality: r.equality(),
        });
    }

    pub fn set_decomposition(&mut self, r: &DecompositionReport) {
        self.decomposition = Some(DecompositionDto {
            rows: r
                .rows
                .iter()
                .map(|x| DecompositionRowDto {
                    p: x.p,
                    q: x.q,
                    dim: x.dim,
                    ker_dbar_laplacian: x.ker_dbar_laplacian,
                    h_dbar: x.h_dbar,
                    ker_bc_laplacian: x.ker_bc_laplacian,
                    im_ddbar: x.im_ddbar,
                    im_adjoints: x.im_adjoints,
                    h_bc: x.h_bc,
                    ker_a_laplacian: x.ker_a_laplacian,
                    im_sum: x.im_sum,
                    im_ddbar_adjoint: x.im_ddbar_adjoint,
                    h_a: x.h_a,
                    holds: x.holds(),
                })
                .collect(),
            holds: r.holds(),
        });
    }

    pub fn set_duality(&mut self, r: &DualityReport) {
        self.duality = Some(DualityDto {
            n: r.n,
            orientable: r.orientable,
            rows: r
                .rows
                .iter()
                .map(|x| DualityRowDto {
                    p: x.p,
                    q: x.q,
                    h_bc: x.h_bc,
                    h_a_dual: x.h_a_dual,
                    star_conjugation: x.conjugation_identity,
                })
                .collect(),
            holds: r.holds(),
        });
    }

    pub fn set_skewness(&mut self, r: &SkewnessReport) {
        self.skewness = Some(SkewnessDto {
            s: r.s0.to_string(),
            rows: r
                .rows
                .iter()
                .map(|x| SkewRowDto {
                    degree: x.degree,
                    dim: x.dim,
                    skew: x.skew,
                    witness: x.witness.as_ref().map(|(u, v)| [u.to_string(), v.to_string()]),
                })
                .collect(),
            holds: r.holds(),
        });
    }

    pub fn set_kaehler(&mut self, v: &KaehlerVerdict, check: Option<&WitnessCheck>, trials: usize, seed: u64) {
        let verification = check.map(|c| WitnessCheckDto {
            real: c.real,
            closed: c.closed,
            type_11: c.type_11,
            top_power_nonzero: c.top_power_nonzero,
            positive_definite: c.positive_definite,
        });
        let dto = match v {
            KaehlerVerdict::Witness(w) => KaehlerDto {
                verdict: "witness".into(),
                form: Some(w.form.to_string()),
                hermitian: Some(matrix_strings(&w.hermitian)),
                verification,
                trials,
                seed,
            },
            KaehlerVerdict::ImpossibleNondegenerate => KaehlerDto {
                verdict: "impossible-nondegenerate".into(),
                form: None,
                hermitian: None,
                verification: None,
                trials,
                seed,
            },
            KaehlerVerdict::Inconclusive { trials } => KaehlerDto {
                verdict: "inconclusive".into(),
                form: None,
                hermitian: None,
                verification: None,
                trials: *trials,
                seed,
            },
        };
        self.kaehler = Some(dto);
    }

    pub fn set_orientability(&mut self, o: &Orientability) {
        self.orientability = Some(OrientabilityDto {
            top_degree: o.top_degree,
            dim: o.dim,
            orientable: o.orientable,
            representative: o.representative.as_ref().map(ToString::to_string),
        });
    }

    /// Adds the sweep section and one `deRham@s=<value>` table per grid point.
    pub fn set_sweep(&mut self, r: &SweepReport) {
        for p in &r.points {
            self.push_table(&p.table);
        }
        self.sweep = Some(SweepDto {
            grid: r.points.iter().map(|p| p.s.to_string()).collect(),
            points: r
                .points
                .iter()
                .map(|p| SweepPointDto {
                    s: p.s.to_string(),
                    subcomplex_dims: p.subcomplex_dims.clone(),
                    dims: p.dims.clone(),
                    orientable: p.orientable,
                    top_representative: p.top_representative.as_ref().map(ToString::to_string),
                })
                .collect(),
            jumps: r.jumps.iter().map(|&(a, b)| [a, b]).collect(),
            semicontinuity: r.semicontinuity.as_ref().map(|c| SemicontinuityDto {
                reference: c.reference,
                neighbours: c.neighbours.clone(),
                holds: c.holds(),
                violations: c
                    .violations
                    .iter()
                    .map(|&(index, degree, dim, reference_dim)| ViolationDto { index, degree, dim, reference_dim })
                    .collect(),
            }),
        });
    }
}

pub fn serialize_report(r: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec(r).expect("report DTOs always serialize");
            out.push(b'\n');
            out
        }
        Format::Csv => render_csv(r).into_bytes(),
        Format::Text => render_text(r).into_bytes(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_csv(r: &Report) -> String {
    let mut out = String::from("theory,p,q,dim\n");
    for t in &r.theories {
        for e in &t.table {
            let _ = writeln!(out, "{},{},{},{}", csv_field(&t.name), e.p, e.q, e.dim);
        }
    }
    out
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_text(r: &Report) -> String {
    let mut out = String::new();
    if let Some(m) = &r.model {
        let _ = writeln!(out, "model: {m}");
    }
    if let Some(s) = &r.parameter_value {
        let _ = writeln!(out, "s = {s}");
    }
    for t in &r.theories {
        let _ = writeln!(out, "\n[{}]", t.name);
        for e in &t.table {
            let _ = write!(out, "  ({},{})  dim {}", e.p, e.q, e.dim);
            if !e.representatives.is_empty() {
                let _ = write!(out, "  {}", e.representatives.join("; "));
            }
            out.push('\n');
        }
    }
    if !r.checks.is_empty() {
        out.push_str("\nchecks:\n");
        for c in &r.checks {
            let _ = write!(out, "  {:<18} {}", c.name, c.verdict);
            if let Some(d) = &c.detail {
                let _ = write!(out, "  {d}");
            }
            if let Some(w) = &c.witness {
                let _ = write!(out, "  witness {w}");
            }
            out.push('\n');
        }
    }
    if let Some(f) = &r.froelicher {
        out.push_str("\nFrölicher spectral sequence:\n");
        for (i, page) in f.pages.iter().enumerate() {
            let _ = writeln!(out, "  E_{}:", i + 1);
            for (p, row) in page.iter().enumerate() {
                let _ = writeln!(out, "    p={p}: {}", join(row));
            }
        }
        match f.degeneration {
            Some(r) => {
                let _ = writeln!(out, "  degenerates at E_{r}");
            }
            None => out.push_str("  no degeneration within the computed pages\n"),
        }
        let _ = writeln!(out, "  de Rham: {}", join(&f.de_rham));
    }
    if let Some(q) = &r.inequality {
        out.push_str("\nFrölicher-type inequality:\n   k  BC   A  dR  lhs  rhs  slack\n");
        for x in &q.rows {
            let _ = writeln!(
                out,
                "  {:>2} {:>3} {:>3} {:>3} {:>4} {:>4} {:>6}",
                x.k, x.bott_chern, x.aeppli, x.de_rham, x.lhs, x.rhs, x.slack
            );
        }
        let _ = writeln!(out, "  holds: {}, equality: {}", yes_no(q.holds), yes_no(q.equality));
    }
    if let Some(d) = &r.decomposition {
        out.push_str("\nHodge decompositions:\n  (p,q) dim | kerΔ∂̄ h∂̄ | kerΔBC imBC imBC* hBC | kerΔA imA imA* hA | ok\n");
        for x in &d.rows {
            let _ = writeln!(
                out,
                "  ({},{}) {:>3} | {:>3} {:>3} | {:>3} {:>3} {:>3} {:>3} | {:>3} {:>3} {:>3} {:>3} | {}",
                x.p,
                x.q,
                x.dim,
                x.ker_dbar_laplacian,
                x.h_dbar,
                x.ker_bc_laplacian,
                x.im_ddbar,
                x.im_adjoints,
                x.h_bc,
                x.ker_a_laplacian,
                x.im_sum,
                x.im_ddbar_adjoint,
                x.h_a,
                yes_no(x.holds)
            );
        }
        let _ = writeln!(out, "  holds: {}", yes_no(d.holds));
    }
    if let Some(d) = &r.duality {
        let _ = writeln!(out, "\nBott-Chern/Aeppli duality (n = {}, orientable: {}):", d.n, yes_no(d.orientable));
        for x in &d.rows {
            let _ = writeln!(
                out,
                "  ({},{})  h_BC {}  h_A(n-p,n-q) {}  star identity {}",
                x.p,
                x.q,
                x.h_bc,
                x.h_a_dual,
                yes_no(x.star_conjugation)
            );
        }
        let _ = writeln!(out, "  holds: {}", yes_no(d.holds));
    }
    if let Some(s) = &r.skewness {
        let _ = writeln!(out, "\nskewness of L_ξ on Ker ι at s = {}:", s.s);
        for x in &s.rows {
            let _ = write!(out, "  degree {}  dim {}  skew {}", x.degree, x.dim, yes_no(x.skew));
            if let Some([u, v]) = &x.witness {
                let _ = write!(out, "  witness ({u}, {v})");
            }
            out.push('\n');
        }
        let _ = writeln!(out, "  holds: {}", yes_no(s.holds));
    }
    if let Some(k) = &r.kaehler {
        let _ = writeln!(out, "\nKähler search (trials {}, seed {}): {}", k.trials, k.seed, k.verdict);
        if let Some(f) = &k.form {
            let _ = writeln!(out, "  ω = {f}");
        }
        if let Some(h) = &k.hermitian {
            for row in h {
                let _ = writeln!(out, "  [{}]", row.join(", "));
            }
        }
        if let Some(v) = &k.verification {
            let _ = writeln!(
                out,
                "  real {}  closed {}  (1,1) {}  ω^n≠0 {}  positive {}",
                yes_no(v.real),
                yes_no(v.closed),
                yes_no(v.type_11),
                yes_no(v.top_power_nonzero),
                yes_no(v.positive_definite)
            );
        }
    }
    if let Some(o) = &r.orientability {
        let _ = writeln!(
            out,
            "\nhomological orientability: {} (dim H^{} = {})",
            yes_no(o.orientable),
            o.top_degree,
            o.dim
        );
        if let Some(rep) = &o.representative {
            let _ = writeln!(out, "  top class {rep}");
        }
    }
    if let Some(s) = &r.sweep {
        out.push_str("\nsweep:\n");
        for p in &s.points {
            let _ = write!(out, "  s = {:<6} dims ({})  orientable {}", p.s, join(&p.dims), yes_no(p.orientable));
            if let Some(t) = &p.top_representative {
                let _ = write!(out, "  top {t}");
            }
            out.push('\n');
        }
        if s.jumps.is_empty() {
            out.push_str("  no jumps\n");
        }
        for [a, b] in &s.jumps {
            let _ = writeln!(out, "  jump between s = {} and s = {}", s.grid[*a], s.grid[*b]);
        }
        if let Some(c) = &s.semicontinuity {
            let _ = writeln!(
                out,
                "  semicontinuity at s = {}: {}",
                s.grid[c.reference],
                if c.holds { "holds" } else { "violated" }
            );
            for v in &c.violations {
                let _ = writeln!(
                    out,
                    "    s = {} degree {}: {} > {}",
                    s.grid[v.index], v.degree, v.dim, v.reference_dim
                );
            }
        }
    }
    if out.starts_with('\n') {
        out.remove(0);
    }
    out
}
