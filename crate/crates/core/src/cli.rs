//! The `folcoh` command line.
//!
//! Exit codes: 0 on success, 1 when the requested check fails, 2 on usage, parse or
//! input errors.

use std::ffi::OsString;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;

use crate::analysis::{
    ddbar_check, froelicher_inequality_report, homological_orientability_check, kaehler_witness,
    parameter_sweep, verify_kaehler_witness, KaehlerVerdict,
};
use crate::cohomology::{aeppli, bott_chern, de_rham, default_pages, dolbeault, froelicher_pages};
use crate::error::{FolError, Result};
use crate::foliation::{basic_subcomplex, bigrade_split, Bicomplex, GradedComplex};
use crate::hodge::{decomposition_check, duality_check, lie_skewness_check, MetricContext};
use crate::model::{bundled, parse_model, validate_model, Model, Verdict};
use crate::report::{serialize_report, Format, Report};
use crate::scalar::{parse_rational, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoryArg {
    Dr,
    Dolbeault,
    Bc,
    Aeppli,
    All,
}

#[derive(Debug, Parser)]
#[command(name = "folcoh", version, about = "Exact basic cohomology of finite foliation models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format: text, json or csv.
    #[arg(long, global = true, default_value = "text", value_parser = parse_format)]
    pub format: Format,

    /// Evaluate the family parameter, as `s=<rational>`.
    #[arg(long, global = true, value_name = "s=VALUE")]
    pub at: Option<String>,

    /// Comma-separated rational grid for `sweep`.
    #[arg(long, global = true, value_name = "LIST")]
    pub grid: Option<String>,

    /// Random candidates tried by the Kähler search.
    #[arg(long, global = true, default_value_t = 200)]
    pub trials: usize,

    /// Seed for the Kähler search.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Which cohomology theories to compute.
    #[arg(long, global = true, value_enum, default_value = "all")]
    pub theory: TheoryArg,

    /// Grid value whose neighbours are compared against it in `sweep`.
    #[arg(long, global = true, value_name = "VALUE")]
    pub reference: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the structural checks on a model.
    Validate { model: String },
    /// Compute cohomology tables.
    Cohomology { model: String },
    /// Decide the ∂∂̄-lemma.
    Ddbar { model: String },
    /// Frölicher spectral-sequence pages and the Frölicher-type inequality.
    Froelicher { model: String },
    /// Laplacian decompositions, or skewness of L_ξ for foliation models.
    Hodge { model: String },
    /// Bott-Chern/Aeppli duality through the star operator.
    Duality { model: String },
    /// Search for a transverse Kähler form.
    Kaehler { model: String },
    /// Basic cohomology along a parameter grid.
    Sweep { model: String },
    /// Homological orientability.
    Orient { model: String },
}

/// A subcommand without its model argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Validate,
    Cohomology,
    Ddbar,
    Froelicher,
    Hodge,
    Duality,
    Kaehler,
    Sweep,
    Orient,
}

impl Command {
    fn split(&self) -> (Action, &str) {
        match self {
            Command::Validate { model } => (Action::Validate, model),
            Command::Cohomology { model } => (Action::Cohomology, model),
            Command::Ddbar { model } => (Action::Ddbar, model),
            Command::Froelicher { model } => (Action::Froelicher, model),
            Command::Hodge { model } => (Action::Hodge, model),
            Command::Duality { model } => (Action::Duality, model),
            Command::Kaehler { model } => (Action::Kaehler, model),
            Command::Sweep { model } => (Action::Sweep, model),
            Command::Orient { model } => (Action::Orient, model),
        }
    }
}

/// Everything a subcommand reads besides the model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub at: Option<String>,
    pub grid: Option<String>,
    pub reference: Option<String>,
    pub trials: usize,
    pub seed: u64,
    pub theory: TheoryArg,
}

impl Default for Options {
    fn default() -> Self {
        Options { at: None, grid: None, reference: None, trials: 200, seed: 0, theory: TheoryArg::All }
    }
}

impl Cli {
    fn options(&self) -> Options {
        Options {
            at: self.at.clone(),
            grid: self.grid.clone(),
            reference: self.reference.clone(),
            trials: self.trials,
            seed: self.seed,
            theory: self.theory,
        }
    }
}

fn parse_format(s: &str) -> std::result::Result<Format, String> {
    s.parse()
}

/// Process output: exit code, stdout bytes and stderr text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

/// Runs the CLI on `args` (including the program name) without touching the process.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: Vec::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text.into_bytes(), stderr: String::new() }
            };
        }
    };
    let mut stderr = String::new();
    let (action, path) = cli.command.split();
    let result = load_model(path).and_then(|m| execute(&m, action, &cli.options(), &mut stderr));
    match result {
        Ok((code, report)) => Outcome { code, stdout: serialize_report(&report, cli.format), stderr },
        Err(e) => {
            stderr.push_str(&format!("error: {e}\n"));
            Outcome { code: EXIT_USAGE, stdout: Vec::new(), stderr }
        }
    }
}

/// Reads a model from a path, or from the bundled set as `bundled:<name>`.
pub fn load_model(arg: &str) -> Result<Model> {
    let (text, label) = match arg.strip_prefix("bundled:") {
        Some(name) => {
            let src = bundled::source(name).ok_or_else(|| FolError::Io {
                path: arg.to_string(),
                message: "no such bundled model".into(),
            })?;
            (src.to_string(), arg.to_string())
        }
        None => {
            let text = std::fs::read_to_string(Path::new(arg))
                .map_err(|e| FolError::Io { path: arg.to_string(), message: e.to_string() })?;
            (text, arg.to_string())
        }
    };
    parse_model(&text).map_err(|e| FolError::Io { path: label, message: e.to_string() })
}

fn parse_at(cli: &Options, m: &Model) -> Result<Option<Rational>> {
    let Some(raw) = &cli.at else { return Ok(None) };
    let value = match raw.split_once('=') {
        Some((name, v)) => {
            if Some(name.trim()) != m.param_name() {
                return Err(FolError::Usage(format!("model `{}` has no parameter `{}`", m.name(), name.trim())));
            }
            v
        }
        None => raw.as_str(),
    };
    if !m.is_parametric() {
        return Err(FolError::Usage(format!("model `{}` has no parameter", m.name())));
    }
    parse_rational(value.trim())
        .map(Some)
        .ok_or_else(|| FolError::Usage(format!("`{value}` is not a rational number")))
}

fn parse_grid(cli: &Options) -> Result<Vec<Rational>> {
    let raw = cli.grid.as_deref().ok_or_else(|| FolError::Usage("sweep needs --grid".into()))?;
    raw.split(',')
        .map(|x| parse_rational(x.trim()).ok_or_else(|| FolError::Usage(format!("`{x}` is not a rational number"))))
        .collect()
}

/// The model with the parameter fixed, or an error if the command needs one and none was given.
fn fixed(m: &Model, at: &Option<Rational>) -> Result<Model> {
    match at {
        Some(s) => Ok(m.evaluate(s)),
        None if m.is_parametric() => {
            Err(FolError::Usage(format!("model `{}` depends on s; pass --at s=<value>", m.name())))
        }
        None => Ok(m.clone()),
    }
}

/// Basic subcomplex for foliation models, otherwise the full complex.
fn working_complex(m: &Model, at: &Option<Rational>) -> Result<GradedComplex> {
    if m.contraction().is_some() {
        let s = match at {
            Some(s) => s.clone(),
            None if m.is_parametric() => {
                return Err(FolError::Usage(format!("model `{}` depends on s; pass --at s=<value>", m.name())))
            }
            None => Rational::zero(),
        };
        basic_subcomplex(m, &s)
    } else {
        GradedComplex::full(&fixed(m, at)?)
    }
}

fn bicomplex(m: &Model, at: &Option<Rational>) -> Result<Bicomplex> {
    bigrade_split(&fixed(m, at)?)
}

fn warn_on(stderr: &mut String, m: &Model) -> Result<()> {
    let v = validate_model(m);
    for w in v.warnings() {
        stderr.push_str(&format!("warning: {}: {}\n", w.name, w.detail.as_deref().unwrap_or("")));
    }
    v.into_result().map(|_| ())
}

/// Runs one action on a parsed model. Warnings go to `stderr`.
pub fn execute(m: &Model, action: Action, cli: &Options, stderr: &mut String) -> Result<(i32, Report)> {
    let at = parse_at(cli, m)?;
    let mut report = Report::new(m.name());
    report.parameter_value = at.as_ref().map(ToString::to_string);
    let ok = |b: bool| if b { EXIT_OK } else { EXIT_CHECK_FAILED };

    if action != Action::Validate {
        warn_on(stderr, m)?;
    }

    let code = match action {
        Action::Validate => {
            let target = match &at {
                Some(s) => m.evaluate(s),
                None => m.clone(),
            };
            let v = validate_model(&target);
            report.push_validation(&v);
            ok(v.accepted())
        }
        Action::Cohomology => {
            cohomology(cli, m, &at, &mut report)?;
            EXIT_OK
        }
        Action::Ddbar => {
            let v = ddbar_check(&bicomplex(m, &at)?)?;
            report.push_ddbar(&v);
            ok(v.holds)
        }
        Action::Froelicher => {
            let b = bicomplex(m, &at)?;
            let pages = froelicher_pages(&b, default_pages(&b))?;
            let ineq = froelicher_inequality_report(&b)?;
            report.set_froelicher(&pages);
            report.set_inequality(&ineq);
            ok(ineq.holds())
        }
        Action::Hodge => {
            if m.is_bigraded() {
                let ctx = MetricContext::new(&fixed(m, &at)?)?;
                let d = decomposition_check(&ctx)?;
                report.set_decomposition(&d);
                ok(d.holds())
            } else if m.contraction().is_some() {
                let ctx = MetricContext::new(m)?;
                let s = match &at {
                    Some(s) => s.clone(),
                    None if m.is_parametric() => {
                        return Err(FolError::Usage(format!(
                            "model `{}` depends on s; pass --at s=<value>",
                            m.name()
                        )))
                    }
                    None => Rational::zero(),
                };
                let r = lie_skewness_check(&ctx, &s)?;
                report.set_skewness(&r);
                ok(r.holds())
            } else {
                return Err(FolError::NotBigraded(format!("model `{}` has neither a bigrading nor a contraction", m.name())));
            }
        }
        Action::Duality => {
            let ctx = MetricContext::new(&fixed(m, &at)?)?;
            let d = duality_check(&ctx)?;
            report.set_duality(&d);
            if d.orientable {
                let verdict = if d.holds() { Verdict::Pass } else { Verdict::Fail };
                report.push_check("duality", verdict, None, None);
                ok(d.holds())
            } else {
                report.push_check(
                    "duality",
                    Verdict::Warn,
                    None,
                    Some("top cohomology is not one-dimensional; duality is not expected".into()),
                );
                EXIT_OK
            }
        }
        Action::Kaehler => {
            let b = bicomplex(m, &at)?;
            let v = kaehler_witness(&b, cli.trials, cli.seed)?;
            let check = match &v {
                KaehlerVerdict::Witness(w) => Some(verify_kaehler_witness(&b, &w.form)?),
                _ => None,
            };
            report.set_kaehler(&v, check.as_ref(), cli.trials, cli.seed);
            ok(check.is_some_and(|c| c.all()))
        }
        Action::Sweep => {
            if at.is_some() {
                return Err(FolError::Usage("sweep takes --grid, not --at".into()));
            }
            let grid = parse_grid(cli)?;
            let reference = match &cli.reference {
                None => None,
                Some(raw) => {
                    let r = parse_rational(raw.trim())
                        .ok_or_else(|| FolError::Usage(format!("`{raw}` is not a rational number")))?;
                    Some(grid.iter().position(|g| *g == r).ok_or_else(|| {
                        FolError::Usage(format!("reference value {r} is not on the grid"))
                    })?)
                }
            };
            let r = parameter_sweep(m, &grid, reference)?;
            report.set_sweep(&r);
            EXIT_OK
        }
        Action::Orient => {
            let c = working_complex(m, &at)?;
            let o = homological_orientability_check(&c)?;
            report.set_orientability(&o);
            ok(o.orientable)
        }
    };
    Ok((code, report))
}

fn cohomology(cli: &Options, m: &Model, at: &Option<Rational>, report: &mut Report) -> Result<()> {
    let bigraded_theory = !matches!(cli.theory, TheoryArg::Dr | TheoryArg::All);
    if m.contraction().is_some() || !m.is_bigraded() {
        if bigraded_theory {
            return Err(FolError::NotBigraded(format!(
                "model `{}` only supports --theory dr",
                m.name()
            )));
        }
        report.push_table(&de_rham(&working_complex(m, at)?)?);
        return Ok(());
    }
    let b = bicomplex(m, at)?;
    let want = |t: TheoryArg| cli.theory == t || cli.theory == TheoryArg::All;
    if want(TheoryArg::Dr) {
        report.push_table(&de_rham(&b.total_complex()?)?);
    }
    if want(TheoryArg::Dolbeault) {
        report.push_table(&dolbeault(&b, false)?);
        report.push_table(&dolbeault(&b, true)?);
    }
    if want(TheoryArg::Bc) {
        report.push_table(&bott_chern(&b)?);
    }
    if want(TheoryArg::Aeppli) {
        report.push_table(&aeppli(&b)?);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("folcoh").chain(args.iter().copied()))
    }

    #[test]
    fn ddbar_fails_on_s6() {
        let o = run_args(&["ddbar", "bundled:s6", "--format", "json"]);
        assert_eq!(o.code, EXIT_CHECK_FAILED);
        let s = String::from_utf8(o.stdout).unwrap();
        assert!(s.contains("\"witness\":\"β1^β̄1\""), "{s}");
    }

    #[test]
    fn missing_file_is_usage_error() {
        let o = run_args(&["cohomology", "definitely-missing.fol"]);
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.stderr.contains("definitely-missing.fol"));
    }

    #[test]
    fn unknown_flag_and_subcommand() {
        assert_eq!(run_args(&["frobnicate", "bundled:s6"]).code, EXIT_USAGE);
        let o = run_args(&["ddbar", "bundled:s6", "--bogus"]);
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.stderr.contains("Usage"));
    }

    #[test]
    fn parametric_needs_at() {
        assert_eq!(run_args(&["orient", "bundled:hopf-family"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["orient", "bundled:hopf-family", "--at", "s=1/2"]).code, EXIT_OK);
        assert_eq!(run_args(&["orient", "bundled:hopf-family", "--at", "t=1/2"]).code, EXIT_USAGE);
    }

    #[test]
    fn sweep_reference() {
        let o = run_args(&["sweep", "bundled:hopf-family", "--grid", "0,1/7,1/2", "--reference", "0"]);
        assert_eq!(o.code, EXIT_OK);
        let s = String::from_utf8(o.stdout).unwrap();
        assert!(s.contains("jump between s = 0 and s = 1/7"), "{s}");
        assert!(s.contains("semicontinuity at s = 0: holds"), "{s}");
        let bad = run_args(&["sweep", "bundled:hopf-family", "--grid", "0,1/2", "--reference", "1/3"]);
        assert_eq!(bad.code, EXIT_USAGE);
    }
}
