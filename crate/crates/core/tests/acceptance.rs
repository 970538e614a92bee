//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

mod common;

use std::process::{Command, ExitCode};

use folcoh::analysis::{
    ddbar_check, froelicher_inequality_report, kaehler_witness, parameter_sweep, verify_kaehler_witness,
    DdbarClause, KaehlerVerdict,
};
use folcoh::cli;
use folcoh::cohomology::{aeppli, bott_chern, de_rham, dolbeault};
use folcoh::foliation::bigrade_split;
use folcoh::hodge::{decomposition_check, duality_check, MetricContext};
use folcoh::linalg::{image, kernel_basis, Subspace};
use folcoh::model::{bundled, Model};
use folcoh::scalar::rational;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn bigraded_models() -> Vec<Model> {
    bundled::all().into_iter().filter(|m| m.is_bigraded()).collect()
}

fn s6_reproduction() -> Outcome {
    let m = bundled::s6();
    let b = bigrade_split(&m).map_err(err)?;
    let dr = de_rham(&b.total_complex().map_err(err)?).map_err(err)?.degree_dims();
    ensure!(dr == [1, 1, 0, 1, 1], "de Rham dims {dr:?}");

    let dol = dolbeault(&b, false).map_err(err)?;
    let deg2: Vec<usize> = [(2, 0), (1, 1), (0, 2)].iter().map(|&(p, q)| dol.dim(p, q)).collect();
    ensure!(deg2 == [0, 0, 0], "degree-2 Dolbeault dims {deg2:?}");

    let bc = bott_chern(&b).map_err(err)?;
    ensure!(bc.dim(1, 1) == 1, "h_BC^(1,1) = {}", bc.dim(1, 1));

    let a = aeppli(&b).map_err(err)?;
    ensure!(a.dim(1, 1) == 1, "h_A^(1,1) = {}", a.dim(1, 1));
    let x = m.generator("β2").unwrap().wedge(&m.generator("β̄2").unwrap()).map_err(err)?;
    let xv = b.coords(1, 1, &x).map_err(err)?;
    ensure!(b.del_dbar(1, 1).apply(&xv).iter().all(|c| c.is_zero()), "β2∧β̄2 is not ∂∂̄-closed");
    let exact = image(&b.del(0, 1)).sum(&image(&b.dbar(1, 0)));
    ensure!(!exact.contains_vector(&xv), "β2∧β̄2 is ∂+∂̄-exact");
    let rep = &a.entry(1, 1).unwrap().representatives[0];
    let rv = b.coords(1, 1, rep).map_err(err)?;
    let class = exact.sum(&Subspace::span(xv.len(), vec![rv]));
    ensure!(class.contains_vector(&xv), "β2∧β̄2 is not in the class of {rep}");

    let v = ddbar_check(&b).map_err(err)?;
    ensure!(!v.holds, "the ∂∂̄-lemma holds");
    let f = v.failure.unwrap();
    let (p, q) = (f.p as i64, f.q as i64);
    let w = b.coords(p, q, &f.witness).map_err(err)?;
    let space = match f.clause {
        DdbarClause::DbarClosedDelExact => kernel_basis(&b.dbar(p, q)).intersect(&image(&b.del(p - 1, q))),
        DdbarClause::DelClosedDbarExact => kernel_basis(&b.del(p, q)).intersect(&image(&b.dbar(p, q - 1))),
    };
    ensure!(space.contains_vector(&w), "witness {} is outside the {} space", f.witness, f.clause);
    ensure!(!image(&b.del_dbar(p - 1, q - 1)).contains_vector(&w), "witness {} is ∂∂̄-exact", f.witness);

    Ok(format!("dR {dr:?}, h_A^(1,1) ∋ [β2∧β̄2], ∂∂̄ witness {} at ({p},{q})", f.witness))
}

fn froelicher_inequality() -> Outcome {
    let mut notes = Vec::new();
    for m in bigraded_models() {
        let b = bigrade_split(&m).map_err(err)?;
        let r = froelicher_inequality_report(&b).map_err(err)?;
        let slack: Vec<i64> = r.rows.iter().map(|row| row.slack).collect();
        ensure!(r.holds(), "{}: slack {slack:?}", m.name());
        let ddbar = ddbar_check(&b).map_err(err)?.holds;
        ensure!(r.equality() == ddbar, "{}: equality {} but ∂∂̄-lemma {ddbar}", m.name(), r.equality());
        if m.name() == bundled::s6().name() {
            ensure!(slack == [0, 0, 2, 0, 0], "s6 slack {slack:?}");
        }
        notes.push(format!("{} {slack:?}", m.name()));
    }
    Ok(notes.join(", "))
}

fn family_sweep() -> Outcome {
    let grid: Vec<_> = [(0, 1), (1, 7), (1, 3), (1, 2), (2, 3), (1, 1)].iter().map(|&(n, d)| rational(n, d)).collect();
    let r = parameter_sweep(&bundled::hopf_family(), &grid, Some(0)).map_err(err)?;
    let dims: Vec<&Vec<usize>> = r.points.iter().map(|p| &p.dims).collect();
    ensure!(*dims[0] == [1, 2, 2, 2, 1], "s=0 dims {:?}", dims[0]);
    for (i, d) in dims.iter().enumerate().take(5).skip(1) {
        ensure!(**d == [1, 1, 0, 1, 1], "s={} dims {d:?}", grid[i]);
    }
    let mut expected = vec![(0, 1)];
    if dims[5] != dims[4] {
        expected.push((4, 5));
    }
    ensure!(r.jumps == expected, "jumps {:?}", r.jumps);
    ensure!(dims[1].iter().zip(dims[0].iter()).all(|(a, b)| a <= b), "1/7 exceeds 0");
    let semi = r.semicontinuity.as_ref().unwrap();
    ensure!(semi.holds(), "semicontinuity violations {:?}", semi.violations);
    for p in &r.points {
        ensure!(p.orientable && p.dims.last() == Some(&1), "top dim at s={} is {:?}", p.s, p.dims.last());
    }
    Ok(format!("s=0 {:?}, interior [1, 1, 0, 1, 1], s=1 {:?}, jumps {:?}", dims[0], dims[5], r.jumps))
}

fn decompositions() -> Outcome {
    let mut n = 0;
    for m in bigraded_models() {
        let ctx = MetricContext::new(&m).map_err(err)?;
        let r = decomposition_check(&ctx).map_err(err)?;
        if let Some(row) = r.rows.iter().find(|row| !row.holds()) {
            return Err(format!("{} at ({},{}): {row:?}", m.name(), row.p, row.q));
        }
        n += r.rows.len();
    }
    Ok(format!("{n} bidegrees"))
}

fn duality() -> Outcome {
    let mut checked = Vec::new();
    for m in bigraded_models() {
        let ctx = MetricContext::new(&m).map_err(err)?;
        let r = duality_check(&ctx).map_err(err)?;
        if !r.orientable {
            continue;
        }
        if let Some(row) = r.rows.iter().find(|row| row.h_bc != row.h_a_dual || !row.conjugation_identity) {
            return Err(format!("{} at ({},{}): {row:?}", m.name(), row.p, row.q));
        }
        checked.push(m.name().to_string());
    }
    ensure!(!checked.is_empty(), "no orientable bigraded model");
    Ok(checked.join(", "))
}

fn kaehler() -> Outcome {
    let mut notes = Vec::new();
    for (m, want_witness) in [(bundled::torus1(), true), (bundled::torus2(), true), (bundled::s6(), false)] {
        let b = bigrade_split(&m).map_err(err)?;
        match kaehler_witness(&b, 200, 0).map_err(err)? {
            KaehlerVerdict::Witness(w) => {
                ensure!(want_witness, "{}: unexpected witness {}", m.name(), w.form);
                let c = verify_kaehler_witness(&b, &w.form).map_err(err)?;
                ensure!(c.all(), "{}: witness {} fails {c:?}", m.name(), w.form);
                notes.push(format!("{} witness {}", m.name(), w.form));
            }
            KaehlerVerdict::ImpossibleNondegenerate => {
                ensure!(!want_witness, "{}: impossible-nondegenerate", m.name());
                notes.push(format!("{} impossible", m.name()));
            }
            v => return Err(format!("{}: {v:?}", m.name())),
        }
    }
    Ok(notes.join(", "))
}

fn properties() -> Outcome {
    let mut total = 0;
    for (name, r) in common::run_all(1000) {
        total += r.map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{total} cases"))
}

const COMMANDS: [&str; 9] = ["validate", "cohomology", "ddbar", "froelicher", "hodge", "duality", "kaehler", "sweep", "orient"];
const MODELS: [&str; 5] = ["s6", "s6-real", "torus1", "torus2", "hopf-family"];

fn args(command: &str, model: &str, format: &str) -> Vec<String> {
    let path = format!("{}/models/{model}.fol", env!("CARGO_MANIFEST_DIR"));
    let mut a: Vec<String> = ["folcoh", command, &path, "--format", format].map(String::from).to_vec();
    if model == "hopf-family" {
        let extra: &[&str] =
            if command == "sweep" { &["--grid", "0,1/7,1/3,1/2,2/3,1", "--reference", "0"] } else { &["--at", "s=1/2"] };
        a.extend(extra.iter().map(|s| s.to_string()));
    }
    a
}

fn determinism() -> Outcome {
    let mut runs = 0;
    for command in COMMANDS {
        for model in MODELS {
            for format in ["text", "json", "csv"] {
                let a = args(command, model, format);
                let (x, y) = (cli::run(&a), cli::run(&a));
                ensure!(x.code == y.code && x.stdout == y.stdout && x.stderr == y.stderr, "{}", a.join(" "));
                runs += 1;
            }
            let a = args(command, model, "json");
            let spawn = || Command::new(env!("CARGO_BIN_EXE_folcoh")).args(&a[1..]).output();
            let (x, y) = (spawn().map_err(err)?, spawn().map_err(err)?);
            ensure!(x.status == y.status && x.stdout == y.stdout && x.stderr == y.stderr, "binary: {}", a.join(" "));
            ensure!(x.stdout == cli::run(&a).stdout, "binary differs from in-process run: {}", a.join(" "));
            runs += 1;
        }
    }
    Ok(format!("{runs} repeated runs"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("S6 reproduction", s6_reproduction),
        ("Frölicher-type inequality", froelicher_inequality),
        ("family sweep", family_sweep),
        ("decompositions", decompositions),
        ("BC/A duality", duality),
        ("Kähler diagnostics", kaehler),
        ("structural properties", properties),
        ("CLI determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
