//! Models shipped with the crate.

use super::{parse_model, Model};

/// `(file name, source)` for every bundled model.
pub const SOURCES: &[(&str, &str)] = &[
    ("s6.fol", include_str!("../../models/s6.fol")),
    ("hopf-family.fol", include_str!("../../models/hopf-family.fol")),
    ("torus1.fol", include_str!("../../models/torus1.fol")),
    ("torus2.fol", include_str!("../../models/torus2.fol")),
    ("s6-real.fol", include_str!("../../models/s6-real.fol")),
];

/// Source text of a bundled model, by file name with or without the `.fol` suffix.
pub fn source(name: &str) -> Option<&'static str> {
    let file = if name.ends_with(".fol") { name.to_string() } else { format!("{name}.fol") };
    SOURCES.iter().find(|(f, _)| *f == file).map(|(_, s)| *s)
}

/// Parses a bundled model. Panics only if a shipped file is malformed.
pub fn load(name: &str) -> Option<Model> {
    source(name).map(|s| parse_model(s).unwrap_or_else(|e| panic!("bundled model {name}: {e}")))
}

pub fn s6() -> Model {
    load("s6").expect("bundled")
}

pub fn hopf_family() -> Model {
    load("hopf-family").expect("bundled")
}

pub fn torus1() -> Model {
    load("torus1").expect("bundled")
}

pub fn torus2() -> Model {
    load("torus2").expect("bundled")
}

pub fn s6_real() -> Model {
    load("s6-real").expect("bundled")
}

/// Every bundled model, in the order of [`SOURCES`].
pub fn all() -> Vec<Model> {
    SOURCES.iter().map(|(f, _)| load(f).expect("bundled")).collect()
}
