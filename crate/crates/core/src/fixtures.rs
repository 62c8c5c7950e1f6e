//! The bundled test arrangements. The JSON sources live in `fixtures/` at
//! the crate root and are compiled in.

use crate::arrangement::{Arrangement, Mode};
use crate::io::parse_arrangement;

pub const SOURCES: &[(&str, &str)] = &[
    ("a_ex", include_str!("../fixtures/a_ex.json")),
    (
        "one_hyperplane",
        include_str!("../fixtures/one_hyperplane.json"),
    ),
    (
        "two_crossing_lines",
        include_str!("../fixtures/two_crossing_lines.json"),
    ),
    (
        "three_concurrent_lines",
        include_str!("../fixtures/three_concurrent_lines.json"),
    ),
    (
        "two_points_on_a_line",
        include_str!("../fixtures/two_points_on_a_line.json"),
    ),
    (
        "three_generic_lines",
        include_str!("../fixtures/three_generic_lines.json"),
    ),
    ("boolean3", include_str!("../fixtures/boolean3.json")),
];

pub fn source(name: &str) -> Option<&'static str> {
    SOURCES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn by_name(name: &str) -> Option<Arrangement> {
    source(name).map(|s| parse_arrangement(s).expect("bundled fixture parses"))
}

fn load(name: &str) -> Arrangement {
    by_name(name).expect("bundled fixture exists")
}

/// Five chambers of four lines, chambers only.
pub fn a_ex() -> Arrangement {
    load("a_ex")
}

/// `x = 0` in dimension 1.
pub fn one_hyperplane() -> Arrangement {
    load("one_hyperplane")
}

/// `x = 0`, `y = 0`.
pub fn two_crossing_lines() -> Arrangement {
    load("two_crossing_lines")
}

/// `x = 0`, `y = 0`, `x = y`.
pub fn three_concurrent_lines() -> Arrangement {
    load("three_concurrent_lines")
}

/// `x = 0`, `x = 1` in dimension 1.
pub fn two_points() -> Arrangement {
    load("two_points_on_a_line")
}

/// `x = 0`, `y = 0`, `x + y = 1`.
pub fn three_generic_lines() -> Arrangement {
    load("three_generic_lines")
}

/// The coordinate planes of dimension 3.
pub fn boolean3() -> Arrangement {
    load("boolean3")
}

/// Every bundled full-mode fixture, by name.
pub fn full_mode() -> Vec<(&'static str, Arrangement)> {
    SOURCES
        .iter()
        .map(|(name, _)| (*name, load(name)))
        .filter(|(_, a)| a.mode() == Mode::Full)
        .collect()
}

/// The same face set without geometry.
pub fn from_covector_copy(a: &Arrangement) -> Arrangement {
    Arrangement::from_covectors(
        a.m(),
        a.mode(),
        a.faces().iter().map(|f| f.sign.clone()).collect(),
    )
    .expect("faces of an arrangement have equal length")
}
