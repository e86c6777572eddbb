//! The two example constructions shipped with the binary.

use crate::spec::{parse_str, ConstructionSpec};

pub const PRIMARY_NAME: &str = "example-primary.spec";
pub const HALF_LENGTH_NAME: &str = "example-half-length.spec";

pub const PRIMARY: &str = include_str!("../specs/example-primary.spec");
pub const HALF_LENGTH: &str = include_str!("../specs/example-half-length.spec");

/// `(file name, contents)` of every bundled spec.
pub const ALL: [(&str, &str); 2] = [(PRIMARY_NAME, PRIMARY), (HALF_LENGTH_NAME, HALF_LENGTH)];

/// Looks up a bundled spec by file name, with or without the `.spec` suffix.
pub fn find(name: &str) -> Option<&'static str> {
    ALL.iter()
        .find(|(n, _)| *n == name || n.strip_suffix(".spec") == Some(name))
        .map(|(_, text)| *text)
}

/// Parses a bundled spec; they are validated by the test suite, so failure
/// is a build defect.
pub fn load(name: &str) -> Option<ConstructionSpec> {
    let text = find(name)?;
    let full = ALL.iter().find(|(_, t)| *t == text).map(|(n, _)| *n).unwrap_or(name);
    Some(parse_str(text, full).expect("bundled spec parses"))
}

pub fn primary() -> ConstructionSpec {
    load(PRIMARY_NAME).expect("bundled")
}

pub fn half_length() -> ConstructionSpec {
    load(HALF_LENGTH_NAME).expect("bundled")
}
