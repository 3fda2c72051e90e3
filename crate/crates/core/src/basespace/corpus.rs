use super::TwoComplex;
use crate::error::{Error, Result};

const NAMES: [&str; 5] = ["C1", "W2", "T2rel", "RP2rel", "triangle"];

/// Names accepted by [`builtin`].
pub fn builtin_names() -> &'static [&'static str] {
    &NAMES
}

/// Small named complexes:
///
/// - `C1`: circle, one vertex and one loop `a`.
/// - `W2`: wedge of two circles `a`, `b`.
/// - `T2rel`: torus, face `a b a^-1 b^-1`.
/// - `RP2rel`: projective plane, face `a a`.
/// - `triangle`: a 3-cycle `e1: v0 -> v1`, `e2: v0 -> v2`, `e3: v1 -> v2`.
pub fn builtin(name: &str) -> Result<TwoComplex> {
    match name {
        "C1" => TwoComplex::new(&["v0"], &[("a", "v0", "v0")], &[], "v0"),
        "W2" => TwoComplex::new(&["v0"], &[("a", "v0", "v0"), ("b", "v0", "v0")], &[], "v0"),
        "T2rel" => TwoComplex::new(
            &["v0"],
            &[("a", "v0", "v0"), ("b", "v0", "v0")],
            &[&["a", "b", "a^-1", "b^-1"]],
            "v0",
        ),
        "RP2rel" => TwoComplex::new(&["v0"], &[("a", "v0", "v0")], &[&["a", "a"]], "v0"),
        "triangle" => TwoComplex::new(
            &["v0", "v1", "v2"],
            &[("e1", "v0", "v1"), ("e2", "v0", "v2"), ("e3", "v1", "v2")],
            &[],
            "v0",
        ),
        other => Err(Error::Usage(format!("unknown builtin complex {other:?}; known: {}", NAMES.join(", ")))),
    }
}
