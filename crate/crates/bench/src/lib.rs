//! Inputs shared by the benchmarks.

use modalt_core::polymat::{build_a, build_m};
use modalt_core::{FamilySpec, PolyMatrix};

/// `(label, matrix)` pairs of increasing size for the determinant engines.
pub fn det_inputs() -> Vec<(String, PolyMatrix)> {
    [(8, 2, 1), (12, 3, 1), (12, 3, 2), (16, 4, 1), (24, 4, 3)]
        .into_iter()
        .map(|(n, k, r)| (format!("M({n},{k},{r})"), build_m(n, k, r).unwrap()))
        .collect()
}

/// Eulerian blocks for the permanent engines.
pub fn permanent_inputs() -> Vec<(String, PolyMatrix)> {
    (6..=10).map(|m| (format!("A_{m}"), build_a(m))).collect()
}

/// Families for the enumeration benchmark.
pub fn enumeration_inputs() -> Vec<FamilySpec> {
    [(9, 1, 1), (12, 2, 1), (12, 3, 2), (14, 4, 1)]
        .into_iter()
        .map(|(n, k, r)| FamilySpec::new(n, k, r).unwrap())
        .collect()
}
