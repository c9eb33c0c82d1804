//! Built-in group catalog: every group reachable by the spec grammar up to
//! order 24 (one spec per isomorphism class), plus larger groups for sampling.

use nipreg_core::group::DEFAULT_ORDER_CAP;
use nipreg_core::{build_group, FiniteGroup};

const SMALL: &[&str] = &[
    "Z1", "Z2", "Z3", "Z4", "Z2^2", "Z5", "Z6", "S3", "Z7", "Z8", "Z2xZ4", "Z2^3", "D4", "Q8", "Z9", "Z3^2",
    "Z10", "D5", "Z11", "Z12", "Z2xZ6", "D6", "Z13", "Z14", "D7", "Z15", "Z16", "Z2xZ8", "Z4^2", "Z2^2xZ4",
    "Z2^4", "D8", "D4xZ2", "Q8xZ2", "Z17", "Z18", "Z3xZ6", "D9", "S3xZ3", "Z19", "Z20", "Z2xZ10", "D10",
    "Z21", "Z22", "D11", "Z23", "Z24", "Z2xZ12", "Z2^2xZ6", "S4", "D12", "D4xZ3", "Q8xZ3", "S3xZ4",
    "S3xZ2^2",
];

const LARGE: &[&str] = &[
    "Z32", "Z2^5", "Z4xZ8", "D16", "Q8xZ4", "D4xZ4", "Z36", "Z6^2", "S3xS3", "Z48", "D24", "S4xZ2", "Z64",
    "Z2^6", "Z8^2", "Z4^3", "D32", "Q8xZ2^3", "Z100", "Z10^2", "D50", "S5", "Z128", "Z2^7", "D64", "Z243",
    "Z256", "Z2^8", "Z16^2", "Z4^4", "D128",
];

#[derive(Debug)]
pub struct CatalogGroup {
    pub spec: &'static str,
    pub group: FiniteGroup,
}

/// Catalog groups of order `<= max_order`, ascending by order then listing
/// position.
pub fn catalog(max_order: usize) -> Vec<CatalogGroup> {
    let mut out: Vec<CatalogGroup> = SMALL
        .iter()
        .chain(LARGE)
        .filter_map(|&spec| {
            let group = build_group(spec, DEFAULT_ORDER_CAP).expect("catalog specs are valid");
            (group.order() <= max_order).then_some(CatalogGroup { spec, group })
        })
        .collect();
    out.sort_by_key(|c| c.group.order());
    out
}
