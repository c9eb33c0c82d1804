//! File formats, verification suites, sweeps and gap mining on top of
//! `nipreg-core`.

pub mod catalog;
pub mod mine;
pub mod report;
pub mod spec;
pub mod sweep;
pub mod verify;

use anyhow::Result;
use nipreg_core::decompose::{decompose, DecomposeOptions, Mode};
use nipreg_core::{Epsilon, Rational};
use report::{DecompositionReport, Timings};
use std::time::Instant;

/// Parses the specs and runs one decomposition.
pub fn run_decompose(
    group_spec: &str,
    set_spec: &str,
    eps: Rational,
    mode: Mode,
    nu: Option<Rational>,
    max_order: usize,
    timings: bool,
) -> Result<DecompositionReport> {
    let g = spec::load_group(group_spec, max_order)?;
    let a = spec::parse_subset(&g, set_spec)?;
    let eps = Epsilon::new(eps)?;
    let mut opts = DecomposeOptions::new(mode);
    opts.nu = nu;
    let start = Instant::now();
    let d = decompose(&a, eps, &opts)?;
    let t = timings.then(|| Timings { decompose_ms: start.elapsed().as_secs_f64() * 1e3 });
    Ok(DecompositionReport::new(group_spec, set_spec, a.size(), &d, t))
}
