//! Cross-product sweeps of decompositions, one row per grid cell.

use crate::report::{csv_row, DecompositionReport};
use crate::spec::parse_rational;
use anyhow::{bail, Result};
use nipreg_core::decompose::Mode;
use serde::{Deserialize, Serialize};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

#[derive(Clone, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub groups: Vec<String>,
    pub sets: Vec<String>,
    pub eps: Vec<String>,
    #[serde(default)]
    pub modes: Vec<String>,
}

impl Grid {
    /// Cells in row-major order: group, set, eps, mode.
    pub fn cells(&self) -> Result<Vec<Cell>> {
        let modes = if self.modes.is_empty() { vec!["subgroup".to_string()] } else { self.modes.clone() };
        if self.groups.is_empty() || self.sets.is_empty() || self.eps.is_empty() {
            bail!("grid needs at least one group, set and eps");
        }
        for m in &modes {
            Mode::parse(m)?;
        }
        for e in &self.eps {
            parse_rational(e)?;
        }
        let mut out = Vec::new();
        for g in &self.groups {
            for s in &self.sets {
                for e in &self.eps {
                    for m in &modes {
                        out.push(Cell { group: g.clone(), set: s.clone(), eps: e.clone(), mode: m.clone() });
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub group: String,
    pub set: String,
    pub eps: String,
    pub mode: String,
}

/// `random:` set specs without a seed take `seed`.
pub fn resolve_seed(set_spec: &str, seed: u64) -> String {
    if set_spec.trim().starts_with("random:") && !set_spec.contains("seed=") {
        format!("{}:seed={seed}", set_spec.trim())
    } else {
        set_spec.to_string()
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Row {
    Report(Box<DecompositionReport>),
    Error { group_spec: String, set_spec: String, eps: String, mode: String, error: String },
}

impl Row {
    pub fn csv(&self) -> Vec<String> {
        match self {
            Row::Report(r) => {
                let eps = format!("{}/{}", r.eps.num, r.eps.den);
                csv_row(&r.group_spec, &r.set_spec, &eps, r.mode, Ok(r))
            }
            Row::Error { group_spec, set_spec, eps, mode, error } => csv_row(group_spec, set_spec, eps, mode, Err(error)),
        }
    }
}

fn run_cell(cell: &Cell, seed: u64, max_order: usize) -> Row {
    let set = resolve_seed(&cell.set, seed);
    let res = (|| {
        let eps = parse_rational(&cell.eps)?;
        crate::run_decompose(&cell.group, &set, eps, Mode::parse(&cell.mode)?, None, max_order, false)
    })();
    match res {
        Ok(r) => Row::Report(Box::new(r)),
        Err(e) => Row::Error { group_spec: cell.group.clone(), set_spec: set, eps: cell.eps.clone(), mode: cell.mode.clone(), error: format!("{e:#}") },
    }
}

/// Rows in grid order whatever the completion order of the workers.
pub fn sweep(grid: &Grid, seed: u64, max_order: usize, threads: usize) -> Result<Vec<Row>> {
    let cells = grid.cells()?;
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Row>>> = Mutex::new(vec![None; cells.len()]);
    std::thread::scope(|s| {
        for _ in 0..threads.clamp(1, cells.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= cells.len() {
                    break;
                }
                let row = run_cell(&cells[i], seed, max_order);
                slots.lock().unwrap()[i] = Some(row);
            });
        }
    });
    Ok(slots.into_inner().unwrap().into_iter().map(|r| r.expect("every cell ran")).collect())
}
