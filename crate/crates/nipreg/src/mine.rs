//! Searches for instances with large gaps between VC variants. The questions
//! behind the pairs are open, so gaps are only reported; the one-sided facts
//! `VC^l_A(A) <= VC^l_G(A)`, the abelian symmetry and Assouad's bounds are
//! checked along the way.

use crate::catalog::catalog;
use crate::report::SCHEMA_VERSION;
use crate::verify::Counterexample;
use anyhow::{bail, Result};
use nipreg_core::vc::{dual_system, translate_system, vc_dimension_with_witness, SetSystem, DEFAULT_VC_CAP};
use nipreg_core::{GroupSubset, Side, VcDim};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GapPair {
    /// `VC^l_A(A)` vs `VC^r_A(A)`
    #[serde(rename = "vcl-vcr")]
    VclVcr,
    /// `VC^l_A(A)` vs `VC^l_G(A)`
    #[serde(rename = "va-vg")]
    VaVg,
    /// `VC^l_G(A)` vs `VC*(F^l_G(A))`
    #[serde(rename = "vg-dual")]
    VgDual,
}

impl GapPair {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "vcl-vcr" => GapPair::VclVcr,
            "va-vg" => GapPair::VaVg,
            "vg-dual" => GapPair::VgDual,
            _ => bail!("unknown pair {s:?} (expected vcl-vcr, va-vg or vg-dual)"),
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct MineConfig {
    pub pair: GapPair,
    /// Random sets examined.
    pub budget: usize,
    pub seed: u64,
    pub max_order: usize,
    pub top: usize,
}

/// A VC value with a shattered witness (group elements for primal systems,
/// translating elements for the dual).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certified {
    pub value: usize,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinedInstance {
    pub group_spec: String,
    pub set: Vec<usize>,
    pub lhs: Certified,
    pub rhs: Certified,
    /// `rhs - lhs`
    pub gap: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MineReport {
    pub schema_version: u32,
    pub pair: GapPair,
    pub seed: u64,
    pub budget: usize,
    pub max_order: usize,
    pub examined: usize,
    pub skipped: usize,
    pub max_abs_gap: i64,
    pub gap_histogram: BTreeMap<i64, usize>,
    pub top: Vec<MinedInstance>,
    pub violations: Vec<Counterexample>,
}

fn certified(s: &SetSystem, relabel: impl Fn(usize) -> usize) -> Result<Option<Certified>> {
    let (d, w) = vc_dimension_with_witness(s, DEFAULT_VC_CAP)?;
    Ok(match d {
        VcDim::Exact(value) => Some(Certified { value, witness: w.into_iter().map(relabel).collect() }),
        VcDim::AtLeast(_) => None,
    })
}

pub fn mine(cfg: &MineConfig) -> Result<MineReport> {
    let mut groups = catalog(cfg.max_order);
    if cfg.pair == GapPair::VclVcr && groups.iter().any(|c| !c.group.is_abelian()) {
        // left and right coincide on abelian groups
        groups.retain(|c| !c.group.is_abelian());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut seen = BTreeSet::new();
    let mut found = Vec::new();
    let mut report = MineReport {
        schema_version: SCHEMA_VERSION,
        pair: cfg.pair,
        seed: cfg.seed,
        budget: cfg.budget,
        max_order: cfg.max_order,
        examined: 0,
        skipped: 0,
        max_abs_gap: 0,
        gap_histogram: BTreeMap::new(),
        top: Vec::new(),
        violations: Vec::new(),
    };
    for _ in 0..cfg.budget {
        let c = &groups[rng.gen_range(0..groups.len())];
        let g = &c.group;
        let a = if g.order() <= 16 {
            let p: f64 = rng.gen_range(0.1..0.9);
            GroupSubset::from_elements(g, (0..g.order()).filter(|_| rng.gen_bool(p)))?
        } else {
            let k = rng.gen_range(1..=g.order().min(12));
            GroupSubset::from_elements(g, sample(&mut rng, g.order(), k).into_iter())?
        };
        if a.is_empty() || !seen.insert((c.spec, a.elements())) {
            continue;
        }
        report.examined += 1;
        let full = GroupSubset::full(g);
        let id = |x| x;
        let pair = match cfg.pair {
            GapPair::VclVcr => (certified(&translate_system(&a, &a, Side::Left)?, id)?, certified(&translate_system(&a, &a, Side::Right)?, id)?),
            GapPair::VaVg => (certified(&translate_system(&a, &a, Side::Left)?, id)?, certified(&translate_system(&a, &full, Side::Left)?, id)?),
            GapPair::VgDual => {
                let sys = translate_system(&a, &full, Side::Left)?;
                (certified(&sys, id)?, certified(&dual_system(&sys, false)?, id)?)
            }
        };
        let (Some(lhs), Some(rhs)) = pair else {
            report.skipped += 1;
            continue;
        };
        let gap = rhs.value as i64 - lhs.value as i64;
        let violation = match cfg.pair {
            GapPair::VclVcr => (g.is_abelian() && gap != 0).then_some("abelian VC^l_A(A) = VC^r_A(A)"),
            GapPair::VaVg => (gap < 0).then_some("VC^l_A(A) <= VC^l_G(A)"),
            GapPair::VgDual => (rhs.value >= 2 << lhs.value || lhs.value >= 2 << rhs.value).then_some("Assouad bounds"),
        };
        if let Some(property) = violation {
            report.violations.push(Counterexample {
                property: property.to_string(),
                group_spec: c.spec.to_string(),
                sets: BTreeMap::from([("A".to_string(), a.elements())]),
                params: BTreeMap::from([("lhs".to_string(), lhs.value.to_string()), ("rhs".to_string(), rhs.value.to_string())]),
            });
        }
        *report.gap_histogram.entry(gap).or_default() += 1;
        report.max_abs_gap = report.max_abs_gap.max(gap.abs());
        found.push((g.order(), MinedInstance { group_spec: c.spec.to_string(), set: a.elements(), lhs, rhs, gap }));
    }
    found.sort_by(|(oa, a), (ob, b)| {
        b.gap.abs().cmp(&a.gap.abs()).then(oa.cmp(ob)).then_with(|| (&a.group_spec, &a.set).cmp(&(&b.group_spec, &b.set)))
    });
    report.top = found.into_iter().take(cfg.top).map(|(_, m)| m).collect();
    Ok(report)
}
