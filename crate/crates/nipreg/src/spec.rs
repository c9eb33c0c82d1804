//! Group and subset spec strings, including `table:<path>` files.

use anyhow::{anyhow, bail, Context, Result};
use nipreg_core::group::GroupSpec;
use nipreg_core::subgroups::generated_subgroup;
use nipreg_core::{FiniteGroup, GroupSubset, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use std::path::Path;

#[derive(Deserialize)]
struct TableFile {
    order: usize,
    mul: Vec<Vec<usize>>,
}

pub fn load_group(spec: &str, max_order: usize) -> Result<FiniteGroup> {
    match GroupSpec::parse(spec)? {
        GroupSpec::Table(path) => {
            let text = std::fs::read_to_string(Path::new(&path)).with_context(|| format!("reading {path}"))?;
            let t: TableFile = serde_json::from_str(&text).with_context(|| format!("parsing {path}"))?;
            if t.order != t.mul.len() {
                bail!("{path}: order {} but {} table rows", t.order, t.mul.len());
            }
            if t.order > max_order {
                bail!(nipreg_core::Error::OrderCap { order: t.order, cap: max_order });
            }
            let g = FiniteGroup::from_table(&t.mul)?;
            g.check_associativity()?;
            Ok(g)
        }
        parsed => Ok(parsed.build(max_order)?),
    }
}

/// `p/q` or an integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<i64>()?, d.trim().parse::<i64>()?),
        None => (s.parse::<i64>()?, 1),
    };
    if d == 0 {
        bail!("zero denominator in {s:?}");
    }
    Ok(Rational::new(n, d))
}

fn subset_err(spec: &str, reason: impl Into<String>) -> anyhow::Error {
    anyhow!(nipreg_core::Error::SubsetSpec { spec: spec.to_string(), reason: reason.into() })
}

fn parse_list(spec: &str, list: &str) -> Result<Vec<usize>> {
    list.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| subset_err(spec, format!("bad element {t:?}"))))
        .collect()
}

/// Subset specs:
/// `1,2,5` | `random:p=<prob>:seed=<u64>` | `interval:a..b` (half open) or
/// `interval:a..=b` | `cosets:<elems>:<reps>` (`<elems>` generate `H`, result `∪ rH`).
pub fn parse_subset<'g>(g: &'g FiniteGroup, spec: &str) -> Result<GroupSubset<'g>> {
    let s = spec.trim();
    if let Some(rest) = s.strip_prefix("random:") {
        let (mut p, mut seed) = (None, None);
        for kv in rest.split(':') {
            match kv.split_once('=') {
                Some(("p", v)) => {
                    let prob = if v.contains('/') {
                        let r = parse_rational(v)?;
                        *r.numer() as f64 / *r.denom() as f64
                    } else {
                        v.parse::<f64>().map_err(|_| subset_err(spec, "bad p"))?
                    };
                    p = Some(prob);
                }
                Some(("seed", v)) => seed = Some(v.parse::<u64>().map_err(|_| subset_err(spec, "bad seed"))?),
                _ => return Err(subset_err(spec, format!("unknown field {kv:?}"))),
            }
        }
        let p = p.ok_or_else(|| subset_err(spec, "missing p"))?;
        if !(0.0..=1.0).contains(&p) {
            return Err(subset_err(spec, "p must lie in [0, 1]"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed.ok_or_else(|| subset_err(spec, "missing seed"))?);
        let elems: Vec<usize> = (0..g.order()).filter(|_| rng.gen_bool(p)).collect();
        return Ok(GroupSubset::from_elements(g, elems)?);
    }
    if let Some(rest) = s.strip_prefix("interval:") {
        let (a, b, inclusive) = match rest.split_once("..=") {
            Some((a, b)) => (a, b, true),
            None => {
                let (a, b) = rest.split_once("..").ok_or_else(|| subset_err(spec, "expected a..b"))?;
                (a, b, false)
            }
        };
        let a: usize = a.trim().parse().map_err(|_| subset_err(spec, "bad start"))?;
        let b: usize = b.trim().parse().map_err(|_| subset_err(spec, "bad end"))?;
        let end = if inclusive { b + 1 } else { b };
        if a > end || end > g.order() {
            return Err(subset_err(spec, format!("range out of bounds for order {}", g.order())));
        }
        return Ok(GroupSubset::from_elements(g, a..end)?);
    }
    if let Some(rest) = s.strip_prefix("cosets:") {
        let (h, reps) = rest.split_once(':').ok_or_else(|| subset_err(spec, "expected cosets:<elems>:<reps>"))?;
        let gens = parse_list(spec, h)?;
        let reps = parse_list(spec, reps)?;
        if let Some(&x) = gens.iter().chain(&reps).find(|&&x| x >= g.order()) {
            return Err(anyhow!(nipreg_core::Error::ElementOutOfRange { element: x, order: g.order() }));
        }
        let h = generated_subgroup(g, &gens);
        let mut acc = GroupSubset::empty(g);
        for r in reps {
            acc = acc.union(&h.left_translate(r))?;
        }
        return Ok(acc);
    }
    Ok(GroupSubset::from_elements(g, parse_list(spec, s)?)?)
}
