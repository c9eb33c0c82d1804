//! Bohr sets `{g : |χ(g) - 1| < delta for χ in Γ}` in finite abelian groups.
//!
//! `|χ(g) - 1| = 2 sin(π r/L)` with `L` the lcm of the factor orders and
//! `r = Σ γ_j g_j (L/m_j) mod L`, folded to `min(r, L - r)` so that `g` and
//! `-g` get bit-identical values. A decisive value within `1e-9` of `delta`
//! is a boundary error.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{splitmix, FiniteGroup};
use crate::rational::{ratio, Rational};
use crate::subset::{product_set, GroupSubset};
use alloc::vec;
use alloc::vec::Vec;
use num_integer::Integer;
use num_traits::ToPrimitive;

pub const BOUNDARY_GUARD: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BohrSpec<'g> {
    pub group: &'g FiniteGroup,
    /// Each character as residues, one per cyclic factor.
    pub gamma: Vec<Vec<usize>>,
    /// In `(0, 2]`.
    pub delta: Rational,
}

fn to_f64(r: Rational) -> f64 {
    r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap()
}

impl<'g> BohrSpec<'g> {
    pub fn new(group: &'g FiniteGroup, gamma: Vec<Vec<usize>>, delta: Rational) -> Result<Self> {
        let factors = group.abelian_decomposition().ok_or(Error::NotAbelian)?;
        if gamma.is_empty() {
            return Err(Error::BohrSpec("empty character list".into()));
        }
        for chi in &gamma {
            if chi.len() != factors.len() || chi.iter().zip(factors).any(|(&c, &m)| c >= m) {
                return Err(Error::BohrSpec(alloc::format!("character {chi:?} invalid for factors {factors:?}")));
            }
        }
        if delta <= Rational::from_integer(0) || delta > Rational::from_integer(2) {
            return Err(Error::BohrSpec(alloc::format!("delta = {delta} outside (0, 2]")));
        }
        Ok(Self { group, gamma, delta })
    }

    /// Character given by the coordinates of element `c` under the dual
    /// identification `Ĝ ≅ G`.
    pub fn from_elements(group: &'g FiniteGroup, chars: &[usize], delta: Rational) -> Result<Self> {
        let gamma = chars
            .iter()
            .map(|&c| group.coords(c).ok_or(Error::NotAbelian))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, gamma, delta)
    }

    pub fn m(&self) -> usize {
        self.gamma.len()
    }

    pub fn delta_f64(&self) -> f64 {
        to_f64(self.delta)
    }

    /// `⌈2π/delta⌉^m`
    pub fn cover_bound(&self) -> usize {
        let per = libm::ceil(2.0 * core::f64::consts::PI / self.delta_f64()) as usize;
        per.pow(self.m() as u32)
    }
}

/// `max_j |χ_j(g) - 1|` for every `g`.
pub fn radius_profile(group: &FiniteGroup, gamma: &[Vec<usize>]) -> Result<Vec<f64>> {
    let factors = group.abelian_decomposition().ok_or(Error::NotAbelian)?;
    let l = factors.iter().fold(1usize, |acc, &m| acc.lcm(&m));
    let scale: Vec<usize> = factors.iter().map(|&m| l / m).collect();
    let mut table = vec![0f64; l / 2 + 1];
    for (r, v) in table.iter_mut().enumerate() {
        *v = 2.0 * libm::sin(core::f64::consts::PI * r as f64 / l as f64);
    }
    let mut out = Vec::with_capacity(group.order());
    for g in 0..group.order() {
        let c = group.coords(g).ok_or(Error::NotAbelian)?;
        let mut worst = 0f64;
        for chi in gamma {
            let mut r = 0usize;
            for j in 0..c.len() {
                r = (r + chi[j] * c[j] % factors[j] * scale[j]) % l;
            }
            let v = table[r.min(l - r)];
            if v > worst {
                worst = v;
            }
        }
        out.push(worst);
    }
    Ok(out)
}

fn set_from_profile<'g>(group: &'g FiniteGroup, profile: &[f64], delta: f64) -> Result<GroupSubset<'g>> {
    let mut m = BitSet::new(group.order());
    for (g, &v) in profile.iter().enumerate() {
        if (v - delta).abs() < BOUNDARY_GUARD {
            return Err(Error::BohrBoundary { element: g });
        }
        if v < delta {
            m.insert(g);
        }
    }
    Ok(GroupSubset::from_mask(group, m))
}

pub fn bohr_set<'g>(spec: &BohrSpec<'g>) -> Result<GroupSubset<'g>> {
    let profile = radius_profile(spec.group, &spec.gamma)?;
    set_from_profile(spec.group, &profile, spec.delta_f64())
}

/// The spec with `delta/2`; checks `C·C ⊆ B`.
pub fn bohr_halving<'g>(spec: &BohrSpec<'g>) -> Result<BohrSpec<'g>> {
    let half = BohrSpec::new(spec.group, spec.gamma.clone(), spec.delta / Rational::from_integer(2))?;
    let b = bohr_set(spec)?;
    let c = bohr_set(&half)?;
    if let Some(w) = product_set(&c, &c)?.witness_not_in(&b) {
        return Err(Error::Falsified(alloc::format!("C·C ⊄ B at element {w}")));
    }
    Ok(half)
}

#[derive(Clone, Debug)]
pub struct BohrSearch {
    pub max_m: usize,
    pub delta_grid: Vec<Rational>,
    /// Most character lists tried; beyond it lists are sampled.
    pub budget: usize,
    pub seed: u64,
}

impl Default for BohrSearch {
    fn default() -> Self {
        let mut delta_grid: Vec<Rational> = (1..=20).rev().map(|k| ratio(k, 10)).collect();
        delta_grid.push(ratio(1, 100));
        Self { max_m: 2, delta_grid, budget: 20_000, seed: 0 }
    }
}

fn binom(n: usize, k: usize) -> usize {
    let mut r: usize = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

/// Character lists to try: all multisets of size `1..=max_m` in lexicographic
/// order when they fit in the budget, otherwise the trivial character then a
/// seeded sample.
fn candidate_lists(n: usize, max_m: usize, budget: usize, seed: u64) -> Vec<Vec<usize>> {
    let total: usize = (1..=max_m).map(|m| binom(n + m - 1, m)).fold(0, usize::saturating_add);
    let mut out = Vec::new();
    if total <= budget {
        for m in 1..=max_m {
            let mut idx = vec![0usize; m];
            loop {
                out.push(idx.clone());
                let mut i = m;
                while i > 0 && idx[i - 1] == n - 1 {
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                let v = idx[i - 1] + 1;
                for x in idx[i - 1..].iter_mut() {
                    *x = v;
                }
            }
        }
        return out;
    }
    let mut st = seed ^ 0x9e37_79b9_7f4a_7c15;
    let mut seen = alloc::collections::BTreeSet::new();
    out.push(vec![0]);
    seen.insert(vec![0]);
    let mut tries = 0;
    while out.len() < budget && tries < budget * 4 {
        tries += 1;
        let m = 1 + (splitmix(&mut st) as usize) % max_m;
        let mut l: Vec<usize> = (0..m).map(|_| splitmix(&mut st) as usize % n).collect();
        l.sort_unstable();
        if seen.insert(l.clone()) {
            out.push(l);
        }
    }
    out
}

/// Largest Bohr set contained in `S` over the candidate character lists and
/// the delta grid (ties: first in enumeration order). `None` when `S` lacks
/// the identity or nothing fits.
pub fn find_bohr_in<'g>(s: &GroupSubset<'g>, params: &BohrSearch) -> Result<Option<BohrSpec<'g>>> {
    let g = s.group();
    g.abelian_decomposition().ok_or(Error::NotAbelian)?;
    if !s.contains(0) {
        return Ok(None);
    }
    let mut grid: Vec<Rational> = params
        .delta_grid
        .iter()
        .copied()
        .filter(|d| *d > Rational::from_integer(0) && *d <= Rational::from_integer(2))
        .collect();
    grid.sort_by(|a, b| b.cmp(a));
    grid.dedup();
    let mut best: Option<(usize, Vec<usize>, Rational)> = None;
    for chars in candidate_lists(g.order(), params.max_m.max(1), params.budget.max(1), params.seed) {
        let gamma: Vec<Vec<usize>> = chars.iter().map(|&c| g.coords(c).unwrap()).collect();
        let profile = radius_profile(g, &gamma)?;
        // B_delta ⊆ S iff delta <= min radius outside S
        let floor = (0..g.order()).filter(|&x| !s.contains(x)).map(|x| profile[x]).fold(f64::INFINITY, f64::min);
        for &delta in &grid {
            let df = to_f64(delta);
            if df > floor {
                continue;
            }
            if profile.iter().any(|&v| (v - df).abs() < BOUNDARY_GUARD) {
                continue;
            }
            let size = profile.iter().filter(|&&v| v < df).count();
            if best.as_ref().is_none_or(|(b, _, _)| size > *b) {
                best = Some((size, chars.clone(), delta));
            }
            break;
        }
        if best.as_ref().is_some_and(|(b, _, _)| *b == s.size()) {
            break;
        }
    }
    match best {
        None => Ok(None),
        Some((_, chars, delta)) => Ok(Some(BohrSpec::from_elements(g, &chars, delta)?)),
    }
}
