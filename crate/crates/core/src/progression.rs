//! Coset progressions `H + {Σ l_i x_i : |l_i| <= L_i}` in abelian groups.

use crate::error::{Error, Result};
use crate::subgroups::{enumerate_subgroups, find_subgroup_in, DEFAULT_ENUMERATION_CAP};
use crate::subset::{product_set, GroupSubset};
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetProgression<'g> {
    pub h: GroupSubset<'g>,
    pub generators: Vec<usize>,
    pub bounds: Vec<usize>,
    pub proper: bool,
}

impl<'g> CosetProgression<'g> {
    /// Builds the progression and sets `proper`.
    pub fn new(h: GroupSubset<'g>, generators: Vec<usize>, bounds: Vec<usize>) -> Result<Self> {
        let g = h.group();
        if !g.is_abelian() {
            return Err(Error::NotAbelian);
        }
        if !h.is_subgroup() {
            return Err(Error::NotSubgroup);
        }
        if generators.len() != bounds.len() {
            return Err(Error::Invalid("generators and bounds differ in length".into()));
        }
        if let Some(&x) = generators.iter().find(|&&x| x >= g.order()) {
            return Err(Error::ElementOutOfRange { element: x, order: g.order() });
        }
        let mut cp = Self { h, generators, bounds, proper: false };
        let set = cp.set_unchecked();
        let expected = cp.bounds.iter().fold(cp.h.size(), |acc, &l| acc.saturating_mul(2 * l + 1));
        cp.proper = set.size() == expected;
        Ok(cp)
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    fn set_unchecked(&self) -> GroupSubset<'g> {
        let g = self.h.group();
        let mut acc = self.h.clone();
        for (&x, &l) in self.generators.iter().zip(&self.bounds) {
            acc = product_set(&acc, &segment(g, x, l)).unwrap();
        }
        acc
    }

    /// The progression with every bound halved (rounded down); its square
    /// lies inside this one.
    pub fn halved(&self) -> Result<Self> {
        Self::new(self.h.clone(), self.generators.clone(), self.bounds.iter().map(|l| l / 2).collect())
    }
}

/// `{l x : |l| <= L}`
fn segment(g: &crate::group::FiniteGroup, x: usize, l: usize) -> GroupSubset<'_> {
    let mut elems = Vec::with_capacity(2 * l + 1);
    let (mut up, mut down) = (0, 0);
    elems.push(0);
    for _ in 0..l.min(g.order()) {
        up = g.mul(up, x);
        down = g.mul(down, g.inv(x));
        elems.push(up);
        elems.push(down);
    }
    GroupSubset::from_elements(g, elems).unwrap()
}

pub fn coset_progression_set<'g>(cp: &CosetProgression<'g>) -> GroupSubset<'g> {
    cp.set_unchecked()
}

#[derive(Clone, Copy, Debug)]
pub struct ProgressionSearch {
    pub max_rank: usize,
    /// Most (subgroup, generators) candidates examined.
    pub budget: usize,
}

impl Default for ProgressionSearch {
    fn default() -> Self {
        Self { max_rank: 2, budget: 50_000 }
    }
}

/// Largest `L` with `base + {l x : |l| <= L} ⊆ S`, stopping once the
/// segment wraps around.
fn max_bound<'g>(base: &GroupSubset<'g>, x: usize, s: &GroupSubset<'g>) -> usize {
    let g = s.group();
    let ord = g.element_order(x);
    let mut best = 0;
    let mut cur = base.clone();
    for l in 1..=ord / 2 {
        let step = GroupSubset::from_elements(g, [g.pow(x, l), g.inv(g.pow(x, l))]).unwrap();
        cur = cur.union(&product_set(base, &step).unwrap()).unwrap();
        if !cur.is_subset(s).unwrap() {
            break;
        }
        best = l;
    }
    best
}

/// Searches subgroups `H ⊆ S` (largest first) and up to `max_rank`
/// generators from `S \ H` for the largest progression set inside `S`.
/// `None` when `S` lacks the identity; a budget cut-off returns the best so
/// far, which is no evidence that nothing larger exists.
pub fn find_progression_in<'g>(s: &GroupSubset<'g>, params: &ProgressionSearch) -> Result<Option<CosetProgression<'g>>> {
    let g = s.group();
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    if !s.contains(0) {
        return Ok(None);
    }
    let mut subs: Vec<GroupSubset<'g>> = if g.order() <= DEFAULT_ENUMERATION_CAP {
        enumerate_subgroups(g, None, DEFAULT_ENUMERATION_CAP)?
            .into_iter()
            .filter(|h| h.is_subset(s).unwrap())
            .collect()
    } else {
        let mut v = alloc::vec![GroupSubset::identity(g)];
        if let Some(h) = find_subgroup_in(s) {
            if h.size() > 1 {
                v.push(h);
            }
        }
        v
    };
    subs.sort_by(|a, b| b.size().cmp(&a.size()).then_with(|| a.elements().cmp(&b.elements())));

    let mut best: Option<(usize, GroupSubset<'g>, Vec<usize>, Vec<usize>)> = None;
    let mut spent = 0usize;
    let mut consider = |h: &GroupSubset<'g>, gens: Vec<usize>, bounds: Vec<usize>, size: usize| {
        if best.as_ref().is_none_or(|b| size > b.0) {
            best = Some((size, h.clone(), gens, bounds));
        }
    };
    'outer: for h in &subs {
        consider(h, Vec::new(), Vec::new(), h.size());
        if params.max_rank == 0 {
            continue;
        }
        let cands: Vec<usize> = s.iter().filter(|&x| !h.contains(x)).collect();
        for (i, &x) in cands.iter().enumerate() {
            spent += 1;
            if spent > params.budget {
                break 'outer;
            }
            let l1 = max_bound(h, x, s);
            if l1 == 0 {
                continue;
            }
            let p1 = product_set(h, &segment(g, x, l1))?;
            consider(h, alloc::vec![x], alloc::vec![l1], p1.size());
            if params.max_rank < 2 {
                continue;
            }
            for &y in &cands[i + 1..] {
                if p1.contains(y) {
                    continue;
                }
                for a in (1..=l1).rev() {
                    spent += 1;
                    if spent > params.budget {
                        break 'outer;
                    }
                    let base = product_set(h, &segment(g, x, a))?;
                    let l2 = max_bound(&base, y, s);
                    if l2 > 0 {
                        let p2 = product_set(&base, &segment(g, y, l2))?;
                        consider(h, alloc::vec![x, y], alloc::vec![a, l2], p2.size());
                    }
                }
            }
        }
    }
    match best {
        None => Ok(None),
        Some((_, h, gens, bounds)) => Ok(Some(CosetProgression::new(h, gens, bounds)?)),
    }
}
