//! Subgroup closure, enumeration and search.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::subset::GroupSubset;
use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

/// Default order cap for exhaustive subgroup enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 1024;

/// Closure of `seed ∪ gens` under multiplication, or `None` as soon as it
/// leaves `bound`.
fn close(g: &FiniteGroup, seed: &BitSet, gens: &[usize], bound: Option<&BitSet>) -> Option<BitSet> {
    let mut set = seed.clone();
    set.insert(0);
    let mut queue: VecDeque<usize> = set.iter().collect();
    while let Some(y) = queue.pop_front() {
        for &s in gens {
            let z = g.mul(y, s);
            if !set.contains(z) {
                if let Some(b) = bound {
                    if !b.contains(z) {
                        return None;
                    }
                }
                set.insert(z);
                queue.push_back(z);
            }
        }
    }
    Some(set)
}

/// Subgroup generated by `gens`.
pub fn generated_subgroup<'g>(g: &'g FiniteGroup, gens: &[usize]) -> GroupSubset<'g> {
    let seed = BitSet::new(g.order());
    GroupSubset::from_mask(g, close(g, &seed, gens, None).unwrap())
}

fn cyclic_subgroups(g: &FiniteGroup, bound: Option<&BitSet>) -> Vec<(usize, BitSet)> {
    let mut seen: BTreeMap<BitSet, usize> = BTreeMap::new();
    let mut out = Vec::new();
    for x in 0..g.order() {
        if bound.is_some_and(|b| !b.contains(x)) {
            continue;
        }
        if let Some(h) = close(g, &BitSet::new(g.order()), &[x], bound) {
            if !seen.contains_key(&h) {
                seen.insert(h.clone(), x);
                out.push((x, h));
            }
        }
    }
    out
}

/// Fixpoint of joins with cyclic subgroups, all staying inside `bound` if given.
fn join_fixpoint(g: &FiniteGroup, bound: Option<&BitSet>, limit: Option<usize>) -> Vec<BitSet> {
    let cyclic = cyclic_subgroups(g, bound);
    let mut gens: BTreeMap<BitSet, Vec<usize>> = BTreeMap::new();
    let mut order: Vec<BitSet> = Vec::new();
    let mut queue = VecDeque::new();
    for (x, h) in &cyclic {
        if gens.insert(h.clone(), alloc::vec![*x]).is_none() {
            order.push(h.clone());
            queue.push_back(h.clone());
        }
    }
    'outer: while let Some(h) = queue.pop_front() {
        let hg = gens[&h].clone();
        for (c, _) in &cyclic {
            if h.contains(*c) {
                continue;
            }
            let mut ng = hg.clone();
            ng.push(*c);
            if let Some(j) = close(g, &h, &ng, bound) {
                if !gens.contains_key(&j) {
                    gens.insert(j.clone(), ng);
                    order.push(j.clone());
                    queue.push_back(j);
                    if limit.is_some_and(|l| order.len() >= l) {
                        break 'outer;
                    }
                }
            }
        }
    }
    order
}

fn sort_key(m: &BitSet) -> (usize, Vec<usize>) {
    (m.count(), m.to_vec())
}

/// All subgroups of `g`, ascending by size then by element list.
///
/// With `limit`, at most that many subgroups are returned (a partial list).
/// Without it, groups above `cap` are refused.
pub fn enumerate_subgroups<'g>(
    g: &'g FiniteGroup,
    limit: Option<usize>,
    cap: usize,
) -> Result<Vec<GroupSubset<'g>>> {
    if limit.is_none() && g.order() > cap {
        return Err(Error::EnumerationCap { order: g.order(), cap });
    }
    let mut subs = join_fixpoint(g, None, limit);
    if let Some(l) = limit {
        subs.truncate(l);
    }
    subs.sort_by_cached_key(sort_key);
    Ok(subs.into_iter().map(|m| GroupSubset::from_mask(g, m)).collect())
}

/// Largest subgroup contained in `s`; ties go to the lexicographically least
/// element list. `None` when `s` lacks the identity.
pub fn find_subgroup_in<'g>(s: &GroupSubset<'g>) -> Option<GroupSubset<'g>> {
    if !s.contains(0) {
        return None;
    }
    let g = s.group();
    let subs = join_fixpoint(g, Some(s.mask()), None);
    let best = subs
        .into_iter()
        .map(|m| (sort_key(&m), m))
        .min_by(|(a, _), (b, _)| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)))
        .map(|(_, m)| m)
        .unwrap_or_else(|| BitSet::from_indices(g.order(), [0]));
    Some(GroupSubset::from_mask(g, best))
}

/// If `a` is a left coset `xH`, returns `(H, x)` with `x` the least element of `a`.
pub fn as_left_coset<'g>(a: &GroupSubset<'g>) -> Option<(GroupSubset<'g>, usize)> {
    let x = a.iter().next()?;
    let g = a.group();
    let h = a.left_translate(g.inv(x));
    h.is_subgroup().then_some((h, x))
}

/// If `a` is a right coset `Hx`, returns `(H, x)`.
pub fn as_right_coset<'g>(a: &GroupSubset<'g>) -> Option<(GroupSubset<'g>, usize)> {
    let x = a.iter().next()?;
    let g = a.group();
    let h = a.right_translate(g.inv(x));
    h.is_subgroup().then_some((h, x))
}
