//! Covering procedures: greedy separated sets, Ruzsa covering, and an exact
//! minimum-cover oracle for small instances.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::rational::{int, ratio, to_big, Epsilon, Threshold};
use crate::stabilizer::stabilizer;
use crate::subset::{product_set, GroupSubset};
use crate::vc::Side;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};

/// Output of [`haussler_cover`]: `centers` is the separated set `E`,
/// `assignment[i]` the center assigned to the `i`-th element of `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HausslerCover {
    pub centers: Vec<usize>,
    pub members: Vec<usize>,
    pub assignment: Vec<usize>,
}

impl HausslerCover {
    pub fn size(&self) -> usize {
        self.centers.len()
    }
}

fn distance(a: &GroupSubset<'_>, x: usize, y: usize, side: Side) -> usize {
    // |xA △ yA| = |y^{-1}x A △ A|, |Ax △ Ay| = |A x y^{-1} △ A|
    let g = a.group();
    let overlap = match side {
        Side::Left => a.left_overlap(g.mul(g.inv(y), x)),
        Side::Right => a.right_overlap(g.mul(x, g.inv(y))),
    };
    2 * (a.size() - overlap)
}

/// Maximal `N`-separated subset of `B` under `d(x, y) = |xA △ yA|` (or the
/// right analogue), built greedily in ascending element order.
///
/// The covering containment `B ⊆ E·(Stab_N(A) ∩ B^{-1}B)` (left) or
/// `B ⊆ (Stab_N(A) ∩ BB^{-1})·E` (right) is checked before returning.
pub fn haussler_cover(a: &GroupSubset<'_>, b: &GroupSubset<'_>, n: Threshold, side: Side) -> Result<HausslerCover> {
    a.check_same(b)?;
    if a.is_empty() {
        return Err(Error::Empty("A"));
    }
    if b.is_empty() {
        return Err(Error::Empty("B"));
    }
    let mut centers: Vec<usize> = Vec::new();
    for x in b.iter() {
        if centers.iter().all(|&y| !n.admits(distance(a, x, y, side))) {
            centers.push(x);
        }
    }
    let members = b.elements();
    let mut assignment = Vec::with_capacity(members.len());
    for &x in &members {
        let y = centers
            .iter()
            .copied()
            .find(|&y| n.admits(distance(a, x, y, side)))
            .ok_or_else(|| Error::Falsified(alloc::format!("separated set not maximal at {x}")))?;
        assignment.push(y);
    }
    let cover = HausslerCover { centers, members, assignment };
    check_haussler_containment(a, b, n, side, &cover)?;
    Ok(cover)
}

fn check_haussler_containment(
    a: &GroupSubset<'_>,
    b: &GroupSubset<'_>,
    n: Threshold,
    side: Side,
    cover: &HausslerCover,
) -> Result<()> {
    let g = a.group();
    let stab = stabilizer(a, n, side);
    let binv = b.inverse();
    let local = match side {
        Side::Left => stab.intersection(&product_set(&binv, b)?)?,
        Side::Right => stab.intersection(&product_set(b, &binv)?)?,
    };
    let e = GroupSubset::from_elements(g, cover.centers.iter().copied())?;
    let covered = match side {
        Side::Left => product_set(&e, &local)?,
        Side::Right => product_set(&local, &e)?,
    };
    match b.witness_not_in(&covered) {
        None => Ok(()),
        Some(w) => Err(Error::Falsified(alloc::format!("element {w} of B not covered by E and the stabilizer"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HausslerCheck {
    pub cov: usize,
    pub bound: BigRational,
    pub ok: bool,
}

/// `|E| <= (30|BA|/(eps|A|))^d` (left; `|AB|` on the right), with `N = eps|A|`.
///
/// `d = 0` takes the bypass `cov = 1`, valid because `|BA| = |A|` then makes
/// all translates coincide.
pub fn haussler_bound_check(
    a: &GroupSubset<'_>,
    b: &GroupSubset<'_>,
    eps: Epsilon,
    side: Side,
    d: usize,
) -> Result<HausslerCheck> {
    let ba = match side {
        Side::Left => product_set(b, a)?,
        Side::Right => product_set(a, b)?,
    };
    if a.is_empty() {
        return Err(Error::Empty("A"));
    }
    if d == 0 {
        if ba.size() != a.size() {
            return Err(Error::Precondition { what: "d = 0 requires |BA| = |A|", witness: ba.size() });
        }
        return Ok(HausslerCheck { cov: 1, bound: BigRational::one(), ok: true });
    }
    let cover = haussler_cover(a, b, Threshold::scaled(eps, a.size()), side)?;
    let base = int(30) * ratio(ba.size(), a.size()) / eps.value();
    let bound = to_big(base).pow(d as i32);
    let ok = BigRational::from_integer(BigInt::from(cover.size())) <= bound;
    Ok(HausslerCheck { cov: cover.size(), bound, ok })
}


/// Greedy maximal `F ⊆ A` with pairwise disjoint translates `fB`, ascending
/// order. Checks `A ⊆ FB²` and `|F|·|B| <= |AB|`.
pub fn ruzsa_cover(a: &GroupSubset<'_>, b: &GroupSubset<'_>) -> Result<Vec<usize>> {
    a.check_same(b)?;
    if a.is_empty() {
        return Err(Error::Empty("A"));
    }
    if !b.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let g = a.group();
    let mut used = BitSet::new(g.order());
    let mut f = Vec::new();
    for x in a.iter() {
        let t = b.left_translate(x);
        if !t.mask().intersects(&used) {
            used.union_with(t.mask());
            f.push(x);
        }
    }
    let fs = GroupSubset::from_elements(g, f.iter().copied())?;
    let b2 = product_set(b, b)?;
    if let Some(w) = a.witness_not_in(&product_set(&fs, &b2)?) {
        return Err(Error::Falsified(alloc::format!("A ⊄ FB², witness {w}")));
    }
    let ab = product_set(a, b)?;
    if f.len() * b.size() > ab.size() {
        return Err(Error::Falsified(alloc::format!("|F| = {} exceeds |AB|/|B| = {}/{}", f.len(), ab.size(), b.size())));
    }
    Ok(f)
}

/// Exact `cov(A : P)` result; `AtLeast` when the search stopped at the cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverCount {
    Exact(usize),
    AtLeast(usize),
}

impl CoverCount {
    pub fn exact(self) -> Option<usize> {
        match self {
            CoverCount::Exact(n) => Some(n),
            CoverCount::AtLeast(_) => None,
        }
    }
}

/// Minimum number of left translates `gP`, `g` ranging over the whole group,
/// covering `A`. Branch and bound on the uncovered element with the fewest
/// covering translates. Returns `AtLeast(cap + 1)` if no cover of size `<= cap`
/// exists.
pub fn min_cover_oracle(a: &GroupSubset<'_>, p: &GroupSubset<'_>, cap: usize) -> Result<CoverCount> {
    a.check_same(p)?;
    if a.is_empty() {
        return Ok(CoverCount::Exact(0));
    }
    if p.is_empty() {
        return Err(Error::Empty("P"));
    }
    let g = a.group();
    // distinct traces gP ∩ A, dropping traces contained in another
    let mut traces: BTreeSet<BitSet> = BTreeSet::new();
    for x in 0..g.order() {
        let mut t = p.left_translate(x).into_mask();
        t.intersect_with(a.mask());
        if !t.is_empty() {
            traces.insert(t);
        }
    }
    let all: Vec<BitSet> = traces.into_iter().collect();
    let sets: Vec<BitSet> = all
        .iter()
        .filter(|t| !all.iter().any(|u| u != *t && t.is_subset(u)))
        .cloned()
        .collect();
    let max_size = sets.iter().map(BitSet::count).max().unwrap_or(1);
    let mut state = CoverSearch {
        sets: &sets,
        max_size,
        best: greedy_cover(a.mask(), &sets),
    };
    // search strictly below min(greedy, cap + 1)
    let greedy = state.best;
    state.best = greedy.min(cap + 1);
    let mut uncovered = a.mask().clone();
    state.dfs(&mut uncovered, 0);
    let best = state.best;
    Ok(if best <= cap { CoverCount::Exact(best) } else { CoverCount::AtLeast(cap + 1) })
}

fn greedy_cover(target: &BitSet, sets: &[BitSet]) -> usize {
    let mut left = target.clone();
    let mut n = 0;
    while !left.is_empty() {
        let best = sets.iter().max_by_key(|s| s.intersection_count(&left)).unwrap();
        left.difference_with(best);
        n += 1;
    }
    n
}

struct CoverSearch<'s> {
    sets: &'s [BitSet],
    max_size: usize,
    best: usize,
}

impl CoverSearch<'_> {
    fn dfs(&mut self, uncovered: &mut BitSet, used: usize) {
        if uncovered.is_empty() {
            self.best = self.best.min(used);
            return;
        }
        let lower = uncovered.count().div_ceil(self.max_size);
        if used + lower >= self.best {
            return;
        }
        // branch on the uncovered point lying in the fewest sets
        let mut pivot = None;
        let mut fewest = usize::MAX;
        for x in uncovered.iter() {
            let c = self.sets.iter().filter(|s| s.contains(x)).count();
            if c < fewest {
                fewest = c;
                pivot = Some(x);
            }
        }
        let x = pivot.unwrap();
        let mut options: Vec<&BitSet> = self.sets.iter().filter(|s| s.contains(x)).collect();
        options.sort_by_key(|s| core::cmp::Reverse(s.intersection_count(uncovered)));
        for s in options {
            let mut next = uncovered.clone();
            next.difference_with(s);
            self.dfs(&mut next, used + 1);
        }
    }
}
