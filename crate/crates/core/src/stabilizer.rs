//! Stabilizer sets `Stab_N(A)` and error sets `Z_eps(A, X)`.
//!
//! Comparators: stabilizers use `|xA △ A| <= N`, error sets use
//! `min(|gX ∩ A|, |gX \ A|) >= eps|X|`.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::rational::{ge, Epsilon, Threshold};
use crate::subset::GroupSubset;
use crate::vc::Side;

/// `|xA △ A|` (left) or `|Ax △ A|` (right), as `2(|A| - |xA ∩ A|)`.
#[inline]
pub fn translate_distance(a: &GroupSubset<'_>, x: usize, side: Side) -> usize {
    let overlap = match side {
        Side::Left => a.left_overlap(x),
        Side::Right => a.right_overlap(x),
    };
    2 * (a.size() - overlap)
}

/// `Stab^side_N(A) = {x : |xA △ A| <= N}`.
pub fn stabilizer<'g>(a: &GroupSubset<'g>, n: Threshold, side: Side) -> GroupSubset<'g> {
    let g = a.group();
    let mut m = BitSet::new(g.order());
    for x in 0..g.order() {
        if n.admits(translate_distance(a, x, side)) {
            m.insert(x);
        }
    }
    GroupSubset::from_mask(g, m)
}

/// `St^side_eps(A) = Stab^side_{eps|A|}(A)`.
pub fn st_eps<'g>(a: &GroupSubset<'g>, eps: Epsilon, side: Side) -> GroupSubset<'g> {
    stabilizer(a, Threshold::scaled(eps, a.size()), side)
}

/// Largest `|xA △ A|` over `x` in `x_set`: the least `N` with `X ⊆ Stab_N(A)`.
pub fn max_distance(a: &GroupSubset<'_>, x_set: &GroupSubset<'_>, side: Side) -> usize {
    x_set.iter().map(|x| translate_distance(a, x, side)).max().unwrap_or(0)
}

/// First element of `x_set` outside `Stab^side_N(A)`.
pub fn stabilizer_witness(a: &GroupSubset<'_>, x_set: &GroupSubset<'_>, n: Threshold, side: Side) -> Option<usize> {
    x_set.iter().find(|&x| !n.admits(translate_distance(a, x, side)))
}

/// `Z^side_eps(A, X)`: the `g` whose translate `gX` (or `Xg`) meets both `A`
/// and its complement in at least `eps|X|` points.
pub fn z_error_set<'g>(a: &GroupSubset<'g>, x_set: &GroupSubset<'_>, eps: Epsilon, side: Side) -> Result<GroupSubset<'g>> {
    a.check_same(x_set)?;
    if x_set.is_empty() {
        return Err(Error::Empty("X"));
    }
    let g = a.group();
    let bound = eps.value() * crate::rational::int(x_set.size());
    let xs = x_set.elements();
    let mut m = BitSet::new(g.order());
    for t in 0..g.order() {
        let inside = xs
            .iter()
            .filter(|&&x| {
                let y = match side {
                    Side::Left => g.mul(t, x),
                    Side::Right => g.mul(x, t),
                };
                a.contains(y)
            })
            .count();
        let outside = xs.len() - inside;
        if ge(inside.min(outside), &bound) {
            m.insert(t);
        }
    }
    Ok(GroupSubset::from_mask(g, m))
}
