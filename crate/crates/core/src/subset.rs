//! Subsets of a finite group as membership masks, with product-set algebra.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::rational::{ratio, Rational};
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone)]
pub struct GroupSubset<'g> {
    group: &'g FiniteGroup,
    mask: BitSet,
    size: usize,
}

impl PartialEq for GroupSubset<'_> {
    fn eq(&self, other: &Self) -> bool {
        same_group(self.group, other.group) && self.mask == other.mask
    }
}

impl Eq for GroupSubset<'_> {}

impl fmt::Debug for GroupSubset<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.mask.iter()).finish()
    }
}

#[inline]
fn same_group(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    core::ptr::eq(a, b) || a == b
}

impl<'g> GroupSubset<'g> {
    pub fn from_mask(group: &'g FiniteGroup, mask: BitSet) -> Self {
        assert_eq!(mask.len(), group.order(), "mask length must equal the group order");
        let size = mask.count();
        GroupSubset { group, mask, size }
    }

    pub fn empty(group: &'g FiniteGroup) -> Self {
        Self::from_mask(group, BitSet::new(group.order()))
    }

    pub fn full(group: &'g FiniteGroup) -> Self {
        Self::from_mask(group, BitSet::full(group.order()))
    }

    pub fn identity(group: &'g FiniteGroup) -> Self {
        Self::from_mask(group, BitSet::from_indices(group.order(), [0]))
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(group: &'g FiniteGroup, elems: I) -> Result<Self> {
        let n = group.order();
        let mut mask = BitSet::new(n);
        for x in elems {
            if x >= n {
                return Err(Error::ElementOutOfRange { element: x, order: n });
            }
            mask.insert(x);
        }
        Ok(Self::from_mask(group, mask))
    }

    #[inline]
    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    #[inline]
    pub fn mask(&self) -> &BitSet {
        &self.mask
    }

    pub fn into_mask(self) -> BitSet {
        self.mask
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask.contains(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask.iter()
    }

    pub fn elements(&self) -> Vec<usize> {
        self.mask.to_vec()
    }

    pub(crate) fn check_same(&self, other: &GroupSubset<'_>) -> Result<()> {
        if same_group(self.group, other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    fn with_mask(&self, mask: BitSet) -> Self {
        Self::from_mask(self.group, mask)
    }

    pub fn union(&self, other: &GroupSubset<'_>) -> Result<Self> {
        self.check_same(other)?;
        let mut m = self.mask.clone();
        m.union_with(&other.mask);
        Ok(self.with_mask(m))
    }

    pub fn intersection(&self, other: &GroupSubset<'_>) -> Result<Self> {
        self.check_same(other)?;
        let mut m = self.mask.clone();
        m.intersect_with(&other.mask);
        Ok(self.with_mask(m))
    }

    pub fn difference(&self, other: &GroupSubset<'_>) -> Result<Self> {
        self.check_same(other)?;
        let mut m = self.mask.clone();
        m.difference_with(&other.mask);
        Ok(self.with_mask(m))
    }

    pub fn complement(&self) -> Self {
        self.with_mask(self.mask.complement())
    }

    pub fn is_subset(&self, other: &GroupSubset<'_>) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.mask.is_subset(&other.mask))
    }

    /// First element of `self` missing from `other`.
    pub fn witness_not_in(&self, other: &GroupSubset<'_>) -> Option<usize> {
        self.mask.first_not_in(&other.mask)
    }

    pub fn symmetric_difference_size(&self, other: &GroupSubset<'_>) -> Result<usize> {
        self.check_same(other)?;
        Ok(self.mask.symmetric_difference_count(&other.mask))
    }

    /// `xA`
    pub fn left_translate(&self, x: usize) -> Self {
        let g = self.group;
        let mut m = BitSet::new(g.order());
        for a in self.mask.iter() {
            m.insert(g.mul(x, a));
        }
        Self { group: g, mask: m, size: self.size }
    }

    /// `Ax`
    pub fn right_translate(&self, x: usize) -> Self {
        let g = self.group;
        let mut m = BitSet::new(g.order());
        for a in self.mask.iter() {
            m.insert(g.mul(a, x));
        }
        Self { group: g, mask: m, size: self.size }
    }

    /// `|xA ∩ A|` without building `xA`.
    #[inline]
    pub fn left_overlap(&self, x: usize) -> usize {
        let g = self.group;
        self.mask.iter().filter(|&a| self.mask.contains(g.mul(x, a))).count()
    }

    /// `|Ax ∩ A|` without building `Ax`.
    #[inline]
    pub fn right_overlap(&self, x: usize) -> usize {
        let g = self.group;
        self.mask.iter().filter(|&a| self.mask.contains(g.mul(a, x))).count()
    }

    /// `A^{-1}`
    pub fn inverse(&self) -> Self {
        let g = self.group;
        let mut m = BitSet::new(g.order());
        for a in self.mask.iter() {
            m.insert(g.inv(a));
        }
        Self { group: g, mask: m, size: self.size }
    }

    /// True iff `A = A^{-1}` and `A` contains the identity.
    pub fn is_symmetric(&self) -> bool {
        self.contains(0) && self.mask.iter().all(|a| self.contains(self.group.inv(a)))
    }

    pub fn is_subgroup(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        let g = self.group;
        let elems = self.elements();
        elems
            .iter()
            .all(|&a| elems.iter().all(|&b| self.contains(g.mul(a, b))))
    }
}

/// `AB = {ab : a in A, b in B}`.
pub fn product_set<'g>(a: &GroupSubset<'g>, b: &GroupSubset<'_>) -> Result<GroupSubset<'g>> {
    a.check_same(b)?;
    let g = a.group;
    let n = g.order();
    let mut m = BitSet::new(n);
    let bs = b.elements();
    for x in a.mask.iter() {
        for &y in &bs {
            m.insert(g.mul(x, y));
        }
    }
    Ok(GroupSubset::from_mask(g, m))
}

pub fn inverse_set<'g>(a: &GroupSubset<'g>) -> GroupSubset<'g> {
    a.inverse()
}

/// `A^n` via binary powering; `A^{2m} = (A^m)^2` and `A^{p}A^{q} = A^{p+q}`
/// follow from associativity of the set product.
pub fn power_set<'g>(a: &GroupSubset<'g>, n: usize) -> Result<GroupSubset<'g>> {
    if n == 0 {
        return Err(Error::ZeroPower);
    }
    let mut acc: Option<GroupSubset<'g>> = None;
    let mut base = a.clone();
    let mut k = n;
    loop {
        if k & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(x) => product_set(&x, &base)?,
            });
        }
        k >>= 1;
        if k == 0 {
            break;
        }
        base = product_set(&base, &base)?;
    }
    Ok(acc.unwrap())
}

/// `A^n` by the inductive definition `A^1 = A`, `A^{n+1} = A^n A`.
pub fn power_set_inductive<'g>(a: &GroupSubset<'g>, n: usize) -> Result<GroupSubset<'g>> {
    if n == 0 {
        return Err(Error::ZeroPower);
    }
    let mut acc = a.clone();
    for _ in 1..n {
        acc = product_set(&acc, a)?;
    }
    Ok(acc)
}

pub fn is_symmetric(a: &GroupSubset<'_>) -> bool {
    a.is_symmetric()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TuplingParams {
    /// `|A^2|/|A|`
    pub sigma: Rational,
    /// `|A^3|/|A|`
    pub tau: Rational,
    /// `|AA^{-1}|/|A|`
    pub delta: Rational,
    /// `|AA^{-1}A|/|A|`
    pub alpha: Rational,
}

pub fn tupling_params(a: &GroupSubset<'_>) -> Result<TuplingParams> {
    if a.is_empty() {
        return Err(Error::Empty("A"));
    }
    let n = a.size();
    let a2 = product_set(a, a)?;
    let a3 = product_set(&a2, a)?;
    let aai = product_set(a, &a.inverse())?;
    let aaia = product_set(&aai, a)?;
    Ok(TuplingParams {
        sigma: ratio(a2.size(), n),
        tau: ratio(a3.size(), n),
        delta: ratio(aai.size(), n),
        alpha: ratio(aaia.size(), n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, DEFAULT_ORDER_CAP};
    use proptest::prelude::*;

    fn g(spec: &str) -> FiniteGroup {
        build_group(spec, DEFAULT_ORDER_CAP).unwrap()
    }

    fn set<'g>(g: &'g FiniteGroup, e: &[usize]) -> GroupSubset<'g> {
        GroupSubset::from_elements(g, e.iter().copied()).unwrap()
    }

    // brute-force oracle: all pairwise products
    fn product_oracle(g: &FiniteGroup, a: &[usize], b: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = a.iter().flat_map(|&x| b.iter().map(move |&y| g.mul(x, y))).collect();
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn product_examples() {
        let z4 = g("Z4");
        let a = set(&z4, &[0, 1]);
        let ab = product_set(&a, &a).unwrap();
        assert_eq!(ab.elements(), product_oracle(&z4, &[0, 1], &[0, 1]));
        assert_eq!(ab.elements(), vec![0, 1, 2]);
        let e = GroupSubset::empty(&z4);
        assert!(product_set(&e, &a).unwrap().is_empty());
        assert!(product_set(&a, &e).unwrap().is_empty());
        let id = GroupSubset::identity(&z4);
        let b = set(&z4, &[1, 3]);
        assert_eq!(product_set(&id, &b).unwrap(), b);
    }

    #[test]
    fn group_mismatch() {
        let z4 = g("Z4");
        let z5 = g("Z5");
        let a = set(&z4, &[0]);
        let b = set(&z5, &[0]);
        assert_eq!(product_set(&a, &b), Err(Error::GroupMismatch));
    }

    #[test]
    fn inverse_and_powers() {
        let z4 = g("Z4");
        assert_eq!(set(&z4, &[0, 1]).inverse().elements(), vec![0, 3]);
        let z10 = g("Z10");
        let a = set(&z10, &[0, 1]);
        // direct triple sums: {0,1,2,3}
        let triple: Vec<usize> = {
            let mut v = Vec::new();
            for x in [0, 1] {
                for y in [0, 1] {
                    for z in [0, 1] {
                        v.push((x + y + z) % 10);
                    }
                }
            }
            v.sort();
            v.dedup();
            v
        };
        assert_eq!(power_set(&a, 3).unwrap().elements(), triple);
        assert_eq!(power_set(&a, 0), Err(Error::ZeroPower));
        let h = set(&z10, &[0, 5]);
        for n in 1..6 {
            assert_eq!(power_set(&h, n).unwrap(), h);
        }
    }

    #[test]
    fn symmetric_examples() {
        let z4 = g("Z4");
        assert!(set(&z4, &[0, 1, 3]).is_symmetric());
        assert!(!set(&z4, &[1]).is_symmetric());
        assert!(!GroupSubset::empty(&z4).is_symmetric());
    }

    #[test]
    fn tupling_examples() {
        let z10 = g("Z10");
        let t = tupling_params(&set(&z10, &[0, 1])).unwrap();
        assert_eq!(t.sigma, Rational::new(3, 2));
        assert_eq!(t.tau, Rational::new(2, 1));
        assert_eq!(t.delta, Rational::new(3, 2));
        assert_eq!(t.alpha, Rational::new(2, 1));
        let h = set(&z10, &[0, 2, 4, 6, 8]);
        let one = Rational::new(1, 1);
        let t = tupling_params(&h).unwrap();
        assert_eq!((t.sigma, t.tau, t.delta, t.alpha), (one, one, one, one));
        let z4 = g("Z4");
        assert_eq!(tupling_params(&set(&z4, &[0, 1])).unwrap().sigma, Rational::new(3, 2));
        assert_eq!(tupling_params(&GroupSubset::empty(&z4)), Err(Error::Empty("A")));
    }

    fn arb_instance() -> impl Strategy<Value = (usize, u64, u64)> {
        (0usize..6, any::<u64>(), any::<u64>())
    }

    const SPECS: [&str; 6] = ["Z12", "D5", "Q8", "S3", "Z2^2xZ3", "D4xZ2"];

    fn mask_from(g: &FiniteGroup, bits: u64) -> GroupSubset<'_> {
        GroupSubset::from_elements(g, (0..g.order()).filter(|&i| bits >> (i % 64) & 1 == 1)).unwrap()
    }

    proptest! {
        #[test]
        fn inverse_of_product((gi, x, y) in arb_instance()) {
            let g = g(SPECS[gi]);
            let a = mask_from(&g, x);
            let b = mask_from(&g, y);
            let lhs = product_set(&a, &b).unwrap().inverse();
            let rhs = product_set(&b.inverse(), &a.inverse()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(a.inverse().size(), a.size());
            for t in 0..g.order() {
                prop_assert_eq!(a.left_translate(t).size(), a.size());
                prop_assert_eq!(a.right_translate(t).size(), a.size());
            }
            if g.is_abelian() {
                prop_assert_eq!(product_set(&a, &b).unwrap(), product_set(&b, &a).unwrap());
            }
        }

        #[test]
        fn powers_add((gi, x, _y) in arb_instance(), m in 1usize..4, n in 1usize..4) {
            let g = g(SPECS[gi]);
            let a = mask_from(&g, x);
            let lhs = power_set(&a, m + n).unwrap();
            let rhs = product_set(&power_set(&a, m).unwrap(), &power_set(&a, n).unwrap()).unwrap();
            prop_assert_eq!(&lhs, &rhs);
            prop_assert_eq!(lhs, power_set_inductive(&a, m + n).unwrap());
        }
    }
}
