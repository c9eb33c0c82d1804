//! Exact VC dimension of explicit set systems, translate systems in groups,
//! Sisask's trace systems and dual systems.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::subset::{product_set, GroupSubset};
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub const DEFAULT_VC_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    LeftTranslate,
    RightTranslate,
    Sisask,
    Dual,
    Custom,
}

/// A family of subsets of an ordered ground set. Members are masks over
/// ground positions; duplicates are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSystem {
    ground: Vec<usize>,
    family: Vec<BitSet>,
    provenance: Provenance,
}

/// Outcome of a capped VC computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VcDim {
    Exact(usize),
    /// A shattered set of the cap size exists; the true value may be larger.
    AtLeast(usize),
}

impl VcDim {
    pub fn exact(self) -> Option<usize> {
        match self {
            VcDim::Exact(d) => Some(d),
            VcDim::AtLeast(_) => None,
        }
    }

    pub fn require(self) -> Result<usize> {
        match self {
            VcDim::Exact(d) => Ok(d),
            VcDim::AtLeast(c) => Err(Error::VcCapReached(c)),
        }
    }
}

impl fmt::Display for VcDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VcDim::Exact(d) => write!(f, "{d}"),
            VcDim::AtLeast(c) => write!(f, ">={c}"),
        }
    }
}

impl SetSystem {
    /// Members are given as lists of ground identifiers; unknown identifiers are rejected.
    pub fn new(ground: Vec<usize>, members: &[Vec<usize>], provenance: Provenance) -> Result<Self> {
        let pos = |x: usize| {
            ground
                .iter()
                .position(|&g| g == x)
                .ok_or_else(|| Error::Invalid(alloc::format!("{x} is not in the ground set")))
        };
        let family = members
            .iter()
            .map(|m| {
                let mut b = BitSet::new(ground.len());
                for &x in m {
                    b.insert(pos(x)?);
                }
                Ok(b)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SetSystem { ground, family, provenance })
    }

    pub fn from_masks(ground: Vec<usize>, family: Vec<BitSet>, provenance: Provenance) -> Self {
        assert!(family.iter().all(|m| m.len() == ground.len()));
        SetSystem { ground, family, provenance }
    }

    pub fn ground(&self) -> &[usize] {
        &self.ground
    }

    pub fn family(&self) -> &[BitSet] {
        &self.family
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Members as sorted lists of ground identifiers.
    pub fn members(&self) -> Vec<Vec<usize>> {
        self.family
            .iter()
            .map(|m| m.iter().map(|p| self.ground[p]).collect())
            .collect()
    }

    /// Number of distinct members.
    pub fn distinct_members(&self) -> usize {
        self.family.iter().collect::<BTreeSet<_>>().len()
    }

    pub fn deduplicated(&self) -> SetSystem {
        let mut seen = BTreeSet::new();
        let family = self
            .family
            .iter()
            .filter(|m| seen.insert((*m).clone()))
            .cloned()
            .collect();
        SetSystem {
            ground: self.ground.clone(),
            family,
            provenance: self.provenance,
        }
    }

    /// Whether the ground positions in `t` are shattered.
    pub fn shatters(&self, t: &[usize]) -> bool {
        let traces: BTreeSet<Vec<bool>> = self
            .family
            .iter()
            .map(|m| t.iter().map(|&p| m.contains(p)).collect())
            .collect();
        traces.len() == 1usize << t.len()
    }
}

fn ground_map(n: usize, ground: &[usize]) -> Vec<usize> {
    let mut pos = vec![usize::MAX; n];
    for (i, &x) in ground.iter().enumerate() {
        pos[x] = i;
    }
    pos
}

fn to_ground_mask(s: &GroupSubset<'_>, pos: &[usize], len: usize) -> BitSet {
    let mut m = BitSet::new(len);
    for x in s.iter() {
        m.insert(pos[x]);
    }
    m
}

/// `{xA : x in B}` on ground `BA` (left) or `{Ax : x in B}` on ground `AB` (right).
pub fn translate_system(a: &GroupSubset<'_>, b: &GroupSubset<'_>, side: Side) -> Result<SetSystem> {
    if a.is_empty() {
        return Err(Error::Empty("A"));
    }
    if b.is_empty() {
        return Err(Error::Empty("B"));
    }
    let (ground_set, provenance) = match side {
        Side::Left => (product_set(b, a)?, Provenance::LeftTranslate),
        Side::Right => (product_set(a, b)?, Provenance::RightTranslate),
    };
    let ground = ground_set.elements();
    let n = a.group().order();
    let pos = ground_map(n, &ground);
    let family = b
        .iter()
        .map(|x| {
            let t = match side {
                Side::Left => a.left_translate(x),
                Side::Right => a.right_translate(x),
            };
            to_ground_mask(&t, &pos, ground.len())
        })
        .collect();
    Ok(SetSystem { ground, family, provenance })
}

/// `{xA ∩ B : x in BA^{-1}}` (left) or `{Ax ∩ B : x in A^{-1}B}` (right), on ground `B`.
pub fn sisask_system(a: &GroupSubset<'_>, b: &GroupSubset<'_>, side: Side) -> Result<SetSystem> {
    if a.is_empty() {
        return Err(Error::Empty("A"));
    }
    if b.is_empty() {
        return Err(Error::Empty("B"));
    }
    let shifts = match side {
        Side::Left => product_set(b, &a.inverse())?,
        Side::Right => product_set(&a.inverse(), b)?,
    };
    let ground = b.elements();
    let pos = ground_map(a.group().order(), &ground);
    let family = shifts
        .iter()
        .map(|x| {
            let t = match side {
                Side::Left => a.left_translate(x),
                Side::Right => a.right_translate(x),
            };
            to_ground_mask(&t.intersection(b).unwrap(), &pos, ground.len())
        })
        .collect();
    Ok(SetSystem {
        ground,
        family,
        provenance: Provenance::Sisask,
    })
}

/// Dual system: ground is the family (deduplicated unless `keep_multiplicity`),
/// members are `F_x = {F : x in F}` for `x` in the union of the family.
pub fn dual_system(s: &SetSystem, keep_multiplicity: bool) -> Result<SetSystem> {
    if s.family.is_empty() {
        return Err(Error::Empty("family"));
    }
    let mut seen = BTreeSet::new();
    let mut dual_ground = Vec::new();
    for (i, m) in s.family.iter().enumerate() {
        if keep_multiplicity || seen.insert(m.clone()) {
            dual_ground.push(i);
        }
    }
    let mut union = BitSet::new(s.ground.len());
    for m in &s.family {
        union.union_with(m);
    }
    let family = union
        .iter()
        .map(|x| {
            let mut fx = BitSet::new(dual_ground.len());
            for (j, &i) in dual_ground.iter().enumerate() {
                if s.family[i].contains(x) {
                    fx.insert(j);
                }
            }
            fx
        })
        .collect();
    Ok(SetSystem {
        ground: dual_ground,
        family,
        provenance: Provenance::Dual,
    })
}

struct Search {
    /// Member masks over candidate points.
    members: Vec<BitSet>,
    /// Column of each candidate point: which members contain it.
    columns: Vec<BitSet>,
    /// Ground position each candidate point came from.
    origin: Vec<usize>,
    points: usize,
}

impl Search {
    fn new(s: &SetSystem) -> Self {
        let f = s.family.len();
        let g = s.ground.len();
        // Complementing every member preserves shattering; keep the sparser side
        // so the "all-in" class prunes harder.
        let total: usize = s.family.iter().map(|m| m.count()).sum();
        let flip = 2 * total > f * g;
        let family: Vec<BitSet> = if flip {
            s.family.iter().map(|m| m.complement()).collect()
        } else {
            s.family.clone()
        };
        // columns, keeping only mixed points with distinct columns
        let mut seen = BTreeSet::new();
        let mut columns = Vec::new();
        let mut origin = Vec::new();
        for p in 0..g {
            let mut col = BitSet::new(f);
            for (i, m) in family.iter().enumerate() {
                if m.contains(p) {
                    col.insert(i);
                }
            }
            let c = col.count();
            if c == 0 || c == f {
                continue;
            }
            if seen.insert(col.clone()) {
                columns.push(col);
                origin.push(p);
            }
        }
        let points = columns.len();
        let mut members = vec![BitSet::new(points); f];
        for (p, col) in columns.iter().enumerate() {
            for i in col.iter() {
                members[i].insert(p);
            }
        }
        Search { members, columns, origin, points }
    }

    /// Lexicographically first shattered set of exactly `k` points, if any.
    fn find(&self, k: usize) -> Option<Vec<usize>> {
        let all = BitSet::full(self.members.len());
        let mut chosen = Vec::with_capacity(k);
        if self.dfs(&[all], 0, k, &mut chosen) {
            Some(chosen)
        } else {
            None
        }
    }

    fn dfs(&self, classes: &[BitSet], start: usize, k: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == k {
            return true;
        }
        let need = k - chosen.len();
        if self.points < start + need {
            return false;
        }
        // classes[0] holds the members containing every chosen point; a new
        // point must lie in one of them.
        let mut reach = BitSet::new(self.points);
        for i in classes[0].iter() {
            reach.union_with(&self.members[i]);
        }
        let mut next = Vec::with_capacity(classes.len() * 2);
        for p in reach.iter().filter(|&p| p >= start) {
            if self.points - p < need {
                break;
            }
            let col = &self.columns[p];
            next.clear();
            let mut ok = true;
            for c in classes {
                let inside = c.intersection_count(col);
                if inside == 0 || inside == c.count() {
                    ok = false;
                    break;
                }
                let mut a = c.clone();
                a.intersect_with(col);
                let mut b = c.clone();
                b.difference_with(col);
                next.push(a);
                next.push(b);
            }
            if !ok {
                continue;
            }
            chosen.push(p);
            if self.dfs(&next, p + 1, k, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

/// Exact VC dimension when below `cap`; `AtLeast(cap)` if a set of `cap`
/// points is shattered.
///
/// Sizes are tried in ascending order; at each size the lexicographically
/// first shattered set ends the level, and the first empty level ends the search.
pub fn vc_dimension(s: &SetSystem, cap: usize) -> Result<VcDim> {
    Ok(vc_dimension_with_witness(s, cap)?.0)
}

/// As [`vc_dimension`], also returning a largest shattered set found (as ground identifiers).
pub fn vc_dimension_with_witness(s: &SetSystem, cap: usize) -> Result<(VcDim, Vec<usize>)> {
    if s.family.is_empty() {
        return Err(Error::Empty("family"));
    }
    let distinct = s.distinct_members();
    if distinct <= 1 {
        return Ok((if cap == 0 { VcDim::AtLeast(0) } else { VcDim::Exact(0) }, Vec::new()));
    }
    if cap == 0 {
        return Ok((VcDim::AtLeast(0), Vec::new()));
    }
    // two distinct members separate a point, so level 1 needs no search: the
    // first point in some but not all members
    let mut union = BitSet::new(s.ground.len());
    let mut common = BitSet::full(s.ground.len());
    for m in &s.family {
        union.union_with(m);
        common.intersect_with(m);
    }
    union.difference_with(&common);
    let mut best = vec![s.ground[union.first().expect("distinct members differ somewhere")]];
    if cap == 1 {
        return Ok((VcDim::AtLeast(1), best));
    }
    let search = Search::new(s);
    let mut k = 2;
    loop {
        if k > cap {
            return Ok((VcDim::AtLeast(cap), best));
        }
        if (1usize << k.min(63)) > distinct {
            return Ok((VcDim::Exact(k - 1), best));
        }
        match search.find(k) {
            Some(t) => {
                best = t.into_iter().map(|p| s.ground[search.origin[p]]).collect();
                if k == cap {
                    return Ok((VcDim::AtLeast(cap), best));
                }
                k += 1;
            }
            None => return Ok((VcDim::Exact(k - 1), best)),
        }
    }
}

/// Base set for a translate-family dimension.
#[derive(Clone, Copy, Debug)]
pub enum Base<'a, 'g> {
    Whole,
    Set(&'a GroupSubset<'g>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `VC(F^side_B(A))`
    Translate,
    /// `dim_{side VC}(A|B) = VC(F^side(A|B))`
    Sisask,
    /// `VC*(F^side_B(A))`
    DualOfTranslate,
}

/// Composite entry point for the translate-system dimensions.
///
/// For `Translate` the zero test `|BA| = |A|` (left) / `|AB| = |A|` (right)
/// is tried first.
pub fn vc_variant(a: &GroupSubset<'_>, base: Base<'_, '_>, side: Side, variant: Variant, cap: usize) -> Result<VcDim> {
    let whole;
    let b = match base {
        Base::Whole => {
            whole = GroupSubset::full(a.group());
            &whole
        }
        Base::Set(b) => b,
    };
    match variant {
        Variant::Translate => {
            if a.is_empty() || b.is_empty() {
                return Err(Error::Empty(if a.is_empty() { "A" } else { "B" }));
            }
            let prod = match side {
                Side::Left => product_set(b, a)?,
                Side::Right => product_set(a, b)?,
            };
            if prod.size() == a.size() {
                return Ok(VcDim::Exact(0));
            }
            vc_dimension(&translate_system(a, b, side)?, cap)
        }
        Variant::Sisask => vc_dimension(&sisask_system(a, b, side)?, cap),
        Variant::DualOfTranslate => vc_dimension(&dual_system(&translate_system(a, b, side)?, false)?, cap),
    }
}

/// `VC^side_B(A)` computed by exhaustive search (no zero shortcut).
pub fn translate_vc(a: &GroupSubset<'_>, b: &GroupSubset<'_>, side: Side, cap: usize) -> Result<VcDim> {
    vc_dimension(&translate_system(a, b, side)?, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, FiniteGroup, DEFAULT_ORDER_CAP};
    use proptest::prelude::*;

    fn g(spec: &str) -> FiniteGroup {
        build_group(spec, DEFAULT_ORDER_CAP).unwrap()
    }

    fn set<'g>(g: &'g FiniteGroup, e: &[usize]) -> GroupSubset<'g> {
        GroupSubset::from_elements(g, e.iter().copied()).unwrap()
    }

    /// Exhaustive oracle: every subset of the ground, traces counted directly.
    fn vc_brute(s: &SetSystem) -> usize {
        let g = s.ground().len();
        assert!(g <= 16);
        let mut best = 0;
        for bits in 1u32..(1 << g) {
            let t: Vec<usize> = (0..g).filter(|&i| bits >> i & 1 == 1).collect();
            if t.len() > best && s.shatters(&t) {
                best = t.len();
            }
        }
        best
    }

    #[test]
    fn z4_examples() {
        let z4 = g("Z4");
        let a = set(&z4, &[0, 1]);
        let full = GroupSubset::full(&z4);
        let sys = translate_system(&a, &full, Side::Left).unwrap();
        assert_eq!(sys.ground(), &[0, 1, 2, 3]);
        assert_eq!(sys.distinct_members(), 4);
        assert_eq!(vc_brute(&sys), 2);
        assert_eq!(vc_dimension(&sys, DEFAULT_VC_CAP).unwrap(), VcDim::Exact(2));

        let sys = translate_system(&a, &a, Side::Left).unwrap();
        assert_eq!(vc_brute(&sys), 1);
        assert_eq!(vc_dimension(&sys, DEFAULT_VC_CAP).unwrap(), VcDim::Exact(1));

        let id = GroupSubset::identity(&z4);
        let sys = translate_system(&a, &id, Side::Left).unwrap();
        assert_eq!(sys.members(), vec![vec![0, 1]]);
        assert_eq!(vc_dimension(&sys, DEFAULT_VC_CAP).unwrap(), VcDim::Exact(0));

        let sys = translate_system(&full, &a, Side::Right).unwrap();
        assert_eq!(sys.distinct_members(), 1);

        assert_eq!(vc_variant(&a, Base::Set(&a), Side::Left, Variant::Translate, 12).unwrap(), VcDim::Exact(1));
        assert_eq!(vc_variant(&a, Base::Whole, Side::Left, Variant::Translate, 12).unwrap(), VcDim::Exact(2));
    }

    #[test]
    fn sisask_examples() {
        let z8 = g("Z8");
        let h = set(&z8, &[0, 2, 4, 6]);
        let sys = sisask_system(&h, &h, Side::Left).unwrap();
        assert_eq!(sys.deduplicated().members(), vec![vec![0, 2, 4, 6]]);
        let full = GroupSubset::full(&z8);
        assert_eq!(sisask_system(&full, &full, Side::Left).unwrap().deduplicated().family().len(), 1);

        let z4 = g("Z4");
        let a = set(&z4, &[0, 1]);
        let sys = sisask_system(&a, &a, Side::Left).unwrap();
        // x over {0,1} + {0,3} = {0,1,3}
        assert_eq!(sys.members(), vec![vec![0, 1], vec![1], vec![0]]);
    }

    #[test]
    fn dual_examples() {
        let z4 = g("Z4");
        let a = set(&z4, &[0, 1]);
        let single = translate_system(&a, &GroupSubset::identity(&z4), Side::Left).unwrap();
        let d = dual_system(&single, false).unwrap();
        assert_eq!(d.ground().len(), 1);
        assert_eq!(d.deduplicated().family().len(), 1);
        assert_eq!(d.family()[0].count(), 1);

        let sys = translate_system(&a, &GroupSubset::full(&z4), Side::Left).unwrap();
        let d = dual_system(&sys, false).unwrap();
        assert_eq!(d.ground().len(), 4);
        assert_eq!(vc_brute(&d), 2);
        assert_eq!(vc_dimension(&d, 12).unwrap(), VcDim::Exact(2));
        let empty = SetSystem::from_masks(vec![0], vec![], Provenance::Custom);
        assert!(dual_system(&empty, false).is_err());
        assert!(vc_dimension(&empty, 12).is_err());
    }

    #[test]
    fn cap_is_a_lower_bound() {
        // the full power set of 4 points
        let members: Vec<Vec<usize>> = (0u32..16).map(|b| (0..4).filter(|&i| b >> i & 1 == 1).collect()).collect();
        let s = SetSystem::new(vec![0, 1, 2, 3], &members, Provenance::Custom).unwrap();
        assert_eq!(vc_dimension(&s, 12).unwrap(), VcDim::Exact(4));
        assert_eq!(vc_dimension(&s, 3).unwrap(), VcDim::AtLeast(3));
        assert_eq!(vc_dimension(&s, 4).unwrap(), VcDim::AtLeast(4));
        assert_eq!(VcDim::AtLeast(3).require(), Err(Error::VcCapReached(3)));
    }

    #[test]
    fn witness_is_shattered() {
        let z12 = g("Z12");
        let a = set(&z12, &[0, 1, 3, 7]);
        let sys = translate_system(&a, &GroupSubset::full(&z12), Side::Left).unwrap();
        let (d, w) = vc_dimension_with_witness(&sys, 12).unwrap();
        assert_eq!(d, VcDim::Exact(w.len()));
        let pos: Vec<usize> = w.iter().map(|x| sys.ground().iter().position(|g| g == x).unwrap()).collect();
        assert!(sys.shatters(&pos));
    }

    fn random_system(seed: u64, points: usize, sets: usize) -> SetSystem {
        let mut st = seed;
        let members: Vec<Vec<usize>> = (0..sets)
            .map(|_| (0..points).filter(|_| crate::group::splitmix(&mut st) & 1 == 1).collect())
            .collect();
        SetSystem::new((0..points).collect(), &members, Provenance::Custom).unwrap()
    }

    proptest! {
        #[test]
        fn matches_brute_force(seed in any::<u64>(), points in 1usize..10, sets in 1usize..24) {
            let s = random_system(seed, points, sets);
            prop_assert_eq!(vc_dimension(&s, 12).unwrap(), VcDim::Exact(vc_brute(&s)));
        }

        #[test]
        fn duplicate_and_double_dual_invariance(seed in any::<u64>(), points in 1usize..9, sets in 1usize..16) {
            let s = random_system(seed, points, sets);
            let d = vc_dimension(&s, 12).unwrap();
            prop_assert_eq!(vc_dimension(&s.deduplicated(), 12).unwrap(), d);
            // the dual ranges over the union of the family, so the double dual
            // equals the system with the empty member removed
            let nonempty: Vec<Vec<usize>> = s.members().into_iter().filter(|m| !m.is_empty()).collect();
            prop_assume!(!nonempty.is_empty());
            let stripped = SetSystem::new(s.ground().to_vec(), &nonempty, Provenance::Custom).unwrap();
            let dd = dual_system(&dual_system(&s, false).unwrap(), false).unwrap();
            let e = vc_dimension(&dd, 12).unwrap();
            prop_assert_eq!(e, vc_dimension(&stripped, 12).unwrap());
            if nonempty.len() == s.family().len() {
                prop_assert_eq!(e, d);
            } else {
                let (e, d) = (e.exact().unwrap(), d.exact().unwrap());
                prop_assert!(e <= d && d <= e + 1);
            }
            let dm = dual_system(&s, true).unwrap();
            prop_assert_eq!(vc_dimension(&dm, 12).unwrap(), vc_dimension(&dual_system(&s, false).unwrap(), 12).unwrap());
        }

        #[test]
        fn exchange_symmetry(gi in 0usize..4, x in any::<u64>(), y in any::<u64>()) {
            let specs = ["D4", "Q8", "S3", "D5"];
            let gg = g(specs[gi]);
            let n = gg.order();
            let a = GroupSubset::from_elements(&gg, (0..n).filter(|&i| x >> i & 1 == 1)).unwrap();
            let b = GroupSubset::from_elements(&gg, (0..n).filter(|&i| y >> i & 1 == 1)).unwrap();
            prop_assume!(!a.is_empty() && !b.is_empty());
            let l = translate_vc(&a, &b, Side::Left, 12).unwrap();
            let r = translate_vc(&a.inverse(), &b.inverse(), Side::Right, 12).unwrap();
            prop_assert_eq!(l, r);
            let whole = translate_vc(&a, &GroupSubset::full(&gg), Side::Left, 12).unwrap().exact().unwrap();
            prop_assert!(l.exact().unwrap() <= whole);
        }
    }
}
