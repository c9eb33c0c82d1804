//! Regularity and structure lemmas, and the coset approximation for
//! subgroups inside a right stabilizer.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::rational::{int, le, lt, ratio, Epsilon, Rational, Threshold};
use crate::stabilizer::{st_eps, stabilizer_witness, translate_distance, z_error_set};
use crate::subset::{product_set, GroupSubset};
use crate::vc::Side;
use alloc::vec::Vec;
use num_traits::One;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityCheck<'g> {
    pub z: GroupSubset<'g>,
    /// `2N/eps`
    pub bound: Rational,
    pub ok: bool,
    /// `Some(|Z| <= eps|A|)` when `X ⊆ St_{eps²/2}(A)` on the stabilizer side.
    pub eps_bound: Option<bool>,
}

/// `|Z^l_eps(A, X)| <= 2N/eps` for `X ⊆ Stab^r_N(A)`, the precondition verified.
pub fn check_regularity<'g>(
    a: &GroupSubset<'g>,
    x: &GroupSubset<'_>,
    n: Threshold,
    eps: Epsilon,
) -> Result<RegularityCheck<'g>> {
    check(a, x, n, eps, Side::Right)
}

/// Mirror image: `X ⊆ Stab^l_N(A)` bounds `|Z^r_eps(A, X)|`. The result is
/// cross-checked against `Z^l_eps(A^{-1}, X^{-1})^{-1}`.
pub fn mirrored_regularity<'g>(
    a: &GroupSubset<'g>,
    x: &GroupSubset<'_>,
    n: Threshold,
    eps: Epsilon,
) -> Result<RegularityCheck<'g>> {
    let r = check(a, x, n, eps, Side::Left)?;
    let via = check(&a.inverse(), &x.inverse(), n, eps, Side::Right)?;
    if via.z.inverse() != r.z {
        return Err(Error::Falsified("mirrored error set differs from the inverted left error set".into()));
    }
    Ok(r)
}

fn check<'g>(
    a: &GroupSubset<'g>,
    x: &GroupSubset<'_>,
    n: Threshold,
    eps: Epsilon,
    stab_side: Side,
) -> Result<RegularityCheck<'g>> {
    a.check_same(x)?;
    if x.is_empty() {
        return Err(Error::Empty("X"));
    }
    if let Some(w) = stabilizer_witness(a, x, n, stab_side) {
        let what = match stab_side {
            Side::Right => "X ⊆ Stab^r_N(A)",
            Side::Left => "X ⊆ Stab^l_N(A)",
        };
        return Err(Error::Precondition { what, witness: w });
    }
    let z = z_error_set(a, x, eps, stab_side.flip())?;
    let e = eps.value();
    let bound = int(2) * n.value() / e;
    let ok = le(z.size(), &bound);
    let half_sq = Epsilon::new(e * e / int(2))?;
    let tight = Threshold::scaled(half_sq, a.size());
    let eps_bound = stabilizer_witness(a, x, tight, stab_side)
        .is_none()
        .then(|| le(z.size(), &(e * int(a.size()))));
    Ok(RegularityCheck { z, bound, ok, eps_bound })
}

/// Objects of the structure lemma for `A` and `eps`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureCore<'g> {
    /// `St^l_{eps²/162}(A)`
    pub x: GroupSubset<'g>,
    pub nu: Rational,
    /// `St^r_{eps·nu/9}(A)`
    pub s: GroupSubset<'g>,
    /// `{a in A : |Xa \ A| < (eps/9)|X|}`
    pub a_prime: GroupSubset<'g>,
    /// `|A'| >= (1 - eps/3)|A|`
    pub claim_size: bool,
    /// `(1 - 2eps/9)|A'S| <= |A|`
    pub claim_spread: bool,
}

impl StructureCore<'_> {
    pub fn claims_hold(&self) -> bool {
        self.claim_size && self.claim_spread
    }
}

/// `nu` defaults to `min(|X|/|A|, eps)`; an override must lie in `(0, 1)` and
/// not exceed `|X|/|A|`.
pub fn structure_core<'g>(a: &GroupSubset<'g>, eps: Epsilon, nu: Option<Rational>) -> Result<StructureCore<'g>> {
    if a.is_empty() {
        return Err(Error::Empty("A"));
    }
    let g = a.group();
    let e = eps.value();
    let x = st_eps(a, Epsilon::new(e * e / int(162))?, Side::Left);
    let cap = ratio(x.size(), a.size());
    let nu = match nu {
        None => cap.min(e),
        Some(v) => {
            if v <= Rational::from_integer(0) || v >= Rational::one() || v > cap {
                return Err(Error::EpsilonRange(alloc::format!("nu = {v} must lie in (0, 1) and not exceed |X|/|A| = {cap}")));
            }
            v
        }
    };
    let s = st_eps(a, Epsilon::new(e * nu / int(9))?, Side::Right);
    let fiber = e / int(9) * int(x.size());
    let xs = x.elements();
    let mut m = BitSet::new(g.order());
    for y in a.iter() {
        let outside = xs.iter().filter(|&&t| !a.contains(g.mul(t, y))).count();
        if lt(outside, &fiber) {
            m.insert(y);
        }
    }
    let a_prime = GroupSubset::from_mask(g, m);
    let aps = product_set(&a_prime, &s)?;
    let claim_size = Rational::from_integer(a_prime.size() as i64) >= (Rational::one() - e / int(3)) * int(a.size());
    let claim_spread = (Rational::one() - int(2) * e / int(9)) * int(aps.size()) <= int(a.size());
    Ok(StructureCore { x, nu, s, a_prime, claim_size, claim_spread })
}

/// How `D` is chosen in the structure lemma.
#[derive(Clone, Copy, Debug)]
pub enum DMode<'a, 'g> {
    /// `D = A'S`
    Full,
    /// `D = FP`, required to satisfy `A' ⊆ FP ⊆ A'S`.
    Sandwich { f: &'a [usize], p: &'a GroupSubset<'g> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureApprox<'g> {
    pub d: GroupSubset<'g>,
    /// `|A △ D| / |A|`
    pub err: Rational,
    /// `err < eps`
    pub ok: bool,
}

pub fn structure_approximant<'g>(a: &GroupSubset<'g>, eps: Epsilon, mode: DMode<'_, '_>) -> Result<StructureApprox<'g>> {
    let core = structure_core(a, eps, None)?;
    approximant_from_core(a, &core, eps, mode)
}

pub fn approximant_from_core<'g>(
    a: &GroupSubset<'g>,
    core: &StructureCore<'g>,
    eps: Epsilon,
    mode: DMode<'_, '_>,
) -> Result<StructureApprox<'g>> {
    let g = a.group();
    let aps = product_set(&core.a_prime, &core.s)?;
    let d = match mode {
        DMode::Full => aps,
        DMode::Sandwich { f, p } => {
            a.check_same(p)?;
            let fs = GroupSubset::from_elements(g, f.iter().copied())?;
            let fp = product_set(&fs, p)?;
            if let Some(w) = core.a_prime.witness_not_in(&fp) {
                return Err(Error::Precondition { what: "A' ⊆ FP", witness: w });
            }
            if let Some(w) = fp.witness_not_in(&aps) {
                return Err(Error::Precondition { what: "FP ⊆ A'S", witness: w });
            }
            fp
        }
    };
    let diff = a.symmetric_difference_size(&d)?;
    let err = ratio(diff, a.size());
    let ok = err < eps.value();
    Ok(StructureApprox { d, err, ok })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetApprox<'g> {
    /// Union of the left cosets `C` of `H` with `|C ∩ A| >= |H|/2`.
    pub d: GroupSubset<'g>,
    pub err_abs: usize,
    pub ok: bool,
    /// `|P| = Σ_C |C ∩ A|·|C \ A|`
    pub pairs: usize,
}

fn left_cosets(h: &GroupSubset<'_>) -> Vec<BitSet> {
    let g = h.group();
    let mut seen = BitSet::new(g.order());
    let mut out = Vec::new();
    for x in 0..g.order() {
        if !seen.contains(x) {
            let c = h.left_translate(x).into_mask();
            seen.union_with(&c);
            out.push(c);
        }
    }
    out
}

fn check_coset_pre(a: &GroupSubset<'_>, h: &GroupSubset<'_>, n: Threshold) -> Result<()> {
    a.check_same(h)?;
    if a.is_empty() {
        return Err(Error::Empty("A"));
    }
    if !h.is_subgroup() {
        return Err(Error::NotSubgroup);
    }
    if let Some(w) = stabilizer_witness(a, h, n, Side::Right) {
        return Err(Error::Precondition { what: "H ⊆ Stab^r_N(A)", witness: w });
    }
    Ok(())
}

/// Rounds `A` to a union of left `H`-cosets, ties at `|H|/2` included.
/// The pair-count identity `2|P| = Σ_{x in H} |Ax △ A|` is checked exactly.
pub fn coset_approximant<'g>(a: &GroupSubset<'g>, h: &GroupSubset<'_>, n: Threshold) -> Result<CosetApprox<'g>> {
    check_coset_pre(a, h, n)?;
    let g = a.group();
    let mut d = BitSet::new(g.order());
    let mut pairs = 0;
    for c in left_cosets(h) {
        let inside = c.intersection_count(a.mask());
        pairs += inside * (h.size() - inside);
        if 2 * inside >= h.size() {
            d.union_with(&c);
        }
    }
    let moved: usize = h.iter().map(|x| translate_distance(a, x, Side::Right)).sum();
    if 2 * pairs != moved {
        return Err(Error::Falsified(alloc::format!("2|P| = {} but Σ|Ax △ A| = {moved}", 2 * pairs)));
    }
    let d = GroupSubset::from_mask(g, d);
    let err_abs = a.symmetric_difference_size(&d)?;
    Ok(CosetApprox { ok: n.admits(err_abs), d, err_abs, pairs })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetRegularity<'g> {
    pub z: GroupSubset<'g>,
    /// `N/(2eps²)`
    pub coset_bound: Rational,
    /// `2N/eps`
    pub lemma_bound: Rational,
    pub ok: bool,
}

/// `|Z^l_eps(A, H)|` against both `N/(2eps²)` and `2N/eps`.
pub fn coset_regularity<'g>(a: &GroupSubset<'g>, h: &GroupSubset<'_>, n: Threshold, eps: Epsilon) -> Result<CosetRegularity<'g>> {
    check_coset_pre(a, h, n)?;
    let z = z_error_set(a, h, eps, Side::Left)?;
    let e = eps.value();
    let coset_bound = n.value() / (int(2) * e * e);
    let lemma_bound = int(2) * n.value() / e;
    let ok = le(z.size(), &coset_bound) && le(z.size(), &lemma_bound);
    Ok(CosetRegularity { z, coset_bound, lemma_bound, ok })
}
