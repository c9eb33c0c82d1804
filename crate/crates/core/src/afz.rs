//! Shrinking a stabilizer to a set of small polynomial growth.
//!
//! With `delta = m^{-1/d²}(30k)^{-1/d}(eps/n)^{1+1/d}`, `R = St^l_delta(A)`,
//! `w = d(d+1)` and `c = m(30k/delta)^d`, the least `t` with `u^{tw} <= c`
//! and `|R^{u^{t+1}}| < u^w|R^{u^t}|` gives `B = R^{u^t}`.
//!
//! `delta` and `c` are irrational in general, so every comparison is raised
//! to a power that clears the roots and done in big rationals:
//! `(s/|A|)^{d²} <= delta^{d²}` and `u^{twd} <= c^d`.

use crate::error::{Error, Result};
use crate::rational::{ratio, to_big, Epsilon, Rational, Threshold};
use crate::stabilizer::{st_eps, stabilizer};
use crate::subset::{power_set, product_set, GroupSubset};
use crate::vc::{vc_variant, Base, Side, Variant};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, ToPrimitive};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AfzCase {
    /// `d = VC^l_A(A)`, `k = |A²|/|A|`
    One,
    /// `d = VC^l_{A^{-1}}(A)`, `k = |A^{-1}A|/|A|`
    Two,
}

/// The three verified postconditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AfzCert {
    /// `|B^u| <= u^w |B|`
    pub growth: bool,
    /// `B^n ⊆ St^l_eps(A)`
    pub inside: bool,
    /// `|A| <= m^{1/d}(30kn/eps)^{d+1}|B|`
    pub size: bool,
}

impl AfzCert {
    pub fn all(&self) -> bool {
        self.growth && self.inside && self.size
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AfzResult<'g> {
    pub d: usize,
    pub k: Rational,
    pub m: Rational,
    /// Approximate `delta`, for reporting only.
    pub delta_used: f64,
    /// Largest `|xA △ A|` admitted into `R`.
    pub r_threshold: usize,
    pub r: GroupSubset<'g>,
    pub t: usize,
    pub b: GroupSubset<'g>,
    pub cert: AfzCert,
}

fn bigr(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn afz_shrink<'g>(a: &GroupSubset<'g>, eps: Epsilon, u: usize, n: usize, case: AfzCase, vc_cap: usize) -> Result<AfzResult<'g>> {
    if a.is_empty() {
        return Err(Error::Empty("A"));
    }
    if u < 2 || n < u {
        return Err(Error::Invalid(alloc::format!("need n >= u >= 2, got u = {u}, n = {n}")));
    }
    let size = a.size();
    let ainv = a.inverse();
    let m = ratio(product_set(a, &ainv)?.size(), size);
    let (d, k) = match case {
        AfzCase::One => (
            vc_variant(a, Base::Set(a), Side::Left, Variant::Translate, vc_cap)?.require()?,
            ratio(product_set(a, a)?.size(), size),
        ),
        AfzCase::Two => (
            vc_variant(a, Base::Set(&ainv), Side::Left, Variant::Translate, vc_cap)?.require()?,
            ratio(product_set(&ainv, a)?.size(), size),
        ),
    };
    if d == 0 {
        return Err(Error::VcZero);
    }
    let w = d * (d + 1);
    let (bm, bk, be) = (to_big(m), to_big(k), to_big(eps.value()));
    let thirty_k = bk.clone() * bigr(30);
    let n_over_eps = bigr(n) / be.clone();

    // delta^{d²} = (eps/n)^{d(d+1)} / (m (30k)^d)
    let delta_pow = Pow::pow(be.clone() / bigr(n), w as u32) / (bm.clone() * Pow::pow(thirty_k.clone(), d as u32));
    let admits = |s: usize| Pow::pow(bigr(s) / bigr(size), (d * d) as u32) <= delta_pow;
    let r_threshold = (0..=2 * size).take_while(|&s| admits(s)).last().unwrap_or(0);
    let r = stabilizer(a, Threshold::integer(r_threshold), Side::Left);

    // c^d = m^{d+1} (30k)^{d(d+1)} (n/eps)^{d(d+1)}
    let c_pow = Pow::pow(bm.clone(), (d + 1) as u32) * Pow::pow(thirty_k.clone(), w as u32) * Pow::pow(n_over_eps, w as u32);
    let uw = Pow::pow(BigInt::from(u), w as u32);
    let mut b = r.clone();
    let mut t = 0usize;
    loop {
        // u^{t w d} <= c^d
        let lhs = Pow::pow(BigInt::from(u), (t * w * d) as u32);
        if BigRational::from_integer(lhs) > c_pow {
            return Err(Error::Falsified(alloc::format!("no admissible t: growth never stalls below t = {t}")));
        }
        let next = power_set(&b, u)?;
        if BigInt::from(next.size()) < uw.clone() * BigInt::from(b.size()) {
            break;
        }
        b = next;
        t += 1;
    }

    let bu = power_set(&b, u)?;
    let growth = BigInt::from(bu.size()) <= uw * BigInt::from(b.size());
    let inside = power_set(&b, n)?.is_subset(&st_eps(a, eps, Side::Left))?;
    // |A|^d <= m (30kn/eps)^{d(d+1)} |B|^d
    let size_ok = Pow::pow(bigr(size), d as u32)
        <= bm * Pow::pow(thirty_k * bigr(n) / be, w as u32) * Pow::pow(bigr(b.size()), d as u32);
    let delta_used = delta_approx(m, k, eps.value(), n, d);
    Ok(AfzResult {
        d,
        k,
        m,
        delta_used,
        r_threshold,
        r,
        t,
        b,
        cert: AfzCert { growth, inside, size: size_ok },
    })
}

fn delta_approx(m: Rational, k: Rational, eps: Rational, n: usize, d: usize) -> f64 {
    let f = |r: Rational| r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN);
    let d = d as f64;
    libm::pow(f(m), -1.0 / (d * d)) * libm::pow(30.0 * f(k), -1.0 / d) * libm::pow(f(eps) / n as f64, 1.0 + 1.0 / d)
}
