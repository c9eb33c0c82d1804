//! Finite groups over element indices `0..n` with the identity at index 0.

use crate::error::{Error, Result};
use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

/// Largest order for which a full multiplication table is materialized.
pub const TABLE_MAX: usize = 4096;
/// Default cap on the order of groups built from specs.
pub const DEFAULT_ORDER_CAP: usize = 20_000;
/// Up to this order associativity is checked on every triple.
pub const EXHAUSTIVE_ASSOC_MAX: usize = 512;
const SAMPLED_ASSOC_TRIPLES: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Law {
    /// Mixed-radix coordinates, first factor most significant.
    Abelian { factors: Vec<usize>, strides: Vec<usize> },
    /// `r^i` at index `i`, `s r^i` at index `n + i`.
    Dihedral { n: usize },
    Table,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    law: Law,
    table: Option<Vec<u16>>,
    inv: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    pub fn trivial() -> Self {
        Self::abelian(&[]).expect("trivial group")
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("Z0 is not a finite group".into()));
        }
        Self::abelian(&[n])
    }

    /// Direct product `Z_{m_1} x ... x Z_{m_k}`; an empty list gives the trivial group.
    pub fn abelian(factors: &[usize]) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::Invalid("cyclic factor of order 0".into()));
        }
        let order = checked_product(factors)?;
        let mut strides = vec![1; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1];
        }
        let law = Law::Abelian {
            factors: factors.to_vec(),
            strides,
        };
        let mut g = FiniteGroup {
            order,
            law,
            table: None,
            inv: Vec::new(),
            labels: None,
        };
        g.inv = (0..order)
            .map(|x| {
                let c = g.coords(x).unwrap();
                let neg: Vec<usize> = c
                    .iter()
                    .zip(factors)
                    .map(|(&ci, &m)| (m - ci) % m)
                    .collect();
                g.index_of_coords(&neg) as u32
            })
            .collect();
        g.materialize();
        Ok(g)
    }

    /// Dihedral group of order `2n`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("D0 is not defined".into()));
        }
        let order = 2 * n;
        let inv = (0..order)
            .map(|x| if x < n { ((n - x) % n) as u32 } else { x as u32 })
            .collect();
        let labels = (0..order)
            .map(|x| {
                if x < n {
                    format!("r^{x}")
                } else {
                    format!("sr^{}", x - n)
                }
            })
            .collect();
        let mut g = FiniteGroup {
            order,
            law: Law::Dihedral { n },
            table: None,
            inv,
            labels: Some(labels),
        };
        g.materialize();
        Ok(g)
    }

    /// Symmetric group on `n <= 6` points, permutations in lexicographic order,
    /// product `(s*t)(i) = s(t(i))`.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 6 {
            return Err(Error::Invalid(format!("S{n}: need 1 <= n <= 6")));
        }
        let perms = permutations(n);
        let index = |p: &[u8]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let order = perms.len();
        let mut mul = vec![0u16; order * order];
        for (i, s) in perms.iter().enumerate() {
            for (j, t) in perms.iter().enumerate() {
                let st: Vec<u8> = t.iter().map(|&k| s[k as usize]).collect();
                mul[i * order + j] = index(&st) as u16;
            }
        }
        let labels = perms
            .iter()
            .map(|p| p.iter().map(|d| char::from(b'1' + d)).collect::<String>())
            .collect();
        Self::from_validated_table(order, mul, Some(labels))
    }

    /// Quaternion group: `1, -1, i, -i, j, -j, k, -k`.
    pub fn quaternion() -> Self {
        // unit index: 0=1, 1=i, 2=j, 3=k; element = 2*unit + sign
        const UNIT: [[(usize, bool); 4]; 4] = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        let mut mul = vec![0u16; 64];
        for a in 0..8 {
            for b in 0..8 {
                let (u, neg) = UNIT[a / 2][b / 2];
                let sign = (a % 2 == 1) ^ (b % 2 == 1) ^ neg;
                mul[a * 8 + b] = (2 * u + sign as usize) as u16;
            }
        }
        let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        Self::from_validated_table(8, mul, Some(labels)).expect("Q8 table")
    }

    /// Direct product with index `g * |other| + h`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<Self> {
        if let (Some(a), Some(b)) = (self.abelian_decomposition(), other.abelian_decomposition()) {
            let mut f = a.to_vec();
            f.extend_from_slice(b);
            return Self::abelian(&f);
        }
        let order = self
            .order
            .checked_mul(other.order)
            .ok_or(Error::OrderCap { order: usize::MAX, cap: TABLE_MAX })?;
        if order > TABLE_MAX {
            return Err(Error::OrderCap { order, cap: TABLE_MAX });
        }
        let m = other.order;
        let mut mul = vec![0u16; order * order];
        for x in 0..order {
            for y in 0..order {
                let g = self.mul(x / m, y / m);
                let h = other.mul(x % m, y % m);
                mul[x * order + y] = (g * m + h) as u16;
            }
        }
        let labels = match (&self.labels, &other.labels) {
            (None, None) => None,
            _ => Some(
                (0..order)
                    .map(|x| format!("({},{})", self.label(x / m), other.label(x % m)))
                    .collect(),
            ),
        };
        Self::from_validated_table(order, mul, labels)
    }

    /// Builds a group from a raw multiplication table, checking the axioms.
    /// If the identity is not at index 0 it is swapped there.
    pub fn from_table(mul: &[Vec<usize>]) -> Result<Self> {
        let order = mul.len();
        if order == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if order > TABLE_MAX {
            return Err(Error::OrderCap { order, cap: TABLE_MAX });
        }
        for (i, row) in mul.iter().enumerate() {
            if row.len() != order {
                return Err(Error::NotAGroup(format!("row {i} has length {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= order) {
                return Err(Error::NotAGroup(format!("entry {bad} out of range in row {i}")));
            }
        }
        let e = (0..order)
            .find(|&e| (0..order).all(|x| mul[e][x] == x && mul[x][e] == x))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        // relabel by the transposition (0 e)
        let swap = |x: usize| {
            if x == 0 {
                e
            } else if x == e {
                0
            } else {
                x
            }
        };
        let mut flat = vec![0u16; order * order];
        for x in 0..order {
            for y in 0..order {
                flat[x * order + y] = swap(mul[swap(x)][swap(y)]) as u16;
            }
        }
        let g = Self::from_validated_table(order, flat, None)?;
        g.check_associativity()?;
        Ok(g)
    }

    fn from_validated_table(order: usize, mul: Vec<u16>, labels: Option<Vec<String>>) -> Result<Self> {
        let mut inv = vec![u32::MAX; order];
        for x in 0..order {
            let row = &mul[x * order..(x + 1) * order];
            if mul[x] as usize != x || row[0] as usize != x {
                return Err(Error::NotAGroup(format!("index 0 is not an identity for {x}")));
            }
            let mut seen = vec![false; order];
            for &v in row {
                if core::mem::replace(&mut seen[v as usize], true) {
                    return Err(Error::NotAGroup(format!("row {x} is not a permutation")));
                }
            }
            let y = row.iter().position(|&v| v == 0).unwrap();
            if mul[y * order + x] != 0 {
                return Err(Error::NotAGroup(format!("{x} has no two-sided inverse")));
            }
            inv[x] = y as u32;
        }
        Ok(FiniteGroup {
            order,
            law: Law::Table,
            table: Some(mul),
            inv,
            labels,
        })
    }

    fn materialize(&mut self) {
        if self.order <= TABLE_MAX && !matches!(self.law, Law::Table) {
            let n = self.order;
            let mut t = vec![0u16; n * n];
            for x in 0..n {
                for y in 0..n {
                    t[x * n + y] = self.mul_formula(x, y) as u16;
                }
            }
            self.table = Some(t);
        }
    }

    /// Checks associativity: every triple up to order 512, sampled triples above.
    pub fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::NotAGroup(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
            }
            Ok(())
        };
        if n <= EXHAUSTIVE_ASSOC_MAX {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            check(a, b, c)?;
                        }
                    }
                }
            }
        } else {
            let mut state = 0x9E37_79B9_7F4A_7C15u64 ^ n as u64;
            for _ in 0..SAMPLED_ASSOC_TRIPLES {
                let a = (splitmix(&mut state) % n as u64) as usize;
                let b = (splitmix(&mut state) % n as u64) as usize;
                let c = (splitmix(&mut state) % n as u64) as usize;
                check(a, b, c)?;
            }
        }
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        match &self.table {
            Some(t) => t[x * self.order + y] as usize,
            None => self.mul_formula(x, y),
        }
    }

    fn mul_formula(&self, x: usize, y: usize) -> usize {
        match &self.law {
            Law::Abelian { factors, strides } => {
                let mut out = 0;
                for (&m, &s) in factors.iter().zip(strides) {
                    let a = (x / s) % m;
                    let b = (y / s) % m;
                    out += ((a + b) % m) * s;
                }
                out
            }
            Law::Dihedral { n } => {
                let n = *n;
                match (x < n, y < n) {
                    (true, true) => (x + y) % n,
                    (true, false) => n + (y - n + n - x) % n,
                    (false, true) => n + (x - n + y) % n,
                    (false, false) => (y - n + n - (x - n)) % n,
                }
            }
            Law::Table => self.table.as_ref().unwrap()[x * self.order + y] as usize,
        }
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    pub fn pow(&self, x: usize, mut k: usize) -> usize {
        let mut acc = 0;
        let mut base = x;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        if self.abelian_decomposition().is_some() {
            return true;
        }
        (0..self.order).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Cyclic factor orders when the group was built as a product of cyclic groups.
    pub fn abelian_decomposition(&self) -> Option<&[usize]> {
        match &self.law {
            Law::Abelian { factors, .. } => Some(factors),
            _ => None,
        }
    }

    /// Coordinates of `x` under the cyclic decomposition.
    pub fn coords(&self, x: usize) -> Option<Vec<usize>> {
        match &self.law {
            Law::Abelian { factors, strides } => Some(
                factors
                    .iter()
                    .zip(strides)
                    .map(|(&m, &s)| (x / s) % m)
                    .collect(),
            ),
            _ => None,
        }
    }

    pub fn index_of_coords(&self, c: &[usize]) -> usize {
        match &self.law {
            Law::Abelian { factors, strides } => c
                .iter()
                .zip(factors.iter().zip(strides))
                .map(|(&ci, (&m, &s))| (ci % m) * s)
                .sum(),
            _ => panic!("index_of_coords on a non-product group"),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> String {
        if let Some(l) = &self.labels {
            return l[x].clone();
        }
        match self.coords(x) {
            Some(c) if c.len() > 1 => {
                let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                format!("({})", parts.join(","))
            }
            _ => x.to_string(),
        }
    }

    /// Raw table rows (for serialization).
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|x| (0..self.order).map(|y| self.mul(x, y)).collect())
            .collect()
    }
}

fn checked_product(factors: &[usize]) -> Result<usize> {
    factors.iter().try_fold(1usize, |acc, &m| {
        acc.checked_mul(m).ok_or(Error::OrderCap {
            order: usize::MAX,
            cap: DEFAULT_ORDER_CAP,
        })
    })
}

fn permutations(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

pub(crate) fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One factor of a product spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Quaternion,
}

impl Factor {
    pub fn order(&self) -> Option<usize> {
        match *self {
            Factor::Cyclic(n) => Some(n),
            Factor::Dihedral(n) => n.checked_mul(2),
            Factor::Symmetric(n) => Some((1..=n).product()),
            Factor::Quaternion => Some(8),
        }
    }

    fn build(&self) -> Result<FiniteGroup> {
        match *self {
            Factor::Cyclic(n) => FiniteGroup::cyclic(n),
            Factor::Dihedral(n) => FiniteGroup::dihedral(n),
            Factor::Symmetric(n) => FiniteGroup::symmetric(n),
            Factor::Quaternion => Ok(FiniteGroup::quaternion()),
        }
    }
}

/// Parsed group spec: `Z<n>`, `Z<n>^<k>`, `D<n>`, `S<n>`, `Q8`, products joined
/// by `x`, or `table:<path>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Product(Vec<Factor>),
    Table(String),
}

impl GroupSpec {
    pub fn parse(spec: &str) -> Result<Self> {
        let err = |reason: &str| Error::GroupSpec {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let s = spec.trim();
        if let Some(path) = s.strip_prefix("table:") {
            if path.is_empty() {
                return Err(err("empty table path"));
            }
            return Ok(GroupSpec::Table(path.to_string()));
        }
        if s.is_empty() {
            return Err(err("empty spec"));
        }
        let mut factors = Vec::new();
        for part in s.split('x') {
            let (base, exp) = match part.split_once('^') {
                Some((b, e)) => (b, e.parse::<usize>().map_err(|_| err("bad exponent"))?),
                None => (part, 1),
            };
            if exp == 0 {
                return Err(err("exponent must be positive"));
            }
            let factor = if base == "Q8" {
                Factor::Quaternion
            } else {
                let mut chars = base.chars();
                let kind = chars.next().ok_or_else(|| err("empty factor"))?;
                let n: usize = chars
                    .as_str()
                    .parse()
                    .map_err(|_| err("expected a positive integer after the factor letter"))?;
                if n == 0 {
                    return Err(err("factor parameter must be positive"));
                }
                match kind {
                    'Z' => Factor::Cyclic(n),
                    'D' => Factor::Dihedral(n),
                    'S' if n <= 6 => Factor::Symmetric(n),
                    'S' => return Err(err("symmetric groups are limited to n <= 6")),
                    _ => return Err(err("unknown factor kind (expected Z, D, S or Q8)")),
                }
            };
            factors.extend(core::iter::repeat(factor).take(exp));
        }
        Ok(GroupSpec::Product(factors))
    }

    /// Order implied by the spec, if it fits in `usize`.
    pub fn order(&self) -> Option<usize> {
        match self {
            GroupSpec::Product(f) => f
                .iter()
                .try_fold(1usize, |acc, x| acc.checked_mul(x.order()?)),
            GroupSpec::Table(_) => None,
        }
    }

    /// Builds a product spec; `table:` specs need a file loader and are rejected here.
    pub fn build(&self, cap: usize) -> Result<FiniteGroup> {
        let factors = match self {
            GroupSpec::Product(f) => f,
            GroupSpec::Table(p) => {
                return Err(Error::Invalid(format!("table:{p} must be loaded from a file")))
            }
        };
        let order = self.order().ok_or(Error::OrderCap { order: usize::MAX, cap })?;
        if order > cap {
            return Err(Error::OrderCap { order, cap });
        }
        if let Some(cyc) = factors
            .iter()
            .map(|f| match f {
                Factor::Cyclic(n) => Some(*n),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
        {
            return FiniteGroup::abelian(&cyc);
        }
        let mut acc: Option<Box<FiniteGroup>> = None;
        for f in factors {
            let g = f.build()?;
            acc = Some(Box::new(match acc {
                None => g,
                Some(a) => a.direct_product(&g)?,
            }));
        }
        Ok(*acc.unwrap())
    }
}

/// Parses and builds a non-file group spec under the given order cap.
pub fn build_group(spec: &str, cap: usize) -> Result<FiniteGroup> {
    GroupSpec::parse(spec)?.build(cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orders(g: &FiniteGroup) -> Vec<usize> {
        (0..g.order()).map(|x| g.element_order(x)).collect()
    }

    #[test]
    fn z4() {
        let g = build_group("Z4", DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.mul(3, 2), 1);
        assert_eq!(g.inv(1), 3);
        assert_eq!(g.abelian_decomposition(), Some(&[4][..]));
    }

    #[test]
    fn z2_cubed_has_exponent_two() {
        let g = build_group("Z2^3", DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), 8);
        assert!((1..8).all(|x| g.element_order(x) == 2));
    }

    #[test]
    fn d4_has_two_elements_of_order_four() {
        let g = build_group("D4", DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), 8);
        g.check_associativity().unwrap();
        // brute-force order count over the table
        let count = (0..8)
            .filter(|&x| {
                let mut y = x;
                let mut k = 1;
                while y != 0 {
                    y = g.mul(y, x);
                    k += 1;
                }
                k == 4
            })
            .count();
        assert_eq!(count, 2);
        assert!(!g.is_abelian());
    }

    #[test]
    fn builtins_satisfy_axioms() {
        for spec in ["Z1", "Z6", "Z4xZ2^2", "D1", "D5", "S3", "S4", "Q8", "Q8xZ2", "D3xZ3", "Z2xD4"] {
            let g = build_group(spec, DEFAULT_ORDER_CAP).unwrap();
            g.check_associativity().unwrap();
            for x in 0..g.order() {
                assert_eq!(g.mul(x, g.inv(x)), 0, "{spec}");
                assert_eq!(g.mul(0, x), x);
            }
        }
    }

    #[test]
    fn quaternion_structure() {
        let q = FiniteGroup::quaternion();
        assert_eq!(orders(&q), vec![1, 2, 4, 4, 4, 4, 4, 4]);
        // i*j = k, j*i = -k
        assert_eq!(q.mul(2, 4), 6);
        assert_eq!(q.mul(4, 2), 7);
    }

    #[test]
    fn symmetric_orders() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(FiniteGroup::symmetric(5).unwrap().order(), 120);
        assert!(build_group("S7", DEFAULT_ORDER_CAP).is_err());
    }

    #[test]
    fn large_cyclic_uses_formula() {
        let g = build_group("Z10007", DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.mul(10000, 10), 3);
        assert_eq!(g.inv(1), 10006);
        assert!(build_group("Z30000", DEFAULT_ORDER_CAP).is_err());
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "Y3", "Z", "Z0", "Z3^0", "Zx", "D0", "table:"] {
            assert!(build_group(bad, DEFAULT_ORDER_CAP).is_err(), "{bad}");
        }
        assert_eq!(
            GroupSpec::parse("table:/tmp/g.json").unwrap(),
            GroupSpec::Table("/tmp/g.json".into())
        );
    }

    #[test]
    fn from_table_relabels_identity() {
        // Z3 with the identity at index 2
        let mul = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = FiniteGroup::from_table(&mul).unwrap();
        assert_eq!(g.order(), 3);
        assert!((0..3).all(|x| g.mul(0, x) == x));
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(FiniteGroup::from_table(&bad).is_err());
    }

    #[test]
    fn mixed_radix_coordinates() {
        let g = build_group("Z4xZ3", DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.coords(5), Some(vec![1, 2]));
        assert_eq!(g.index_of_coords(&[1, 2]), 5);
        assert_eq!(g.mul(5, 5), g.index_of_coords(&[2, 1]));
    }
}
