//! Subsets of `[n]`, families of `r`-subsets, Frankl ranks, shadows and the
//! subset inclusion matrices `W_{r,s}`.

mod bier;
mod resilience;
mod sigma;

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::combin::{self, binom, lex_subsets, subset_rank, subset_unrank};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::linalg::ExactMatrix;

pub use bier::{
    bier_basis_matrix, bier_identity_residual, bier_vector, bracket, bracket_alternating_residual, diagonal_form_check,
};
pub use resilience::{verify_set_resilience, SetResilience};
pub use sigma::{find_sigma, PermCert};

/// Largest ground set supported by the bitmask representation.
pub const MAX_N: usize = 64;

/// A subset of `[n] = {1, ..., n}`; element `i` is bit `i - 1` of the mask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    n: usize,
    mask: u64,
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Subset {
    pub fn new(n: usize, elems: &[usize]) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::OutOfRange(format!("n = {} exceeds {}", n, MAX_N)));
        }
        let mut mask = 0u64;
        for &e in elems {
            if e == 0 || e > n {
                return Err(Error::OutOfRange(format!("element {} not in [{}]", e, n)));
            }
            mask |= 1 << (e - 1);
        }
        Ok(Subset { n, mask })
    }

    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if n > MAX_N || mask & !full_mask(n) != 0 {
            return Err(Error::OutOfRange(format!("mask {:#x} outside [{}]", mask, n)));
        }
        Ok(Subset { n, mask })
    }

    pub fn empty(n: usize) -> Self {
        Subset { n, mask: 0 }
    }

    /// `[k]` inside `[n]`.
    pub fn prefix(n: usize, k: usize) -> Self {
        Subset { n, mask: full_mask(k.min(n)) }
    }

    /// The `idx`-th `r`-subset in lexicographic order.
    pub fn from_index(n: usize, r: usize, idx: usize) -> Self {
        let elems = subset_unrank(n, r, idx);
        Subset::new(n, &elems).expect("valid elements")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i <= self.n && self.mask >> (i - 1) & 1 == 1
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn is_disjoint(&self, other: &Subset) -> bool {
        self.mask & other.mask == 0
    }

    pub fn union(&self, other: &Subset) -> Subset {
        Subset { n: self.n.max(other.n), mask: self.mask | other.mask }
    }

    pub fn complement(&self) -> Subset {
        Subset { n: self.n, mask: !self.mask & full_mask(self.n) }
    }

    /// Sorted elements.
    pub fn elements(&self) -> Vec<usize> {
        (1..=self.n).filter(|&i| self.contains(i)).collect()
    }

    /// Position among the `|A|`-subsets of `[n]` in lexicographic order.
    pub fn index(&self) -> usize {
        subset_rank(self.n, &self.elements())
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.elements().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, "}}")
    }
}

/// All `r`-subsets of `[n]` in the canonical (lexicographic) order.
pub fn all_subsets(n: usize, r: usize) -> Vec<Subset> {
    lex_subsets(n, r).iter().map(|e| Subset::new(n, e).expect("valid")).collect()
}

/// A family of `r`-subsets of `[n]`, stored as sorted distinct indices into
/// the canonical enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetFamily {
    n: usize,
    r: usize,
    members: Vec<usize>,
}

impl SetFamily {
    pub fn new(n: usize, r: usize, mut members: Vec<usize>) -> Result<Self> {
        if r > n || n > MAX_N {
            return Err(Error::OutOfRange(format!("r = {} with n = {}", r, n)));
        }
        let total = binom(n, r);
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::OutOfRange("duplicate family index".into()));
        }
        if let Some(&bad) = members.iter().find(|&&i| i >= total) {
            return Err(Error::OutOfRange(format!("family index {} >= C({}, {}) = {}", bad, n, r, total)));
        }
        Ok(SetFamily { n, r, members })
    }

    pub fn empty(n: usize, r: usize) -> Self {
        SetFamily { n, r, members: Vec::new() }
    }

    pub fn all(n: usize, r: usize) -> Self {
        SetFamily { n, r, members: (0..binom(n, r)).collect() }
    }

    pub fn from_subsets(n: usize, r: usize, sets: &[Subset]) -> Result<Self> {
        let mut idx = Vec::with_capacity(sets.len());
        for s in sets {
            if s.n() != n || s.len() != r {
                return Err(Error::OutOfRange(format!("{} is not an {}-subset of [{}]", s, r, n)));
            }
            idx.push(s.index());
        }
        Self::new(n, r, idx)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn subsets(&self) -> Vec<Subset> {
        self.members.iter().map(|&i| Subset::from_index(self.n, self.r, i)).collect()
    }

    /// Complement inside all `r`-subsets of `[n]`.
    pub fn complement(&self) -> SetFamily {
        let mut out = Vec::with_capacity(binom(self.n, self.r) - self.members.len());
        let mut it = self.members.iter().peekable();
        for i in 0..binom(self.n, self.r) {
            if it.peek() == Some(&&i) {
                it.next();
            } else {
                out.push(i);
            }
        }
        SetFamily { n: self.n, r: self.r, members: out }
    }
}

/// Frankl rank: returns `(rk, ell)` where `ell` is the largest excess of
/// north over east steps along the walk of `A` (at least 0) and
/// `rk = |A| - ell`.
pub fn frankl_rank(a: &Subset) -> (usize, usize) {
    let (mut north, mut east) = (0i64, 0i64);
    let mut ell = 0i64;
    for i in 1..=a.n() {
        if a.contains(i) {
            north += 1;
        } else {
            east += 1;
        }
        ell = ell.max(north - east);
    }
    let ell = ell as usize;
    (a.len() - ell, ell)
}

/// Whether `|A ∩ [i]| <= floor(i/2)` for every `i`, i.e. the walk never
/// rises above the diagonal.
pub fn is_full_rank(a: &Subset) -> bool {
    let mut count = 0;
    for i in 1..=a.n() {
        if a.contains(i) {
            count += 1;
        }
        if count > i / 2 {
            return false;
        }
    }
    true
}

/// `S(j)`: the `j`-subsets of full Frankl rank, in lexicographic order.
pub fn full_rank_sets(n: usize, j: usize) -> Result<Vec<Subset>> {
    if 2 * j > n {
        return Err(Error::OutOfRange(format!("j = {} > n/2 with n = {}", j, n)));
    }
    Ok(all_subsets(n, j).into_iter().filter(|a| frankl_rank(a).0 == j).collect())
}

/// The unique `m` with `a_m < 2m` and `a_i >= 2i` for all `i > m`; 0 when
/// every `a_i >= 2i`.
pub fn m_parameter(a: &Subset) -> usize {
    a.elements()
        .iter()
        .enumerate()
        .rev()
        .find(|&(i, &x)| x < 2 * (i + 1))
        .map_or(0, |(i, _)| i + 1)
}

/// The `s`-shadow: all `s`-subsets contained in some member of `family`.
pub fn shadow(family: &SetFamily, s: usize) -> Result<SetFamily> {
    if s > family.r() {
        return Err(Error::OutOfRange(format!("s = {} > r = {}", s, family.r())));
    }
    let n = family.n();
    let mut out = BTreeSet::new();
    for set in family.subsets() {
        let elems = set.elements();
        for pick in lex_subsets(elems.len(), s) {
            let sub: Vec<usize> = pick.iter().map(|&k| elems[k - 1]).collect();
            out.insert(subset_rank(n, &sub));
        }
    }
    SetFamily::new(n, s, out.into_iter().collect())
}

/// The real `x >= r` with `C(x, r) = size`, by bisection to `1e-9`.
pub fn lovasz_x(size: &BigUint, r: usize) -> Result<f64> {
    if size.is_zero() {
        return Err(Error::OutOfRange("family size must be positive".into()));
    }
    if r == 0 {
        return Err(Error::OutOfRange("r must be positive".into()));
    }
    let target = size.to_f64().unwrap_or(f64::INFINITY);
    if !target.is_finite() {
        return Err(Error::OutOfRange("family size too large for floating point".into()));
    }
    let choose = |x: f64| -> f64 {
        let mut acc = 1.0;
        for i in 0..r {
            acc *= (x - i as f64) / (i + 1) as f64;
        }
        acc
    };
    let mut lo = r as f64;
    let mut hi = lo + 1.0;
    while choose(hi) < target {
        hi = lo + 2.0 * (hi - lo);
    }
    for _ in 0..200 {
        if hi - lo <= 1e-12 * hi.max(1.0) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if choose(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `W_{r,s}` (or `W^F_{r,s}` when `family` is given): rows are the members
/// of the family in canonical order, columns all `s`-subsets; entry 1 iff the
/// column set is contained in the row set.
pub fn build_w(n: usize, r: usize, s: usize, field: &FieldCtx, family: Option<&SetFamily>) -> Result<ExactMatrix> {
    if s > r || r > n {
        return Err(Error::OutOfRange(format!("need s <= r <= n, got n={} r={} s={}", n, r, s)));
    }
    let rows: Vec<Subset> = match family {
        Some(f) => {
            if f.n() != n || f.r() != r {
                return Err(Error::OutOfRange(format!(
                    "family of {}-subsets of [{}] used for n={} r={}",
                    f.r(),
                    f.n(),
                    n,
                    r
                )));
            }
            f.subsets()
        }
        None => all_subsets(n, r),
    };
    let cols = all_subsets(n, s);
    Ok(ExactMatrix::from_int_fn(rows.len(), cols.len(), field, |i, j| cols[j].is_subset_of(&rows[i]) as i64))
}

/// Wilson's rank of `W_{r,s}` over a field of the given characteristic:
/// the sum of `C(n,j) - C(n,j-1)` over `j <= s` with `C(r-j, s-j) ≠ 0` in
/// the field. Requires `n >= r + s`.
pub fn wilson_rank(n: usize, r: usize, s: usize, characteristic: u64) -> Result<BigUint> {
    if s > r || r > n {
        return Err(Error::OutOfRange(format!("need s <= r <= n, got n={} r={} s={}", n, r, s)));
    }
    if n < r + s {
        return Err(Error::FormulaHypothesis { n, r, s });
    }
    let mut total = BigUint::zero();
    for j in 0..=s {
        let c = combin::binomial((r - j) as i64, (s - j) as i64);
        let nonzero = characteristic == 0 || !(c % characteristic).is_zero();
        if nonzero {
            total += combin::binomial(n as i64, j as i64) - combin::binomial(n as i64, j as i64 - 1);
        }
    }
    Ok(total)
}

pub use combin::binomial;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank;
    use alloc::string::ToString;
    use alloc::vec;

    fn set(n: usize, e: &[usize]) -> Subset {
        Subset::new(n, e).unwrap()
    }

    #[test]
    fn subset_validation() {
        assert!(Subset::new(3, &[4]).is_err());
        assert!(Subset::new(3, &[0]).is_err());
        assert!(Subset::from_mask(3, 0b1000).is_err());
        assert_eq!(set(5, &[2, 4]).to_string(), "{2,4}");
    }

    #[test]
    fn frankl_examples() {
        assert_eq!(frankl_rank(&Subset::empty(4)), (0, 0));
        assert_eq!(frankl_rank(&set(4, &[1, 2])), (0, 2));
        assert_eq!(frankl_rank(&set(5, &[2, 4])), (2, 0));
    }

    #[test]
    fn frankl_rank_bounds() {
        for n in 0..=10 {
            for mask in 0..1u64 << n {
                let a = Subset::from_mask(n, mask).unwrap();
                let (rk, _) = frankl_rank(&a);
                assert!(rk <= a.len().min(n - a.len()));
                if 2 * a.len() <= n {
                    assert_eq!(rk == a.len(), is_full_rank(&a));
                }
            }
        }
    }

    #[test]
    fn full_rank_set_examples() {
        assert_eq!(full_rank_sets(4, 0).unwrap(), vec![Subset::empty(4)]);
        let s52: Vec<Vec<usize>> = full_rank_sets(5, 2).unwrap().iter().map(|a| a.elements()).collect();
        assert_eq!(s52, vec![vec![2, 4], vec![2, 5], vec![3, 4], vec![3, 5], vec![4, 5]]);
        assert_eq!(full_rank_sets(6, 3).unwrap().len(), 5);
        assert!(full_rank_sets(5, 3).is_err());
    }

    #[test]
    fn full_rank_set_counts() {
        for n in 0..=12 {
            for j in 0..=n / 2 {
                let expected = binom(n, j) - if j > 0 { binom(n, j - 1) } else { 0 };
                assert_eq!(full_rank_sets(n, j).unwrap().len(), expected, "n={} j={}", n, j);
            }
        }
    }

    #[test]
    fn m_parameter_examples() {
        assert_eq!(m_parameter(&set(5, &[2, 4])), 0);
        assert_eq!(m_parameter(&set(5, &[1, 4])), 1);
        assert_eq!(m_parameter(&set(6, &[1, 2, 6])), 2);
        assert_eq!(m_parameter(&Subset::empty(3)), 0);
    }

    #[test]
    fn shadow_examples() {
        let f = SetFamily::from_subsets(7, 2, &[set(7, &[1, 2])]).unwrap();
        let sh = shadow(&f, 1).unwrap();
        assert_eq!(sh.subsets(), vec![set(7, &[1]), set(7, &[2])]);
        let x: Vec<Subset> = all_subsets(5, 3).iter().map(|a| Subset::from_mask(7, a.mask()).unwrap()).collect();
        let f = SetFamily::from_subsets(7, 3, &x).unwrap();
        assert_eq!(shadow(&f, 2).unwrap().len(), 10);
        assert!(shadow(&SetFamily::empty(7, 3), 2).unwrap().is_empty());
        assert!(shadow(&f, 4).is_err());
    }

    #[test]
    fn lovasz_examples() {
        let x = lovasz_x(&BigUint::from(10u32), 3).unwrap();
        assert!((x - 5.0).abs() < 1e-9);
        let x = lovasz_x(&BigUint::from(4u32), 2).unwrap();
        let exact = (1.0 + 33f64.sqrt()) / 2.0;
        assert!((x - exact).abs() < 1e-9);
        assert!((lovasz_x(&BigUint::from(1u32), 2).unwrap() - 2.0).abs() < 1e-9);
        assert!(lovasz_x(&BigUint::zero(), 2).is_err());
    }

    #[test]
    fn build_w_shapes() {
        let q = FieldCtx::rationals();
        let w = build_w(3, 2, 1, &q, None).unwrap();
        assert_eq!((w.rows(), w.cols()), (3, 3));
        let w0 = build_w(5, 2, 0, &q, None).unwrap();
        assert_eq!(w0.cols(), 1);
        assert!((0..w0.rows()).all(|i| w0.get(i, 0) == q.one()));
        let w = build_w(6, 3, 2, &q, None).unwrap();
        for i in 0..w.rows() {
            let sum = (0..w.cols()).filter(|&j| !w.is_zero_at(i, j)).count();
            assert_eq!(sum, binom(3, 2));
        }
        for j in 0..w.cols() {
            let sum = (0..w.rows()).filter(|&i| !w.is_zero_at(i, j)).count();
            assert_eq!(sum, binom(4, 1));
        }
        let gf2 = FieldCtx::parse("gf2").unwrap();
        assert_eq!(rank(&build_w(6, 2, 1, &gf2, None).unwrap()), 5);
        assert!(build_w(3, 1, 2, &q, None).is_err());
        let bad = SetFamily::all(6, 2);
        assert!(build_w(6, 3, 1, &q, Some(&bad)).is_err());
    }

    #[test]
    fn w_rr_is_identity() {
        let q = FieldCtx::rationals();
        assert_eq!(build_w(5, 2, 2, &q, None).unwrap(), ExactMatrix::identity(10, &q));
    }

    #[test]
    fn wilson_examples() {
        assert_eq!(wilson_rank(6, 2, 1, 0).unwrap(), BigUint::from(6u32));
        assert_eq!(wilson_rank(6, 2, 1, 2).unwrap(), BigUint::from(5u32));
        for ch in [0, 2, 3, 5] {
            assert_eq!(wilson_rank(7, 3, 0, ch).unwrap(), BigUint::from(1u32));
        }
        assert_eq!(wilson_rank(7, 3, 1, 2).unwrap(), BigUint::from(7u32));
        assert_eq!(wilson_rank(4, 3, 2, 0).unwrap_err(), Error::FormulaHypothesis { n: 4, r: 3, s: 2 });
    }

    #[test]
    fn family_complement() {
        let f = SetFamily::new(5, 2, vec![3, 0]).unwrap();
        assert_eq!(f.members(), &[0, 3]);
        let c = f.complement();
        assert_eq!(c.len(), 8);
        assert!(c.members().iter().all(|i| !f.members().contains(i)));
        assert!(SetFamily::new(5, 2, vec![1, 1]).is_err());
        assert!(SetFamily::new(5, 2, vec![10]).is_err());
    }
}
