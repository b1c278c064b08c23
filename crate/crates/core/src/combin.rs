//! Binomial and Gaussian binomial coefficients, and the lexicographic
//! ranking of `r`-subsets used as the canonical row/column order.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if k < 0 || n < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from((n - i) as u64) / BigUint::from((i + 1) as u64);
    }
    acc
}

/// `C(n, k)` as a machine integer; panics if it does not fit.
pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
    }
    usize::try_from(acc).expect("binomial fits in usize")
}

/// `[n k]_q`, zero when `k < 0` or `k > n`.
pub fn gaussian_binomial(n: i64, k: i64, q: u64) -> BigUint {
    if k < 0 || n < 0 || k > n {
        return BigUint::zero();
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow((n - i) as u32) - BigUint::one();
        den *= q.pow((i + 1) as u32) - BigUint::one();
    }
    num / den
}

/// `[n k]_q` as a machine integer; panics if it does not fit.
pub fn gauss(n: usize, k: usize, q: u64) -> usize {
    let g = gaussian_binomial(n as i64, k as i64, q);
    let digits = g.to_u64_digits();
    match digits.len() {
        0 => 0,
        1 => usize::try_from(digits[0]).expect("fits"),
        _ => panic!("Gaussian binomial [{} {}]_{} too large", n, k, q),
    }
}

/// Position of the sorted tuple `elems` (1-based elements of `[n]`) in the
/// lexicographic enumeration of `elems.len()`-subsets of `[n]`.
pub fn subset_rank(n: usize, elems: &[usize]) -> usize {
    let r = elems.len();
    let mut idx = 0;
    let mut prev = 0;
    for (i, &a) in elems.iter().enumerate() {
        for x in prev + 1..a {
            idx += binom(n - x, r - i - 1);
        }
        prev = a;
    }
    idx
}

/// Inverse of [`subset_rank`].
pub fn subset_unrank(n: usize, r: usize, mut idx: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(r);
    let mut x = 1;
    for i in 0..r {
        loop {
            let c = binom(n - x, r - i - 1);
            if idx < c {
                break;
            }
            idx -= c;
            x += 1;
        }
        out.push(x);
        x += 1;
    }
    out
}

/// All `r`-subsets of `[n]` as sorted tuples, in lexicographic order.
pub fn lex_subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binom(n, r));
    if r > n {
        return out;
    }
    let mut cur: Vec<usize> = (1..=r).collect();
    loop {
        out.push(cur.clone());
        let mut i = r;
        while i > 0 && cur[i - 1] == n - (r - i) {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pascal(n: usize, k: usize) -> u64 {
        let mut row = alloc::vec![1u64];
        for _ in 0..n {
            let mut next = alloc::vec![1u64; row.len() + 1];
            for i in 1..row.len() {
                next[i] = row[i - 1] + row[i];
            }
            row = next;
        }
        row.get(k).copied().unwrap_or(0)
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(6, 2), BigUint::from(15u32));
        assert_eq!(binomial(5, -1), BigUint::zero());
        assert_eq!(binomial(3, 5), BigUint::zero());
        for n in 0..=20 {
            for k in 0..=n {
                assert_eq!(binomial(n as i64, k as i64), BigUint::from(pascal(n, k)));
                assert_eq!(binom(n, k) as u64, pascal(n, k));
            }
        }
        assert_eq!(binomial(10, 5), BigUint::from(252u32));
    }

    #[test]
    fn gaussian_values() {
        assert_eq!(gaussian_binomial(7, 0, 5), BigUint::one());
        assert_eq!(gaussian_binomial(4, 1, 2), BigUint::from(15u32));
        assert_eq!(gaussian_binomial(4, 2, 2), BigUint::from(35u32));
        assert_eq!(gaussian_binomial(5, 2, 3), BigUint::from(1210u32));
        assert_eq!(gaussian_binomial(5, 1, 3), BigUint::from(121u32));
        assert_eq!(gaussian_binomial(4, -1, 2), BigUint::zero());
    }

    #[test]
    fn ranking_roundtrip() {
        for n in 0..=9 {
            for r in 0..=n {
                let all = lex_subsets(n, r);
                assert_eq!(all.len(), binom(n, r));
                for (i, s) in all.iter().enumerate() {
                    assert_eq!(subset_rank(n, s), i);
                    assert_eq!(&subset_unrank(n, r, i), s);
                }
                assert!(all.windows(2).all(|w| w[0] < w[1]));
            }
        }
        assert!(lex_subsets(2, 3).is_empty());
    }
}
