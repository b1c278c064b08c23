//! Fraction-free rank over the rationals.
//!
//! Rows are scaled to primitive integer vectors and eliminated with
//! cross-multiplication, dividing every updated row by its content so the
//! entries of 0/1 incidence matrices stay small. The machine-word pass uses
//! checked `i128`; on overflow the matrix is redone with one-step Bareiss
//! elimination over big integers.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rank of a rational matrix given row-major.
pub(crate) fn rational_rank(rows: usize, cols: usize, data: &[BigRational]) -> usize {
    let ints = clear_denominators(rows, cols, data);
    if let Some(small) = to_i128(&ints) {
        if let Some(r) = rank_i128(rows, cols, small) {
            return r;
        }
    }
    bareiss_rank(rows, cols, ints)
}

fn clear_denominators(rows: usize, cols: usize, data: &[BigRational]) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(rows * cols);
    for row in data.chunks(cols.max(1)).take(rows) {
        let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        out.extend(row.iter().map(|x| x.numer() * (&lcm / x.denom())));
    }
    out
}

fn to_i128(data: &[BigInt]) -> Option<Vec<i128>> {
    data.iter().map(|x| x.to_i128()).collect()
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i128
}

fn rank_i128(rows: usize, cols: usize, mut data: Vec<i128>) -> Option<usize> {
    let mut top = 0;
    for col in 0..cols {
        if top == rows {
            break;
        }
        let Some(pr) = (top..rows).find(|&r| data[r * cols + col] != 0) else {
            continue;
        };
        if pr != top {
            for j in 0..cols {
                data.swap(pr * cols + j, top * cols + j);
            }
        }
        let (head, tail) = data.split_at_mut((top + 1) * cols);
        let pivot_row = &head[top * cols..];
        let a = pivot_row[col];
        for row in tail.chunks_mut(cols) {
            let b = row[col];
            if b == 0 {
                continue;
            }
            let g = gcd_i128(a, b);
            let (fa, fb) = (a / g, b / g);
            let mut content = 0i128;
            for j in col..cols {
                let v = fa.checked_mul(row[j])?.checked_sub(fb.checked_mul(pivot_row[j])?)?;
                row[j] = v;
                content = gcd_i128(content, v);
            }
            if content > 1 {
                for v in &mut row[col..] {
                    *v /= content;
                }
            }
        }
        top += 1;
    }
    Some(top)
}

fn bareiss_rank(rows: usize, cols: usize, mut data: Vec<BigInt>) -> usize {
    let mut top = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if top == rows {
            break;
        }
        let Some(pr) = (top..rows).find(|&r| !data[r * cols + col].is_zero()) else {
            continue;
        };
        if pr != top {
            for j in 0..cols {
                data.swap(pr * cols + j, top * cols + j);
            }
        }
        let (head, tail) = data.split_at_mut((top + 1) * cols);
        let pivot_row = &head[top * cols..];
        let a = pivot_row[col].clone();
        for row in tail.chunks_mut(cols) {
            let b = row[col].clone();
            for j in col..cols {
                let v = &a * &row[j] - &b * &pivot_row[j];
                // exact by Sylvester's identity
                row[j] = v / &prev;
            }
            debug_assert!(row[col].is_zero());
        }
        prev = a.abs();
        if prev.is_zero() {
            prev = BigInt::one();
        }
        top += 1;
    }
    top
}
