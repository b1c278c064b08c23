//! Scalar arithmetic backends shared by the elimination routines.

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Zero;

use crate::field::FiniteField;

pub(crate) trait Arith {
    type E: Clone + PartialEq;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    /// `a - c * b`
    fn sub_mul(&self, a: &Self::E, c: &Self::E, b: &Self::E) -> Self::E;
}

pub(crate) struct Fin<'a>(pub &'a FiniteField);

impl Arith for Fin<'_> {
    type E = u32;
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.0.mul(*a, *b)
    }
    #[inline]
    fn inv(&self, a: &u32) -> u32 {
        self.0.inv(*a).expect("pivot is nonzero")
    }
    #[inline]
    fn sub_mul(&self, a: &u32, c: &u32, b: &u32) -> u32 {
        self.0.sub(*a, self.0.mul(*c, *b))
    }
}

pub(crate) struct Rat;

impl Arith for Rat {
    type E = BigRational;
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn sub_mul(&self, a: &BigRational, c: &BigRational, b: &BigRational) -> BigRational {
        a - c * b
    }
}

/// In-place reduced row echelon form of a row-major `rows × cols` buffer.
/// Pivots are the first nonzero entry in column order; no magnitude
/// pivoting. Returns the pivot column of each nonzero row, in order.
pub(crate) fn rref<A: Arith>(ar: &A, rows: usize, cols: usize, data: &mut [A::E]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..cols {
        if top == rows {
            break;
        }
        let Some(pr) = (top..rows).find(|&r| !ar.is_zero(&data[r * cols + col])) else {
            continue;
        };
        if pr != top {
            for j in 0..cols {
                data.swap(pr * cols + j, top * cols + j);
            }
        }
        let inv = ar.inv(&data[top * cols + col]);
        for j in col..cols {
            let v = ar.mul(&data[top * cols + j], &inv);
            data[top * cols + j] = v;
        }
        let (before, rest) = data.split_at_mut(top * cols);
        let (pivot_row, after) = rest.split_at_mut(cols);
        for other in before.chunks_mut(cols).chain(after.chunks_mut(cols)) {
            let c = other[col].clone();
            if ar.is_zero(&c) {
                continue;
            }
            for j in col..cols {
                if !ar.is_zero(&pivot_row[j]) {
                    other[j] = ar.sub_mul(&other[j], &c, &pivot_row[j]);
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    pivots
}

/// Row echelon form (no back substitution) returning only the rank.
pub(crate) fn echelon_rank<A: Arith>(ar: &A, rows: usize, cols: usize, data: &mut [A::E]) -> usize {
    let mut top = 0;
    for col in 0..cols {
        if top == rows {
            break;
        }
        let Some(pr) = (top..rows).find(|&r| !ar.is_zero(&data[r * cols + col])) else {
            continue;
        };
        if pr != top {
            for j in 0..cols {
                data.swap(pr * cols + j, top * cols + j);
            }
        }
        let inv = ar.inv(&data[top * cols + col]);
        let (head, tail) = data.split_at_mut((top + 1) * cols);
        let pivot_row = &head[top * cols..];
        for other in tail.chunks_mut(cols) {
            if ar.is_zero(&other[col]) {
                continue;
            }
            let c = ar.mul(&other[col], &inv);
            for j in col..cols {
                if !ar.is_zero(&pivot_row[j]) {
                    other[j] = ar.sub_mul(&other[j], &c, &pivot_row[j]);
                }
            }
        }
        top += 1;
    }
    top
}
