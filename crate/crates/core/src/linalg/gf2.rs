//! Bit-packed elimination over GF(2).

use alloc::vec;
use alloc::vec::Vec;

/// Rows of a GF(2) matrix packed 64 columns per word.
pub(crate) struct PackedRows {
    words: usize,
    rows: Vec<u64>,
    nrows: usize,
    ncols: usize,
}

impl PackedRows {
    pub(crate) fn from_codes(nrows: usize, ncols: usize, data: &[u32]) -> Self {
        let words = ncols.div_ceil(64).max(1);
        let mut rows = vec![0u64; nrows * words];
        for i in 0..nrows {
            for j in 0..ncols {
                if data[i * ncols + j] & 1 == 1 {
                    rows[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        PackedRows { words, rows, nrows, ncols }
    }

    /// Rank by forward elimination; consumes the packed copy.
    pub(crate) fn rank(mut self) -> usize {
        let w = self.words;
        let mut top = 0;
        for col in 0..self.ncols {
            if top == self.nrows {
                break;
            }
            let (word, bit) = (col / 64, 1u64 << (col % 64));
            let Some(pr) = (top..self.nrows).find(|&r| self.rows[r * w + word] & bit != 0) else {
                continue;
            };
            if pr != top {
                for k in 0..w {
                    self.rows.swap(pr * w + k, top * w + k);
                }
            }
            let (head, tail) = self.rows.split_at_mut((top + 1) * w);
            let pivot = &head[top * w..];
            for row in tail.chunks_mut(w) {
                if row[word] & bit != 0 {
                    for k in word..w {
                        row[k] ^= pivot[k];
                    }
                }
            }
            top += 1;
        }
        top
    }
}
