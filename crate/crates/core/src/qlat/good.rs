use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;

use super::{Grassmannian, PathClass, SubspaceCode};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::linalg::{rank, ExactMatrix};

/// Whether the filling of `code` is good: at every lattice point `(i, j)`
/// the path visits, the boxes in rows `i..=r` and columns `1..j` have
/// `F_q`-rank at most `j - i`.
pub fn is_good(code: &SubspaceCode, field: &FieldCtx) -> bool {
    let path = code.path();
    match path.classify() {
        PathClass::Outside => return false,
        PathClass::Plus => return true,
        PathClass::Minus => {}
    }
    let boxes = code.box_array();
    let r = code.r();
    path.corners().into_iter().all(|(i, j)| {
        if j < i {
            return false;
        }
        let (rows, cols) = (r + 1 - i, j - 1);
        if rows == 0 || cols == 0 || rows.min(cols) <= j - i {
            return true;
        }
        let data = boxes[i - 1..].iter().flat_map(|row| row[..cols].iter().copied()).collect();
        rank(&ExactMatrix::from_codes(rows, cols, field, data)) <= j - i
    })
}

/// Number of good `r`-subspaces of `F_q^n`.
pub fn count_good(n: usize, r: usize, q: u64) -> Result<BigUint> {
    if 2 * r > n {
        return Err(Error::OutOfRange(format!("need r <= n/2, got n={} r={}", n, r)));
    }
    let g = Grassmannian::new(n, r, q)?;
    let field = g.field().clone();
    let count = g.iter().filter(|c| is_good(c, &field)).count();
    Ok(BigUint::from(count))
}

/// The good subspaces, in canonical order.
pub fn good_subspaces(g: &Grassmannian) -> Vec<SubspaceCode> {
    g.iter().filter(|c| is_good(c, g.field())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::gaussian_binomial;
    use crate::qlat::enumerate_paths;

    /// Definition checked literally at every visited lattice point, with no
    /// shortcuts for path classes.
    fn good_by_definition(code: &SubspaceCode, field: &FieldCtx) -> bool {
        let boxes = code.box_array();
        let r = code.r();
        code.path().corners().into_iter().all(|(i, j)| {
            let rows = r + 1 - i;
            let cols = j - 1;
            let data: Vec<u32> = boxes[i - 1..].iter().flat_map(|row| row[..cols].iter().copied()).collect();
            let rk = rank(&ExactMatrix::from_codes(rows, cols, field, data)) as i64;
            rk <= j as i64 - i as i64
        })
    }

    #[test]
    fn counts_match_dimension_formula() {
        for q in [2u64, 3] {
            for n in 0..=5 {
                for r in 0..=n / 2 {
                    let expect = gaussian_binomial(n as i64, r as i64, q) - gaussian_binomial(n as i64, r as i64 - 1, q);
                    assert_eq!(count_good(n, r, q).unwrap(), expect, "n={} r={} q={}", n, r, q);
                }
            }
        }
        assert_eq!(count_good(4, 2, 2).unwrap(), BigUint::from(20u32));
        assert_eq!(count_good(5, 2, 3).unwrap(), BigUint::from(1089u32));
        assert!(count_good(5, 3, 2).is_err());
    }

    #[test]
    fn shortcuts_agree_with_definition() {
        for (n, r, q) in [(4, 2, 2), (5, 2, 2), (4, 2, 3), (6, 3, 2)] {
            let g = Grassmannian::new(n, r, q).unwrap();
            for code in g.iter() {
                assert_eq!(is_good(&code, g.field()), good_by_definition(&code, g.field()), "{}", code);
            }
        }
    }

    #[test]
    fn class_properties() {
        for (n, r, q) in [(4, 2, 2), (5, 2, 3), (6, 3, 2)] {
            let g = Grassmannian::new(n, r, q).unwrap();
            for code in good_subspaces(&g) {
                assert_ne!(code.path().classify(), PathClass::Outside);
            }
            for path in enumerate_paths(n, r) {
                let block = g.path_block(&path);
                let zero = g.code(block.start);
                assert!(zero.filling().iter().flatten().all(|&x| x == 0));
                let good_in_block = block.clone().filter(|&i| is_good(&g.code(i), g.field())).count();
                match path.classify() {
                    PathClass::Plus => assert_eq!(good_in_block, block.len()),
                    PathClass::Outside => assert_eq!(good_in_block, 0),
                    PathClass::Minus => assert!(is_good(&zero, g.field())),
                }
            }
        }
    }

    #[test]
    fn two_by_one() {
        for q in [2u64, 3, 4, 5] {
            assert_eq!(count_good(2, 1, q).unwrap(), BigUint::from(q));
        }
    }
}
