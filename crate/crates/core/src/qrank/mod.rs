//! Inclusion matrices of subspaces and the modules built from them.

mod cert;
mod chars;
mod resilience;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::combin::gaussian_binomial;
use crate::error::{Error, Result};
use crate::field::{is_prime, FieldCtx, Ffe};
use crate::linalg::{kernel_basis, rank, EchelonBasis, ExactMatrix, SubspaceBasis};
use crate::qlat::{prime_power, Grassmannian, QFamily, SubspaceCode};

pub use cert::{find_g, GLCert};
pub use chars::{e_block_matrix, e_vector, lemma18_check, lemma18_intersection_dim};
pub use resilience::{verify_q_resilience, QResilience};

/// For each listed `big`-subspace, the indices of the `small`-subspaces it
/// contains.
pub(crate) fn incidence(big: &Grassmannian, small: &Grassmannian, rows: &[usize]) -> Vec<Vec<usize>> {
    let f = big.finite();
    let small_bases: Vec<Vec<Vec<u32>>> = small.iter().map(|c| c.basis_codes()).collect();
    rows.iter()
        .map(|&i| {
            let code = big.code(i);
            let basis = code.basis_codes();
            (0..small_bases.len()).filter(|&j| code.contains_codes(f, &basis, &small_bases[j])).collect()
        })
        .collect()
}

fn zero_one(rows: usize, cols: usize, field: &FieldCtx, support: &[Vec<usize>]) -> ExactMatrix {
    let mut hit = vec![false; rows * cols];
    for (i, row) in support.iter().enumerate() {
        for &j in row {
            hit[i * cols + j] = true;
        }
    }
    ExactMatrix::from_int_fn(rows, cols, field, |i, j| hit[i * cols + j] as i64)
}

/// `W_{r,s}(q)` over `field` (or `W^F_{r,s}(q)` when `family` is given):
/// rows are the family's `r`-subspaces in canonical order, columns all
/// `s`-subspaces; entry 1 iff the column is contained in the row.
pub fn build_wq(n: usize, r: usize, s: usize, q: u64, field: &FieldCtx, family: Option<&QFamily>) -> Result<ExactMatrix> {
    if s > r || r > n {
        return Err(Error::OutOfRange(format!("need s <= r <= n, got n={} r={} s={}", n, r, s)));
    }
    let big = Grassmannian::new(n, r, q)?;
    let small = Grassmannian::over(n, s, big.field())?;
    let rows: Vec<usize> = match family {
        Some(f) => {
            if (f.n(), f.r(), f.q()) != (n, r, q) {
                return Err(Error::OutOfRange(format!(
                    "family of {}-subspaces of F_{}^{} used for n={} r={} q={}",
                    f.r(),
                    f.q(),
                    f.n(),
                    n,
                    r,
                    q
                )));
            }
            f.members().to_vec()
        }
        None => (0..big.len()).collect(),
    };
    let support = incidence(&big, &small, &rows);
    Ok(zero_one(rows.len(), small.len(), field, &support))
}

/// Rank of `W_{r,s}(q)` over a field of characteristic `ell` (0 or a prime
/// other than the characteristic of `F_q`): the sum of
/// `[n i]_q - [n i-1]_q` over `i <= s` with `[r-i s-i]_q ≠ 0` in the field.
/// Requires `n >= r + s`.
pub fn fy_rank(n: usize, r: usize, s: usize, q: u64, ell: u64) -> Result<BigUint> {
    let (p, _) = prime_power(q).ok_or_else(|| Error::InvalidField(format!("{} is not a prime power", q)))?;
    if s > r || r > n {
        return Err(Error::OutOfRange(format!("need s <= r <= n, got n={} r={} s={}", n, r, s)));
    }
    if ell != 0 && !is_prime(ell) {
        return Err(Error::CompositeCharacteristic(ell));
    }
    if ell == p {
        return Err(Error::CharacteristicP(p));
    }
    if n < r + s {
        return Err(Error::FormulaHypothesis { n, r, s });
    }
    let mut total = BigUint::zero();
    for i in 0..=s as i64 {
        let c = gaussian_binomial(r as i64 - i, s as i64 - i, q);
        if ell == 0 || !(c % ell).is_zero() {
            total += gaussian_binomial(n as i64, i, q) - gaussian_binomial(n as i64, i - 1, q);
        }
    }
    Ok(total)
}

/// Refuses fields whose characteristic is that of `F_q`.
pub(crate) fn require_coprime(field: &FieldCtx, q: u64) -> Result<()> {
    let (p, _) = prime_power(q).ok_or_else(|| Error::InvalidField(format!("{} is not a prime power", q)))?;
    if field.characteristic() == p {
        return Err(Error::CharacteristicP(p));
    }
    Ok(())
}

/// Coordinates of the sum of all `r`-subspaces containing `x`.
pub fn up_vector(x: &SubspaceCode, r: usize, field: &FieldCtx) -> Result<Vec<Ffe>> {
    if x.r() > r || r > x.n() {
        return Err(Error::OutOfRange(format!("dim X = {} > r = {}", x.r(), r)));
    }
    let big = Grassmannian::new(x.n(), r, x.q() as u64)?;
    let f = big.finite();
    let basis = x.basis_codes();
    Ok(big
        .iter()
        .map(|c| {
            let cb = c.basis_codes();
            if c.contains_codes(f, &cb, &basis) {
                field.one()
            } else {
                field.zero()
            }
        })
        .collect())
}

/// `[W_{r,0}(q) | ... | W_{r,r-1}(q)]`.
fn lower_block_matrix(n: usize, r: usize, q: u64, field: &FieldCtx) -> Result<ExactMatrix> {
    let big = Grassmannian::new(n, r, q)?;
    let rows: Vec<usize> = (0..big.len()).collect();
    let mut out = ExactMatrix::zeros(big.len(), 0, field);
    for j in 0..r {
        let small = Grassmannian::over(n, j, big.field())?;
        let block = zero_one(big.len(), small.len(), field, &incidence(&big, &small, &rows));
        out = out.hstack(&block)?;
    }
    Ok(out)
}

/// `U_{r-1}`: the span of all up-vectors of subspaces of dimension below
/// `r`, inside the space spanned by the `r`-subspaces.
pub fn u_subspace(n: usize, r: usize, q: u64, field: &FieldCtx) -> Result<SubspaceBasis> {
    require_coprime(field, q)?;
    if r > n {
        return Err(Error::OutOfRange(format!("r = {} > n = {}", r, n)));
    }
    Ok(SubspaceBasis::column_space(&lower_block_matrix(n, r, q, field)?))
}

/// The chain `W_0 ⊆ ... ⊆ W_s` inside the span of the `s`-subspaces, where
/// `W_j` is spanned by the up-vectors of all subspaces of dimension `<= j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WChain {
    /// `dim W_j` for `j = 0..=s`.
    pub dims: Vec<usize>,
    /// For each `j`, indices of the `j`-subspaces whose up-vectors extend a
    /// basis of `W_{j-1}` to one of `W_j`, chosen greedily in canonical order.
    pub reps: Vec<Vec<usize>>,
}

pub fn w_chain(n: usize, s: usize, q: u64, field: &FieldCtx) -> Result<WChain> {
    require_coprime(field, q)?;
    if s > n {
        return Err(Error::OutOfRange(format!("s = {} > n = {}", s, n)));
    }
    let top = Grassmannian::new(n, s, q)?;
    let all: Vec<usize> = (0..top.len()).collect();
    let mut basis = EchelonBasis::new(field, top.len());
    let mut dims = Vec::with_capacity(s + 1);
    let mut reps = Vec::with_capacity(s + 1);
    for j in 0..=s {
        let small = Grassmannian::over(n, j, top.field())?;
        // column X of W_{s,j}(q) is the up-vector of X
        let cols = incidence(&top, &small, &all);
        let mut up = vec![vec![field.zero(); top.len()]; small.len()];
        for (i, row) in cols.iter().enumerate() {
            for &x in row {
                up[x][i] = field.one();
            }
        }
        let mut chosen = Vec::new();
        for (x, v) in up.iter().enumerate() {
            if basis.insert(v)? {
                chosen.push(x);
            }
        }
        dims.push(basis.rank());
        reps.push(chosen);
    }
    Ok(WChain { dims, reps })
}

pub fn w_chain_dims(n: usize, s: usize, q: u64, field: &FieldCtx) -> Result<Vec<usize>> {
    Ok(w_chain(n, s, q, field)?.dims)
}

/// Checks `W_{r,s}(q) · <X>_s = [r-j s-j]_q · <X>_r` for every
/// representative `X` of dimension `j` chosen by [`w_chain`].
pub fn diagonal_action_check(n: usize, r: usize, s: usize, q: u64, field: &FieldCtx) -> Result<bool> {
    if s > r || r > n {
        return Err(Error::OutOfRange(format!("need s <= r <= n, got n={} r={} s={}", n, r, s)));
    }
    let chain = w_chain(n, s, q, field)?;
    let w = build_wq(n, r, s, q, field, None)?;
    for (j, reps) in chain.reps.iter().enumerate() {
        let g = Grassmannian::new(n, j, q)?;
        let c = field.embed_big(&gaussian_binomial((r - j) as i64, (s - j) as i64, q).into());
        for &x in reps {
            let code = g.code(x);
            let lhs = w.mul_vec(&up_vector(&code, s, field)?)?;
            let rhs: Vec<Ffe> = up_vector(&code, r, field)?.iter().map(|v| field.mul(&c, v)).collect();
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Stacked down maps `R ↦ Σ_{S ⊆ R, dim S = j} S` for `j < r`.
fn down_maps(n: usize, r: usize, q: u64, field: &FieldCtx) -> Result<ExactMatrix> {
    Ok(lower_block_matrix(n, r, q, field)?.transpose())
}

/// The common kernel of the down maps out of the span of the `r`-subspaces.
pub fn specht_module(n: usize, r: usize, q: u64, field: &FieldCtx) -> Result<SubspaceBasis> {
    check_specht(n, r, q, field)?;
    Ok(kernel_basis(&down_maps(n, r, q, field)?))
}

pub fn specht_dimension(n: usize, r: usize, q: u64, field: &FieldCtx) -> Result<BigUint> {
    check_specht(n, r, q, field)?;
    let d = down_maps(n, r, q, field)?;
    Ok(BigUint::from(d.cols() - rank(&d)))
}

fn check_specht(n: usize, r: usize, q: u64, field: &FieldCtx) -> Result<()> {
    require_coprime(field, q)?;
    if 2 * r > n {
        return Err(Error::OutOfRange(format!("need r <= n/2, got n={} r={}", n, r)));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::gauss;

    fn fld(s: &str) -> FieldCtx {
        FieldCtx::parse(s).unwrap()
    }

    #[test]
    fn small_matrices() {
        let q0 = FieldCtx::rationals();
        let w = build_wq(3, 2, 1, 2, &q0, None).unwrap();
        assert_eq!((w.rows(), w.cols()), (7, 7));
        for i in 0..7 {
            let sum = (0..7).filter(|&j| !w.is_zero_at(i, j)).count();
            assert_eq!(sum, 3);
        }
        let w0 = build_wq(4, 2, 0, 3, &q0, None).unwrap();
        assert_eq!(w0.cols(), 1);
        assert!((0..w0.rows()).all(|i| w0.get(i, 0) == q0.one()));
        assert_eq!(rank(&build_wq(4, 2, 1, 2, &q0, None).unwrap()), 15);
    }

    #[test]
    fn row_and_column_sums() {
        let q0 = FieldCtx::rationals();
        for (n, r, s, q) in [(4, 2, 1, 2), (5, 2, 1, 2), (4, 3, 2, 3), (5, 3, 1, 2)] {
            let w = build_wq(n, r, s, q, &q0, None).unwrap();
            for i in 0..w.rows() {
                assert_eq!((0..w.cols()).filter(|&j| !w.is_zero_at(i, j)).count(), gauss(r, s, q));
            }
            for j in 0..w.cols() {
                assert_eq!((0..w.rows()).filter(|&i| !w.is_zero_at(i, j)).count(), gauss(n - s, r - s, q));
            }
        }
    }

    #[test]
    fn formula_values() {
        assert_eq!(fy_rank(4, 2, 1, 2, 3).unwrap(), BigUint::from(14u32));
        assert_eq!(fy_rank(4, 2, 1, 2, 0).unwrap(), BigUint::from(15u32));
        assert_eq!(fy_rank(6, 3, 0, 3, 5).unwrap(), BigUint::from(1u32));
        assert_eq!(fy_rank(4, 2, 1, 2, 2).unwrap_err(), Error::CharacteristicP(2));
        assert!(matches!(fy_rank(4, 3, 2, 2, 3), Err(Error::FormulaHypothesis { .. })));
        assert!(fy_rank(4, 2, 1, 6, 3).is_err());
        assert!(fy_rank(4, 2, 1, 2, 4).is_err());
    }

    #[test]
    fn formula_matches_elimination() {
        for (n, q) in [(4usize, 2u64), (4, 3), (5, 2)] {
            for r in 1..=n / 2 {
                for s in 0..r {
                    for ell in [0u64, 2, 3, 5, 7] {
                        if prime_power(q).unwrap().0 == ell {
                            continue;
                        }
                        let field = if ell == 0 { FieldCtx::rationals() } else { FieldCtx::prime(ell).unwrap() };
                        let w = build_wq(n, r, s, q, &field, None).unwrap();
                        let expect = fy_rank(n, r, s, q, ell).unwrap();
                        assert_eq!(BigUint::from(rank(&w)), expect, "n={} r={} s={} q={} ell={}", n, r, s, q, ell);
                    }
                }
            }
        }
    }

    #[test]
    fn kantor_rank_over_rationals() {
        let q0 = FieldCtx::rationals();
        for (n, q) in [(4usize, 2u64), (4, 3), (5, 2)] {
            for r in 0..=n {
                for s in 0..=r.min(n - r) {
                    let w = build_wq(n, r, s, q, &q0, None).unwrap();
                    assert_eq!(rank(&w), gauss(n, s, q), "n={} r={} s={} q={}", n, r, s, q);
                }
            }
        }
    }

    #[test]
    fn up_vectors_are_columns() {
        let f3 = fld("gf3");
        let w = build_wq(4, 2, 1, 2, &f3, None).unwrap();
        let g1 = Grassmannian::new(4, 1, 2).unwrap();
        for (j, x) in g1.iter().enumerate() {
            let up = up_vector(&x, 2, &f3).unwrap();
            let col: Vec<Ffe> = (0..w.rows()).map(|i| w.get(i, j)).collect();
            assert_eq!(up, col);
        }
        let zero = Grassmannian::new(4, 0, 2).unwrap().code(0);
        assert!(up_vector(&zero, 2, &f3).unwrap().iter().all(|v| *v == f3.one()));
        let x = Grassmannian::new(4, 2, 2).unwrap().code(7);
        let ind = up_vector(&x, 2, &f3).unwrap();
        assert_eq!(ind.iter().filter(|v| **v == f3.one()).count(), 1);
        assert_eq!(ind[7], f3.one());
        assert!(up_vector(&x, 1, &f3).is_err());
    }

    #[test]
    fn module_dimensions() {
        let cases = [(4usize, 2usize, 2u64, "gf3"), (5, 2, 2, "gf5"), (4, 1, 3, "gf2"), (5, 2, 3, "gf7")];
        for (n, r, q, fs) in cases {
            let f = fld(fs);
            assert_eq!(u_subspace(n, r, q, &f).unwrap().dim(), gauss(n, r - 1, q));
            let dims = w_chain_dims(n, r, q, &f).unwrap();
            let expect: Vec<usize> = (0..=r).map(|j| gauss(n, j, q)).collect();
            assert_eq!(dims, expect);
        }
        let one = u_subspace(4, 1, 2, &fld("gf3")).unwrap();
        assert_eq!(one.dim(), 1);
        assert!(one.contains(&vec![fld("gf3").one(); 15]).unwrap());
        let chain = w_chain(4, 1, 2, &fld("gf3")).unwrap();
        assert_eq!(chain.dims, [1, 15]);
        assert_eq!(chain.reps[1].len(), 14);
        assert_eq!(u_subspace(4, 2, 2, &fld("gf2")).unwrap_err(), Error::CharacteristicP(2));
    }

    #[test]
    fn diagonal_action() {
        for (n, r, s) in [(4, 2, 1), (5, 2, 1), (5, 3, 2), (4, 2, 0)] {
            for fs in ["gf3", "q0"] {
                assert!(diagonal_action_check(n, r, s, 2, &fld(fs)).unwrap());
            }
        }
        assert!(diagonal_action_check(4, 2, 1, 3, &fld("gf2")).unwrap());
    }

    #[test]
    fn specht_dimensions() {
        let f3 = fld("gf3");
        assert_eq!(specht_dimension(4, 2, 2, &f3).unwrap(), BigUint::from(20u32));
        assert_eq!(specht_dimension(5, 2, 2, &f3).unwrap(), BigUint::from(124u32));
        assert_eq!(specht_dimension(3, 0, 2, &f3).unwrap(), BigUint::from(1u32));
        let sp = specht_module(4, 2, 2, &f3).unwrap();
        let d = down_maps(4, 2, 2, &f3).unwrap();
        for i in 0..sp.dim() {
            let v = sp.vectors().row(i);
            assert!(d.mul_vec(&v).unwrap().iter().all(|x| f3.is_zero(x)));
        }
        assert!(specht_dimension(5, 3, 2, &f3).is_err());
        assert!(specht_dimension(4, 2, 3, &f3).is_err());
    }
}
