//! Bier vectors `⟨A⟩_r`, Bier bases and the identities behind them.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{all_subsets, build_w, full_rank_sets, Subset};
use crate::combin::binomial;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Ffe};
use crate::linalg::ExactMatrix;

/// Indices (canonical order) of the `r`-subsets containing `a`.
fn supersets(a: &Subset, r: usize) -> Vec<usize> {
    all_subsets(a.n(), r)
        .iter()
        .enumerate()
        .filter(|(_, big)| a.is_subset_of(big))
        .map(|(i, _)| i)
        .collect()
}

/// `acc += c · ⟨a⟩_r`
fn add_up(field: &FieldCtx, acc: &mut [Ffe], c: &Ffe, a: &Subset, r: usize) {
    for i in supersets(a, r) {
        acc[i] = field.add(&acc[i], c);
    }
}

/// Subsets `T ⊇ a` with `|T| = |a| + extra`.
fn supersets_of_size(a: &Subset, extra: usize) -> Vec<Subset> {
    let free = a.complement().elements();
    crate::combin::lex_subsets(free.len(), extra)
        .iter()
        .map(|pick| {
            let mut t = *a;
            for &k in pick {
                t = t.union(&Subset::new(a.n(), &[free[k - 1]]).expect("valid"));
            }
            t
        })
        .collect()
}

/// `⟨A⟩_r`: the sum of all `r`-subsets containing `A`, as a coordinate
/// vector over the canonical basis of `M^r`.
pub fn bier_vector(a: &Subset, r: usize, field: &FieldCtx) -> Result<Vec<Ffe>> {
    if a.len() > r || r > a.n() {
        return Err(Error::OutOfRange(format!("|A| = {} > r = {} or r > n", a.len(), r)));
    }
    let mut v = vec![field.zero(); crate::combin::binom(a.n(), r)];
    add_up(field, &mut v, &field.one(), a, r);
    Ok(v)
}

/// Rows `⟨A⟩_r` for `A ∈ S(j)`, blocks in increasing `j = 0..=r`.
pub fn bier_basis_matrix(n: usize, r: usize, field: &FieldCtx) -> Result<ExactMatrix> {
    if 2 * r > n {
        return Err(Error::OutOfRange(format!("r = {} > n/2 with n = {}", r, n)));
    }
    let cols = all_subsets(n, r);
    let mut labels = Vec::with_capacity(cols.len());
    for j in 0..=r {
        labels.extend(full_rank_sets(n, j)?);
    }
    Ok(ExactMatrix::from_int_fn(labels.len(), cols.len(), field, |i, k| labels[i].is_subset_of(&cols[k]) as i64))
}

/// Left-hand side of the Bier relation
/// `C(r-j, ℓ)⟨A⟩_r + Σ_{i=1}^{ℓ} (-1)^i C(r-j-i, ℓ-i) Σ_{T ⊃ A, |T| = j+i} ⟨T⟩_r`,
/// which must be the zero vector.
pub fn bier_identity_residual(a: &Subset, r: usize, ell: usize, field: &FieldCtx) -> Result<Vec<Ffe>> {
    let j = a.len();
    if j >= r || r > a.n() || ell == 0 || ell > r - j {
        return Err(Error::OutOfRange(format!("|A| = {}, r = {}, ell = {}", j, r, ell)));
    }
    let mut acc = vec![field.zero(); crate::combin::binom(a.n(), r)];
    let lead = field.embed_big(&binomial((r - j) as i64, ell as i64).into());
    add_up(field, &mut acc, &lead, a, r);
    for i in 1..=ell {
        let mut c = field.embed_big(&binomial((r - j - i) as i64, (ell - i) as i64).into());
        if i % 2 == 1 {
            c = field.neg(&c);
        }
        for t in supersets_of_size(a, i) {
            add_up(field, &mut acc, &c, &t, r);
        }
    }
    Ok(acc)
}

fn check_bracket_args(u: &Subset, x: &Subset, m: usize, r: usize) -> Result<()> {
    let n = u.n();
    let low = Subset::prefix(n, 2 * m - 1);
    if m == 0 || 2 * m - 1 > n {
        return Err(Error::OutOfRange(format!("m = {} with n = {}", m, n)));
    }
    if !u.is_subset_of(&low) || u.len() > m {
        return Err(Error::OutOfRange(format!("U = {} must be at most m elements of [2m-1]", u)));
    }
    if !x.is_disjoint(&low) {
        return Err(Error::OutOfRange(format!("X = {} meets [2m-1]", x)));
    }
    for (k, &e) in x.elements().iter().enumerate() {
        if e < 2 * (m + k + 1) {
            return Err(Error::OutOfRange(format!("X = {} violates x_i >= 2i", x)));
        }
    }
    if m + x.len() > r || r > n {
        return Err(Error::OutOfRange(format!("m + |X| = {} > r = {}", m + x.len(), r)));
    }
    Ok(())
}

/// `[U ∪ X] = Σ ⟨J ∪ X⟩_r` over `m`-subsets `J ⊆ [2m-1]` containing `U`.
pub fn bracket(u: &Subset, x: &Subset, m: usize, r: usize, field: &FieldCtx) -> Result<Vec<Ffe>> {
    check_bracket_args(u, x, m, r)?;
    let n = u.n();
    let mut acc = vec![field.zero(); crate::combin::binom(n, r)];
    let one = field.one();
    for jset in all_subsets(2 * m - 1, m) {
        let jset = Subset::from_mask(n, jset.mask())?;
        if u.is_subset_of(&jset) {
            add_up(field, &mut acc, &one, &jset.union(x), r);
        }
    }
    Ok(acc)
}

/// `Σ_{U ⊆ I} (-1)^{|U|} [U ∪ X]`, which vanishes for every `m`-subset
/// `I ⊆ [2m-1]`.
pub fn bracket_alternating_residual(i_set: &Subset, x: &Subset, m: usize, r: usize, field: &FieldCtx) -> Result<Vec<Ffe>> {
    check_bracket_args(i_set, x, m, r)?;
    if i_set.len() != m {
        return Err(Error::OutOfRange(format!("|I| = {} must equal m = {}", i_set.len(), m)));
    }
    let n = i_set.n();
    let elems = i_set.elements();
    let mut acc = vec![field.zero(); crate::combin::binom(n, r)];
    for bits in 0u32..1 << m {
        let picked: Vec<usize> = (0..m).filter(|&k| bits >> k & 1 == 1).map(|k| elems[k]).collect();
        let u = Subset::new(n, &picked)?;
        let b = bracket(&u, x, m, r, field)?;
        let negate = picked.len() % 2 == 1;
        for (a, y) in acc.iter_mut().zip(&b) {
            *a = if negate { field.sub(a, y) } else { field.add(a, y) };
        }
    }
    Ok(acc)
}

/// Checks `φ_{s,r}(⟨A⟩_s) = C(r-j, s-j)⟨A⟩_r` for every `A ∈ S(j)`,
/// `j <= s`, with `φ_{s,r}` applied as `W_{r,s}`.
pub fn diagonal_form_check(n: usize, r: usize, s: usize, field: &FieldCtx) -> Result<bool> {
    if s > r || 2 * r > n {
        return Err(Error::OutOfRange(format!("need s <= r <= n/2, got n={} r={} s={}", n, r, s)));
    }
    let w = build_w(n, r, s, field, None)?;
    for j in 0..=s {
        let c = field.embed_big(&binomial((r - j) as i64, (s - j) as i64).into());
        for a in full_rank_sets(n, j)? {
            let lhs = w.mul_vec(&bier_vector(&a, s, field)?)?;
            let rhs: Vec<Ffe> = bier_vector(&a, r, field)?.iter().map(|y| field.mul(&c, y)).collect();
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::binom;
    use crate::linalg::rank;

    fn set(n: usize, e: &[usize]) -> Subset {
        Subset::new(n, e).unwrap()
    }

    fn is_zero(f: &FieldCtx, v: &[Ffe]) -> bool {
        v.iter().all(|x| f.is_zero(x))
    }

    #[test]
    fn bier_vector_examples() {
        let q = FieldCtx::rationals();
        let a = set(4, &[1, 3]);
        let v = bier_vector(&a, 2, &q).unwrap();
        assert_eq!(v.iter().filter(|x| !q.is_zero(x)).count(), 1);
        assert_eq!(v[a.index()], q.one());
        assert!(bier_vector(&Subset::empty(4), 2, &q).unwrap().iter().all(|x| *x == q.one()));
        // {1} in [3], r = 2: {1,2} and {1,3} are indices 0 and 1
        let v = bier_vector(&set(3, &[1]), 2, &q).unwrap();
        assert_eq!(v, vec![q.one(), q.one(), q.zero()]);
        assert!(bier_vector(&set(3, &[1, 2, 3]), 2, &q).is_err());
    }

    #[test]
    fn bier_basis_small() {
        let q = FieldCtx::rationals();
        let b = bier_basis_matrix(2, 1, &q).unwrap();
        assert_eq!(b.row(0), vec![q.one(), q.one()]);
        assert_eq!(b.row(1), vec![q.zero(), q.one()]);
        assert_eq!(rank(&b), 2);
        for fs in ["q0", "gf2"] {
            let f = FieldCtx::parse(fs).unwrap();
            assert_eq!(rank(&bier_basis_matrix(4, 2, &f).unwrap()), 6);
        }
        for fs in ["gf2", "gf3", "gf5"] {
            let f = FieldCtx::parse(fs).unwrap();
            assert_eq!(rank(&bier_basis_matrix(6, 3, &f).unwrap()), 20);
        }
        assert!(bier_basis_matrix(5, 3, &q).is_err());
    }

    #[test]
    fn bier_identity_examples() {
        let q = FieldCtx::rationals();
        let gf2 = FieldCtx::parse("gf2").unwrap();
        assert!(is_zero(&q, &bier_identity_residual(&set(4, &[1]), 2, 1, &q).unwrap()));
        assert!(is_zero(&q, &bier_identity_residual(&set(6, &[2]), 3, 2, &q).unwrap()));
        assert!(is_zero(&gf2, &bier_identity_residual(&Subset::empty(7), 3, 3, &gf2).unwrap()));
        assert!(bier_identity_residual(&set(4, &[1, 2]), 2, 1, &q).is_err());
        assert!(bier_identity_residual(&set(4, &[1]), 2, 2, &q).is_err());
    }

    #[test]
    fn bracket_examples() {
        let q = FieldCtx::rationals();
        // U = I: only J = I contributes
        let i = set(7, &[1, 3]);
        let x = set(7, &[6]);
        let b = bracket(&i, &x, 2, 3, &q).unwrap();
        assert_eq!(b, bier_vector(&i.union(&x), 3, &q).unwrap());
        let r = bracket_alternating_residual(&set(5, &[1]), &set(5, &[4]), 1, 2, &q).unwrap();
        assert!(is_zero(&q, &r));
        let r = bracket_alternating_residual(&i, &x, 2, 3, &q).unwrap();
        assert!(is_zero(&q, &r));
        // x_1 = 3 < 2(m+1) = 4
        assert!(bracket(&Subset::empty(5), &set(5, &[3]), 1, 2, &q).is_err());
        assert!(bracket(&set(5, &[2]), &set(5, &[4]), 1, 2, &q).is_err());
    }

    #[test]
    fn bracket_alternating_exhaustive_small() {
        let q = FieldCtx::rationals();
        for n in 1..=7usize {
            for m in 1..=n.div_ceil(2) {
                let low = 2 * m - 1;
                for i_set in all_subsets(low, m) {
                    let i_set = Subset::from_mask(n, i_set.mask()).unwrap();
                    for xmask in 0u64..1 << n {
                        let x = Subset::from_mask(n, xmask).unwrap();
                        for r in m + x.len()..=n {
                            if let Ok(res) = bracket_alternating_residual(&i_set, &x, m, r, &q) {
                                assert!(is_zero(&q, &res), "n={} m={} I={} X={} r={}", n, m, i_set, x, r);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn diagonal_form_examples() {
        let q = FieldCtx::rationals();
        let w = build_w(4, 2, 1, &q, None).unwrap();
        let a = set(4, &[2]);
        assert_eq!(w.mul_vec(&bier_vector(&a, 1, &q).unwrap()).unwrap(), bier_vector(&a, 2, &q).unwrap());
        let e = Subset::empty(4);
        let two = q.embed(2);
        let expect: Vec<Ffe> = bier_vector(&e, 2, &q).unwrap().iter().map(|y| q.mul(&two, y)).collect();
        assert_eq!(w.mul_vec(&bier_vector(&e, 1, &q).unwrap()).unwrap(), expect);
        for fs in ["q0", "gf3"] {
            assert!(diagonal_form_check(6, 3, 2, &FieldCtx::parse(fs).unwrap()).unwrap());
        }
        assert_eq!(binom(6, 3), 20);
    }
}
