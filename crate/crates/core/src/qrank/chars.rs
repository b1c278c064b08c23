use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::u_subspace;
use crate::character::CharacterCtx;
use crate::error::{Error, Result};
use crate::field::Ffe;
use crate::linalg::{intersect, ExactMatrix, SubspaceBasis};
use crate::qlat::{Grassmannian, LatticePath, PathClass, SubspaceCode};

fn grassmannian_for(ctx: &CharacterCtx, n: usize, r: usize) -> Result<Grassmannian> {
    Grassmannian::over(n, r, ctx.q_field())
}

/// `Σ l_ij x_ij` over the boxes of a common path.
fn pairing(ctx: &CharacterCtx, l: &SubspaceCode, x: &SubspaceCode) -> u32 {
    let f = ctx.q_field().finite().expect("finite");
    l.filling()
        .iter()
        .flatten()
        .zip(x.filling().iter().flatten())
        .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}

/// `e_L = Σ_{π(X) = π(L)} χ_L(-X) X` with `χ_L(X) = θ(Σ l_ij x_ij)`, as a
/// vector over the host field indexed by all `r`-subspaces.
pub fn e_vector(l: &SubspaceCode, ctx: &CharacterCtx) -> Result<Vec<Ffe>> {
    let f = ctx.q_field().finite().expect("finite");
    if l.q() != f.order() {
        return Err(Error::FieldMismatch(format!("code over F_{} with characters of {}", l.q(), ctx.q_field())));
    }
    let g = grassmannian_for(ctx, l.n(), l.r())?;
    let mut out = vec![Ffe::Finite(0); g.len()];
    for idx in g.path_block(&l.path()) {
        let x = g.code(idx);
        out[idx] = Ffe::Finite(ctx.theta_raw(f.neg(pairing(ctx, l, &x))));
    }
    Ok(out)
}

/// The `c(π) × c(π)` matrix of the vectors `e_L` with `π(L) = π`,
/// restricted to the coordinates of that path.
pub fn e_block_matrix(path: &LatticePath, ctx: &CharacterCtx) -> Result<ExactMatrix> {
    let f = ctx.q_field().finite().expect("finite");
    let g = grassmannian_for(ctx, path.n(), path.r())?;
    let block: Vec<SubspaceCode> = g.path_block(path).map(|i| g.code(i)).collect();
    let c = block.len();
    let mut data = Vec::with_capacity(c * c);
    for l in &block {
        for x in &block {
            data.push(ctx.theta_raw(f.neg(pairing(ctx, l, x))));
        }
    }
    Ok(ExactMatrix::from_codes(c, c, ctx.host(), data))
}

/// Dimension of `U_{r-1} ∩ span{X : π(X) has leading term >= r}` over the
/// host field.
pub fn lemma18_intersection_dim(n: usize, r: usize, ctx: &CharacterCtx) -> Result<usize> {
    if 2 * r > n {
        return Err(Error::OutOfRange(format!("need r <= n/2, got n={} r={}", n, r)));
    }
    let q = ctx.q_field().order().expect("finite") as u64;
    let host = ctx.host();
    let u = u_subspace(n, r, q, host)?;
    let g = grassmannian_for(ctx, n, r)?;
    let plus: Vec<usize> = g.iter().enumerate().filter(|(_, c)| c.path().classify() == PathClass::Plus).map(|(i, _)| i).collect();
    let mut coords = ExactMatrix::zeros(plus.len(), g.len(), host);
    for (k, &i) in plus.iter().enumerate() {
        coords.set(k, i, host.one())?;
    }
    let c = SubspaceBasis::new(coords)?;
    Ok(intersect(&u, &c)?.dim())
}

pub fn lemma18_check(n: usize, r: usize, ctx: &CharacterCtx) -> Result<bool> {
    Ok(lemma18_intersection_dim(n, r, ctx)? == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::gauss;
    use crate::field::FieldCtx;
    use crate::linalg::rank;
    use crate::qlat::enumerate_paths;

    fn ctx(q: u64) -> CharacterCtx {
        CharacterCtx::new(&crate::qlat::q_field(q).unwrap()).unwrap()
    }

    #[test]
    fn zero_filling_gives_block_indicator() {
        let c = ctx(2);
        let g = Grassmannian::over(4, 2, c.q_field()).unwrap();
        let path: LatticePath = "ESES".parse().unwrap();
        let block = g.path_block(&path);
        assert_eq!(path.box_count(), 3);
        assert_eq!(block.len(), 8);
        let e = e_vector(&g.code(block.start), &c).unwrap();
        for (i, v) in e.iter().enumerate() {
            let expect = if block.contains(&i) { 1 } else { 0 };
            assert_eq!(*v, Ffe::Finite(expect));
        }
    }

    #[test]
    fn block_matrices_full_rank() {
        for q in [2u64, 3, 4] {
            let c = ctx(q);
            for n in 0..=4 {
                for r in 0..=n {
                    for path in enumerate_paths(n, r) {
                        let m = e_block_matrix(&path, &c).unwrap();
                        let cp = (q as usize).pow(path.box_count() as u32);
                        assert_eq!(rank(&m), cp, "q={} path {}", q, path);
                    }
                }
            }
        }
    }

    #[test]
    fn e_vectors_span_whole_space() {
        let c = ctx(3);
        let g = Grassmannian::over(4, 2, c.q_field()).unwrap();
        let rows: Vec<Vec<Ffe>> = g.iter().map(|l| e_vector(&l, &c).unwrap()).collect();
        let m = ExactMatrix::from_rows(c.host(), g.len(), &rows).unwrap();
        assert_eq!(rank(&m), gauss(4, 2, 3));
    }

    #[test]
    fn intersection_is_trivial() {
        assert!(lemma18_check(4, 2, &ctx(2)).unwrap());
        assert!(lemma18_check(5, 2, &ctx(2)).unwrap());
        assert!(lemma18_check(4, 2, &ctx(3)).unwrap());
        assert!(lemma18_check(4, 1, &ctx(2)).unwrap());
        assert_eq!(lemma18_intersection_dim(6, 3, &ctx(2)).unwrap(), 0);
        assert!(lemma18_check(5, 3, &ctx(2)).is_err());
    }

    #[test]
    fn other_hosts() {
        let q2 = crate::qlat::q_field(2).unwrap();
        let c = CharacterCtx::with_host(&q2, &FieldCtx::prime(5).unwrap()).unwrap();
        assert!(lemma18_check(4, 2, &c).unwrap());
    }
}
