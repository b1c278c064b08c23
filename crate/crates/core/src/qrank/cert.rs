use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Ffe};
use crate::linalg::{rank, ExactMatrix};
use crate::qlat::{code_from_rows, q_field, PathClass, QFamily, SubspaceCode};

/// An invertible `n × n` matrix over `F_q`, acting on column vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct GLCert {
    n: usize,
    q: u64,
    matrix: ExactMatrix,
}

impl GLCert {
    pub fn new(matrix: ExactMatrix) -> Result<Self> {
        let q = matrix.field().order().ok_or_else(|| Error::InvalidField("GL needs a finite field".into()))? as u64;
        let n = matrix.rows();
        if matrix.cols() != n || rank(&matrix) != n {
            return Err(Error::DimensionMismatch(format!("{}x{} matrix is not invertible", n, matrix.cols())));
        }
        Ok(GLCert { n, q, matrix })
    }

    /// The permutation matrix sending `e_i` to `e_{image[i-1]}`.
    pub fn permutation(field: &FieldCtx, image: &[usize]) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n + 1];
        for &x in image {
            if x == 0 || x > n || seen[x] {
                return Err(Error::OutOfRange(format!("{:?} is not a permutation", image)));
            }
            seen[x] = true;
        }
        Self::new(ExactMatrix::from_int_fn(n, n, field, |i, j| (image[j] == i + 1) as i64))
    }

    pub fn identity(n: usize, field: &FieldCtx) -> Result<Self> {
        Self::new(ExactMatrix::identity(n, field))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    /// `g(X) = { g v : v ∈ X }`, re-encoded.
    pub fn apply(&self, x: &SubspaceCode) -> Result<SubspaceCode> {
        if x.n() != self.n || x.q() as u64 != self.q {
            return Err(Error::DimensionMismatch(format!("subspace of F_{}^{} under GL({}, {})", x.q(), x.n(), self.n, self.q)));
        }
        let f = self.matrix.field().finite().expect("finite");
        let g = self.matrix.codes().expect("finite");
        let n = self.n;
        let rows: Vec<Vec<u32>> = x
            .basis_codes()
            .iter()
            .map(|v| {
                (0..n)
                    .map(|i| (0..n).fold(0, |acc, j| f.add(acc, f.mul(g[i * n + j], v[j]))))
                    .collect()
            })
            .collect();
        Ok(code_from_rows(f, n, &rows))
    }

    /// Whether every member of `family` is sent into the leading-term
    /// class `PLUS`.
    pub fn certifies(&self, family: &QFamily) -> Result<bool> {
        for code in family.codes() {
            if self.apply(&code)?.path().classify() != PathClass::Plus {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn entry(&self, i: usize, j: usize) -> Ffe {
        self.matrix.get(i, j)
    }
}

/// Looks for `g ∈ GL(n, q)` moving every member of `removed` into the
/// paths with leading term `>= r`. With `P` the union of the pivot columns
/// (`|P| = l`), the permutation sending the `k`-th smallest element of `P`
/// to `n - l + k` and the remaining columns in order to `1..=n-l` works as
/// soon as `l <= n - r`; otherwise `None`.
pub fn find_g(removed: &QFamily) -> Result<Option<GLCert>> {
    let (n, r) = (removed.n(), removed.r());
    let field = q_field(removed.q())?;
    let codes = removed.codes();
    if codes.iter().all(|c| c.path().classify() == PathClass::Plus) {
        return Ok(Some(GLCert::identity(n, &field)?));
    }
    let mut in_p = vec![false; n + 1];
    for c in &codes {
        for &p in c.pivots() {
            in_p[p] = true;
        }
    }
    let l = in_p.iter().filter(|&&b| b).count();
    if l + r > n {
        return Ok(None);
    }
    let mut image = vec![0; n];
    let (mut low, mut high) = (1, n - l + 1);
    for c in 1..=n {
        if in_p[c] {
            image[c - 1] = high;
            high += 1;
        } else {
            image[c - 1] = low;
            low += 1;
        }
    }
    let g = GLCert::permutation(&field, &image)?;
    if !g.certifies(removed)? {
        return Err(Error::Internal(format!("pivot permutation {:?} failed to certify", image)));
    }
    Ok(Some(g))
}
