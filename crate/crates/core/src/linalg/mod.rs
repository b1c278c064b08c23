//! Exact dense linear algebra over any [`FieldCtx`].

mod arith;
mod echelon;
mod gf2;
mod integer;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Ffe};
use arith::{Fin, Rat};

pub use echelon::EchelonBasis;

/// Dense row-major matrix with canonical entries in a single field.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: FieldCtx,
    data: Entries,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Entries {
    Fin(Vec<u32>),
    Rat(Vec<BigRational>),
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize, field: &FieldCtx) -> Self {
        let data = if field.is_rational() {
            Entries::Rat(vec![BigRational::zero(); rows * cols])
        } else {
            Entries::Fin(vec![0; rows * cols])
        };
        ExactMatrix { rows, cols, field: field.clone(), data }
    }

    pub fn identity(n: usize, field: &FieldCtx) -> Self {
        Self::from_int_fn(n, n, field, |i, j| (i == j) as i64)
    }

    /// Entries given as integers and mapped through `n ↦ n·1`.
    pub fn from_int_fn(rows: usize, cols: usize, field: &FieldCtx, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let data = match field.finite() {
            Some(ff) => {
                let mut v = Vec::with_capacity(rows * cols);
                for i in 0..rows {
                    for j in 0..cols {
                        v.push(ff.from_int(f(i, j)));
                    }
                }
                Entries::Fin(v)
            }
            None => {
                let mut v = Vec::with_capacity(rows * cols);
                for i in 0..rows {
                    for j in 0..cols {
                        v.push(BigRational::from_integer(f(i, j).into()));
                    }
                }
                Entries::Rat(v)
            }
        };
        ExactMatrix { rows, cols, field: field.clone(), data }
    }

    pub fn from_fn(rows: usize, cols: usize, field: &FieldCtx, mut f: impl FnMut(usize, usize) -> Ffe) -> Result<Self> {
        let mut m = Self::zeros(rows, cols, field);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j))?;
            }
        }
        Ok(m)
    }

    pub fn from_rows(field: &FieldCtx, cols: usize, rows: &[Vec<Ffe>]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols, field);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!("row {} has length {}, expected {}", i, row.len(), cols)));
            }
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone())?;
            }
        }
        Ok(m)
    }

    pub(crate) fn from_codes(rows: usize, cols: usize, field: &FieldCtx, data: Vec<u32>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        debug_assert!(!field.is_rational());
        ExactMatrix { rows, cols, field: field.clone(), data: Entries::Fin(data) }
    }

    pub(crate) fn from_rationals(rows: usize, cols: usize, field: &FieldCtx, data: Vec<BigRational>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        ExactMatrix { rows, cols, field: field.clone(), data: Entries::Rat(data) }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    /// Raw element codes, for matrices over finite fields.
    pub fn codes(&self) -> Option<&[u32]> {
        match &self.data {
            Entries::Fin(v) => Some(v),
            Entries::Rat(_) => None,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Ffe {
        assert!(i < self.rows && j < self.cols, "index ({}, {}) out of bounds", i, j);
        match &self.data {
            Entries::Fin(v) => Ffe::Finite(v[i * self.cols + j]),
            Entries::Rat(v) => Ffe::Rational(v[i * self.cols + j].clone()),
        }
    }

    pub fn is_zero_at(&self, i: usize, j: usize) -> bool {
        match &self.data {
            Entries::Fin(v) => v[i * self.cols + j] == 0,
            Entries::Rat(v) => v[i * self.cols + j].is_zero(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, x: Ffe) -> Result<()> {
        if i >= self.rows || j >= self.cols {
            return Err(Error::OutOfRange(format!("entry ({}, {}) of {}x{}", i, j, self.rows, self.cols)));
        }
        self.field.check(&x)?;
        let k = i * self.cols + j;
        match (&mut self.data, x) {
            (Entries::Fin(v), Ffe::Finite(c)) => v[k] = c,
            (Entries::Rat(v), Ffe::Rational(r)) => v[k] = r,
            _ => unreachable!("checked by field"),
        }
        Ok(())
    }

    pub fn row(&self, i: usize) -> Vec<Ffe> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let (r, c) = (self.rows, self.cols);
        let data = match &self.data {
            Entries::Fin(v) => Entries::Fin((0..r * c).map(|k| v[(k % r) * c + k / r]).collect()),
            Entries::Rat(v) => Entries::Rat((0..r * c).map(|k| v[(k % r) * c + k / r].clone()).collect()),
        };
        ExactMatrix { rows: c, cols: r, field: self.field.clone(), data }
    }

    /// `M · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Ffe]) -> Result<Vec<Ffe>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("{} columns vs vector of {}", self.cols, v.len())));
        }
        let f = &self.field;
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = f.zero();
            for (j, x) in v.iter().enumerate() {
                if !self.is_zero_at(i, j) && !f.is_zero(x) {
                    acc = f.add(&acc, &f.mul(&self.get(i, j), x));
                }
            }
            out.push(acc);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(self.rows, other.cols, f);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.is_zero_at(i, k) {
                    continue;
                }
                let a = self.get(i, k);
                for j in 0..other.cols {
                    if !other.is_zero_at(k, j) {
                        let cur = out.get(i, j);
                        out.set(i, j, f.add(&cur, &f.mul(&a, &other.get(k, j))))?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.rows != other.rows || self.field != other.field {
            return Err(Error::DimensionMismatch(format!("hstack of {} and {} rows", self.rows, other.rows)));
        }
        let cols = self.cols + other.cols;
        let mut m = Self::zeros(self.rows, cols, &self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.put(i, j, self, i, j);
            }
            for j in 0..other.cols {
                m.put(i, self.cols + j, other, i, j);
            }
        }
        Ok(m)
    }

    /// `[self ; other]`
    pub fn vstack(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.cols || self.field != other.field {
            return Err(Error::DimensionMismatch(format!("vstack of {} and {} columns", self.cols, other.cols)));
        }
        let data = match (&self.data, &other.data) {
            (Entries::Fin(a), Entries::Fin(b)) => Entries::Fin(a.iter().chain(b).copied().collect()),
            (Entries::Rat(a), Entries::Rat(b)) => Entries::Rat(a.iter().chain(b).cloned().collect()),
            _ => unreachable!("same field"),
        };
        Ok(ExactMatrix { rows: self.rows + other.rows, cols: self.cols, field: self.field.clone(), data })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Result<ExactMatrix> {
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.rows) {
            return Err(Error::OutOfRange(format!("row {} of {}", bad, self.rows)));
        }
        let c = self.cols;
        let data = match &self.data {
            Entries::Fin(v) => Entries::Fin(idx.iter().flat_map(|&i| v[i * c..(i + 1) * c].iter().copied()).collect()),
            Entries::Rat(v) => Entries::Rat(idx.iter().flat_map(|&i| v[i * c..(i + 1) * c].iter().cloned()).collect()),
        };
        Ok(ExactMatrix { rows: idx.len(), cols: c, field: self.field.clone(), data })
    }

    fn put(&mut self, i: usize, j: usize, src: &ExactMatrix, si: usize, sj: usize) {
        let k = i * self.cols + j;
        let sk = si * src.cols + sj;
        match (&mut self.data, &src.data) {
            (Entries::Fin(d), Entries::Fin(s)) => d[k] = s[sk],
            (Entries::Rat(d), Entries::Rat(s)) => d[k] = s[sk].clone(),
            _ => unreachable!("same field"),
        }
    }

    /// Nonzero entries in row-major order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, Ffe)> + '_ {
        (0..self.rows * self.cols).filter_map(move |k| {
            let (i, j) = (k / self.cols.max(1), k % self.cols.max(1));
            (!self.is_zero_at(i, j)).then(|| (i, j, self.get(i, j)))
        })
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = match (&mut m.data, self.field.finite()) {
            (Entries::Fin(v), Some(f)) => arith::rref(&Fin(f), self.rows, self.cols, v),
            (Entries::Rat(v), None) => arith::rref(&Rat, self.rows, self.cols, v),
            _ => unreachable!(),
        };
        (m, pivots)
    }
}

/// A subspace given by linearly independent spanning rows.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: ExactMatrix,
}

impl SubspaceBasis {
    /// Fails unless the rows of `vectors` are independent.
    pub fn new(vectors: ExactMatrix) -> Result<Self> {
        if rank(&vectors) != vectors.rows() {
            return Err(Error::DimensionMismatch("spanning rows are dependent".into()));
        }
        Ok(SubspaceBasis { ambient_dim: vectors.cols(), vectors })
    }

    /// Basis of the span of the rows of `m`.
    pub fn row_space(m: &ExactMatrix) -> Self {
        let (r, pivots) = m.rref();
        let idx: Vec<usize> = (0..pivots.len()).collect();
        let vectors = r.select_rows(&idx).expect("in range");
        SubspaceBasis { ambient_dim: m.cols(), vectors }
    }

    pub fn column_space(m: &ExactMatrix) -> Self {
        Self::row_space(&m.transpose())
    }

    pub fn zero(ambient_dim: usize, field: &FieldCtx) -> Self {
        SubspaceBasis { ambient_dim, vectors: ExactMatrix::zeros(0, ambient_dim, field) }
    }

    pub(crate) fn from_independent(vectors: ExactMatrix) -> Self {
        SubspaceBasis { ambient_dim: vectors.cols(), vectors }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.rows()
    }

    pub fn vectors(&self) -> &ExactMatrix {
        &self.vectors
    }

    pub fn field(&self) -> &FieldCtx {
        self.vectors.field()
    }

    pub fn contains(&self, v: &[Ffe]) -> Result<bool> {
        in_column_space(&self.vectors.transpose(), v)
    }
}

/// Rank by Gaussian elimination: packed words over GF(2), fraction-free
/// integer elimination over the rationals, plain elimination otherwise.
pub fn rank(m: &ExactMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    match (&m.data, m.field.finite()) {
        (Entries::Fin(v), Some(f)) if f.order() == 2 => gf2::PackedRows::from_codes(m.rows, m.cols, v).rank(),
        (Entries::Fin(v), Some(f)) => {
            let mut work = v.clone();
            arith::echelon_rank(&Fin(f), m.rows, m.cols, &mut work)
        }
        (Entries::Rat(v), None) => integer::rational_rank(m.rows, m.cols, v),
        _ => unreachable!(),
    }
}

/// Rank through the generic elimination path, bypassing the GF(2) and
/// integer kernels. Used to cross-check them.
pub fn rank_generic(m: &ExactMatrix) -> usize {
    m.rref().1.len()
}

/// Basis of `{ v : M v = 0 }`.
pub fn kernel_basis(m: &ExactMatrix) -> SubspaceBasis {
    let (r, pivots) = m.rref();
    let cols = m.cols;
    let f = &m.field;
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let mut out = ExactMatrix::zeros(free.len(), cols, f);
    for (k, &fc) in free.iter().enumerate() {
        out.set(k, fc, f.one()).expect("in range");
        for (i, &pc) in pivots.iter().enumerate() {
            if !r.is_zero_at(i, fc) {
                out.set(k, pc, f.neg(&r.get(i, fc))).expect("in range");
            }
        }
    }
    SubspaceBasis::from_independent(out)
}

/// `U ∩ V` from the kernel of the stacked coefficient system
/// `a·U + b·V = 0`, mapped back through `a ↦ a·U`.
pub fn intersect(u: &SubspaceBasis, v: &SubspaceBasis) -> Result<SubspaceBasis> {
    if u.ambient_dim != v.ambient_dim || u.field() != v.field() {
        return Err(Error::DimensionMismatch(format!(
            "ambient dimensions {} and {}",
            u.ambient_dim, v.ambient_dim
        )));
    }
    let f = u.field();
    let k = u.dim();
    if k == 0 || v.dim() == 0 {
        return Ok(SubspaceBasis::zero(u.ambient_dim, f));
    }
    let stacked = u.vectors.vstack(&v.vectors)?;
    let coeffs = kernel_basis(&stacked.transpose());
    let mut a = ExactMatrix::zeros(coeffs.dim(), k, f);
    for i in 0..coeffs.dim() {
        for j in 0..k {
            a.set(i, j, coeffs.vectors.get(i, j))?;
        }
    }
    let vectors = a.mul(&u.vectors)?;
    // a ↦ a·U is injective on the kernel since both inputs are independent
    debug_assert_eq!(rank(&vectors), vectors.rows());
    Ok(SubspaceBasis::from_independent(vectors))
}

/// Whether `v` lies in the column space of `m`.
pub fn in_column_space(m: &ExactMatrix, v: &[Ffe]) -> Result<bool> {
    if v.len() != m.rows {
        return Err(Error::DimensionMismatch(format!("{} rows vs vector of {}", m.rows, v.len())));
    }
    let col = ExactMatrix::from_rows(&m.field, 1, &v.iter().map(|x| vec![x.clone()]).collect::<Vec<_>>())?;
    Ok(rank(&m.hstack(&col)?) == rank(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> FieldCtx {
        FieldCtx::parse(s).unwrap()
    }

    #[test]
    fn identity_and_zero_ranks() {
        for s in ["q0", "gf2", "gf3", "gf2^2"] {
            assert_eq!(rank(&ExactMatrix::identity(3, &f(s))), 3);
            assert_eq!(rank(&ExactMatrix::zeros(3, 4, &f(s))), 0);
        }
        assert_eq!(rank(&ExactMatrix::zeros(0, 5, &f("q0"))), 0);
        assert_eq!(rank(&ExactMatrix::zeros(5, 0, &f("gf2"))), 0);
    }

    #[test]
    fn kernel_of_identity_and_ones() {
        assert_eq!(kernel_basis(&ExactMatrix::identity(4, &f("gf5"))).dim(), 0);
        let m = ExactMatrix::from_int_fn(1, 2, &f("gf2"), |_, _| 1);
        let k = kernel_basis(&m);
        assert_eq!(k.dim(), 1);
        assert_eq!(k.vectors().row(0), vec![Ffe::Finite(1), Ffe::Finite(1)]);
    }

    #[test]
    fn kernel_of_known_factorisation() {
        // A (4x3) * B (3x6) over F_5 with both factors of full rank 3
        let k = f("gf5");
        let a = ExactMatrix::from_int_fn(4, 3, &k, |i, j| [[1, 0, 2], [0, 1, 1], [3, 4, 0], [1, 1, 1]][i][j]);
        let b = ExactMatrix::from_int_fn(3, 6, &k, |i, j| [[1, 2, 0, 0, 1, 3], [0, 1, 4, 2, 0, 1], [0, 0, 0, 1, 1, 1]][i][j]);
        assert_eq!(rank(&a), 3);
        assert_eq!(rank(&b), 3);
        let m = a.mul(&b).unwrap();
        assert_eq!(rank(&m), 3);
        let ker = kernel_basis(&m);
        assert_eq!(ker.dim(), 3);
        for i in 0..ker.dim() {
            let out = m.mul_vec(&ker.vectors().row(i)).unwrap();
            assert!(out.iter().all(|x| k.is_zero(x)));
        }
    }

    #[test]
    fn intersections() {
        let k = f("gf3");
        let u = SubspaceBasis::new(ExactMatrix::from_int_fn(2, 4, &k, |i, j| (i == j) as i64)).unwrap();
        let v = SubspaceBasis::new(ExactMatrix::from_int_fn(2, 4, &k, |i, j| (i + 2 == j) as i64)).unwrap();
        assert_eq!(intersect(&u, &v).unwrap().dim(), 0);
        assert_eq!(intersect(&u, &u).unwrap().dim(), 2);
        let w = SubspaceBasis::zero(5, &k);
        assert!(intersect(&u, &w).is_err());
    }

    #[test]
    fn column_space_membership() {
        let k = f("q0");
        let m = ExactMatrix::from_int_fn(2, 1, &k, |i, _| (i == 0) as i64);
        assert!(in_column_space(&m, &[k.one(), k.zero()]).unwrap());
        assert!(in_column_space(&m, &[k.zero(), k.zero()]).unwrap());
        assert!(!in_column_space(&m, &[k.zero(), k.one()]).unwrap());
        assert!(in_column_space(&m, &[k.one()]).is_err());
    }

    #[test]
    fn echelon_basis_growth() {
        let k = f("gf2");
        let mut e = EchelonBasis::new(&k, 3);
        assert!(e.insert(&[k.one(), k.one(), k.zero()]).unwrap());
        assert!(e.insert(&[k.zero(), k.one(), k.one()]).unwrap());
        assert!(!e.insert(&[k.one(), k.zero(), k.one()]).unwrap());
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&[k.one(), k.zero(), k.one()]).unwrap());
        assert_eq!(rank(&e.to_matrix()), 2);
    }
}
