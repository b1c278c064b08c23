//! The lattice of subspaces of `F_q^n`: lattice paths, the (path, filling)
//! encoding of `r`-subspaces and its canonical enumeration.

mod good;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::combin::{binom, lex_subsets, subset_rank, subset_unrank};
use crate::error::{Error, Result};
use crate::field::{is_prime, FieldCtx, FieldSpec, FiniteField};
use crate::linalg::ExactMatrix;
use crate::sets::{is_full_rank, Subset};

pub use crate::combin::gaussian_binomial;
pub use good::{count_good, good_subspaces, is_good};

/// Largest `n` accepted by the subspace enumerations.
pub const MAX_N: usize = 16;

/// `F_q` for a prime power `q`, with the default modulus.
pub fn q_field(q: u64) -> Result<FieldCtx> {
    let (p, t) = prime_power(q).ok_or_else(|| Error::InvalidField(format!("{} is not a prime power", q)))?;
    FieldCtx::new(FieldSpec::extension(p, t)?)
}

/// `(p, t)` with `q = p^t`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut t) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        t += 1;
    }
    (rest == 1 && is_prime(p)).then_some((p, t))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    S,
    E,
}

/// Classification of a path relative to `S(r)` and its leading term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PathClass {
    Plus,
    Minus,
    Outside,
}

impl PathClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            PathClass::Plus => "PLUS",
            PathClass::Minus => "MINUS",
            PathClass::Outside => "OUTSIDE",
        }
    }
}

impl fmt::Display for PathClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A path of `n` steps with exactly `r` south steps, stored by the
/// (1-based) positions of its south steps.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePath {
    n: usize,
    south: Vec<usize>,
}

impl LatticePath {
    pub fn from_south_positions(n: usize, south: &[usize]) -> Result<Self> {
        if south.windows(2).any(|w| w[0] >= w[1]) || south.iter().any(|&p| p == 0 || p > n) {
            return Err(Error::OutOfRange(format!("south positions {:?} in a path of length {}", south, n)));
        }
        Ok(LatticePath { n, south: south.to_vec() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.south.len()
    }

    pub fn south_positions(&self) -> &[usize] {
        &self.south
    }

    pub fn steps(&self) -> Vec<Step> {
        let mut out = vec![Step::E; self.n];
        for &p in &self.south {
            out[p - 1] = Step::S;
        }
        out
    }

    /// The `r`-subset of south positions.
    pub fn to_subset(&self) -> Subset {
        Subset::new(self.n, &self.south).expect("positions in range")
    }

    /// Boxes strictly below the path in the `r × (n-r)` array.
    pub fn box_count(&self) -> usize {
        self.south.iter().enumerate().map(|(i, &p)| p - 1 - i).sum()
    }

    /// Number of east steps before the first south step.
    pub fn leading_term(&self) -> usize {
        self.south.first().map_or(self.n, |&p| p - 1)
    }

    /// Whether the path stays on or below the diagonal.
    pub fn in_s(&self) -> bool {
        is_full_rank(&self.to_subset())
    }

    pub fn classify(&self) -> PathClass {
        if !self.in_s() {
            PathClass::Outside
        } else if self.leading_term() >= self.r() {
            PathClass::Plus
        } else {
            PathClass::Minus
        }
    }

    /// Position of the path in [`enumerate_paths`] order.
    pub fn index(&self) -> usize {
        subset_rank(self.n, &self.south)
    }

    /// Lattice points visited, as `(i, j)` with `i` in `1..=r+1` and `j` in
    /// `1..=n-r+1`, starting at `(1, 1)`.
    pub fn corners(&self) -> Vec<(usize, usize)> {
        let (mut i, mut j) = (1, 1);
        let mut out = Vec::with_capacity(self.n + 1);
        out.push((i, j));
        for s in self.steps() {
            match s {
                Step::S => i += 1,
                Step::E => j += 1,
            }
            out.push((i, j));
        }
        out
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.steps() {
            f.write_str(if s == Step::S { "S" } else { "E" })?;
        }
        Ok(())
    }
}

impl FromStr for LatticePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut south = Vec::new();
        for (k, c) in s.trim().chars().enumerate() {
            match c {
                'S' | 's' => south.push(k + 1),
                'E' | 'e' => {}
                _ => return Err(Error::Parse(format!("bad path step {:?}", c))),
            }
        }
        LatticePath::from_south_positions(s.trim().chars().count(), &south)
    }
}

/// All paths with `r` south steps among `n`, ordered lexicographically on
/// step strings with `S < E`.
pub fn enumerate_paths(n: usize, r: usize) -> Vec<LatticePath> {
    lex_subsets(n, r).into_iter().map(|south| LatticePath { n, south }).collect()
}

/// An `r`-subspace of `F_q^n` as pivot columns and filling.
///
/// The canonical basis has one row per pivot: row `i` ends with a 1 at
/// column `p_i`, vanishes at the other pivot columns, and carries the
/// filling of row `i` at the non-pivot columns left of `p_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubspaceCode {
    n: usize,
    q: u32,
    pivots: Vec<usize>,
    filling: Vec<Vec<u32>>,
}

impl SubspaceCode {
    pub fn new(n: usize, q: u32, pivots: Vec<usize>, filling: Vec<Vec<u32>>) -> Result<Self> {
        LatticePath::from_south_positions(n, &pivots)?;
        if filling.len() != pivots.len() {
            return Err(Error::DimensionMismatch(format!("{} filling rows for {} pivots", filling.len(), pivots.len())));
        }
        for (i, (row, &p)) in filling.iter().zip(&pivots).enumerate() {
            if row.len() != p - 1 - i {
                return Err(Error::DimensionMismatch(format!(
                    "filling row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    p - 1 - i
                )));
            }
            if row.iter().any(|&x| x >= q) {
                return Err(Error::OutOfRange(format!("filling entry outside F_{}", q)));
            }
        }
        Ok(SubspaceCode { n, q, pivots, filling })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.pivots.len()
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// 1-based pivot columns, increasing.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Filling rows as `F_q` element codes.
    pub fn filling(&self) -> &[Vec<u32>] {
        &self.filling
    }

    pub fn path(&self) -> LatticePath {
        LatticePath { n: self.n, south: self.pivots.clone() }
    }

    /// The `r × (n-r)` box array, zero above the path.
    pub fn box_array(&self) -> Vec<Vec<u32>> {
        let w = self.n - self.r();
        self.filling
            .iter()
            .map(|row| {
                let mut out = vec![0; w];
                out[..row.len()].copy_from_slice(row);
                out
            })
            .collect()
    }

    /// Canonical basis rows as raw `F_q` codes.
    pub fn basis_codes(&self) -> Vec<Vec<u32>> {
        let mut is_pivot = vec![false; self.n + 1];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        self.pivots
            .iter()
            .zip(&self.filling)
            .map(|(&p, fill)| {
                let mut row = vec![0; self.n];
                row[p - 1] = 1;
                let free = (1..p).filter(|&c| !is_pivot[c]);
                for (c, &x) in free.zip(fill) {
                    row[c - 1] = x;
                }
                row
            })
            .collect()
    }

    /// Whether every vector of `v`'s span lies in this subspace. Reduces each
    /// vector against the canonical basis, whose pivot columns form an
    /// identity block.
    pub(crate) fn contains_codes(&self, f: &FiniteField, basis: &[Vec<u32>], vectors: &[Vec<u32>]) -> bool {
        vectors.iter().all(|v| {
            let mut w = v.clone();
            for (row, &p) in basis.iter().zip(&self.pivots) {
                let c = w[p - 1];
                if c != 0 {
                    for (x, &y) in w.iter_mut().zip(row) {
                        if y != 0 {
                            *x = f.sub(*x, f.mul(c, y));
                        }
                    }
                }
            }
            w.iter().all(|&x| x == 0)
        })
    }

    /// Filling entries read row-major as a base-`q` integer, first entry
    /// most significant.
    pub fn filling_index(&self) -> usize {
        self.filling.iter().flatten().fold(0, |acc, &x| acc * self.q as usize + x as usize)
    }
}

impl fmt::Display for SubspaceCode {
    /// `p1,...,pr|f1 f2 ...`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let piv: Vec<String> = self.pivots.iter().map(|p| format!("{}", p)).collect();
        let fill: Vec<String> = self.filling.iter().flatten().map(|x| format!("{}", x)).collect();
        write!(f, "{}|{}", piv.join(","), fill.join(" "))
    }
}

/// Canonical form of the row span of `rows` (raw codes, `n` columns): the
/// nonzero rows of the echelon form whose pivots are last nonzero entries.
/// Returns the 1-based pivot columns and the normalized rows.
pub(crate) fn canonicalize(f: &FiniteField, n: usize, rows: &[Vec<u32>]) -> (Vec<usize>, Vec<Vec<u32>>) {
    let mut m: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().rev().copied().collect()).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(k) = (rank..m.len()).find(|&k| m[k][col] != 0) else {
            continue;
        };
        m.swap(rank, k);
        let inv = f.inv(m[rank][col]).expect("nonzero");
        for x in m[rank].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = m[rank].clone();
        for (k, row) in m.iter_mut().enumerate() {
            let c = row[col];
            if k != rank && c != 0 {
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    if y != 0 {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                }
            }
        }
        pivots.push(n - col);
        rank += 1;
    }
    m.truncate(rank);
    let mut out: Vec<Vec<u32>> = m.into_iter().map(|r| r.into_iter().rev().collect()).collect();
    out.reverse();
    pivots.reverse();
    (pivots, out)
}

pub(crate) fn code_from_rows(f: &FiniteField, n: usize, rows: &[Vec<u32>]) -> SubspaceCode {
    let (pivots, canon) = canonicalize(f, n, rows);
    let mut is_pivot = vec![false; n + 1];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let filling = pivots
        .iter()
        .zip(&canon)
        .map(|(&p, row)| (1..p).filter(|&c| !is_pivot[c]).map(|c| row[c - 1]).collect())
        .collect();
    SubspaceCode { n, q: f.order(), pivots, filling }
}

fn finite_of(field: &FieldCtx) -> Result<&FiniteField> {
    field.finite().ok_or_else(|| Error::InvalidField("subspaces need a finite field".into()))
}

/// Encodes the row span of `b` (a matrix over `F_q` with `n` columns),
/// which must have dimension `r`.
pub fn encode_subspace(b: &ExactMatrix, r: usize) -> Result<SubspaceCode> {
    let f = finite_of(b.field())?;
    let codes = b.codes().expect("finite field matrix");
    let rows: Vec<Vec<u32>> = if b.cols() == 0 {
        vec![Vec::new(); b.rows()]
    } else {
        codes.chunks(b.cols()).map(<[u32]>::to_vec).collect()
    };
    let code = code_from_rows(f, b.cols(), &rows);
    if code.r() != r {
        return Err(Error::DimensionMismatch(format!("span has dimension {}, expected {}", code.r(), r)));
    }
    Ok(code)
}

/// The canonical `r × n` basis matrix of `code` over `field` (`F_q`).
pub fn decode_subspace(code: &SubspaceCode, field: &FieldCtx) -> Result<ExactMatrix> {
    let f = finite_of(field)?;
    if f.order() != code.q {
        return Err(Error::FieldMismatch(format!("code over F_{} decoded in {}", code.q, field)));
    }
    let data = code.basis_codes().into_iter().flatten().collect();
    Ok(ExactMatrix::from_codes(code.r(), code.n, field, data))
}

/// The canonical enumeration of the `r`-subspaces of `F_q^n`: paths in
/// [`enumerate_paths`] order, fillings within a path by
/// [`SubspaceCode::filling_index`].
#[derive(Clone, Debug)]
pub struct Grassmannian {
    n: usize,
    r: usize,
    field: FieldCtx,
    offsets: Vec<usize>,
}

impl Grassmannian {
    pub fn new(n: usize, r: usize, q: u64) -> Result<Self> {
        Self::over(n, r, &q_field(q)?)
    }

    /// Enumeration over an explicit `F_q` context.
    pub fn over(n: usize, r: usize, field: &FieldCtx) -> Result<Self> {
        let f = finite_of(field)?;
        if r > n || n > MAX_N {
            return Err(Error::OutOfRange(format!("need r <= n <= {}, got n={} r={}", MAX_N, n, r)));
        }
        let q = f.order() as usize;
        let mut offsets = Vec::with_capacity(binom(n, r) + 1);
        let mut acc: usize = 0;
        offsets.push(0);
        for path in enumerate_paths(n, r) {
            let c = (q as u128).pow(path.box_count() as u32);
            acc = usize::try_from(acc as u128 + c)
                .map_err(|_| Error::OutOfRange(format!("too many {}-subspaces of F_{}^{}", r, q, n)))?;
            offsets.push(acc);
        }
        Ok(Grassmannian { n, r, field: field.clone(), offsets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn q(&self) -> u32 {
        self.finite().order()
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub(crate) fn finite(&self) -> &FiniteField {
        self.field.finite().expect("finite")
    }

    /// `[n r]_q`.
    pub fn len(&self) -> usize {
        *self.offsets.last().expect("nonempty")
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Index range occupied by the subspaces with the given path.
    pub fn path_block(&self, path: &LatticePath) -> core::ops::Range<usize> {
        let k = path.index();
        self.offsets[k]..self.offsets[k + 1]
    }

    pub fn index(&self, code: &SubspaceCode) -> usize {
        debug_assert_eq!((code.n, code.r(), code.q), (self.n, self.r, self.q()));
        self.offsets[subset_rank(self.n, &code.pivots)] + code.filling_index()
    }

    pub fn code(&self, idx: usize) -> SubspaceCode {
        assert!(idx < self.len(), "subspace index {} out of range", idx);
        let k = self.offsets.partition_point(|&o| o <= idx) - 1;
        let pivots = subset_unrank(self.n, self.r, k);
        let q = self.q();
        let total: usize = pivots.iter().enumerate().map(|(i, &p)| p - 1 - i).sum();
        let mut rest = idx - self.offsets[k];
        let mut flat = vec![0u32; total];
        for x in flat.iter_mut().rev() {
            *x = (rest % q as usize) as u32;
            rest /= q as usize;
        }
        let mut filling = Vec::with_capacity(self.r);
        let mut at = 0;
        for (i, &p) in pivots.iter().enumerate() {
            let len = p - 1 - i;
            filling.push(flat[at..at + len].to_vec());
            at += len;
        }
        SubspaceCode { n: self.n, q, pivots, filling }
    }

    pub fn iter(&self) -> impl Iterator<Item = SubspaceCode> + '_ {
        (0..self.len()).map(move |i| self.code(i))
    }

    /// Index of the span of `rows` (raw codes), which must have dimension `r`.
    pub fn index_of_rows(&self, rows: &[Vec<u32>]) -> Result<usize> {
        let code = code_from_rows(self.finite(), self.n, rows);
        if code.r() != self.r {
            return Err(Error::DimensionMismatch(format!("span has dimension {}, expected {}", code.r(), self.r)));
        }
        Ok(self.index(&code))
    }
}

/// A family of `r`-subspaces as sorted indices into the canonical
/// enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QFamily {
    n: usize,
    r: usize,
    q: u64,
    members: Vec<usize>,
}

impl QFamily {
    pub fn new(n: usize, r: usize, q: u64, mut members: Vec<usize>) -> Result<Self> {
        let total = Grassmannian::new(n, r, q)?.len();
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::OutOfRange("repeated family member".into()));
        }
        if let Some(&m) = members.last() {
            if m >= total {
                return Err(Error::OutOfRange(format!("index {} >= {}", m, total)));
            }
        }
        Ok(QFamily { n, r, q, members })
    }

    pub fn empty(n: usize, r: usize, q: u64) -> Self {
        QFamily { n, r, q, members: Vec::new() }
    }

    pub fn from_codes(n: usize, r: usize, q: u64, codes: &[SubspaceCode]) -> Result<Self> {
        let g = Grassmannian::new(n, r, q)?;
        for c in codes {
            if (c.n, c.r(), c.q as u64) != (n, r, q) {
                return Err(Error::DimensionMismatch(format!("code {} is not an {}-subspace of F_{}^{}", c, r, q, n)));
            }
        }
        Self::new(n, r, q, codes.iter().map(|c| g.index(c)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn codes(&self) -> Vec<SubspaceCode> {
        let g = Grassmannian::new(self.n, self.r, self.q).expect("validated");
        self.members.iter().map(|&i| g.code(i)).collect()
    }

    pub fn complement(&self) -> QFamily {
        let total = Grassmannian::new(self.n, self.r, self.q).expect("validated").len();
        let mut out = Vec::with_capacity(total - self.members.len());
        let mut it = self.members.iter().peekable();
        for i in 0..total {
            if it.peek() == Some(&&i) {
                it.next();
            } else {
                out.push(i);
            }
        }
        QFamily { n: self.n, r: self.r, q: self.q, members: out }
    }
}
