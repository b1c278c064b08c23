use alloc::format;
use alloc::vec::Vec;

use num_rational::BigRational;

use super::arith::{Arith, Fin, Rat};
use super::ExactMatrix;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Ffe};

/// Incrementally grown set of independent vectors kept in semi-reduced
/// echelon form: every stored row has a leading 1 at its pivot and zeros at
/// the pivots of the rows inserted before it.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: FieldCtx,
    dim: usize,
    pivots: Vec<usize>,
    rows: Rows,
}

#[derive(Clone, Debug)]
enum Rows {
    Fin(Vec<Vec<u32>>),
    Rat(Vec<Vec<BigRational>>),
}

fn reduce<A: Arith>(ar: &A, rows: &[Vec<A::E>], pivots: &[usize], v: &mut [A::E]) {
    for (row, &p) in rows.iter().zip(pivots) {
        let c = v[p].clone();
        if ar.is_zero(&c) {
            continue;
        }
        for (x, y) in v.iter_mut().zip(row) {
            if !ar.is_zero(y) {
                *x = ar.sub_mul(x, &c, y);
            }
        }
    }
}

fn push_reduced<A: Arith>(ar: &A, rows: &mut Vec<Vec<A::E>>, pivots: &mut Vec<usize>, mut v: Vec<A::E>) -> bool {
    reduce(ar, rows, pivots, &mut v);
    let Some(p) = v.iter().position(|x| !ar.is_zero(x)) else {
        return false;
    };
    let inv = ar.inv(&v[p]);
    for x in &mut v[p..] {
        *x = ar.mul(x, &inv);
    }
    rows.push(v);
    pivots.push(p);
    true
}

impl EchelonBasis {
    pub fn new(field: &FieldCtx, dim: usize) -> Self {
        let rows = if field.is_rational() { Rows::Rat(Vec::new()) } else { Rows::Fin(Vec::new()) };
        EchelonBasis { field: field.clone(), dim, pivots: Vec::new(), rows }
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.dim {
            return Err(Error::DimensionMismatch(format!("vector of length {} in ambient {}", len, self.dim)));
        }
        Ok(())
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Ffe]) -> Result<bool> {
        self.check_len(v.len())?;
        for x in v {
            self.field.check(x)?;
        }
        Ok(match &mut self.rows {
            Rows::Fin(rows) => {
                let f = self.field.finite().expect("finite");
                let codes = v.iter().map(|x| if let Ffe::Finite(c) = x { *c } else { 0 }).collect();
                push_reduced(&Fin(f), rows, &mut self.pivots, codes)
            }
            Rows::Rat(rows) => {
                let vals = v
                    .iter()
                    .map(|x| if let Ffe::Rational(r) = x { r.clone() } else { unreachable!() })
                    .collect();
                push_reduced(&Rat, rows, &mut self.pivots, vals)
            }
        })
    }

    pub fn contains(&self, v: &[Ffe]) -> Result<bool> {
        let mut probe = self.clone();
        Ok(!probe.insert(v)?)
    }

    /// The stored rows as a matrix (independent rows spanning the space).
    pub fn to_matrix(&self) -> ExactMatrix {
        let r = self.rank();
        match &self.rows {
            Rows::Fin(rows) => {
                ExactMatrix::from_codes(r, self.dim, &self.field, rows.iter().flatten().copied().collect())
            }
            Rows::Rat(rows) => {
                ExactMatrix::from_rationals(r, self.dim, &self.field, rows.iter().flatten().cloned().collect())
            }
        }
    }
}
