use alloc::format;

use num_traits::ToPrimitive;

use super::{build_wq, find_g, fy_rank, require_coprime};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::linalg::{rank, ExactMatrix};
use crate::qlat::QFamily;
use crate::report::{Certificate, Mode, RankSource, ResilienceReport};

/// The full `W_{r,s}(q)` and its reference rank, reusable across many
/// removed families.
#[derive(Clone, Debug)]
pub struct QResilience {
    n: usize,
    r: usize,
    s: usize,
    q: u64,
    field: FieldCtx,
    full: ExactMatrix,
    reference: u64,
    source: RankSource,
}

impl QResilience {
    pub fn new(n: usize, r: usize, s: usize, q: u64, field: &FieldCtx) -> Result<Self> {
        require_coprime(field, q)?;
        if s >= r || 2 * r > n {
            return Err(Error::OutOfRange(format!("need s < r <= n/2, got n={} r={} s={}", n, r, s)));
        }
        let full = build_wq(n, r, s, q, field, None)?;
        let (reference, source) = if n >= r + s {
            let v = fy_rank(n, r, s, q, field.characteristic())?;
            (v.to_u64().ok_or_else(|| Error::OutOfRange("rank too large".into()))?, RankSource::Formula)
        } else {
            (rank(&full) as u64, RankSource::Elimination)
        };
        Ok(QResilience { n, r, s, q, field: field.clone(), full, reference, source })
    }

    pub fn full_matrix(&self) -> &ExactMatrix {
        &self.full
    }

    pub fn reference_rank(&self) -> u64 {
        self.reference
    }

    /// Rank of `W^F_{r,s}(q)` with `F` the complement of `removed`.
    pub fn check(&self, removed: &QFamily) -> Result<ResilienceReport> {
        let (n, r, s, q) = (self.n, self.r, self.s, self.q);
        if (removed.n(), removed.r(), removed.q()) != (n, r, q) {
            return Err(Error::OutOfRange(format!(
                "removed family lives in the {}-subspaces of F_{}^{}",
                removed.r(),
                removed.q(),
                removed.n()
            )));
        }
        let kept = removed.complement();
        let computed = rank(&self.full.select_rows(kept.members())?) as u64;
        let certificate = find_g(removed)?.map(Certificate::Gl);
        Ok(ResilienceReport {
            mode: Mode::Q,
            n,
            r,
            s,
            q: Some(q),
            field: self.field.name(),
            removed_count: removed.len(),
            computed_rank: computed,
            formula_rank: self.reference,
            rank_source: self.source,
            equal: computed == self.reference,
            in_hypothesis: removed.len() * r <= n - r,
            certificate,
            elapsed: core::time::Duration::ZERO,
        })
    }
}

/// Rank of `W^F_{r,s}(q)` with `F` the complement of `removed`, compared
/// with the rank of the full `W_{r,s}(q)`.
pub fn verify_q_resilience(
    n: usize,
    r: usize,
    s: usize,
    q: u64,
    removed: &QFamily,
    field: &FieldCtx,
) -> Result<ResilienceReport> {
    QResilience::new(n, r, s, q, field)?.check(removed)
}
