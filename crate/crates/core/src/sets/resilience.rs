use alloc::format;
use alloc::string::ToString;

use num_traits::ToPrimitive;

use super::{build_w, find_sigma, wilson_rank, SetFamily};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::linalg::{rank, ExactMatrix};
use crate::report::{Certificate, Mode, RankSource, ResilienceReport};

/// The full `W_{r,s}` and its reference rank, reusable across many
/// removed families.
#[derive(Clone, Debug)]
pub struct SetResilience {
    n: usize,
    r: usize,
    s: usize,
    field: FieldCtx,
    full: ExactMatrix,
    reference: u64,
    source: RankSource,
}

impl SetResilience {
    pub fn new(n: usize, r: usize, s: usize, field: &FieldCtx) -> Result<Self> {
        if s >= r || 2 * r > n {
            return Err(Error::OutOfRange(format!("need s < r <= n/2, got n={} r={} s={}", n, r, s)));
        }
        let full = build_w(n, r, s, field, None)?;
        let (reference, source) = if n >= r + s {
            let w = wilson_rank(n, r, s, field.characteristic())?;
            (w.to_u64().ok_or_else(|| Error::OutOfRange("rank too large".into()))?, RankSource::Formula)
        } else {
            (rank(&full) as u64, RankSource::Elimination)
        };
        Ok(SetResilience { n, r, s, field: field.clone(), full, reference, source })
    }

    pub fn full_matrix(&self) -> &ExactMatrix {
        &self.full
    }

    pub fn reference_rank(&self) -> u64 {
        self.reference
    }

    /// Rank of `W^F_{r,s}` with `F` the complement of `removed`.
    pub fn check(&self, removed: &SetFamily) -> Result<ResilienceReport> {
        let (n, r, s) = (self.n, self.r, self.s);
        if removed.n() != n || removed.r() != r {
            return Err(Error::OutOfRange(format!(
                "removed family lives in C([{}], {}), not C([{}], {})",
                removed.n(),
                removed.r(),
                n,
                r
            )));
        }
        let kept = removed.complement();
        let computed = rank(&self.full.select_rows(kept.members())?) as u64;
        let certificate = find_sigma(removed).map(Certificate::Perm);
        Ok(ResilienceReport {
            mode: Mode::Set,
            n,
            r,
            s,
            q: None,
            field: self.field.name().to_string(),
            removed_count: removed.len(),
            computed_rank: computed,
            formula_rank: self.reference,
            rank_source: self.source,
            equal: computed == self.reference,
            in_hypothesis: removed.len() * r < n,
            certificate,
            elapsed: core::time::Duration::ZERO,
        })
    }
}

/// Rank of `W^F_{r,s}` with `F` the complement of `removed`, compared with
/// the rank of the full `W_{r,s}`.
pub fn verify_set_resilience(
    n: usize,
    r: usize,
    s: usize,
    removed: &SetFamily,
    field: &FieldCtx,
) -> Result<ResilienceReport> {
    SetResilience::new(n, r, s, field)?.check(removed)
}
