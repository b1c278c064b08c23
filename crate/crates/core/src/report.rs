use alloc::string::String;
use core::time::Duration;

use crate::qrank::GLCert;
use crate::sets::PermCert;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Set,
    Q,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Set => "set",
            Mode::Q => "q",
        }
    }
}

/// Where the reference rank came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankSource {
    /// The closed rank formula (Wilson or its q-analogue).
    Formula,
    /// Elimination on the full matrix, used when `n < r + s`.
    Elimination,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    Perm(PermCert),
    Gl(GLCert),
}

/// Outcome of one resilience check.
#[derive(Clone, Debug, PartialEq)]
pub struct ResilienceReport {
    pub mode: Mode,
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub q: Option<u64>,
    pub field: String,
    pub removed_count: usize,
    pub computed_rank: u64,
    pub formula_rank: u64,
    pub rank_source: RankSource,
    /// `computed_rank == formula_rank`
    pub equal: bool,
    /// Whether the removed family satisfies the size bound under which
    /// equality is guaranteed.
    pub in_hypothesis: bool,
    pub certificate: Option<Certificate>,
    /// Filled in by callers that time the check; zero otherwise.
    pub elapsed: Duration,
}

impl ResilienceReport {
    /// Equality failed although the size bound held.
    pub fn is_counterexample(&self) -> bool {
        self.in_hypothesis && !self.equal
    }
}
