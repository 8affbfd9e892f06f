//! Settings threaded through long-running computations.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrecisionBudget;

/// Seed used when none is supplied.
pub const DEFAULT_SEED: u64 = 20240601;

/// Cooperative cancellation flag shared between a driver and the solvers.
#[derive(Debug, Clone, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }

    pub fn check(&self) -> Result<()> {
        if self.is_cancelled() {
            Err(Error::Cancelled)
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveContext {
    pub seed: u64,
    /// Degree bound for the Möbius ansatz; `None` selects the default per instance.
    pub degree_bound: Option<u32>,
    pub precision: PrecisionBudget,
    /// Number of seeded line pairs tried by parametric multiplicity.
    pub trials: usize,
    pub cancel: CancelToken,
}

impl Default for SolveContext {
    fn default() -> Self {
        SolveContext {
            seed: DEFAULT_SEED,
            degree_bound: None,
            precision: PrecisionBudget::default(),
            trials: 3,
            cancel: CancelToken::new(),
        }
    }
}

impl SolveContext {
    pub fn with_seed(seed: u64) -> Self {
        SolveContext { seed, ..Self::default() }
    }
}
