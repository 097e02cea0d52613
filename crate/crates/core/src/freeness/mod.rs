//! Freeness of biquotient torus actions.

mod brute;
mod closed_form;
mod exact;
pub mod lattice;
pub mod snf;
mod weights;

pub use brute::{is_free_bruteforce, multisets_match, witness_residual, EIGEN_TOL};
pub use closed_form::{bazaikin_free, eschenburg_free, eschenburg_positive_flag};
pub use exact::{
    allowed_point, check_sigma, is_free_exact, permutations, strict_sigma_ok_i64, symmetry_group, FreenessVerdict,
    SignedPerm, Witness,
};
pub use lattice::{lattice_equivalent, two_sided};
pub use weights::{torus_rows, FreenessMode, TorusActionWeights, WeightsFile};

use crate::error::{BiqError, Result};

/// A named freeness decision procedure.
pub trait FreenessStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn check(&self, w: &TorusActionWeights, mode: FreenessMode) -> Result<FreenessVerdict>;
}

pub struct ExactStrategy;

impl FreenessStrategy for ExactStrategy {
    fn name(&self) -> &'static str {
        "exact"
    }
    fn check(&self, w: &TorusActionWeights, mode: FreenessMode) -> Result<FreenessVerdict> {
        is_free_exact(w, mode)
    }
}

pub struct BruteForceStrategy {
    pub max_order: usize,
}

impl FreenessStrategy for BruteForceStrategy {
    fn name(&self) -> &'static str {
        "bruteforce"
    }
    fn check(&self, w: &TorusActionWeights, mode: FreenessMode) -> Result<FreenessVerdict> {
        w.validate()?;
        Ok(is_free_bruteforce(w, self.max_order, mode))
    }
}

pub fn strategies(max_order: usize) -> Vec<Box<dyn FreenessStrategy>> {
    vec![Box::new(ExactStrategy), Box::new(BruteForceStrategy { max_order })]
}

pub fn strategy(name: &str, max_order: usize) -> Result<Box<dyn FreenessStrategy>> {
    strategies(max_order)
        .into_iter()
        .find(|s| s.name() == name)
        .ok_or_else(|| BiqError::InvalidInput(format!("unknown freeness strategy '{name}'")))
}
