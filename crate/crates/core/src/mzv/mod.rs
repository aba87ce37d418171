//! Numerical multiple zeta values.
//!
//! [`eval_zeta`] uses the split-at-1/2 convolution in [`holder`] and is the
//! workhorse; [`eval_zeta_direct`] is the literal truncated sum, slow but
//! independent, used as an oracle. [`Evaluator`] adds optional memoization.

mod cache;
mod config;
mod direct;
mod holder;
mod word;

use std::sync::Arc;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use thiserror::Error;

use crate::index::{AlgebraError, Index, IndexCombination};

pub use cache::{format_hex_float, parse_hex_float, CacheError, ZetaCache};
pub use config::EvalConfig;
pub use direct::{eval_zeta_direct, DirectSum};
pub use holder::{eval_zeta_detailed, ZetaEvaluation};
pub use word::{from_word, to_word, Letter, Word};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("precision failure for {index}: {reason}")]
    PrecisionFailure { index: Index, reason: String },
    #[error("invalid evaluation config: {0}")]
    InvalidConfig(String),
    #[error("tolerance {requested:e} is finer than the supported minimum {minimum:e}")]
    ToleranceTooFine { requested: f64, minimum: f64 },
    #[error("truncation N = {n} is smaller than the depth {depth}")]
    DirectTooShort { n: usize, depth: usize },
}

pub fn eval_zeta(k: &Index, cfg: &EvalConfig) -> Result<f64, EvalError> {
    Evaluator::new().zeta(k, cfg)
}

pub fn eval_combination(c: &IndexCombination, cfg: &EvalConfig) -> Result<f64, EvalError> {
    Evaluator::new().combination(c, cfg)
}

/// ζ evaluation with an optional shared cache.
#[derive(Debug, Clone, Default)]
pub struct Evaluator {
    cache: Option<Arc<ZetaCache>>,
}

impl Evaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cache(cache: Arc<ZetaCache>) -> Self {
        Self { cache: Some(cache) }
    }

    pub fn cache(&self) -> Option<&Arc<ZetaCache>> {
        self.cache.as_ref()
    }

    pub fn zeta(&self, k: &Index, cfg: &EvalConfig) -> Result<f64, EvalError> {
        cfg.validate()?;
        k.ensure_admissible()?;
        match &self.cache {
            Some(cache) if cfg.is_canonical() => {
                let bucket = cfg.tol_bucket();
                if let Some(v) = cache.get(k, bucket) {
                    return Ok(v);
                }
                let v = eval_zeta_detailed(k, cfg)?.value;
                cache.insert(k.clone(), bucket, v);
                Ok(v)
            }
            _ => Ok(eval_zeta_detailed(k, cfg)?.value),
        }
    }

    /// `Σ c_i ζ(k_i)` within `cfg.tol`.
    ///
    /// Each ζ gets the tolerance `tol / (2 Σ|c_i|)`; the other half of the
    /// budget covers the floating-point accumulation. Distinct indices are
    /// evaluated in parallel and summed in canonical order.
    pub fn combination(&self, c: &IndexCombination, cfg: &EvalConfig) -> Result<f64, EvalError> {
        cfg.validate()?;
        if c.is_zero() {
            return Ok(0.0);
        }
        c.ensure_admissible()?;
        let term_cfg = cfg.with_tol(0.5 * cfg.tol / c.abs_coefficient_sum());
        term_cfg.validate()?;
        let terms: Vec<(&Index, f64)> = c
            .iter()
            .map(|(k, coef)| (k, coef.to_f64().unwrap_or(f64::NAN)))
            .collect();
        let values = terms
            .par_iter()
            .map(|(k, _)| self.zeta(k, &term_cfg))
            .collect::<Result<Vec<f64>, _>>()?;
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for ((_, coef), v) in terms.iter().zip(values) {
            let x = coef * v;
            let t = sum + x;
            comp += if sum.abs() >= x.abs() {
                (sum - t) + x
            } else {
                (x - t) + sum
            };
            sum = t;
        }
        Ok(sum + comp)
    }
}
