use super::EvalError;

/// Numerical settings for ζ evaluation.
///
/// `working_precision` is the number of fractional bits of the fixed-point
/// arithmetic; `None` derives it from the tolerance bucket as
/// `2·⌈log₂(1/tol)⌉ + 16`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    pub tol: f64,
    pub max_terms: usize,
    pub working_precision: Option<u32>,
}

impl EvalConfig {
    pub const DEFAULT_TOL: f64 = 1e-12;
    pub const DEFAULT_MAX_TERMS: usize = 256;
    /// Below this the final rounding to `f64` no longer fits the rounding budget.
    pub const MIN_TOL: f64 = 1e-14;
    pub const MIN_PRECISION: u32 = 24;

    pub fn new(tol: f64) -> Result<Self, EvalError> {
        let cfg = Self {
            tol,
            max_terms: Self::DEFAULT_MAX_TERMS,
            working_precision: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn with_working_precision(mut self, bits: u32) -> Self {
        self.working_precision = Some(bits);
        self
    }

    /// Same settings with a different tolerance.
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn validate(&self) -> Result<(), EvalError> {
        if !(self.tol.is_finite() && self.tol > 0.0 && self.tol < 1.0) {
            return Err(EvalError::InvalidConfig(format!(
                "tolerance must lie in (0, 1), got {}",
                self.tol
            )));
        }
        if self.tol < Self::MIN_TOL {
            return Err(EvalError::ToleranceTooFine {
                requested: self.tol,
                minimum: Self::MIN_TOL,
            });
        }
        if self.max_terms == 0 {
            return Err(EvalError::InvalidConfig("max_terms must be positive".into()));
        }
        if let Some(bits) = self.working_precision {
            if bits < Self::MIN_PRECISION {
                return Err(EvalError::InvalidConfig(format!(
                    "working precision must be at least {} bits, got {bits}",
                    Self::MIN_PRECISION
                )));
            }
        }
        Ok(())
    }

    /// Decimal exponent `e` of the tolerance bucket: the largest `e` with `10^e ≤ tol`.
    pub fn tol_bucket(&self) -> i32 {
        let mut e = self.tol.log10().floor() as i32;
        while 10f64.powi(e) > self.tol {
            e -= 1;
        }
        while 10f64.powi(e + 1) <= self.tol {
            e += 1;
        }
        e
    }

    /// The tolerance actually targeted: `10^bucket ≤ tol`.
    pub fn bucket_tol(&self) -> f64 {
        10f64.powi(self.tol_bucket())
    }

    pub fn precision_bits(&self) -> u32 {
        self.working_precision
            .unwrap_or_else(|| default_precision(self.bucket_tol()))
    }

    /// True when the precision is the one derived from the tolerance bucket,
    /// i.e. the value is a function of `(index, bucket)` alone.
    pub fn is_canonical(&self) -> bool {
        self.working_precision.is_none() || self.working_precision == Some(default_precision(self.bucket_tol()))
    }
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self::new(Self::DEFAULT_TOL).expect("default tolerance is valid")
    }
}

pub(crate) fn default_precision(tol: f64) -> u32 {
    2 * (1.0 / tol).log2().ceil() as u32 + 16
}
