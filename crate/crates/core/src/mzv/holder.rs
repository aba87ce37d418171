//! ζ at admissible indices by splitting the iterated integral at 1/2.
//!
//! With `a_1 … a_n` the integrand word read from 0 to 1 (`ω₁ω₀^{k_1-1} … ω₁ω₀^{k_r-1}`),
//!
//! ```text
//! ζ(k) = Σ_{j=0}^{n} L(a_1…a_j) · L(rev-swap(a_{j+1}…a_n))
//! ```
//!
//! where `L(w)` is the iterated integral of `w` over `[0, 1/2]`. Every prefix
//! of `a` is the word of `(k_1,…,k_{i-1},c+1)`, and every prefix of
//! `rev-swap(a)` is a prefix of the word of the dual index, so two passes of
//! one nested-sum recursion produce all factors:
//!
//! ```text
//! Li_{k_1,…,k_i}(x) = Σ_n xⁿ n^{-k_i} S_{i-1}(n-1),   S_i(n) = Σ_{m_1<…<m_i≤n} Π m_a^{-k_a}
//! ```
//!
//! The sums are carried in unsigned fixed point. Every quantity is positive,
//! so truncating divisions only ever round down and the rounding error can be
//! tracked as a count of units in the last place alongside the values.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::{EvalConfig, EvalError};
use crate::index::Index;

/// A ζ value with its audited error budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaEvaluation {
    pub value: f64,
    /// Majorant of the series truncation error.
    pub truncation_bound: f64,
    /// Majorant of fixed-point plus final `f64` rounding error.
    pub rounding_bound: f64,
    /// Series length used for every factor.
    pub terms: usize,
    pub precision_bits: u32,
}

impl ZetaEvaluation {
    pub fn error_bound(&self) -> f64 {
        self.truncation_bound + self.rounding_bound
    }
}

/// Prefix values `L(a_1…a_j)`, `j = 0..=weight`, in fixed point with `bits`
/// fractional bits, and their rounding error in ulps.
struct PrefixTable {
    values: Vec<BigUint>,
    err_ulps: Vec<f64>,
}

fn li_prefixes_at_half(k: &Index, terms: usize, bits: u32) -> PrefixTable {
    let entries = k.entries();
    let depth = entries.len();
    let weight = k.weight() as usize;
    let one = BigUint::from(1u8) << bits;

    // starts[i]: prefix length before block i (0-based block).
    let mut starts = Vec::with_capacity(depth);
    let mut acc = 0usize;
    for &e in entries {
        starts.push(acc);
        acc += e as usize;
    }

    let mut partial = vec![BigUint::zero(); depth + 1];
    let mut partial_err = vec![0.0f64; depth + 1];
    partial[0] = one.clone();

    let mut values = vec![BigUint::zero(); weight + 1];
    let mut err_ulps = vec![0.0f64; weight + 1];
    values[0] = one;

    for n in 1..=terms {
        let n32 = n as u32;
        let half_pow = 0.5f64.powi(n as i32);
        // Descending so that partial[i - 1] still holds S_{i-1}(n-1).
        for i in (1..=depth).rev() {
            if partial[i - 1].is_zero() {
                continue;
            }
            let mut t = partial[i - 1].clone();
            let mut t_err = partial_err[i - 1];
            let block = entries[i - 1] as usize;
            for c in 0..block {
                t /= n32;
                t_err = t_err / n as f64 + 1.0;
                let slot = starts[i - 1] + c + 1;
                values[slot] += &t >> n;
                err_ulps[slot] += t_err * half_pow + 1.0;
            }
            partial[i] += t;
            partial_err[i] += t_err;
        }
    }
    PrefixTable { values, err_ulps }
}

/// Majorant of `Σ_{n>N} 2^{-n} n^{-(c+1)} S_{i-1}(n-1)` using
/// `S_j(n) ≤ H_n^j / j! ≤ (1 + ln n)^j / j!`. Returns `None` when the
/// geometric ratio bound is not yet below one.
fn tail_bound(depth_in_block: usize, last_exponent: u32, n_terms: usize) -> Option<f64> {
    let j = depth_in_block as i32 - 1;
    let n1 = (n_terms + 1) as f64;
    let log_factor = |x: f64| 1.0 + x.ln();
    let ratio = 0.5 * (log_factor(n1 + 1.0) / log_factor(n1)).powi(j);
    if ratio >= 1.0 {
        return None;
    }
    let factorial: f64 = (1..=j.max(0)).map(f64::from).product();
    let first = 0.5f64.powf(n1) * n1.powi(-(last_exponent as i32)) * log_factor(n1).powi(j) / factorial;
    Some(first / (1.0 - ratio))
}

/// Smallest series length whose tail is within `budget` for every prefix of `k`'s word.
fn terms_needed(k: &Index, budget: f64, max_terms: usize) -> Option<usize> {
    // For a fixed block the worst prefix is the one with c = 0.
    (1..=max_terms).find(|&n| (1..=k.depth()).all(|i| matches!(tail_bound(i, 1, n), Some(b) if b <= budget)))
}

fn fixed_to_f64(x: &BigUint, bits: u32) -> f64 {
    // Keep 64 significant bits before converting so huge precisions do not overflow.
    let len = x.bits();
    if len > 64 {
        let shift = len - 64;
        let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
        top * 2f64.powi(shift as i32 - bits as i32)
    } else {
        x.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(-(bits as i32))
    }
}

/// Evaluates ζ(k) to within `cfg.bucket_tol()` (which is at most `cfg.tol`).
pub fn eval_zeta_detailed(k: &Index, cfg: &EvalConfig) -> Result<ZetaEvaluation, EvalError> {
    cfg.validate()?;
    k.ensure_admissible()?;
    let tol = cfg.bucket_tol();
    let bits = cfg.precision_bits();
    let dual = k.dual()?;
    let weight = k.weight() as usize;

    // Half the budget for truncation, split uniformly over the weight+1
    // deconcatenations; each product a·b with a, b ≤ 1 takes ≤ 2.01 factor budgets.
    let factor_budget = tol / (5.0 * (weight + 1) as f64);
    let need = |idx: &Index| {
        terms_needed(idx, factor_budget, cfg.max_terms).ok_or_else(|| EvalError::PrecisionFailure {
            index: k.clone(),
            reason: format!(
                "series for a factor of {idx} does not reach {factor_budget:.3e} within {} terms",
                cfg.max_terms
            ),
        })
    };
    let terms = need(k)?.max(need(&dual)?);

    let left = li_prefixes_at_half(k, terms, bits);
    let right = li_prefixes_at_half(&dual, terms, bits);

    let mut sum = BigUint::zero();
    let mut err_ulps = 0.0f64;
    for j in 0..=weight {
        let prod = &left.values[j] * &right.values[weight - j];
        sum += prod >> bits;
        err_ulps += left.err_ulps[j] + right.err_ulps[weight - j] + 1.0;
    }

    let value = fixed_to_f64(&sum, bits);
    // Conversion: 64-bit truncation plus one f64 rounding.
    let conversion = value * 2f64.powi(-51);
    let rounding_bound = err_ulps * 1.0001 * 2f64.powi(-(bits as i32)) + conversion;
    if rounding_bound > tol / 10.0 {
        return Err(EvalError::PrecisionFailure {
            index: k.clone(),
            reason: format!("rounding bound {rounding_bound:.3e} exceeds tol/10 at {bits} bits of working precision"),
        });
    }
    let truncation_bound = (weight + 1) as f64 * (2.0 * factor_budget + factor_budget * factor_budget);
    Ok(ZetaEvaluation {
        value,
        truncation_bound,
        rounding_bound,
        terms,
        precision_bits: bits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idx;
    use std::f64::consts::{LN_2, PI};

    fn cfg(tol: f64) -> EvalConfig {
        EvalConfig::new(tol).unwrap()
    }

    #[test]
    fn prefix_values_match_closed_forms() {
        // Li_1(1/2) = ln 2, Li_2(1/2) = π²/12 − ln²2/2
        let t = li_prefixes_at_half(&idx![2], 80, 100);
        let li1 = fixed_to_f64(&t.values[1], 100);
        let li2 = fixed_to_f64(&t.values[2], 100);
        assert!((li1 - LN_2).abs() < 1e-15);
        assert!((li2 - (PI * PI / 12.0 - LN_2 * LN_2 / 2.0)).abs() < 1e-15);
        // Li_{1,1}(1/2) = ln²2 / 2
        let t = li_prefixes_at_half(&idx![1, 1], 80, 100);
        assert!((fixed_to_f64(&t.values[2], 100) - LN_2 * LN_2 / 2.0).abs() < 1e-15);
    }

    #[test]
    fn zeta_two() {
        let z = eval_zeta_detailed(&idx![2], &cfg(1e-12)).unwrap();
        assert!((z.value - PI * PI / 6.0).abs() < 1e-12);
        assert!(z.error_bound() <= 1e-12);
    }

    #[test]
    fn tail_bound_is_a_majorant() {
        // Compare against a long explicit sum of the same majorant terms.
        for depth in 1..=6usize {
            for n in [10usize, 40, 100] {
                if let Some(b) = tail_bound(depth, 1, n) {
                    let j = depth as i32 - 1;
                    let fact: f64 = (1..=j.max(0)).map(f64::from).product();
                    let explicit: f64 = ((n + 1)..(n + 400))
                        .map(|m| {
                            let m = m as f64;
                            0.5f64.powf(m) / m * (1.0 + m.ln()).powi(j) / fact
                        })
                        .sum();
                    assert!(b >= explicit, "depth {depth}, n {n}: {b} < {explicit}");
                }
            }
        }
    }

    #[test]
    fn too_few_terms_is_an_explicit_failure() {
        let c = cfg(1e-12).with_max_terms(5);
        assert!(matches!(
            eval_zeta_detailed(&idx![2], &c),
            Err(EvalError::PrecisionFailure { .. })
        ));
    }

    #[test]
    fn too_little_precision_is_an_explicit_failure() {
        let c = cfg(1e-12).with_working_precision(30);
        assert!(matches!(
            eval_zeta_detailed(&idx![1, 2], &c),
            Err(EvalError::PrecisionFailure { .. })
        ));
    }
}
