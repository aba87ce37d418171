//! Ohno sums and every quantity built from them.
//!
//! All quantities are first built as exact [`IndexCombination`]s and only then
//! evaluated, so exact comparisons and numerical checks share one expansion.

mod additional;
mod lemmas;
mod proof;

use thiserror::Error;

use crate::index::{enumerate_shifts, hast, sha, sha_all, AlgebraError, Index, IndexCombination};
use crate::mzv::{EvalConfig, EvalError, Evaluator};

pub use additional::{
    g1_lhs, g1_rhs, g2_lhs, g2_rhs, g3_lhs, g3_rhs, g_pq, h_pq, i_pq, j_pq, sum_over_pq, ProofQuantityParams,
};
pub use lemmas::{
    fm_difference, fmpre1_difference, fmpre2_difference, hast_dual_expansion, hast_symmetric_form, k_plus_one,
    oooo_difference, oooo_regrouped, sha_dual_expansion,
};
pub use proof::{
    a_composition_form, a_definition, b_by_positions, b_grouped, bc_composition_form, bc_grouped, c_definition,
    quantity_a, quantity_b, quantity_c,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> EngineError {
    EngineError::InvalidParams(msg.into())
}

/// `Σ_{|e|=m} k ⊕ e` over the support of `c`, without admissibility checks.
pub fn shift_sum(c: &IndexCombination, m: u32) -> Result<IndexCombination, AlgebraError> {
    let mut out = IndexCombination::zero();
    for (k, coef) in c {
        for e in enumerate_shifts(k.depth(), m)? {
            out.add_term(k.oplus(&e)?, coef.clone());
        }
    }
    Ok(out)
}

/// Symbolic `𝒪_m(C)`: the formal sum of all weight-`m` shifts, before ζ.
pub fn ohno_m_symbolic(c: &IndexCombination, m: u32) -> Result<IndexCombination, AlgebraError> {
    c.ensure_admissible()?;
    shift_sum(c, m)
}

pub fn ohno_m(ev: &Evaluator, c: &IndexCombination, m: u32, cfg: &EvalConfig) -> Result<f64, EngineError> {
    Ok(ev.combination(&ohno_m_symbolic(c, m)?, cfg)?)
}

/// `Σ_{m_1+m_2=m} Σ_{|e|=m_2} (base+m_1) hast (K ⊕ e)`.
pub fn hast_shift_sum(base: u32, k: &IndexCombination, m: u32) -> Result<IndexCombination, AlgebraError> {
    let mut out = IndexCombination::zero();
    for m1 in 0..=m {
        out += hast(base + m1, &shift_sum(k, m - m1)?)?;
    }
    Ok(out)
}

/// A formal sum `Σ 𝒪_{order}(combination)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct OhnoTerms {
    pub terms: Vec<(u32, IndexCombination)>,
}

impl OhnoTerms {
    pub fn push(&mut self, order: u32, c: IndexCombination) {
        self.terms.push((order, c));
    }

    pub fn expand(&self) -> Result<IndexCombination, AlgebraError> {
        let mut out = IndexCombination::zero();
        for (order, c) in &self.terms {
            out += ohno_m_symbolic(c, *order)?;
        }
        Ok(out)
    }
}

/// Coefficients `𝒪_0, …, 𝒪_M` of a generating series, each within `tol`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    pub coefficients: Vec<f64>,
    pub tol: f64,
}

impl TruncatedSeries {
    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficient(&self, m: usize) -> Option<f64> {
        self.coefficients.get(m).copied()
    }

    /// Coefficientwise difference; tolerances add.
    pub fn difference(&self, other: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries {
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a - b)
                .collect(),
            tol: self.tol + other.tol,
        }
    }
}

pub fn ohno_series(
    ev: &Evaluator,
    c: &IndexCombination,
    max_order: u32,
    cfg: &EvalConfig,
) -> Result<TruncatedSeries, EngineError> {
    let coefficients = (0..=max_order)
        .map(|m| ohno_m(ev, c, m, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TruncatedSeries {
        coefficients,
        tol: cfg.tol,
    })
}

fn single(entries: &[u32]) -> Result<IndexCombination, AlgebraError> {
    Ok(IndexCombination::from_index(Index::new(entries.to_vec())?))
}

pub(crate) fn twos(l: u32) -> IndexCombination {
    IndexCombination::from_index(Index::repeat(2, l as usize))
}

/// `(s) ♯ k ♯ {2}^l` and `(s) ♯ (k ♯ {2}^l)†`, the two arguments of `F_{m,l}`.
pub fn f_arguments(s: u32, k: &Index, l: u32) -> Result<(IndexCombination, IndexCombination), EngineError> {
    if s < 2 {
        return Err(invalid(format!("F needs s ≥ 2, got s = {s}")));
    }
    k.ensure_admissible()?;
    let head = single(&[s])?;
    let k = IndexCombination::from_index(k.clone());
    let plain = sha_all([&head, &k, &twos(l)]);
    let dualized = sha(&head, &sha(&k, &twos(l)).dual_linear()?);
    Ok((plain, dualized))
}

/// Symbolic `F_{m,l}(s; k) = 𝒪_m((s)♯k♯{2}^l) − 𝒪_m((s)♯(k♯{2}^l)†)`.
pub fn f_combination(s: u32, k: &Index, l: u32, m: u32) -> Result<IndexCombination, EngineError> {
    let (plain, dualized) = f_arguments(s, k, l)?;
    Ok(ohno_m_symbolic(&plain, m)? - ohno_m_symbolic(&dualized, m)?)
}

pub fn f_ml(ev: &Evaluator, s: u32, k: &Index, l: u32, m: u32, cfg: &EvalConfig) -> Result<f64, EngineError> {
    Ok(ev.combination(&f_combination(s, k, l, m)?, cfg)?)
}

/// Coefficients of `F(s; k)` (the `l = 0` case) up to `X^M`.
pub fn f_series(
    ev: &Evaluator,
    s: u32,
    k: &Index,
    max_order: u32,
    cfg: &EvalConfig,
) -> Result<TruncatedSeries, EngineError> {
    let (plain, dualized) = f_arguments(s, k, 0)?;
    Ok(ohno_series(ev, &plain, max_order, cfg)?.difference(&ohno_series(ev, &dualized, max_order, cfg)?))
}

/// Symbolic `D_{m,l}(s,t) = F_{m,l}(s;(t+1)) − F_{m,l}(t;(s+1))`.
pub fn d_combination(s: u32, t: u32, l: u32, m: u32) -> Result<IndexCombination, EngineError> {
    if s < 2 || t < 2 {
        return Err(invalid(format!("D needs s, t ≥ 2, got s = {s}, t = {t}")));
    }
    Ok(f_combination(s, &Index::new(vec![t + 1])?, l, m)? - f_combination(t, &Index::new(vec![s + 1])?, l, m)?)
}

pub fn d_ml(ev: &Evaluator, s: u32, t: u32, l: u32, m: u32, cfg: &EvalConfig) -> Result<f64, EngineError> {
    Ok(ev.combination(&d_combination(s, t, l, m)?, cfg)?)
}

/// Hoffman's relation as a single combination, left side minus right side:
/// `Σ_i (…, k_i+1, …) − Σ_{k_i≥2} Σ_{j=0}^{k_i-2} (…, j+1, k_i−j, …)`.
pub fn hoffman_combination(k: &Index) -> Result<IndexCombination, EngineError> {
    k.ensure_admissible()?;
    let entries = k.entries();
    let mut out = IndexCombination::zero();
    for i in 0..entries.len() {
        out.add_integer_term(k.bumped(i, 1), 1);
        let ki = entries[i];
        for j in 0..ki.saturating_sub(1) {
            let mut split = Vec::with_capacity(entries.len() + 1);
            split.extend_from_slice(&entries[..i]);
            split.push(j + 1);
            split.push(ki - j);
            split.extend_from_slice(&entries[i + 1..]);
            out.add_integer_term(Index::new(split)?, -1);
        }
    }
    Ok(out)
}

pub fn hoffman_lhs_minus_rhs(ev: &Evaluator, k: &Index, cfg: &EvalConfig) -> Result<f64, EngineError> {
    Ok(ev.combination(&hoffman_combination(k)?, cfg)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idx;
    use crate::index::Coefficient;
    use std::f64::consts::PI;

    fn one(k: Index) -> IndexCombination {
        IndexCombination::from_index(k)
    }

    fn comb(terms: &[(Index, i64)]) -> IndexCombination {
        let mut c = IndexCombination::zero();
        for (k, n) in terms {
            c.add_integer_term(k.clone(), *n);
        }
        c
    }

    fn cfg() -> EvalConfig {
        EvalConfig::new(1e-12).unwrap()
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
    }

    #[test]
    fn symbolic_ohno_examples() {
        assert_eq!(ohno_m_symbolic(&one(idx![2]), 1).unwrap(), one(idx![3]));
        assert_eq!(
            ohno_m_symbolic(&one(idx![1, 2]), 1).unwrap(),
            comb(&[(idx![2, 2], 1), (idx![1, 3], 1)])
        );
        let c = comb(&[(idx![1, 2], 3), (idx![4], -1)]);
        assert_eq!(ohno_m_symbolic(&c, 0).unwrap(), c);
        assert!(ohno_m_symbolic(&one(idx![2, 1]), 1).is_err());
        assert!(ohno_m_symbolic(&one(Index::empty()), 0).is_err());
    }

    #[test]
    fn symbolic_ohno_term_count() {
        for k in crate::index::admissible_up_to(6) {
            for m in 0..4u32 {
                let total = ohno_m_symbolic(&one(k.clone()), m).unwrap().coefficient_sum();
                let want = binomial((m as usize + k.depth() - 1) as u64, (k.depth() - 1) as u64);
                assert_eq!(total, Coefficient::from_integer(want.into()), "{k}, m = {m}");
            }
        }
    }

    #[test]
    fn numeric_ohno_examples() {
        let ev = Evaluator::new();
        let z4 = PI.powi(4) / 90.0;
        assert!((ohno_m(&ev, &one(idx![3]), 1, &cfg()).unwrap() - z4).abs() < 1e-12);
        assert!((ohno_m(&ev, &one(idx![1, 2]), 1, &cfg()).unwrap() - z4).abs() < 2e-12);
        assert!((ohno_m(&ev, &one(idx![2]), 0, &cfg()).unwrap() - PI * PI / 6.0).abs() < 1e-12);
    }

    #[test]
    fn series_examples() {
        let ev = Evaluator::new();
        let s = ohno_series(&ev, &one(idx![2]), 0, &cfg()).unwrap();
        assert_eq!(s.coefficients.len(), 1);
        assert!((s.coefficients[0] - PI * PI / 6.0).abs() < 1e-12);

        let s = ohno_series(&ev, &one(idx![3]), 2, &cfg()).unwrap();
        let want = [1.202_056_903_159_594_2, PI.powi(4) / 90.0, 1.036_927_755_143_37];
        for (got, want) in s.coefficients.iter().zip(want) {
            assert!((got - want).abs() < 1e-12);
        }

        let s = ohno_series(&ev, &one(idx![1, 2]), 1, &cfg()).unwrap();
        let z = |k: Index| crate::mzv::eval_zeta(&k, &cfg()).unwrap();
        assert!((s.coefficients[0] - z(idx![1, 2])).abs() < 1e-12);
        assert!((s.coefficients[1] - z(idx![2, 2]) - z(idx![1, 3])).abs() < 2e-12);
    }

    #[test]
    fn f_examples() {
        let ev = Evaluator::new();
        // (2)♯(3) vs (2)♯(1,2): no symbolic cancellation, finite nonzero value.
        let c = f_combination(2, &idx![3], 0, 0).unwrap();
        let mut want = comb(&[(idx![2, 3], 1), (idx![3, 2], 1)]);
        want -= comb(&[(idx![2, 1, 2], 1), (idx![1, 2, 2], 2)]);
        assert_eq!(c, want);
        assert!(f_ml(&ev, 2, &idx![3], 0, 0, &cfg()).unwrap().is_finite());
        // k = (2) is self-dual so both arguments coincide.
        assert!(f_combination(2, &idx![2], 0, 0).unwrap().is_zero());
        assert!(f_combination(1, &idx![2], 0, 0).is_err());
        assert!(f_combination(2, &idx![2, 1], 0, 0).is_err());
    }

    #[test]
    fn f_series_chains_definition() {
        let ev = Evaluator::new();
        let series = f_series(&ev, 3, &idx![3], 2, &cfg()).unwrap();
        for m in 0..=2u32 {
            let direct = f_ml(&ev, 3, &idx![3], 0, m, &cfg()).unwrap();
            assert!((series.coefficients[m as usize] - direct).abs() < 4e-12);
        }
    }

    #[test]
    fn d_examples() {
        let ev = Evaluator::new();
        for s in 2..5 {
            assert!(d_combination(s, s, 1, 1).unwrap().is_zero());
        }
        let coarse = EvalConfig::new(1e-10).unwrap();
        assert!(d_ml(&ev, 2, 3, 0, 0, &coarse).unwrap().abs() < 1e-10);
        assert!(d_ml(&ev, 3, 2, 1, 1, &coarse).unwrap().abs() < 1e-10);
    }

    #[test]
    fn d_is_antisymmetric_symbolically() {
        for (s, t) in [(2, 3), (3, 5), (4, 2)] {
            for l in 0..2 {
                for m in 0..2 {
                    assert_eq!(d_combination(s, t, l, m).unwrap(), -d_combination(t, s, l, m).unwrap());
                }
            }
        }
    }

    #[test]
    fn hoffman_examples() {
        assert_eq!(
            hoffman_combination(&idx![2]).unwrap(),
            comb(&[(idx![3], 1), (idx![1, 2], -1)])
        );
        assert_eq!(
            hoffman_combination(&idx![1, 2]).unwrap(),
            comb(&[(idx![2, 2], 1), (idx![1, 3], 1), (idx![1, 1, 2], -1)])
        );
        assert_eq!(
            hoffman_combination(&idx![3]).unwrap(),
            comb(&[(idx![4], 1), (idx![1, 3], -1), (idx![2, 2], -1)])
        );
        let ev = Evaluator::new();
        for k in [idx![2], idx![1, 2], idx![3]] {
            assert!(hoffman_lhs_minus_rhs(&ev, &k, &cfg()).unwrap().abs() < 1e-12);
        }
        assert!(hoffman_combination(&idx![2, 1]).is_err());
    }
}
