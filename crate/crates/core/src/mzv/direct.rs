//! Truncated nested sum `Σ_{1≤m_1<…<m_r≤N} Π m_i^{-k_i}`, kept as an
//! independent oracle for the fast evaluator.

use super::EvalError;
use crate::index::Index;

/// Partial sum and a majorant of `ζ(k) − partial`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectSum {
    pub value: f64,
    pub tail_bound: f64,
}

/// Neumaier-compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
struct Compensated {
    sum: f64,
    comp: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

pub fn eval_zeta_direct(k: &Index, n_max: usize) -> Result<DirectSum, EvalError> {
    k.ensure_admissible()?;
    let depth = k.depth();
    if n_max < depth {
        return Err(EvalError::DirectTooShort { n: n_max, depth });
    }
    let entries = k.entries();
    // level[i] = S_i(n) over the first i entries.
    let mut level = vec![Compensated::default(); depth + 1];
    level[0].add(1.0);
    for n in 1..=n_max {
        let nf = n as f64;
        for i in (1..=depth).rev() {
            let prev = level[i - 1].value();
            if prev != 0.0 {
                level[i].add(prev * nf.powi(-(entries[i - 1] as i32)));
            }
        }
    }
    Ok(DirectSum {
        value: level[depth].value(),
        tail_bound: tail_majorant(depth, *entries.last().expect("admissible"), n_max),
    })
}

/// Majorant of `Σ_{n>N} n^{-k} (1+ln n)^j / j!` with `j = depth − 1`, which
/// dominates the omitted terms since `S_j(n−1) ≤ H_{n−1}^j / j!`.
///
/// The summand decreases once `1 + ln x ≥ j/k`; before that point the terms
/// are added explicitly, after it the sum is bounded by
/// `∫_M^∞ (1+ln x)^j x^{-k} dx / j! = M^{-a} Σ_{i≤j} (1+ln M)^i / (i! a^{j-i+1})`, `a = k − 1`.
fn tail_majorant(depth: usize, last: u32, n_max: usize) -> f64 {
    let j = depth as i32 - 1;
    let k = last as f64;
    let a = k - 1.0;
    let fact = |n: i32| -> f64 { (1..=n.max(0)).map(f64::from).product() };
    let summand = |x: f64| x.powf(-k) * (1.0 + x.ln()).powi(j) / fact(j);

    let monotone_from = ((j as f64 / k) - 1.0).exp().ceil() as usize;
    let m = n_max.max(monotone_from);
    let explicit: f64 = ((n_max + 1)..=m).map(|n| summand(n as f64)).sum();

    let mf = m as f64;
    let log_m = 1.0 + mf.ln();
    let integral: f64 = mf.powf(-a)
        * (0..=j)
            .map(|i| log_m.powi(i) / (fact(i) * a.powi(j - i + 1)))
            .sum::<f64>();
    (explicit + integral) * (1.0 + 1e-12)
}
