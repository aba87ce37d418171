//! Position-resolved pieces `G_{p,q}`, `H_{p,q}`, `I_{p,q}`, `J_{p,q}` of the
//! proof quantities, and the three sums behind `I_{p,p}`.
//!
//! Positions `p`, `q` are 1-based and range over `1..=l+1`; `l ≥ 1`.

use super::proof::{build, one, Piece};
use super::{invalid, ohno_m_symbolic, EngineError};
use crate::index::{for_each_composition, Index, IndexCombination};

use Piece::{Entry, Twos};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProofQuantityParams {
    pub s: u32,
    pub l: u32,
    pub m: u32,
    pub p: u32,
    pub q: u32,
}

impl ProofQuantityParams {
    pub fn new(s: u32, l: u32, m: u32, p: u32, q: u32) -> Result<Self, EngineError> {
        let params = Self { s, l, m, p, q };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        if self.s < 2 {
            return Err(invalid(format!("s must be at least 2, got {}", self.s)));
        }
        if self.l < 1 {
            return Err(invalid("l must be at least 1"));
        }
        for (name, v) in [("p", self.p), ("q", self.q)] {
            if v < 1 || v > self.l + 1 {
                return Err(invalid(format!("{name} = {v} outside 1..={}", self.l + 1)));
            }
        }
        Ok(())
    }
}

/// `Σ_{a=0}^{m} 𝒪_{m−a}(index(a))`.
fn a_sum(m: u32, mut index: impl FnMut(u32) -> Index) -> Result<IndexCombination, EngineError> {
    let mut out = IndexCombination::zero();
    for a in 0..=m {
        out += ohno_m_symbolic(&one(index(a)), m - a)?;
    }
    Ok(out)
}

pub fn g_pq(params: &ProofQuantityParams) -> Result<IndexCombination, EngineError> {
    params.validate()?;
    let ProofQuantityParams { s, l, m, p, q } = *params;
    a_sum(m, |a| match p.cmp(&q) {
        std::cmp::Ordering::Less => build(&[
            Twos(p - 1),
            Entry(s + a + 2),
            Twos(q - p - 1),
            Entry(3),
            Twos(l + 1 - q),
        ]),
        std::cmp::Ordering::Equal => build(&[Twos(p - 1), Entry(s + a + 3), Twos(l + 1 - p)]),
        std::cmp::Ordering::Greater => build(&[
            Twos(q - 1),
            Entry(3),
            Twos(p - q - 1),
            Entry(s + a + 2),
            Twos(l + 1 - p),
        ]),
    })
}

/// Visits compositions of `m + s` into `l + 1` parts with nonzero weight
/// `max(m_p − s + 1, 0)`.
fn weighted_compositions(params: &ProofQuantityParams, mut f: impl FnMut(&[u32], i64)) {
    let ProofQuantityParams { s, l, m, p, .. } = *params;
    for_each_composition(l as usize + 1, m + s, |parts| {
        let w = parts[p as usize - 1] as i64 - s as i64 + 1;
        if w > 0 {
            f(parts, w);
        }
    });
}

pub fn h_pq(params: &ProofQuantityParams) -> Result<IndexCombination, EngineError> {
    params.validate()?;
    let mut out = IndexCombination::zero();
    let q = params.q as usize - 1;
    weighted_compositions(params, |parts, w| {
        let mut e: Vec<u32> = parts.iter().map(|x| x + 2).collect();
        e[q] += 1;
        out.add_integer_term(Index::new(e).expect("positive"), w);
    });
    Ok(out)
}

pub fn i_pq(params: &ProofQuantityParams) -> Result<IndexCombination, EngineError> {
    params.validate()?;
    let ProofQuantityParams { s, l, m, p, q } = *params;
    match p.cmp(&q) {
        std::cmp::Ordering::Less => a_sum(m, |a| {
            build(&[
                Twos(p - 1),
                Entry(s + a + 2),
                Twos(q - p - 1),
                Entry(1),
                Twos(l + 2 - q),
            ])
        }),
        std::cmp::Ordering::Greater => a_sum(m, |a| {
            build(&[Twos(q - 1), Entry(1), Twos(p - q), Entry(s + a + 2), Twos(l + 1 - p)])
        }),
        std::cmp::Ordering::Equal => {
            let mut out = g1_lhs(params)?;
            out += g2_lhs(params)?;
            out += g3_lhs(params)?;
            Ok(out)
        }
    }
}

pub fn j_pq(params: &ProofQuantityParams) -> Result<IndexCombination, EngineError> {
    params.validate()?;
    let mut out = IndexCombination::zero();
    let q = params.q as usize - 1;
    weighted_compositions(params, |parts, w| {
        for j in 0..=parts[q] {
            let mut e: Vec<u32> = Vec::with_capacity(parts.len() + 1);
            e.extend(parts[..q].iter().map(|x| x + 2));
            e.push(j + 1);
            e.push(parts[q] - j + 2);
            e.extend(parts[q + 1..].iter().map(|x| x + 2));
            out.add_integer_term(Index::new(e).expect("positive"), w);
        }
    });
    Ok(out)
}

/// `Σ_{1≤p,q≤l+1} f(p, q)`.
pub fn sum_over_pq(
    s: u32,
    l: u32,
    m: u32,
    f: impl Fn(&ProofQuantityParams) -> Result<IndexCombination, EngineError>,
) -> Result<IndexCombination, EngineError> {
    let mut out = IndexCombination::zero();
    for p in 1..=l + 1 {
        for q in 1..=l + 1 {
            out += f(&ProofQuantityParams::new(s, l, m, p, q)?)?;
        }
    }
    Ok(out)
}

fn diagonal(params: &ProofQuantityParams) -> Result<(), EngineError> {
    params.validate()?;
    if params.p != params.q {
        return Err(invalid(format!("needs p = q, got p = {}, q = {}", params.p, params.q)));
    }
    Ok(())
}

/// `Σ_a 𝒪_{m−a}({2}^{p−1}, 1, s+a+2, {2}^{l−p+1})`.
pub fn g1_lhs(params: &ProofQuantityParams) -> Result<IndexCombination, EngineError> {
    diagonal(params)?;
    let ProofQuantityParams { s, l, m, p, .. } = *params;
    a_sum(m, |a| {
        build(&[Twos(p - 1), Entry(1), Entry(s + a + 2), Twos(l + 1 - p)])
    })
}

/// `Σ_a 𝒪_{m−a}({2}^{p−1}, s+a+1, {2}^{l−p+2})`.
pub fn g2_lhs(params: &ProofQuantityParams) -> Result<IndexCombination, EngineError> {
    diagonal(params)?;
    let ProofQuantityParams { s, l, m, p, .. } = *params;
    a_sum(m, |a| build(&[Twos(p - 1), Entry(s + a + 1), Twos(l + 2 - p)]))
}

/// `Σ_{j=0}^{s−2} 𝒪_m({2}^{p−1}, j+2, s−j+1, {2}^{l−p+1})`.
pub fn g3_lhs(params: &ProofQuantityParams) -> Result<IndexCombination, EngineError> {
    diagonal(params)?;
    let ProofQuantityParams { s, l, m, p, .. } = *params;
    let mut c = IndexCombination::zero();
    for j in 0..=(s - 2) {
        c += one(build(&[Twos(p - 1), Entry(j + 2), Entry(s - j + 1), Twos(l + 1 - p)]));
    }
    Ok(ohno_m_symbolic(&c, m)?)
}

/// `Σ_{v=0}^{m} Σ_{m_1+…+m_l=m−v} Σ_{u=0}^{v} Σ_{j∈range(u,v)} (m_1+2, …, m_{p−1}+2, j, s+v−j+3, m_p+2, …, m_l+2)`.
fn diagonal_rhs(
    params: &ProofQuantityParams,
    range: impl Fn(u32, u32) -> std::ops::RangeInclusive<u32>,
) -> Result<IndexCombination, EngineError> {
    diagonal(params)?;
    let ProofQuantityParams { s, l, m, p, .. } = *params;
    let split = p as usize - 1;
    let mut out = IndexCombination::zero();
    for v in 0..=m {
        for_each_composition(l as usize, m - v, |parts| {
            for u in 0..=v {
                for j in range(u, v) {
                    let mut e: Vec<u32> = Vec::with_capacity(parts.len() + 2);
                    e.extend(parts[..split].iter().map(|x| x + 2));
                    e.push(j);
                    e.push(s + v + 3 - j);
                    e.extend(parts[split..].iter().map(|x| x + 2));
                    out.add_integer_term(Index::new(e).expect("positive"), 1);
                }
            }
        });
    }
    Ok(out)
}

pub fn g1_rhs(params: &ProofQuantityParams) -> Result<IndexCombination, EngineError> {
    diagonal_rhs(params, |u, v| 1..=(v - u + 1))
}

pub fn g2_rhs(params: &ProofQuantityParams) -> Result<IndexCombination, EngineError> {
    let s = params.s;
    diagonal_rhs(params, move |u, v| (s + v - u + 1)..=(s + v + 1))
}

pub fn g3_rhs(params: &ProofQuantityParams) -> Result<IndexCombination, EngineError> {
    let s = params.s;
    diagonal_rhs(params, move |u, v| (v - u + 2)..=(s + v - u))
}
