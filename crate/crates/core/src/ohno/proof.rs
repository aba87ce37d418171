//! The quantities `A`, `B`, `C` that split `F_{m,l}(s;(3)) − F_{m,l}(2;(s+1))`,
//! each in several equivalent shapes.
//!
//! Throughout, `K = (3) ♯ {2}^l`.

use num_traits::One;

use super::{hast_shift_sum, invalid, ohno_m_symbolic, twos, EngineError, OhnoTerms};
use crate::index::{for_each_composition, sha, sha_all, Coefficient, Index, IndexCombination};

fn check_s(s: u32) -> Result<(), EngineError> {
    if s < 2 {
        return Err(invalid(format!("s must be at least 2, got {s}")));
    }
    Ok(())
}

fn single(k: u32) -> IndexCombination {
    IndexCombination::from_index(Index::repeat(k, 1))
}

/// Index from blocks of `{2}^n`, `{1}^n` and single entries, written left to right.
pub(crate) enum Piece {
    Twos(u32),
    Ones(u32),
    Entry(u32),
}

pub(crate) fn build(pieces: &[Piece]) -> Index {
    let mut entries = Vec::new();
    for p in pieces {
        match *p {
            Piece::Twos(n) => entries.extend(std::iter::repeat_n(2, n as usize)),
            Piece::Ones(n) => entries.extend(std::iter::repeat_n(1, n as usize)),
            Piece::Entry(k) => entries.push(k),
        }
    }
    Index::new(entries).expect("entries are positive")
}

pub(crate) fn one(k: Index) -> IndexCombination {
    IndexCombination::from_index(k)
}

/// `{2}^{l-1}` with the convention that it vanishes for `l = 0`.
fn twos_minus_one(l: u32) -> IndexCombination {
    IndexCombination::repeat_or_zero(2, l as i64 - 1)
}

fn k_three(l: u32) -> IndexCombination {
    sha(&single(3), &twos(l))
}

/// `A = −Σ_{m_1+m_2=m} Σ_{|e|=m_2} (s+m_1) hast (K ⊕ e)`.
pub fn a_definition(s: u32, l: u32, m: u32) -> Result<IndexCombination, EngineError> {
    check_s(s)?;
    Ok(-hast_shift_sum(s, &k_three(l), m)?)
}

/// `A = −Σ_a 𝒪_{m−a}((s+a+3)♯{2}^l + (s+a+2)♯(3)♯{2}^{l−1})`.
pub fn quantity_a(s: u32, l: u32, m: u32) -> Result<OhnoTerms, EngineError> {
    check_s(s)?;
    let mut out = OhnoTerms::default();
    for a in 0..=m {
        let mut c = sha(&single(s + a + 3), &twos(l));
        c += sha_all([&single(s + a + 2), &single(3), &twos_minus_one(l)]);
        out.push(m - a, -c);
    }
    Ok(out)
}

/// `max(m_p − s + 1, 0)` summed over all parts.
fn composition_weight(parts: &[u32], s: u32) -> i64 {
    parts.iter().map(|&mp| (mp as i64 - s as i64 + 1).max(0)).sum()
}

/// `−Σ_{m_1+…+m_{l+1}=m+s} w · Σ_i (m_1+2, …, m_i+3, …, m_{l+1}+2)`.
pub fn a_composition_form(s: u32, l: u32, m: u32) -> Result<IndexCombination, EngineError> {
    check_s(s)?;
    let mut out = IndexCombination::zero();
    for_each_composition(l as usize + 1, m + s, |parts| {
        let w = composition_weight(parts, s);
        if w == 0 {
            return;
        }
        let base: Vec<u32> = parts.iter().map(|x| x + 2).collect();
        for i in 0..parts.len() {
            let mut e = base.clone();
            e[i] += 1;
            out.add_integer_term(Index::new(e).expect("positive"), -w);
        }
    });
    Ok(out)
}

/// `B = Σ_{m_1+m_2=m} Σ_{|e|=m_2} (s+m_1) hast (K† ⊕ e)`.
pub fn quantity_b(s: u32, l: u32, m: u32) -> Result<IndexCombination, EngineError> {
    check_s(s)?;
    Ok(hast_shift_sum(s, &k_three(l).dual_linear()?, m)?)
}

/// `B` with the positions of the added entry spelled out.
pub fn b_by_positions(s: u32, l: u32, m: u32) -> Result<OhnoTerms, EngineError> {
    use Piece::{Entry, Twos};
    check_s(s)?;
    let mut out = OhnoTerms::default();
    for m1 in 0..=m {
        let m2 = m - m1;
        let mut c = IndexCombination::zero();
        for i in 1..=l {
            for j in 0..i {
                c += one(build(&[
                    Twos(j),
                    Entry(s + m1 + 2),
                    Twos(i - j - 1),
                    Entry(1),
                    Twos(l - i + 1),
                ]));
            }
        }
        for i in 0..=l {
            c += one(build(&[Twos(i), Entry(s + m1 + 1), Twos(l - i + 1)]));
        }
        for i in 0..=l {
            for j in 0..=(l - i) {
                c += one(build(&[Twos(i), Entry(1), Twos(j), Entry(s + m1 + 2), Twos(l - i - j)]));
            }
        }
        out.push(m2, c);
    }
    Ok(out)
}

/// `B = Σ_a 𝒪_{m−a}(((1)♯(s+a+2)♯{2}^{l−1}, 2) + ((s+a+1)♯{2}^l, 2) + ((1)♯{2}^l, s+a+2))`.
pub fn b_grouped(s: u32, l: u32, m: u32) -> Result<OhnoTerms, EngineError> {
    check_s(s)?;
    let two = Index::repeat(2, 1);
    let mut out = OhnoTerms::default();
    for a in 0..=m {
        let mut c = sha_all([&single(1), &single(s + a + 2), &twos_minus_one(l)]).append(&two);
        c += sha(&single(s + a + 1), &twos(l)).append(&two);
        c += sha(&single(1), &twos(l)).append(&Index::repeat(s + a + 2, 1));
        out.push(m - a, c);
    }
    Ok(out)
}

/// `C = −(l+1) 𝒪_m((s+1)♯{2}^{l+1}) + 𝒪_m((2)♯((s+1)♯{2}^l)†)`.
pub fn c_definition(s: u32, l: u32, m: u32) -> Result<IndexCombination, EngineError> {
    check_s(s)?;
    let first = sha(&single(s + 1), &twos(l + 1));
    let second = sha(&single(2), &sha(&single(s + 1), &twos(l)).dual_linear()?);
    let minus_l1 = -Coefficient::from_integer((l as i64 + 1).into());
    let mut out = ohno_m_symbolic(&first, m)?.scaled(&minus_l1);
    out.add_scaled(&ohno_m_symbolic(&second, m)?, &Coefficient::one());
    Ok(out)
}

/// Closed form `C = Σ_{i=0}^{l} Σ_{j=0}^{s−2} 𝒪_m({2}^i, j+2, s−j+1, {2}^{l−i})`.
///
/// Agrees with [`c_definition`] only after evaluation (the reduction uses the
/// Ohno relation), never symbolically.
pub fn quantity_c(s: u32, l: u32, m: u32) -> Result<OhnoTerms, EngineError> {
    use Piece::{Entry, Twos};
    check_s(s)?;
    let mut c = IndexCombination::zero();
    for i in 0..=l {
        for j in 0..=(s - 2) {
            c += one(build(&[Twos(i), Entry(j + 2), Entry(s - j + 1), Twos(l - i)]));
        }
    }
    let mut out = OhnoTerms::default();
    out.push(m, c);
    Ok(out)
}

/// `B + C` as the grouped `B` plus the closed form of `C`.
pub fn bc_grouped(s: u32, l: u32, m: u32) -> Result<OhnoTerms, EngineError> {
    let mut out = b_grouped(s, l, m)?;
    out.terms.extend(quantity_c(s, l, m)?.terms);
    Ok(out)
}

/// `Σ_{m_1+…+m_{l+1}=m+s} w · Σ_i Σ_{j=0}^{m_i} (…, m_{i−1}+2, j+1, m_i−j+2, m_{i+1}+2, …)`.
pub fn bc_composition_form(s: u32, l: u32, m: u32) -> Result<IndexCombination, EngineError> {
    check_s(s)?;
    let mut out = IndexCombination::zero();
    for_each_composition(l as usize + 1, m + s, |parts| {
        let w = composition_weight(parts, s);
        if w == 0 {
            return;
        }
        for i in 0..parts.len() {
            for j in 0..=parts[i] {
                let mut e: Vec<u32> = Vec::with_capacity(parts.len() + 1);
                e.extend(parts[..i].iter().map(|x| x + 2));
                e.push(j + 1);
                e.push(parts[i] - j + 2);
                e.extend(parts[i + 1..].iter().map(|x| x + 2));
                out.add_integer_term(Index::new(e).expect("positive"), w);
            }
        }
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idx;
    use crate::mzv::{EvalConfig, Evaluator};
    use crate::ohno::f_combination;

    fn comb(terms: &[(Index, i64)]) -> IndexCombination {
        let mut c = IndexCombination::zero();
        for (k, n) in terms {
            c.add_integer_term(k.clone(), *n);
        }
        c
    }

    #[test]
    fn a_examples() {
        for s in 2..6 {
            let a = quantity_a(s, 0, 0).unwrap().expand().unwrap();
            assert_eq!(a, comb(&[(idx![s + 3], -1)]));
        }
        let a = quantity_a(2, 1, 0).unwrap();
        assert_eq!(a.terms.len(), 1);
        let mut want = sha(&single(5), &single(2));
        want += sha(&single(4), &single(3));
        assert_eq!(a.terms[0], (0, -want));
    }

    #[test]
    fn a_shapes_agree_exactly() {
        for s in 2..=4 {
            for l in 0..=2 {
                for m in 0..=2 {
                    let def = a_definition(s, l, m).unwrap();
                    assert_eq!(quantity_a(s, l, m).unwrap().expand().unwrap(), def, "s={s} l={l} m={m}");
                    assert_eq!(a_composition_form(s, l, m).unwrap(), def, "s={s} l={l} m={m}");
                }
            }
        }
    }

    #[test]
    fn b_shapes_agree_exactly() {
        for s in 2..=4 {
            for l in 0..=2 {
                for m in 0..=2 {
                    let def = quantity_b(s, l, m).unwrap();
                    assert_eq!(
                        b_by_positions(s, l, m).unwrap().expand().unwrap(),
                        def,
                        "s={s} l={l} m={m}"
                    );
                    assert_eq!(b_grouped(s, l, m).unwrap().expand().unwrap(), def, "s={s} l={l} m={m}");
                }
            }
        }
    }

    #[test]
    fn c_closed_form_example() {
        let c = quantity_c(2, 0, 0).unwrap().expand().unwrap();
        assert_eq!(c, comb(&[(idx![2, 3], 1)]));
    }

    #[test]
    fn decomposition_holds_numerically() {
        let cfg = EvalConfig::new(1e-10).unwrap();
        let ev = Evaluator::new();
        for (s, l, m) in [(3, 1, 1), (2, 0, 1), (2, 1, 0)] {
            let lhs =
                f_combination(s, &idx![3], l, m).unwrap() - f_combination(2, &Index::repeat(s + 1, 1), l, m).unwrap();
            let mut rhs = a_definition(s, l, m).unwrap();
            rhs += quantity_b(s, l, m).unwrap();
            rhs += quantity_c(s, l, m).unwrap().expand().unwrap();
            let residual = ev.combination(&(lhs - rhs), &cfg).unwrap();
            assert!(residual.abs() < 1e-9, "s={s} l={l} m={m}: {residual}");

            let c_gap = c_definition(s, l, m).unwrap() - quantity_c(s, l, m).unwrap().expand().unwrap();
            assert!(ev.combination(&c_gap, &cfg).unwrap().abs() < 1e-9);
        }
    }

    #[test]
    fn bc_grouped_matches_composition_form() {
        for s in 2..=4 {
            for l in 0..=2 {
                for m in 0..=2 {
                    assert_eq!(
                        bc_grouped(s, l, m).unwrap().expand().unwrap(),
                        bc_composition_form(s, l, m).unwrap(),
                        "s={s} l={l} m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn s_below_two_rejected() {
        assert!(quantity_a(1, 0, 0).is_err());
        assert!(c_definition(1, 1, 0).is_err());
    }
}
