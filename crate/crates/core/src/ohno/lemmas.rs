//! Left-minus-right combinations for the intermediate lemmas on `F_{m,l}`,
//! plus the closed-form expansions used to prove them.
//!
//! Each `*_difference` is a combination whose ζ-value vanishes when the
//! statement holds. Nothing is simplified with relations between ζ values, so
//! a difference is only zero after evaluation unless noted otherwise.

use super::proof::{build, one, Piece};
use super::{f_combination, hast_shift_sum, invalid, ohno_m_symbolic, twos, EngineError};
use crate::index::{hast, sha, sha_all, Index, IndexCombination};

use Piece::{Entry, Ones, Twos};

fn single(k: u32) -> IndexCombination {
    IndexCombination::from_index(Index::repeat(k, 1))
}

fn at_least(name: &str, v: u32, min: u32) -> Result<(), EngineError> {
    if v < min {
        return Err(invalid(format!("{name} must be at least {min}, got {v}")));
    }
    Ok(())
}

/// `(t+1) ♯ {2}^l`.
pub fn k_plus_one(t: u32, l: u32) -> IndexCombination {
    sha(&single(t + 1), &twos(l))
}

/// `F_{m,l}(s;(t+1))` minus its expression through shifted hast sums.
pub fn fmpre1_difference(s: u32, t: u32, l: u32, m: u32) -> Result<IndexCombination, EngineError> {
    at_least("s", s, 2)?;
    at_least("t", t, 1)?;
    let k = k_plus_one(t, l);
    let mut out = f_combination(s, &Index::repeat(t + 1, 1), l, m)?;
    out += hast_shift_sum(s, &k, m)?;
    out -= hast_shift_sum(s, &k.dual_linear()?, m)?;
    Ok(out)
}

/// Telescoping of shifted hast sums, for `X = (t+1)♯{2}^l` or (with `dual`) its dual.
///
/// This one is zero symbolically.
pub fn fmpre2_difference(s: u32, t: u32, l: u32, m: u32, dual: bool) -> Result<IndexCombination, EngineError> {
    at_least("s", s, 1)?;
    at_least("t", t, 1)?;
    at_least("m", m, 1)?;
    let mut x = k_plus_one(t, l);
    if dual {
        x = x.dual_linear()?;
    }
    let mut out = hast_shift_sum(s, &x, m)?;
    out -= hast_shift_sum(s + 1, &x, m - 1)?;
    out -= ohno_m_symbolic(&hast(s, &x)?, m)?;
    Ok(out)
}

/// `F_{m,l}(s−1;(t+1)) − F_{m−1,l}(s;(t+1)) + 𝒪_m((s−1) hast K) − 𝒪_m((s−1) hast K†)`.
pub fn fm_difference(s: u32, t: u32, l: u32, m: u32) -> Result<IndexCombination, EngineError> {
    at_least("s", s, 3)?;
    at_least("t", t, 1)?;
    at_least("m", m, 1)?;
    let k = k_plus_one(t, l);
    let t1 = Index::repeat(t + 1, 1);
    let mut out = f_combination(s - 1, &t1, l, m)?;
    out -= f_combination(s, &t1, l, m - 1)?;
    out += ohno_m_symbolic(&hast(s - 1, &k)?, m)?;
    out -= ohno_m_symbolic(&hast(s - 1, &k.dual_linear()?)?, m)?;
    Ok(out)
}

/// `(s) ♯ ((t)♯{2}^l)† − (s−1) hast ((t+1)♯{2}^l)†`, before taking `𝒪_m`.
fn oooo_half(s: u32, t: u32, l: u32) -> Result<IndexCombination, EngineError> {
    let plain = sha(&single(t), &twos(l)).dual_linear()?;
    let mut out = sha(&single(s), &plain);
    out -= hast(s - 1, &k_plus_one(t, l).dual_linear()?)?;
    Ok(out)
}

/// The two `𝒪_m` differences, one minus the other with `s` and `t` swapped.
pub fn oooo_difference(s: u32, t: u32, l: u32, m: u32) -> Result<IndexCombination, EngineError> {
    at_least("s", s, 2)?;
    at_least("t", t, 2)?;
    let mut out = ohno_m_symbolic(&oooo_half(s, t, l)?, m)?;
    out -= ohno_m_symbolic(&oooo_half(t, s, l)?, m)?;
    Ok(out)
}

/// Termwise expansion of `(s) ♯ ((t)♯{2}^l)†`.
pub fn sha_dual_expansion(s: u32, t: u32, l: u32) -> Result<IndexCombination, EngineError> {
    at_least("t", t, 2)?;
    let mut out = IndexCombination::zero();
    for i in 0..=l {
        for j in 0..=i {
            out += one(build(&[Twos(j), Entry(s), Twos(i - j), Ones(t - 2), Twos(l - i + 1)]));
        }
        for j in 1..=t.saturating_sub(2) {
            out += one(build(&[Twos(i), Ones(j), Entry(s), Ones(t - j - 2), Twos(l - i + 1)]));
        }
        for j in 0..=(l - i) {
            out += one(build(&[Twos(i), Ones(t - 2), Twos(j + 1), Entry(s), Twos(l - i - j)]));
        }
    }
    Ok(out)
}

/// Termwise expansion of `(s−1) hast ((t+1)♯{2}^l)†`.
pub fn hast_dual_expansion(s: u32, t: u32, l: u32) -> Result<IndexCombination, EngineError> {
    at_least("s", s, 2)?;
    at_least("t", t, 2)?;
    let mut out = IndexCombination::zero();
    for i in 1..=l {
        for j in 0..i {
            out += one(build(&[
                Twos(j),
                Entry(s + 1),
                Twos(i - j - 1),
                Ones(t - 1),
                Twos(l - i + 1),
            ]));
        }
    }
    for i in 0..=l {
        for j in 0..=(t - 2) {
            out += one(build(&[Twos(i), Ones(j), Entry(s), Ones(t - j - 2), Twos(l - i + 1)]));
        }
        for j in 0..=(l - i) {
            out += one(build(&[Twos(i), Ones(t - 1), Twos(j), Entry(s + 1), Twos(l - i - j)]));
        }
    }
    Ok(out)
}

/// `(s)♯((t)♯{2}^l)† − (s−1) hast ((t+1)♯{2}^l)†` regrouped over `a+b+c = l`.
pub fn oooo_regrouped(s: u32, t: u32, l: u32) -> Result<IndexCombination, EngineError> {
    at_least("s", s, 2)?;
    at_least("t", t, 2)?;
    let mut out = IndexCombination::zero();
    for a in 0..=l {
        for b in 0..=(l - a) {
            let c = l - a - b;
            out += one(build(&[Twos(a), Entry(s), Twos(b), Ones(t - 2), Twos(c + 1)]));
            out += one(build(&[Twos(a), Ones(t - 2), Twos(b + 1), Entry(s), Twos(c)]));
            out -= one(build(&[Twos(a), Ones(t - 1), Twos(b), Entry(s + 1), Twos(c)]));
        }
        out -= one(build(&[Twos(a), Entry(s), Ones(t - 2), Twos(l - a + 1)]));
    }
    if l >= 1 {
        for a in 0..l {
            for b in 0..(l - a) {
                let c = l - 1 - a - b;
                out -= one(build(&[Twos(a), Entry(s + 1), Twos(b), Ones(t - 1), Twos(c + 1)]));
            }
        }
    }
    Ok(out)
}

/// `(s+t)♯{2}^l + (s+1)♯(t+1)♯{2}^{l−1}`, the common value of `(s−1) hast ((t+1)♯{2}^l)`
/// and `(t−1) hast ((s+1)♯{2}^l)`.
pub fn hast_symmetric_form(s: u32, t: u32, l: u32) -> IndexCombination {
    let mut out = sha(&single(s + t), &twos(l));
    out += sha_all([
        &single(s + 1),
        &single(t + 1),
        &IndexCombination::repeat_or_zero(2, l as i64 - 1),
    ]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mzv::{EvalConfig, Evaluator};

    #[test]
    fn expansions_match_products() {
        for s in 2..=5 {
            for t in 2..=5 {
                for l in 0..=3 {
                    let sha_side = sha(&single(s), &sha(&single(t), &twos(l)).dual_linear().unwrap());
                    assert_eq!(sha_dual_expansion(s, t, l).unwrap(), sha_side, "s={s} t={t} l={l}");
                    let hast_side = hast(s - 1, &k_plus_one(t, l).dual_linear().unwrap()).unwrap();
                    assert_eq!(hast_dual_expansion(s, t, l).unwrap(), hast_side, "s={s} t={t} l={l}");
                    assert_eq!(
                        oooo_regrouped(s, t, l).unwrap(),
                        sha_side - hast_side,
                        "s={s} t={t} l={l}"
                    );
                    let sym = hast_symmetric_form(s, t, l);
                    assert_eq!(hast(s - 1, &k_plus_one(t, l)).unwrap(), sym);
                    assert_eq!(hast(t - 1, &k_plus_one(s, l)).unwrap(), sym);
                }
            }
        }
    }

    #[test]
    fn telescoping_is_symbolic() {
        for s in 1..=3 {
            for t in 1..=3 {
                for dual in [false, true] {
                    assert!(fmpre2_difference(s, t, 1, 2, dual).unwrap().is_zero());
                }
            }
        }
        assert!(fmpre2_difference(2, 2, 0, 0, false).is_err());
    }

    #[test]
    fn lemma_differences_vanish_numerically() {
        let cfg = EvalConfig::new(1e-10).unwrap();
        let ev = Evaluator::new();
        let check = |c: IndexCombination| {
            let v = ev.combination(&c, &cfg).unwrap();
            assert!(v.abs() < 1e-9, "{v}");
        };
        check(fmpre1_difference(2, 1, 0, 1).unwrap());
        check(fmpre1_difference(3, 2, 1, 1).unwrap());
        check(fm_difference(3, 2, 1, 1).unwrap());
        check(oooo_difference(3, 4, 1, 1).unwrap());
        assert!(fm_difference(2, 2, 0, 1).is_err());
    }
}
