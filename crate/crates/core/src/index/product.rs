use num_traits::One;

use super::{AlgebraError, Coefficient, Index, IndexCombination};

/// All interleavings of `a` and `b` that keep each sequence's internal order,
/// with multiplicity. There are `C(|a|+|b|, |a|)` of them.
fn interleave(a: &[u32], b: &[u32], out: &mut IndexCombination) {
    let mut buf = Vec::with_capacity(a.len() + b.len());
    interleave_rec(a, b, &mut buf, out);
}

fn interleave_rec(a: &[u32], b: &[u32], buf: &mut Vec<u32>, out: &mut IndexCombination) {
    match (a.split_first(), b.split_first()) {
        (None, _) | (_, None) => {
            let start = buf.len();
            buf.extend_from_slice(a);
            buf.extend_from_slice(b);
            out.add_term(Index(buf.clone()), Coefficient::one());
            buf.truncate(start);
        }
        (Some((&x, rest_a)), Some((&y, rest_b))) => {
            buf.push(x);
            interleave_rec(rest_a, b, buf, out);
            buf.pop();
            buf.push(y);
            interleave_rec(a, rest_b, buf, out);
            buf.pop();
        }
    }
}

/// The bilinear shuffle product `P ♯ Q`, with ∅ as unit.
pub fn sha(p: &IndexCombination, q: &IndexCombination) -> IndexCombination {
    let mut out = IndexCombination::zero();
    for (a, ca) in p {
        for (b, cb) in q {
            let mut prod = IndexCombination::zero();
            interleave(a.entries(), b.entries(), &mut prod);
            out.add_scaled(&prod, &(ca * cb));
        }
    }
    out
}

/// `P_1 ♯ P_2 ♯ … ♯ P_n`; the empty product is ∅.
pub fn sha_all<'a>(factors: impl IntoIterator<Item = &'a IndexCombination>) -> IndexCombination {
    factors
        .into_iter()
        .fold(IndexCombination::from_index(Index::empty()), |acc, f| sha(&acc, f))
}

/// `(k) hast L`: for each support index, the formal sum over positions of the
/// index with `k` added at that position.
pub fn hast(k: u32, l: &IndexCombination) -> Result<IndexCombination, AlgebraError> {
    let mut out = IndexCombination::zero();
    for (index, c) in l {
        if index.is_empty() {
            return Err(AlgebraError::HastOnEmpty);
        }
        for pos in 0..index.depth() {
            out.add_term(index.bumped(pos, k), c.clone());
        }
    }
    Ok(out)
}

/// Harmonic product with a single-entry index: `(k) ∗ L = (k) ♯ L + (k) hast L`.
pub fn star_single(k: u32, l: &IndexCombination) -> Result<IndexCombination, AlgebraError> {
    let single = IndexCombination::from_index(Index::new(vec![k])?);
    let mut out = hast(k, l)?;
    out += sha(&single, l);
    Ok(out)
}
