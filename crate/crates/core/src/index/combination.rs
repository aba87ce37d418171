use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{AlgebraError, Index};

/// Exact rational coefficient, always kept in lowest terms with positive denominator.
pub type Coefficient = BigRational;

/// A finite ℚ-linear combination of indices.
///
/// Zero coefficients are never stored and iteration follows the canonical
/// index order, so two equal combinations serialize identically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IndexCombination {
    terms: BTreeMap<Index, Coefficient>,
}

impl IndexCombination {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_index(index: Index) -> Self {
        Self::term(index, Coefficient::one())
    }

    pub fn term(index: Index, coefficient: Coefficient) -> Self {
        let mut c = Self::zero();
        c.add_term(index, coefficient);
        c
    }

    /// `{a}^l` as a combination; negative `l` is the zero combination.
    pub fn repeat_or_zero(a: u32, l: i64) -> Self {
        if l < 0 {
            Self::zero()
        } else {
            Self::from_index(Index::repeat(a, l as usize))
        }
    }

    pub fn add_term(&mut self, index: Index, coefficient: Coefficient) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(index) {
            btree_map::Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_integer_term(&mut self, index: Index, coefficient: i64) {
        self.add_term(index, Coefficient::from_integer(BigInt::from(coefficient)));
    }

    pub fn add_scaled(&mut self, other: &IndexCombination, factor: &Coefficient) {
        if factor.is_zero() {
            return;
        }
        for (index, c) in &other.terms {
            self.add_term(index.clone(), c * factor);
        }
    }

    pub fn scaled(&self, factor: &Coefficient) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, factor);
        out
    }

    pub fn scaled_int(&self, factor: i64) -> Self {
        self.scaled(&Coefficient::from_integer(BigInt::from(factor)))
    }

    pub fn coefficient(&self, index: &Index) -> Coefficient {
        self.terms.get(index).cloned().unwrap_or_else(Coefficient::zero)
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = (&Index, &Coefficient)> {
        self.terms.iter()
    }

    pub fn indices(&self) -> impl ExactSizeIterator<Item = &Index> {
        self.terms.keys()
    }

    /// Number of distinct indices with nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of coefficients; for a product of single indices this is the term
    /// count with multiplicity.
    pub fn coefficient_sum(&self) -> Coefficient {
        self.terms.values().fold(Coefficient::zero(), |acc, c| acc + c)
    }

    /// Σ |coefficient| as a float, the error amplification factor of evaluation.
    pub fn abs_coefficient_sum(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .sum()
    }

    /// First index of the support that fails `pred`.
    pub fn find_index(&self, pred: impl Fn(&Index) -> bool) -> Option<&Index> {
        self.terms.keys().find(|k| pred(k))
    }

    pub fn ensure_admissible(&self) -> Result<(), AlgebraError> {
        match self.find_index(|k| !k.is_admissible()) {
            Some(bad) => Err(AlgebraError::NotAdmissible(bad.clone())),
            None => Ok(()),
        }
    }

    /// Applies a linear map given on basis indices.
    pub fn try_map_linear<F>(&self, mut f: F) -> Result<Self, AlgebraError>
    where
        F: FnMut(&Index) -> Result<IndexCombination, AlgebraError>,
    {
        let mut out = Self::zero();
        for (index, c) in &self.terms {
            out.add_scaled(&f(index)?, c);
        }
        Ok(out)
    }

    /// Applies a map of basis indices to basis indices.
    pub fn map_indices(&self, mut f: impl FnMut(&Index) -> Index) -> Self {
        let mut out = Self::zero();
        for (index, c) in &self.terms {
            out.add_term(f(index), c.clone());
        }
        out
    }

    /// Termwise dual; every support index must be admissible.
    pub fn dual_linear(&self) -> Result<Self, AlgebraError> {
        self.ensure_admissible()?;
        let mut out = Self::zero();
        for (index, c) in &self.terms {
            out.add_term(index.dual()?, c.clone());
        }
        Ok(out)
    }

    /// `(k, tail)` for every `k` in the support.
    pub fn append(&self, tail: &Index) -> Self {
        self.map_indices(|k| k.concat(tail))
    }

    /// `(head, k)` for every `k` in the support.
    pub fn prepend(&self, head: &Index) -> Self {
        self.map_indices(|k| head.concat(k))
    }
}

impl From<Index> for IndexCombination {
    fn from(index: Index) -> Self {
        Self::from_index(index)
    }
}

impl FromIterator<(Index, Coefficient)> for IndexCombination {
    fn from_iter<I: IntoIterator<Item = (Index, Coefficient)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (index, c) in iter {
            out.add_term(index, c);
        }
        out
    }
}

impl FromIterator<Index> for IndexCombination {
    fn from_iter<I: IntoIterator<Item = Index>>(iter: I) -> Self {
        iter.into_iter().map(|k| (k, Coefficient::one())).collect()
    }
}

impl<'a> IntoIterator for &'a IndexCombination {
    type Item = (&'a Index, &'a Coefficient);
    type IntoIter = btree_map::Iter<'a, Index, Coefficient>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl AddAssign<&IndexCombination> for IndexCombination {
    fn add_assign(&mut self, rhs: &IndexCombination) {
        for (index, c) in &rhs.terms {
            self.add_term(index.clone(), c.clone());
        }
    }
}

impl AddAssign for IndexCombination {
    fn add_assign(&mut self, rhs: IndexCombination) {
        for (index, c) in rhs.terms {
            self.add_term(index, c);
        }
    }
}

impl SubAssign<&IndexCombination> for IndexCombination {
    fn sub_assign(&mut self, rhs: &IndexCombination) {
        for (index, c) in &rhs.terms {
            self.add_term(index.clone(), -c);
        }
    }
}

impl SubAssign for IndexCombination {
    fn sub_assign(&mut self, rhs: IndexCombination) {
        for (index, c) in rhs.terms {
            self.add_term(index, -c);
        }
    }
}

impl Add for IndexCombination {
    type Output = IndexCombination;

    fn add(mut self, rhs: IndexCombination) -> Self::Output {
        self += rhs;
        self
    }
}

impl Add<&IndexCombination> for &IndexCombination {
    type Output = IndexCombination;

    fn add(self, rhs: &IndexCombination) -> Self::Output {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for IndexCombination {
    type Output = IndexCombination;

    fn sub(mut self, rhs: IndexCombination) -> Self::Output {
        self -= rhs;
        self
    }
}

impl Sub<&IndexCombination> for &IndexCombination {
    type Output = IndexCombination;

    fn sub(self, rhs: &IndexCombination) -> Self::Output {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for IndexCombination {
    type Output = IndexCombination;

    fn neg(mut self) -> Self::Output {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &IndexCombination {
    type Output = IndexCombination;

    fn neg(self) -> Self::Output {
        -self.clone()
    }
}

impl Mul<&Coefficient> for &IndexCombination {
    type Output = IndexCombination;

    fn mul(self, rhs: &Coefficient) -> Self::Output {
        self.scaled(rhs)
    }
}

fn write_magnitude(f: &mut fmt::Formatter<'_>, c: &Coefficient) -> fmt::Result {
    let c = c.abs();
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

/// Canonical text: `coef*(entries)` joined by ` + ` / ` - `; the empty
/// combination is `0`.
impl fmt::Display for IndexCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (index, c)) in self.terms.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write_magnitude(f, c)?;
            write!(f, "*{index}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IndexCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}
