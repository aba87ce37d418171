use std::fmt;
use std::str::FromStr;

use crate::index::{AlgebraError, Index};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    pub fn swapped(self) -> Letter {
        match self {
            Letter::X => Letter::Y,
            Letter::Y => Letter::X,
        }
    }
}

/// Binary word encoding an admissible index:
/// `(k_1,…,k_r) ↦ X^{k_r-1} Y X^{k_{r-1}-1} Y … X^{k_1-1} Y`.
///
/// Under this encoding duality is reversal followed by swapping letters.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reverse_swap(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.swapped()).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Letter::X => "X",
                Letter::Y => "Y",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                'X' | 'x' => Ok(Letter::X),
                'Y' | 'y' => Ok(Letter::Y),
                other => Err(AlgebraError::Parse {
                    text: s.to_string(),
                    reason: format!("unexpected letter {other:?}"),
                }),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

pub fn to_word(k: &Index) -> Result<Word, AlgebraError> {
    k.ensure_admissible()?;
    let mut letters = Vec::with_capacity(k.weight() as usize);
    for &e in k.entries().iter().rev() {
        letters.extend(std::iter::repeat_n(Letter::X, e as usize - 1));
        letters.push(Letter::Y);
    }
    Ok(Word(letters))
}

pub fn from_word(w: &Word) -> Result<Index, AlgebraError> {
    let malformed = |reason: &str| AlgebraError::Parse {
        text: w.to_string(),
        reason: reason.to_string(),
    };
    match (w.0.first(), w.0.last()) {
        (Some(Letter::X), Some(Letter::Y)) => {}
        _ => return Err(malformed("an admissible word starts with X and ends with Y")),
    }
    let mut entries = Vec::new();
    let mut run = 0u32;
    for &l in &w.0 {
        match l {
            Letter::X => run += 1,
            Letter::Y => {
                entries.push(run + 1);
                run = 0;
            }
        }
    }
    entries.reverse();
    Index::new(entries)
}
