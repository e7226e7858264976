//! Finite words over the three-letter alphabet `{0, 1, 2}`.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A letter of the alphabet `A3 = {0, 1, 2}`.
pub type Letter = u8;

/// Size of the full alphabet.
pub const ALPHABET_SIZE: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("letter {letter} at position {position} is outside the alphabet {{0,1,2}}")]
    BadLetter { letter: u8, position: usize },
    #[error("unexpected character {ch:?} at position {position}, expected a digit 0, 1 or 2")]
    BadChar { ch: char, position: usize },
}

/// A finite word; the empty word is `ε`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteWord(Vec<Letter>);

impl FiniteWord {
    pub fn empty() -> Self {
        FiniteWord(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Result<Self, WordError> {
        if let Some((position, &letter)) = letters
            .iter()
            .enumerate()
            .find(|(_, &l)| l as usize >= ALPHABET_SIZE)
        {
            return Err(WordError::BadLetter { letter, position });
        }
        Ok(FiniteWord(letters))
    }

    /// Builds a word from letters already known to be in range.
    pub(crate) fn from_vec_unchecked(letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|&l| (l as usize) < ALPHABET_SIZE));
        FiniteWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    /// `|u|_a`, the number of occurrences of `a`.
    pub fn count(&self, a: Letter) -> usize {
        self.0.iter().filter(|&&l| l == a).count()
    }

    /// Occurrence counts of every letter, indexed by letter.
    pub fn counts(&self) -> [usize; ALPHABET_SIZE] {
        let mut c = [0; ALPHABET_SIZE];
        for &l in &self.0 {
            c[l as usize] += 1;
        }
        c
    }

    /// Number of distinct letters occurring in the word.
    pub fn alphabet_size(&self) -> usize {
        self.counts().iter().filter(|&&c| c > 0).count()
    }

    pub fn concat(&self, other: &FiniteWord) -> FiniteWord {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        FiniteWord(v)
    }

    pub fn push(&mut self, a: Letter) {
        assert!((a as usize) < ALPHABET_SIZE, "letter {a} out of range");
        self.0.push(a);
    }

    pub fn prefix(&self, len: usize) -> FiniteWord {
        FiniteWord(self.0[..len.min(self.len())].to_vec())
    }

    pub fn is_prefix_of(&self, other: &FiniteWord) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_suffix_of(&self, other: &FiniteWord) -> bool {
        other.0.ends_with(&self.0)
    }

    /// Applies a letter-to-letter relabeling; `map[a]` is the image of `a`.
    pub fn relabel(&self, map: &[Letter; ALPHABET_SIZE]) -> FiniteWord {
        FiniteWord(self.0.iter().map(|&l| map[l as usize]).collect())
    }
}

/// `π_i`: deletes every occurrence of `i`, keeping the order of the remaining letters.
pub fn erase(w: &FiniteWord, i: Letter) -> FiniteWord {
    FiniteWord(w.0.iter().copied().filter(|&l| l != i).collect())
}

impl Deref for FiniteWord {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for FiniteWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, WordError> {
        s.chars()
            .enumerate()
            .map(|(position, ch)| match ch {
                '0'..='2' => Ok(ch as u8 - b'0'),
                _ => Err(WordError::BadChar { ch, position }),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(FiniteWord)
    }
}

impl Serialize for FiniteWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FiniteWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
