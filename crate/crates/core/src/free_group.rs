//! Freely reduced words and permutations of `[k]`.
//!
//! Free generators are named `a`, `b`, `c`, ...; the inverse of a generator
//! is written in upper case (`A` = `a⁻¹`). `a^-1` and `a⁻¹` are accepted on
//! input.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

pub const MAX_RANK: usize = 26;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("unexpected character {0:?} in free word")]
    BadChar(char),
    #[error("generator {letter:?} outside rank {rank}")]
    OutOfRank { letter: char, rank: usize },
    #[error("invalid permutation {0:?}")]
    BadPermutation(Vec<usize>),
}

/// A letter: `+g` is generator `g` (1-based), `-g` its inverse.
pub type Letter = i32;

fn letter_key(l: Letter) -> u32 {
    2 * (l.unsigned_abs() - 1) + u32::from(l < 0)
}

/// Freely reduced word. Ordered ShortLex with `a < A < b < B < ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeWord(Vec<Letter>);

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    /// Generator `g` (0-based).
    pub fn generator(g: usize) -> Self {
        FreeWord(vec![g as Letter + 1])
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            assert!(l != 0, "letter 0 is not a generator");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord(out)
    }

    pub fn parse(text: &str, rank: usize) -> Result<Self, WordError> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut letters = Vec::new();
        let mut i = 0;
        if chars == ['1'] {
            return Ok(Self::identity());
        }
        while i < chars.len() {
            let c = chars[i];
            if !c.is_ascii_alphabetic() {
                return Err(WordError::BadChar(c));
            }
            let g = (c.to_ascii_lowercase() as u8 - b'a') as usize;
            if g >= rank {
                return Err(WordError::OutOfRank { letter: c, rank });
            }
            let mut l = g as Letter + 1;
            if c.is_ascii_uppercase() {
                l = -l;
            }
            i += 1;
            if chars[i..].starts_with(&['^', '-', '1']) {
                l = -l;
                i += 3;
            } else if chars[i..].starts_with(&['⁻', '¹']) {
                l = -l;
                i += 2;
            }
            letters.push(l);
        }
        Ok(Self::from_letters(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index used, plus one.
    pub fn rank_used(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn multiply(&self, other: &FreeWord) -> FreeWord {
        FreeWord::from_letters(self.0.iter().chain(&other.0).copied())
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|l| -l).collect())
    }
}

impl Ord for FreeWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().map(|&l| letter_key(l)).cmp(other.0.iter().map(|&l| letter_key(l))))
    }
}

impl PartialOrd for FreeWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for &l in &self.0 {
            let c = (b'a' + (l.unsigned_abs() - 1) as u8) as char;
            let c = if l < 0 { c.to_ascii_uppercase() } else { c };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Serialize for FreeWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FreeWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        FreeWord::parse(&text, MAX_RANK).map_err(serde::de::Error::custom)
    }
}

/// A permutation of `{0, .., k-1}` stored by images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(k: usize) -> Self {
        Permutation((0..k).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, WordError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(WordError::BadPermutation(images));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    /// One-line notation with points `1..=k`, e.g. `[2, 1]` for a swap.
    pub fn from_one_line(images: &[usize]) -> Result<Self, WordError> {
        if images.contains(&0) {
            return Err(WordError::BadPermutation(images.to_vec()));
        }
        Self::from_images(images.iter().map(|&i| i - 1).collect())
            .map_err(|_| WordError::BadPermutation(images.to_vec()))
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i + 1).collect()
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&j| self.0[j]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Cycle notation on points `1..=k`, e.g. `(1 2)`; `id` for the identity.
    pub fn cycle_notation(&self) -> String {
        let mut seen = vec![false; self.0.len()];
        let mut out = String::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = vec![start + 1];
            seen[start] = true;
            let mut p = self.0[start];
            while p != start {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.0[p];
            }
            let body: Vec<String> = cycle.iter().map(usize::to_string).collect();
            out.push_str(&format!("({})", body.join(" ")));
        }
        if out.is_empty() {
            "id".into()
        } else {
            out
        }
    }
}

/// Whether the permutations generate a transitive group on `[k]`.
pub fn is_transitive(k: usize, gens: &[Permutation]) -> bool {
    if k == 0 {
        return false;
    }
    let mut seen = vec![false; k];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(p) = stack.pop() {
        for g in gens {
            for q in [g.apply(p), g.inverse().apply(p)] {
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
    }
    seen.into_iter().all(|x| x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_reduce() {
        let w = FreeWord::parse("ab a^-1", 2).unwrap();
        assert_eq!(w.to_string(), "abA");
        assert_eq!(FreeWord::parse("a⁻¹", 2).unwrap().to_string(), "A");
        assert!(FreeWord::parse("aA", 2).unwrap().is_identity());
        assert!(FreeWord::parse("1", 2).unwrap().is_identity());
        assert!(matches!(FreeWord::parse("c", 2), Err(WordError::OutOfRank { .. })));
        assert!(matches!(FreeWord::parse("a*", 2), Err(WordError::BadChar('*'))));
    }

    #[test]
    fn group_laws() {
        let x = FreeWord::parse("abAAb", 2).unwrap();
        let y = FreeWord::parse("Bab", 2).unwrap();
        assert!(x.multiply(&x.inverse()).is_identity());
        assert_eq!(x.multiply(&y).multiply(&x), x.multiply(&y.multiply(&x)));
    }

    #[test]
    fn shortlex_order() {
        let p = |s| FreeWord::parse(s, 2).unwrap();
        assert!(p("a") < p("A"));
        assert!(p("A") < p("b"));
        assert!(p("b") < p("aa"));
        assert!(p("1") < p("a"));
    }

    #[test]
    fn permutations() {
        let swap = Permutation::from_one_line(&[2, 1]).unwrap();
        assert_eq!(swap.cycle_notation(), "(1 2)");
        assert!(swap.compose(&swap).is_identity());
        let cyc = Permutation::from_one_line(&[2, 3, 1]).unwrap();
        assert_eq!(cyc.compose(&cyc.inverse()), Permutation::identity(3));
        assert!(is_transitive(3, &[cyc]));
        assert!(!is_transitive(3, &[Permutation::from_one_line(&[2, 1, 3]).unwrap()]));
        assert!(Permutation::from_one_line(&[1, 1]).is_err());
        assert!(Permutation::from_one_line(&[0, 1]).is_err());
    }
}
