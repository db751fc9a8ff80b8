//! Words over the ordered alphabet `[n]`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = u32;

/// The alphabet `{1 < 2 < ... < n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    n: u32,
}

impl Alphabet {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyAlphabet);
        }
        Ok(Self { n })
    }

    pub fn rank(self) -> u32 {
        self.n
    }

    pub fn contains(self, x: Letter) -> bool {
        (1..=self.n).contains(&x)
    }

    pub fn check(self, x: Letter) -> Result<Letter> {
        if self.contains(x) {
            Ok(x)
        } else {
            Err(Error::LetterOutOfRange { letter: x, n: self.n })
        }
    }

    pub fn letters(self) -> impl Iterator<Item = Letter> + Clone {
        1..=self.n
    }

    /// All words of length exactly `len`, in lexicographic order.
    pub fn words(self, len: usize) -> impl Iterator<Item = Word> {
        let it: Box<dyn Iterator<Item = Word>> = if len == 0 {
            Box::new(std::iter::once(Word::empty()))
        } else {
            Box::new(
                (0..len)
                    .map(|_| self.letters())
                    .multi_cartesian_product()
                    .map(Word),
            )
        };
        it
    }

    /// All words of length at most `max_len`, shortest first.
    pub fn words_up_to(self, max_len: usize) -> impl Iterator<Item = Word> {
        (0..=max_len).flat_map(move |l| self.words(l))
    }
}

/// A finite word; every letter is at least 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&x| x == 0) {
            return Err(Error::LetterOutOfRange { letter: bad, n: 0 });
        }
        Ok(Self(letters))
    }

    /// Builds a word and checks every letter against `a`.
    pub fn over(letters: Vec<Letter>, a: Alphabet) -> Result<Self> {
        for &x in &letters {
            a.check(x)?;
        }
        Ok(Self(letters))
    }

    pub(crate) fn from_vec(letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|&x| x >= 1));
        Self(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_letter(&self) -> Letter {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn check(&self, a: Alphabet) -> Result<()> {
        self.0.iter().try_for_each(|&x| a.check(x).map(|_| ()))
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }

    /// Number of occurrences of `x`.
    pub fn count(&self, x: Letter) -> usize {
        self.0.iter().filter(|&&y| y == x).count()
    }
}

impl fmt::Display for Word {
    /// Digit string when every letter is at most 9, comma-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&x| x <= 9) {
            self.0.iter().try_for_each(|x| write!(f, "{x}"))
        } else {
            write!(f, "{}", self.0.iter().join(","))
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::empty());
        }
        let letters: Vec<Letter> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<Letter>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| Error::Parse(format!("not a digit: {c:?}"))))
                .collect::<Result<_>>()?
        };
        Word::new(letters)
    }
}

impl From<Word> for Vec<Letter> {
    fn from(w: Word) -> Self {
        w.0
    }
}

/// Letter multiplicities of a word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weight(pub Vec<usize>);

impl std::ops::Add for Weight {
    type Output = Weight;

    fn add(self, rhs: Weight) -> Weight {
        Weight(self.0.iter().zip(rhs.0).map(|(a, b)| a + b).collect())
    }
}

pub fn weight(w: &Word, a: Alphabet) -> Result<Weight> {
    let mut counts = vec![0; a.rank() as usize];
    for &x in w.letters() {
        counts[a.check(x)? as usize - 1] += 1;
    }
    Ok(Weight(counts))
}

/// Greedy decomposition into maximal strictly decreasing factors.
pub fn fac(w: &Word) -> Vec<Word> {
    let mut out: Vec<Vec<Letter>> = Vec::new();
    for &x in w.letters() {
        match out.last_mut() {
            Some(f) if *f.last().unwrap() > x => f.push(x),
            _ => out.push(vec![x]),
        }
    }
    out.into_iter().map(Word).collect()
}

pub fn mirror(w: &Word) -> Word {
    Word(w.0.iter().rev().copied().collect())
}
