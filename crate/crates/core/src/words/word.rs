use std::cmp::Ordering;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

/// Index of a letter in its alphabet.
pub type Letter = u8;

/// A finite word, stored as letter indices.
///
/// The derived ordering is lexicographic with respect to the alphabet order;
/// use [`shortlex`] where length-first ordering is wanted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(a: Letter) -> Self {
        Word(vec![a])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn push(&mut self, a: Letter) {
        self.0.push(a);
    }

    pub fn extend_from_slice(&mut self, other: &[Letter]) {
        self.0.extend_from_slice(other);
    }

    pub fn prepend(&self, a: Letter) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(a);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn append(&self, a: Letter) -> Word {
        let mut v = self.0.clone();
        v.push(a);
        Word(v)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// All factors of length at most `max_len`, with repetitions.
    pub fn factors_up_to(&self, max_len: usize) -> impl Iterator<Item = &[Letter]> + '_ {
        let n = self.0.len();
        (0..=n).flat_map(move |i| (i..=n.min(i + max_len)).map(move |j| &self.0[i..j]))
    }

    pub fn is_factor_of(&self, other: &[Letter]) -> bool {
        is_factor(&self.0, other)
    }
}

impl Deref for Word {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Length-then-lexicographic comparison.
pub fn shortlex(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

pub fn is_factor(needle: &[Letter], hay: &[Letter]) -> bool {
    needle.is_empty() || hay.windows(needle.len()).any(|w| w == needle)
}
