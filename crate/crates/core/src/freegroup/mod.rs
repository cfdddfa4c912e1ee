//! Free-group words, subgroup graphs and tame bases.

mod fold;
mod tame;

pub use fold::{fold, is_basis, FoldedGraph, Index};
pub use tame::{replay, tame_decompose, Elementary, TameDecomposition, TameOutcome, TameStepJson};

use std::collections::HashSet;
use std::fmt;

use crate::codes::{in_star, is_bifix_code, CodeSet};
use crate::error::{Error, Result};
use crate::words::{Alphabet, FactorSet, Letter, Word};

/// A letter or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    pub letter: Letter,
    pub inverse: bool,
}

impl Gen {
    pub fn pos(letter: Letter) -> Self {
        Gen { letter, inverse: false }
    }

    pub fn neg(letter: Letter) -> Self {
        Gen { letter, inverse: true }
    }

    pub fn inv(self) -> Self {
        Gen { letter: self.letter, inverse: !self.inverse }
    }
}

/// An element of the free group, kept reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedWord(Vec<Gen>);

impl SignedWord {
    pub fn identity() -> Self {
        SignedWord(Vec::new())
    }

    /// Reduces on construction.
    pub fn new(gens: Vec<Gen>) -> Self {
        let mut out: Vec<Gen> = Vec::with_capacity(gens.len());
        for g in gens {
            if out.last() == Some(&g.inv()) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        SignedWord(out)
    }

    pub fn positive(w: &[Letter]) -> Self {
        SignedWord(w.iter().map(|&a| Gen::pos(a)).collect())
    }

    pub fn gens(&self) -> &[Gen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        SignedWord(self.0.iter().rev().map(|g| g.inv()).collect())
    }

    pub fn mul(&self, other: &SignedWord) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SignedWord::new(v)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(SignedWord::identity(), |acc, _| acc.mul(&base))
    }

    /// The positive word, if no inverse letters occur.
    pub fn as_positive(&self) -> Option<Word> {
        self.0.iter().all(|g| !g.inverse).then(|| Word::new(self.0.iter().map(|g| g.letter).collect()))
    }

    /// Image under the morphism sending each letter to `images[letter]`.
    pub fn substitute(&self, images: &[SignedWord]) -> SignedWord {
        let mut v = Vec::new();
        for g in &self.0 {
            let img = &images[g.letter as usize];
            if g.inverse {
                v.extend(img.inverse().0);
            } else {
                v.extend_from_slice(&img.0);
            }
        }
        SignedWord::new(v)
    }

    pub fn format(&self, alphabet: &Alphabet) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let sep = if alphabet.is_single_char() { "" } else { " " };
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|g| {
                let s = alphabet.symbol(g.letter);
                if g.inverse {
                    format!("{s}^-1")
                } else {
                    s.to_string()
                }
            })
            .collect();
        parts.join(sep)
    }

    /// Products of letters, parenthesised groups and integer powers, e.g.
    /// `(cba)(ba)^-1` or `c^-2 cca`. `1` is the identity.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let mut p = Parser { alphabet, chars: text.chars().collect(), pos: 0 };
        let w = p.product()?;
        p.skip_ws();
        if p.pos != p.chars.len() {
            return Err(Error::Parse(format!("unexpected `{}` in `{text}`", p.chars[p.pos])));
        }
        Ok(w)
    }
}

impl fmt::Display for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|g| if g.inverse { format!("#{}^-1", g.letter) } else { format!("#{}", g.letter) })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

struct Parser<'a> {
    alphabet: &'a Alphabet,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn product(&mut self) -> Result<SignedWord> {
        let mut acc = SignedWord::identity();
        while let Some(c) = self.peek() {
            if c == ')' {
                break;
            }
            let atoms = self.atom()?;
            let k = self.exponent()?;
            acc = acc.mul(&atoms.pow(k));
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| Error::Parse(format!("bad exponent `{s}`")))
    }

    fn atom(&mut self) -> Result<SignedWord> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.product()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse("unbalanced parenthesis".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('1') if self.alphabet.letter("1").is_err() => {
                self.pos += 1;
                Ok(SignedWord::identity())
            }
            Some(_) => {
                let start = self.pos;
                if self.alphabet.is_single_char() {
                    self.pos += 1;
                } else {
                    while self.chars.get(self.pos).is_some_and(|c| c.is_alphanumeric() || *c == '_') {
                        self.pos += 1;
                    }
                    if self.pos == start {
                        self.pos += 1;
                    }
                }
                let sym: String = self.chars[start..self.pos].iter().collect();
                Ok(SignedWord::positive(&[self.alphabet.letter(&sym)?]))
            }
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SaturationVerdict {
    SaturatedUpTo(usize),
    /// A member of the set in exactly one of `X*` and `<X>`.
    Counterexample {
        word: Word,
        in_star: bool,
    },
}

impl SaturationVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, SaturationVerdict::SaturatedUpTo(_))
    }
}

/// Compares `X* ∩ S` with `<X> ∩ S` on every member of the truncation.
pub fn saturation_check(x: &CodeSet, s: &FactorSet) -> Result<SaturationVerdict> {
    if !is_bifix_code(x.words()) {
        return Err(Error::NotBifixCode);
    }
    if x.alphabet() != s.alphabet() {
        return Err(Error::AlphabetMismatch("code and set use different alphabets".into()));
    }
    if x.max_len() > s.depth() {
        return Err(Error::InsufficientDepth { needed: x.max_len(), have: s.depth() });
    }
    if let Some(w) = x.words().iter().find(|w| !s.contains(w)) {
        return Err(Error::CodeNotInSet(s.format(w)));
    }
    let g = fold(x.alphabet().len(), x.words().iter().map(|w| SignedWord::positive(w)));
    let set: HashSet<&[Letter]> = x.words().iter().map(|w| w.letters()).collect();
    for w in s.iter() {
        let star = in_star(&set, x.max_len(), w);
        if star != g.contains(&SignedWord::positive(w)) {
            return Ok(SaturationVerdict::Counterexample { word: w.clone(), in_star: star });
        }
    }
    Ok(SaturationVerdict::SaturatedUpTo(s.depth()))
}
