use std::borrow::Borrow;
use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

impl Borrow<[Letter]> for Word {
    fn borrow(&self) -> &[Letter] {
        self.letters()
    }
}

/// Whether a truncation is known to equal `S ∩ A^{≤depth}` exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Completeness {
    CertifiedComplete,
    PossiblyIncomplete,
}

/// Where a factor set came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "detail", rename_all = "kebab-case")]
pub enum Source {
    Morphic(String),
    Iet(String),
    Explicit,
    Derived(String),
    Decoded(String),
    Replayed(String),
}

impl std::fmt::Display for Source {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Source::Morphic(d) => write!(f, "fixed point of {d}"),
            Source::Iet(d) => write!(f, "coding of {d}"),
            Source::Explicit => f.write_str("explicit"),
            Source::Derived(d) => write!(f, "derived set {d}"),
            Source::Decoded(d) => write!(f, "decoding {d}"),
            Source::Replayed(d) => write!(f, "replayed {d}"),
        }
    }
}

/// A factorial language truncated at a fixed depth.
///
/// Holds every member word of length at most `depth`, indexed by length.
/// Values are immutable once built.
#[derive(Clone, Debug)]
pub struct FactorSet {
    alphabet: Alphabet,
    depth: usize,
    completeness: Completeness,
    source: Source,
    members: HashSet<Word>,
    by_len: Vec<Vec<Word>>,
}

impl FactorSet {
    /// Build from a word list that must already be factorial.
    pub fn from_factorial<I>(
        alphabet: Alphabet,
        depth: usize,
        words: I,
        completeness: Completeness,
        source: Source,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = Word>,
    {
        let mut members: HashSet<Word> = HashSet::new();
        members.insert(Word::empty());
        for w in words {
            if w.len() > depth {
                return Err(Error::DepthExceeded { requested: w.len(), depth });
            }
            if !alphabet.contains_word(&w) {
                return Err(Error::AlphabetMismatch(format!("word {:?} uses unknown letters", w)));
            }
            members.insert(w);
        }
        for w in &members {
            if !w.is_empty() && (!members.contains(&w[1..]) || !members.contains(&w[..w.len() - 1])) {
                return Err(Error::Invalid(format!("set is not factorial at `{}`", alphabet.format(w))));
            }
        }
        Ok(Self::assemble(alphabet, depth, members, completeness, source))
    }

    /// The factors of length at most `depth` of the given words.
    pub fn factors_of<'a, I>(
        alphabet: Alphabet,
        depth: usize,
        generators: I,
        completeness: Completeness,
        source: Source,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = &'a [Letter]>,
    {
        let mut members: HashSet<Word> = HashSet::new();
        members.insert(Word::empty());
        for g in generators {
            if g.iter().any(|&l| l as usize >= alphabet.len()) {
                return Err(Error::AlphabetMismatch("generator uses unknown letters".into()));
            }
            collect_factors(g, depth, &mut members);
        }
        Ok(Self::assemble(alphabet, depth, members, completeness, source))
    }

    fn assemble(
        alphabet: Alphabet,
        depth: usize,
        members: HashSet<Word>,
        completeness: Completeness,
        source: Source,
    ) -> Self {
        let mut by_len = vec![Vec::new(); depth + 1];
        for w in &members {
            by_len[w.len()].push(w.clone());
        }
        for level in &mut by_len {
            level.sort();
        }
        FactorSet { alphabet, depth, completeness, source, members, by_len }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn completeness(&self) -> Completeness {
        self.completeness
    }

    pub fn is_certified(&self) -> bool {
        self.completeness == Completeness::CertifiedComplete
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        self.members.contains(w)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All members, shortest first, each length block sorted.
    pub fn iter(&self) -> impl Iterator<Item = &Word> + '_ {
        self.by_len.iter().flatten()
    }

    /// Members of length at most `n` (clamped to the depth).
    pub fn words_up_to(&self, n: usize) -> impl Iterator<Item = &Word> + '_ {
        self.by_len[..=n.min(self.depth)].iter().flatten()
    }

    pub fn factors_of_length(&self, n: usize) -> Result<&[Word]> {
        self.by_len.get(n).map(Vec::as_slice).ok_or(Error::DepthExceeded { requested: n, depth: self.depth })
    }

    /// `p_n = Card(S ∩ A^n)`; needs a certified truncation.
    pub fn complexity(&self, n: usize) -> Result<usize> {
        if n > self.depth {
            return Err(Error::DepthExceeded { requested: n, depth: self.depth });
        }
        if !self.is_certified() {
            return Err(Error::IncompleteSet);
        }
        Ok(self.by_len[n].len())
    }

    /// Letters of the alphabet that belong to the set.
    pub fn letters_present(&self) -> Vec<Letter> {
        self.alphabet.letters().filter(|&a| self.contains(&[a])).collect()
    }

    /// Same set cut at a smaller depth.
    pub fn truncate(&self, depth: usize) -> FactorSet {
        let depth = depth.min(self.depth);
        let members: HashSet<Word> = self.words_up_to(depth).cloned().collect();
        Self::assemble(self.alphabet.clone(), depth, members, self.completeness, self.source.clone())
    }

    pub fn with_source(mut self, source: Source) -> FactorSet {
        self.source = source;
        self
    }

    pub fn with_completeness(mut self, completeness: Completeness) -> FactorSet {
        self.completeness = completeness;
        self
    }

    /// Same set with letters renamed through `map` onto `alphabet`.
    pub fn relabel(&self, alphabet: Alphabet, map: &[Letter]) -> Result<FactorSet> {
        if map.len() != self.alphabet.len() || map.iter().any(|&l| l as usize >= alphabet.len()) {
            return Err(Error::AlphabetMismatch("relabel map does not fit".into()));
        }
        let members: HashSet<Word> = self.iter().map(|w| w.iter().map(|&l| map[l as usize]).collect()).collect();
        Ok(Self::assemble(alphabet, self.depth, members, self.completeness, self.source.clone()))
    }

    pub fn format(&self, w: &[Letter]) -> String {
        self.alphabet.format(&Word::from(w))
    }

    pub fn parse(&self, text: &str) -> Result<Word> {
        self.alphabet.parse(text)
    }

    /// Membership-checked parse.
    pub fn member(&self, text: &str) -> Result<Word> {
        let w = self.parse(text)?;
        if !self.contains(&w) {
            return Err(Error::NotAMember(text.to_string()));
        }
        Ok(w)
    }

    pub fn to_json(&self) -> FactorSetJson {
        let mut words: Vec<&Word> = self.members.iter().collect();
        words.sort();
        FactorSetJson {
            alphabet: self.alphabet.symbols().to_vec(),
            depth: self.depth,
            completeness: self.completeness,
            source: self.source.clone(),
            words: words.into_iter().map(|w| self.alphabet.format(w)).collect(),
        }
    }

    pub fn from_json(json: &FactorSetJson) -> Result<FactorSet> {
        let alphabet = Alphabet::new(json.alphabet.iter().cloned())?;
        let words = json.words.iter().map(|w| alphabet.parse(w)).collect::<Result<Vec<_>>>()?;
        FactorSet::from_factorial(alphabet, json.depth, words, json.completeness, json.source.clone())
    }
}

impl PartialEq for FactorSet {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.depth == other.depth && self.members == other.members
    }
}

/// Serialized form of a [`FactorSet`]; words sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSetJson {
    pub alphabet: Vec<String>,
    pub depth: usize,
    pub completeness: Completeness,
    pub source: Source,
    pub words: Vec<String>,
}

pub(crate) fn collect_factors(g: &[Letter], depth: usize, into: &mut HashSet<Word>) {
    for i in 0..g.len() {
        for j in i + 1..=g.len().min(i + depth) {
            if !into.insert(Word::from(&g[i..j])) {
                // longer factors starting at i may still be new
                continue;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    #[test]
    fn factors_of_periodic_word() {
        let a = ab();
        let w = a.parse("abababab").unwrap();
        let s = FactorSet::factors_of(a.clone(), 3, [w.letters()], Completeness::CertifiedComplete, Source::Explicit)
            .unwrap();
        let level2: Vec<String> = s.factors_of_length(2).unwrap().iter().map(|w| a.format(w)).collect();
        assert_eq!(level2, ["ab", "ba"]);
        assert_eq!(s.complexity(0).unwrap(), 1);
        assert_eq!(s.complexity(3).unwrap(), 2);
        assert!(matches!(s.factors_of_length(4), Err(Error::DepthExceeded { .. })));
    }

    #[test]
    fn rejects_non_factorial_input() {
        let a = ab();
        let words = vec![a.parse("a").unwrap(), a.parse("ab").unwrap()];
        let err = FactorSet::from_factorial(a, 2, words, Completeness::CertifiedComplete, Source::Explicit);
        assert!(err.is_err());
    }

    #[test]
    fn complexity_needs_certificate() {
        let a = ab();
        let s = FactorSet::factors_of(
            a.clone(),
            2,
            [a.parse("ab").unwrap().letters()],
            Completeness::PossiblyIncomplete,
            Source::Explicit,
        )
        .unwrap();
        assert_eq!(s.complexity(1), Err(Error::IncompleteSet));
    }

    #[test]
    fn json_round_trip() {
        let a = ab();
        let s = FactorSet::factors_of(
            a.clone(),
            4,
            [a.parse("aabab").unwrap().letters()],
            Completeness::CertifiedComplete,
            Source::Explicit,
        )
        .unwrap();
        let json = serde_json::to_string(&s.to_json()).unwrap();
        let back: FactorSetJson = serde_json::from_str(&json).unwrap();
        assert_eq!(FactorSet::from_json(&back).unwrap(), s);
        assert_eq!(back.words[0], "");
    }
}
