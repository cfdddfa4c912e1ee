//! Prefix, suffix and bifix codes relative to a factorial set.

mod automaton;
mod compose;
mod group;

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{is_recurrent_desk, Alphabet, FactorSet, Letter, Word};

pub use automaton::{minimal_automaton_of_star, DeterministicAutomaton};
pub use compose::{
    compose_codes, decompose_over, maximality_transfer_check, preimage_set, CodingMorphism, Decomposition,
    MaximalityReport,
};
pub use group::{first_returns, group_code_intersection, FiniteGroup, GroupAutomatonSpec, GroupMorphism, Perm};

/// A finite set of nonempty words, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSet {
    alphabet: Alphabet,
    words: Vec<Word>,
}

impl CodeSet {
    pub fn new(alphabet: Alphabet, words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut words: Vec<Word> = words.into_iter().collect();
        if words.iter().any(|w| w.is_empty()) {
            return Err(Error::EmptyWordInCode);
        }
        if words.iter().any(|w| !alphabet.contains_word(w)) {
            return Err(Error::AlphabetMismatch("code word uses unknown letters".into()));
        }
        words.sort();
        words.dedup();
        Ok(CodeSet { alphabet, words })
    }

    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        CodeSet::new(alphabet.clone(), alphabet.parse_list(text)?)
    }

    /// The alphabet itself as a code.
    pub fn letters(alphabet: &Alphabet) -> Self {
        let words = alphabet.letters().map(Word::letter).collect();
        CodeSet { alphabet: alphabet.clone(), words }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        self.words.binary_search_by(|x| x.letters().cmp(w)).is_ok()
    }

    pub fn max_len(&self) -> usize {
        max_len(&self.words)
    }

    pub fn is_prefix(&self) -> bool {
        is_prefix_code(&self.words)
    }

    pub fn is_suffix(&self) -> bool {
        is_suffix_code(&self.words)
    }

    pub fn is_bifix(&self) -> bool {
        is_bifix_code(&self.words)
    }

    pub fn format_words(&self) -> Vec<String> {
        self.words.iter().map(|w| self.alphabet.format(w)).collect()
    }
}

pub(crate) fn max_len(x: &[Word]) -> usize {
    x.iter().map(|w| w.len()).max().unwrap_or(0)
}

fn check_nonempty(x: &[Word]) -> Result<()> {
    if x.iter().any(|w| w.is_empty()) {
        Err(Error::EmptyWordInCode)
    } else {
        Ok(())
    }
}

fn proper_prefix_free(x: &[Word]) -> bool {
    let set: HashSet<&[Letter]> = x.iter().map(|w| w.letters()).collect();
    x.iter().all(|w| (1..w.len()).all(|i| !set.contains(&w[..i])))
}

pub fn is_prefix_code(x: &[Word]) -> bool {
    !x.iter().any(|w| w.is_empty()) && proper_prefix_free(x)
}

pub fn is_suffix_code(x: &[Word]) -> bool {
    let rev: Vec<Word> = x.iter().map(Word::reversed).collect();
    is_prefix_code(&rev)
}

pub fn is_bifix_code(x: &[Word]) -> bool {
    is_prefix_code(x) && is_suffix_code(x)
}

/// Sardinas–Patterson test for unique decipherability.
pub fn is_code(x: &[Word]) -> bool {
    if x.iter().any(|w| w.is_empty()) {
        return false;
    }
    let set: BTreeSet<&[Letter]> = x.iter().map(|w| w.letters()).collect();
    if set.len() != x.len() {
        return false;
    }
    // quotient u^{-1}v for u a proper prefix of v
    let residuals = |left: &BTreeSet<Vec<Letter>>, right: &BTreeSet<&[Letter]>| {
        let mut out = BTreeSet::new();
        for u in left {
            for v in right {
                if v.len() > u.len() && v.starts_with(u) {
                    out.insert(v[u.len()..].to_vec());
                }
                if u.len() > v.len() && u.starts_with(v) {
                    out.insert(u[v.len()..].to_vec());
                }
            }
        }
        out
    };
    let xs: BTreeSet<Vec<Letter>> = set.iter().map(|w| w.to_vec()).collect();
    let mut current = BTreeSet::new();
    for u in &set {
        for v in &set {
            if v.len() > u.len() && v.starts_with(u) {
                current.insert(v[u.len()..].to_vec());
            }
        }
    }
    let mut seen: HashSet<BTreeSet<Vec<Letter>>> = HashSet::new();
    loop {
        if current.iter().any(|w| xs.contains(w)) {
            return false;
        }
        if current.is_empty() || !seen.insert(current.clone()) {
            return true;
        }
        current = residuals(&current, &set);
    }
}

/// Whether `w` factorizes over the prefix code `x`.
pub(crate) fn in_star(x: &HashSet<&[Letter]>, max: usize, w: &[Letter]) -> bool {
    let mut i = 0;
    'outer: while i < w.len() {
        for l in 1..=max.min(w.len() - i) {
            if x.contains(&w[i..i + l]) {
                i += l;
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// A parse `w = v·x·u` with respect to a code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Parse {
    pub v: Word,
    pub x: Word,
    pub u: Word,
}

/// Parse counts obtained three independent ways.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ParseCounts {
    pub triples: usize,
    pub suffixes: usize,
    pub prefixes: usize,
}

impl ParseCounts {
    pub fn agree(&self) -> bool {
        self.triples == self.suffixes && self.suffixes == self.prefixes
    }
}

struct Lookup<'a> {
    set: HashSet<&'a [Letter]>,
    max: usize,
}

impl<'a> Lookup<'a> {
    fn new(x: &'a [Word]) -> Self {
        Lookup { set: x.iter().map(|w| w.letters()).collect(), max: max_len(x) }
    }

    fn has_prefix_in(&self, w: &[Letter]) -> bool {
        (1..=self.max.min(w.len())).any(|l| self.set.contains(&w[..l]))
    }

    fn has_suffix_in(&self, w: &[Letter]) -> bool {
        (1..=self.max.min(w.len())).any(|l| self.set.contains(&w[w.len() - l..]))
    }
}

fn require_bifix(x: &[Word]) -> Result<()> {
    check_nonempty(x)?;
    if !is_bifix_code(x) {
        return Err(Error::NotBifixCode);
    }
    Ok(())
}

/// All parses of `w` with respect to the bifix code `x`.
pub fn parses(x: &[Word], w: &[Letter]) -> Result<Vec<Parse>> {
    require_bifix(x)?;
    let look = Lookup::new(x);
    let mut out = Vec::new();
    for i in 0..=w.len() {
        if look.has_suffix_in(&w[..i]) {
            continue;
        }
        for j in i..=w.len() {
            if !look.has_prefix_in(&w[j..]) && in_star(&look.set, look.max, &w[i..j]) {
                out.push(Parse { v: Word::from(&w[..i]), x: Word::from(&w[i..j]), u: Word::from(&w[j..]) });
            }
        }
    }
    Ok(out)
}

pub fn parse_counts(x: &[Word], w: &[Letter]) -> Result<ParseCounts> {
    let triples = parses(x, w)?.len();
    let look = Lookup::new(x);
    let suffixes = (0..=w.len()).filter(|&i| !look.has_prefix_in(&w[i..])).count();
    let prefixes = (0..=w.len()).filter(|&i| !look.has_suffix_in(&w[..i])).count();
    Ok(ParseCounts { triples, suffixes, prefixes })
}

/// `d_X(w)`, by counting suffixes of `w` with no prefix in `x`.
pub fn parse_count(x: &[Word], w: &[Letter]) -> Result<usize> {
    require_bifix(x)?;
    let look = Lookup::new(x);
    Ok((0..=w.len()).filter(|&i| !look.has_prefix_in(&w[i..])).count())
}

fn require_subset(x: &[Word], s: &FactorSet) -> Result<()> {
    if let Some(w) = x.iter().find(|w| !s.contains(w)) {
        return Err(Error::CodeNotInSet(s.format(w)));
    }
    Ok(())
}

fn comparable_with_all<'a>(x: &[Word], mut words: impl Iterator<Item = &'a [Letter]>) -> bool {
    let look = Lookup::new(x);
    let prefixes: HashSet<&[Letter]> = x.iter().flat_map(|w| (0..=w.len()).map(move |i| &w[..i])).collect();
    words.all(|w| prefixes.contains(w) || look.has_prefix_in(w))
}

/// Every member of `s` is prefix-comparable with some word of `x`.
///
/// All members are tested. Since `x ⊂ s`, words of length `max|x|` already
/// decide the answer, so the check is exact once `depth >= max|x|`.
pub fn is_s_maximal_prefix(x: &[Word], s: &FactorSet) -> Result<bool> {
    check_nonempty(x)?;
    if !is_prefix_code(x) {
        return Err(Error::NotPrefixCode);
    }
    require_subset(x, s)?;
    if !s.is_certified() {
        return Err(Error::IncompleteSet);
    }
    let needed = max_len(x);
    if needed > s.depth() {
        return Err(Error::InsufficientDepth { needed, have: s.depth() });
    }
    Ok(comparable_with_all(x, s.iter().map(|w| w.letters())))
}

/// Mirror of [`is_s_maximal_prefix`] for the suffix order.
pub fn is_s_maximal_suffix(x: &[Word], s: &FactorSet) -> Result<bool> {
    check_nonempty(x)?;
    if !is_suffix_code(x) {
        return Err(Error::NotSuffixCode);
    }
    require_subset(x, s)?;
    if !s.is_certified() {
        return Err(Error::IncompleteSet);
    }
    let needed = max_len(x);
    if needed > s.depth() {
        return Err(Error::InsufficientDepth { needed, have: s.depth() });
    }
    let rev: Vec<Word> = x.iter().map(Word::reversed).collect();
    let words: Vec<Word> = s.iter().map(Word::reversed).collect();
    Ok(comparable_with_all(&rev, words.iter().map(|w| w.letters())))
}

/// Prefix maximality against an arbitrary finite list of words.
pub fn is_maximal_prefix_in(x: &[Word], words: &[Word]) -> bool {
    comparable_with_all(x, words.iter().map(|w| w.letters()))
}

/// How bifix maximality was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MaximalityMethod {
    /// `s` passed the bounded recurrence check; prefix maximality decides.
    PrefixEquivalence,
    /// No word of `s` can be added keeping the code bifix.
    DirectContainment,
}

/// Bifix maximality in `s`, with the method used.
pub fn s_maximal_bifix_verdict(x: &[Word], s: &FactorSet) -> Result<(bool, MaximalityMethod)> {
    require_bifix(x)?;
    require_subset(x, s)?;
    let bound = max_len(x).min(s.depth() / 2).max(1).min(s.depth());
    if is_recurrent_desk(s, bound)?.holds() {
        return Ok((is_s_maximal_prefix(x, s)?, MaximalityMethod::PrefixEquivalence));
    }
    let look = Lookup::new(x);
    let members: HashSet<&[Letter]> = x.iter().map(|w| w.letters()).collect();
    for y in s.iter().filter(|y| !y.is_empty() && !members.contains(y.letters())) {
        let blocked = look.has_prefix_in(y)
            || look.has_suffix_in(y)
            || x.iter().any(|w| w.len() > y.len() && (w.starts_with(y) || w.ends_with(y)));
        if !blocked {
            return Ok((false, MaximalityMethod::DirectContainment));
        }
    }
    Ok((true, MaximalityMethod::DirectContainment))
}

pub fn is_s_maximal_bifix(x: &[Word], s: &FactorSet) -> Result<bool> {
    Ok(s_maximal_bifix_verdict(x, s)?.0)
}

fn degree_preconditions(x: &[Word], s: &FactorSet) -> Result<()> {
    require_bifix(x)?;
    require_subset(x, s)?;
    let needed = 3 * max_len(x) + 1;
    if s.depth() < needed {
        return Err(Error::InsufficientDepth { needed, have: s.depth() });
    }
    if !is_s_maximal_bifix(x, s)? {
        return Err(Error::NotSMaximal("code is not an S-maximal bifix code".into()));
    }
    Ok(())
}

/// `d_X(S)`: the largest parse count over members of `s`.
pub fn s_degree(x: &[Word], s: &FactorSet) -> Result<usize> {
    degree_preconditions(x, s)?;
    let mut d = 0;
    for w in s.iter() {
        d = d.max(parse_count(x, w)?);
    }
    Ok(d)
}

/// `I(X) = {w ∈ S | d_X(w) < d}` on the truncation.
pub fn internal_factors(x: &[Word], s: &FactorSet) -> Result<Vec<Word>> {
    let d = s_degree(x, s)?;
    let mut out = Vec::new();
    for w in s.iter() {
        if parse_count(x, w)? < d {
            out.push(w.clone());
        }
    }
    out.sort();
    Ok(out)
}

/// Words `w` with `uwv ∈ X` for nonempty `u`, `v`.
pub fn internal_factors_of(x: &[Word]) -> Vec<Word> {
    let mut out: BTreeSet<Word> = BTreeSet::new();
    for w in x {
        for i in 1..w.len() {
            for j in i..w.len() {
                out.insert(Word::from(&w[i..j]));
            }
        }
    }
    out.into_iter().collect()
}

/// `K(X) = I(X) ∩ X`.
pub fn kernel(x: &[Word], s: &FactorSet) -> Result<Vec<Word>> {
    let internal: HashSet<Word> = internal_factors(x, s)?.into_iter().collect();
    let mut k: Vec<Word> = x.iter().filter(|w| internal.contains(*w)).cloned().collect();
    k.sort();
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{Completeness, Source};

    fn words(a: &Alphabet, text: &str) -> Vec<Word> {
        a.parse_list(text).unwrap()
    }

    fn abc() -> Alphabet {
        Alphabet::from_chars("abc").unwrap()
    }

    fn periodic(depth: usize) -> FactorSet {
        let a = Alphabet::from_chars("ab").unwrap();
        let w = [0u8, 1].repeat(depth + 2);
        FactorSet::factors_of(a, depth, [w.as_slice()], Completeness::CertifiedComplete, Source::Explicit).unwrap()
    }

    #[test]
    fn predicates() {
        let a = abc();
        assert!(is_bifix_code(&words(&a, "aa,ab,ac,ba,ca")));
        let x = words(&a, "a,ab");
        assert!(!is_prefix_code(&x));
        assert!(is_suffix_code(&x));
        assert!(is_bifix_code(&words(&a, "ab,acb,acc")));
        assert!(is_code(&x));
        assert!(!is_code(&words(&a, "a,ab,b")));
        assert!(is_code(&words(&a, "a,ac,cc")) && !is_prefix_code(&words(&a, "a,ac,cc")));
        assert!(matches!(CodeSet::new(a.clone(), vec![Word::empty()]), Err(Error::EmptyWordInCode)));
    }

    #[test]
    fn sardinas_patterson_oracle() {
        // oracle: brute-force two distinct factorizations of words up to length 8
        let a = Alphabet::from_chars("ab").unwrap();
        for text in ["a,ab,bb", "a,ab,ba", "aa,ab,b", "a,ba,bb", "ab,ba,aba", "b,ab,aab"] {
            let x = words(&a, text);
            let mut ambiguous = false;
            for len in 1..=8usize {
                for bits in 0..(1u32 << len) {
                    let w: Vec<Letter> = (0..len).map(|i| ((bits >> i) & 1) as Letter).collect();
                    if factorizations(&x, &w) > 1 {
                        ambiguous = true;
                    }
                }
            }
            assert_eq!(is_code(&x), !ambiguous, "{text}");
        }
    }

    fn factorizations(x: &[Word], w: &[Letter]) -> usize {
        let mut ways = vec![0usize; w.len() + 1];
        ways[0] = 1;
        for i in 0..w.len() {
            if ways[i] == 0 {
                continue;
            }
            for c in x {
                if w[i..].starts_with(c) {
                    ways[i + c.len()] += ways[i];
                }
            }
        }
        ways[w.len()]
    }

    #[test]
    fn periodic_parses() {
        let s = periodic(20);
        let a = s.alphabet().clone();
        let x = words(&a, "abab,ba");
        let w = a.parse("abab").unwrap();
        assert_eq!(parses(&x, &w).unwrap().len(), 3);
        assert!(parse_counts(&x, &w).unwrap().agree());
        assert_eq!(parse_count(&x, &[]).unwrap(), 1);
        assert_eq!(s_degree(&x, &s).unwrap(), 3);
        let z = words(&a, "ab,ba");
        assert!(is_s_maximal_bifix(&z, &s).unwrap());
        assert_eq!(s_degree(&z, &s).unwrap(), 2);
    }

    #[test]
    fn finite_counterexample_is_not_maximal() {
        let a = Alphabet::from_chars("ab").unwrap();
        let s = FactorSet::from_factorial(
            a.clone(),
            2,
            words(&a, "a,b,aa,ab,ba"),
            Completeness::CertifiedComplete,
            Source::Explicit,
        )
        .unwrap();
        assert!(!is_s_maximal_prefix(&words(&a, "aa,ba"), &s).unwrap());
        assert!(is_s_maximal_prefix(&words(&a, "a,ba"), &s).unwrap());
        assert!(is_s_maximal_prefix(&words(&a, "a,b"), &s).unwrap());
    }

    #[test]
    fn maximality_in_fibonacci() {
        let a = Alphabet::from_chars("ab").unwrap();
        let mut w = vec![0u8];
        while w.len() < 500 {
            w = w.iter().flat_map(|&c| if c == 0 { vec![0, 1] } else { vec![0] }).collect();
        }
        let s = FactorSet::factors_of(a.clone(), 12, [w.as_slice()], Completeness::CertifiedComplete, Source::Explicit)
            .unwrap();
        assert!(is_s_maximal_prefix(&words(&a, "a,ba"), &s).unwrap());
        assert!(!is_s_maximal_bifix(&words(&a, "aa"), &s).unwrap());
        let x2 = words(&a, "aa,ab,ba");
        assert!(is_s_maximal_bifix(&x2, &s).unwrap());
        assert_eq!(s_degree(&x2, &s).unwrap(), 2);
        assert_eq!(kernel(&x2, &s).unwrap(), Vec::<Word>::new());
        let letters = words(&a, "a,b");
        assert_eq!(s_degree(&letters, &s).unwrap(), 1);
        assert!(kernel(&letters, &s).unwrap().is_empty());
        assert!(is_s_maximal_suffix(&words(&a, "a,ab"), &s).unwrap());
    }

    #[test]
    fn internal_factor_characterization() {
        let s = periodic(20);
        let a = s.alphabet().clone();
        let x = words(&a, "abab,ba");
        let by_degree = internal_factors(&x, &s).unwrap();
        let direct: Vec<Word> = internal_factors_of(&x).into_iter().filter(|w| s.contains(w)).collect();
        assert_eq!(by_degree, direct);
    }
}
