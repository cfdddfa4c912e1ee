//! Substitutions, their fixed points and the factor sets they generate.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::words::{collect_factors, Alphabet, Completeness, FactorSet, Letter, Source, Word};

/// A nonerasing morphism `A* -> B*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    source: Alphabet,
    target: Alphabet,
    images: Vec<Word>,
}

impl Morphism {
    pub fn new(source: Alphabet, target: Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::AlphabetMismatch(format!("{} images for {} letters", images.len(), source.len())));
        }
        for (c, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(Error::Invalid(format!("image of `{}` is empty", source.symbol(c as Letter))));
            }
            if !target.contains_word(img) {
                return Err(Error::AlphabetMismatch("image uses letters outside the target".into()));
            }
        }
        Ok(Morphism { source, target, images })
    }

    pub fn endo(alphabet: Alphabet, images: Vec<Word>) -> Result<Self> {
        Morphism::new(alphabet.clone(), alphabet, images)
    }

    /// Endomorphism from rules such as `a->ab; b->a` over a known alphabet.
    pub fn parse_over(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let mut images: Vec<Option<Word>> = vec![None; alphabet.len()];
        for rule in text.split([';', '\n']).map(str::trim).filter(|r| !r.is_empty()) {
            let (lhs, rhs) = rule.split_once("->").ok_or_else(|| Error::Parse(format!("rule `{rule}` lacks `->`")))?;
            let c = alphabet.letter(lhs.trim())?;
            if images[c as usize].is_some() {
                return Err(Error::Parse(format!("letter `{}` has two rules", lhs.trim())));
            }
            images[c as usize] = Some(alphabet.parse(rhs)?);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(c, img)| img.ok_or_else(|| Error::Parse(format!("no rule for `{}`", alphabet.symbol(c as Letter)))))
            .collect::<Result<Vec<_>>>()?;
        Morphism::endo(alphabet.clone(), images)
    }

    /// Endomorphism from rules, with the alphabet read off the left-hand
    /// sides in order of appearance.
    pub fn parse(text: &str) -> Result<Self> {
        let mut symbols = Vec::new();
        for rule in text.split([';', '\n']).map(str::trim).filter(|r| !r.is_empty()) {
            let (lhs, _) = rule.split_once("->").ok_or_else(|| Error::Parse(format!("rule `{rule}` lacks `->`")))?;
            symbols.push(lhs.trim().to_string());
        }
        let alphabet = Alphabet::new(symbols).map_err(|e| Error::Parse(e.to_string()))?;
        Morphism::parse_over(&alphabet, text)
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        let images = alphabet.letters().map(Word::letter).collect();
        Morphism { source: alphabet.clone(), target: alphabet, images }
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, c: Letter) -> &Word {
        &self.images[c as usize]
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn min_image_len(&self) -> usize {
        self.images.iter().map(|w| w.len()).min().unwrap_or(0)
    }

    pub fn apply(&self, w: &[Letter]) -> Result<Word> {
        if w.iter().any(|&c| c as usize >= self.source.len()) {
            return Err(Error::AlphabetMismatch("word is not over the source alphabet".into()));
        }
        Ok(self.apply_unchecked(w))
    }

    pub(crate) fn apply_unchecked(&self, w: &[Letter]) -> Word {
        let mut out = Word::empty();
        for &c in w {
            out.extend_from_slice(&self.images[c as usize]);
        }
        out
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &Morphism) -> Result<Morphism> {
        if inner.target != self.source {
            return Err(Error::AlphabetMismatch("inner target differs from outer source".into()));
        }
        let images = inner.images.iter().map(|w| self.apply_unchecked(w)).collect();
        Ok(Morphism { source: inner.source.clone(), target: self.target.clone(), images })
    }

    pub fn power(&self, k: usize) -> Result<Morphism> {
        if !self.is_endomorphism() {
            return Err(Error::AlphabetMismatch("power of a non-endomorphism".into()));
        }
        let mut m = Morphism::identity(self.source.clone());
        for _ in 0..k {
            m = self.compose(&m)?;
        }
        Ok(m)
    }

    /// Smallest `k <= k_max` such that every letter occurs in every `f^k(c)`.
    pub fn is_primitive(&self, k_max: usize) -> Primitivity {
        if !self.is_endomorphism() {
            return Primitivity::NotWithin(k_max);
        }
        let n = self.source.len();
        let step: Vec<Vec<bool>> =
            (0..n).map(|c| (0..n).map(|b| self.images[c].contains(&(b as Letter))).collect()).collect();
        let mut reach = step.clone();
        for k in 1..=k_max {
            if reach.iter().all(|row| row.iter().all(|&x| x)) {
                return Primitivity::PrimitiveWithExponent(k);
            }
            reach = (0..n).map(|i| (0..n).map(|j| (0..n).any(|m| reach[i][m] && step[m][j])).collect()).collect();
        }
        Primitivity::NotWithin(k_max)
    }

    pub fn format_rules(&self) -> String {
        self.source
            .letters()
            .map(|c| format!("{}->{}", self.source.symbol(c), self.target.format(&self.images[c as usize])))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_rules())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Primitivity {
    PrimitiveWithExponent(usize),
    NotWithin(usize),
}

impl Primitivity {
    pub fn is_primitive(&self) -> bool {
        matches!(self, Primitivity::PrimitiveWithExponent(_))
    }
}

/// Bound on the exponent searched by [`factor_set_of_fixed_point`].
pub fn primitivity_bound(alphabet_size: usize) -> usize {
    // Wielandt's bound for primitive boolean matrices
    let n = alphabet_size.max(1);
    (n - 1) * (n - 1) + 1
}

/// `ψ_a`: fixes `a` and sends every other letter `b` to `ab`.
pub fn episturmian_morphism(a: &str, alphabet: &Alphabet) -> Result<Morphism> {
    let a = alphabet.letter(a)?;
    let images = alphabet.letters().map(|b| if b == a { Word::letter(a) } else { Word::new(vec![a, b]) }).collect();
    Morphism::endo(alphabet.clone(), images)
}

/// An endomorphism with a seed letter whose image starts with it and grows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointSpec {
    morphism: Morphism,
    seed: Letter,
}

impl FixedPointSpec {
    pub fn new(morphism: Morphism, seed: Letter) -> Result<Self> {
        if !morphism.is_endomorphism() {
            return Err(Error::AlphabetMismatch("fixed points need an endomorphism".into()));
        }
        if seed as usize >= morphism.source().len() {
            return Err(Error::LetterNotInAlphabet(format!("#{seed}")));
        }
        let img = morphism.image(seed);
        let sym = morphism.source().symbol(seed).to_string();
        if img[0] != seed {
            return Err(Error::NonGrowingSeed(format!("image of `{sym}` does not start with it")));
        }
        // nonerasing: f(a) = au with u nonempty is enough for growth
        if img.len() < 2 {
            return Err(Error::NonGrowingSeed(format!("`{sym}` is fixed by the morphism")));
        }
        Ok(FixedPointSpec { morphism, seed })
    }

    pub fn with_symbol(morphism: Morphism, seed: &str) -> Result<Self> {
        let seed = morphism.source().letter(seed)?;
        FixedPointSpec::new(morphism, seed)
    }

    pub fn morphism(&self) -> &Morphism {
        &self.morphism
    }

    pub fn seed(&self) -> Letter {
        self.seed
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.morphism.source()
    }

    /// The length-`n` prefix of `f^ω(seed)`.
    pub fn prefix(&self, n: usize) -> Word {
        let mut w = Word::letter(self.seed);
        while w.len() < n {
            w = self.morphism.apply_unchecked(&w);
        }
        w.slice(0, n)
    }

    fn describe(&self) -> String {
        format!("{} from {}", self.morphism, self.alphabet().symbol(self.seed))
    }
}

pub fn fixed_point_prefix(spec: &FixedPointSpec, n: usize) -> Word {
    spec.prefix(n)
}

/// The factors of length at most `depth` of `f^ω(a)`.
///
/// For a primitive morphism the result is exact: every factor of length `n`
/// lies in `f^m(cd)` for some two-letter factor `cd`, once every `f^m(c)`
/// has length at least `n - 1`. Non-primitive morphisms get the factors of
/// a prefix of length `4·depth`, marked possibly incomplete.
pub fn factor_set_of_fixed_point(spec: &FixedPointSpec, depth: usize) -> Result<FactorSet> {
    let f = spec.morphism();
    let alphabet = spec.alphabet().clone();
    let source = Source::Morphic(spec.describe());
    if !f.is_primitive(primitivity_bound(alphabet.len())).is_primitive() {
        let prefix = spec.prefix((4 * depth).max(2));
        return FactorSet::factors_of(alphabet, depth, [prefix.letters()], Completeness::PossiblyIncomplete, source);
    }
    let pairs = two_factors(spec);
    let mut lens: Vec<usize> = vec![1; alphabet.len()];
    let mut m = 0usize;
    while lens.iter().copied().min().unwrap_or(0) + 1 < depth {
        lens = f.images().iter().map(|img| img.iter().map(|&c| lens[c as usize]).sum()).collect();
        m += 1;
    }
    let fm = f.power(m)?;
    let mut members: HashSet<Word> = HashSet::new();
    for (c, d) in &pairs {
        collect_factors(&fm.apply_unchecked(&[*c, *d]), depth, &mut members);
    }
    FactorSet::from_factorial(alphabet, depth, members, Completeness::CertifiedComplete, source)
}

/// The two-letter factors of the fixed point, as a least fixpoint.
fn two_factors(spec: &FixedPointSpec) -> BTreeSet<(Letter, Letter)> {
    let f = spec.morphism();
    let start = spec.prefix(2);
    let mut found = BTreeSet::from([(start[0], start[1])]);
    let mut todo = vec![(start[0], start[1])];
    while let Some((c, d)) = todo.pop() {
        let img = f.apply_unchecked(&[c, d]);
        for p in img.windows(2) {
            if found.insert((p[0], p[1])) {
                todo.push((p[0], p[1]));
            }
        }
    }
    found
}
