//! Return words, derived sets and derived words.

use serde::Serialize;

use crate::codes::{is_prefix_code, is_suffix_code, CodeSet, CodingMorphism};
use crate::error::{Error, Result};
use crate::generators::FixedPointSpec;
use crate::iet::{IntervalExchange, QuadraticNumber};
use crate::words::{
    is_factor, is_recurrent_desk, shortlex, Alphabet, FactorSet, Letter, RecurrenceVerdict, Source, Word,
};

/// Return sets to `w`, truncated to `|wx| <= depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReturnData {
    pub alphabet: Alphabet,
    pub word: Word,
    /// `Γ_S(w)`.
    pub returns: Vec<Word>,
    /// `R_S(w)`.
    pub first_returns: Vec<Word>,
    /// `Γ'_S(w)`.
    pub left_returns: Vec<Word>,
    /// `R'_S(w)`.
    pub first_left_returns: Vec<Word>,
    /// Some `K` with `K + |w| <= depth` such that every member of length
    /// `K` contains `w`. Bounds every first return by `K`.
    pub certificate: Option<usize>,
}

impl ReturnData {
    pub fn is_complete(&self) -> bool {
        self.certificate.is_some()
    }

    pub fn first_return_code(&self) -> Result<CodeSet> {
        CodeSet::new(self.alphabet.clone(), self.first_returns.iter().cloned())
    }

    pub fn max_first_return_len(&self) -> usize {
        self.first_returns.iter().map(|w| w.len()).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReturnJson {
    pub word: String,
    pub gamma: Vec<String>,
    pub first_returns: Vec<String>,
    pub left_first_returns: Vec<String>,
    pub certificate: Option<usize>,
    pub derived_depth: Option<usize>,
}

impl ReturnData {
    pub fn to_json(&self, depth: usize) -> ReturnJson {
        let fmt = |ws: &[Word]| ws.iter().map(|w| self.alphabet.format(w)).collect();
        ReturnJson {
            word: self.alphabet.format(&self.word),
            gamma: fmt(&self.returns),
            first_returns: fmt(&self.first_returns),
            left_first_returns: fmt(&self.first_left_returns),
            certificate: self.certificate,
            derived_depth: self.certificate.map(|_| derived_depth(depth, &self.word, self.max_first_return_len())),
        }
    }
}

fn derived_depth(depth: usize, w: &Word, max_r: usize) -> usize {
    (depth - w.len()) / max_r.max(1)
}

fn sorted(mut v: Vec<Word>) -> Vec<Word> {
    v.sort_by(|a, b| shortlex(a, b));
    v
}

/// Least `K` with `K + |w| <= depth` such that all members of length `K`
/// contain `w`.
pub fn return_certificate(s: &FactorSet, w: &[Letter]) -> Option<usize> {
    (w.len().max(1)..=s.depth() - w.len())
        .find(|&k| s.factors_of_length(k).map(|level| level.iter().all(|m| is_factor(w, m))).unwrap_or(false))
}

pub fn return_words(s: &FactorSet, w: &Word) -> Result<ReturnData> {
    if !s.is_certified() {
        return Err(Error::IncompleteSet);
    }
    if !s.contains(w) {
        return Err(Error::NotAMember(s.format(w)));
    }
    let mut returns = Vec::new();
    let mut left_returns = Vec::new();
    for m in s.iter().filter(|m| m.len() > w.len()) {
        if m.starts_with(w) && m.ends_with(w) {
            let x = m.slice(w.len(), m.len());
            let xl = m.slice(0, m.len() - w.len());
            returns.push(x);
            left_returns.push(xl);
        }
    }
    let returns = sorted(returns);
    let left_returns = sorted(left_returns);
    let first_returns: Vec<Word> =
        returns.iter().filter(|x| !returns.iter().any(|y| y.len() < x.len() && x.starts_with(y))).cloned().collect();
    let first_left_returns: Vec<Word> = left_returns
        .iter()
        .filter(|x| !left_returns.iter().any(|y| y.len() < x.len() && x.ends_with(y)))
        .cloned()
        .collect();
    Ok(ReturnData {
        alphabet: s.alphabet().clone(),
        word: w.clone(),
        returns,
        first_returns,
        left_returns,
        first_left_returns,
        certificate: return_certificate(s, w),
    })
}

/// Checks `w·R_S(w) = R'_S(w)·w` and returns the pairs `(x, x')` with
/// `wx = x'w`, ordered by `x`.
pub fn left_right_conjugation(rd: &ReturnData) -> Result<Vec<(Word, Word)>> {
    if !rd.is_complete() {
        return Err(Error::IncompleteReturns(rd.alphabet.format(&rd.word)));
    }
    let w = &rd.word;
    let mut pairs = Vec::new();
    for x in &rd.first_returns {
        let wx = w.concat(x);
        let xl = wx.slice(0, wx.len() - w.len());
        if !rd.first_left_returns.contains(&xl) {
            return Err(Error::Invalid(format!("{} has no left counterpart", rd.alphabet.format(x))));
        }
        pairs.push((x.clone(), xl));
    }
    if pairs.len() != rd.first_left_returns.len() {
        return Err(Error::Invalid("left and right first returns differ in number".into()));
    }
    Ok(pairs)
}

#[derive(Clone, Debug)]
pub struct DerivedSet {
    pub coding: CodingMorphism,
    pub set: FactorSet,
    pub recurrence: RecurrenceVerdict,
}

/// `D_f(S) = f⁻¹(Γ_S(w)) ∪ {ε}`, complete to depth
/// `floor((depth - |w|) / max|R_S(w)|)`.
///
/// Without an explicit coding, fresh letters `r0 < r1 < …` are bound to
/// the first returns in shortlex order.
pub fn derived_set(s: &FactorSet, w: &Word, coding: Option<&CodingMorphism>) -> Result<DerivedSet> {
    let rd = return_words(s, w)?;
    if !rd.is_complete() {
        return Err(Error::IncompleteReturns(s.format(w)));
    }
    let coding = match coding {
        Some(f) => {
            let mut images = f.morphism().images().to_vec();
            images.sort_by(|a, b| shortlex(a, b));
            if f.target() != s.alphabet() || images != rd.first_returns {
                return Err(Error::Invalid("coding morphism does not map onto the first returns".into()));
            }
            f.clone()
        }
        None => {
            let b = Alphabet::fresh("r", rd.first_returns.len())?;
            CodingMorphism::from_words(b, s.alphabet().clone(), rd.first_returns.clone())?
        }
    };
    let m = derived_depth(s.depth(), w, rd.max_first_return_len());
    let f = coding.morphism();
    let mut words = Vec::new();
    let mut level: Vec<(Word, Word)> = vec![(Word::empty(), w.clone())];
    for _ in 0..m {
        let mut next = Vec::new();
        for (u, image) in &level {
            for b in f.source().letters() {
                let ext = image.concat(f.image(b));
                if s.contains(&ext) {
                    let ub = u.append(b);
                    words.push(ub.clone());
                    next.push((ub, ext));
                }
            }
        }
        level = next;
    }
    let source = Source::Derived(format!("{} at {}", s.source(), s.format(w)));
    let set = FactorSet::from_factorial(f.source().clone(), m, words, s.completeness(), source)?;
    let recurrence = is_recurrent_desk(&set, (m / 8).max(1).min(m))?;
    Ok(DerivedSet { coding, set, recurrence })
}

/// A one-sided infinite word known through its prefixes.
pub trait InfiniteWordSource {
    fn alphabet(&self) -> &Alphabet;
    fn prefix(&self, n: usize) -> Result<Word>;
}

impl InfiniteWordSource for FixedPointSpec {
    fn alphabet(&self) -> &Alphabet {
        FixedPointSpec::alphabet(self)
    }

    fn prefix(&self, n: usize) -> Result<Word> {
        Ok(FixedPointSpec::prefix(self, n))
    }
}

/// The natural coding of the orbit of a point.
#[derive(Clone, Debug)]
pub struct IetCoding {
    pub map: IntervalExchange,
    pub start: QuadraticNumber,
}

impl InfiniteWordSource for IetCoding {
    fn alphabet(&self) -> &Alphabet {
        self.map.alphabet()
    }

    fn prefix(&self, n: usize) -> Result<Word> {
        self.map.natural_coding(&self.start, n)
    }
}

/// `(uv)^ω`-style periodic words.
#[derive(Clone, Debug)]
pub struct Periodic {
    pub alphabet: Alphabet,
    pub period: Word,
}

impl InfiniteWordSource for Periodic {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn prefix(&self, n: usize) -> Result<Word> {
        if self.period.is_empty() {
            return Err(Error::Invalid("empty period".into()));
        }
        Ok(Word::new(self.period.iter().copied().cycle().take(n).collect()))
    }
}

/// The first `n` letters of `D_f(x)`: with `x = vwz` and `w` occurring in
/// `vw` only as a suffix, the decoding of `z` by the first-return code `f`.
/// `w` must occur within the first `horizon` letters.
pub fn derived_word(
    x: &dyn InfiniteWordSource,
    w: &Word,
    f: &CodingMorphism,
    n: usize,
    horizon: usize,
) -> Result<Word> {
    let head = x.prefix(horizon.max(w.len()))?;
    let start = (w.len()..=head.len())
        .find(|&e| head[..e].ends_with(w))
        .ok_or_else(|| Error::WordNotFound(x.alphabet().format(w)))?;
    let images = f.morphism().images();
    let mut need = start + n * f.max_image_len();
    let mut text = x.prefix(need)?;
    let mut out = Vec::with_capacity(n);
    let mut pos = start;
    while out.len() < n {
        if pos + f.max_image_len() > text.len() {
            need *= 2;
            text = x.prefix(need)?;
        }
        let tail = &text[pos..];
        let b = images
            .iter()
            .position(|img| tail.starts_with(img))
            .ok_or_else(|| Error::IncompleteReturns(x.alphabet().format(w)))?;
        out.push(b as Letter);
        pos += images[b].len();
    }
    Ok(Word::new(out))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniformRecurrenceVerdict {
    UniformlyRecurrentUpTo(usize),
    Blocked { word: Word, reason: String },
}

impl UniformRecurrenceVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, UniformRecurrenceVerdict::UniformlyRecurrentUpTo(_))
    }
}

/// Every member of length at most `up_to` needs a return certificate.
pub fn uniform_recurrence_check(s: &FactorSet, up_to: usize) -> Result<UniformRecurrenceVerdict> {
    if !s.is_certified() {
        return Err(Error::IncompleteSet);
    }
    if up_to > s.depth() {
        return Err(Error::DepthExceeded { requested: up_to, depth: s.depth() });
    }
    for w in s.words_up_to(up_to).filter(|w| !w.is_empty()) {
        if return_certificate(s, w).is_none() {
            return Ok(UniformRecurrenceVerdict::Blocked {
                word: w.clone(),
                reason: format!("some member of each length up to {} avoids `{}`", s.depth() - w.len(), s.format(w)),
            });
        }
    }
    Ok(UniformRecurrenceVerdict::UniformlyRecurrentUpTo(up_to))
}

/// Sanity predicates on a return set: `R` prefix, `R'` suffix.
pub fn return_codes_are_well_formed(rd: &ReturnData) -> bool {
    is_prefix_code(&rd.first_returns) && is_suffix_code(&rd.first_left_returns)
}
