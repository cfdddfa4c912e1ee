use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::codes::{is_code, is_maximal_prefix_in, is_s_maximal_prefix, CodeSet};
use crate::error::{Error, Result};
use crate::generators::Morphism;
use crate::words::{is_recurrent_desk, Alphabet, FactorSet, Letter, Source, Word};

/// A morphism `f: B* → A*` mapping `B` bijectively onto a code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodingMorphism {
    morphism: Morphism,
}

impl CodingMorphism {
    pub fn new(morphism: Morphism) -> Result<Self> {
        let images = morphism.images();
        let distinct: HashSet<&Word> = images.iter().collect();
        if distinct.len() != images.len() {
            return Err(Error::NotACode("two letters share an image".into()));
        }
        if !is_code(images) {
            return Err(Error::NotACode("images are not uniquely decipherable".into()));
        }
        Ok(CodingMorphism { morphism })
    }

    /// Binds the letters of `b` to the words of `z` in order.
    pub fn from_words(b: Alphabet, target: Alphabet, z: Vec<Word>) -> Result<Self> {
        CodingMorphism::new(Morphism::new(b, target, z)?)
    }

    /// Fresh letters `prefix0 < prefix1 < …` bound to the sorted words of `z`.
    pub fn fresh(prefix: &str, z: &CodeSet) -> Result<Self> {
        let b = Alphabet::fresh(prefix, z.len())?;
        CodingMorphism::from_words(b, z.alphabet().clone(), z.words().to_vec())
    }

    /// Parse `u->aa; v->ab` over a known target alphabet.
    pub fn parse(target: &Alphabet, text: &str) -> Result<Self> {
        let mut symbols = Vec::new();
        let mut images = Vec::new();
        for rule in text.split(';').map(str::trim).filter(|r| !r.is_empty()) {
            let (lhs, rhs) = rule.split_once("->").ok_or_else(|| Error::Parse(format!("rule `{rule}` lacks `->`")))?;
            symbols.push(lhs.trim().to_string());
            images.push(target.parse(rhs)?);
        }
        let b = Alphabet::new(symbols).map_err(|e| Error::Parse(e.to_string()))?;
        CodingMorphism::from_words(b, target.clone(), images)
    }

    pub fn morphism(&self) -> &Morphism {
        &self.morphism
    }

    pub fn source(&self) -> &Alphabet {
        self.morphism.source()
    }

    pub fn target(&self) -> &Alphabet {
        self.morphism.target()
    }

    pub fn code(&self) -> CodeSet {
        CodeSet::new(self.target().clone(), self.morphism.images().to_vec()).expect("images are nonempty")
    }

    pub fn encode(&self, w: &[Letter]) -> Result<Word> {
        self.morphism.apply(w)
    }

    /// `f⁻¹(w)`, if `w` factorizes over the code.
    pub fn decode(&self, w: &[Letter]) -> Option<Word> {
        let images = self.morphism.images();
        // back[i]: letter ending a factorization of w[..i]
        let mut back: Vec<Option<(usize, Letter)>> = vec![None; w.len() + 1];
        let mut reach = vec![false; w.len() + 1];
        reach[0] = true;
        for i in 0..w.len() {
            if !reach[i] {
                continue;
            }
            for (b, z) in images.iter().enumerate() {
                if w[i..].starts_with(z) && !reach[i + z.len()] {
                    reach[i + z.len()] = true;
                    back[i + z.len()] = Some((i, b as Letter));
                }
            }
        }
        if !reach[w.len()] {
            return None;
        }
        let mut out = Vec::new();
        let mut i = w.len();
        while i > 0 {
            let (j, b) = back[i]?;
            out.push(b);
            i = j;
        }
        out.reverse();
        Some(Word::new(out))
    }

    pub fn max_image_len(&self) -> usize {
        self.morphism.max_image_len()
    }
}

/// `Y ∘_f Z = f(Y)`.
pub fn compose_codes(y: &CodeSet, f: &CodingMorphism) -> Result<CodeSet> {
    if y.alphabet() != f.source() {
        return Err(Error::AlphabetMismatch("code alphabet differs from the coding source".into()));
    }
    let used: BTreeSet<Letter> = y.words().iter().flat_map(|w| w.iter().copied()).collect();
    if used.len() != f.source().len() {
        return Err(Error::AlphabetMismatch("some coding letter does not occur in the code".into()));
    }
    CodeSet::new(f.target().clone(), y.words().iter().map(|w| f.morphism().apply_unchecked(w)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    Composed { y: CodeSet, f: CodingMorphism },
    Impossible(String),
}

/// Write `X = Y ∘_f Z` when `X ⊂ Z*` and `alp_Z(X) = Z`.
///
/// Letters of the new alphabet default to `z0 < z1 < …` bound to `Z` in
/// sorted order; `names` overrides them.
pub fn decompose_over(x: &CodeSet, z: &CodeSet, names: Option<&Alphabet>) -> Result<Decomposition> {
    if !is_code(z.words()) {
        return Ok(Decomposition::Impossible("Z is not a code".into()));
    }
    if !is_code(x.words()) {
        return Ok(Decomposition::Impossible("X is not a code".into()));
    }
    let b = match names {
        Some(n) if n.len() == z.len() => n.clone(),
        Some(_) => return Err(Error::AlphabetMismatch("names do not match the size of Z".into())),
        None => Alphabet::fresh("z", z.len())?,
    };
    let f = CodingMorphism::from_words(b.clone(), z.alphabet().clone(), z.words().to_vec())?;
    let mut ys = Vec::new();
    let mut used: BTreeSet<Letter> = BTreeSet::new();
    for w in x.words() {
        match f.decode(w) {
            Some(y) => {
                used.extend(y.iter().copied());
                ys.push(y);
            }
            None => return Ok(Decomposition::Impossible(format!("`{}` is not in Z*", x.alphabet().format(w)))),
        }
    }
    if used.len() != z.len() {
        let missing: Vec<String> = (0..z.len() as Letter)
            .filter(|c| !used.contains(c))
            .map(|c| z.alphabet().format(&z.words()[c as usize]))
            .collect();
        return Ok(Decomposition::Impossible(format!("alp_Z(X) misses {}", missing.join(","))));
    }
    Ok(Decomposition::Composed { y: CodeSet::new(b, ys)?, f })
}

/// `f⁻¹(S)`: all `w` with `f(w) ∈ s`, exact up to `⌊depth / max|Z|⌋`.
pub fn preimage_set(s: &FactorSet, f: &CodingMorphism) -> Result<FactorSet> {
    if f.target() != s.alphabet() {
        return Err(Error::AlphabetMismatch("coding target differs from the set alphabet".into()));
    }
    let mut m = s.depth() / f.max_image_len();
    // no member of full length: the truncation is the whole (finite) set
    let finite = s.factors_of_length(s.depth())?.is_empty();
    let mut members = vec![(Word::empty(), Word::empty())];
    let mut all = Vec::new();
    while let Some((w, fw)) = members.pop() {
        if finite || w.len() < m {
            for b in f.source().letters() {
                let fwb = fw.concat(f.morphism().image(b));
                if s.contains(&fwb) {
                    members.push((w.append(b), fwb));
                }
            }
        }
        all.push(w);
    }
    if finite {
        m = m.max(all.iter().map(|w| w.len()).max().unwrap_or(0));
    }
    let source = Source::Decoded(format!("preimage under {}", f.morphism()));
    FactorSet::from_factorial(f.source().clone(), m, all, s.completeness(), source)
}

/// Verdicts of the maximality transfer statements for `X = Y ∘_f Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalityReport {
    pub y_maximal_in_preimage: bool,
    pub x_maximal_in_image: bool,
    pub x_maximal_in_s: bool,
    pub z_maximal_in_s: bool,
    pub s_recurrent: bool,
    /// `Y` maximal in `T` implies `X` maximal in `f(T)`.
    pub image_transfer_holds: bool,
    /// `X` maximal implies `Y` and `Z` maximal.
    pub forward_holds: bool,
    /// `Y` and `Z` maximal implies `X` maximal.
    pub converse_holds: bool,
}

pub fn maximality_transfer_check(y: &CodeSet, f: &CodingMorphism, s: &FactorSet) -> Result<MaximalityReport> {
    let x = compose_codes(y, f)?;
    let z = f.code();
    let t = preimage_set(s, f)?;
    let y_in_t = is_s_maximal_prefix(y.words(), &t)?;
    let image: Vec<Word> = t.iter().map(|w| f.morphism().apply_unchecked(w)).collect();
    let x_in_image = is_maximal_prefix_in(x.words(), &image);
    let x_in_s = is_s_maximal_prefix(x.words(), s)?;
    let z_in_s = is_s_maximal_prefix(z.words(), s)?;
    let bound = x.max_len().min(s.depth());
    let s_recurrent = is_recurrent_desk(s, bound)?.holds();
    Ok(MaximalityReport {
        y_maximal_in_preimage: y_in_t,
        x_maximal_in_image: x_in_image,
        x_maximal_in_s: x_in_s,
        z_maximal_in_s: z_in_s,
        s_recurrent,
        image_transfer_holds: !y_in_t || x_in_image,
        forward_holds: !x_in_s || (y_in_t && z_in_s),
        converse_holds: !(y_in_t && z_in_s) || x_in_s,
    })
}
