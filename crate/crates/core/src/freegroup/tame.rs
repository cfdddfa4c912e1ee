use std::collections::BTreeSet;

use serde::Serialize;

use super::{is_basis, Gen, SignedWord};
use crate::codes::{is_prefix_code, is_suffix_code, CodeSet};
use crate::error::{Error, Result};
use crate::generators::Morphism;
use crate::words::{shortlex, Alphabet, Letter, Word};

/// Elementary positive automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elementary {
    /// `c ↦ images[c]`.
    Permutation(Vec<Letter>),
    /// `α_{a,b}`: `a ↦ ab`.
    Right { a: Letter, b: Letter },
    /// `α̃_{a,b}`: `a ↦ ba`.
    Left { a: Letter, b: Letter },
}

impl Elementary {
    pub fn right(a: Letter, b: Letter) -> Result<Self> {
        if a == b {
            return Err(Error::EqualLetters);
        }
        Ok(Elementary::Right { a, b })
    }

    pub fn left(a: Letter, b: Letter) -> Result<Self> {
        if a == b {
            return Err(Error::EqualLetters);
        }
        Ok(Elementary::Left { a, b })
    }

    pub fn permutation(images: Vec<Letter>) -> Result<Self> {
        let distinct: BTreeSet<Letter> = images.iter().copied().collect();
        if distinct.len() != images.len() || images.iter().any(|&c| c as usize >= images.len()) {
            return Err(Error::Invalid("not a permutation of the alphabet".into()));
        }
        Ok(Elementary::Permutation(images))
    }

    fn image(&self, c: Letter) -> Vec<Letter> {
        match *self {
            Elementary::Permutation(ref p) => vec![p[c as usize]],
            Elementary::Right { a, b } if c == a => vec![a, b],
            Elementary::Left { a, b } if c == a => vec![b, a],
            _ => vec![c],
        }
    }

    pub fn apply(&self, w: &[Letter]) -> Word {
        Word::new(w.iter().flat_map(|&c| self.image(c)).collect())
    }

    pub fn morphism(&self, alphabet: &Alphabet) -> Result<Morphism> {
        Morphism::endo(alphabet.clone(), alphabet.letters().map(|c| Word::new(self.image(c))).collect())
    }

    /// Images of the letters under the inverse automorphism.
    pub fn inverse_images(&self, letters: usize) -> Vec<SignedWord> {
        (0..letters as Letter)
            .map(|c| match *self {
                Elementary::Permutation(ref p) => {
                    let pre = p.iter().position(|&x| x == c).expect("permutation") as Letter;
                    SignedWord::positive(&[pre])
                }
                Elementary::Right { a, b } if c == a => SignedWord::new(vec![Gen::pos(a), Gen::neg(b)]),
                Elementary::Left { a, b } if c == a => SignedWord::new(vec![Gen::neg(b), Gen::pos(a)]),
                _ => SignedWord::positive(&[c]),
            })
            .collect()
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> TameStepJson {
        let sym = |c: Letter| Some(alphabet.symbol(c).to_string());
        match self {
            Elementary::Permutation(p) => TameStepJson {
                kind: "permutation",
                a: None,
                b: None,
                images: Some(p.iter().map(|&c| alphabet.symbol(c).to_string()).collect()),
            },
            Elementary::Right { a, b } => TameStepJson { kind: "right", a: sym(*a), b: sym(*b), images: None },
            Elementary::Left { a, b } => TameStepJson { kind: "left", a: sym(*a), b: sym(*b), images: None },
        }
    }
}

/// `right` is `a ↦ ab`, `left` is `a ↦ ba`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TameStepJson {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub images: Option<Vec<String>>,
}

/// Applies the steps in order to the entries of `(a, b, c, …)`.
pub fn replay(letters: usize, steps: &[Elementary]) -> Vec<Word> {
    let mut t: Vec<Word> = (0..letters as Letter).map(Word::letter).collect();
    for s in steps {
        for w in &mut t {
            *w = s.apply(w);
        }
    }
    t
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TameDecomposition {
    pub steps: Vec<Elementary>,
    /// `replay(steps)`, equal to the basis as a set.
    pub images: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TameOutcome {
    Tame(TameDecomposition),
    /// The input is a bifix basis other than the alphabet.
    NotTame {
        stuck: CodeSet,
    },
    /// Greedy reduction reached a bifix basis other than the alphabet.
    UndeterminedByGreedy {
        stuck: CodeSet,
    },
}

fn least_pair(x: &[Word], prefix_side: bool) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, short) in x.iter().enumerate() {
        for (j, long) in x.iter().enumerate() {
            let hit =
                long.len() > short.len() && if prefix_side { long.starts_with(short) } else { long.ends_with(short) };
            if !hit {
                continue;
            }
            let better = match best {
                None => true,
                Some((bi, bj)) => shortlex(short, &x[bi]).then_with(|| shortlex(long, &x[bj])).is_lt(),
            };
            if better {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Greedy reduction of a positive basis to the alphabet, replayed
/// forwards as elementary steps followed by one permutation.
pub fn tame_decompose(x: &CodeSet) -> Result<TameOutcome> {
    let alphabet = x.alphabet();
    let k = alphabet.len();
    let signed: Vec<SignedWord> = x.words().iter().map(|w| SignedWord::positive(w)).collect();
    if !is_basis(&signed, alphabet) {
        return Err(Error::NotABasis(x.format_words().join(", ")));
    }
    let mut current: Vec<Word> = x.words().to_vec();
    let mut steps = Vec::new();
    while current.iter().any(|w| w.len() > 1) {
        if !is_prefix_code(&current) {
            let (i, j) = least_pair(&current, true).expect("not prefix");
            current[j] = current[j].slice(current[i].len(), current[j].len());
            steps.push(Elementary::left(j as Letter, i as Letter)?);
        } else if !is_suffix_code(&current) {
            let (i, j) = least_pair(&current, false).expect("not suffix");
            current[j] = current[j].slice(0, current[j].len() - current[i].len());
            steps.push(Elementary::right(j as Letter, i as Letter)?);
        } else {
            let stuck = CodeSet::new(alphabet.clone(), current.iter().cloned())?;
            return Ok(if steps.is_empty() {
                TameOutcome::NotTame { stuck }
            } else {
                TameOutcome::UndeterminedByGreedy { stuck }
            });
        }
    }
    // X = π∘σ_k∘…∘σ_1(A) where σ_1 is the first greedy move
    steps.push(Elementary::permutation(current.iter().map(|w| w[0]).collect())?);
    let images = replay(k, &steps);
    let got: BTreeSet<&Word> = images.iter().collect();
    let want: BTreeSet<&Word> = x.words().iter().collect();
    if got != want {
        return Err(Error::Invalid("tame replay does not reproduce the basis".into()));
    }
    Ok(TameOutcome::Tame(TameDecomposition { steps, images }))
}
