use std::collections::HashSet;

use serde::Serialize;

use crate::codes::{CodeSet, CodingMorphism};
use crate::error::{Error, Result};
use crate::freegroup::{is_basis, replay, tame_decompose, Elementary, SignedWord, TameOutcome, TameStepJson};
use crate::generators::Morphism;
use crate::returns::return_words;
use crate::words::{Alphabet, Completeness, FactorSet, Letter, Source, Word};

/// One morphism `σ_n: A_{n+1}* → A_n*` of an S-adic sequence.
#[derive(Clone, Debug)]
pub struct SadicStep {
    /// `u_{n+1}`, when the step was extracted from a set.
    pub seed: Option<Word>,
    /// `R_T(u_{n+1})` in shortlex order.
    pub returns: Vec<Word>,
    pub morphism: Morphism,
    pub basis: bool,
    /// Elementary automorphisms whose replay is exactly `σ_n`.
    pub elementary: Option<Vec<Elementary>>,
}

#[derive(Clone, Debug)]
pub struct SadicSequence {
    alphabet: Alphabet,
    steps: Vec<SadicStep>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SadicStepJson {
    pub seed: Option<String>,
    pub returns: Vec<String>,
    pub morphism: String,
    pub basis: bool,
    pub elementary: Option<Vec<TameStepJson>>,
}

impl SadicStep {
    fn new(seed: Option<Word>, returns: Vec<Word>, morphism: Morphism) -> Result<Self> {
        let a = morphism.target();
        let signed: Vec<SignedWord> = morphism.images().iter().map(|w| SignedWord::positive(w)).collect();
        let basis = morphism.is_endomorphism() && is_basis(&signed, a);
        let elementary = if basis { exact_tame_steps(&morphism)? } else { None };
        Ok(SadicStep { seed, returns, morphism, basis, elementary })
    }

    pub fn to_json(&self, base: &Alphabet) -> SadicStepJson {
        let a = self.morphism.target();
        SadicStepJson {
            seed: self.seed.as_ref().map(|w| base.format(w)),
            returns: self.returns.iter().map(|w| base.format(w)).collect(),
            morphism: self.morphism.format_rules(),
            basis: self.basis,
            elementary: self.elementary.as_ref().map(|s| s.iter().map(|e| e.to_json(a)).collect()),
        }
    }
}

/// Elementary steps replaying to `m` letter by letter, if the greedy
/// reduction of its images succeeds.
pub fn exact_tame_steps(m: &Morphism) -> Result<Option<Vec<Elementary>>> {
    let x = CodeSet::new(m.target().clone(), m.images().iter().cloned())?;
    let TameOutcome::Tame(d) = tame_decompose(&x)? else { return Ok(None) };
    let pick: Vec<Letter> =
        m.images().iter().map(|w| d.images.iter().position(|v| v == w).expect("same set") as Letter).collect();
    let mut steps = Vec::with_capacity(d.steps.len() + 1);
    if pick.iter().enumerate().any(|(c, &p)| c as Letter != p) {
        steps.push(Elementary::permutation(pick)?);
    }
    steps.extend(d.steps);
    if replay(m.source().len(), &steps) != m.images() {
        return Err(Error::Invalid("tame replay differs from the morphism".into()));
    }
    Ok(Some(steps))
}

impl SadicSequence {
    /// A sequence given directly by endomorphisms of one alphabet.
    pub fn from_morphisms(morphisms: Vec<Morphism>) -> Result<Self> {
        let first = morphisms.first().ok_or_else(|| Error::Invalid("empty sequence".into()))?;
        let alphabet = first.target().clone();
        let mut steps = Vec::with_capacity(morphisms.len());
        let mut outer = alphabet.clone();
        for m in morphisms {
            if m.target() != &outer {
                return Err(Error::AlphabetMismatch("consecutive morphisms do not compose".into()));
            }
            outer = m.source().clone();
            steps.push(SadicStep::new(None, Vec::new(), m)?);
        }
        Ok(SadicSequence { alphabet, steps })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn steps(&self) -> &[SadicStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn morphisms(&self) -> Vec<Morphism> {
        self.steps.iter().map(|s| s.morphism.clone()).collect()
    }

    /// `σ_0 ∘ … ∘ σ_n`.
    pub fn composed(&self, n: usize) -> Result<Morphism> {
        if n >= self.steps.len() {
            return Err(Error::Invalid(format!("sequence has {} steps, asked for {}", self.steps.len(), n + 1)));
        }
        let mut m = self.steps[0].morphism.clone();
        for s in &self.steps[1..=n] {
            m = m.compose(&s.morphism)?;
        }
        Ok(m)
    }

    pub fn to_json(&self) -> Vec<SadicStepJson> {
        self.steps.iter().map(|s| s.to_json(&self.alphabet)).collect()
    }
}

/// Return-word extraction on the set produced by `gen(depth)`.
///
/// `u_0 = ε` and `u_{n+1} = u_n φ_n(a)` for the first letter `a`, where
/// `φ_n` codes `R_T(u_n)` in shortlex order.
/// The depth doubles from `start_depth` while a return set is uncertified.
pub fn sadic_extract(
    gen: &dyn Fn(usize) -> Result<FactorSet>,
    steps: usize,
    start_depth: usize,
    max_depth: usize,
) -> Result<SadicSequence> {
    let mut depth = start_depth.max(2);
    let mut s = gen(depth)?;
    if !s.is_certified() {
        return Err(Error::IncompleteSet);
    }
    let alphabet = s.alphabet().clone();
    let mut phi = Morphism::identity(alphabet.clone());
    let mut u = Word::empty();
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        let next = u.concat(phi.image(0));
        let rd = loop {
            if next.len() <= s.depth() {
                let rd = return_words(&s, &next)?;
                if rd.is_complete() {
                    break rd;
                }
            }
            if depth >= max_depth {
                return Err(Error::InsufficientDepth { needed: 2 * depth, have: max_depth });
            }
            depth = (2 * depth).min(max_depth);
            s = gen(depth)?;
        };
        let r = rd.first_returns.clone();
        let b = if r.len() == alphabet.len() { alphabet.clone() } else { Alphabet::fresh("r", r.len())? };
        let alpha = Morphism::new(b.clone(), alphabet.clone(), r.clone())?;
        let decoder = CodingMorphism::new(phi.clone())?;
        let images = r
            .iter()
            .map(|x| {
                decoder
                    .decode(x)
                    .ok_or_else(|| Error::Invalid(format!("`{}` is not a product of returns", alphabet.format(x))))
            })
            .collect::<Result<Vec<_>>>()?;
        let sigma = Morphism::new(b, phi.source().clone(), images)?;
        out.push(SadicStep::new(Some(next.clone()), r, sigma)?);
        phi = alpha;
        u = next;
    }
    Ok(SadicSequence { alphabet, steps: out })
}

/// `Fac(σ_0 ⋯ σ_n(A_{n+1}*)) ∩ A^{≤depth}`.
pub fn sadic_replay(seq: &SadicSequence, n: usize, depth: usize) -> Result<FactorSet> {
    let phi = seq.composed(n)?;
    let images = phi.images();
    if images.iter().any(|w| w.is_empty()) {
        return Err(Error::Invalid("a letter is erased".into()));
    }
    let mut members: HashSet<Word> = HashSet::new();
    let mut seen: HashSet<Word> = HashSet::new();
    let mut stack: Vec<Word> = Vec::new();
    for img in images {
        for i in 0..img.len() {
            stack.push(img.slice(i, img.len()));
        }
    }
    // every factor starts inside some image and runs over whole images
    while let Some(w) = stack.pop() {
        if !seen.insert(w.clone()) {
            continue;
        }
        for k in 1..=w.len().min(depth) {
            members.insert(w.slice(0, k));
        }
        if w.len() < depth {
            for img in images {
                stack.push(w.concat(img));
            }
        }
    }
    let mut all: HashSet<Word> = HashSet::new();
    for w in &members {
        for i in 0..w.len() {
            all.insert(w.slice(i, w.len()));
        }
    }
    let label = format!("{} steps over {}", n + 1, seq.alphabet.symbols().join(""));
    FactorSet::from_factorial(
        phi.target().clone(),
        depth,
        all,
        Completeness::CertifiedComplete,
        Source::Replayed(label),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "s", rename_all = "kebab-case")]
pub enum SequencePrimitivity {
    /// Least `s` with every letter of `A_r` in every `σ_r ⋯ σ_{s-1}(a)`.
    Witness(usize),
    NotWithin(usize),
}

pub fn primitivity_of_sequence(morphisms: &[Morphism], r: usize, horizon: usize) -> Result<SequencePrimitivity> {
    let horizon = horizon.min(morphisms.len());
    if r >= horizon {
        return Ok(SequencePrimitivity::NotWithin(horizon));
    }
    let letters = morphisms[r].target().len();
    let full =
        |m: &Morphism| m.images().iter().all(|w| w.iter().copied().collect::<HashSet<Letter>>().len() == letters);
    let mut m = morphisms[r].clone();
    let mut s = r + 1;
    while !full(&m) {
        if s == horizon {
            return Ok(SequencePrimitivity::NotWithin(horizon));
        }
        m = m.compose(&morphisms[s])?;
        s += 1;
    }
    Ok(SequencePrimitivity::Witness(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::Elementary;
    use crate::presets::Preset;

    fn abc() -> Alphabet {
        Alphabet::from_chars("abc").unwrap()
    }

    fn periodic_sequence(periods: usize) -> Vec<Morphism> {
        let a = abc();
        let cycle =
            [Elementary::right(0, 2).unwrap(), Elementary::right(1, 0).unwrap(), Elementary::right(2, 1).unwrap()];
        (0..3 * periods).map(|i| cycle[i % 3].morphism(&a).unwrap()).collect()
    }

    fn preset(name: &'static str) -> impl Fn(usize) -> Result<FactorSet> {
        move |d| Preset::by_name(name)?.factor_set(d)
    }

    #[test]
    fn periodic_sequence_composes_to_the_fixture_morphism() {
        let seq = SadicSequence::from_morphisms(periodic_sequence(1)).unwrap();
        assert_eq!(seq.composed(2).unwrap().format_rules(), "a->ac; b->bac; c->cbac");
        let fixture = Preset::by_name("ac-bac-cbac").unwrap().factor_set(6).unwrap();
        let seq = SadicSequence::from_morphisms(periodic_sequence(2)).unwrap();
        assert_eq!(sadic_replay(&seq, 5, 6).unwrap(), fixture);
        assert!(seq.steps().iter().all(|s| s.basis && s.elementary.is_some()));
    }

    #[test]
    fn primitivity_witness() {
        let m = periodic_sequence(3);
        assert_eq!(primitivity_of_sequence(&m, 0, 9).unwrap(), SequencePrimitivity::Witness(4));
        let id = vec![Morphism::identity(abc()); 5];
        assert_eq!(primitivity_of_sequence(&id, 0, 5).unwrap(), SequencePrimitivity::NotWithin(5));
    }

    #[test]
    fn replay_of_identity_is_everything() {
        let seq = SadicSequence::from_morphisms(vec![Morphism::identity(abc())]).unwrap();
        let t = sadic_replay(&seq, 0, 3).unwrap();
        assert_eq!(t.len(), 1 + 3 + 9 + 27);
    }

    #[test]
    fn tribonacci_first_step() {
        let seq = sadic_extract(&preset("tribonacci"), 1, 16, 256).unwrap();
        let a = seq.alphabet();
        let step = &seq.steps()[0];
        assert_eq!(step.seed.as_ref().map(|w| a.format(w)).as_deref(), Some("a"));
        let r: Vec<String> = step.returns.iter().map(|w| a.format(w)).collect();
        assert_eq!(r, ["a", "ba", "ca"]);
    }

    #[test]
    fn extraction_replays_the_source() {
        for (name, steps) in [("ac-bac-cbac", 3), ("fibonacci", 4), ("tribonacci", 3)] {
            let seq = sadic_extract(&preset(name), steps, 32, 256).unwrap();
            for step in seq.steps() {
                assert!(step.basis, "{name}");
                let steps = step.elementary.as_ref().unwrap();
                assert_eq!(replay(step.morphism.source().len(), steps), step.morphism.images());
            }
            let want = Preset::by_name(name).unwrap().factor_set(8).unwrap();
            assert_eq!(sadic_replay(&seq, seq.len() - 1, 8).unwrap(), want, "{name}");
        }
    }

    #[test]
    fn non_tree_chain_has_all_two_letter_c_b_words() {
        let a = abc();
        let f = Morphism::parse_over(&a, "a->ac; b->bac; c->cb").unwrap();
        let seq = SadicSequence::from_morphisms(vec![f.clone(), f.clone(), f]).unwrap();
        let t = sadic_replay(&seq, 2, 4).unwrap();
        for w in ["bb", "bc", "cb", "cc"] {
            assert!(t.contains(&a.parse(w).unwrap()), "{w}");
        }
    }
}
