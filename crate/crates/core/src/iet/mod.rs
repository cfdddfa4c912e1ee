//! Interval exchange transformations with exact boundaries.

mod quadratic;

pub use quadratic::QuadraticNumber;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{Alphabet, Completeness, FactorSet, Letter, Source, Word};

/// `[left, right)`, or the empty set.
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum SemiInterval {
    Empty,
    Span { left: QuadraticNumber, right: QuadraticNumber },
}

impl SemiInterval {
    pub fn new(left: QuadraticNumber, right: QuadraticNumber) -> Self {
        if left < right {
            SemiInterval::Span { left, right }
        } else {
            SemiInterval::Empty
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, SemiInterval::Empty)
    }

    pub fn contains(&self, z: &QuadraticNumber) -> bool {
        match self {
            SemiInterval::Empty => false,
            SemiInterval::Span { left, right } => left <= z && z < right,
        }
    }

    pub fn length(&self) -> QuadraticNumber {
        match self {
            SemiInterval::Empty => QuadraticNumber::zero(),
            SemiInterval::Span { left, right } => right - left,
        }
    }

    pub fn intersect(&self, other: &SemiInterval) -> SemiInterval {
        match (self, other) {
            (SemiInterval::Span { left: l1, right: r1 }, SemiInterval::Span { left: l2, right: r2 }) => {
                SemiInterval::new(l1.max(l2).clone(), r1.min(r2).clone())
            }
            _ => SemiInterval::Empty,
        }
    }

    pub fn shift(&self, by: &QuadraticNumber) -> SemiInterval {
        match self {
            SemiInterval::Empty => SemiInterval::Empty,
            SemiInterval::Span { left, right } => SemiInterval::Span { left: left + by, right: right + by },
        }
    }
}

impl std::fmt::Display for SemiInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SemiInterval::Empty => f.write_str("empty"),
            SemiInterval::Span { left, right } => write!(f, "[{left}, {right})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryRow {
    pub letter: String,
    pub gamma: String,
    pub mu: String,
    pub delta: String,
    pub nu: String,
    pub translation: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegularityEvidence {
    NoCollisionWithin(usize),
    /// `T^i(first) = T^j(second)` for the separation points of the two letters.
    Collision {
        first: Letter,
        i: usize,
        second: Letter,
        j: usize,
        point: QuadraticNumber,
    },
}

impl RegularityEvidence {
    pub fn is_collision(&self) -> bool {
        matches!(self, RegularityEvidence::Collision { .. })
    }
}

/// An interval exchange on `[0, 1)`.
///
/// The top order is the alphabet order, the bottom order is given
/// explicitly. `I_a = [gamma_a, mu_a)`, `J_a = [delta_a, nu_a)`, and
/// `T` translates `I_a` onto `J_a`.
#[derive(Clone, Debug)]
pub struct IntervalExchange {
    alphabet: Alphabet,
    lengths: Vec<QuadraticNumber>,
    bottom: Vec<Letter>,
    gamma: Vec<QuadraticNumber>,
    mu: Vec<QuadraticNumber>,
    delta: Vec<QuadraticNumber>,
    nu: Vec<QuadraticNumber>,
    translation: Vec<QuadraticNumber>,
    minimal: bool,
}

impl IntervalExchange {
    pub fn new(alphabet: Alphabet, lengths: Vec<QuadraticNumber>, bottom: Vec<Letter>) -> Result<Self> {
        let k = alphabet.len();
        if lengths.len() != k {
            return Err(Error::Invalid(format!("{} lengths for {} letters", lengths.len(), k)));
        }
        let mut seen = vec![false; k];
        if bottom.len() != k
            || bottom.iter().any(|&b| (b as usize) >= k || std::mem::replace(&mut seen[b as usize], true))
        {
            return Err(Error::Invalid("bottom order is not a permutation of the alphabet".into()));
        }
        let mut total = QuadraticNumber::zero();
        for (a, l) in lengths.iter().enumerate() {
            if !l.is_positive() {
                return Err(Error::NonPositiveLength(alphabet.symbol(a as Letter).to_string()));
            }
            total = total.try_add(l)?;
        }
        if total != QuadraticNumber::one() {
            return Err(Error::LengthsNotNormalized(total.to_string()));
        }
        let mut gamma = Vec::with_capacity(k);
        let mut mu = Vec::with_capacity(k);
        let mut acc = QuadraticNumber::zero();
        for l in &lengths {
            gamma.push(acc.clone());
            acc = &acc + l;
            mu.push(acc.clone());
        }
        let mut delta = vec![QuadraticNumber::zero(); k];
        let mut nu = vec![QuadraticNumber::zero(); k];
        let mut acc = QuadraticNumber::zero();
        for &b in &bottom {
            delta[b as usize] = acc.clone();
            acc = &acc + &lengths[b as usize];
            nu[b as usize] = acc.clone();
        }
        let translation = (0..k).map(|a| &nu[a] - &mu[a]).collect();
        Ok(IntervalExchange { alphabet, lengths, bottom, gamma, mu, delta, nu, translation, minimal: false })
    }

    /// Two-interval exchange realising `z -> z + alpha mod 1`. Minimality is
    /// asserted when `alpha` is irrational.
    pub fn rotation(alpha: QuadraticNumber) -> Result<Self> {
        let alphabet = Alphabet::from_chars("ab")?;
        let minimal = !alpha.is_rational();
        let t = IntervalExchange::new(alphabet, vec![&QuadraticNumber::one() - &alpha, alpha], vec![1, 0])?;
        Ok(if minimal { t.assume_minimal() } else { t })
    }

    /// Record that the transformation is known to be minimal. The factor
    /// set is only certified complete under this assertion.
    pub fn assume_minimal(mut self) -> Self {
        self.minimal = true;
        self
    }

    pub fn is_minimal_asserted(&self) -> bool {
        self.minimal
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn lengths(&self) -> &[QuadraticNumber] {
        &self.lengths
    }

    pub fn bottom_order(&self) -> &[Letter] {
        &self.bottom
    }

    pub fn translation(&self, a: Letter) -> &QuadraticNumber {
        &self.translation[a as usize]
    }

    pub fn top_interval(&self, a: Letter) -> SemiInterval {
        SemiInterval::new(self.gamma[a as usize].clone(), self.mu[a as usize].clone())
    }

    pub fn bottom_interval(&self, a: Letter) -> SemiInterval {
        SemiInterval::new(self.delta[a as usize].clone(), self.nu[a as usize].clone())
    }

    fn check_domain(z: &QuadraticNumber) -> Result<()> {
        if *z < QuadraticNumber::zero() || *z >= QuadraticNumber::one() {
            return Err(Error::OutOfDomain(z.to_string()));
        }
        Ok(())
    }

    /// The letter `a` with `z` in `I_a`.
    pub fn letter_of(&self, z: &QuadraticNumber) -> Result<Letter> {
        Self::check_domain(z)?;
        let a = self.mu.iter().position(|m| z < m).expect("z below 1");
        Ok(a as Letter)
    }

    pub fn apply(&self, z: &QuadraticNumber) -> Result<QuadraticNumber> {
        let a = self.letter_of(z)?;
        z.try_add(&self.translation[a as usize])
    }

    pub fn apply_inverse(&self, z: &QuadraticNumber) -> Result<QuadraticNumber> {
        Self::check_domain(z)?;
        let a = (0..self.alphabet.len()).find(|&a| self.bottom_interval(a as Letter).contains(z)).expect("partition");
        z.try_sub(&self.translation[a])
    }

    /// First `m` letters of the coding of the orbit of `z`.
    pub fn natural_coding(&self, z: &QuadraticNumber, m: usize) -> Result<Word> {
        let mut out = Vec::with_capacity(m);
        let mut x = z.clone();
        for i in 0..m {
            let a = self.letter_of(&x)?;
            out.push(a);
            if i + 1 < m {
                x = x.try_add(&self.translation[a as usize])?;
            }
        }
        Ok(Word::new(out))
    }

    /// `I_{aw} = (J_a ∩ I_w) - alpha_a`.
    fn extend_left(&self, a: Letter, iw: &SemiInterval) -> SemiInterval {
        self.bottom_interval(a).intersect(iw).shift(&-&self.translation[a as usize])
    }

    /// The set of points whose coding starts with `w`; `[0, 1)` for the
    /// empty word.
    pub fn word_interval(&self, w: &[Letter]) -> Result<SemiInterval> {
        if w.iter().any(|&l| (l as usize) >= self.alphabet.len()) {
            return Err(Error::AlphabetMismatch("word uses letters outside the transformation".into()));
        }
        let mut iv = SemiInterval::new(QuadraticNumber::zero(), QuadraticNumber::one());
        for &a in w.iter().rev() {
            iv = self.extend_left(a, &iv);
            if iv.is_empty() {
                break;
            }
        }
        Ok(iv)
    }

    /// Words with nonempty interval, found by left extension.
    pub fn factor_set(&self, depth: usize) -> Result<FactorSet> {
        let mut words = Vec::new();
        let whole = SemiInterval::new(QuadraticNumber::zero(), QuadraticNumber::one());
        let mut level: Vec<(Word, SemiInterval)> = vec![(Word::empty(), whole)];
        for _ in 0..depth {
            let mut next = Vec::new();
            for (w, iv) in &level {
                for a in self.alphabet.letters() {
                    let ext = self.extend_left(a, iv);
                    if !ext.is_empty() {
                        let aw = w.prepend(a);
                        words.push(aw.clone());
                        next.push((aw, ext));
                    }
                }
            }
            level = next;
        }
        let completeness =
            if self.minimal { Completeness::CertifiedComplete } else { Completeness::PossiblyIncomplete };
        FactorSet::from_factorial(self.alphabet.clone(), depth, words, completeness, Source::Iet(self.format()))
    }

    /// Iterate the nonzero separation points and look for coinciding orbit
    /// points.
    pub fn regularity_evidence(&self, n: usize) -> Result<RegularityEvidence> {
        let mut seen: HashMap<QuadraticNumber, (Letter, usize)> = HashMap::new();
        for a in 1..self.alphabet.len() {
            let mut x = self.gamma[a].clone();
            for i in 0..=n {
                if let Some(&(first, j)) = seen.get(&x) {
                    return Ok(RegularityEvidence::Collision { first, i: j, second: a as Letter, j: i, point: x });
                }
                seen.insert(x.clone(), (a as Letter, i));
                if i < n {
                    x = self.apply(&x)?;
                }
            }
        }
        Ok(RegularityEvidence::NoCollisionWithin(n))
    }

    pub fn boundary_table(&self) -> Vec<BoundaryRow> {
        (0..self.alphabet.len())
            .map(|a| BoundaryRow {
                letter: self.alphabet.symbol(a as Letter).to_string(),
                gamma: self.gamma[a].to_string(),
                mu: self.mu[a].to_string(),
                delta: self.delta[a].to_string(),
                nu: self.nu[a].to_string(),
                translation: self.translation[a].to_string(),
            })
            .collect()
    }

    /// Text form `d=5; a=...; b=...; bottom=b a`, with a trailing
    /// `minimal` when asserted.
    pub fn format(&self) -> String {
        let mut parts = Vec::new();
        if let Some(d) = self.lengths.iter().find_map(|l| l.radicand()) {
            parts.push(format!("d={d}"));
        }
        for (a, l) in self.lengths.iter().enumerate() {
            parts.push(format!("{}={}", self.alphabet.symbol(a as Letter), l));
        }
        let bottom: Vec<&str> = self.bottom.iter().map(|&b| self.alphabet.symbol(b)).collect();
        parts.push(format!("bottom={}", bottom.join(" ")));
        if self.minimal {
            parts.push("minimal".into());
        }
        parts.join("; ")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut radicand: Option<u64> = None;
        let mut names = Vec::new();
        let mut lengths = Vec::new();
        let mut bottom_names: Option<Vec<String>> = None;
        let mut minimal = false;
        for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let part = part.strip_prefix("lambda:").map(str::trim).unwrap_or(part);
            if part == "minimal" {
                minimal = true;
                continue;
            }
            let (key, value) =
                part.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got `{part}`")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "d" => radicand = Some(value.parse().map_err(|_| Error::Parse(format!("bad radicand `{value}`")))?),
                "bottom" | "order" => bottom_names = Some(value.split_whitespace().map(String::from).collect()),
                _ => {
                    let l: QuadraticNumber = value.parse()?;
                    if let (Some(d), Some(e)) = (radicand, l.radicand()) {
                        if d != e {
                            return Err(Error::MixedRadicand(d, e));
                        }
                    }
                    names.push(key.to_string());
                    lengths.push(l);
                }
            }
        }
        let alphabet = Alphabet::new(names)?;
        let bottom = match bottom_names {
            Some(b) => b.iter().map(|s| alphabet.letter(s)).collect::<Result<Vec<_>>>()?,
            None => return Err(Error::Parse("missing bottom order".into())),
        };
        let t = IntervalExchange::new(alphabet, lengths, bottom)?;
        Ok(if minimal { t.assume_minimal() } else { t })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{fixed_point_prefix, FixedPointSpec, Morphism};

    fn q(s: &str) -> QuadraticNumber {
        s.parse().unwrap()
    }

    fn alpha() -> QuadraticNumber {
        q("3/2-1/2*sqrt(5)")
    }

    fn double_rotation() -> IntervalExchange {
        let a = alpha();
        let one = QuadraticNumber::one();
        let two_a = &a + &a;
        IntervalExchange::new(Alphabet::from_chars("abc").unwrap(), vec![&one - &two_a, a.clone(), a], vec![1, 2, 0])
            .unwrap()
            .assume_minimal()
    }

    #[test]
    fn rotation_codes_fibonacci() {
        let r = IntervalExchange::rotation(alpha()).unwrap();
        assert_eq!(r.apply(&QuadraticNumber::zero()).unwrap(), alpha());
        let coding = r.natural_coding(&alpha(), 200).unwrap();
        let fib = Morphism::parse("a->ab; b->a").unwrap();
        let spec = FixedPointSpec::new(fib, 0).unwrap();
        assert_eq!(coding.letters(), fixed_point_prefix(&spec, 200).letters());
        assert_eq!(r.factor_set(7).unwrap().complexity(7).unwrap(), 8);
    }

    #[test]
    fn double_rotation_is_a_rotation_by_two_alpha() {
        let t = double_rotation();
        let two_a = &alpha() + &alpha();
        for a in 0..3 {
            let tr = t.translation(a);
            assert!(*tr == two_a || *tr == &two_a - &QuadraticNumber::one());
        }
        let y = t.natural_coding(&alpha(), 8).unwrap();
        assert_eq!(t.alphabet().format(&y), "baccbacc");
        assert_eq!(t.top_interval(0), SemiInterval::new(QuadraticNumber::zero(), &QuadraticNumber::one() - &two_a));
    }

    #[test]
    fn intervals_match_orbit_occurrences() {
        let t = double_rotation();
        let z = alpha();
        let coding = t.natural_coding(&z, 300).unwrap();
        let mut x = z.clone();
        for n in 0..60 {
            let w = &coding[n..n + 4];
            assert!(t.word_interval(w).unwrap().contains(&x));
            x = t.apply(&x).unwrap();
        }
        let s = t.factor_set(6).unwrap();
        for w in s.iter() {
            assert!(!t.word_interval(w).unwrap().is_empty());
        }
        for n in 0..290 {
            assert!(s.contains(&coding[n..n + 6]));
        }
        assert_eq!(s.complexity(6).unwrap(), 2 * 6 + 1);
    }

    #[test]
    fn double_rotation_words_of_length_five() {
        let s = double_rotation().factor_set(5).unwrap();
        let got: Vec<String> = s.factors_of_length(5).unwrap().iter().map(|w| s.format(w)).collect();
        let want = "acbba accba accbb bacbb baccb bbacb bbacc cbacc cbbac ccbac ccbba";
        assert_eq!(got.join(" "), want);
        assert_eq!(s.len(), 1 + 3 + 5 + 7 + 9 + 11);
    }

    #[test]
    fn identity_exchange() {
        let third = QuadraticNumber::from_ratio(1, 3);
        let t =
            IntervalExchange::new(Alphabet::from_chars("abc").unwrap(), vec![third.clone(); 3], vec![0, 1, 2]).unwrap();
        assert_eq!(t.apply(&third).unwrap(), third);
        assert_eq!(t.alphabet().format(&t.natural_coding(&third, 5).unwrap()), "bbbbb");
        let s = t.factor_set(3).unwrap();
        assert_eq!(s.complexity(2).unwrap_err(), Error::IncompleteSet);
        assert_eq!(s.len(), 1 + 3 * 3);
    }

    #[test]
    fn rational_rotation_collides() {
        let r = IntervalExchange::rotation(QuadraticNumber::from_ratio(1, 3)).unwrap();
        assert!(!r.is_minimal_asserted());
        assert!(r.regularity_evidence(10).unwrap().is_collision());
        let g = IntervalExchange::rotation(alpha()).unwrap();
        assert_eq!(g.regularity_evidence(50).unwrap(), RegularityEvidence::NoCollisionWithin(50));
        assert_eq!(double_rotation().regularity_evidence(50).unwrap(), RegularityEvidence::NoCollisionWithin(50));
    }

    #[test]
    fn validation() {
        let ab = Alphabet::from_chars("ab").unwrap();
        let half = QuadraticNumber::from_ratio(1, 2);
        assert!(matches!(
            IntervalExchange::new(ab.clone(), vec![half.clone(), QuadraticNumber::from_ratio(1, 3)], vec![1, 0]),
            Err(Error::LengthsNotNormalized(_))
        ));
        assert!(matches!(
            IntervalExchange::new(ab.clone(), vec![QuadraticNumber::one(), QuadraticNumber::zero()], vec![1, 0]),
            Err(Error::NonPositiveLength(_))
        ));
        let r = IntervalExchange::new(ab, vec![half.clone(), half], vec![1, 0]).unwrap();
        assert!(matches!(r.apply(&QuadraticNumber::one()), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn text_round_trip() {
        let t = double_rotation();
        let text = t.format();
        let back = IntervalExchange::parse(&text).unwrap();
        assert_eq!(back.format(), text);
        assert!(back.is_minimal_asserted());
        assert!(IntervalExchange::parse("d=5; a=1/2+sqrt(3); b=1/2-sqrt(3); bottom=b a").is_err());
        let table = t.boundary_table();
        assert_eq!(table[1].gamma, "-2+sqrt(5)");
    }
}
