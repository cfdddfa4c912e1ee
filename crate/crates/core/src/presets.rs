//! Named sources of factor sets.

use crate::error::{Error, Result};
use crate::generators::{factor_set_of_fixed_point, FixedPointSpec, Morphism};
use crate::iet::{IntervalExchange, QuadraticNumber};
use crate::returns::{IetCoding, InfiniteWordSource, Periodic};
use crate::words::{Alphabet, Completeness, FactorSet, Source, Word};

pub const PRESET_NAMES: &[&str] = &[
    "fibonacci",
    "tribonacci",
    "ac-bac-cbac",
    "ac-bac-cb",
    "baccb-bacc-bacb",
    "periodic-ab",
    "golden-rotation",
    "golden-double-rotation",
];

/// `(3 - √5)/2`.
pub fn golden_angle() -> QuadraticNumber {
    "3/2-1/2*sqrt(5)".parse().expect("constant")
}

/// The exchange of `[0,1-2α), [1-2α,1-α), [1-α,1)` onto the order
/// `b < c < a`, i.e. the rotation by `2α`.
pub fn golden_double_rotation() -> IntervalExchange {
    let a = golden_angle();
    let two_a = &a + &a;
    let alphabet = Alphabet::from_chars("abc").expect("constant");
    IntervalExchange::new(alphabet, vec![&QuadraticNumber::one() - &two_a, a.clone(), a], vec![1, 2, 0])
        .expect("valid lengths")
        .assume_minimal()
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Preset {
    Morphic(FixedPointSpec),
    Iet(IetCoding),
    Periodic(Periodic),
}

fn morphic(rules: &str, seed: &str) -> Result<Preset> {
    Ok(Preset::Morphic(FixedPointSpec::with_symbol(Morphism::parse(rules)?, seed)?))
}

impl Preset {
    pub fn by_name(name: &str) -> Result<Preset> {
        match name {
            "fibonacci" => morphic("a->ab; b->a", "a"),
            "tribonacci" => morphic("a->ab; b->ac; c->a", "a"),
            "ac-bac-cbac" => morphic("a->ac; b->bac; c->cbac", "a"),
            "ac-bac-cb" => morphic("a->ac; b->bac; c->cb", "a"),
            "baccb-bacc-bacb" => morphic("a->baccb; b->bacc; c->bacb", "b"),
            "periodic-ab" => {
                Ok(Preset::Periodic(Periodic { alphabet: Alphabet::from_chars("ab")?, period: Word::new(vec![0, 1]) }))
            }
            "golden-rotation" => {
                Ok(Preset::Iet(IetCoding { map: IntervalExchange::rotation(golden_angle())?, start: golden_angle() }))
            }
            "golden-double-rotation" => {
                Ok(Preset::Iet(IetCoding { map: golden_double_rotation(), start: golden_angle() }))
            }
            _ => Err(Error::Parse(format!("unknown preset `{name}`; known: {}", PRESET_NAMES.join(", ")))),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.word().alphabet()
    }

    pub fn word(&self) -> &dyn InfiniteWordSource {
        match self {
            Preset::Morphic(spec) => spec,
            Preset::Iet(c) => c,
            Preset::Periodic(p) => p,
        }
    }

    pub fn factor_set(&self, depth: usize) -> Result<FactorSet> {
        match self {
            Preset::Morphic(spec) => factor_set_of_fixed_point(spec, depth),
            Preset::Iet(c) => c.map.factor_set(depth),
            Preset::Periodic(p) => {
                let text = p.prefix(depth + p.period.len())?;
                let label = p.alphabet.format(&p.period);
                FactorSet::factors_of(
                    p.alphabet.clone(),
                    depth,
                    [text.letters()],
                    Completeness::CertifiedComplete,
                    Source::Explicit,
                )
                .map(|s| s.with_source(Source::Morphic(format!("({label})^ω"))))
            }
        }
    }
}
