//! Randomized property suites with a fixed default seed.

use std::collections::{BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::codes::{is_bifix_code, parse_counts, CodeSet};
use crate::error::{Error, Result};
use crate::freegroup::{fold, saturation_check, Gen, Index, SignedWord};
use crate::generators::{factor_set_of_fixed_point, FixedPointSpec, Morphism};
use crate::presets::Preset;
use crate::returns::{left_right_conjugation, return_words};
use crate::words::{Alphabet, FactorSet, Letter, Word};

pub const DEFAULT_SEED: u64 = 0x7265_6573;

pub const PROPERTY_NAMES: [&str; 6] =
    ["factoriality", "parse-counts", "conjugation", "saturation", "fold-idempotence", "nielsen-schreier"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    /// At most five failing cases.
    pub failures: Vec<String>,
}

impl PropertyReport {
    pub fn holds(&self) -> bool {
        self.passed == self.cases
    }
}

type Case<'a> = Box<dyn FnMut(&mut ChaCha8Rng) -> Result<std::result::Result<(), String>> + 'a>;

pub fn run_property(name: &str, cases: usize, seed: u64) -> Result<PropertyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fixtures = || -> Result<Vec<FactorSet>> {
        Ok(vec![Preset::by_name("fibonacci")?.factor_set(30)?, Preset::by_name("tribonacci")?.factor_set(40)?])
    };
    let mut case: Case = match name {
        "factoriality" => Box::new(factoriality),
        "parse-counts" => Box::new(parse_count_agreement),
        "conjugation" => {
            let sets = fixtures()?;
            Box::new(move |rng| conjugation(rng, &sets))
        }
        "saturation" => {
            let sets: Vec<FactorSet> = fixtures()?.into_iter().map(|s| s.truncate(14)).collect();
            Box::new(move |rng| saturation(rng, &sets))
        }
        "fold-idempotence" => Box::new(fold_idempotence),
        "nielsen-schreier" => Box::new(nielsen_schreier),
        _ => return Err(Error::Parse(format!("unknown property `{name}`"))),
    };
    let mut passed = 0;
    let mut failures = Vec::new();
    for _ in 0..cases {
        match case(&mut rng)? {
            Ok(()) => passed += 1,
            Err(msg) if failures.len() < 5 => failures.push(msg),
            Err(_) => {}
        }
    }
    Ok(PropertyReport { name: name.to_string(), seed, cases, passed, failures })
}

fn random_word(rng: &mut ChaCha8Rng, letters: usize, min: usize, max: usize) -> Word {
    let len = rng.gen_range(min..=max);
    Word::new((0..len).map(|_| rng.gen_range(0..letters) as Letter).collect())
}

fn random_member<'a>(rng: &mut ChaCha8Rng, s: &'a FactorSet, min: usize, max: usize) -> &'a Word {
    loop {
        let level = s.factors_of_length(rng.gen_range(min..=max)).expect("within depth");
        if let Some(w) = level.choose(rng) {
            return w;
        }
    }
}

fn random_bifix_code(rng: &mut ChaCha8Rng, mut draw: impl FnMut(&mut ChaCha8Rng) -> Word) -> Vec<Word> {
    let mut x: Vec<Word> = Vec::new();
    for _ in 0..rng.gen_range(1..=5) {
        let w = draw(rng);
        if x.contains(&w) {
            continue;
        }
        x.push(w);
        if !is_bifix_code(&x) {
            x.pop();
        }
    }
    x
}

fn factoriality(rng: &mut ChaCha8Rng) -> Result<std::result::Result<(), String>> {
    let k = rng.gen_range(2..=3);
    let alphabet = Alphabet::fresh("x", k)?;
    let spec = loop {
        let mut images: Vec<Word> = (0..k).map(|_| random_word(rng, k, 1, 3)).collect();
        images[0] = Word::letter(0).concat(&random_word(rng, k, 1, 2));
        if let Ok(spec) = FixedPointSpec::new(Morphism::endo(alphabet.clone(), images)?, 0) {
            break spec;
        }
    };
    let depth = rng.gen_range(3..=8);
    let s = factor_set_of_fixed_point(&spec, depth)?;
    for w in s.iter() {
        for i in 0..w.len() {
            for j in i..=w.len() {
                if !s.contains(&w[i..j]) {
                    return Ok(Err(format!("{}: factor of {} missing", spec.morphism().format_rules(), s.format(w))));
                }
            }
        }
    }
    let x = if s.is_certified() {
        let mut x = Word::letter(0);
        while x.len() < 3 * depth {
            x = spec.morphism().apply(&x)?;
        }
        x
    } else {
        spec.prefix((4 * depth).max(2))
    };
    for i in 0..x.len() {
        for j in i..=(i + depth).min(x.len()) {
            if !s.contains(&x[i..j]) {
                return Ok(Err(format!("{}: {} missing", spec.morphism().format_rules(), s.format(&x[i..j]))));
            }
        }
    }
    Ok(Ok(()))
}

fn in_star_naive(x: &[Word], w: &[Letter]) -> bool {
    w.is_empty() || x.iter().any(|c| w.starts_with(c) && in_star_naive(x, &w[c.len()..]))
}

fn parse_count_agreement(rng: &mut ChaCha8Rng) -> Result<std::result::Result<(), String>> {
    let k = rng.gen_range(2..=3);
    let x = random_bifix_code(rng, |r| random_word(r, k, 1, 4));
    let w = random_word(rng, k, 0, 10);
    let counts = parse_counts(&x, &w)?;
    let pre = |v: &[Letter]| x.iter().any(|c| v.starts_with(c));
    let suf = |v: &[Letter]| x.iter().any(|c| v.ends_with(c));
    let mut naive = 0;
    for i in 0..=w.len() {
        for j in i..=w.len() {
            if !suf(&w[..i]) && !pre(&w[j..]) && in_star_naive(&x, &w[i..j]) {
                naive += 1;
            }
        }
    }
    if counts.agree() && counts.triples == naive {
        Ok(Ok(()))
    } else {
        Ok(Err(format!("{x:?} on {w:?}: {counts:?}, naive {naive}")))
    }
}

fn conjugation(rng: &mut ChaCha8Rng, sets: &[FactorSet]) -> Result<std::result::Result<(), String>> {
    let s = sets.choose(rng).expect("fixtures");
    let w = random_member(rng, s, 1, 4);
    let rd = return_words(s, w)?;
    let pairs = match left_right_conjugation(&rd) {
        Ok(p) => p,
        Err(e) => return Ok(Err(format!("{}: {e}", s.format(w)))),
    };
    let ok = pairs.len() == rd.first_returns.len()
        && pairs.iter().all(|(x, xl)| w.concat(x) == xl.concat(w) && rd.first_left_returns.contains(xl));
    Ok(if ok { Ok(()) } else { Err(format!("{}: {pairs:?}", s.format(w))) })
}

fn saturation(rng: &mut ChaCha8Rng, sets: &[FactorSet]) -> Result<std::result::Result<(), String>> {
    let s = sets.choose(rng).expect("fixtures");
    let x = random_bifix_code(rng, |r| random_member(r, s, 1, 5).clone());
    let x = CodeSet::new(s.alphabet().clone(), x)?;
    let v = saturation_check(&x, s)?;
    Ok(if v.holds() { Ok(()) } else { Err(format!("{:?}: {v:?}", x.format_words())) })
}

fn random_signed(rng: &mut ChaCha8Rng, k: usize, max: usize) -> SignedWord {
    let len = rng.gen_range(1..=max);
    SignedWord::new(
        (0..len)
            .map(|_| {
                let a = rng.gen_range(0..k) as Letter;
                if rng.gen_bool(0.3) {
                    Gen::neg(a)
                } else {
                    Gen::pos(a)
                }
            })
            .collect(),
    )
}

fn fold_idempotence(rng: &mut ChaCha8Rng) -> Result<std::result::Result<(), String>> {
    let k = rng.gen_range(2..=3);
    let gens: Vec<SignedWord> = (0..rng.gen_range(1..=4)).map(|_| random_signed(rng, k, 5)).collect();
    let g = fold(k, gens.clone());
    let basis = g.basis();
    let mut product = SignedWord::identity();
    for _ in 0..rng.gen_range(1..=4) {
        let h = gens.choose(rng).expect("nonempty");
        product = product.mul(&if rng.gen_bool(0.5) { h.clone() } else { h.inverse() });
    }
    let mut more = gens.clone();
    more.push(product);
    let mut shuffled = gens.clone();
    shuffled.shuffle(rng);
    let ok = fold(k, basis.clone()) == g
        && fold(k, more) == g
        && fold(k, shuffled) == g
        && basis.len() == g.rank()
        && gens.iter().all(|h| g.contains(h));
    Ok(if ok { Ok(()) } else { Err(format!("{gens:?}")) })
}

fn nielsen_schreier(rng: &mut ChaCha8Rng) -> Result<std::result::Result<(), String>> {
    let k = rng.gen_range(2..=3);
    let (n, perms) = loop {
        let n = rng.gen_range(1..=6);
        let perms: Vec<Vec<usize>> = (0..k)
            .map(|_| {
                let mut p: Vec<usize> = (0..n).collect();
                p.shuffle(rng);
                p
            })
            .collect();
        let mut seen = BTreeSet::from([0usize]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for p in &perms {
                let j = p[i];
                let back = p.iter().position(|&t| t == i).expect("permutation");
                for t in [j, back] {
                    if seen.insert(t) {
                        queue.push_back(t);
                    }
                }
            }
        }
        if seen.len() == n {
            break (n, perms);
        }
    };
    // Schreier generators of the stabilizer of 0 from a spanning tree
    let mut path: Vec<Option<SignedWord>> = vec![None; n];
    path[0] = Some(SignedWord::identity());
    let mut tree = BTreeSet::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (a, p) in perms.iter().enumerate() {
            let j = p[i];
            if path[j].is_none() {
                path[j] = Some(path[i].as_ref().expect("visited").mul(&SignedWord::new(vec![Gen::pos(a as Letter)])));
                tree.insert((i, a));
                queue.push_back(j);
            }
        }
        for (a, p) in perms.iter().enumerate() {
            let j = p.iter().position(|&t| t == i).expect("permutation");
            if path[j].is_none() {
                path[j] = Some(path[i].as_ref().expect("visited").mul(&SignedWord::new(vec![Gen::neg(a as Letter)])));
                tree.insert((j, a));
                queue.push_back(j);
            }
        }
    }
    let mut gens = Vec::new();
    for i in 0..n {
        for (a, p) in perms.iter().enumerate() {
            if !tree.contains(&(i, a)) {
                let pi = path[i].as_ref().expect("transitive");
                let pj = path[p[i]].as_ref().expect("transitive");
                gens.push(pi.mul(&SignedWord::new(vec![Gen::pos(a as Letter)])).mul(&pj.inverse()));
            }
        }
    }
    let g = fold(k, gens.clone());
    let expected = 1 + n * (k - 1);
    let ok = g.index() == Index::Finite(n) && g.rank() == expected && gens.len() == expected;
    Ok(if ok {
        Ok(())
    } else {
        Err(format!("action {perms:?}: index {:?}, rank {} (expected {expected})", g.index(), g.rank()))
    })
}
