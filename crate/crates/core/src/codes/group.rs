use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::codes::{CodeSet, DeterministicAutomaton};
use crate::error::{Error, Result};
use crate::words::{Alphabet, FactorSet, Letter, Word};

/// A permutation of `{0, …, n-1}` acting on the right: `p·g = g[p]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Invalid(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Perm(images))
    }

    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// Cycle notation on points `1..=n`, e.g. `(12)` or `(1 3)(2 4)`.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let text = text.trim();
        if text.is_empty() || text == "()" || text == "1" {
            return Ok(Perm(images));
        }
        for cycle in text.split(')').map(|c| c.trim()).filter(|c| !c.is_empty()) {
            let body = cycle.strip_prefix('(').ok_or_else(|| Error::Parse(format!("bad cycle `{cycle}`")))?;
            let points: Vec<usize> = if body.contains([' ', ',']) {
                body.split([' ', ','])
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(e.to_string())))
                    .collect::<Result<_>>()?
            } else {
                body.chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("bad point `{c}`"))))
                    .collect::<Result<_>>()?
            };
            if points.iter().any(|&p| p == 0 || p > n) {
                return Err(Error::Parse(format!("cycle `{cycle})` leaves 1..={n}")));
            }
            let cyc = Perm::cycle(&points.iter().map(|p| p - 1).collect::<Vec<_>>(), n)?;
            images = images.iter().map(|&p| cyc.0[p]).collect();
        }
        Perm::new(images)
    }

    fn cycle(points: &[usize], n: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for (i, &p) in points.iter().enumerate() {
            images[p] = points[(i + 1) % points.len()];
        }
        Perm::new(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, p: usize) -> usize {
        self.0[p]
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&p| other.0[p]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (p, &q) in self.0.iter().enumerate() {
            inv[q] = p;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(p, &q)| p == q)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first && self.0.len() > 9 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
                first = false;
                p = self.0[p];
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "(1)")?;
        }
        Ok(())
    }
}

/// The finite permutation group generated by some permutations.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl FiniteGroup {
    pub fn generated_by(degree: usize, gens: &[Perm]) -> Result<Self> {
        if gens.iter().any(|g| g.degree() != degree) {
            return Err(Error::Invalid("generators of different degrees".into()));
        }
        let mut elements = vec![Perm::identity(degree)];
        let mut index = HashMap::from([(elements[0].clone(), 0)]);
        let mut i = 0;
        while i < elements.len() {
            for g in gens {
                let h = elements[i].then(g);
                if !index.contains_key(&h) {
                    index.insert(h.clone(), elements.len());
                    elements.push(h);
                }
            }
            i += 1;
        }
        Ok(FiniteGroup { elements, index })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn index_of(&self, g: &Perm) -> Option<usize> {
        self.index.get(g).copied()
    }
}

/// A morphism `φ: A* → Sym(n)` given by letter images.
#[derive(Clone, Debug)]
pub struct GroupMorphism {
    alphabet: Alphabet,
    degree: usize,
    images: Vec<Perm>,
}

impl GroupMorphism {
    pub fn new(alphabet: Alphabet, images: Vec<Perm>) -> Result<Self> {
        if images.len() != alphabet.len() {
            return Err(Error::AlphabetMismatch("one permutation per letter is needed".into()));
        }
        let degree = images.first().map(Perm::degree).unwrap_or(0);
        if images.iter().any(|g| g.degree() != degree) {
            return Err(Error::Invalid("letter images have different degrees".into()));
        }
        Ok(GroupMorphism { alphabet, degree, images })
    }

    /// Every letter sent to the generator of `Z/nZ`.
    pub fn cyclic(alphabet: Alphabet, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("cyclic group of order 0".into()));
        }
        let gen = Perm::new((0..n).map(|p| (p + 1) % n).collect())?;
        let images = vec![gen; alphabet.len()];
        GroupMorphism::new(alphabet, images)
    }

    /// Parse `a=(12); b=(13)` with permutations of degree `n`.
    pub fn parse(alphabet: &Alphabet, text: &str, n: usize) -> Result<Self> {
        let mut images = vec![None; alphabet.len()];
        for rule in text.split(';').map(str::trim).filter(|r| !r.is_empty()) {
            let (lhs, rhs) = rule.split_once('=').ok_or_else(|| Error::Parse(format!("rule `{rule}` lacks `=`")))?;
            images[alphabet.letter(lhs.trim())? as usize] = Some(Perm::parse_cycles(rhs, n)?);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(c, g)| g.ok_or_else(|| Error::Parse(format!("no image for `{}`", alphabet.symbol(c as Letter)))))
            .collect::<Result<Vec<_>>>()?;
        GroupMorphism::new(alphabet.clone(), images)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn image(&self, a: Letter) -> &Perm {
        &self.images[a as usize]
    }

    pub fn eval(&self, w: &[Letter]) -> Perm {
        w.iter().fold(Perm::identity(self.degree), |g, &a| g.then(&self.images[a as usize]))
    }

    pub fn group(&self) -> FiniteGroup {
        FiniteGroup::generated_by(self.degree, &self.images).expect("degrees checked at construction")
    }
}

/// A group automaton `(Q, i, i)`: every letter permutes the states.
#[derive(Clone, Debug)]
pub struct GroupAutomatonSpec {
    automaton: DeterministicAutomaton,
}

impl GroupAutomatonSpec {
    pub fn new(automaton: DeterministicAutomaton) -> Result<Self> {
        if !automaton.is_group_automaton() {
            return Err(Error::Invalid("some letter does not act as a permutation".into()));
        }
        if automaton.terminals().len() != 1 || !automaton.terminals().contains(&automaton.initial()) {
            return Err(Error::Invalid("the initial state must be the only terminal".into()));
        }
        Ok(GroupAutomatonSpec { automaton })
    }

    /// The automaton on right cosets `Hg` with `Hg·a = Hgφ(a)`.
    pub fn cosets(phi: &GroupMorphism, subgroup_gens: &[Perm]) -> Result<Self> {
        let group = phi.group();
        let h = FiniteGroup::generated_by(phi.degree(), subgroup_gens)?;
        if h.elements().iter().any(|g| group.index_of(g).is_none()) {
            return Err(Error::Invalid("subgroup is not contained in the image of φ".into()));
        }
        let coset_key = |g: &Perm| -> Perm { h.elements().iter().map(|x| x.then(g)).min().unwrap() };
        let mut states: HashMap<Perm, usize> = HashMap::new();
        let mut reps: Vec<Perm> = Vec::new();
        let start = Perm::identity(phi.degree());
        states.insert(coset_key(&start), 0);
        reps.push(start);
        let mut trans: Vec<Vec<Option<usize>>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(p) = queue.pop_front() {
            let mut row = Vec::new();
            for a in phi.alphabet().letters() {
                let g = reps[p].then(phi.image(a));
                let key = coset_key(&g);
                let q = match states.get(&key) {
                    Some(&q) => q,
                    None => {
                        states.insert(key, reps.len());
                        reps.push(g);
                        queue.push_back(reps.len() - 1);
                        reps.len() - 1
                    }
                };
                row.push(Some(q));
            }
            if trans.len() <= p {
                trans.resize(p + 1, Vec::new());
            }
            trans[p] = row;
        }
        let aut = DeterministicAutomaton::new(phi.alphabet().len(), 0, BTreeSet::from([0]), trans)?;
        GroupAutomatonSpec::new(aut)
    }

    /// Regular representation: states are the group elements.
    pub fn regular(phi: &GroupMorphism) -> Result<Self> {
        GroupAutomatonSpec::cosets(phi, &[])
    }

    pub fn automaton(&self) -> &DeterministicAutomaton {
        &self.automaton
    }

    /// Letter action as a permutation of the states.
    pub fn letter_permutation(&self, a: Letter) -> Perm {
        let n = self.automaton.state_count();
        Perm((0..n).map(|p| self.automaton.step(p, a).unwrap()).collect())
    }
}

/// First returns to the initial state of `aut` among members of `s`.
pub fn first_returns(aut: &DeterministicAutomaton, s: &FactorSet) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    let mut stack = vec![(Word::empty(), aut.initial())];
    while let Some((w, p)) = stack.pop() {
        for a in s.alphabet().letters().rev() {
            let wa = w.append(a);
            if !s.contains(&wa) {
                continue;
            }
            match aut.step(p, a) {
                Some(q) if q == aut.initial() => out.push(wa),
                Some(q) => {
                    if wa.len() == s.depth() {
                        return Err(Error::InsufficientDepth { needed: s.depth() + 1, have: s.depth() });
                    }
                    stack.push((wa, q));
                }
                None => {}
            }
        }
    }
    out.sort();
    Ok(out)
}

/// `X = Z ∩ S` for the group code `Z` recognized by the automaton.
pub fn group_code_intersection(spec: &GroupAutomatonSpec, s: &FactorSet) -> Result<CodeSet> {
    if !s.is_certified() {
        return Err(Error::IncompleteSet);
    }
    CodeSet::new(s.alphabet().clone(), first_returns(spec.automaton(), s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{Completeness, Source};

    fn fib(depth: usize) -> FactorSet {
        let a = Alphabet::from_chars("ab").unwrap();
        let mut w = vec![0u8];
        while w.len() < 2000 {
            w = w.iter().flat_map(|&c| if c == 0 { vec![0, 1] } else { vec![0] }).collect();
        }
        FactorSet::factors_of(a, depth, [w.as_slice()], Completeness::CertifiedComplete, Source::Explicit).unwrap()
    }

    #[test]
    fn perm_basics() {
        let g = Perm::parse_cycles("(12)", 3).unwrap();
        let h = Perm::parse_cycles("(13)", 3).unwrap();
        assert_eq!(g.then(&g), Perm::identity(3));
        assert_eq!(g.to_string(), "(12)");
        assert_eq!(g.then(&h).to_string(), "(123)");
        assert_eq!(FiniteGroup::generated_by(3, &[g, h]).unwrap().order(), 6);
        assert!(Perm::new(vec![0, 0]).is_err());
    }

    #[test]
    fn symmetric_group_code() {
        let s = fib(40);
        let a = s.alphabet().clone();
        let phi = GroupMorphism::parse(&a, "a=(12); b=(13)", 3).unwrap();
        let spec = GroupAutomatonSpec::regular(&phi).unwrap();
        assert_eq!(spec.automaton().state_count(), 6);
        let x = group_code_intersection(&spec, &s).unwrap();
        let mut expected = a.parse_list("aa,baab,abaaba,babaabab,ababaababa,ababaabaabab,babaabaababa").unwrap();
        expected.sort();
        assert_eq!(x.words(), expected.as_slice());
        assert!(x.words().iter().all(|w| phi.eval(w).is_identity()));
    }

    #[test]
    fn cyclic_group_code_is_layer() {
        let s = fib(12);
        let phi = GroupMorphism::cyclic(s.alphabet().clone(), 3).unwrap();
        let spec = GroupAutomatonSpec::regular(&phi).unwrap();
        let x = group_code_intersection(&spec, &s).unwrap();
        assert_eq!(x.words(), s.factors_of_length(3).unwrap());
        let whole = GroupAutomatonSpec::cosets(&phi, &[phi.image(0).clone()]).unwrap();
        let y = group_code_intersection(&whole, &s).unwrap();
        assert_eq!(y.len(), 2);
    }

    #[test]
    fn shallow_depth_is_reported() {
        let s = fib(6);
        let phi = GroupMorphism::parse(s.alphabet(), "a=(12); b=(13)", 3).unwrap();
        let spec = GroupAutomatonSpec::regular(&phi).unwrap();
        assert!(matches!(group_code_intersection(&spec, &s), Err(Error::InsufficientDepth { .. })));
    }
}
