use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write;

use crate::codes::is_prefix_code;
use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

/// A deterministic automaton with a partial transition map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterministicAutomaton {
    letters: usize,
    initial: usize,
    terminals: BTreeSet<usize>,
    trans: Vec<Vec<Option<usize>>>,
}

impl DeterministicAutomaton {
    pub fn new(
        letters: usize,
        initial: usize,
        terminals: BTreeSet<usize>,
        trans: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let n = trans.len();
        if initial >= n || terminals.iter().any(|&t| t >= n) {
            return Err(Error::Invalid("state index out of range".into()));
        }
        for row in &trans {
            if row.len() != letters || row.iter().flatten().any(|&q| q >= n) {
                return Err(Error::Invalid("malformed transition table".into()));
            }
        }
        Ok(DeterministicAutomaton { letters, initial, terminals, trans })
    }

    pub fn state_count(&self) -> usize {
        self.trans.len()
    }

    pub fn letter_count(&self) -> usize {
        self.letters
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn terminals(&self) -> &BTreeSet<usize> {
        &self.terminals
    }

    pub fn step(&self, p: usize, a: Letter) -> Option<usize> {
        self.trans[p][a as usize]
    }

    /// `p·w`, if defined.
    pub fn run_from(&self, p: usize, w: &[Letter]) -> Option<usize> {
        w.iter().try_fold(p, |q, &a| self.step(q, a))
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        self.run_from(self.initial, w).is_some_and(|q| self.terminals.contains(&q))
    }

    pub fn is_complete(&self) -> bool {
        self.trans.iter().all(|row| row.iter().all(Option::is_some))
    }

    fn reachable_from(&self, starts: &[usize], forward: bool) -> BTreeSet<usize> {
        let mut seen: BTreeSet<usize> = starts.iter().copied().collect();
        let mut queue: VecDeque<usize> = starts.iter().copied().collect();
        while let Some(p) = queue.pop_front() {
            for q in 0..self.state_count() {
                let edge = if forward { self.trans[p].contains(&Some(q)) } else { self.trans[q].contains(&Some(p)) };
                if edge && seen.insert(q) {
                    queue.push_back(q);
                }
            }
        }
        seen
    }

    pub fn is_trim(&self) -> bool {
        let all = self.state_count();
        let terminals: Vec<usize> = self.terminals.iter().copied().collect();
        self.reachable_from(&[self.initial], true).len() == all && self.reachable_from(&terminals, false).len() == all
    }

    /// Trim with the initial state as the only terminal.
    pub fn is_simple(&self) -> bool {
        self.terminals.len() == 1 && self.terminals.contains(&self.initial) && self.is_trim()
    }

    /// Whether `a` acts as a permutation of the states.
    pub fn letter_is_permutation(&self, a: Letter) -> bool {
        let mut hit = vec![false; self.state_count()];
        for row in &self.trans {
            match row[a as usize] {
                Some(q) if !hit[q] => hit[q] = true,
                _ => return false,
            }
        }
        true
    }

    pub fn is_group_automaton(&self) -> bool {
        (0..self.letters).all(|a| self.letter_is_permutation(a as Letter))
    }

    /// Moore minimization; the result is renumbered in breadth-first order.
    pub fn minimize(&self) -> DeterministicAutomaton {
        let n = self.state_count();
        let sink = n;
        let next = |p: usize, a: usize| if p == sink { sink } else { self.trans[p][a].unwrap_or(sink) };
        let mut class: Vec<usize> = (0..=n).map(|p| usize::from(p < n && self.terminals.contains(&p))).collect();
        loop {
            let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let refined: Vec<usize> = (0..=n)
                .map(|p| {
                    let sig = (class[p], (0..self.letters).map(|a| class[next(p, a)]).collect());
                    let k = ids.len();
                    *ids.entry(sig).or_insert(k)
                })
                .collect();
            let done = ids.len() == class.iter().collect::<BTreeSet<_>>().len();
            class = refined;
            if done {
                break;
            }
        }
        let dead = class[sink];
        let mut number: HashMap<usize, usize> = HashMap::new();
        let mut order = vec![self.initial];
        number.insert(class[self.initial], 0);
        let mut i = 0;
        while i < order.len() {
            let p = order[i];
            for a in 0..self.letters {
                let q = next(p, a);
                if class[q] != dead && !number.contains_key(&class[q]) {
                    number.insert(class[q], order.len());
                    order.push(q);
                }
            }
            i += 1;
        }
        let trans = order
            .iter()
            .map(|&p| {
                (0..self.letters)
                    .map(|a| {
                        let q = next(p, a);
                        (class[q] != dead).then(|| number[&class[q]])
                    })
                    .collect()
            })
            .collect();
        let terminals = order.iter().enumerate().filter(|(_, p)| self.terminals.contains(p)).map(|(i, _)| i).collect();
        DeterministicAutomaton { letters: self.letters, initial: 0, terminals, trans }
    }

    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        let mut out = String::from("digraph automaton {\n  rankdir=LR;\n");
        for p in 0..self.state_count() {
            let shape = if p == self.initial { "doublecircle" } else { "circle" };
            let mark = if self.terminals.contains(&p) { ", style=bold" } else { "" };
            writeln!(out, "  q{p} [shape={shape}{mark}];").unwrap();
        }
        for p in 0..self.state_count() {
            let mut by_target: Vec<(usize, Vec<&str>)> = Vec::new();
            for a in alphabet.letters() {
                if let Some(q) = self.trans[p][a as usize] {
                    match by_target.iter_mut().find(|(t, _)| *t == q) {
                        Some((_, labels)) => labels.push(alphabet.symbol(a)),
                        None => by_target.push((q, vec![alphabet.symbol(a)])),
                    }
                }
            }
            for (q, labels) in by_target {
                writeln!(out, "  q{p} -> q{q} [label=\"{}\"];", labels.join(",")).unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Minimal automaton of `X*` for a prefix code `X`.
pub fn minimal_automaton_of_star(x: &[Word], letters: usize) -> Result<DeterministicAutomaton> {
    if x.iter().any(|w| w.is_empty()) {
        return Err(Error::EmptyWordInCode);
    }
    if !is_prefix_code(x) {
        return Err(Error::NotPrefixCode);
    }
    if x.iter().flat_map(|w| w.iter()).any(|&a| a as usize >= letters) {
        return Err(Error::AlphabetMismatch("code word uses unknown letters".into()));
    }
    // trie over the proper prefixes of X; completing a code word returns to the root
    let mut index: HashMap<Word, usize> = HashMap::new();
    index.insert(Word::empty(), 0);
    let mut trans: Vec<Vec<Option<usize>>> = vec![vec![None; letters]];
    let mut words: Vec<&Word> = x.iter().collect();
    words.sort_by_key(|w| w.len());
    for w in words {
        let mut p = 0;
        for i in 0..w.len() {
            let a = w[i] as usize;
            let q = if i + 1 == w.len() {
                0
            } else {
                let key = w.slice(0, i + 1);
                match index.get(&key) {
                    Some(&q) => q,
                    None => {
                        trans.push(vec![None; letters]);
                        index.insert(key, trans.len() - 1);
                        trans.len() - 1
                    }
                }
            };
            trans[p][a] = Some(q);
            p = q;
        }
    }
    let raw = DeterministicAutomaton { letters, initial: 0, terminals: BTreeSet::from([0]), trans };
    Ok(raw.minimize())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_automata_sizes() {
        let a = Alphabet::from_chars("abc").unwrap();
        let x = a.parse_list("aa,ab,ac,ba,ca").unwrap();
        let m = minimal_automaton_of_star(&x, 3).unwrap();
        assert_eq!(m.state_count(), 3);
        assert!(m.is_simple());
        assert!(m.accepts(&a.parse("aabaca").unwrap()));
        assert!(!m.accepts(&a.parse("aab").unwrap()));
        let letters = a.parse_list("a,b,c").unwrap();
        assert_eq!(minimal_automaton_of_star(&letters, 3).unwrap().state_count(), 1);
        let ab = a.parse_list("ab,ba").unwrap();
        assert_eq!(minimal_automaton_of_star(&ab, 3).unwrap().state_count(), 3);
        assert!(minimal_automaton_of_star(&a.parse_list("a,ab").unwrap(), 3).is_err());
    }

    #[test]
    fn star_automaton_agrees_with_factorization() {
        let a = Alphabet::from_chars("ab").unwrap();
        let x = a.parse_list("a,ba,bb").unwrap();
        let m = minimal_automaton_of_star(&x, 2).unwrap();
        assert!(m.is_complete() && !m.is_group_automaton());
        for len in 0..8usize {
            for bits in 0..(1u32 << len) {
                let w: Vec<Letter> = (0..len).map(|i| ((bits >> i) & 1) as Letter).collect();
                // oracle: greedy decoding of a prefix code
                let mut i = 0;
                let mut ok = true;
                while i < w.len() {
                    match x.iter().find(|c| w[i..].starts_with(c)) {
                        Some(c) => i += c.len(),
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                assert_eq!(m.accepts(&w), ok);
            }
        }
    }

    #[test]
    fn dot_marks_initial() {
        let a = Alphabet::from_chars("ab").unwrap();
        let m = minimal_automaton_of_star(&a.parse_list("ab,ba").unwrap(), 2).unwrap();
        assert!(m.to_dot(&a).contains("q0 [shape=doublecircle"));
    }
}
