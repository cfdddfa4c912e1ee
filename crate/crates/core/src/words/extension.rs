use std::collections::BTreeSet;
use std::fmt::Write;

use petgraph::unionfind::UnionFind;

use crate::codes;
use crate::error::{Error, Result};
use crate::words::{Alphabet, FactorSet, Letter, Word};

/// Left, right and two-sided extensions of a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionRecord {
    pub word: Word,
    pub left: BTreeSet<Letter>,
    pub right: BTreeSet<Letter>,
    pub pairs: BTreeSet<(Letter, Letter)>,
}

impl ExtensionRecord {
    pub fn l(&self) -> usize {
        self.left.len()
    }

    pub fn r(&self) -> usize {
        self.right.len()
    }

    pub fn e(&self) -> usize {
        self.pairs.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Specialness {
    RightSpecial,
    LeftSpecial,
    Bispecial,
    Neither,
}

/// Bipartite graph with word-labelled vertices on each side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionGraph {
    pub left: Vec<Word>,
    pub right: Vec<Word>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphDefect {
    Cycle,
    Disconnected,
    /// No vertices at all: the word is not biextendable.
    Empty,
}

impl ExtensionGraph {
    fn components(&self) -> (UnionFind<usize>, usize) {
        let n = self.left.len() + self.right.len();
        let mut uf = UnionFind::new(n);
        let mut merged = 0;
        for &(l, r) in &self.edges {
            if uf.union(l, self.left.len() + r) {
                merged += 1;
            }
        }
        (uf, n - merged)
    }

    pub fn vertex_count(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn component_count(&self) -> usize {
        self.components().1
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.component_count() == 1
    }

    pub fn is_acyclic(&self) -> bool {
        self.edges.len() + self.component_count() == self.vertex_count()
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges.len() + 1 == self.vertex_count()
    }

    /// Why the graph is not a tree, if it is not.
    pub fn defect(&self) -> Option<GraphDefect> {
        if self.vertex_count() == 0 {
            Some(GraphDefect::Empty)
        } else if !self.is_acyclic() {
            Some(GraphDefect::Cycle)
        } else if !self.is_connected() {
            Some(GraphDefect::Disconnected)
        } else {
            None
        }
    }

    pub fn to_dot(&self, alphabet: &Alphabet, name: &str) -> String {
        let mut out = String::new();
        let label = |w: &Word| {
            let s = alphabet.format(w);
            if s.is_empty() {
                "ε".to_string()
            } else {
                s
            }
        };
        writeln!(out, "graph \"{}\" {{", name.replace('"', "'")).unwrap();
        writeln!(out, "  rankdir=LR;").unwrap();
        for v in &self.left {
            writeln!(out, "  \"L:{}\";", label(v)).unwrap();
        }
        for v in &self.right {
            writeln!(out, "  \"R:{}\";", label(v)).unwrap();
        }
        for &(l, r) in &self.edges {
            writeln!(out, "  \"L:{}\" -- \"R:{}\";", label(&self.left[l]), label(&self.right[r])).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

fn require_member(s: &FactorSet, w: &[Letter]) -> Result<()> {
    if w.len() > s.depth() {
        return Err(Error::DepthExceeded { requested: w.len(), depth: s.depth() });
    }
    if !s.contains(w) {
        return Err(Error::NotAMember(s.format(w)));
    }
    Ok(())
}

/// `L(w)`, `R(w)` and `E(w)` by membership queries. Needs `|w| + 2 <= depth`.
pub fn extensions(s: &FactorSet, w: &[Letter]) -> Result<ExtensionRecord> {
    require_member(s, w)?;
    if w.len() + 2 > s.depth() {
        return Err(Error::DepthExceeded { requested: w.len() + 2, depth: s.depth() });
    }
    let word = Word::from(w);
    let mut rec =
        ExtensionRecord { word: word.clone(), left: BTreeSet::new(), right: BTreeSet::new(), pairs: BTreeSet::new() };
    for a in s.alphabet().letters() {
        let aw = word.prepend(a);
        if s.contains(&aw) {
            rec.left.insert(a);
        }
        if s.contains(&word.append(a)) {
            rec.right.insert(a);
        }
        for b in s.alphabet().letters() {
            if s.contains(&aw.append(b)) {
                rec.pairs.insert((a, b));
            }
        }
    }
    Ok(rec)
}

pub fn is_special(s: &FactorSet, w: &[Letter]) -> Result<Specialness> {
    let rec = extensions(s, w)?;
    Ok(match (rec.l() >= 2, rec.r() >= 2) {
        (true, true) => Specialness::Bispecial,
        (true, false) => Specialness::LeftSpecial,
        (false, true) => Specialness::RightSpecial,
        (false, false) => Specialness::Neither,
    })
}

pub fn extension_graph(s: &FactorSet, w: &[Letter]) -> Result<ExtensionGraph> {
    let rec = extensions(s, w)?;
    let left: Vec<Letter> = rec.left.iter().copied().collect();
    let right: Vec<Letter> = rec.right.iter().copied().collect();
    let edges =
        rec.pairs.iter().map(|(a, b)| (left.binary_search(a).unwrap(), right.binary_search(b).unwrap())).collect();
    Ok(ExtensionGraph {
        left: left.into_iter().map(Word::letter).collect(),
        right: right.into_iter().map(Word::letter).collect(),
        edges,
    })
}

/// `G_{U,V}(w)`: vertices `U(w)`, `V(w)`, edge `(l, r)` iff `lwr` is in `s`.
pub fn generalized_extension_graph(s: &FactorSet, w: &[Letter], u: &[Word], v: &[Word]) -> Result<ExtensionGraph> {
    require_member(s, w)?;
    let max_u = u.iter().map(|x| x.len()).max().unwrap_or(0);
    let max_v = v.iter().map(|x| x.len()).max().unwrap_or(0);
    let needed = w.len() + max_u + max_v;
    if needed > s.depth() {
        return Err(Error::DepthExceeded { requested: needed, depth: s.depth() });
    }
    if !codes::is_s_maximal_suffix(u, s)? {
        return Err(Error::NotSMaximal("left code is not an S-maximal suffix code".into()));
    }
    if !codes::is_s_maximal_prefix(v, s)? {
        return Err(Error::NotSMaximal("right code is not an S-maximal prefix code".into()));
    }
    let mut left: Vec<Word> = u.iter().filter(|l| s.contains(&l.concat(w))).cloned().collect();
    let mut right: Vec<Word> = v.iter().filter(|r| s.contains(&Word::from(w).concat(r))).cloned().collect();
    left.sort();
    left.dedup();
    right.sort();
    right.dedup();
    let mut edges = Vec::new();
    for (i, l) in left.iter().enumerate() {
        let lw = l.concat(w);
        for (j, r) in right.iter().enumerate() {
            if s.contains(&lw.concat(r)) {
                edges.push((i, j));
            }
        }
    }
    Ok(ExtensionGraph { left, right, edges })
}

/// Outcome of checking a per-word graph condition over a truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConditionVerdict {
    Holds { up_to: usize },
    FailsAt { word: Word, defect: GraphDefect },
}

impl ConditionVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, ConditionVerdict::Holds { .. })
    }
}

fn check_graphs(
    s: &FactorSet,
    up_to: usize,
    bad: impl Fn(&ExtensionGraph) -> Option<GraphDefect>,
) -> Result<ConditionVerdict> {
    if up_to + 2 > s.depth() {
        return Err(Error::DepthExceeded { requested: up_to + 2, depth: s.depth() });
    }
    for w in s.words_up_to(up_to) {
        let g = extension_graph(s, w)?;
        if let Some(defect) = bad(&g) {
            return Ok(ConditionVerdict::FailsAt { word: w.clone(), defect });
        }
    }
    Ok(ConditionVerdict::Holds { up_to })
}

/// Every `G(w)` with `|w| <= up_to` is a tree. Needs `up_to <= depth - 2`.
pub fn is_tree_set(s: &FactorSet, up_to: usize) -> Result<ConditionVerdict> {
    check_graphs(s, up_to, ExtensionGraph::defect)
}

/// Every `G(w)` with `|w| <= up_to` is acyclic.
pub fn is_acyclic_set(s: &FactorSet, up_to: usize) -> Result<ConditionVerdict> {
    check_graphs(s, up_to, |g| (!g.is_acyclic()).then_some(GraphDefect::Cycle))
}
