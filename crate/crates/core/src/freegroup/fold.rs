use std::collections::{BTreeSet, HashMap, VecDeque};

use petgraph::unionfind::UnionFind;

use super::{Gen, SignedWord};
use crate::words::{Alphabet, Letter};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Index {
    Finite(usize),
    Infinite,
}

/// The folded graph of a finitely generated subgroup, vertex 0 being the
/// base. Vertices are numbered by a breadth-first walk from the base
/// (letters in order, outgoing before incoming), so equal subgroups give
/// equal graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldedGraph {
    letters: usize,
    out: Vec<Vec<Option<usize>>>,
    inc: Vec<Vec<Option<usize>>>,
}

/// Stallings folding of the bouquet of the given generators.
pub fn fold(letters: usize, generators: impl IntoIterator<Item = SignedWord>) -> FoldedGraph {
    let mut edges: Vec<(usize, Letter, usize)> = Vec::new();
    let mut vertices = 1usize;
    for g in generators {
        let gens = g.gens();
        if gens.is_empty() {
            continue;
        }
        let mut prev = 0;
        for (i, x) in gens.iter().enumerate() {
            let next = if i + 1 == gens.len() {
                0
            } else {
                vertices += 1;
                vertices - 1
            };
            if x.inverse {
                edges.push((next, x.letter, prev));
            } else {
                edges.push((prev, x.letter, next));
            }
            prev = next;
        }
    }
    let mut uf: UnionFind<usize> = UnionFind::new(vertices);
    loop {
        let mut changed = false;
        let mut out: HashMap<(usize, Letter), usize> = HashMap::new();
        let mut inc: HashMap<(usize, Letter), usize> = HashMap::new();
        for &(u, a, v) in &edges {
            let (u, v) = (uf.find(u), uf.find(v));
            match out.get(&(u, a)) {
                Some(&t) if uf.find(t) != v => changed |= uf.union(t, v),
                Some(_) => {}
                None => {
                    out.insert((u, a), v);
                }
            }
            let (u, v) = (uf.find(u), uf.find(v));
            match inc.get(&(v, a)) {
                Some(&t) if uf.find(t) != u => changed |= uf.union(t, u),
                Some(_) => {}
                None => {
                    inc.insert((v, a), u);
                }
            }
        }
        if !changed {
            break;
        }
    }
    let folded: BTreeSet<(usize, Letter, usize)> = edges.iter().map(|&(u, a, v)| (uf.find(u), a, uf.find(v))).collect();
    let mut out_map: HashMap<(usize, Letter), usize> = HashMap::new();
    let mut inc_map: HashMap<(usize, Letter), usize> = HashMap::new();
    for &(u, a, v) in &folded {
        out_map.insert((u, a), v);
        inc_map.insert((v, a), u);
    }
    let root = uf.find(0);
    let mut number: HashMap<usize, usize> = HashMap::from([(root, 0)]);
    let mut order = vec![root];
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for a in 0..letters as Letter {
            for t in [out_map.get(&(u, a)), inc_map.get(&(u, a))].into_iter().flatten() {
                if !number.contains_key(t) {
                    number.insert(*t, order.len());
                    order.push(*t);
                    queue.push_back(*t);
                }
            }
        }
    }
    let n = order.len();
    let mut out = vec![vec![None; letters]; n];
    let mut inc = vec![vec![None; letters]; n];
    for &(u, a, v) in &folded {
        let (u, v) = (number[&u], number[&v]);
        out[u][a as usize] = Some(v);
        inc[v][a as usize] = Some(u);
    }
    FoldedGraph { letters, out, inc }
}

impl FoldedGraph {
    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(|row| row.iter().flatten().count()).sum()
    }

    /// Follows the reduced word from the base.
    pub fn walk(&self, w: &SignedWord) -> Option<usize> {
        let mut v = 0;
        for g in w.gens() {
            let table = if g.inverse { &self.inc } else { &self.out };
            v = table[v][g.letter as usize]?;
        }
        Some(v)
    }

    pub fn contains(&self, w: &SignedWord) -> bool {
        self.walk(w) == Some(0)
    }

    pub fn rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    pub fn is_complete(&self) -> bool {
        self.out.iter().chain(&self.inc).all(|row| row.iter().all(Option::is_some))
    }

    pub fn index(&self) -> Index {
        if self.is_complete() {
            Index::Finite(self.vertex_count())
        } else {
            Index::Infinite
        }
    }

    /// One vertex carrying a loop for every letter.
    pub fn is_rose(&self) -> bool {
        self.vertex_count() == 1 && self.is_complete()
    }

    pub fn edges(&self) -> Vec<(usize, Letter, usize)> {
        let mut v = Vec::new();
        for (u, row) in self.out.iter().enumerate() {
            for (a, t) in row.iter().enumerate() {
                if let Some(t) = t {
                    v.push((u, a as Letter, *t));
                }
            }
        }
        v
    }

    /// A free basis read off a breadth-first spanning tree: one generator
    /// `p(u)·a·p(v)⁻¹` per edge `u -a-> v` outside the tree.
    pub fn basis(&self) -> Vec<SignedWord> {
        let n = self.vertex_count();
        let mut path: Vec<Option<SignedWord>> = vec![None; n];
        let mut tree: BTreeSet<(usize, Letter, usize)> = BTreeSet::new();
        path[0] = Some(SignedWord::identity());
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            let pu = path[u].clone().expect("visited");
            for a in 0..self.letters as Letter {
                if let Some(v) = self.out[u][a as usize] {
                    if path[v].is_none() {
                        path[v] = Some(pu.mul(&SignedWord::new(vec![Gen::pos(a)])));
                        tree.insert((u, a, v));
                        queue.push_back(v);
                    }
                }
                if let Some(v) = self.inc[u][a as usize] {
                    if path[v].is_none() {
                        path[v] = Some(pu.mul(&SignedWord::new(vec![Gen::neg(a)])));
                        tree.insert((v, a, u));
                        queue.push_back(v);
                    }
                }
            }
        }
        self.edges()
            .into_iter()
            .filter(|e| !tree.contains(e))
            .map(|(u, a, v)| {
                let pu = path[u].as_ref().expect("connected");
                let pv = path[v].as_ref().expect("connected");
                pu.mul(&SignedWord::new(vec![Gen::pos(a)])).mul(&pv.inverse())
            })
            .collect()
    }

    pub fn letter_count(&self) -> usize {
        self.letters
    }

    pub fn to_dot(&self, alphabet: &Alphabet, name: &str) -> String {
        let mut s = format!("digraph \"{name}\" {{\n  rankdir=LR;\n  0 [shape=doublecircle];\n");
        for v in 1..self.vertex_count() {
            s.push_str(&format!("  {v} [shape=circle];\n"));
        }
        for (u, a, v) in self.edges() {
            s.push_str(&format!("  {u} -> {v} [label=\"{}\"];\n", alphabet.symbol(a)));
        }
        s.push_str("}\n");
        s
    }
}

/// `|X| = |A|` and `<X>` is the whole free group.
pub fn is_basis(x: &[SignedWord], alphabet: &Alphabet) -> bool {
    x.len() == alphabet.len() && fold(alphabet.len(), x.iter().cloned()).is_rose()
}
