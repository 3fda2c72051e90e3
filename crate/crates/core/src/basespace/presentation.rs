use std::collections::VecDeque;

use super::{Step, TwoComplex};
use crate::error::{Error, Result};

/// Cancels adjacent inverse pairs.
pub fn free_reduce(word: &[Step]) -> Vec<Step> {
    let mut out: Vec<Step> = Vec::with_capacity(word.len());
    for &s in word {
        if out.last() == Some(&s.reversed()) {
            out.pop();
        } else {
            out.push(s);
        }
    }
    out
}

pub fn invert_word(word: &[Step]) -> Vec<Step> {
    word.iter().rev().map(|s| s.reversed()).collect()
}

/// Spanning tree and the induced presentation of the fundamental group at
/// the basepoint.
///
/// The tree is grown breadth-first from the basepoint; each vertex scans its
/// incident edges in lexicographic order of edge id. Generators are the
/// remaining edges, in edge order. An edge `e` stands for the loop
/// `tree(src) e tree(dst)^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    in_tree: Vec<bool>,
    /// For each non-root vertex, the tree step arriving at it and the
    /// vertex it comes from.
    parent: Vec<Option<(Step, usize)>>,
    generators: Vec<usize>,
    position: Vec<Option<usize>>,
    relators: Vec<Vec<Step>>,
}

impl Presentation {
    /// Requires a valid (connected, closed faces) complex.
    pub fn new(x: &TwoComplex) -> Result<Self> {
        x.check()?;
        Ok(Self::spanning(x))
    }

    /// Tree and generators on the basepoint's component, without validation.
    pub(crate) fn spanning(x: &TwoComplex) -> Self {
        let n = x.num_vertices();
        let inc = x.incidence_sorted();
        let mut in_tree = vec![false; x.num_edges()];
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let root = x.basepoint();
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &e in &inc[v] {
                let edge = x.edge(e);
                let (w, step) = if edge.src == v { (edge.dst, Step::fwd(e)) } else { (edge.src, Step::inv(e)) };
                if !seen[w] {
                    seen[w] = true;
                    in_tree[e] = true;
                    parent[w] = Some((step, v));
                    queue.push_back(w);
                }
            }
        }
        let generators: Vec<usize> = (0..x.num_edges()).filter(|&e| !in_tree[e]).collect();
        let mut position = vec![None; x.num_edges()];
        for (i, &g) in generators.iter().enumerate() {
            position[g] = Some(i);
        }
        let mut p = Presentation { in_tree, parent, generators, position, relators: Vec::new() };
        p.relators = x.faces().iter().map(|f| p.path_word(f)).collect();
        p
    }

    /// Cotree edges, as edge indices of the complex.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// Position of an edge in [`Self::generators`], `None` for tree edges.
    pub fn generator_position(&self, edge: usize) -> Option<usize> {
        self.position[edge]
    }

    pub fn relators(&self) -> &[Vec<Step>] {
        &self.relators
    }

    pub fn is_tree_edge(&self, edge: usize) -> bool {
        self.in_tree[edge]
    }

    pub fn tree_edges(&self) -> Vec<usize> {
        (0..self.in_tree.len()).filter(|&e| self.in_tree[e]).collect()
    }

    /// Tree path from the basepoint to `v`.
    pub fn tree_path(&self, v: usize) -> Vec<Step> {
        let mut rev = Vec::new();
        let mut cur = v;
        while let Some((step, prev)) = self.parent[cur] {
            rev.push(step);
            cur = prev;
        }
        rev.reverse();
        rev
    }

    /// Generator word of an arbitrary edge path: tree edges dropped, result
    /// freely reduced. For a path from `u` to `v` it represents
    /// `tree(u) path tree(v)^-1`.
    pub fn path_word(&self, path: &[Step]) -> Vec<Step> {
        let kept: Vec<Step> = path.iter().copied().filter(|s| !self.in_tree[s.edge]).collect();
        free_reduce(&kept)
    }

    /// The word of a closed edge path at the basepoint.
    pub fn loop_word(&self, x: &TwoComplex, path: &[Step]) -> Result<Vec<Step>> {
        if let Some(&first) = path.first() {
            let start = x.step_start(first);
            if start != x.basepoint() {
                return Err(Error::NotAtBasepoint(x.vertex_name(start).to_string()));
            }
        }
        if !x.is_closed_path(path) {
            return Err(Error::NotClosed);
        }
        Ok(self.path_word(path))
    }

    /// A closed edge path at the basepoint representing `word`.
    pub fn word_to_loop(&self, x: &TwoComplex, word: &[Step]) -> Vec<Step> {
        let mut path = Vec::new();
        for &s in word {
            path.extend(self.tree_path(x.step_start(s)));
            path.push(s);
            path.extend(invert_word(&self.tree_path(x.step_end(s))));
        }
        free_reduce(&path)
    }

    pub fn format(&self, x: &TwoComplex) -> String {
        let gens: Vec<&str> = self.generators.iter().map(|&g| x.edge(g).id.as_str()).collect();
        let rels: Vec<String> = self.relators.iter().map(|r| x.format_word(r)).collect();
        format!("generators: {}\nrelators: {}", gens.join(", "), if rels.is_empty() { "none".into() } else { rels.join("; ") })
    }
}

pub fn fundamental_presentation(x: &TwoComplex) -> Result<Presentation> {
    Presentation::new(x)
}

pub fn loop_word(x: &TwoComplex, path: &[Step]) -> Result<Vec<Step>> {
    Presentation::new(x)?.loop_word(x, path)
}
