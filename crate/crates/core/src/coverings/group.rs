use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::matrixgroup::FiniteMatrixGroup;

/// Largest group stored with a full multiplication table.
pub const MAX_TABLE_ORDER: usize = 5000;

/// A finite group given by its multiplication table. Element `0` is the
/// identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<usize>,
    labels: Vec<String>,
}

/// Checks that `p` is a permutation of `0..n`.
pub fn check_permutation(p: &[usize], n: usize) -> Result<()> {
    if p.len() != n {
        return Err(Error::BadPermutation(format!("{p:?} has length {}, expected {n}", p.len())));
    }
    let mut seen = vec![false; n];
    for &x in p {
        if x >= n || seen[x] {
            return Err(Error::BadPermutation(format!("{p:?} is not a permutation of 0..{n}")));
        }
        seen[x] = true;
    }
    Ok(())
}

/// Product for the right action: first `a`, then `b`.
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&x| b[x]).collect()
}

pub fn invert_permutation(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

fn format_perm(p: &[usize]) -> String {
    let mut s = String::from("[");
    for (i, x) in p.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        write!(s, "{x}").unwrap();
    }
    s.push(']');
    s
}

impl FiniteGroup {
    fn from_table(order: usize, table: Vec<u32>, labels: Vec<String>) -> Self {
        let inverse = (0..order)
            .map(|a| (0..order).find(|&b| table[a * order + b] == 0).expect("group element has an inverse"))
            .collect();
        FiniteGroup { order, table, inverse, labels }
    }

    /// `Z/n`, element `k` labeled `"k"`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_TABLE_ORDER {
            return Err(Error::InvalidArgument(format!("cyclic group order {n} out of range")));
        }
        let table = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        Ok(Self::from_table(n, table, (0..n).map(|k| k.to_string()).collect()))
    }

    /// The group generated by permutations of `0..degree`, acting on the
    /// right. Returns the group, its elements as permutations (index order),
    /// and the index of each generator.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<(Self, Vec<Vec<usize>>, Vec<usize>)> {
        Self::from_permutations_capped(degree, gens, MAX_TABLE_ORDER)
    }

    /// [`FiniteGroup::from_permutations`], failing with `CapExceeded` once
    /// more than `cap` elements turn up.
    pub fn from_permutations_capped(
        degree: usize,
        gens: &[Vec<usize>],
        cap: usize,
    ) -> Result<(Self, Vec<Vec<usize>>, Vec<usize>)> {
        let cap = cap.min(MAX_TABLE_ORDER);
        for g in gens {
            check_permutation(g, degree)?;
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = compose(&elements[x], g);
                if !index.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded(format!("permutation group exceeds {cap} elements")));
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                table.push(index[&compose(a, b)] as u32);
            }
        }
        let labels = elements.iter().map(|p| format_perm(p)).collect();
        let gen_idx = gens.iter().map(|g| index[g]).collect();
        Ok((Self::from_table(n, table, labels), elements, gen_idx))
    }

    /// Abstract copy of a finite matrix group, same element order.
    ///
    /// Only the right multiplications by generators are computed as matrix
    /// products; the rest of the table follows along a spanning tree of the
    /// Cayley graph.
    pub fn from_matrix_group(g: &FiniteMatrixGroup) -> Result<Self> {
        let n = g.order();
        if n > MAX_TABLE_ORDER {
            return Err(Error::CapExceeded(format!("group of order {n} exceeds {MAX_TABLE_ORDER}")));
        }
        let right: Vec<Vec<usize>> = g
            .generators()
            .iter()
            .map(|&s| (0..n).map(|a| g.mul_index(a, s)).collect())
            .collect();
        // parent[b] = (p, k) with b = p * generator k, in BFS order from 1
        let mut parent = vec![None; n];
        let mut order = vec![0usize];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut head = 0;
        while head < order.len() {
            let a = order[head];
            head += 1;
            for (k, r) in right.iter().enumerate() {
                let b = r[a];
                if !seen[b] {
                    seen[b] = true;
                    parent[b] = Some((a, k));
                    order.push(b);
                }
            }
        }
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            let row = &mut table[a * n..(a + 1) * n];
            row[0] = a as u32;
            for &b in &order[1..] {
                let (p, k) = parent[b].expect("every element is reached from the identity");
                row[b] = right[k][row[p] as usize] as u32;
            }
        }
        Ok(Self::from_table(n, table, g.elements().iter().map(|m| m.to_string()).collect()))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        (0..e).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    /// Element with the given label.
    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Size of the subgroup generated by `gens`.
    pub fn subgroup_order(&self, gens: &[usize]) -> usize {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count
    }

    /// Right multiplication by `g` as a permutation of the elements.
    pub fn right_regular(&self, g: usize) -> Vec<usize> {
        (0..self.order).map(|h| self.mul(h, g)).collect()
    }
}
