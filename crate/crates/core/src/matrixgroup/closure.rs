use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::exactfield::FieldCtx;
use crate::matrix::Matrix;
use crate::poly::Poly;

pub const DEFAULT_CAP: usize = 200_000;

/// A finite group of invertible matrices, elements in discovery order
/// (identity first).
#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    ctx: FieldCtx,
    dim: usize,
    elements: Vec<Matrix>,
    index: HashMap<Matrix, usize>,
    generators: Vec<usize>,
}

impl FiniteMatrixGroup {
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Matrix {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.index.contains_key(m)
    }

    /// Indices of the generators in [`Self::elements`].
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        let prod = &self.elements[a] * &self.elements[b];
        self.index[&prod]
    }

    /// Exhaustive check of the group axioms: identity present, closed under
    /// products and inverses.
    pub fn verify_closure(&self) -> bool {
        let id = Matrix::identity(&self.ctx, self.dim);
        if !self.contains(&id) {
            return false;
        }
        for a in &self.elements {
            match a.inverse() {
                Some(inv) if self.contains(&inv) => {}
                _ => return false,
            }
            for b in &self.elements {
                if !self.contains(&(a * b)) {
                    return false;
                }
            }
        }
        true
    }
}

fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// `Phi_n` over `ctx`, by dividing `x^n - 1` by `Phi_d` for proper divisors.
fn cyclotomic(ctx: &FieldCtx, n: u64) -> Poly {
    let mut coeffs = vec![0i64; n as usize + 1];
    coeffs[0] = -1;
    coeffs[n as usize] = 1;
    let mut p = Poly::from_i64s(ctx, &coeffs);
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        p = p.div_exact(&cyclotomic(ctx, d));
    }
    p
}

/// Product of all `Phi_n` with `phi(n) <= r`. A rational `r x r` matrix has
/// finite order exactly when its minimal polynomial divides this.
fn torsion_polynomial(ctx: &FieldCtx, r: usize) -> Poly {
    let r = r as u64;
    // phi(n) >= sqrt(n / 2), so n <= 2 r^2 covers every candidate
    (1..=2 * r * r + 2)
        .filter(|&n| euler_phi(n) <= r)
        .fold(Poly::one(ctx), |acc, n| acc.mul(&cyclotomic(ctx, n)))
}

fn has_finite_order_over_q(g: &Matrix) -> bool {
    let c = torsion_polynomial(g.ctx(), g.rows());
    c.rem(&g.minpoly()).is_zero()
}

/// Whether an invertible matrix has finite multiplicative order. Always
/// true over a finite field.
pub fn has_finite_order(g: &Matrix) -> bool {
    !g.ctx().is_rationals() || has_finite_order_over_q(g)
}

/// Breadth-first product closure of `gens` (all `dim x dim` over `ctx`).
///
/// Over Q a generator whose minimal polynomial is not a product of
/// distinct cyclotomic factors has infinite order and triggers
/// `CapExceeded` immediately; otherwise the cap governs.
pub fn group_closure(ctx: &FieldCtx, dim: usize, gens: &[Matrix], cap: usize) -> Result<FiniteMatrixGroup> {
    for (i, g) in gens.iter().enumerate() {
        if g.ctx() != ctx {
            return Err(Error::CtxMismatch(format!("generator {i} lives over {}, expected {ctx}", g.ctx())));
        }
        if g.rows() != dim || g.cols() != dim {
            return Err(Error::ShapeMismatch(format!("generator {i} is not {dim}x{dim}")));
        }
        if !g.is_invertible() {
            return Err(Error::SingularGenerator(i));
        }
    }
    if ctx.is_rationals() {
        for (i, g) in gens.iter().enumerate() {
            if !has_finite_order_over_q(g) {
                return Err(Error::CapExceeded(format!("generator {i} has infinite order")));
            }
        }
    }
    let id = Matrix::identity(ctx, dim);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = &elements[x] * g;
            if !index.contains_key(&y) {
                if elements.len() >= cap {
                    return Err(Error::CapExceeded(format!("group order exceeds cap {cap}")));
                }
                index.insert(y.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(y);
            }
        }
    }
    let generators = gens.iter().map(|g| index[g]).collect();
    Ok(FiniteMatrixGroup { ctx: ctx.clone(), dim, elements, index, generators })
}
