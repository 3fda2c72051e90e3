//! First cohomology with constant coefficients, additive characters of the
//! fundamental group, and rank-r isomorphism classes by enumeration.

mod classes;
mod smith;
mod unipotent;

pub use classes::{h1_glr_enumerate, rank_one_class_count, rank_one_class_count_u64, ClassRep};
pub use smith::{abelianization, smith_invariants, Abelianization};
pub use unipotent::{class_from_unipotent, unipotent_from_class};

use crate::basespace::{Presentation, TwoComplex};
use crate::error::Result;
use crate::exactfield::{FieldCtx, Value};
use crate::matrix::Matrix;

/// Simplicial cochains of a 2-complex: `d0` (edges x vertices) sends `f` to
/// `e -> f(dst) - f(src)`, `d1` (faces x edges) sums a cochain around each
/// face word with signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplexData {
    pub ctx: FieldCtx,
    pub dims: (usize, usize, usize),
    pub d0: Matrix,
    pub d1: Matrix,
}

pub fn cochain_complex(x: &TwoComplex, ctx: &FieldCtx) -> CochainComplexData {
    let (nv, ne, nf) = (x.num_vertices(), x.num_edges(), x.num_faces());
    let mut d0 = Matrix::zeros(ctx, ne, nv);
    for (e, edge) in x.edges().iter().enumerate() {
        let at_src = ctx.sub(d0.get(e, edge.src), &ctx.one());
        d0.set(e, edge.src, at_src);
        let at_dst = ctx.add(d0.get(e, edge.dst), &ctx.one());
        d0.set(e, edge.dst, at_dst);
    }
    let incidence = x.face_edge_incidence();
    let d1 = Matrix::from_fn(ctx, nf, ne, |f, e| ctx.from_i64(incidence[f][e]));
    CochainComplexData { ctx: ctx.clone(), dims: (nv, ne, nf), d0, d1 }
}

/// A subspace given by its dimension and a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceBasis {
    pub dimension: usize,
    pub basis: Vec<Vec<Value>>,
}

fn columns_rank(ctx: &FieldCtx, len: usize, cols: &[Vec<Value>]) -> usize {
    if cols.is_empty() {
        0
    } else {
        Matrix::from_columns(ctx, len, cols).rank()
    }
}

/// `ker d1 / im d0`, with representatives: kernel vectors that extend a
/// basis of the coboundaries, kept greedily in kernel order.
pub fn h1_constant(x: &TwoComplex, ctx: &FieldCtx) -> SpaceBasis {
    let c = cochain_complex(x, ctx);
    let ne = c.dims.1;
    let mut span: Vec<Vec<Value>> = (0..c.dims.0).map(|v| c.d0.column(v)).collect();
    let mut rank = columns_rank(ctx, ne, &span);
    let mut basis = Vec::new();
    for z in c.d1.kernel_or_all(ne) {
        span.push(z.clone());
        let r = columns_rank(ctx, ne, &span);
        if r > rank {
            rank = r;
            basis.push(z);
        } else {
            span.pop();
        }
    }
    SpaceBasis { dimension: basis.len(), basis }
}

/// Whether an edge cochain is a coboundary.
pub fn is_coboundary(x: &TwoComplex, ctx: &FieldCtx, xi: &[Value]) -> bool {
    let c = cochain_complex(x, ctx);
    c.dims.0 == 0 || c.d0.solve(xi).is_some()
}

/// Whether an edge cochain is a cocycle (`d1 xi = 0`).
pub fn is_cocycle(x: &TwoComplex, ctx: &FieldCtx, xi: &[Value]) -> bool {
    let c = cochain_complex(x, ctx);
    xi.len() == c.dims.1 && c.d1.mul_vec(xi).iter().all(|v| ctx.is_zero(v))
}

/// Homomorphisms from the fundamental group to `(K, +)`: values on the
/// generators solving the abelianized relators.
pub fn hom_to_additive(x: &TwoComplex, ctx: &FieldCtx) -> Result<SpaceBasis> {
    let p = Presentation::new(x)?;
    let n = p.num_generators();
    let rows = abelianized_relators(&p);
    let m = Matrix::from_fn(ctx, rows.len(), n, |i, j| ctx.from_i64(rows[i][j]));
    let basis = m.kernel_or_all(n);
    Ok(SpaceBasis { dimension: basis.len(), basis })
}

/// Signed exponent sums of each generator in each relator.
pub(crate) fn abelianized_relators(p: &Presentation) -> Vec<Vec<i64>> {
    p.relators()
        .iter()
        .map(|rel| {
            let mut row = vec![0i64; p.num_generators()];
            for s in rel {
                let g = p.generator_position(s.edge).expect("relators use generators only");
                row[g] += if s.inverse { -1 } else { 1 };
            }
            row
        })
        .collect()
}

trait KernelOrAll {
    fn kernel_or_all(&self, cols: usize) -> Vec<Vec<Value>>;
}

impl KernelOrAll for Matrix {
    /// Kernel basis; the standard basis when there are no rows.
    fn kernel_or_all(&self, cols: usize) -> Vec<Vec<Value>> {
        if self.rows() > 0 {
            return self.kernel();
        }
        let ctx = self.ctx();
        (0..cols)
            .map(|j| (0..cols).map(|i| if i == j { ctx.one() } else { ctx.zero() }).collect())
            .collect()
    }
}
