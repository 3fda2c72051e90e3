use std::sync::Arc;

use super::is_cocycle;
use crate::basespace::TwoComplex;
use crate::error::{Error, Result};
use crate::exactfield::{FieldCtx, Value};
use crate::localsystem::{CechCocycle, LocalSystem};
use crate::matrix::Matrix;

fn upper_unipotent(ctx: &FieldCtx, corner: &Value) -> Matrix {
    Matrix::from_values(ctx, 2, 2, vec![ctx.one(), corner.clone(), ctx.zero(), ctx.one()])
}

/// The rank-2 extension of the trivial system by itself defined by an edge
/// cocycle: edge `e` is labeled `[[1, xi(e)], [0, 1]]`, so each generator
/// maps to `[[1, xi(g)], [0, 1]]` with `xi(g)` the sum of `xi` around its
/// loop.
pub fn unipotent_from_class(x: &Arc<TwoComplex>, ctx: &FieldCtx, xi: &[Value]) -> Result<LocalSystem> {
    if !is_cocycle(x, ctx, xi) {
        return Err(Error::NotACocycle);
    }
    let labels = xi.iter().map(|v| upper_unipotent(ctx, v)).collect();
    CechCocycle::new(x.clone(), ctx, 2, labels)?.to_local_system()
}

/// Reads the corner entries of an upper unipotent rank-2 system back into
/// an edge cocycle: the corner on each generator edge, zero on tree edges.
pub fn class_from_unipotent(e: &LocalSystem) -> Result<Vec<Value>> {
    let ctx = e.ctx();
    if e.rank() != 2 {
        return Err(Error::ShapeMismatch(format!("rank {} is not 2", e.rank())));
    }
    let x = e.space();
    let p = e.presentation();
    let mut xi = vec![ctx.zero(); x.num_edges()];
    for (k, &g) in p.generators().iter().enumerate() {
        let m = &e.images()[k];
        if !(ctx.is_one(m.get(0, 0)) && ctx.is_zero(m.get(1, 0)) && ctx.is_one(m.get(1, 1))) {
            return Err(Error::NotUnipotentForm(x.edge(g).id.clone()));
        }
        xi[g] = m.get(0, 1).clone();
    }
    Ok(xi)
}
