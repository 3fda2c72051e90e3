//! Random field elements and matrices for randomized checks and demos.

use rand::Rng;

use crate::exactfield::{FieldCtx, Value};
use crate::matrix::Matrix;

/// A uniform element of a finite field, or an integer in `-bound..=bound`
/// over Q.
pub fn random_value<R: Rng>(ctx: &FieldCtx, rng: &mut R, bound: i64) -> Value {
    match ctx.order() {
        Some(q) => ctx.element_at(rng.gen_range(0..q)),
        None => ctx.from_i64(rng.gen_range(-bound..=bound)),
    }
}

pub fn random_matrix<R: Rng>(ctx: &FieldCtx, n: usize, rng: &mut R, bound: i64) -> Matrix {
    Matrix::from_fn(ctx, n, n, |_, _| random_value(ctx, rng, bound))
}

/// Rejection sampling until the matrix is invertible.
pub fn random_invertible<R: Rng>(ctx: &FieldCtx, n: usize, rng: &mut R, bound: i64) -> Matrix {
    loop {
        let m = random_matrix(ctx, n, rng, bound.max(1));
        if m.is_invertible() {
            return m;
        }
    }
}
