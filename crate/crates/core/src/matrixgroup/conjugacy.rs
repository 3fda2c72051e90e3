use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactfield::{FieldCtx, Value};
use crate::matrix::Matrix;

/// Outcome of a simultaneous conjugacy search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conjugacy {
    /// Invertible `T` with `T * A_i * T^-1 = B_i` for every `i`, verified.
    Witness(Matrix),
    /// An invariant separates the tuples, or exhaustive search found nothing.
    ProvablyDistinct,
    /// Random search ran out of samples; inconclusive.
    NotFoundInTrials,
}

fn check_shapes(a: &[Matrix], b: &[Matrix]) -> Result<(FieldCtx, usize)> {
    if a.len() != b.len() {
        return Err(Error::ShapeMismatch(format!("{} matrices vs {}", a.len(), b.len())));
    }
    let first = a.first().ok_or_else(|| Error::ShapeMismatch("empty matrix lists".into()))?;
    let ctx = first.ctx().clone();
    let r = first.rows();
    for m in a.iter().chain(b) {
        if m.ctx() != &ctx {
            return Err(Error::CtxMismatch(format!("{} vs {ctx}", m.ctx())));
        }
        if m.rows() != r || m.cols() != r {
            return Err(Error::ShapeMismatch(format!("expected {r}x{r}, found {}x{}", m.rows(), m.cols())));
        }
    }
    Ok((ctx, r))
}

/// Basis of `{T : T * A_i = B_i * T for all i}`.
pub fn intertwiner_basis(a: &[Matrix], b: &[Matrix]) -> Result<Vec<Matrix>> {
    let (ctx, r) = check_shapes(a, b)?;
    let n = r * r;
    let mut rows = Vec::with_capacity(a.len() * n);
    for (ai, bi) in a.iter().zip(b) {
        for i in 0..r {
            for j in 0..r {
                let mut row = vec![ctx.zero(); n];
                for k in 0..r {
                    // (T A)_{ij} picks up t_{ik} A_{kj}; (B T)_{ij} picks up B_{ik} t_{kj}
                    row[i * r + k] = ctx.add(&row[i * r + k], ai.get(k, j));
                    row[k * r + j] = ctx.sub(&row[k * r + j], bi.get(i, k));
                }
                rows.extend(row);
            }
        }
    }
    let system = Matrix::from_values(&ctx, a.len() * n, n, rows);
    Ok(system.kernel().into_iter().map(|v| Matrix::from_values(&ctx, r, r, v)).collect())
}

fn conjugates(t: &Matrix, a: &[Matrix], b: &[Matrix]) -> bool {
    let Some(tinv) = t.inverse() else { return false };
    a.iter().zip(b).all(|(ai, bi)| &(t * ai) * &tinv == *bi)
}

fn combine(ctx: &FieldCtx, basis: &[Matrix], coeffs: &[Value]) -> Matrix {
    let r = basis[0].rows();
    let mut acc = Matrix::zeros(ctx, r, r);
    for (m, c) in basis.iter().zip(coeffs) {
        if !ctx.is_zero(c) {
            acc = &acc + &m.scale(c);
        }
    }
    acc
}

/// Largest intertwiner space, in elements, enumerated exhaustively over a
/// finite field.
const EXHAUSTIVE_LIMIT: u128 = 1_000_000;
const SAMPLES_PER_ROUND: usize = 16;

/// Searches for `T` with `T * A_i * T^-1 = B_i`.
///
/// Invariants checked first: characteristic polynomials, a zero intertwiner
/// space, and `dim Int(A, B)` differing from `dim Int(A, A)` or
/// `dim Int(B, B)`. Then single basis elements are tried, then either every
/// element of a small intertwiner space over a finite field, or `trials`
/// seeded random combinations with integer coefficients in `[-B, B]`, `B`
/// doubling every round.
pub fn conjugacy_witness(a: &[Matrix], b: &[Matrix], trials: usize, seed: u64) -> Result<Conjugacy> {
    let (ctx, r) = check_shapes(a, b)?;
    if a == b {
        return Ok(Conjugacy::Witness(Matrix::identity(&ctx, r)));
    }
    if a.iter().zip(b).any(|(ai, bi)| ai.charpoly() != bi.charpoly()) {
        return Ok(Conjugacy::ProvablyDistinct);
    }
    let basis = intertwiner_basis(a, b)?;
    if basis.is_empty()
        || intertwiner_basis(a, a)?.len() != basis.len()
        || intertwiner_basis(b, b)?.len() != basis.len()
    {
        return Ok(Conjugacy::ProvablyDistinct);
    }
    if let Some(t) = basis.iter().find(|t| conjugates(t, a, b)) {
        return Ok(Conjugacy::Witness(t.clone()));
    }
    let dim = basis.len() as u32;
    if let Some(q) = ctx.order() {
        if let Some(total) = q.checked_pow(dim).filter(|&t| t <= EXHAUSTIVE_LIMIT) {
            for idx in 0..total {
                let mut rest = idx;
                let coeffs: Vec<Value> = (0..dim)
                    .map(|_| {
                        let c = ctx.element_at(rest % q);
                        rest /= q;
                        c
                    })
                    .collect();
                let t = combine(&ctx, &basis, &coeffs);
                if conjugates(&t, a, b) {
                    return Ok(Conjugacy::Witness(t));
                }
            }
            return Ok(Conjugacy::ProvablyDistinct);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bound: i64 = 1;
    let mut done = 0;
    while done < trials {
        for _ in 0..SAMPLES_PER_ROUND.min(trials - done) {
            let coeffs: Vec<Value> = match ctx.order() {
                Some(q) => (0..dim).map(|_| ctx.element_at(rng.gen_range(0..q))).collect(),
                None => (0..dim).map(|_| ctx.from_i64(rng.gen_range(-bound..=bound))).collect(),
            };
            let t = combine(&ctx, &basis, &coeffs);
            if conjugates(&t, a, b) {
                return Ok(Conjugacy::Witness(t));
            }
            done += 1;
        }
        bound = bound.saturating_mul(2).min(1 << 40);
    }
    Ok(Conjugacy::NotFoundInTrials)
}
