use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactfield::{FieldCtx, Value};
use crate::matrix::Matrix;

/// Outcome of [`matrix_root`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootResult {
    /// `N` with `N^d = M`, verified.
    Found(Matrix),
    /// No `d`-th root exists over the field.
    NoRootFound,
    /// `M` lies outside the class where the search is decisive.
    UnsupportedClass(String),
}

const MAX_SCALAR_SEARCH: u128 = 1 << 24;

fn exact_int_root(n: &BigInt, d: u32) -> Option<BigInt> {
    if n.is_negative() {
        if d.is_multiple_of(2) {
            return None;
        }
        return exact_int_root(&-n, d).map(|r| -r);
    }
    let r = n.nth_root(d);
    (num_traits::pow(r.clone(), d as usize) == *n).then_some(r)
}

/// A `d`-th root of `a` in `ctx`, if one exists.
///
/// Over Q this is exact integer root extraction of numerator and
/// denominator; over a finite field it is an exhaustive search returning the
/// first root in enumeration order.
pub fn scalar_root(ctx: &FieldCtx, a: &Value, d: u64) -> Result<Option<Value>> {
    if d == 0 {
        return Err(Error::InvalidArgument("root degree must be positive".into()));
    }
    match a {
        Value::Rat(x) => {
            if x.is_zero() {
                return Ok(Some(a.clone()));
            }
            let Ok(d32) = u32::try_from(d) else {
                // only +-1 have roots of such huge degree
                let one = BigRational::from_integer(1.into());
                return Ok(if *x == one || (*x == -one && d % 2 == 1) { Some(a.clone()) } else { None });
            };
            let num = exact_int_root(x.numer(), d32);
            let den = exact_int_root(x.denom(), d32);
            Ok(num.zip(den).map(|(n, m)| Value::Rat(BigRational::new(n, m))))
        }
        _ => {
            let q = ctx
                .order()
                .filter(|&q| q <= MAX_SCALAR_SEARCH)
                .ok_or_else(|| Error::UnsupportedClass(format!("root search over {ctx} is too large")))?;
            Ok((0..q).map(|i| ctx.element_at(i)).find(|x| ctx.pow_u(x, d as u128) == *a))
        }
    }
}

/// A `d`-th root of the invertible matrix `m`.
///
/// Decisive for `1 x 1` matrices and for matrices diagonalizable over the
/// field with pairwise distinct eigenvalues. Diagonalizable matrices with a
/// repeated eigenvalue still get a root when every eigenvalue has one;
/// otherwise the answer is `UnsupportedClass`, since a root may mix
/// eigenvectors (e.g. `-I` is a square over Q).
pub fn matrix_root(m: &Matrix, d: u64) -> Result<RootResult> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch("matrix is not square".into()));
    }
    if d == 0 {
        return Err(Error::InvalidArgument("root degree must be positive".into()));
    }
    if !m.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    let ctx = m.ctx();
    let r = m.rows();
    if d == 1 || m.is_identity() {
        return Ok(RootResult::Found(m.clone()));
    }
    if r == 1 {
        return Ok(match scalar_root(ctx, m.get(0, 0), d)? {
            Some(x) => RootResult::Found(Matrix::from_values(ctx, 1, 1, vec![x])),
            None => RootResult::NoRootFound,
        });
    }
    let eigenvalues = m.charpoly().roots()?;
    let mut columns = Vec::with_capacity(r);
    let mut diagonal = Vec::with_capacity(r);
    let mut missing = false;
    for lambda in &eigenvalues {
        let shifted = m - &Matrix::identity(ctx, r).scale(lambda);
        let space = shifted.kernel();
        match scalar_root(ctx, lambda, d)? {
            Some(nu) => diagonal.extend(std::iter::repeat_n(nu, space.len())),
            None => missing = true,
        }
        columns.extend(space);
    }
    if columns.len() < r {
        return Ok(RootResult::UnsupportedClass("matrix is not diagonalizable over its field".into()));
    }
    if missing {
        return Ok(if eigenvalues.len() == r {
            RootResult::NoRootFound
        } else {
            RootResult::UnsupportedClass("repeated eigenvalue without a scalar root".into())
        });
    }
    let p = Matrix::from_columns(ctx, r, &columns);
    let pinv = p.inverse().ok_or(Error::SingularMatrix)?;
    let n = &(&p * &Matrix::diag(ctx, &diagonal)) * &pinv;
    if n.pow(d as u128) != *m {
        return Err(Error::UnsupportedClass("constructed root failed verification".into()));
    }
    Ok(RootResult::Found(n))
}
