use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::abelianization;
use crate::basespace::{Presentation, TwoComplex};
use crate::error::{Error, Result};
use crate::exactfield::FieldCtx;
use crate::matrix::Matrix;

/// One isomorphism class of rank-r local systems: the least generator tuple
/// in the class and the number of tuples in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRep {
    pub images: Vec<Matrix>,
    pub count: usize,
}

/// Every invertible `r x r` matrix over a finite field, in the order of
/// their row-major entry sequences under the field's enumeration.
fn general_linear(ctx: &FieldCtx, r: usize, q: u128) -> Vec<Matrix> {
    let cells = r * r;
    let total = q.pow(cells as u32);
    (0..total)
        .filter_map(|code| {
            let mut digits = vec![0u128; cells];
            let mut c = code;
            for d in digits.iter_mut().rev() {
                *d = c % q;
                c /= q;
            }
            let m = Matrix::from_fn(ctx, r, r, |i, j| ctx.element_at(digits[i * r + j]));
            m.is_invertible().then_some(m)
        })
        .collect()
}

/// All representations of the fundamental group in `GL_r(F_q)` up to
/// simultaneous conjugation, by exhaustive enumeration.
///
/// Tuples are ordered lexicographically with the first generator most
/// significant; each class is represented by its least tuple, and classes
/// are listed in the order of their representatives. Needs
/// `q^(r^2 * generators) <= cap`.
pub fn h1_glr_enumerate(x: &TwoComplex, ctx: &FieldCtx, r: usize, cap: u128) -> Result<Vec<ClassRep>> {
    let q = ctx
        .order()
        .ok_or_else(|| Error::InvalidArgument(format!("class enumeration needs a finite field, not {ctx}")))?;
    if r == 0 {
        return Err(Error::InvalidArgument("rank must be positive".into()));
    }
    let p = Presentation::new(x)?;
    let n = p.num_generators();
    let feasible = u32::try_from(r * r * n)
        .ok()
        .and_then(|e| q.checked_pow(e))
        .filter(|&size| size <= cap);
    if feasible.is_none() {
        return Err(Error::CapExceeded(format!("{q}^({r}^2 * {n}) candidate tuples exceed {cap}")));
    }
    let gl = general_linear(ctx, r, q);
    let size = gl.len();
    let index: HashMap<&Matrix, usize> = gl.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mul: Vec<usize> = (0..size * size).map(|k| index[&(&gl[k / size] * &gl[k % size])]).collect();
    let inv: Vec<usize> = gl.iter().map(|m| index[&m.inverse().expect("invertible")]).collect();
    let steps: Vec<Vec<(usize, bool)>> = p
        .relators()
        .iter()
        .map(|rel| rel.iter().map(|s| (p.generator_position(s.edge).expect("generator"), s.inverse)).collect())
        .collect();
    let identity = index[&Matrix::identity(ctx, r)];
    let satisfies = |tuple: &[usize]| {
        steps.iter().all(|rel| {
            rel.iter()
                .fold(identity, |acc, &(g, inverse)| mul[acc * size + if inverse { inv[tuple[g]] } else { tuple[g] }])
                == identity
        })
    };
    let encode = |tuple: &[usize]| tuple.iter().fold(0usize, |acc, &t| acc * size + t);
    let total = size.pow(n as u32);
    let mut seen = vec![false; total];
    let mut out = Vec::new();
    let mut tuple = vec![0usize; n];
    for code in 0..total {
        let mut c = code;
        for t in tuple.iter_mut().rev() {
            *t = c % size;
            c /= size;
        }
        if seen[code] || !satisfies(&tuple) {
            continue;
        }
        let mut count = 0;
        for g in 0..size {
            let conj: Vec<usize> = tuple.iter().map(|&a| mul[mul[inv[g] * size + a] * size + g]).collect();
            let k = encode(&conj);
            if !seen[k] {
                seen[k] = true;
                count += 1;
            }
        }
        out.push(ClassRep { images: tuple.iter().map(|&t| gl[t].clone()).collect(), count });
    }
    Ok(out)
}

/// Number of characters of the fundamental group with values in `F_q^x`,
/// read off the abelianization: `(q-1)^free * prod gcd(d, q-1)`.
pub fn rank_one_class_count(x: &TwoComplex, ctx: &FieldCtx) -> Result<BigInt> {
    let q = ctx
        .order()
        .ok_or_else(|| Error::InvalidArgument(format!("character count needs a finite field, not {ctx}")))?;
    let units = BigInt::from(q - 1);
    let ab = abelianization(x)?;
    let mut count = num_traits::pow(units.clone(), ab.free_rank);
    for d in &ab.torsion {
        count *= d.gcd(&units);
    }
    Ok(count)
}

/// `rank_one_class_count` as a machine integer, when it fits.
pub fn rank_one_class_count_u64(x: &TwoComplex, ctx: &FieldCtx) -> Result<Option<u64>> {
    Ok(rank_one_class_count(x, ctx)?.to_u64())
}
