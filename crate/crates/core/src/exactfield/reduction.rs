//! Passing from rational matrices to matrices over F_p.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactfield::{bigint_to_u64, fp_poly, is_prime, FieldCtx, Value};
use crate::matrix::Matrix;
use crate::poly::factorize;

/// `a/b mod p`, or `None` when `p | b`.
pub fn reduce_rational(q: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let num = (q.numer() % &pb + &pb) % &pb;
    let den = (q.denom() % &pb + &pb) % &pb;
    let den = bigint_to_u64(&den)?;
    let inv = fp_poly::inv_mod(den, p)?;
    Some(fp_poly::mul_mod(bigint_to_u64(&num)?, inv, p))
}

fn add_primes(n: &BigInt, out: &mut BTreeSet<u64>) -> Result<()> {
    if n.is_zero() || n.is_one() || *n == -BigInt::one() {
        return Ok(());
    }
    for (prime, _) in factorize(n)? {
        let p = bigint_to_u64(&prime)
            .ok_or_else(|| Error::UnsupportedClass(format!("prime factor {prime} exceeds 64 bits")))?;
        out.insert(p);
    }
    Ok(())
}

/// The primes `S` such that every matrix lies in `GL_r(Z[1/prod S])`:
/// primes dividing an entry denominator or a determinant numerator.
pub fn denominator_primes(mats: &[Matrix]) -> Result<BTreeSet<u64>> {
    let mut out = BTreeSet::new();
    for m in mats {
        if !m.ctx().is_rationals() {
            return Err(Error::CtxMismatch(format!("expected Q, found {}", m.ctx())));
        }
        if !m.is_square() {
            return Err(Error::ShapeMismatch("matrix is not square".into()));
        }
        for v in m.values() {
            if let Value::Rat(q) = v {
                add_primes(q.denom(), &mut out)?;
            }
        }
        match m.det() {
            Value::Rat(d) if d.is_zero() => return Err(Error::SingularMatrix),
            Value::Rat(d) => add_primes(d.numer(), &mut out)?,
            _ => unreachable!(),
        }
    }
    Ok(out)
}

/// Entrywise reduction modulo a good prime `p`; every output is invertible.
pub fn reduce_mod_p(mats: &[Matrix], p: u64) -> Result<Vec<Matrix>> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    let bad = denominator_primes(mats)?;
    if bad.contains(&p) {
        return Err(Error::PrimeDividesDenominatorOrDet(p));
    }
    let fp = FieldCtx::prime(p)?;
    mats.iter()
        .map(|m| {
            m.try_map_entries(&fp, |v| match v {
                Value::Rat(q) => reduce_rational(q, p).map(Value::Mod).ok_or(Error::PrimeDividesDenominatorOrDet(p)),
                _ => unreachable!(),
            })
        })
        .collect()
}
