//! Univariate polynomials over a [`FieldCtx`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactfield::{FieldCtx, Value};

/// Coefficients low to high, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ctx: FieldCtx,
    coeffs: Vec<Value>,
}

impl Poly {
    pub fn new(ctx: &FieldCtx, coeffs: Vec<Value>) -> Self {
        let mut p = Poly { ctx: ctx.clone(), coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(ctx: &FieldCtx, coeffs: &[i64]) -> Self {
        Self::new(ctx, coeffs.iter().map(|&c| ctx.from_i64(c)).collect())
    }

    pub fn zero(ctx: &FieldCtx) -> Self {
        Poly { ctx: ctx.clone(), coeffs: Vec::new() }
    }

    pub fn one(ctx: &FieldCtx) -> Self {
        Self::constant(ctx, ctx.one())
    }

    pub fn constant(ctx: &FieldCtx, c: Value) -> Self {
        Self::new(ctx, vec![c])
    }

    /// `x - a`
    pub fn linear(ctx: &FieldCtx, a: &Value) -> Self {
        Self::new(ctx, vec![ctx.neg(a), ctx.one()])
    }

    fn trim(&mut self) {
        while let Some(c) = self.coeffs.last() {
            if self.ctx.is_zero(c) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Value] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Value {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> Option<&Value> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| self.ctx.add(&self.coeff(i), &other.coeff(i))).collect();
        Poly::new(&self.ctx, c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| self.ctx.sub(&self.coeff(i), &other.coeff(i))).collect();
        Poly::new(&self.ctx, c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ctx);
        }
        let mut out = vec![self.ctx.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.ctx.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = self.ctx.add(&out[i + j], &self.ctx.mul(a, b));
            }
        }
        Poly::new(&self.ctx, out)
    }

    pub fn scale(&self, c: &Value) -> Poly {
        Poly::new(&self.ctx, self.coeffs.iter().map(|a| self.ctx.mul(a, c)).collect())
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(&self.ctx), |acc, _| acc.mul(self))
    }

    /// Panics when dividing by the zero polynomial.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = self.ctx.inv(d.lead().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n <= dd {
            return (Poly::zero(&self.ctx), self.clone());
        }
        let mut quot = vec![self.ctx.zero(); n - dd];
        for i in (dd..n).rev() {
            let c = self.ctx.mul(&rem[i], &lead_inv);
            if self.ctx.is_zero(&c) {
                continue;
            }
            let shift = i - dd;
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[shift + j] = self.ctx.sub(&rem[shift + j], &self.ctx.mul(&c, dc));
            }
            quot[shift] = c;
        }
        rem.truncate(dd);
        (Poly::new(&self.ctx, quot), Poly::new(&self.ctx, rem))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Exact division; panics if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&self.ctx.inv(l).unwrap()),
        }
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ctx);
        }
        self.mul(other).div_exact(&self.gcd(other)).monic()
    }

    pub fn derivative(&self) -> Poly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| self.ctx.mul(a, &self.ctx.from_i64(i as i64)))
            .collect();
        Poly::new(&self.ctx, c)
    }

    pub fn eval(&self, x: &Value) -> Value {
        self.coeffs
            .iter()
            .rev()
            .fold(self.ctx.zero(), |acc, c| self.ctx.add(&self.ctx.mul(&acc, x), c))
    }

    /// Squarefree over a perfect field: coprime to its derivative.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative();
                !d.is_zero() && self.gcd(&d).degree() == Some(0)
            }
        }
    }

    /// Product of the distinct monic irreducible factors.
    pub fn radical(&self) -> Poly {
        match self.degree() {
            None => return Poly::zero(&self.ctx),
            Some(0) => return Poly::one(&self.ctx),
            _ => {}
        }
        let d = self.derivative();
        if d.is_zero() {
            // only in characteristic p: f = g(x^p) = h^p
            return self.pth_root().radical();
        }
        let c = self.gcd(&d);
        let w = self.div_exact(&c);
        w.lcm(&c.radical()).monic()
    }

    /// For `f(x) = g(x^p)` over a finite field, the `h` with `h^p = f`.
    fn pth_root(&self) -> Poly {
        let p = self.ctx.characteristic() as usize;
        assert!(p > 0, "p-th root in characteristic zero");
        // inverse Frobenius on F_{p^k} is the p^(k-1)-th power
        let exp = (p as u128).pow(self.ctx.degree() as u32 - 1);
        let c = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|a| self.ctx.pow_u(a, exp))
            .collect();
        Poly::new(&self.ctx, c)
    }

    /// Distinct roots in the field, in increasing order.
    ///
    /// Finite fields are searched exhaustively; over Q candidates come
    /// from the rational root theorem.
    pub fn roots(&self) -> Result<Vec<Value>> {
        if self.is_zero() {
            return Err(Error::UnsupportedClass("roots of the zero polynomial".into()));
        }
        if self.ctx.is_rationals() {
            return self.rational_roots();
        }
        let elems = self
            .ctx
            .elements()
            .ok_or_else(|| Error::UnsupportedClass("field too large for root search".into()))?;
        Ok(elems.into_iter().filter(|x| self.ctx.is_zero(&self.eval(x))).collect())
    }

    fn rational_roots(&self) -> Result<Vec<Value>> {
        let rats: Vec<BigRational> = self
            .coeffs
            .iter()
            .map(|v| match v {
                Value::Rat(q) => q.clone(),
                _ => unreachable!(),
            })
            .collect();
        let den_lcm = rats.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<BigInt> = rats.iter().map(|q| (q * &den_lcm).to_integer()).collect();
        let mut roots = Vec::new();
        let low = ints.iter().position(|c| !c.is_zero()).unwrap();
        if low > 0 {
            roots.push(BigRational::zero());
        }
        let a0 = ints[low].abs();
        let an = ints.last().unwrap().abs();
        if ints.len() - low > 1 {
            let num_divs = divisors(&a0)?;
            let den_divs = divisors(&an)?;
            for n in &num_divs {
                for d in &den_divs {
                    for sign in [1, -1] {
                        let cand = BigRational::new(n * sign, d.clone());
                        if !roots.contains(&cand) && self.ctx.is_zero(&self.eval(&Value::Rat(cand.clone()))) {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
        roots.sort();
        Ok(roots.into_iter().map(Value::Rat).collect())
    }
}

const TRIAL_DIVISION_LIMIT: u64 = 10_000_000;

/// Prime factorization of a positive integer by trial division.
pub(crate) fn factorize(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    let mut steps = 0u64;
    while &d * &d <= n {
        if steps > TRIAL_DIVISION_LIMIT {
            return Err(Error::UnsupportedClass(format!("cannot factor {n} by trial division")));
        }
        let mut e = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += if d == BigInt::from(2) { 1 } else { 2 };
        steps += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    Ok(out)
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factorize(n)? {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.ctx.is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = self.ctx.format_value(c);
            let cs = if cs.contains(['+', '-', '/']) && i > 0 { format!("({cs})") } else { cs };
            match i {
                0 => write!(f, "{cs}")?,
                1 if self.ctx.is_one(c) => write!(f, "x")?,
                1 => write!(f, "{cs}*x")?,
                _ if self.ctx.is_one(c) => write!(f, "x^{i}")?,
                _ => write!(f, "{cs}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {}", self.ctx)
    }
}
