//! Exact scalar fields: the rationals, prime fields and small extension
//! fields of prime fields.
//!
//! A [`FieldCtx`] is a cheap handle (an `Arc`) describing the field; raw
//! payloads are [`Value`]s and all arithmetic goes through the context.
//! [`FieldElem`] bundles a value with its context for the public API.

mod embedding;
pub(crate) mod fp_poly;
mod reduction;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use embedding::Embedding;
pub use reduction::{denominator_primes, reduce_mod_p, reduce_rational};

/// Largest extension degree accepted by [`FieldCtx::extension`].
pub const MAX_EXTENSION_DEGREE: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
    /// `F_p[x] / (modulus)`, modulus monic, coefficients low to high.
    Extension { p: u64, modulus: Vec<u64> },
}

/// Payload of a field element. Meaningful only together with its context.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Rat(BigRational),
    Mod(u64),
    /// Residue polynomial, always exactly `degree` coefficients long.
    Poly(Vec<u64>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    kind: Arc<FieldKind>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldCtx {
    pub fn rationals() -> Self {
        FieldCtx { kind: Arc::new(FieldKind::Rationals) }
    }

    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NonPrime(p));
        }
        Ok(FieldCtx { kind: Arc::new(FieldKind::Prime(p)) })
    }

    /// `F_p[x]/(modulus)`; the modulus is given low to high and must be
    /// monic and irreducible of degree at most [`MAX_EXTENSION_DEGREE`].
    pub fn extension(p: u64, modulus: &[u64]) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NonPrime(p));
        }
        let m = fp_poly::trim(modulus.iter().map(|c| c % p).collect());
        let k = match fp_poly::degree(&m) {
            Some(k) if k >= 1 => k,
            _ => return Err(Error::ReducibleModulus("modulus must have degree >= 1".into())),
        };
        if m[k] != 1 {
            return Err(Error::ReducibleModulus("modulus must be monic".into()));
        }
        if k > MAX_EXTENSION_DEGREE {
            return Err(Error::ReducibleModulus(format!(
                "degree {k} exceeds the supported maximum {MAX_EXTENSION_DEGREE}"
            )));
        }
        if !fp_poly::is_irreducible(&m, p) {
            return Err(Error::ReducibleModulus(format_int_poly(&m)));
        }
        Ok(FieldCtx { kind: Arc::new(FieldKind::Extension { p, modulus: m }) })
    }

    /// Parses `"Q"`, `"F(p)"` or `"F(p, <poly in x>)"`.
    pub fn parse(spec: &str) -> Result<Self> {
        let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "Q" {
            return Ok(Self::rationals());
        }
        let inner = s
            .strip_prefix("F(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("bad field spec {spec:?}")))?;
        let (p_str, poly) = match inner.split_once(',') {
            Some((a, b)) => (a, Some(b)),
            None => (inner, None),
        };
        let p: u64 = p_str
            .parse()
            .map_err(|_| Error::Parse(format!("bad characteristic in {spec:?}")))?;
        match poly {
            None => Self::prime(p),
            Some(poly) => {
                if !is_prime(p) {
                    return Err(Error::NonPrime(p));
                }
                let coeffs = parse_int_poly(poly)?;
                let m: Vec<u64> = coeffs.iter().map(|c| c.rem_euclid(p as i64) as u64).collect();
                Self::extension(p, &m)
            }
        }
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    pub fn is_rationals(&self) -> bool {
        matches!(*self.kind, FieldKind::Rationals)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_rationals()
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match &*self.kind {
            FieldKind::Rationals => 0,
            FieldKind::Prime(p) => *p,
            FieldKind::Extension { p, .. } => *p,
        }
    }

    /// Degree over the prime field (1 for Q and F_p).
    pub fn degree(&self) -> usize {
        match &*self.kind {
            FieldKind::Extension { modulus, .. } => modulus.len() - 1,
            _ => 1,
        }
    }

    /// Number of elements, `None` for Q or when it does not fit in a `u128`.
    pub fn order(&self) -> Option<u128> {
        match &*self.kind {
            FieldKind::Rationals => None,
            FieldKind::Prime(p) => Some(*p as u128),
            FieldKind::Extension { p, modulus } => (*p as u128).checked_pow((modulus.len() - 1) as u32),
        }
    }

    /// The prime subfield.
    pub fn prime_field(&self) -> FieldCtx {
        match &*self.kind {
            FieldKind::Rationals => self.clone(),
            FieldKind::Prime(_) => self.clone(),
            FieldKind::Extension { p, .. } => FieldCtx { kind: Arc::new(FieldKind::Prime(*p)) },
        }
    }

    pub fn zero(&self) -> Value {
        match &*self.kind {
            FieldKind::Rationals => Value::Rat(BigRational::zero()),
            FieldKind::Prime(_) => Value::Mod(0),
            FieldKind::Extension { modulus, .. } => Value::Poly(vec![0; modulus.len() - 1]),
        }
    }

    pub fn one(&self) -> Value {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Value {
        match &*self.kind {
            FieldKind::Rationals => Value::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldKind::Prime(p) => Value::Mod(n.rem_euclid(*p as i64) as u64),
            FieldKind::Extension { p, modulus } => {
                let mut v = vec![0; modulus.len() - 1];
                v[0] = n.rem_euclid(*p as i64) as u64;
                Value::Poly(v)
            }
        }
    }

    /// Embeds a rational. Fails in positive characteristic when the
    /// denominator vanishes.
    pub fn from_rational(&self, q: &BigRational) -> Result<Value> {
        match &*self.kind {
            FieldKind::Rationals => Ok(Value::Rat(q.clone())),
            _ => {
                let p = self.characteristic();
                let r = reduce_rational(q, p).ok_or(Error::DivisionByZero)?;
                Ok(self.from_i64(r as i64))
            }
        }
    }

    pub fn is_zero(&self, a: &Value) -> bool {
        match a {
            Value::Rat(q) => q.is_zero(),
            Value::Mod(x) => *x == 0,
            Value::Poly(c) => c.iter().all(|&x| x == 0),
        }
    }

    pub fn is_one(&self, a: &Value) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Rat(x), Value::Rat(y)) => Value::Rat(x + y),
            (Value::Mod(x), Value::Mod(y)) => Value::Mod((x + y) % self.characteristic()),
            (Value::Poly(x), Value::Poly(y)) => {
                let p = self.characteristic();
                Value::Poly(x.iter().zip(y).map(|(s, t)| (s + t) % p).collect())
            }
            _ => panic!("field value kinds do not match"),
        }
    }

    pub fn neg(&self, a: &Value) -> Value {
        match a {
            Value::Rat(x) => Value::Rat(-x),
            Value::Mod(x) => {
                let p = self.characteristic();
                Value::Mod((p - x) % p)
            }
            Value::Poly(c) => {
                let p = self.characteristic();
                Value::Poly(c.iter().map(|x| (p - x) % p).collect())
            }
        }
    }

    pub fn sub(&self, a: &Value, b: &Value) -> Value {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Rat(x), Value::Rat(y)) => Value::Rat(x * y),
            (Value::Mod(x), Value::Mod(y)) => Value::Mod(fp_poly::mul_mod(*x, *y, self.characteristic())),
            (Value::Poly(x), Value::Poly(y)) => {
                let FieldKind::Extension { p, modulus } = &*self.kind else {
                    panic!("polynomial value outside an extension field")
                };
                let prod = fp_poly::rem(&fp_poly::mul(x, y, *p), modulus, *p);
                Value::Poly(self.pad(prod))
            }
            _ => panic!("field value kinds do not match"),
        }
    }

    pub fn inv(&self, a: &Value) -> Option<Value> {
        if self.is_zero(a) {
            return None;
        }
        match a {
            Value::Rat(x) => Some(Value::Rat(x.recip())),
            Value::Mod(x) => fp_poly::inv_mod(*x, self.characteristic()).map(Value::Mod),
            Value::Poly(c) => {
                let FieldKind::Extension { p, modulus } = &*self.kind else {
                    panic!("polynomial value outside an extension field")
                };
                fp_poly::inv_modulo(c, modulus, *p).map(|v| Value::Poly(self.pad(v)))
            }
        }
    }

    pub fn div(&self, a: &Value, b: &Value) -> Result<Value> {
        let inv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, &inv))
    }

    /// `a^e`; negative exponents invert (and fail on zero).
    pub fn pow(&self, a: &Value, e: i64) -> Result<Value> {
        let base = if e < 0 { self.inv(a).ok_or(Error::DivisionByZero)? } else { a.clone() };
        Ok(self.pow_u(&base, e.unsigned_abs() as u128))
    }

    pub fn pow_u(&self, a: &Value, mut e: u128) -> Value {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    fn pad(&self, mut v: Vec<u64>) -> Vec<u64> {
        v.resize(self.degree(), 0);
        v
    }

    /// The class of `x` in an extension field, `None` otherwise.
    pub fn generator(&self) -> Option<Value> {
        match &*self.kind {
            FieldKind::Extension { modulus, .. } => {
                let k = modulus.len() - 1;
                if k == 1 {
                    // x = -modulus[0] in a degree-one "extension"
                    let p = self.characteristic();
                    return Some(Value::Poly(vec![(p - modulus[0]) % p]));
                }
                let mut v = vec![0; k];
                v[1] = 1;
                Some(Value::Poly(v))
            }
            _ => None,
        }
    }

    /// Builds an element from its coordinates over the prime field.
    pub fn from_coords(&self, coords: &[u64]) -> Value {
        match &*self.kind {
            FieldKind::Rationals => panic!("Q has no finite coordinates"),
            FieldKind::Prime(p) => Value::Mod(coords.first().copied().unwrap_or(0) % p),
            FieldKind::Extension { p, .. } => {
                Value::Poly(self.pad(coords.iter().map(|c| c % p).collect()))
            }
        }
    }

    /// Coordinates over the prime field (finite fields only).
    pub fn coords(&self, a: &Value) -> Vec<u64> {
        match a {
            Value::Mod(x) => vec![*x],
            Value::Poly(c) => c.clone(),
            Value::Rat(_) => panic!("Q has no finite coordinates"),
        }
    }

    /// The element with enumeration index `idx` (base-p digits, low
    /// coordinate first). Enumeration order is the canonical order used for
    /// deterministic searches.
    pub fn element_at(&self, mut idx: u128) -> Value {
        let p = self.characteristic() as u128;
        let coords: Vec<u64> = (0..self.degree())
            .map(|_| {
                let c = (idx % p) as u64;
                idx /= p;
                c
            })
            .collect();
        self.from_coords(&coords)
    }

    pub fn index_of(&self, a: &Value) -> u128 {
        let p = self.characteristic() as u128;
        self.coords(a).iter().rev().fold(0u128, |acc, &c| acc * p + c as u128)
    }

    /// All elements in enumeration order (finite fields only).
    pub fn elements(&self) -> Option<Vec<Value>> {
        let q = self.order()?;
        if q > 1 << 24 {
            return None;
        }
        Some((0..q).map(|i| self.element_at(i)).collect())
    }

    pub fn parse_value(&self, s: &str) -> Result<Value> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match &*self.kind {
            FieldKind::Rationals => {
                let q = parse_rational(&t)?;
                Ok(Value::Rat(q))
            }
            FieldKind::Prime(_) => {
                if t.contains('x') {
                    return Err(Error::Parse(format!("{s:?} is not a prime-field element")));
                }
                let q = parse_rational(&t)?;
                self.from_rational(&q)
            }
            FieldKind::Extension { p, modulus } => {
                let coeffs = parse_int_poly(&t)?;
                let red: Vec<u64> = coeffs.iter().map(|c| c.rem_euclid(*p as i64) as u64).collect();
                let r = fp_poly::rem(&red, modulus, *p);
                Ok(Value::Poly(self.pad(r)))
            }
        }
    }

    pub fn format_value(&self, a: &Value) -> String {
        match a {
            Value::Rat(q) => format_rational(q),
            Value::Mod(x) => x.to_string(),
            Value::Poly(c) => format_int_poly(c),
        }
    }

    pub fn elem(&self, v: Value) -> FieldElem {
        FieldElem { ctx: self.clone(), value: v }
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.kind {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "F({p})"),
            FieldKind::Extension { p, modulus } => write!(f, "F({p}, {})", format_int_poly(modulus)),
        }
    }
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A field element together with its field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    ctx: FieldCtx,
    value: Value,
}

impl FieldElem {
    pub fn new(ctx: &FieldCtx, value: Value) -> Self {
        ctx.elem(value)
    }

    pub fn parse(ctx: &FieldCtx, s: &str) -> Result<Self> {
        Ok(ctx.elem(ctx.parse_value(s)?))
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn into_value(self) -> Value {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.ctx.is_zero(&self.value)
    }

    pub fn inv(&self) -> Option<FieldElem> {
        self.ctx.inv(&self.value).map(|v| self.ctx.elem(v))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElem> {
        Ok(self.ctx.elem(self.ctx.pow(&self.value, e)?))
    }

    fn check(&self, other: &FieldElem) {
        assert!(self.ctx == other.ctx, "field elements from different fields: {} vs {}", self.ctx, other.ctx);
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ctx.format_value(&self.value))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.ctx)
    }
}

macro_rules! elem_binop {
    ($tr:ident, $method:ident, $op:ident) => {
        impl std::ops::$tr<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                self.check(rhs);
                self.ctx.elem(self.ctx.$op(&self.value, &rhs.value))
            }
        }
        impl std::ops::$tr for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$method(&rhs)
            }
        }
    };
}

elem_binop!(Add, add, add);
elem_binop!(Sub, sub, sub);
elem_binop!(Mul, mul, mul);

impl std::ops::Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.ctx.elem(self.ctx.neg(&self.value))
    }
}

impl std::ops::Div<&FieldElem> for &FieldElem {
    type Output = FieldElem;
    /// Panics on division by zero; use [`FieldElem::inv`] to test first.
    fn div(self, rhs: &FieldElem) -> FieldElem {
        self.check(rhs);
        self.ctx.elem(self.ctx.div(&self.value, &rhs.value).expect("division by zero"))
    }
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

/// Parses an integer polynomial in `x`, e.g. `"x^2+x+1"`, `"3x^4-2*x+5"`.
/// Returns coefficients low to high.
pub fn parse_int_poly(s: &str) -> Result<Vec<i64>> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("bad polynomial {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let mut coeffs: Vec<i64> = Vec::new();
    let mut terms: Vec<(i64, String)> = Vec::new();
    let mut cur = String::new();
    let mut sign = 1i64;
    for (i, ch) in t.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
            terms.push((sign, std::mem::take(&mut cur)));
            sign = if ch == '-' { -1 } else { 1 };
        } else if (ch == '+' || ch == '-') && i == 0 {
            sign = if ch == '-' { -1 } else { 1 };
        } else {
            cur.push(ch);
        }
    }
    terms.push((sign, cur));
    for (sign, term) in terms {
        if term.is_empty() {
            return Err(bad());
        }
        let (coef, power) = match term.find('x') {
            None => (term.parse::<i64>().map_err(|_| bad())?, 0usize),
            Some(pos) => {
                let c_str = term[..pos].trim_end_matches('*');
                let c = if c_str.is_empty() { 1 } else { c_str.parse::<i64>().map_err(|_| bad())? };
                let rest = &term[pos + 1..];
                let e = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?
                };
                (c, e)
            }
        };
        if power > 64 {
            return Err(bad());
        }
        if coeffs.len() <= power {
            coeffs.resize(power + 1, 0);
        }
        coeffs[power] += sign * coef;
    }
    Ok(coeffs)
}

/// Formats a coefficient list (low to high) as a polynomial in `x`.
pub fn format_int_poly(c: &[u64]) -> String {
    let mut parts = Vec::new();
    for (i, &a) in c.iter().enumerate().rev() {
        if a == 0 {
            continue;
        }
        let coef = if a == 1 && i > 0 { String::new() } else { a.to_string() };
        let var = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        parts.push(format!("{coef}{var}"));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

pub(crate) fn bigint_to_u64(n: &BigInt) -> Option<u64> {
    if n.is_negative() {
        None
    } else {
        n.to_u64()
    }
}
