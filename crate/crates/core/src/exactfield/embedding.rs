use crate::error::{Error, Result};
use crate::exactfield::{FieldCtx, FieldElem, FieldKind, Value};
use crate::matrix::Matrix;
use crate::poly::Poly;

/// Field embedding `K -> L`.
///
/// Supported pairs: `Q -> Q`, `F_p -> F_{p^k}` and `F_{p^j} -> F_{p^k}` with
/// `j | k`. When the source is a proper extension, its generator is sent to
/// the root of its modulus in `L` that comes first in `L`'s enumeration
/// order, so the embedding is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    source: FieldCtx,
    target: FieldCtx,
    gen_image: Option<Value>,
}

const MAX_ROOT_SEARCH: u128 = 1 << 24;

impl Embedding {
    pub fn new(source: &FieldCtx, target: &FieldCtx) -> Result<Self> {
        let unsupported = || Error::UnsupportedEmbedding(format!("{source} -> {target}"));
        match (source.kind(), target.kind()) {
            (FieldKind::Rationals, FieldKind::Rationals) => {
                Ok(Embedding { source: source.clone(), target: target.clone(), gen_image: None })
            }
            (FieldKind::Rationals, _) | (_, FieldKind::Rationals) => Err(unsupported()),
            _ => {
                if source.characteristic() != target.characteristic()
                    || !target.degree().is_multiple_of(source.degree())
                {
                    return Err(unsupported());
                }
                let gen_image = match source.kind() {
                    FieldKind::Extension { modulus, .. } => {
                        let q = target.order().filter(|&q| q <= MAX_ROOT_SEARCH).ok_or_else(unsupported)?;
                        let m = Poly::new(target, modulus.iter().map(|&c| target.from_i64(c as i64)).collect());
                        let root = (0..q)
                            .map(|i| target.element_at(i))
                            .find(|x| target.is_zero(&m.eval(x)))
                            .ok_or_else(unsupported)?;
                        Some(root)
                    }
                    _ => None,
                };
                Ok(Embedding { source: source.clone(), target: target.clone(), gen_image })
            }
        }
    }

    pub fn source(&self) -> &FieldCtx {
        &self.source
    }

    pub fn target(&self) -> &FieldCtx {
        &self.target
    }

    /// Image of the source generator, for proper extension sources.
    pub fn generator_image(&self) -> Option<&Value> {
        self.gen_image.as_ref()
    }

    /// Maps a raw source value into the target.
    pub fn apply(&self, v: &Value) -> Value {
        match (v, &self.gen_image) {
            (Value::Rat(_), _) => v.clone(),
            (Value::Mod(x), _) => self.target.from_i64(*x as i64),
            (Value::Poly(c), Some(theta)) => c.iter().rev().fold(self.target.zero(), |acc, &ci| {
                self.target.add(&self.target.mul(&acc, theta), &self.target.from_i64(ci as i64))
            }),
            (Value::Poly(_), None) => unreachable!("extension source without generator image"),
        }
    }

    pub fn embed(&self, e: &FieldElem) -> Result<FieldElem> {
        if e.ctx() != &self.source {
            return Err(Error::CtxMismatch(format!("{} is not the source {}", e.ctx(), self.source)));
        }
        Ok(self.target.elem(self.apply(e.value())))
    }

    pub fn embed_matrix(&self, m: &Matrix) -> Result<Matrix> {
        if m.ctx() != &self.source {
            return Err(Error::CtxMismatch(format!("{} is not the source {}", m.ctx(), self.source)));
        }
        Ok(m.map_entries(&self.target, |v| self.apply(v)))
    }

    /// The unique preimage of `v`, or `NotInSubfield`.
    pub fn restrict_value(&self, v: &Value) -> Result<Value> {
        match v {
            Value::Rat(_) => Ok(v.clone()),
            Value::Mod(x) => Ok(self.source.from_i64(*x as i64)),
            Value::Poly(c) => match &self.gen_image {
                None => {
                    if c[1..].iter().all(|&x| x == 0) {
                        Ok(self.source.from_i64(c[0] as i64))
                    } else {
                        Err(Error::NotInSubfield)
                    }
                }
                Some(theta) => {
                    // coordinates of theta^i over F_p, i < [K : F_p]
                    let fp = self.target.prime_field();
                    let j = self.source.degree();
                    let k = self.target.degree();
                    let mut cols = Vec::with_capacity(j);
                    let mut pw = self.target.one();
                    for _ in 0..j {
                        cols.push(self.target.coords(&pw).iter().map(|&x| fp.from_i64(x as i64)).collect());
                        pw = self.target.mul(&pw, theta);
                    }
                    let a = Matrix::from_columns(&fp, k, &cols);
                    let rhs: Vec<Value> = c.iter().map(|&x| fp.from_i64(x as i64)).collect();
                    let sol = a.solve(&rhs).ok_or(Error::NotInSubfield)?;
                    let coords: Vec<u64> = sol.iter().map(|s| fp.coords(s)[0]).collect();
                    Ok(self.source.from_coords(&coords))
                }
            },
        }
    }

    /// Decides membership of `e` in the image of the embedding.
    pub fn try_restrict(&self, e: &FieldElem) -> Result<FieldElem> {
        if e.ctx() != &self.target {
            return Err(Error::CtxMismatch(format!("{} is not the target {}", e.ctx(), self.target)));
        }
        Ok(self.source.elem(self.restrict_value(e.value())?))
    }

    pub fn try_restrict_matrix(&self, m: &Matrix) -> Result<Matrix> {
        if m.ctx() != &self.target {
            return Err(Error::CtxMismatch(format!("{} is not the target {}", m.ctx(), self.target)));
        }
        m.try_map_entries(&self.source, |v| self.restrict_value(v))
    }
}
