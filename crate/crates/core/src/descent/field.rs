use crate::error::{Error, Result};
use crate::exactfield::Embedding;
use crate::localsystem::CechCocycle;
use crate::matrix::Matrix;

/// Vertex matrices `l_v` with `l_src^-1 l_dst = label(e)` on every edge of
/// a cocycle. The identity is checked on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trivialization {
    cocycle: CechCocycle,
    matrices: Vec<Matrix>,
}

impl Trivialization {
    pub fn new(cocycle: CechCocycle, matrices: Vec<Matrix>) -> Result<Self> {
        cocycle.check_trivialization(&matrices)?;
        Ok(Trivialization { cocycle, matrices })
    }

    pub fn cocycle(&self) -> &CechCocycle {
        &self.cocycle
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn matrix(&self, v: usize) -> &Matrix {
        &self.matrices[v]
    }
}

/// Turns a trivialization of `c` over a larger field `L` into one over the
/// field `K` of `c`.
///
/// On each connected component, `a = l_w` at the component's first vertex
/// `w` (the basepoint for its own component) and `h_v = a^-1 l_v`. The
/// `h_v` are locally constant in the sense that `h_w = 1` and every label is
/// a `K`-matrix, so all entries restrict to `K`; a failure to restrict is
/// reported as `DescentFailure` and indicates a bug.
pub fn field_descent(c: &CechCocycle, t: &Trivialization, emb: &Embedding) -> Result<Trivialization> {
    if c.ctx() != emb.source() {
        return Err(Error::CtxMismatch(format!("cocycle lives over {}, embedding starts at {}", c.ctx(), emb.source())));
    }
    let embedded = c.map_field(emb.target(), |m| emb.embed_matrix(m))?;
    if t.cocycle().space() != c.space() {
        return Err(Error::SpaceMismatch("trivialization belongs to a different complex".into()));
    }
    embedded.check_trivialization(t.matrices())?;
    let space = c.space();
    let mut out = vec![Matrix::identity(c.ctx(), c.rank()); space.num_vertices()];
    for comp in space.components() {
        let a_inv = t.matrix(comp[0]).inverse().ok_or(Error::SingularMatrix)?;
        for &v in &comp {
            let h = &a_inv * t.matrix(v);
            out[v] = emb.try_restrict_matrix(&h).map_err(|e| match e {
                Error::NotInSubfield => Error::DescentFailure(space.vertex_name(v).to_string()),
                other => other,
            })?;
        }
    }
    Trivialization::new(c.clone(), out)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::basespace::{builtin, TwoComplex};
    use crate::exactfield::FieldCtx;
    use crate::sample::random_invertible;

    fn space(name: &str) -> Arc<TwoComplex> {
        Arc::new(builtin(name).unwrap())
    }

    fn f4() -> FieldCtx {
        FieldCtx::extension(2, &[1, 1, 1]).unwrap()
    }

    /// A cocycle over `k` with the given vertex gauge, and `a * h_v` over `l`.
    fn roundtrip_setup(
        x: &Arc<TwoComplex>,
        k: &FieldCtx,
        emb: &Embedding,
        h: &[Matrix],
        a: &Matrix,
    ) -> (CechCocycle, Trivialization) {
        let labels = x
            .edges()
            .iter()
            .map(|e| &h[e.src].inverse().unwrap() * &h[e.dst])
            .collect();
        let c = CechCocycle::new(x.clone(), k, a.rows(), labels).unwrap();
        let embedded = c.map_field(emb.target(), |m| emb.embed_matrix(m)).unwrap();
        let l = h.iter().map(|hv| a * &emb.embed_matrix(hv).unwrap()).collect();
        let t = Trivialization::new(embedded, l).unwrap();
        (c, t)
    }

    #[test]
    fn scalar_gauge_over_f4_descends_to_identity() {
        let f2 = FieldCtx::prime(2).unwrap();
        let f4 = f4();
        let emb = Embedding::new(&f2, &f4).unwrap();
        let tri = space("triangle");
        let c = CechCocycle::from_named(tri.clone(), &f2, 1, &[]).unwrap();
        let omega = Matrix::from_values(&f4, 1, 1, vec![f4.generator().unwrap()]);
        let embedded = c.map_field(&f4, |m| emb.embed_matrix(m)).unwrap();
        let t = Trivialization::new(embedded, vec![omega; 3]).unwrap();
        let d = field_descent(&c, &t, &emb).unwrap();
        assert!(d.matrices().iter().all(Matrix::is_identity));
        assert_eq!(d.matrix(0).ctx(), &f2);
    }

    #[test]
    fn identity_embedding() {
        let q = FieldCtx::rationals();
        let emb = Embedding::new(&q, &q).unwrap();
        let tri = space("triangle");
        let h = vec![
            Matrix::from_i64(&q, &[&[2, 1], &[1, 1]]),
            Matrix::from_i64(&q, &[&[1, 0], &[3, 1]]),
            Matrix::from_i64(&q, &[&[0, 1], &[1, 0]]),
        ];
        let a = Matrix::from_i64(&q, &[&[1, 2], &[0, 1]]);
        let (c, t) = roundtrip_setup(&tri, &q, &emb, &h, &a);
        let d = field_descent(&c, &t, &emb).unwrap();
        let l0_inv = t.matrix(0).inverse().unwrap();
        for v in 0..3 {
            assert_eq!(d.matrix(v), &(&l0_inv * t.matrix(v)));
        }
    }

    #[test]
    fn rejects_non_trivializations() {
        let f2 = FieldCtx::prime(2).unwrap();
        let f4 = f4();
        let emb = Embedding::new(&f2, &f4).unwrap();
        let tri = space("triangle");
        let m = Matrix::from_i64(&f2, &[&[1, 1], &[0, 1]]);
        let c = CechCocycle::from_named(tri.clone(), &f2, 2, &[("e1", m.clone()), ("e3", m.inverse().unwrap())]).unwrap();
        // a trivialization of the all-identity cocycle does not fit `c`
        let plain = CechCocycle::from_named(tri, &f4, 2, &[]).unwrap();
        let t = Trivialization::new(plain, vec![Matrix::identity(&f4, 2); 3]).unwrap();
        assert_eq!(field_descent(&c, &t, &emb), Err(Error::NotATrivialization("e1".into())));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn random_roundtrips_recover_a_trivialization(seed in any::<u64>(), rank in 1usize..4, over_f3 in any::<bool>()) {
            let (k, l) = if over_f3 {
                (FieldCtx::prime(3).unwrap(), FieldCtx::extension(3, &[1, 0, 1]).unwrap())
            } else {
                (FieldCtx::prime(2).unwrap(), f4())
            };
            let emb = Embedding::new(&k, &l).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = space("triangle");
            let h: Vec<Matrix> = (0..3).map(|_| random_invertible(&k, rank, &mut rng, 1)).collect();
            let a = random_invertible(&l, rank, &mut rng, 1);
            let (c, t) = roundtrip_setup(&x, &k, &emb, &h, &a);
            let d = field_descent(&c, &t, &emb).unwrap();
            prop_assert_eq!(c.check_trivialization(d.matrices()), Ok(()));
            prop_assert!(d.matrices().iter().all(|m| m.ctx() == &k));
        }
    }
}
