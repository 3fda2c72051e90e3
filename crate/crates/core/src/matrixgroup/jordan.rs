use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// `M = semisimple * unipotent`, the two factors commuting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanDecomposition {
    pub semisimple: Matrix,
    pub unipotent: Matrix,
}

pub fn is_semisimple(m: &Matrix) -> bool {
    m.minpoly().is_squarefree()
}

pub fn is_unipotent(m: &Matrix) -> bool {
    let id = Matrix::identity(m.ctx(), m.rows());
    (m - &id).pow(m.rows() as u128).is_zero()
}

const MAX_NEWTON_STEPS: usize = 64;

/// Additive decomposition `M = S + N` with `S` semisimple, `N` nilpotent,
/// `SN = NS`, both polynomials in `M`.
///
/// Newton iteration `S <- S - g(S) g'(S)^-1` on the squarefree part `g` of
/// the characteristic polynomial. Needs a perfect field, which every
/// supported field is.
pub fn jordan_additive(m: &Matrix) -> Result<(Matrix, Matrix)> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch("matrix is not square".into()));
    }
    let g = m.charpoly().radical();
    let dg = g.derivative();
    let mut s = m.clone();
    for _ in 0..MAX_NEWTON_STEPS {
        let gs = s.eval_poly(&g);
        if gs.is_zero() {
            let n = m - &s;
            return Ok((s, n));
        }
        let inv = s
            .eval_poly(&dg)
            .inverse()
            .ok_or_else(|| Error::UnsupportedClass("Newton step hit a singular derivative".into()))?;
        s = &s - &(&gs * &inv);
    }
    Err(Error::UnsupportedClass("Newton iteration did not converge".into()))
}

/// Multiplicative Jordan decomposition of an invertible matrix.
pub fn jordan_multiplicative(m: &Matrix) -> Result<JordanDecomposition> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch("matrix is not square".into()));
    }
    if !m.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    let (s, _) = jordan_additive(m)?;
    let sinv = s.inverse().ok_or(Error::SingularMatrix)?;
    let unipotent = &sinv * m;
    Ok(JordanDecomposition { semisimple: s, unipotent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldCtx;
    use proptest::prelude::*;

    fn check(m: &Matrix) -> JordanDecomposition {
        let d = jordan_multiplicative(m).unwrap();
        assert_eq!(&d.semisimple * &d.unipotent, *m);
        assert_eq!(&d.unipotent * &d.semisimple, *m);
        assert!(is_semisimple(&d.semisimple));
        assert!(is_unipotent(&d.unipotent));
        d
    }

    #[test]
    fn jordan_block_over_q() {
        let q = FieldCtx::rationals();
        let m = Matrix::from_i64(&q, &[&[2, 1], &[0, 2]]);
        let d = check(&m);
        assert_eq!(d.semisimple, Matrix::from_i64(&q, &[&[2, 0], &[0, 2]]));
        let u = Matrix::parse(&q, &[vec!["1", "1/2"], vec!["0", "1"]]).unwrap();
        assert_eq!(d.unipotent, u);
    }

    #[test]
    fn semisimple_and_identity_inputs() {
        let q = FieldCtx::rationals();
        let m = Matrix::from_i64(&q, &[&[1, 0], &[0, 3]]);
        let d = check(&m);
        assert_eq!(d.semisimple, m);
        assert!(d.unipotent.is_identity());
        let id = Matrix::identity(&q, 3);
        let d = check(&id);
        assert!(d.semisimple.is_identity() && d.unipotent.is_identity());
    }

    #[test]
    fn singular_rejected() {
        let q = FieldCtx::rationals();
        let m = Matrix::from_i64(&q, &[&[0, 1], &[0, 0]]);
        assert_eq!(jordan_multiplicative(&m), Err(Error::SingularMatrix));
    }

    #[test]
    fn characteristic_p_with_inseparable_charpoly() {
        // over F_2, (x+1)^2 has derivative 0; radical needs the p-th root
        let f2 = FieldCtx::prime(2).unwrap();
        let m = Matrix::from_i64(&f2, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        let d = check(&m);
        assert!(d.semisimple.is_identity());
        let f4 = FieldCtx::parse("F(2, x^2+x+1)").unwrap();
        let w = f4.generator().unwrap();
        let mut m = Matrix::identity(&f4, 3);
        m.set(0, 0, w.clone());
        m.set(1, 1, w);
        m.set(0, 1, f4.one());
        check(&m);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn decomposition_laws_over_q(e in proptest::collection::vec(-3i64..4, 9)) {
            let q = FieldCtx::rationals();
            let m = Matrix::from_i64(&q, &[&e[0..3], &e[3..6], &e[6..9]]);
            prop_assume!(m.is_invertible());
            let d = jordan_multiplicative(&m).unwrap();
            prop_assert_eq!(&d.semisimple * &d.unipotent, m.clone());
            prop_assert_eq!(&d.unipotent * &d.semisimple, m);
            prop_assert!(is_semisimple(&d.semisimple));
            prop_assert!(is_unipotent(&d.unipotent));
        }

        #[test]
        fn decomposition_laws_over_f3(e in proptest::collection::vec(0i64..3, 9)) {
            let f3 = FieldCtx::prime(3).unwrap();
            let m = Matrix::from_i64(&f3, &[&e[0..3], &e[3..6], &e[6..9]]);
            prop_assume!(m.is_invertible());
            let d = jordan_multiplicative(&m).unwrap();
            prop_assert_eq!(&d.semisimple * &d.unipotent, m.clone());
            prop_assert_eq!(&d.unipotent * &d.semisimple, m);
            prop_assert!(is_semisimple(&d.semisimple));
            prop_assert!(is_unipotent(&d.unipotent));
        }
    }
}
