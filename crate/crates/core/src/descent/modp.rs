use std::sync::Arc;

use crate::coverings::{Covering, FiniteGroup};
use crate::error::Result;
use crate::exactfield::{reduce_mod_p, FieldCtx};
use crate::localsystem::LocalSystem;
use crate::matrixgroup::FiniteMatrixGroup;

/// A rational local system reduced modulo `p`, its (finite) monodromy group
/// and the Galois covering onto that group, which trivializes the reduction.
#[derive(Clone, Debug)]
pub struct ModPReduction {
    pub reduced: LocalSystem,
    pub group: FiniteMatrixGroup,
    pub cover: Covering,
}

/// Reduces the generator images of `e` modulo `p`, closes them up into a
/// finite group and builds the covering classified by the reduced
/// representation onto its image.
pub fn mod_p_pipeline(e: &LocalSystem, p: u64, cap: usize) -> Result<ModPReduction> {
    let images = reduce_mod_p(e.images(), p)?;
    let fp = FieldCtx::prime(p)?;
    let reduced = LocalSystem::from_generator_images(e.space().clone(), &fp, e.rank(), images)?;
    let group = reduced.monodromy_image(cap)?;
    let abstract_group = FiniteGroup::from_matrix_group(&group)?;
    let rho: Vec<usize> = reduced
        .images()
        .iter()
        .map(|m| group.index_of(m).expect("generator lies in its closure"))
        .collect();
    let cover = Covering::from_group(e.space().clone(), Arc::new(abstract_group), &rho)?;
    Ok(ModPReduction { reduced, group, cover })
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::basespace::{builtin, TwoComplex};
    use crate::coverings::trivializes;
    use crate::error::Error;
    use crate::matrix::Matrix;
    use crate::matrixgroup::DEFAULT_CAP;

    fn c1() -> Arc<TwoComplex> {
        Arc::new(builtin("C1").unwrap())
    }

    fn rational(rows: &[&[&str]]) -> Matrix {
        let q = FieldCtx::rationals();
        let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
        Matrix::parse(&q, &rows).unwrap()
    }

    fn on_c1(m: Matrix) -> LocalSystem {
        let q = FieldCtx::rationals();
        LocalSystem::from_named(c1(), &q, m.rows(), &[("a", m)]).unwrap()
    }

    #[test]
    fn unipotent_with_denominator_three() {
        let e = on_c1(rational(&[&["1", "1/3"], &["0", "1"]]));
        let r = mod_p_pipeline(&e, 2, DEFAULT_CAP).unwrap();
        let f2 = FieldCtx::prime(2).unwrap();
        assert_eq!(r.reduced.images(), &[Matrix::from_i64(&f2, &[&[1, 1], &[0, 1]])]);
        assert_eq!(r.group.order(), 2);
        assert_eq!(r.cover.degree(), 2);
        assert!(r.cover.is_connected() && r.cover.is_galois());
        assert!(trivializes(&r.reduced, &r.cover).unwrap());
        assert_eq!(mod_p_pipeline(&e, 3, DEFAULT_CAP).unwrap_err(), Error::PrimeDividesDenominatorOrDet(3));
    }

    #[test]
    fn fibonacci_mod_two_has_order_three() {
        let e = on_c1(rational(&[&["0", "1"], &["1", "1"]]));
        let r = mod_p_pipeline(&e, 2, DEFAULT_CAP).unwrap();
        assert_eq!(r.group.order(), 3);
        assert_eq!(r.cover.degree(), 3);
        assert!(r.cover.is_connected());
        assert!(trivializes(&r.reduced, &r.cover).unwrap());
    }

    #[test]
    fn trivial_system_gives_trivial_cover() {
        let q = FieldCtx::rationals();
        let w2 = Arc::new(builtin("W2").unwrap());
        let e = LocalSystem::trivial(w2, &q, 2).unwrap();
        let r = mod_p_pipeline(&e, 7, DEFAULT_CAP).unwrap();
        assert!(r.reduced.is_trivial());
        assert_eq!((r.group.order(), r.cover.degree()), (1, 1));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn cover_trivializes_the_reduction(entries in proptest::array::uniform4(-4i64..5), den in 1i64..4, p in prop::sample::select(vec![5u64, 7, 11])) {
            let q = FieldCtx::rationals();
            let d = q.from_i64(den);
            let m = Matrix::from_i64(&q, &[&[entries[0], entries[1]], &[entries[2], entries[3]]]);
            let m = m.map_entries(&q, |v| q.div(v, &d).unwrap());
            prop_assume!(m.is_invertible());
            let e = on_c1(m);
            match mod_p_pipeline(&e, p, DEFAULT_CAP) {
                Ok(r) => {
                    prop_assert!(trivializes(&r.reduced, &r.cover).unwrap());
                    prop_assert_eq!(r.cover.degree(), r.group.order());
                    prop_assert!(r.cover.is_galois());
                }
                Err(err) => prop_assert_eq!(err, Error::PrimeDividesDenominatorOrDet(p)),
            }
        }
    }
}
