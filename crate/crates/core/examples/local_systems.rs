//! Local systems: monodromy, flat sections, tensor operations, cocycles and
//! the isomorphism test.

use std::sync::Arc;

use monodromy::basespace::builtin;
use monodromy::localsystem::{from_cocycle, iso_test, to_cocycle, CechCocycle, LocalSystem};
use monodromy::matrixgroup::DEFAULT_CAP;
use monodromy::{FieldCtx, Matrix, Result};

fn main() -> Result<()> {
    let q = FieldCtx::rationals();
    let c1 = Arc::new(builtin("C1")?);
    let t2 = Arc::new(builtin("T2rel")?);

    let shear = LocalSystem::from_named(c1.clone(), &q, 2, &[("a", Matrix::from_i64(&q, &[&[1, 1], &[0, 1]]))])?;
    println!("{}", shear.describe());
    println!("flat sections: {:?}", shear.global_sections().len());
    println!("maximal trivial subsystem has rank {}", shear.max_trivial_sub().system.rank());
    println!("monodromy group: {}", shear.monodromy_image(DEFAULT_CAP).unwrap_err());

    // commuting images are required on the torus
    let a = Matrix::from_i64(&q, &[&[0, -1], &[1, 0]]);
    let b = Matrix::from_i64(&q, &[&[-1, 0], &[0, -1]]);
    let torus = LocalSystem::from_named(t2.clone(), &q, 2, &[("a", a.clone()), ("b", b)])?;
    println!("on the torus: monodromy group of order {}", torus.monodromy_image(DEFAULT_CAP)?.order());
    let bad = LocalSystem::from_named(t2, &q, 2, &[("a", a), ("b", Matrix::from_i64(&q, &[&[1, 1], &[0, 1]]))]);
    println!("non-commuting images: {}", bad.unwrap_err());

    let f5 = FieldCtx::prime(5)?;
    let two = LocalSystem::from_named(c1.clone(), &f5, 1, &[("a", Matrix::from_i64(&f5, &[&[2]]))])?;
    println!("dual of (2) over F(5): {}", two.dual().images()[0]);
    println!("E tensor dual E trivial: {}", two.tensor(&two.dual())?.is_trivial());

    let cocycle = to_cocycle(&shear);
    println!("edge labels: {:?}", cocycle.labels().iter().map(|m| m.to_string()).collect::<Vec<_>>());
    println!("round trip: {}", from_cocycle(&cocycle)? == shear);
    let tri = Arc::new(builtin("triangle")?);
    let m = Matrix::from_i64(&q, &[&[3]]);
    let c = CechCocycle::from_named(tri, &q, 1, &[("e1", m.clone()), ("e3", m)])?;
    println!("triangle cocycle as a representation: {}", from_cocycle(&c)?.describe());

    let shear2 = LocalSystem::from_named(c1, &q, 2, &[("a", Matrix::from_i64(&q, &[&[1, 2], &[0, 1]]))])?;
    println!("isomorphism test: {:?}", iso_test(&shear, &shear2, 64, 0)?);
    Ok(())
}
