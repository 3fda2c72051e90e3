//! Finite coverings: construction from group data and from actions,
//! decomposition, pullback and pushforward, the exact sequence check and
//! parallel transport.

use std::sync::Arc;

use monodromy::basespace::builtin;
use monodromy::coverings::{
    etale_image_size, exact_sequence_report, parallel_transport, pullback, pushforward, subgroup_generators,
    Covering, EtalePathLevel, FiniteGroup,
};
use monodromy::localsystem::LocalSystem;
use monodromy::{FieldCtx, Matrix, Result};

fn main() -> Result<()> {
    let c1 = Arc::new(builtin("C1")?);
    let w2 = Arc::new(builtin("W2")?);
    let q = FieldCtx::rationals();

    let z3 = Covering::from_group(c1.clone(), Arc::new(FiniteGroup::cyclic(3)?), &[1])?;
    println!("Z/3 cover: degree {}, connected {}, galois {}", z3.degree(), z3.is_connected(), z3.is_galois());
    let z3_zero = Covering::from_group(c1.clone(), Arc::new(FiniteGroup::cyclic(3)?), &[0])?;
    println!("rho(a) = 0: {} components", z3_zero.decompose()?.len());

    let s3 = Covering::from_action(w2.clone(), 3, &[vec![1, 2, 0], vec![1, 0, 2]])?;
    let y = s3.total().basepoint();
    let words = subgroup_generators(&s3, y)?;
    println!("S3 action on W2: connected {}, {} subgroup generators", s3.is_connected(), words.len());
    let swap = Covering::from_action(c1.clone(), 3, &[vec![1, 0, 2]])?;
    let degrees: Vec<usize> = swap.decompose()?.iter().map(Covering::degree).collect();
    println!("a transposition on three points decomposes as {degrees:?}");

    let m = Matrix::from_i64(&q, &[&[2, 1], &[1, 1]]);
    let e = LocalSystem::from_named(c1.clone(), &q, 2, &[("a", m)])?;
    println!("pullback to the Z/3 cover: {}", pullback(&e, &z3, z3.total().basepoint())?.images()[0]);

    let trivial = LocalSystem::trivial(z3.total().clone(), &q, 1)?;
    let perm = pushforward(&trivial, &z3)?;
    println!("pushforward of the trivial line: {}", perm.images()[0]);
    for g in 0..3 {
        let t = parallel_transport(&perm, &z3, &EtalePathLevel { vertex: 0, element: g }, 0)?;
        println!("  transport along deck element {g}: {t}");
    }
    println!("etale image size: {}", etale_image_size(&z3, 0)?);

    let f5 = FieldCtx::prime(5)?;
    let two = LocalSystem::from_named(c1.clone(), &f5, 1, &[("a", Matrix::from_i64(&f5, &[&[2]]))])?;
    for n in [4, 2] {
        let c = Covering::from_group(c1.clone(), Arc::new(FiniteGroup::cyclic(n)?), &[1])?;
        let r = exact_sequence_report(&two, &c)?;
        println!(
            "Z/{n}: factors through the group {}, pullback trivial {}, consistent {}",
            r.factors_through_group,
            r.pullback_trivial,
            r.passes()
        );
    }
    Ok(())
}
