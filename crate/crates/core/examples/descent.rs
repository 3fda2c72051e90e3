//! Descent: trivializations from an extension field down to the base field,
//! and the mod-p pipeline from a rational bundle to a trivializing cover.

use std::sync::Arc;

use monodromy::basespace::builtin;
use monodromy::coverings::trivializes;
use monodromy::descent::{field_descent, mod_p_pipeline, Trivialization};
use monodromy::exactfield::Embedding;
use monodromy::localsystem::{CechCocycle, LocalSystem};
use monodromy::matrixgroup::DEFAULT_CAP;
use monodromy::{FieldCtx, Matrix, Result};

fn main() -> Result<()> {
    let f2 = FieldCtx::prime(2)?;
    let f4 = FieldCtx::parse("F(2, x^2+x+1)")?;
    let emb = Embedding::new(&f2, &f4)?;
    let tri = Arc::new(builtin("triangle")?);

    // a cocycle over F(2) and a trivialization of it only defined over F(4)
    let m = Matrix::from_i64(&f2, &[&[1, 1], &[0, 1]]);
    let c = CechCocycle::from_named(tri.clone(), &f2, 2, &[("e1", m.clone()), ("e2", m.clone()), ("e3", Matrix::identity(&f2, 2))])?;
    let omega = Matrix::parse(&f4, &[vec!["x", "1"], vec!["0", "x+1"]])?;
    let h = [Matrix::identity(&f2, 2), m.clone(), m];
    let lifted: Vec<Matrix> = h.iter().map(|k| &omega * &emb.embed_matrix(k).unwrap()).collect();
    let t = Trivialization::new(c.map_field(&f4, |k| emb.embed_matrix(k))?, lifted)?;
    let down = field_descent(&c, &t, &emb)?;
    for v in 0..tri.num_vertices() {
        println!("{}: {}", tri.vertex_name(v), down.matrix(v));
    }
    println!("checks out over F(2): {:?}", c.check_trivialization(down.matrices()));

    let q = FieldCtx::rationals();
    let c1 = Arc::new(builtin("C1")?);
    let third = Matrix::parse(&q, &[vec!["1", "1/3"], vec!["0", "1"]])?;
    let e = LocalSystem::from_named(c1, &q, 2, &[("a", third)])?;
    let r = mod_p_pipeline(&e, 2, DEFAULT_CAP)?;
    println!(
        "mod 2: {} generates a group of order {}, cover of degree {} trivializes it: {}",
        r.reduced.images()[0],
        r.group.order(),
        r.cover.degree(),
        trivializes(&r.reduced, &r.cover)?
    );
    println!("mod 3: {}", mod_p_pipeline(&e, 3, DEFAULT_CAP).unwrap_err());
    Ok(())
}
