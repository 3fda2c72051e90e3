//! First cohomology with constant coefficients, characters into the
//! additive group, unipotent extensions and rank-r classes.

use std::sync::Arc;

use monodromy::basespace::builtin;
use monodromy::cohomology::{
    abelianization, class_from_unipotent, h1_constant, h1_glr_enumerate, hom_to_additive, unipotent_from_class,
};
use monodromy::{FieldCtx, Result};

fn main() -> Result<()> {
    let fields = ["Q", "F(2)", "F(3)"];
    for name in ["C1", "W2", "T2rel", "RP2rel", "triangle"] {
        let x = builtin(name)?;
        let dims: Vec<String> = fields
            .iter()
            .map(|f| {
                let ctx = FieldCtx::parse(f).unwrap();
                format!("{f}: {}/{}", h1_constant(&x, &ctx).dimension, hom_to_additive(&x, &ctx).unwrap().dimension)
            })
            .collect();
        let ab = abelianization(&x)?;
        println!("{name:9} H1/Hom {}  abelianization Z^{} torsion {:?}", dims.join("  "), ab.free_rank, ab.torsion);
    }

    let q = FieldCtx::rationals();
    let t2 = Arc::new(builtin("T2rel")?);
    let h = h1_constant(&t2, &q);
    let e = unipotent_from_class(&t2, &q, &h.basis[0])?;
    println!("unipotent system of the first class: {}", e.describe().trim_end().replace('\n', "; "));
    println!("and back: {:?}", class_from_unipotent(&e)?.iter().map(|v| q.format_value(v)).collect::<Vec<_>>());

    let c1 = builtin("C1")?;
    for spec in ["F(2)", "F(3)", "F(2, x^2+x+1)", "F(5)"] {
        let ctx = FieldCtx::parse(spec)?;
        println!("rank-1 classes on C1 over {spec}: {}", h1_glr_enumerate(&c1, &ctx, 1, 1_000_000)?.len());
    }
    let f2 = FieldCtx::prime(2)?;
    for class in h1_glr_enumerate(&c1, &f2, 2, 1_000_000)? {
        println!("GL2(F2) class of {} with {} members", class.images[0], class.count);
    }
    Ok(())
}
