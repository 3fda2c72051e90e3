use std::fmt::Write as _;
use std::sync::Arc;

use super::{DemoCmd, Report};
use crate::basespace::builtin;
use crate::cohomology::{abelianization, h1_constant, hom_to_additive};
use crate::coverings::trivializes;
use crate::descent::{jordan_factors, level_of_definition, mod_p_pipeline, solenoid_summary, tower_make};
use crate::error::Result;
use crate::exactfield::FieldCtx;
use crate::localsystem::LocalSystem;
use crate::matrix::Matrix;
use crate::matrixgroup::DEFAULT_CAP;

pub(super) fn run(which: DemoCmd) -> Result<Report> {
    match which {
        DemoCmd::Solenoid => solenoid(),
        DemoCmd::Fibonacci => fibonacci(),
        DemoCmd::Torus => torus(),
    }
}

fn solenoid() -> Result<Report> {
    let dyadic = tower_make(&[2], 16)?;
    let all: Vec<u64> = (2..=12).filter(|&p| crate::exactfield::is_prime(p)).collect();
    let full = tower_make(&all, 12)?;

    let q = FieldCtx::rationals();
    let c1 = dyadic.level_space().clone();
    let diagonal = Matrix::from_i64(&q, &[&[4, 0], &[0, 9]]);
    let e = LocalSystem::from_named(c1.clone(), &q, 2, &[("a", diagonal)])?;
    let found = level_of_definition(&e, &dyadic, 8)?;
    let root = LocalSystem::from_named(c1.clone(), &q, 2, &[("a", found.root.clone())])?;
    let back = dyadic.pull_up(&root, found.level, 8)?;
    let unipotent = LocalSystem::from_named(c1, &q, 2, &[("a", Matrix::from_i64(&q, &[&[1, 1], &[0, 1]]))])?;

    let mut block = String::new();
    writeln!(block, "dyadic tower").unwrap();
    block.push_str(&solenoid_summary(&dyadic, 12));
    writeln!(block).unwrap();
    writeln!(block, "full tower").unwrap();
    block.push_str(&solenoid_summary(&full, 12));
    writeln!(block).unwrap();
    writeln!(block, "bundle at level 8 with monodromy {}", e.images()[0]).unwrap();
    writeln!(block, "defined at level {} by {}", found.level, found.root).unwrap();
    writeln!(block, "pulled back up to level 8: {}", back.images()[0]).unwrap();
    writeln!(block).unwrap();
    writeln!(block, "unipotent bundle {}", unipotent.images()[0]).unwrap();
    block.push_str(&jordan_factors(&unipotent)?);
    Ok(Report::new("demo: solenoid").block(block))
}

fn fibonacci() -> Result<Report> {
    let q = FieldCtx::rationals();
    let c1 = Arc::new(builtin("C1")?);
    let fib = Matrix::from_i64(&q, &[&[1, 1], &[1, 0]]);
    let e = LocalSystem::from_named(c1, &q, 2, &[("a", fib)])?;
    let r = mod_p_pipeline(&e, 2, DEFAULT_CAP)?;
    let ok = trivializes(&r.reduced, &r.cover)?;
    Ok(Report::new("demo: fibonacci")
        .field("rational monodromy", &e.images()[0])
        .field("reduced mod 2", &r.reduced.images()[0])
        .field("group order", r.group.order())
        .field("cover degree", r.cover.degree())
        .field("cover connected", r.cover.is_connected())
        .field("cover galois", r.cover.is_galois())
        .field("pullback trivial", ok)
        .block(jordan_factors(&e)?))
}

fn torus() -> Result<Report> {
    let q = FieldCtx::rationals();
    let f2 = FieldCtx::prime(2)?;
    let mut rows = Vec::new();
    for name in ["T2rel", "RP2rel"] {
        let x = builtin(name)?;
        let ab = abelianization(&x)?;
        let torsion: Vec<String> = ab.torsion.iter().map(|t| format!("Z/{t}")).collect();
        rows.push(vec![
            name.to_string(),
            x.euler_characteristic().to_string(),
            ab.free_rank.to_string(),
            if torsion.is_empty() { "0".into() } else { torsion.join(" + ") },
            h1_constant(&x, &q).dimension.to_string(),
            h1_constant(&x, &f2).dimension.to_string(),
            hom_to_additive(&x, &f2)?.dimension.to_string(),
        ]);
    }
    Ok(Report::new("demo: torus").table(
        &["space", "euler", "free rank", "torsion", "dim H1(Q)", "dim H1(F2)", "dim Hom(pi1, F2)"],
        rows,
    ))
}
