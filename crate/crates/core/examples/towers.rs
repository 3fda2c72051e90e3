//! Towers of cyclic coverings of the circle: levels, transitions, pulling
//! bundles up, finding where a bundle is defined, and which finite cyclic
//! quotients survive in the limit.

use monodromy::descent::{
    etale_quotients, finite_quotient_survival, format_survival_table, jordan_factors, level_of_definition,
    solenoid_summary, tower_make,
};
use monodromy::localsystem::LocalSystem;
use monodromy::{FieldCtx, Matrix, Result};

fn main() -> Result<()> {
    let dyadic = tower_make(&[2], 8)?;
    println!("dyadic levels: {:?}", dyadic.indices());
    println!("levels over {{2, 3}} up to 6: {:?}", tower_make(&[2, 3], 6)?.indices());
    let t = dyadic.transition(8, 2)?;
    println!("transition 8 -> 2: degree {}, galois {}", t.degree(), t.is_galois());
    println!("fibers of 8 -> 4 -> 2 compose: {:?}", dyadic.fiber_projection(8, 4, 2)?);

    let q = FieldCtx::rationals();
    let level = dyadic.level_space().clone();
    let e = LocalSystem::from_named(level.clone(), &q, 1, &[("a", Matrix::from_i64(&q, &[&[16]]))])?;
    let found = level_of_definition(&e, &dyadic, 4)?;
    println!("(16) at level 4 comes from level {} with monodromy {}", found.level, found.root);
    let three = LocalSystem::from_named(level.clone(), &q, 1, &[("a", Matrix::from_i64(&q, &[&[3]]))])?;
    println!("(3) at level 2 is defined at level {}", level_of_definition(&three, &dyadic, 2)?.level);
    println!("(2) pulled up from 1 to 8: {}", dyadic.pull_up(&found_root(&found.root, &level)?, 1, 8)?.images()[0]);

    println!("survival of Z/12 in the dyadic limit: {}", finite_quotient_survival(&tower_make(&[2], 64)?, 12)?);
    print!("{}", format_survival_table(&etale_quotients(&tower_make(&[2], 64)?, 10)));
    let all = tower_make(&[2, 3, 5, 7, 11, 13, 17, 19], 20)?;
    print!("{}", solenoid_summary(&all, 20));

    let fib = LocalSystem::from_named(level, &q, 2, &[("a", Matrix::from_i64(&q, &[&[1, 1], &[1, 0]]))])?;
    print!("{}", jordan_factors(&fib)?);
    Ok(())
}

fn found_root(root: &Matrix, level: &std::sync::Arc<monodromy::basespace::TwoComplex>) -> Result<LocalSystem> {
    LocalSystem::from_named(level.clone(), root.ctx(), root.rows(), &[("a", root.clone())])
}
