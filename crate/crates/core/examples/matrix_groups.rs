//! Finite matrix groups, Jordan decomposition, roots and conjugacy.

use monodromy::matrixgroup::{conjugacy_witness, group_closure, jordan_multiplicative, matrix_root, DEFAULT_CAP};
use monodromy::{FieldCtx, Matrix, Result};

fn main() -> Result<()> {
    let q = FieldCtx::rationals();
    let f2 = FieldCtx::prime(2)?;

    let rotation = Matrix::from_i64(&q, &[&[0, -1], &[1, 0]]);
    println!("<{rotation}> has order {}", group_closure(&q, 2, std::slice::from_ref(&rotation), DEFAULT_CAP)?.order());
    let fib = Matrix::from_i64(&f2, &[&[0, 1], &[1, 1]]);
    println!("<{fib}> over F(2) has order {}", group_closure(&f2, 2, std::slice::from_ref(&fib), DEFAULT_CAP)?.order());
    let shear = Matrix::from_i64(&q, &[&[1, 1], &[0, 1]]);
    println!("<{shear}> over Q: {}", group_closure(&q, 2, std::slice::from_ref(&shear), DEFAULT_CAP).unwrap_err());

    let m = Matrix::from_i64(&q, &[&[2, 1], &[0, 2]]);
    let jd = jordan_multiplicative(&m)?;
    println!("{m} = {} * {}", jd.semisimple, jd.unipotent);

    let d = Matrix::from_i64(&q, &[&[4, 0], &[0, 9]]);
    println!("square root of {d}: {:?}", matrix_root(&d, 2)?);
    println!("square root of [[3]]: {:?}", matrix_root(&Matrix::from_i64(&q, &[&[3]]), 2)?);

    let shear2 = Matrix::from_i64(&q, &[&[1, 2], &[0, 1]]);
    println!("{shear} ~ {shear2}: {:?}", conjugacy_witness(std::slice::from_ref(&shear), std::slice::from_ref(&shear2), 64, 0)?);
    Ok(())
}
