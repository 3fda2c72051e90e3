//! Exact fields: parsing, arithmetic, embeddings and reduction mod p.

use monodromy::exactfield::{denominator_primes, reduce_mod_p, Embedding};
use monodromy::{FieldCtx, FieldElem, Matrix, Result};

fn main() -> Result<()> {
    let f4 = FieldCtx::parse("F(2, x^2+x+1)")?;
    let w = FieldElem::parse(&f4, "x")?;
    let w2 = &w * &w;
    println!("in {f4}: x^2 = {w2}, x^2 + x = {}", &w2 + &w);
    println!("x^-1 = {}", w.inv().unwrap());

    let f2 = FieldCtx::prime(2)?;
    let emb = Embedding::new(&f2, &f4)?;
    println!("x^2 + x restricts to {} in {f2}", emb.try_restrict(&(&w2 + &w))?);
    println!("x restricts: {:?}", emb.try_restrict(&w).map(|e| e.to_string()));

    let q = FieldCtx::rationals();
    let m = Matrix::parse(&q, &[vec!["1", "1/3"], vec!["0", "1"]])?;
    println!("denominator and determinant primes of {m}: {:?}", denominator_primes(std::slice::from_ref(&m))?);
    println!("mod 2: {}", reduce_mod_p(std::slice::from_ref(&m), 2)?[0]);
    println!("mod 3: {:?}", reduce_mod_p(std::slice::from_ref(&m), 3).map(|_| ()));
    Ok(())
}
