use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::abelianized_relators;
use crate::basespace::{Presentation, TwoComplex};
use crate::error::Result;

/// Nonzero invariant factors `d_1 | d_2 | ...` of an integer matrix, by
/// row and column elimination.
#[allow(clippy::needless_range_loop)]
pub fn smith_invariants(rows: &[Vec<i64>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // pivot: smallest nonzero absolute value in the remaining block
        let Some((pi, pj)) = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by_key(|&(i, j)| a[i][j].abs())
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut done = true;
        for i in t + 1..m {
            let q = a[i][t].div_floor(&a[t][t]);
            if !q.is_zero() {
                for j in t..n {
                    let v = &a[t][j] * &q;
                    a[i][j] -= v;
                }
            }
            done &= a[i][t].is_zero();
        }
        for j in t + 1..n {
            let q = a[t][j].div_floor(&a[t][t]);
            if !q.is_zero() {
                for i in t..m {
                    let v = &a[i][t] * &q;
                    a[i][j] -= v;
                }
            }
            done &= a[t][j].is_zero();
        }
        if !done {
            continue;
        }
        // the pivot must divide the rest of the block
        if let Some(i) = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&a[i][j] % &a[t][t]).is_zero())) {
            for j in t..n {
                let v = a[i][j].clone();
                a[t][j] += v;
            }
            continue;
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// `H_1` of a presented group: a free part and the nontrivial invariant
/// factors of the torsion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abelianization {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

pub fn abelianization(x: &TwoComplex) -> Result<Abelianization> {
    let p = Presentation::new(x)?;
    let rows = abelianized_relators(&p);
    let d = smith_invariants(&rows);
    let torsion = d.iter().filter(|v| !v.is_zero() && **v != BigInt::from(1)).cloned().collect();
    Ok(Abelianization { free_rank: p.num_generators() - d.len(), torsion })
}
