use super::LocalSystem;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::matrixgroup::{conjugacy_witness, Conjugacy};

/// Outcome of [`iso_test`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoResult {
    /// `T` with `T * E(g) * T^-1 = F(g)` for every generator.
    Isomorphic(Matrix),
    ProvablyDistinct,
    /// Randomized search over Q found no witness; no conclusion.
    Inconclusive,
}

/// Decides whether two systems on the same complex are isomorphic, by
/// simultaneous conjugacy of the generator images.
///
/// Besides the checks made by the conjugacy search, ranks and the
/// characteristic polynomials of all products of two generators must match.
pub fn iso_test(e: &LocalSystem, f: &LocalSystem, trials: usize, seed: u64) -> Result<IsoResult> {
    if !super::same_space(e.space(), f.space()) {
        return Err(Error::SpaceMismatch("local systems live on different complexes".into()));
    }
    if e.ctx() != f.ctx() {
        return Err(Error::CtxMismatch(format!("{} vs {}", e.ctx(), f.ctx())));
    }
    if e.rank() != f.rank() {
        return Ok(IsoResult::ProvablyDistinct);
    }
    let (a, b) = (e.images(), f.images());
    if a.is_empty() || e.rank() == 0 {
        return Ok(IsoResult::Isomorphic(Matrix::identity(e.ctx(), e.rank())));
    }
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if (&a[i] * &a[j]).charpoly() != (&b[i] * &b[j]).charpoly() {
                return Ok(IsoResult::ProvablyDistinct);
            }
        }
    }
    Ok(match conjugacy_witness(a, b, trials, seed)? {
        Conjugacy::Witness(t) => IsoResult::Isomorphic(t),
        Conjugacy::ProvablyDistinct => IsoResult::ProvablyDistinct,
        Conjugacy::NotFoundInTrials => IsoResult::Inconclusive,
    })
}

/// The largest trivial subsystem, with its inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialSub {
    /// Trivial system whose rank is the dimension of the global sections.
    pub system: LocalSystem,
    /// `rank(E) x k` matrix whose columns span the fixed space.
    pub inclusion: Matrix,
}

impl LocalSystem {
    /// The subsystem spanned by the global sections; it is trivial, and any
    /// trivial subsystem lies inside it.
    pub fn max_trivial_sub(&self) -> TrivialSub {
        let basis = self.global_sections();
        let k = basis.len();
        let inclusion = Matrix::from_columns(self.ctx(), self.rank(), &basis);
        let rep = vec![Matrix::identity(self.ctx(), k); self.images().len()];
        let system =
            LocalSystem::with_presentation(self.space().clone(), self.presentation().clone(), self.ctx(), k, rep)
                .expect("trivial system is valid");
        TrivialSub { system, inclusion }
    }
}
