//! Local systems on a 2-complex, seen as representations of the
//! fundamental group or as edge cocycles.
//!
//! Products along words run left to right: the image of `w1 w2` is
//! `rep(w1) * rep(w2)`, and an inverse letter contributes the inverse matrix.

mod cocycle;
mod ops;

use std::sync::Arc;

use crate::basespace::{Presentation, Step, TwoComplex};
use crate::error::{Error, Result};
use crate::exactfield::{FieldCtx, Value};
use crate::matrix::Matrix;
use crate::matrixgroup::{group_closure, FiniteMatrixGroup};

pub use cocycle::{from_cocycle, to_cocycle, CechCocycle};
pub use ops::{iso_test, IsoResult, TrivialSub};

pub(crate) fn same_space(a: &Arc<TwoComplex>, b: &Arc<TwoComplex>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A representation of the fundamental group of a valid complex: one
/// invertible matrix per generator of its presentation.
#[derive(Clone, Debug)]
pub struct LocalSystem {
    space: Arc<TwoComplex>,
    presentation: Arc<Presentation>,
    ctx: FieldCtx,
    rank: usize,
    rep: Vec<Matrix>,
    inverses: Vec<Matrix>,
}

impl PartialEq for LocalSystem {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space) && self.ctx == other.ctx && self.rank == other.rank && self.rep == other.rep
    }
}

impl Eq for LocalSystem {}

impl LocalSystem {
    /// Builds from generator images listed in presentation order and checks
    /// every relator.
    pub fn from_generator_images(space: Arc<TwoComplex>, ctx: &FieldCtx, rank: usize, rep: Vec<Matrix>) -> Result<Self> {
        let presentation = Arc::new(Presentation::new(&space)?);
        Self::with_presentation(space, presentation, ctx, rank, rep)
    }

    pub(crate) fn with_presentation(
        space: Arc<TwoComplex>,
        presentation: Arc<Presentation>,
        ctx: &FieldCtx,
        rank: usize,
        rep: Vec<Matrix>,
    ) -> Result<Self> {
        if rep.len() != presentation.num_generators() {
            return Err(Error::ShapeMismatch(format!(
                "{} generator images for {} generators",
                rep.len(),
                presentation.num_generators()
            )));
        }
        let mut inverses = Vec::with_capacity(rep.len());
        for (i, m) in rep.iter().enumerate() {
            if m.ctx() != ctx {
                return Err(Error::CtxMismatch(format!("image of generator {} lives over {}", i, m.ctx())));
            }
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::ShapeMismatch(format!("image of generator {i} is not {rank}x{rank}")));
            }
            inverses.push(m.inverse().ok_or(Error::SingularGenerator(i))?);
        }
        let sys = LocalSystem { space, presentation, ctx: ctx.clone(), rank, rep, inverses };
        for (i, r) in sys.presentation.relators().iter().enumerate() {
            if !sys.eval_word(r).is_identity() {
                return Err(Error::RelatorViolation(i));
            }
        }
        Ok(sys)
    }

    /// Builds from images keyed by edge id. Every generator needs an image;
    /// a spanning-tree edge may only be given the identity.
    pub fn from_named(space: Arc<TwoComplex>, ctx: &FieldCtx, rank: usize, images: &[(&str, Matrix)]) -> Result<Self> {
        let presentation = Arc::new(Presentation::new(&space)?);
        let mut rep: Vec<Option<Matrix>> = vec![None; presentation.num_generators()];
        for (name, m) in images {
            let e = space.edge_id(name)?;
            match presentation.generator_position(e) {
                Some(i) => rep[i] = Some(m.clone()),
                None if m.is_identity() => {}
                None => {
                    return Err(Error::InvalidArgument(format!(
                        "edge {name} lies in the spanning tree and must carry the identity"
                    )))
                }
            }
        }
        let rep = rep
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                m.ok_or_else(|| Error::MissingGenerator(space.edge(presentation.generators()[i]).id.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::with_presentation(space, presentation, ctx, rank, rep)
    }

    /// The trivial system of the given rank.
    pub fn trivial(space: Arc<TwoComplex>, ctx: &FieldCtx, rank: usize) -> Result<Self> {
        let presentation = Arc::new(Presentation::new(&space)?);
        let rep = vec![Matrix::identity(ctx, rank); presentation.num_generators()];
        Self::with_presentation(space, presentation, ctx, rank, rep)
    }

    pub fn space(&self) -> &Arc<TwoComplex> {
        &self.space
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.presentation
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Generator images in presentation order.
    pub fn images(&self) -> &[Matrix] {
        &self.rep
    }

    /// Image of a generator given by edge id.
    pub fn image_of(&self, name: &str) -> Result<&Matrix> {
        let e = self.space.edge_id(name)?;
        let i = self
            .presentation
            .generator_position(e)
            .ok_or_else(|| Error::MissingGenerator(format!("{name} is a spanning-tree edge")))?;
        Ok(&self.rep[i])
    }

    /// `(edge id, image)` pairs in presentation order.
    pub fn named_images(&self) -> Vec<(String, Matrix)> {
        self.presentation
            .generators()
            .iter()
            .zip(&self.rep)
            .map(|(&g, m)| (self.space.edge(g).id.clone(), m.clone()))
            .collect()
    }

    fn letter(&self, s: Step) -> &Matrix {
        let i = self.presentation.generator_position(s.edge).expect("word letter is a generator");
        if s.inverse {
            &self.inverses[i]
        } else {
            &self.rep[i]
        }
    }

    /// Image of a word in the generators.
    pub fn eval_word(&self, word: &[Step]) -> Matrix {
        word.iter().fold(Matrix::identity(&self.ctx, self.rank), |acc, &s| &acc * self.letter(s))
    }

    /// Holonomy of an edge path: the image of its word (tree edges drop out).
    pub fn eval_path(&self, path: &[Step]) -> Matrix {
        self.eval_word(&self.presentation.path_word(path))
    }

    /// Identity on every generator.
    pub fn is_trivial(&self) -> bool {
        self.rep.iter().all(Matrix::is_identity)
    }

    /// The matrix group generated by the images.
    pub fn monodromy_image(&self, cap: usize) -> Result<FiniteMatrixGroup> {
        group_closure(&self.ctx, self.rank, &self.rep, cap)
    }

    /// Basis of `{v : rep(g) v = v for all g}`.
    pub fn global_sections(&self) -> Vec<Vec<Value>> {
        let r = self.rank;
        let id = Matrix::identity(&self.ctx, r);
        let mut data = Vec::with_capacity(self.rep.len() * r * r);
        for m in &self.rep {
            data.extend((m - &id).values().iter().cloned());
        }
        if self.rep.is_empty() {
            return (0..r).map(|j| id.column(j)).collect();
        }
        Matrix::from_values(&self.ctx, self.rep.len() * r, r, data).kernel()
    }

    fn check_compatible(&self, other: &LocalSystem) -> Result<()> {
        if !same_space(&self.space, &other.space) {
            return Err(Error::SpaceMismatch("local systems live on different complexes".into()));
        }
        if self.ctx != other.ctx {
            return Err(Error::CtxMismatch(format!("{} vs {}", self.ctx, other.ctx)));
        }
        Ok(())
    }

    fn map_pairwise(&self, other: &LocalSystem, rank: usize, f: impl Fn(&Matrix, &Matrix) -> Matrix) -> Result<Self> {
        self.check_compatible(other)?;
        let rep = self.rep.iter().zip(&other.rep).map(|(a, b)| f(a, b)).collect();
        Self::with_presentation(self.space.clone(), self.presentation.clone(), &self.ctx, rank, rep)
    }

    pub fn direct_sum(&self, other: &LocalSystem) -> Result<Self> {
        self.map_pairwise(other, self.rank + other.rank, |a, b| Matrix::block_diag(&self.ctx, &[a, b]))
    }

    pub fn tensor(&self, other: &LocalSystem) -> Result<Self> {
        self.map_pairwise(other, self.rank * other.rank, |a, b| a.kronecker(b))
    }

    /// Contragredient: generator images replaced by their inverse transposes.
    pub fn dual(&self) -> Self {
        let rep = self.inverses.iter().map(Matrix::transpose).collect();
        Self::with_presentation(self.space.clone(), self.presentation.clone(), &self.ctx, self.rank, rep)
            .expect("dual of a valid system is valid")
    }

    /// `Hom(self, other)` realized as `dual(self) (x) other`.
    pub fn hom(&self, other: &LocalSystem) -> Result<Self> {
        self.dual().tensor(other)
    }

    /// Same images with the entries mapped into another field.
    pub fn map_field(&self, ctx: &FieldCtx, f: impl Fn(&Matrix) -> Result<Matrix>) -> Result<Self> {
        let rep = self.rep.iter().map(f).collect::<Result<Vec<_>>>()?;
        Self::with_presentation(self.space.clone(), self.presentation.clone(), ctx, self.rank, rep)
    }

    /// The image of every generator as row strings, in presentation order.
    pub fn describe(&self) -> String {
        let mut out = format!("rank {} local system over {} on {}\n", self.rank, self.ctx, self.space);
        for (name, m) in self.named_images() {
            out.push_str(&format!("  {name} -> {m}\n"));
        }
        out
    }
}
