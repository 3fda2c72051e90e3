use std::sync::Arc;

use super::LocalSystem;
use crate::basespace::{Presentation, Step, TwoComplex};
use crate::error::{Error, Result};
use crate::exactfield::FieldCtx;
use crate::matrix::Matrix;

/// Edge labels of a flat bundle: crossing edge `e` forwards multiplies by
/// `label(e)` on the right, backwards by its inverse. The product around
/// every face is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechCocycle {
    space: Arc<TwoComplex>,
    ctx: FieldCtx,
    rank: usize,
    labels: Vec<Matrix>,
    inverses: Vec<Matrix>,
}

impl CechCocycle {
    /// Labels in edge order. Checks invertibility and every face product.
    pub fn new(space: Arc<TwoComplex>, ctx: &FieldCtx, rank: usize, labels: Vec<Matrix>) -> Result<Self> {
        if labels.len() != space.num_edges() {
            return Err(Error::ShapeMismatch(format!("{} labels for {} edges", labels.len(), space.num_edges())));
        }
        let mut inverses = Vec::with_capacity(labels.len());
        for (e, m) in labels.iter().enumerate() {
            if m.ctx() != ctx {
                return Err(Error::CtxMismatch(format!("label of {} lives over {}", space.edge(e).id, m.ctx())));
            }
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::ShapeMismatch(format!("label of {} is not {rank}x{rank}", space.edge(e).id)));
            }
            inverses.push(m.inverse().ok_or(Error::SingularGenerator(e))?);
        }
        let c = CechCocycle { space, ctx: ctx.clone(), rank, labels, inverses };
        for (i, face) in c.space.faces().iter().enumerate() {
            if !c.path_product(face).is_identity() {
                return Err(Error::FaceProductNotIdentity(i));
            }
        }
        Ok(c)
    }

    /// Labels keyed by edge id; unlisted edges get the identity.
    pub fn from_named(space: Arc<TwoComplex>, ctx: &FieldCtx, rank: usize, labels: &[(&str, Matrix)]) -> Result<Self> {
        let mut all = vec![Matrix::identity(ctx, rank); space.num_edges()];
        for (name, m) in labels {
            all[space.edge_id(name)?] = m.clone();
        }
        Self::new(space, ctx, rank, all)
    }

    /// Tree edges labeled by the identity, each generator by its image.
    pub fn from_local_system(e: &LocalSystem) -> Self {
        let x = e.space();
        let p = e.presentation();
        let labels = (0..x.num_edges())
            .map(|edge| match p.generator_position(edge) {
                Some(i) => e.images()[i].clone(),
                None => Matrix::identity(e.ctx(), e.rank()),
            })
            .collect();
        CechCocycle::new(x.clone(), e.ctx(), e.rank(), labels).expect("cocycle of a local system is valid")
    }

    pub fn space(&self) -> &Arc<TwoComplex> {
        &self.space
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn labels(&self) -> &[Matrix] {
        &self.labels
    }

    pub fn label(&self, e: usize) -> &Matrix {
        &self.labels[e]
    }

    pub fn step_label(&self, s: Step) -> &Matrix {
        if s.inverse {
            &self.inverses[s.edge]
        } else {
            &self.labels[s.edge]
        }
    }

    /// Ordered product of labels along an edge path.
    pub fn path_product(&self, path: &[Step]) -> Matrix {
        path.iter().fold(Matrix::identity(&self.ctx, self.rank), |acc, &s| &acc * self.step_label(s))
    }

    /// Tree-normalized gauge: `h_v` is the product along the spanning-tree
    /// path from the basepoint to `v`.
    pub(crate) fn tree_gauge(&self, p: &Presentation) -> Vec<Matrix> {
        (0..self.space.num_vertices()).map(|v| self.path_product(&p.tree_path(v))).collect()
    }

    /// The monodromy representation at the basepoint. Generator `g` maps to
    /// the product along `tree(src) g tree(dst)^-1`.
    pub fn to_local_system(&self) -> Result<LocalSystem> {
        let p = Arc::new(Presentation::new(&self.space)?);
        let h = self.tree_gauge(&p);
        let rep = p
            .generators()
            .iter()
            .map(|&g| {
                let e = self.space.edge(g);
                let hdst_inv = h[e.dst].inverse().expect("gauge is invertible");
                &(&h[e.src] * &self.labels[g]) * &hdst_inv
            })
            .collect();
        LocalSystem::with_presentation(self.space.clone(), p, &self.ctx, self.rank, rep)
    }

    /// Does `h` (one invertible matrix per vertex) satisfy
    /// `h_src^-1 h_dst = label(e)` on every edge? Returns the first failing
    /// edge otherwise.
    pub fn check_trivialization(&self, h: &[Matrix]) -> Result<()> {
        if h.len() != self.space.num_vertices() {
            return Err(Error::ShapeMismatch(format!(
                "{} vertex matrices for {} vertices",
                h.len(),
                self.space.num_vertices()
            )));
        }
        for (e, edge) in self.space.edges().iter().enumerate() {
            let ok = h[edge.src].inverse().is_some_and(|inv| &inv * &h[edge.dst] == self.labels[e]);
            if !ok {
                return Err(Error::NotATrivialization(edge.id.clone()));
            }
        }
        Ok(())
    }

    pub fn map_field(&self, ctx: &FieldCtx, f: impl Fn(&Matrix) -> Result<Matrix>) -> Result<Self> {
        let labels = self.labels.iter().map(f).collect::<Result<Vec<_>>>()?;
        CechCocycle::new(self.space.clone(), ctx, self.rank, labels)
    }
}

/// Cocycle to representation.
pub fn from_cocycle(c: &CechCocycle) -> Result<LocalSystem> {
    c.to_local_system()
}

/// Representation to cocycle.
pub fn to_cocycle(e: &LocalSystem) -> CechCocycle {
    CechCocycle::from_local_system(e)
}
