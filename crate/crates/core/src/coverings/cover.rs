use std::sync::Arc;

use super::group::{check_permutation, compose, invert_permutation, FiniteGroup};
use crate::basespace::{Edge, Presentation, Step, TwoComplex};
use crate::error::{Error, Result};

/// A finite covering of a valid complex, given by one permutation of the
/// fiber `0..degree` per base edge: the lift of `e` starting at fiber `i`
/// ends at fiber `perm_e[i]`.
///
/// Total vertex `(v, i)` has index `v * degree + i` and name `"<v>.<i>"`;
/// total edge `(e, i)` is the lift of `e` starting at fiber `i`, named
/// `"<e>.<i>"`. The total basepoint is fiber 0 over the base basepoint.
#[derive(Clone, Debug)]
pub struct Covering {
    base: Arc<TwoComplex>,
    presentation: Arc<Presentation>,
    degree: usize,
    perms: Vec<Vec<usize>>,
    total: Arc<TwoComplex>,
    galois: Option<GaloisData>,
}

/// Identification of the basepoint fiber with a group `G` acting simply
/// transitively: fiber index `s` corresponds to `elem_of_fiber[s]`, and
/// walking the loop of base generator `k` multiplies on the right by
/// `generator_elements[k]`. Deck transformations multiply on the left.
#[derive(Clone, Debug)]
pub struct GaloisData {
    pub group: Arc<FiniteGroup>,
    pub elem_of_fiber: Vec<usize>,
    pub fiber_of_elem: Vec<usize>,
    pub generator_elements: Vec<usize>,
}

impl Covering {
    /// General constructor: one permutation per base edge.
    pub fn new(base: Arc<TwoComplex>, degree: usize, perms: Vec<Vec<usize>>) -> Result<Self> {
        let presentation = Arc::new(Presentation::new(&base)?);
        Self::build(base, presentation, degree, perms, None)
    }

    /// Covering from an action of the fundamental group on `0..degree`:
    /// generator `k` acts by `gen_perms[k]` (on the right), tree edges lift
    /// horizontally.
    pub fn from_action(base: Arc<TwoComplex>, degree: usize, gen_perms: &[Vec<usize>]) -> Result<Self> {
        let presentation = Arc::new(Presentation::new(&base)?);
        if gen_perms.len() != presentation.num_generators() {
            return Err(Error::ShapeMismatch(format!(
                "{} permutations for {} generators",
                gen_perms.len(),
                presentation.num_generators()
            )));
        }
        let id: Vec<usize> = (0..degree).collect();
        let perms = (0..base.num_edges())
            .map(|e| match presentation.generator_position(e) {
                Some(k) => gen_perms[k].clone(),
                None => id.clone(),
            })
            .collect();
        Self::build(base, presentation, degree, perms, None)
    }

    /// The torsor of a homomorphism to a finite group: fiber = group
    /// elements, generator `k` lifts by right multiplication by `rho[k]`,
    /// deck group acts by left multiplication. Connected exactly when `rho`
    /// is onto.
    pub fn from_group(base: Arc<TwoComplex>, group: Arc<FiniteGroup>, rho: &[usize]) -> Result<Self> {
        let presentation = Arc::new(Presentation::new(&base)?);
        if rho.len() != presentation.num_generators() {
            return Err(Error::ShapeMismatch(format!(
                "{} group elements for {} generators",
                rho.len(),
                presentation.num_generators()
            )));
        }
        if let Some(&bad) = rho.iter().find(|&&g| g >= group.order()) {
            return Err(Error::InvalidArgument(format!("group element {bad} out of range")));
        }
        for (i, r) in presentation.relators().iter().enumerate() {
            let value = r.iter().fold(group.identity(), |acc, s| {
                let g = rho[presentation.generator_position(s.edge).unwrap()];
                group.mul(acc, if s.inverse { group.inv(g) } else { g })
            });
            if value != group.identity() {
                return Err(Error::RelatorViolation(i));
            }
        }
        let n = group.order();
        let id: Vec<usize> = (0..n).collect();
        let perms = (0..base.num_edges())
            .map(|e| match presentation.generator_position(e) {
                Some(k) => group.right_regular(rho[k]),
                None => id.clone(),
            })
            .collect();
        let onto = group.subgroup_order(rho) == n;
        let galois = onto.then(|| GaloisData {
            group: group.clone(),
            elem_of_fiber: id.clone(),
            fiber_of_elem: id,
            generator_elements: rho.to_vec(),
        });
        Self::build(base, presentation, n, perms, Some(galois))
    }

    fn build(
        base: Arc<TwoComplex>,
        presentation: Arc<Presentation>,
        degree: usize,
        perms: Vec<Vec<usize>>,
        galois: Option<Option<GaloisData>>,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidArgument("covering degree must be positive".into()));
        }
        if perms.len() != base.num_edges() {
            return Err(Error::ShapeMismatch(format!("{} permutations for {} edges", perms.len(), base.num_edges())));
        }
        for p in &perms {
            check_permutation(p, degree)?;
        }
        let inverses: Vec<Vec<usize>> = perms.iter().map(|p| invert_permutation(p)).collect();
        let n = degree;
        let vertices = (0..base.num_vertices() * n).map(|y| format!("{}.{}", base.vertex_name(y / n), y % n)).collect();
        let mut edges = Vec::with_capacity(base.num_edges() * n);
        for (e, edge) in base.edges().iter().enumerate() {
            for (i, &j) in perms[e].iter().enumerate() {
                edges.push(Edge { id: format!("{}.{}", edge.id, i), src: edge.src * n + i, dst: edge.dst * n + j });
            }
        }
        let mut faces = Vec::with_capacity(base.num_faces() * n);
        for (f, face) in base.faces().iter().enumerate() {
            for i in 0..n {
                let mut j = i;
                let mut lifted = Vec::with_capacity(face.len());
                for s in face {
                    if s.inverse {
                        j = inverses[s.edge][j];
                        lifted.push(Step::inv(s.edge * n + j));
                    } else {
                        lifted.push(Step::fwd(s.edge * n + j));
                        j = perms[s.edge][j];
                    }
                }
                if j != i {
                    return Err(Error::RelatorViolation(f));
                }
                faces.push(lifted);
            }
        }
        let total = Arc::new(TwoComplex::from_parts(vertices, edges, faces, base.basepoint() * n));
        let mut cover = Covering { base, presentation, degree, perms, total, galois: None };
        cover.galois = match galois {
            Some(g) => g,
            None => cover.detect_galois()?,
        };
        Ok(cover)
    }

    /// Regular-action test on the basepoint fiber of a connected covering.
    fn detect_galois(&self) -> Result<Option<GaloisData>> {
        if !self.is_connected() {
            return Ok(None);
        }
        let loops: Vec<Vec<usize>> = self
            .presentation
            .generators()
            .iter()
            .map(|&g| self.path_perm(&self.presentation.word_to_loop(&self.base, &[Step::fwd(g)])))
            .collect();
        let (group, elements, gen_idx) = match FiniteGroup::from_permutations_capped(self.degree, &loops, self.degree) {
            Ok(found) => found,
            Err(Error::CapExceeded(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        if group.order() != self.degree {
            return Ok(None);
        }
        let mut fiber_of_elem = vec![0; self.degree];
        let mut elem_of_fiber = vec![0; self.degree];
        for (k, p) in elements.iter().enumerate() {
            fiber_of_elem[k] = p[0];
            elem_of_fiber[p[0]] = k;
        }
        Ok(Some(GaloisData { group: Arc::new(group), elem_of_fiber, fiber_of_elem, generator_elements: gen_idx }))
    }

    pub fn base(&self) -> &Arc<TwoComplex> {
        &self.base
    }

    pub fn base_presentation(&self) -> &Arc<Presentation> {
        &self.presentation
    }

    pub fn total(&self) -> &Arc<TwoComplex> {
        &self.total
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn perm(&self, e: usize) -> &[usize] {
        &self.perms[e]
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    pub fn total_vertex(&self, v: usize, i: usize) -> usize {
        v * self.degree + i
    }

    pub fn total_edge(&self, e: usize, i: usize) -> usize {
        e * self.degree + i
    }

    /// `(base vertex, fiber index)`.
    pub fn project_vertex(&self, y: usize) -> (usize, usize) {
        (y / self.degree, y % self.degree)
    }

    /// `(base edge, starting fiber index)`.
    pub fn project_edge(&self, t: usize) -> (usize, usize) {
        (t / self.degree, t % self.degree)
    }

    pub fn project_path(&self, path: &[Step]) -> Vec<Step> {
        path.iter().map(|s| Step { edge: s.edge / self.degree, inverse: s.inverse }).collect()
    }

    /// Fiber index reached by lifting `path` from fiber `i`.
    pub fn lift_index(&self, path: &[Step], mut i: usize) -> usize {
        for s in path {
            i = if s.inverse { self.perms[s.edge].iter().position(|&x| x == i).unwrap() } else { self.perms[s.edge][i] };
        }
        i
    }

    /// Permutation of fiber indices induced by lifting `path`.
    pub fn path_perm(&self, path: &[Step]) -> Vec<usize> {
        path.iter().fold((0..self.degree).collect(), |acc: Vec<usize>, s| {
            if s.inverse {
                compose(&acc, &invert_permutation(&self.perms[s.edge]))
            } else {
                compose(&acc, &self.perms[s.edge])
            }
        })
    }

    /// The lift of a base path starting at fiber `i`.
    pub fn lift_path(&self, path: &[Step], mut i: usize) -> Vec<Step> {
        let mut out = Vec::with_capacity(path.len());
        for s in path {
            if s.inverse {
                i = self.perms[s.edge].iter().position(|&x| x == i).unwrap();
                out.push(Step::inv(self.total_edge(s.edge, i)));
            } else {
                out.push(Step::fwd(self.total_edge(s.edge, i)));
                i = self.perms[s.edge][i];
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.total.is_connected()
    }

    pub fn galois(&self) -> Result<&GaloisData> {
        self.galois
            .as_ref()
            .ok_or_else(|| Error::NotGalois("covering is disconnected or its fiber action is not regular".into()))
    }

    pub fn is_galois(&self) -> bool {
        self.galois.is_some()
    }

    /// Transport of fiber indices from the basepoint to `x` along the tree.
    pub fn tree_transport(&self, x: usize) -> Vec<usize> {
        self.path_perm(&self.presentation.tree_path(x))
    }

    /// Deck transformation `g` on all total vertices.
    pub fn deck_vertex_map(&self, g: usize) -> Result<Vec<usize>> {
        let gd = self.galois()?;
        let mut out = vec![0; self.total.num_vertices()];
        for x in 0..self.base.num_vertices() {
            let tau = self.tree_transport(x);
            let tau_inv = invert_permutation(&tau);
            for i in 0..self.degree {
                let s = tau_inv[i];
                let t = gd.fiber_of_elem[gd.group.mul(g, gd.elem_of_fiber[s])];
                out[self.total_vertex(x, i)] = self.total_vertex(x, tau[t]);
            }
        }
        Ok(out)
    }

    /// Deck transformation `g` on total edges.
    pub fn deck_edge_map(&self, g: usize) -> Result<Vec<usize>> {
        let vmap = self.deck_vertex_map(g)?;
        Ok((0..self.total.num_edges())
            .map(|t| {
                let (e, _) = self.project_edge(t);
                let (_, j) = self.project_vertex(vmap[self.total.edge(t).src]);
                self.total_edge(e, j)
            })
            .collect())
    }

    /// The bijection of the fiber over `x` given by the finite-level etale
    /// path `g`: right multiplication by `g` in the basepoint labeling,
    /// carried to `x` along the tree. Commutes with every deck
    /// transformation.
    pub fn etale_fiber_map(&self, x: usize, g: usize) -> Result<Vec<usize>> {
        let gd = self.galois()?;
        let tau = self.tree_transport(x);
        let tau_inv = invert_permutation(&tau);
        Ok((0..self.degree)
            .map(|i| {
                let s = tau_inv[i];
                tau[gd.fiber_of_elem[gd.group.mul(gd.elem_of_fiber[s], g)]]
            })
            .collect())
    }

    /// Connected components as coverings of the base, basepoint component
    /// first. Fiber indices are renumbered in increasing order.
    pub fn decompose(&self) -> Result<Vec<Covering>> {
        let n = self.degree;
        let mut out = Vec::new();
        for comp in self.total.components() {
            let mut fibers: Vec<Vec<usize>> = vec![Vec::new(); self.base.num_vertices()];
            for &y in &comp {
                let (v, i) = self.project_vertex(y);
                fibers[v].push(i);
            }
            let d = fibers[self.base.basepoint()].len();
            let mut local = vec![usize::MAX; self.base.num_vertices() * n];
            for (v, f) in fibers.iter().enumerate() {
                for (k, &i) in f.iter().enumerate() {
                    local[v * n + i] = k;
                }
            }
            let perms = self
                .base
                .edges()
                .iter()
                .enumerate()
                .map(|(e, edge)| {
                    fibers[edge.src].iter().map(|&i| local[edge.dst * n + self.perms[e][i]]).collect()
                })
                .collect();
            out.push(Covering::build(self.base.clone(), self.presentation.clone(), d, perms, None)?);
        }
        Ok(out)
    }

    /// Structural checks: permutations, fiber sizes, edge lifts and face
    /// lifts.
    pub fn validate(&self) -> std::result::Result<(), Vec<Error>> {
        let mut errors = Vec::new();
        for p in &self.perms {
            if let Err(e) = check_permutation(p, self.degree) {
                errors.push(e);
            }
        }
        if self.total.num_vertices() != self.base.num_vertices() * self.degree {
            errors.push(Error::ShapeMismatch("fiber sizes differ from the degree".into()));
        }
        for (t, edge) in self.total.edges().iter().enumerate() {
            let (e, i) = self.project_edge(t);
            let base_edge = self.base.edge(e);
            if self.project_vertex(edge.src) != (base_edge.src, i)
                || self.project_vertex(edge.dst) != (base_edge.dst, self.perms[e][i])
            {
                errors.push(Error::ShapeMismatch(format!("edge {} does not lie over {}", edge.id, base_edge.id)));
            }
        }
        if self.total.num_faces() != self.base.num_faces() * self.degree {
            errors.push(Error::ShapeMismatch("faces do not lift once per fiber".into()));
        }
        for (f, face) in self.total.faces().iter().enumerate() {
            if !self.total.is_closed_path(face) {
                errors.push(Error::OpenFaceWord(f));
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(errors)
        }
    }

    /// Projection tables and the total complex, as JSON.
    pub fn to_json(&self) -> serde_json::Value {
        let vertex_projection: serde_json::Map<String, serde_json::Value> = (0..self.total.num_vertices())
            .map(|y| {
                let (v, _) = self.project_vertex(y);
                (self.total.vertex_name(y).to_string(), self.base.vertex_name(v).into())
            })
            .collect();
        let edge_projection: serde_json::Map<String, serde_json::Value> = (0..self.total.num_edges())
            .map(|t| {
                let (e, _) = self.project_edge(t);
                (self.total.edge(t).id.clone(), self.base.edge(e).id.clone().into())
            })
            .collect();
        serde_json::json!({
            "degree": self.degree,
            "connected": self.is_connected(),
            "galois": self.is_galois(),
            "total": serde_json::to_value(self.total.to_doc()).unwrap(),
            "vertex_projection": vertex_projection,
            "edge_projection": edge_projection,
        })
    }
}
