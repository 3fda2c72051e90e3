use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use super::Covering;
use crate::basespace::{Presentation, Step, TwoComplex};
use crate::error::{Error, Result};
use crate::exactfield::Value;
use crate::localsystem::{same_space, to_cocycle, CechCocycle, LocalSystem};
use crate::matrix::Matrix;

fn check_base(e: &LocalSystem, c: &Covering) -> Result<()> {
    if !same_space(e.space(), c.base()) {
        return Err(Error::SpaceMismatch("local system does not live on the base of the covering".into()));
    }
    Ok(())
}

/// Cocycle of the pulled-back bundle on the whole total complex: each lift
/// of `e` carries the label of `e`.
pub fn pullback_cocycle(e: &LocalSystem, c: &Covering) -> Result<CechCocycle> {
    check_base(e, c)?;
    let base = to_cocycle(e);
    let labels = (0..c.total().num_edges()).map(|t| base.label(c.project_edge(t).0).clone()).collect();
    CechCocycle::new(c.total().clone(), e.ctx(), e.rank(), labels)
}

/// Component of the total complex containing `y`, based at `y`, with the
/// total edge index of each of its edges.
fn component_at(c: &Covering, y: usize) -> (Arc<TwoComplex>, Vec<usize>) {
    let total = c.total();
    if total.is_connected() {
        return (Arc::new(total.with_basepoint(y)), (0..total.num_edges()).collect());
    }
    let comp = total.components().into_iter().find(|comp| comp.contains(&y)).expect("vertex has a component");
    let (sub, _, edges) = total.subcomplex(&comp, y);
    (Arc::new(sub), edges)
}

/// The pulled-back local system on the component of the total complex
/// through `y`, based at `y`.
pub fn pullback(e: &LocalSystem, c: &Covering, y: usize) -> Result<LocalSystem> {
    check_base(e, c)?;
    if y >= c.total().num_vertices() {
        return Err(Error::UnknownVertex(format!("total vertex {y}")));
    }
    let base = to_cocycle(e);
    let (space, edges) = component_at(c, y);
    let labels = edges.iter().map(|&t| base.label(c.project_edge(t).0).clone()).collect();
    CechCocycle::new(space, e.ctx(), e.rank(), labels)?.to_local_system()
}

/// Induced bundle on the base from an edge cocycle on the total complex.
/// The label of base edge `e` has block `(i, perm_e(i))` equal to the label
/// of the lift of `e` at fiber `i`, all other blocks zero.
pub fn pushforward_cocycle(f: &CechCocycle, c: &Covering) -> Result<CechCocycle> {
    if !same_space(f.space(), c.total()) {
        return Err(Error::SpaceMismatch("cocycle does not live on the total complex".into()));
    }
    let (n, r) = (c.degree(), f.rank());
    let ctx = f.ctx();
    let labels = (0..c.base().num_edges())
        .map(|e| {
            let mut m = Matrix::zeros(ctx, n * r, n * r);
            for i in 0..n {
                let j = c.perm(e)[i];
                let block = f.label(c.total_edge(e, i));
                for a in 0..r {
                    for b in 0..r {
                        m.set(i * r + a, j * r + b, block.get(a, b).clone());
                    }
                }
            }
            m
        })
        .collect();
    CechCocycle::new(c.base().clone(), ctx, n * r, labels)
}

/// Pushforward of a local system on the (connected) total complex.
pub fn pushforward(f: &LocalSystem, c: &Covering) -> Result<LocalSystem> {
    if !same_space(f.space(), c.total()) {
        let moved = f.space().with_basepoint(c.total().basepoint());
        if !(moved == **c.total() && c.total().vertices() == f.space().vertices()) {
            return Err(Error::SpaceMismatch("local system does not live on the total complex".into()));
        }
    }
    let labels = to_cocycle(f).labels().to_vec();
    let cocycle = CechCocycle::new(c.total().clone(), f.ctx(), f.rank(), labels)?;
    pushforward_cocycle(&cocycle, c)?.to_local_system()
}

/// Generators of the image of the fundamental group of the total complex
/// at `y` (which must lie over the base basepoint), as reduced words in the
/// base generators: one per edge outside the spanning tree of the total
/// complex, in the order of the total presentation.
pub fn subgroup_generators(c: &Covering, y: usize) -> Result<Vec<Vec<Step>>> {
    if !c.is_connected() {
        return Err(Error::Disconnected);
    }
    let (v, _) = c.project_vertex(y);
    if v != c.base().basepoint() {
        return Err(Error::NotAtBasepoint(c.total().vertex_name(y).to_string()));
    }
    let total = c.total().with_basepoint(y);
    let p = Presentation::new(&total)?;
    let base_pres = c.base_presentation();
    Ok(p.generators()
        .iter()
        .map(|&t| {
            let lifted_loop = p.word_to_loop(&total, &[Step::fwd(t)]);
            base_pres.path_word(&c.project_path(&lifted_loop))
        })
        .collect())
}

/// Whether the pullback of `e` to every component of the total complex is
/// trivial.
pub fn trivializes(e: &LocalSystem, c: &Covering) -> Result<bool> {
    check_base(e, c)?;
    for comp in c.total().components() {
        let y = comp
            .iter()
            .copied()
            .find(|&y| c.project_vertex(y).0 == c.base().basepoint())
            .expect("each component meets the basepoint fiber");
        if !pullback(e, c, y)?.is_trivial() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Both sides of the exactness check for a Galois covering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSequenceReport {
    pub group_order: usize,
    /// Subgroup generators as words in the base generators.
    pub subgroup_words: Vec<Vec<Step>>,
    /// Generator images of the pulled-back system.
    pub pullback_images: Vec<Matrix>,
    /// Images of the subgroup words under the base system.
    pub word_images: Vec<Matrix>,
    pub kernel_side_agrees: bool,
    pub pullback_trivial: bool,
    pub factors_through_group: bool,
    pub violations: Vec<String>,
}

impl ExactSequenceReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares the pullback of `e` computed through cocycles with the images of
/// the subgroup generators, and checks that `e` is trivialized exactly when
/// its representation factors through the deck group.
///
/// "Factors through" is tested on the Cayley graph: with a word `w_g` chosen
/// for each group element, `rep(w_g) rep(s) = rep(w_{g rho(s)})` must hold
/// for every element `g` and generator `s`.
pub fn exact_sequence_report(e: &LocalSystem, c: &Covering) -> Result<ExactSequenceReport> {
    check_base(e, c)?;
    let gd = c.galois()?;
    let y = c.total().basepoint();
    let pulled = pullback(e, c, y)?;
    let words = subgroup_generators(c, y)?;
    let word_images: Vec<Matrix> = words.iter().map(|w| e.eval_word(w)).collect();
    let pullback_images = pulled.images().to_vec();
    let kernel_side_agrees = word_images == pullback_images;
    let pullback_trivial = pulled.is_trivial();

    let g = &gd.group;
    let gens = c.base_presentation().generators();
    let mut image: Vec<Option<Matrix>> = vec![None; g.order()];
    image[g.identity()] = Some(Matrix::identity(e.ctx(), e.rank()));
    let mut queue = VecDeque::from([g.identity()]);
    let mut factors = true;
    while let Some(h) = queue.pop_front() {
        let current = image[h].clone().unwrap();
        for (k, _) in gens.iter().enumerate() {
            let next = g.mul(h, gd.generator_elements[k]);
            let value = &current * &e.images()[k];
            match &image[next] {
                Some(existing) => factors &= *existing == value,
                None => {
                    image[next] = Some(value);
                    queue.push_back(next);
                }
            }
        }
    }

    let mut violations = Vec::new();
    if !kernel_side_agrees {
        violations.push("pullback monodromy differs from the images of the subgroup generators".to_string());
    }
    if factors != pullback_trivial {
        violations.push(format!(
            "factors through the group: {factors}, but pullback trivial: {pullback_trivial}"
        ));
    }
    Ok(ExactSequenceReport {
        group_order: g.order(),
        subgroup_words: words,
        pullback_images,
        word_images,
        kernel_side_agrees,
        pullback_trivial,
        factors_through_group: factors,
        violations,
    })
}

/// Basis of the flat sections of the pulled-back bundle: vectors `s_y` at
/// every total vertex with `s_src = label(e) s_dst` along every lift of
/// every edge, solved as one linear system. Each basis vector stacks the
/// `s_y` in total vertex order.
pub fn flat_sections(e: &LocalSystem, c: &Covering) -> Result<Vec<Vec<Value>>> {
    check_base(e, c)?;
    let ctx = e.ctx();
    let r = e.rank();
    let total = c.total();
    let base = to_cocycle(e);
    let cols = total.num_vertices() * r;
    let rows = total.num_edges() * r;
    let mut m = Matrix::zeros(ctx, rows, cols);
    for (t, edge) in total.edges().iter().enumerate() {
        let label = base.label(c.project_edge(t).0);
        for a in 0..r {
            let row = t * r + a;
            m.set(row, edge.src * r + a, ctx.one());
            for b in 0..r {
                let at = edge.dst * r + b;
                let v = ctx.sub(m.get(row, at), label.get(a, b));
                m.set(row, at, v);
            }
        }
    }
    Ok(m.kernel())
}

/// A finite-level etale path from `x` to itself: the group element acting
/// on the fiber over `x` by right multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EtalePathLevel {
    pub vertex: usize,
    pub element: usize,
}

fn evaluation(sections: &[Vec<Value>], y: usize, r: usize, ctx: &crate::exactfield::FieldCtx) -> Matrix {
    Matrix::from_fn(ctx, r, sections.len(), |a, k| sections[k][y * r + a].clone())
}

/// Transport `E_x -> E_x` along an etale path: evaluation of the flat
/// sections at the image of the lift `y1 = (x, lift)` composed with the
/// inverse of evaluation at `y1`.
pub fn parallel_transport(e: &LocalSystem, c: &Covering, gamma: &EtalePathLevel, lift: usize) -> Result<Matrix> {
    check_base(e, c)?;
    c.galois()?;
    if !trivializes(e, c)? {
        return Err(Error::NotTrivializedBy);
    }
    let sections = flat_sections(e, c)?;
    transport_with_sections(e, c, &sections, gamma, lift)
}

/// [`parallel_transport`] with precomputed flat sections.
pub fn transport_with_sections(
    e: &LocalSystem,
    c: &Covering,
    sections: &[Vec<Value>],
    gamma: &EtalePathLevel,
    lift: usize,
) -> Result<Matrix> {
    if lift >= c.degree() {
        return Err(Error::InvalidArgument(format!("fiber index {lift} out of range")));
    }
    let r = e.rank();
    let target = c.etale_fiber_map(gamma.vertex, gamma.element)?[lift];
    let y1 = c.total_vertex(gamma.vertex, lift);
    let y2 = c.total_vertex(gamma.vertex, target);
    let ev1 = evaluation(sections, y1, r, e.ctx());
    let ev2 = evaluation(sections, y2, r, e.ctx());
    let inv = ev1.inverse().ok_or(Error::NotTrivializedBy)?;
    Ok(&ev2 * &inv)
}

/// Number of distinct bijections of the fiber over `x` induced by the
/// finite-level etale paths; equals the order of the group for a Galois
/// covering.
pub fn etale_image_size(c: &Covering, x: usize) -> Result<usize> {
    let gd = c.galois()?;
    let mut seen = HashSet::new();
    for g in 0..gd.group.order() {
        seen.insert(c.etale_fiber_map(x, g)?);
    }
    Ok(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basespace::builtin;
    use crate::coverings::FiniteGroup;
    use crate::exactfield::FieldCtx;
    use crate::localsystem::{iso_test, IsoResult};

    fn space(name: &str) -> Arc<TwoComplex> {
        Arc::new(builtin(name).unwrap())
    }

    fn cyclic_cover(base: &Arc<TwoComplex>, n: usize, rho: &[usize]) -> Covering {
        Covering::from_group(base.clone(), Arc::new(FiniteGroup::cyclic(n).unwrap()), rho).unwrap()
    }

    fn c1_system(m: Matrix, c1: &Arc<TwoComplex>) -> LocalSystem {
        let ctx = m.ctx().clone();
        LocalSystem::from_named(c1.clone(), &ctx, m.rows(), &[("a", m)]).unwrap()
    }

    #[test]
    fn subgroup_generator_examples() {
        let c1 = space("C1");
        let c = cyclic_cover(&c1, 2, &[1]);
        let words = subgroup_generators(&c, 0).unwrap();
        assert_eq!(words.len(), 1);
        assert_eq!(c1.format_word(&words[0]), "a a");

        let w2 = space("W2");
        let s3 = Covering::from_action(w2.clone(), 3, &[vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        assert_eq!(subgroup_generators(&s3, 0).unwrap().len(), 4);

        let one = Covering::from_action(w2.clone(), 1, &[vec![0], vec![0]]).unwrap();
        let words = subgroup_generators(&one, 0).unwrap();
        let names: Vec<String> = words.iter().map(|w| w2.format_word(w)).collect();
        assert_eq!(names, ["a", "b"]);

        let disconnected = cyclic_cover(&c1, 2, &[0]);
        assert_eq!(subgroup_generators(&disconnected, 0), Err(Error::Disconnected));
    }

    #[test]
    fn pullback_examples() {
        let c1 = space("C1");
        let q = FieldCtx::rationals();
        let m = Matrix::from_i64(&q, &[&[2, 1], &[1, 1]]);
        let e = c1_system(m.clone(), &c1);
        let c = cyclic_cover(&c1, 3, &[1]);
        let p = pullback(&e, &c, 0).unwrap();
        assert_eq!(p.rank(), 2);
        assert_eq!(p.images(), &[m.pow(3)]);
        // path-lifting oracle: lift a^3 from fiber 0, it closes up
        let lifted = c.lift_path(&c1.parse_word("a a a").unwrap(), 0);
        assert!(c.total().is_closed_path(&lifted));
        assert!(pullback(&LocalSystem::trivial(c1.clone(), &q, 2).unwrap(), &c, 0).unwrap().is_trivial());
        let one = cyclic_cover(&c1, 1, &[0]);
        assert_eq!(pullback(&e, &one, 0).unwrap().images(), e.images());
    }

    #[test]
    fn pushforward_examples() {
        let c1 = space("C1");
        let q = FieldCtx::rationals();
        let c = cyclic_cover(&c1, 2, &[1]);
        let total = c.total().clone();
        let cval = q.from_i64(5);
        let f = LocalSystem::from_named(total.clone(), &q, 1, &[("a.1", Matrix::from_values(&q, 1, 1, vec![cval]))])
            .unwrap();
        let e = pushforward(&f, &c).unwrap();
        let ours = Matrix::from_i64(&q, &[&[0, 1], &[5, 0]]);
        assert_eq!(e.images(), std::slice::from_ref(&ours));
        assert_eq!(ours.pow(2), Matrix::from_i64(&q, &[&[5, 0], &[0, 5]]));
        // the other block convention is the same system up to isomorphism
        let other = c1_system(Matrix::from_i64(&q, &[&[0, 5], &[1, 0]]), &c1);
        assert!(matches!(iso_test(&e, &other, 64, 0).unwrap(), IsoResult::Isomorphic(_)));

        let triv = LocalSystem::trivial(total, &q, 1).unwrap();
        assert_eq!(pushforward(&triv, &c).unwrap().images(), &[Matrix::from_i64(&q, &[&[0, 1], &[1, 0]])]);

        let one = cyclic_cover(&c1, 1, &[0]);
        let m = Matrix::from_i64(&q, &[&[3, 1], &[0, 1]]);
        let f = LocalSystem::from_named(one.total().clone(), &q, 2, &[("a.0", m.clone())]).unwrap();
        assert_eq!(pushforward(&f, &one).unwrap().images(), &[m]);
    }

    #[test]
    fn trivializes_examples() {
        let c1 = space("C1");
        let q = FieldCtx::rationals();
        let e = c1_system(Matrix::from_i64(&q, &[&[0, -1], &[1, 0]]), &c1);
        assert!(trivializes(&e, &cyclic_cover(&c1, 4, &[1])).unwrap());
        assert!(!trivializes(&e, &cyclic_cover(&c1, 2, &[1])).unwrap());
        let t = LocalSystem::trivial(c1.clone(), &q, 3).unwrap();
        assert!(trivializes(&t, &cyclic_cover(&c1, 5, &[2])).unwrap());
    }

    #[test]
    fn exact_sequence_examples() {
        let c1 = space("C1");
        let f5 = FieldCtx::prime(5).unwrap();
        let e = c1_system(Matrix::from_i64(&f5, &[&[2]]), &c1);
        let r4 = exact_sequence_report(&e, &cyclic_cover(&c1, 4, &[1])).unwrap();
        assert!(r4.passes() && r4.factors_through_group && r4.pullback_trivial);
        let r2 = exact_sequence_report(&e, &cyclic_cover(&c1, 2, &[1])).unwrap();
        assert!(r2.passes() && !r2.factors_through_group);
        assert_eq!(r2.pullback_images, vec![Matrix::from_i64(&f5, &[&[4]])]);
        let t = LocalSystem::trivial(c1.clone(), &f5, 2).unwrap();
        assert!(exact_sequence_report(&t, &cyclic_cover(&c1, 3, &[1])).unwrap().passes());
        assert!(matches!(exact_sequence_report(&e, &cyclic_cover(&c1, 4, &[2])), Err(Error::NotGalois(_))));
    }

    #[test]
    fn transport_of_regular_representation() {
        let c1 = space("C1");
        let q = FieldCtx::rationals();
        let c = cyclic_cover(&c1, 3, &[1]);
        let a = pushforward(&LocalSystem::trivial(c.total().clone(), &q, 1).unwrap(), &c).unwrap();
        let t1 = parallel_transport(&a, &c, &EtalePathLevel { vertex: 0, element: 1 }, 0).unwrap();
        // e_k goes to e_{k+1}
        let cycle = Matrix::from_i64(&q, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(t1, cycle);
        let t0 = parallel_transport(&a, &c, &EtalePathLevel { vertex: 0, element: 0 }, 0).unwrap();
        assert!(t0.is_identity());
        let t2 = parallel_transport(&a, &c, &EtalePathLevel { vertex: 0, element: 2 }, 0).unwrap();
        assert_eq!(t2, t1.pow(2));
        // oracle: for a loop w with rho(w) = g, transport is rep(w)^-1
        let w = c1.parse_word("a").unwrap();
        assert_eq!(t1, a.eval_word(&w).inverse().unwrap());
    }

    #[test]
    fn transport_is_multiplicative_and_lift_independent() {
        let w2 = space("W2");
        let f5 = FieldCtx::prime(5).unwrap();
        let (s3, elems, gens) = FiniteGroup::from_permutations(3, &[vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        let c = Covering::from_group(w2.clone(), Arc::new(s3.clone()), &gens).unwrap();
        // the permutation representation of S3 factors through the cover
        let perm_matrix = |p: &[usize]| Matrix::from_fn(&f5, 3, 3, |i, j| if p[i] == j { f5.one() } else { f5.zero() });
        let images = gens.iter().map(|&g| perm_matrix(&elems[g])).collect();
        let e = LocalSystem::from_generator_images(w2, &f5, 3, images).unwrap();
        assert!(trivializes(&e, &c).unwrap());
        let sections = flat_sections(&e, &c).unwrap();
        for x in 0..c.base().num_vertices() {
            let rho = |g: usize, lift: usize| {
                transport_with_sections(&e, &c, &sections, &EtalePathLevel { vertex: x, element: g }, lift).unwrap()
            };
            for g in 0..6 {
                let first = rho(g, 0);
                for lift in 1..6 {
                    assert_eq!(rho(g, lift), first);
                }
                for h in 0..6 {
                    assert_eq!(rho(s3.mul(g, h), 0), &rho(h, 0) * &rho(g, 0));
                }
            }
        }
    }

    #[test]
    fn transport_requires_trivialization() {
        let c1 = space("C1");
        let q = FieldCtx::rationals();
        let e = c1_system(Matrix::from_i64(&q, &[&[0, -1], &[1, 0]]), &c1);
        let c = cyclic_cover(&c1, 2, &[1]);
        assert_eq!(parallel_transport(&e, &c, &EtalePathLevel { vertex: 0, element: 1 }, 0), Err(Error::NotTrivializedBy));
    }

    #[test]
    fn etale_image_sizes() {
        let c1 = space("C1");
        assert_eq!(etale_image_size(&cyclic_cover(&c1, 3, &[1]), 0).unwrap(), 3);
        assert_eq!(etale_image_size(&cyclic_cover(&c1, 2, &[1]), 0).unwrap(), 2);
        assert_eq!(etale_image_size(&cyclic_cover(&c1, 1, &[0]), 0).unwrap(), 1);
        let tri = space("triangle");
        let c = cyclic_cover(&tri, 4, &[1]);
        for x in 0..3 {
            assert_eq!(etale_image_size(&c, x).unwrap(), 4);
        }
    }

    #[test]
    fn pullback_of_pushforward_splits_over_the_group() {
        let w2 = space("W2");
        let f3 = FieldCtx::prime(3).unwrap();
        let (s3, _, gens) = FiniteGroup::from_permutations(3, &[vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        let c = Covering::from_group(w2, Arc::new(s3), &gens).unwrap();
        let total = c.total().clone();
        let p = Presentation::new(&total).unwrap();
        let rep: Vec<Matrix> = (0..p.num_generators())
            .map(|k| Matrix::from_i64(&f3, &[&[1 + (k as i64 % 2)]]))
            .collect();
        let f = LocalSystem::from_generator_images(total.clone(), &f3, 1, rep).unwrap();
        let e = pushforward(&f, &c).unwrap();
        let lhs = pullback(&e, &c, total.basepoint()).unwrap();
        let fc = to_cocycle(&f);
        let mut rhs: Option<LocalSystem> = None;
        for g in 0..6 {
            let emap = c.deck_edge_map(g).unwrap();
            let labels = (0..total.num_edges()).map(|t| fc.label(emap[t]).clone()).collect();
            let moved = CechCocycle::new(total.clone(), &f3, 1, labels).unwrap().to_local_system().unwrap();
            rhs = Some(match rhs {
                None => moved,
                Some(acc) => acc.direct_sum(&moved).unwrap(),
            });
        }
        let rhs = rhs.unwrap();
        assert!(matches!(iso_test(&lhs, &rhs, 256, 0).unwrap(), IsoResult::Isomorphic(_)));
    }
}
