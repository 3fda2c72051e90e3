//! Acceptance suite: nine criteria, each checked at exact equality. Prints
//! one PASS/FAIL line per criterion and exits nonzero if any fails.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;
use std::time::{Duration, Instant};

use monodromy::basespace::{builtin, TwoComplex};
use monodromy::cohomology::{h1_constant, h1_glr_enumerate, hom_to_additive};
use monodromy::coverings::{
    etale_image_size, exact_sequence_report, flat_sections, parallel_transport, transport_with_sections, pullback, trivializes, Covering,
    EtalePathLevel, FiniteGroup,
};
use monodromy::descent::{
    etale_quotients, field_descent, finite_quotient_survival, mod_p_pipeline, tower_make, Trivialization,
};
use monodromy::exactfield::{denominator_primes, Embedding, FieldCtx, Value};
use monodromy::localsystem::{CechCocycle, LocalSystem};
use monodromy::matrixgroup::{group_closure, jordan_multiplicative};
use monodromy::sample::{random_invertible, random_value};
use monodromy::{Error, Matrix};
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 solenoid etale quotients", solenoid_quotients, Some(Duration::from_secs(5))),
        ("2 exact sequence on random Galois covers", exact_sequence, Some(Duration::from_secs(30))),
        ("3 parallel transport on the cover corpus", transport_corpus, None),
        ("4 field descent roundtrips", descent_roundtrips, None),
        ("5 mod-p pipeline", mod_p, None),
        ("6 multiplicative Jordan decomposition", jordan, None),
        ("7 additive characters vs constant H^1", cohomology_comparison, None),
        ("8 rank-1 and GL2(F2) class counts", class_counts, None),
        ("9 covering decomposition", decomposition, None),
    ];
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("criterion {name}: PASS ({detail}; {elapsed:.2?})"),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({why}; {elapsed:.2?})");
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 9 criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}

fn space(name: &str) -> Arc<TwoComplex> {
    Arc::new(builtin(name).unwrap())
}

fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| (2..p).all(|d| p % d != 0)).collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

// ---------------------------------------------------------------- 1

fn solenoid_quotients() -> Outcome {
    let full = tower_make(&primes_up_to(20), 20).map_err(|e| e.to_string())?;
    let rows = etale_quotients(&full, 20);
    ensure!(rows.len() == 20, "expected 20 rows, got {}", rows.len());
    for &(m, order) in &rows {
        ensure!(m == 1 || order == 1, "full tower: Z/{m} survives with order {order}");
    }

    let dyadic = tower_make(&[2], 256).map_err(|e| e.to_string())?;
    for m in 1..=200u64 {
        let got = finite_quotient_survival(&dyadic, m).map_err(|e| e.to_string())?;
        let mut odd = m;
        while odd % 2 == 0 {
            odd /= 2;
        }
        ensure!(got == odd, "dyadic survival({m}) = {got}, odd part {odd}");
        ensure!(got == m / gcd(m, 1 << 8), "dyadic survival({m}) disagrees with m / gcd(m, 2^8)");
        // the images lambda Z/m of the levels, intersected element by element
        let mut alive: BTreeSet<u64> = (0..m).collect();
        for &lambda in dyadic.indices() {
            let image: BTreeSet<u64> = (0..m).map(|x| lambda * x % m).collect();
            alive = alive.intersection(&image).copied().collect();
        }
        ensure!(alive.len() as u64 == got, "dyadic survival({m}): brute-force intersection has {}", alive.len());
    }
    Ok("full tower kills Z/m for 2 <= m <= 20; dyadic survival is the odd part for m <= 200".into())
}

// ---------------------------------------------------------------- 2

/// A homomorphism of a group generated by permutations into matrices.
fn permutation_matrix(ctx: &FieldCtx, p: &[usize]) -> Matrix {
    Matrix::from_fn(ctx, p.len(), p.len(), |i, j| if p[i] == j { ctx.one() } else { ctx.zero() })
}

fn conjugate(m: &Matrix, t: &Matrix) -> Matrix {
    &(t * m) * &t.inverse().unwrap()
}

fn element_order(ctx: &FieldCtx, x: &Value) -> u64 {
    let mut k = 1;
    let mut y = x.clone();
    while !ctx.is_one(&y) {
        y = ctx.mul(&y, x);
        k += 1;
    }
    k
}

/// Does `rep` factor through `rho`? Decided by closing the pairs
/// `(regular(rho(s)), rep(s))`: the image has order `|G|` exactly when the
/// projection to `G` is injective.
fn factors_oracle(group: &FiniteGroup, rho: &[usize], rep: &[Matrix]) -> bool {
    let ctx = rep[0].ctx().clone();
    let gens: Vec<Matrix> = rho
        .iter()
        .zip(rep)
        .map(|(&g, m)| Matrix::block_diag(&ctx, &[&permutation_matrix(&ctx, &group.right_regular(g)), m]))
        .collect();
    let dim = group.order() + rep[0].rows();
    match group_closure(&ctx, dim, &gens, group.order()) {
        Ok(closure) => closure.order() == group.order(),
        Err(Error::CapExceeded(_)) => false,
        Err(e) => panic!("closure failed: {e}"),
    }
}

struct RandomCase {
    cover: Covering,
    group: Arc<FiniteGroup>,
    rho: Vec<usize>,
    system: LocalSystem,
}

fn random_galois_case(rng: &mut ChaCha8Rng) -> RandomCase {
    let p = *[2u64, 3, 5, 7].choose(rng).unwrap();
    let ctx = FieldCtx::prime(p).unwrap();
    let factoring = rng.gen_bool(0.5);
    if rng.gen_bool(0.4) {
        // cyclic covers of the circle
        let c1 = space("C1");
        let (n, image) = if factoring {
            let x = loop {
                let x = random_value(&ctx, rng, 0);
                if !ctx.is_zero(&x) {
                    break x;
                }
            };
            let o = element_order(&ctx, &x) as usize;
            (o * rng.gen_range(1..=24 / o), x)
        } else {
            (rng.gen_range(1..=24), random_value(&ctx, rng, 0))
        };
        let image = if ctx.is_zero(&image) { ctx.one() } else { image };
        let k = loop {
            let k = rng.gen_range(0..n);
            if gcd(k as u64, n as u64) == 1 {
                break k;
            }
        };
        let group = Arc::new(FiniteGroup::cyclic(n).unwrap());
        let rank = rng.gen_range(1..=3);
        let t = random_invertible(&ctx, rank, rng, 0);
        // a scalar of order dividing n when factoring, pushed through rho(a) = k
        let scalar = ctx.pow_u(&image, element_order_inverse(k, n) as u128);
        let m = conjugate(&Matrix::identity(&ctx, rank).scale(&scalar), &t);
        let rep = if factoring { m } else { random_invertible(&ctx, rank, rng, 0) };
        let system = LocalSystem::from_generator_images(c1.clone(), &ctx, rank, vec![rep]).unwrap();
        let cover = Covering::from_group(c1, group.clone(), &[k]).unwrap();
        return RandomCase { cover, group, rho: vec![k], system };
    }
    // permutation groups of degree <= 4 on the wedge of two circles
    let w2 = space("W2");
    let degree = rng.gen_range(2..=4);
    let gens: Vec<Vec<usize>> = (0..2)
        .map(|_| {
            let mut p: Vec<usize> = (0..degree).collect();
            p.shuffle(rng);
            p
        })
        .collect();
    let (g, _, idx) = FiniteGroup::from_permutations(degree, &gens).unwrap();
    let group = Arc::new(g);
    let rep: Vec<Matrix> = if factoring {
        let t = random_invertible(&ctx, degree, rng, 0);
        gens.iter().map(|p| conjugate(&permutation_matrix(&ctx, p), &t)).collect()
    } else {
        let rank = rng.gen_range(1..=3);
        (0..2).map(|_| random_invertible(&ctx, rank, rng, 0)).collect()
    };
    let rank = rep[0].rows();
    let system = LocalSystem::from_generator_images(w2.clone(), &ctx, rank, rep).unwrap();
    let cover = Covering::from_group(w2, group.clone(), &idx).unwrap();
    RandomCase { cover, group, rho: idx, system }
}

/// `j` with `j * k = 1 mod n`, so that `x^j` sent along `a -> k` gives `a -> x`.
fn element_order_inverse(k: usize, n: usize) -> usize {
    (0..n.max(1)).find(|&j| (j * k) % n == 1 % n).unwrap()
}

fn exact_sequence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut factoring = 0;
    for trial in 0..200 {
        let case = random_galois_case(&mut rng);
        ensure!(case.group.order() <= 24, "trial {trial}: group of order {}", case.group.order());
        let report = exact_sequence_report(&case.system, &case.cover).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure!(report.passes(), "trial {trial}: {:?}", report.violations);
        let oracle = factors_oracle(&case.group, &case.rho, case.system.images());
        ensure!(report.factors_through_group == oracle, "trial {trial}: factors {} vs oracle {oracle}", report.factors_through_group);
        let triv = trivializes(&case.system, &case.cover).map_err(|e| e.to_string())?;
        ensure!(triv == oracle, "trial {trial}: trivializes {triv} vs factors {oracle}");
        let y = case.cover.total().basepoint();
        let pulled = pullback(&case.system, &case.cover, y).map_err(|e| e.to_string())?;
        ensure!(pulled.images() == report.word_images.as_slice(), "trial {trial}: pullback monodromy differs from subgroup words");
        factoring += usize::from(oracle);
    }
    Ok(format!("200 pairs, {factoring} factoring through the deck group"))
}

// ---------------------------------------------------------------- 3

struct CorpusCover {
    name: String,
    cover: Covering,
    bundles: Vec<LocalSystem>,
}

fn root_of_unity(ctx: &FieldCtx, n: u64) -> Value {
    let q = ctx.order().unwrap() as u64;
    (1..q).map(|i| ctx.element_at(i as u128)).find(|x| element_order(ctx, x) == n).unwrap()
}

fn corpus() -> Vec<CorpusCover> {
    let mut out = Vec::new();
    // cyclic covers of the circle, with sums of characters over F_p, n | p - 1
    let c1 = space("C1");
    for n in 1..=12u64 {
        let p = (n + 1..).step_by(1).find(|&p| primes_up_to(p).last() == Some(&p) && (p - 1) % n == 0).unwrap();
        let ctx = FieldCtx::prime(p).unwrap();
        let zeta = root_of_unity(&ctx, n);
        let group = Arc::new(FiniteGroup::cyclic(n as usize).unwrap());
        let cover = Covering::from_group(c1.clone(), group, &[1 % n as usize]).unwrap();
        let mut bundles = Vec::new();
        let chars: Vec<Value> = (0..n).map(|k| ctx.pow_u(&zeta, k as u128)).collect();
        for rank in 1..=4usize {
            // characters k, k+1, ... wrapping, for every starting k
            for k in 0..n as usize {
                let diag: Vec<Value> = (0..rank).map(|i| chars[(k + i * (k + 1)) % n as usize].clone()).collect();
                let m = Matrix::diag(&ctx, &diag);
                bundles.push(LocalSystem::from_generator_images(c1.clone(), &ctx, rank, vec![m]).unwrap());
            }
        }
        out.push(CorpusCover { name: format!("Z/{n} over C1"), cover, bundles });
    }
    // permutation groups on the wedge, the torus and the triangle graph
    let perm_groups: [(&str, &str, usize, Vec<Vec<usize>>); 8] = [
        ("S3 over W2", "W2", 3, vec![vec![1, 2, 0], vec![1, 0, 2]]),
        ("D4 over W2", "W2", 4, vec![vec![1, 2, 3, 0], vec![0, 3, 2, 1]]),
        ("A4 over W2", "W2", 4, vec![vec![1, 2, 0, 3], vec![1, 0, 3, 2]]),
        ("Klein four over W2", "W2", 4, vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]]),
        ("Z/4 over W2", "W2", 4, vec![vec![1, 2, 3, 0], vec![2, 3, 0, 1]]),
        ("Klein four over T2rel", "T2rel", 4, vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]]),
        ("Z/4 x Z/1 over T2rel", "T2rel", 4, vec![vec![1, 2, 3, 0], vec![0, 1, 2, 3]]),
        ("Z/3 over the triangle", "triangle", 3, vec![vec![1, 2, 0]]),
    ];
    for (name, base, degree, gens) in perm_groups {
        let x = space(base);
        let (g, _, idx) = FiniteGroup::from_permutations(degree, &gens).unwrap();
        let order = g.order();
        let cover = Covering::from_group(x.clone(), Arc::new(g), &idx).unwrap();
        let mut bundles = Vec::new();
        for ctx in [FieldCtx::rationals(), FieldCtx::prime(5).unwrap(), FieldCtx::prime(2).unwrap()] {
            let perm: Vec<Matrix> = gens.iter().map(|p| permutation_matrix(&ctx, p)).collect();
            let sign: Vec<Matrix> = perm.iter().map(|m| Matrix::from_values(&ctx, 1, 1, vec![m.det()])).collect();
            let t = Matrix::from_fn(&ctx, degree, degree, |i, j| ctx.from_i64(match i.cmp(&j) {
                std::cmp::Ordering::Equal => 1,
                std::cmp::Ordering::Less => (i + j + 1) as i64,
                std::cmp::Ordering::Greater => 0,
            }));
            let twisted: Vec<Matrix> = perm.iter().map(|m| conjugate(m, &t)).collect();
            let trivial: Vec<Matrix> = perm.iter().map(|_| Matrix::identity(&ctx, 2)).collect();
            let mut reps = vec![perm.clone(), sign.clone(), twisted, trivial];
            if degree == 3 {
                let sums = perm.iter().zip(&sign).map(|(a, b)| Matrix::block_diag(&ctx, &[a, b])).collect();
                reps.push(sums);
            }
            for rep in reps {
                bundles.push(LocalSystem::from_generator_images(x.clone(), &ctx, rep[0].rows(), rep).unwrap());
            }
        }
        out.push(CorpusCover { name: format!("{name} (|G| = {order})"), cover, bundles });
    }
    out
}

fn deck_words(c: &Covering) -> Vec<Vec<monodromy::basespace::Step>> {
    // a based loop for every deck element, from a BFS on the Cayley graph
    let gd = c.galois().unwrap();
    let g = &gd.group;
    let gens = c.base_presentation().generators().to_vec();
    let p = c.base_presentation().clone();
    let x = c.base();
    let mut words: Vec<Option<Vec<monodromy::basespace::Step>>> = vec![None; g.order()];
    words[0] = Some(Vec::new());
    let mut queue = VecDeque::from([0usize]);
    while let Some(h) = queue.pop_front() {
        for (k, &edge) in gens.iter().enumerate() {
            let next = g.mul(h, gd.generator_elements[k]);
            if words[next].is_none() {
                let e = x.edge(edge);
                let mut w = words[h].clone().unwrap();
                w.extend(p.tree_path(e.src));
                w.push(monodromy::basespace::Step::fwd(edge));
                w.extend(p.tree_path(e.dst).iter().rev().map(|s| s.reversed()));
                words[next] = Some(w);
                queue.push_back(next);
            }
        }
    }
    words.into_iter().map(Option::unwrap).collect()
}

fn transport_corpus() -> Outcome {
    let mut checked = 0usize;
    let mut products = 0usize;
    for entry in corpus() {
        let c = &entry.cover;
        let gd = c.galois().map_err(|e| format!("{}: {e}", entry.name))?;
        let g = gd.group.clone();
        ensure!(g.order() <= 12, "{}: group too large", entry.name);
        for x in 0..c.base().num_vertices() {
            let size = etale_image_size(c, x).map_err(|e| e.to_string())?;
            ensure!(size == g.order(), "{}: etale image size {size} at vertex {x}", entry.name);
        }
        let words = deck_words(c);
        for e in &entry.bundles {
            ensure!(trivializes(e, c).unwrap(), "{}: corpus bundle not trivialized:\n{}", entry.name, e.describe());
            let sections = flat_sections(e, c).map_err(|err| err.to_string())?;
            ensure!(sections.len() == e.rank(), "{}: {} flat sections for rank {}", entry.name, sections.len(), e.rank());
            for x in 0..c.base().num_vertices() {
                let mut rho = Vec::with_capacity(g.order());
                for h in 0..g.order() {
                    let path = EtalePathLevel { vertex: x, element: h };
                    let first = transport_with_sections(e, c, &sections, &path, 0).map_err(|err| format!("{}: {err}", entry.name))?;
                    for lift in 1..c.degree() {
                        let other = transport_with_sections(e, c, &sections, &path, lift).map_err(|err| err.to_string())?;
                        ensure!(other == first, "{}: transport of {h} depends on the lift", entry.name);
                    }
                    rho.push(first);
                }
                let last = EtalePathLevel { vertex: x, element: g.order() - 1 };
                let direct = parallel_transport(e, c, &last, c.degree() - 1).map_err(|err| err.to_string())?;
                ensure!(direct == rho[g.order() - 1], "{}: parallel_transport disagrees with precomputed sections", entry.name);
                ensure!(rho[0].is_identity(), "{}: identity element transports nontrivially", entry.name);
                for a in 0..g.order() {
                    for b in 0..g.order() {
                        // right action: transporting by ab is b's transport after a's
                        ensure!(rho[g.mul(a, b)] == &rho[b] * &rho[a], "{}: transport not multiplicative", entry.name);
                        products += 1;
                    }
                }
                if x == c.base().basepoint() {
                    for (h, w) in words.iter().enumerate() {
                        let expected = e.eval_path(w).inverse().unwrap();
                        ensure!(rho[h] == expected, "{}: transport of {h} is not rep(w)^-1", entry.name);
                    }
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} bundles, {products} products checked"))
}

// ---------------------------------------------------------------- 4

fn random_connected_complex(rng: &mut ChaCha8Rng) -> Arc<TwoComplex> {
    let n = rng.gen_range(1..=5);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 1..n {
        edges.push((format!("t{i}"), names[rng.gen_range(0..i)].clone(), names[i].clone()));
    }
    for k in 0..rng.gen_range(0..=3) {
        edges.push((format!("x{k}"), names.choose(rng).unwrap().clone(), names.choose(rng).unwrap().clone()));
    }
    let v: Vec<&str> = names.iter().map(String::as_str).collect();
    let e: Vec<(&str, &str, &str)> = edges.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
    Arc::new(TwoComplex::new(&v, &e, &[], "v0").unwrap())
}

fn descent_roundtrips() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let pairs = [
        (FieldCtx::prime(2).unwrap(), FieldCtx::parse("F(2, x^2+x+1)").unwrap()),
        (FieldCtx::prime(3).unwrap(), FieldCtx::parse("F(3, x^2+1)").unwrap()),
    ];
    let mut done = 0;
    for (k, l) in &pairs {
        let emb = Embedding::new(k, l).map_err(|e| e.to_string())?;
        for trial in 0..100 {
            let x = random_connected_complex(&mut rng);
            let r = rng.gen_range(1..=3);
            let h: Vec<Matrix> = (0..x.num_vertices()).map(|_| random_invertible(k, r, &mut rng, 0)).collect();
            let labels = x
                .edges()
                .iter()
                .map(|e| &h[e.src].inverse().unwrap() * &h[e.dst])
                .collect();
            let cocycle = CechCocycle::new(x.clone(), k, r, labels).map_err(|e| e.to_string())?;
            let a = random_invertible(l, r, &mut rng, 0);
            let lifted: Vec<Matrix> = h.iter().map(|m| &a * &emb.embed_matrix(m).unwrap()).collect();
            let over_l = cocycle.map_field(l, |m| emb.embed_matrix(m)).map_err(|e| e.to_string())?;
            let t = Trivialization::new(over_l, lifted).map_err(|e| format!("{k} in {l}, trial {trial}: {e}"))?;
            let down = match field_descent(&cocycle, &t, &emb) {
                Ok(d) => d,
                Err(Error::DescentFailure(why)) => return Err(format!("DescentFailure raised: {why}")),
                Err(e) => return Err(e.to_string()),
            };
            ensure!(down.matrices().iter().all(|m| m.ctx() == k), "descended matrices leave {k}");
            for (i, edge) in x.edges().iter().enumerate() {
                let lhs = &down.matrix(edge.src).inverse().unwrap() * down.matrix(edge.dst);
                ensure!(&lhs == cocycle.label(i), "{k} in {l}, trial {trial}: edge {} fails", edge.id);
            }
            done += 1;
        }
    }
    Ok(format!("{done} roundtrips"))
}

// ---------------------------------------------------------------- 5

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(rng.gen_range(-4i64..=4).into(), rng.gen_range(1i64..=3).into())
}

fn mod_p() -> Outcome {
    let q = FieldCtx::rationals();
    let c1 = space("C1");
    let third = Matrix::from_fn(&q, 2, 2, |i, j| match (i, j) {
        (0, 1) => q.from_rational(&BigRational::new(1.into(), 3.into())).unwrap(),
        (0, 0) | (1, 1) => q.one(),
        _ => q.zero(),
    });
    let e = LocalSystem::from_generator_images(c1.clone(), &q, 2, vec![third]).unwrap();
    let r = mod_p_pipeline(&e, 2, 10_000).map_err(|e| e.to_string())?;
    ensure!(r.group.order() == 2, "group order {} at p = 2", r.group.order());
    ensure!(r.cover.degree() == 2 && r.cover.is_connected() && r.cover.is_galois(), "not a connected Galois double cover");
    ensure!(trivializes(&r.reduced, &r.cover).unwrap(), "double cover does not trivialize the reduction");
    let f2 = FieldCtx::prime(2).unwrap();
    ensure!(r.reduced.images()[0] == Matrix::from_i64(&f2, &[&[1, 1], &[0, 1]]), "wrong reduction");
    match mod_p_pipeline(&e, 3, 10_000) {
        Err(Error::PrimeDividesDenominatorOrDet(3)) => {}
        other => return Err(format!("p = 3 gave {:?}", other.map(|r| r.group.order()))),
    }

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    while done < 50 {
        let base = if rng.gen_bool(0.5) { space("C1") } else { space("W2") };
        let rank = rng.gen_range(1..=3);
        let gens: Vec<Matrix> = (0..base.num_edges())
            .map(|_| Matrix::from_fn(&q, rank, rank, |_, _| q.from_rational(&random_rational(&mut rng)).unwrap()))
            .collect();
        if gens.iter().any(|m| !m.is_invertible()) {
            continue;
        }
        let bad = denominator_primes(&gens).unwrap();
        let choices: Vec<u64> = if rank == 3 { vec![2] } else { vec![2, 3, 5, 7] };
        let Some(&p) = choices.iter().filter(|p| !bad.contains(p)).collect::<Vec<_>>().choose(&mut rng).copied() else {
            continue;
        };
        let e = LocalSystem::from_generator_images(base, &q, rank, gens).unwrap();
        let r = mod_p_pipeline(&e, p, 10_000).map_err(|err| format!("p = {p}: {err}\n{}", e.describe()))?;
        ensure!(r.cover.degree() == r.group.order(), "cover degree differs from the group order");
        ensure!(trivializes(&r.reduced, &r.cover).unwrap(), "cover does not trivialize:\n{}", r.reduced.describe());
        let y = r.cover.total().basepoint();
        ensure!(pullback(&r.reduced, &r.cover, y).unwrap().is_trivial(), "pullback is not trivial");
        done += 1;
    }
    Ok("unipotent example, bad prime, 50 random bundles".into())
}

// ---------------------------------------------------------------- 6

fn jordan() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let fields = [FieldCtx::rationals(), FieldCtx::prime(2).unwrap(), FieldCtx::prime(3).unwrap(), FieldCtx::prime(7).unwrap()];
    for trial in 0..200 {
        let ctx = &fields[trial % fields.len()];
        let r = rng.gen_range(1..=5);
        // half generic, half conjugated block-triangular with repeated eigenvalues
        let m = if trial % 2 == 0 {
            random_invertible(ctx, r, &mut rng, 3)
        } else {
            let eig: Vec<Value> = (0..2).map(|_| loop {
                let v = random_value(ctx, &mut rng, 3);
                if !ctx.is_zero(&v) {
                    break v;
                }
            }).collect();
            let j = Matrix::from_fn(ctx, r, r, |i, k| {
                if i == k {
                    eig[i * 2 / r.max(1) % 2].clone()
                } else if k == i + 1 && rng.gen_bool(0.7) {
                    ctx.one()
                } else {
                    ctx.zero()
                }
            });
            conjugate(&j, &random_invertible(ctx, r, &mut rng, 2))
        };
        let d = jordan_multiplicative(&m).map_err(|e| format!("trial {trial}: {e}"))?;
        let (s, u) = (&d.semisimple, &d.unipotent);
        ensure!((s * u) == m, "trial {trial}: product");
        ensure!(s * u == u * s, "trial {trial}: commutation");
        let id = Matrix::identity(ctx, r);
        ensure!((u - &id).pow(r as u128).is_zero(), "trial {trial}: unipotency");
        ensure!(is_semisimple_oracle(s), "trial {trial}: minimal polynomial of the semisimple part is not squarefree");
        ensure!(s.minpoly().is_squarefree(), "trial {trial}: minpoly squarefree");
    }
    Ok("200 matrices".into())
}

/// Over Q: killed by `cp / gcd(cp, cp')`, the squarefree part of its
/// characteristic polynomial. Over F_q: fixed by the `q^L`-th power map with
/// `L = lcm(1..=r)`, which fixes exactly the matrices diagonalizable over
/// the extensions of degree at most `r`.
fn is_semisimple_oracle(s: &Matrix) -> bool {
    let ctx = s.ctx();
    match ctx.order() {
        None => {
            let cp = s.charpoly();
            let radical = cp.div_exact(&cp.gcd(&cp.derivative()).monic());
            s.eval_poly(&radical).is_zero()
        }
        Some(q) => {
            let l = (1..=s.rows() as u64).fold(1, |acc, k| acc / gcd(acc, k) * k);
            let mut t = s.clone();
            for _ in 0..l {
                t = t.pow(q);
            }
            &t == s
        }
    }
}

// ---------------------------------------------------------------- 7

fn cohomology_comparison() -> Outcome {
    let fields = ["Q", "F(2)", "F(3)", "F(5)"];
    // dimensions of H^1 known by hand: free groups by rank, the torus, the
    // projective plane in characteristic 2 only
    let expected: HashMap<(&str, &str), usize> = ["C1", "W2", "T2rel", "RP2rel", "triangle"]
        .iter()
        .flat_map(|&x| fields.iter().map(move |&f| ((x, f), match x {
            "C1" | "triangle" => 1,
            "W2" | "T2rel" => 2,
            _ => usize::from(f == "F(2)"),
        })))
        .collect();
    let mut equalities = 0;
    for ((x, f), want) in &expected {
        let ctx = FieldCtx::parse(f).unwrap();
        let space = builtin(x).unwrap();
        let h1 = h1_constant(&space, &ctx).dimension;
        let hom = hom_to_additive(&space, &ctx).map_err(|e| e.to_string())?.dimension;
        ensure!(h1 == hom, "{x} over {f}: H^1 {h1}, Hom {hom}");
        ensure!(h1 == *want, "{x} over {f}: dimension {h1}, expected {want}");
        equalities += 1;
    }
    Ok(format!("{equalities} equalities"))
}

// ---------------------------------------------------------------- 8

/// Conjugacy classes of GL2(F2) by hand: matrices as 4-bit words, orbits
/// under conjugation.
fn gl2_f2_classes() -> usize {
    type M = [[u8; 2]; 2];
    let mul = |a: M, b: M| -> M {
        let mut c = [[0u8; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                c[i][j] = (a[i][0] * b[0][j] + a[i][1] * b[1][j]) % 2;
            }
        }
        c
    };
    let all: Vec<M> = (0..16u8)
        .map(|b| [[b & 1, (b >> 1) & 1], [(b >> 2) & 1, (b >> 3) & 1]])
        .filter(|m| (m[0][0] * m[1][1] + m[0][1] * m[1][0]) % 2 == 1)
        .collect();
    let inverse = |m: M| *all.iter().find(|x| mul(m, **x) == [[1, 0], [0, 1]]).unwrap();
    let mut seen = BTreeSet::new();
    let mut classes = 0;
    for &m in &all {
        if seen.contains(&m) {
            continue;
        }
        classes += 1;
        for &t in &all {
            seen.insert(mul(mul(t, m), inverse(t)));
        }
    }
    classes
}

fn class_counts() -> Outcome {
    let c1 = builtin("C1").unwrap();
    for (spec, q) in [("F(2)", 2), ("F(3)", 3), ("F(2, x^2+x+1)", 4), ("F(5)", 5)] {
        let ctx = FieldCtx::parse(spec).unwrap();
        let n = h1_glr_enumerate(&c1, &ctx, 1, 1_000_000).map_err(|e| e.to_string())?.len();
        ensure!(n == q - 1, "C1 over F_{q}: {n} classes");
    }
    let oracle = gl2_f2_classes();
    let f2 = FieldCtx::prime(2).unwrap();
    let classes = h1_glr_enumerate(&c1, &f2, 2, 1_000_000).map_err(|e| e.to_string())?;
    ensure!(classes.len() == oracle, "GL2(F2): {} classes, oracle {oracle}", classes.len());
    let total: usize = classes.iter().map(|c| c.count).sum();
    ensure!(total == 6, "class sizes add up to {total}, not |GL2(F2)| = 6");
    Ok(format!("q - 1 for q in 2,3,4,5; GL2(F2) has {oracle} classes"))
}

// ---------------------------------------------------------------- 9

fn orbit_count(degree: usize, perms: &[Vec<usize>]) -> usize {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for perm in perms {
        for (i, &j) in perm.iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a] = b;
        }
    }
    (0..degree).filter(|&i| find(&mut parent, i) == i).count()
}

fn decomposition() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let bases = [space("C1"), space("W2"), space("triangle")];
    for trial in 0..100 {
        let base = bases.choose(&mut rng).unwrap().clone();
        let degree = rng.gen_range(1..=8);
        let gens = monodromy::basespace::Presentation::new(&base).unwrap().num_generators();
        let perms: Vec<Vec<usize>> = (0..gens)
            .map(|_| {
                let mut p: Vec<usize> = (0..degree).collect();
                p.shuffle(&mut rng);
                p
            })
            .collect();
        let c = Covering::from_action(base, degree, &perms).map_err(|e| e.to_string())?;
        let parts = c.decompose().map_err(|e| e.to_string())?;
        let sum: usize = parts.iter().map(Covering::degree).sum();
        ensure!(sum == degree, "trial {trial}: degrees add to {sum}, not {degree}");
        ensure!(parts.len() == orbit_count(degree, &perms), "trial {trial}: {} components", parts.len());
        for part in &parts {
            ensure!(part.validate().is_ok(), "trial {trial}: component fails validation");
            ensure!(part.is_connected(), "trial {trial}: component is disconnected");
        }
    }
    Ok("100 random actions".into())
}
