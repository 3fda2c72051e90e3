use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

use num_integer::Integer;

use crate::basespace::{builtin, TwoComplex};
use crate::coverings::{pullback, Covering, FiniteGroup};
use crate::error::{Error, Result};
use crate::exactfield::is_prime;
use crate::localsystem::{same_space, LocalSystem};
use crate::matrix::Matrix;
use crate::matrixgroup::{has_finite_order, jordan_multiplicative, matrix_root, RootResult};

/// The inverse system of circles indexed by the integers up to `depth`
/// whose prime factors lie in `primes`, ordered by divisibility. Every level
/// is the one-vertex, one-loop complex; the transition from level `lambda`
/// to level `mu` is the connected cyclic covering of degree `lambda / mu`.
#[derive(Clone, Debug)]
pub struct Tower {
    primes: Vec<u64>,
    depth: u64,
    indices: Vec<u64>,
    level: Arc<TwoComplex>,
}

/// Builds the tower for the given primes, keeping indices `<= depth`.
pub fn tower_make(primes: &[u64], depth: u64) -> Result<Tower> {
    if depth == 0 {
        return Err(Error::BadDepth(depth));
    }
    let primes: Vec<u64> = primes.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::NonPrime(p));
    }
    let mut indices = BTreeSet::from([1u64]);
    let mut frontier = vec![1u64];
    while let Some(n) = frontier.pop() {
        for &p in &primes {
            if let Some(m) = n.checked_mul(p).filter(|&m| m <= depth) {
                if indices.insert(m) {
                    frontier.push(m);
                }
            }
        }
    }
    Ok(Tower { primes, depth, indices: indices.into_iter().collect(), level: Arc::new(builtin("C1")?) })
}

impl Tower {
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn depth(&self) -> u64 {
        self.depth
    }

    /// Index list in increasing order, which refines divisibility.
    pub fn indices(&self) -> &[u64] {
        &self.indices
    }

    pub fn contains(&self, lambda: u64) -> bool {
        self.indices.binary_search(&lambda).is_ok()
    }

    fn check_index(&self, lambda: u64) -> Result<()> {
        if self.contains(lambda) {
            Ok(())
        } else {
            Err(Error::LevelNotInTower(lambda))
        }
    }

    /// The complex at every level.
    pub fn level_space(&self) -> &Arc<TwoComplex> {
        &self.level
    }

    /// The covering from level `lambda` down to level `mu`, for `mu | lambda`.
    pub fn transition(&self, lambda: u64, mu: u64) -> Result<Covering> {
        self.check_index(lambda)?;
        self.check_index(mu)?;
        if !lambda.is_multiple_of(mu) {
            return Err(Error::InvalidArgument(format!("{mu} does not divide {lambda}")));
        }
        let d = usize::try_from(lambda / mu)
            .map_err(|_| Error::InvalidArgument(format!("degree {} too large", lambda / mu)))?;
        let step = usize::from(d > 1);
        Covering::from_group(self.level.clone(), Arc::new(FiniteGroup::cyclic(d)?), &[step])
    }

    /// Fiber data of the transitions: the point `i` over the basepoint of
    /// level `mu` at level `nu` goes to the point `i mod (lambda / mu)` at
    /// level `lambda`.
    pub fn fiber_projection(&self, nu: u64, lambda: u64, mu: u64) -> Result<Vec<usize>> {
        for x in [nu, lambda, mu] {
            self.check_index(x)?;
        }
        if !nu.is_multiple_of(lambda) || !lambda.is_multiple_of(mu) {
            return Err(Error::InvalidArgument(format!("need {mu} | {lambda} | {nu}")));
        }
        let small = (lambda / mu) as usize;
        Ok((0..(nu / mu) as usize).map(|i| i % small).collect())
    }

    /// Pulls a local system at level `mu` up to level `lambda`, identifying
    /// the covering circle with the level complex.
    pub fn pull_up(&self, e: &LocalSystem, mu: u64, lambda: u64) -> Result<LocalSystem> {
        if !same_space(e.space(), &self.level) {
            return Err(Error::SpaceMismatch("local system does not live on a tower level".into()));
        }
        let c = self.transition(lambda, mu)?;
        let pulled = pullback(e, &c, c.total().basepoint())?;
        LocalSystem::from_generator_images(self.level.clone(), e.ctx(), e.rank(), pulled.images().to_vec())
    }
}

/// The coarsest level a bundle is pulled back from, with the bundle there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelOfDefinition {
    pub level: u64,
    /// Monodromy of the bundle at `level`; its `lambda / level`-th power is
    /// the monodromy at `lambda`.
    pub root: Matrix,
}

/// Scans the tower indices dividing `lambda` from the smallest: `e` comes
/// from level `mu` iff its monodromy has a `lambda / mu`-th root.
/// `UnsupportedClass` when the root search is not decisive.
pub fn level_of_definition(e: &LocalSystem, tower: &Tower, lambda: u64) -> Result<LevelOfDefinition> {
    tower.check_index(lambda)?;
    if !same_space(e.space(), tower.level_space()) {
        return Err(Error::SpaceMismatch("local system does not live on a tower level".into()));
    }
    let m = &e.images()[0];
    for &mu in tower.indices().iter().filter(|&&mu| lambda.is_multiple_of(mu)) {
        let d = lambda / mu;
        if d == 1 {
            return Ok(LevelOfDefinition { level: mu, root: m.clone() });
        }
        match matrix_root(m, d)? {
            RootResult::Found(root) => return Ok(LevelOfDefinition { level: mu, root }),
            RootResult::NoRootFound => {}
            RootResult::UnsupportedClass(why) => return Err(Error::UnsupportedClass(why)),
        }
    }
    unreachable!("lambda divides itself")
}

/// Order of the part of `Z/m` that survives in the limit: the intersection
/// of the images `lambda Z/m` over the tower, which is `h Z/m` with `h` the
/// least common multiple of the `gcd(lambda, m)`.
pub fn finite_quotient_survival(tower: &Tower, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::BadModulus(m));
    }
    let mut h = 1u64;
    for &lambda in tower.indices() {
        h = h.lcm(&lambda.gcd(&m));
        if h == m {
            break;
        }
    }
    Ok(m / h)
}

/// `(m, surviving order)` for `m = 1..=bound`.
pub fn etale_quotients(tower: &Tower, bound: u64) -> Vec<(u64, u64)> {
    (1..=bound).map(|m| (m, finite_quotient_survival(tower, m).expect("positive modulus"))).collect()
}

/// Aligned two-column table of survival rows.
pub fn format_survival_table(rows: &[(u64, u64)]) -> String {
    let width = rows.iter().map(|(m, _)| m.to_string().len()).max().unwrap_or(1).max(1);
    let mut out = format!("{:>width$}  order\n", "m");
    for (m, order) in rows {
        writeln!(out, "{m:>width$}  {order}").unwrap();
    }
    out
}

/// Text description of the limit group of the tower and its finite shadows.
pub fn solenoid_summary(tower: &Tower, bound: u64) -> String {
    let primes = if tower.primes().is_empty() {
        "none".to_string()
    } else {
        tower.primes().iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
    };
    let mut out = String::new();
    writeln!(out, "tower: primes {{{primes}}}, {} levels up to {}", tower.indices().len(), tower.depth()).unwrap();
    writeln!(out, "limit group: G_a x D_P, D_P = spec K[K^x / mu_P^inf]").unwrap();
    writeln!(out, "identity component: G_a x D^0, D^0 = spec K[K^x / mu_K] (pro-torus, characters K^x / mu_K)").unwrap();
    if tower.primes().is_empty() {
        writeln!(out, "etale quotient: prod over all primes of Z_p").unwrap();
    } else {
        writeln!(out, "etale quotient: prod over primes p not in {{{primes}}} of Z_p").unwrap();
    }
    let rows = etale_quotients(tower, bound);
    let collapsed = rows.iter().all(|&(m, order)| m == 1 || order == 1);
    if collapsed && bound > 1 {
        writeln!(out, "every Z/m with m <= {bound} dies: no finite coverings survive at this truncation").unwrap();
    }
    out.push_str(&format_survival_table(&rows));
    out
}

/// Which factors of the limit group a level bundle sees, from the
/// multiplicative Jordan decomposition of its monodromy.
pub fn jordan_factors(e: &LocalSystem) -> Result<String> {
    let m = e.images().first().ok_or_else(|| Error::InvalidArgument("no generator".into()))?;
    let jd = jordan_multiplicative(m)?;
    let mut out = String::new();
    writeln!(out, "semisimple part: {}", jd.semisimple).unwrap();
    writeln!(out, "unipotent part: {}", jd.unipotent).unwrap();
    if jd.unipotent.is_identity() {
        writeln!(out, "G_a: acts trivially").unwrap();
    } else {
        writeln!(out, "G_a: acts through the unipotent part").unwrap();
    }
    if has_finite_order(&jd.semisimple) {
        writeln!(out, "D: semisimple part has finite order, so only the etale quotient of D acts").unwrap();
    } else {
        writeln!(out, "D: semisimple part has infinite order, so the pro-torus D^0 acts").unwrap();
    }
    Ok(out)
}
