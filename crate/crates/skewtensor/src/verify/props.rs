//! Randomized invariants with recorded seeds.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chow::bundle::BundleExpr;
use crate::chow::schubert::Grassmannian;
use crate::count::Sweeps;
use crate::error::Result;
use crate::field::{Cyclo12, FieldTag, Scalar};
use crate::matrix::ExactMatrix;
use crate::modp::ModTheta;
use crate::multilinear::{classify_pencil, PencilClass, ThetaTensor};
use crate::rep::bott::{bott, FactorWeight, GLWeight};

#[derive(Clone, Debug, Serialize)]
pub struct PropertyRun {
    pub seed: u64,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl PropertyRun {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.cases > 0
    }
}

fn small_rational(rng: &mut ChaCha8Rng) -> num::BigRational {
    num::BigRational::new(rng.gen_range(-20i64..=20).into(), rng.gen_range(1i64..=9).into())
}

pub fn random_scalar(rng: &mut ChaCha8Rng, tag: FieldTag) -> Scalar {
    match tag {
        FieldTag::Rational => Scalar::Rational(small_rational(rng)),
        FieldTag::Cyclotomic12 => Scalar::Cyclotomic12(Cyclo12(std::array::from_fn(|_| small_rational(rng)))),
        FieldTag::Prime(p) => Scalar::fp(rng.gen_range(0..p), p),
    }
}

/// Ring axioms and inverses in Q, Q(zeta12) and F_p.
pub fn field_axioms(seed: u64, per_field: usize) -> PropertyRun {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let tags = [FieldTag::Rational, FieldTag::Cyclotomic12, FieldTag::Prime(13), FieldTag::Prime(10007)];
    for tag in tags {
        for _ in 0..per_field {
            let (a, b, c) = (random_scalar(&mut rng, tag), random_scalar(&mut rng, tag), random_scalar(&mut rng, tag));
            let mut bad = |what: &str| failures.push(format!("{what} over {tag} at ({a}, {b}, {c})"));
            if &(&a + &b) + &c != &a + &(&b + &c) {
                bad("associativity of +");
            }
            if &(&a * &b) * &c != &a * &(&b * &c) {
                bad("associativity of *");
            }
            if &a * &b != &b * &a || &a + &b != &b + &a {
                bad("commutativity");
            }
            if &a * &(&b + &c) != &(&a * &b) + &(&a * &c) {
                bad("distributivity");
            }
            if !(&a - &a).is_zero() || &a + &Scalar::zero(tag) != a {
                bad("additive identity");
            }
            match a.inv() {
                Some(i) => {
                    if !(&a * &i).is_one() {
                        bad("inverse");
                    }
                }
                None => {
                    if !a.is_zero() {
                        bad("missing inverse");
                    }
                }
            }
        }
    }
    PropertyRun { seed, cases: per_field * tags.len(), failures }
}

fn random_bundle(rng: &mut ChaCha8Rng, depth: usize) -> BundleExpr {
    let leaf = |rng: &mut ChaCha8Rng| match rng.gen_range(0..4) {
        0 => BundleExpr::sub(0),
        1 => BundleExpr::quot(0),
        2 => BundleExpr::Line(vec![rng.gen_range(-2..=2)]),
        _ => BundleExpr::Trivial(rng.gen_range(1..=2)),
    };
    if depth == 0 {
        return leaf(rng);
    }
    match rng.gen_range(0..5) {
        0 => random_bundle(rng, depth - 1).dual(),
        1 => random_bundle(rng, depth - 1).plus(random_bundle(rng, depth - 1)),
        2 => leaf(rng).times(leaf(rng)),
        3 => leaf(rng).wedge(2),
        _ => leaf(rng),
    }
}

/// c(A + B) = c(A) c(B) on G(2,5), and c1 of a tensor product.
pub fn whitney_sums(seed: u64, pairs: usize) -> Result<PropertyRun> {
    let amb = [Grassmannian::new(2, 5)];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..pairs {
        let a = random_bundle(&mut rng, 2);
        let b = random_bundle(&mut rng, 2);
        let lhs = a.clone().plus(b.clone()).chern(&amb)?;
        let rhs = a.chern(&amb)?.mul(&b.chern(&amb)?)?;
        if lhs != rhs {
            failures.push(format!("c({a:?} + {b:?})"));
        }
        let (ra, rb) = (a.rank(&amb)? as i64, b.rank(&amb)? as i64);
        let c1 = a.clone().times(b.clone()).chern_class(&amb, 1)?;
        let want = a.chern_class(&amb, 1)?.scale_int(rb).add(&b.chern_class(&amb, 1)?.scale_int(ra))?;
        if c1 != want {
            failures.push(format!("c1({a:?} x {b:?})"));
        }
    }
    Ok(PropertyRun { seed, cases: pairs, failures })
}

fn random_dominant(rng: &mut ChaCha8Rng, len: usize) -> Vec<i64> {
    let mut v: Vec<i64> = (0..len).map(|_| rng.gen_range(-4..=4)).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// h^i(W) = h^(dim-i)(W^* (x) K) on G(2,4), G(3,5) and their product.
pub fn bott_serre_duality(seed: u64, per_ambient: usize) -> PropertyRun {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let ambients: [&[(usize, usize)]; 3] = [&[(2, 4)], &[(3, 5)], &[(2, 4), (3, 5)]];
    let mut nonzero = 0;
    for amb in ambients {
        for _ in 0..per_ambient {
            let w = GLWeight {
                factors: amb.iter().map(|&(k, n)| FactorWeight::new(random_dominant(&mut rng, k), random_dominant(&mut rng, n - k))).collect(),
            };
            let d = w.dim();
            let (a, b) = (bott(&w).table(d), bott(&w.serre_dual()).table(d));
            nonzero += usize::from(a.iter().any(|&x| x > 0));
            if (0..=d).any(|i| a[i] != b[d - i]) {
                failures.push(format!("{w}: {a:?} vs {b:?}"));
            }
        }
    }
    if nonzero == 0 {
        failures.push("every sampled weight was acyclic".into());
    }
    PropertyRun { seed, cases: per_ambient * ambients.len(), failures }
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize, tag: FieldTag) -> Result<ExactMatrix> {
    loop {
        let e: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-3..=3)).collect();
        let m = ExactMatrix::from_fn(n, n, tag, |i, j| Scalar::from_int(e[i * n + j], tag))?;
        if m.rank() == n {
            return Ok(m);
        }
    }
}

fn random_vec(rng: &mut ChaCha8Rng, n: usize, tag: FieldTag) -> Vec<Scalar> {
    (0..n).map(|_| Scalar::from_int(rng.gen_range(-5..=5), tag)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct PencilRun {
    pub run: PropertyRun,
    /// number of cases of each pencil type seen
    pub coverage: Vec<(String, usize)>,
}

/// classify_pencil(g . theta, U) = classify_pencil(theta, g4^T U). `points`
/// are rank-two points of theta, used to reach the smaller orbits.
pub fn pencil_gl_invariance(theta: &ThetaTensor, points: &[Vec<Scalar>], seed: u64, cases: usize) -> Result<PencilRun> {
    let tag = theta.tag();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut seen = std::collections::BTreeMap::new();
    for i in 0..cases {
        let g4 = random_invertible(&mut rng, 4, tag)?;
        let g5 = random_invertible(&mut rng, 5, tag)?;
        let u: Vec<Vec<Scalar>> = loop {
            let u = match (i % 3, points.len()) {
                (1, n) if n >= 1 => vec![points[rng.gen_range(0..n)].clone(), random_vec(&mut rng, 4, tag)],
                (2, n) if n >= 2 => {
                    let a = rng.gen_range(0..n);
                    let b = (a + rng.gen_range(1..n)) % n;
                    vec![points[a].clone(), points[b].clone()]
                }
                _ => vec![random_vec(&mut rng, 4, tag), random_vec(&mut rng, 4, tag)],
            };
            if crate::matrix::rank_of(&u, tag) == 2 {
                break u;
            }
        };
        let before = classify_pencil(theta, &u)?;
        let ginv_t = g4.transpose().inverse().expect("invertible");
        let moved: Vec<Vec<Scalar>> = u.iter().map(|x| ginv_t.mul_vec(x)).collect::<Result<_>>()?;
        let after = classify_pencil(&theta.transform(&g4, &g5)?, &moved)?;
        *seen.entry(format!("{before:?}")).or_insert(0usize) += 1;
        if before != after {
            failures.push(format!("case {i}: {before:?} became {after:?}"));
        }
    }
    if !points.is_empty() && !seen.contains_key(&format!("{:?}", PencilClass::O5TwoRank2)) {
        failures.push("no pencil through two rank-two points was sampled".into());
    }
    Ok(PencilRun { run: PropertyRun { seed, cases, failures }, coverage: seen.into_iter().collect() })
}

#[derive(Clone, Debug, Serialize)]
pub struct ThreadRun {
    pub prime: u64,
    pub threads: Vec<usize>,
    pub identical: bool,
    pub sweeps: Sweeps,
}

/// The same sweeps under pools of different sizes.
pub fn thread_determinism(theta: &ThetaTensor, p: u64, threads: &[usize]) -> Result<ThreadRun> {
    let mt = ModTheta::reduce(theta, p)?;
    let mut runs = Vec::new();
    for &n in threads {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| crate::error::Error::Parse(format!("thread pool: {e}")))?;
        runs.push(pool.install(|| Sweeps::run(&mt))?);
    }
    let identical = runs.windows(2).all(|w| w[0] == w[1]);
    Ok(ThreadRun { prime: p, threads: threads.to_vec(), identical, sweeps: runs.swap_remove(0) })
}
