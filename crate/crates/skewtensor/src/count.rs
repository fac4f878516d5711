//! Point counts of the models over F_p by fibrations over one Grassmannian factor.

use std::fmt;

use num::{BigRational, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldTag, Scalar};
use crate::fp::{self, add, mul};
use crate::matrix::ExactMatrix;
use crate::modp::{rank2_points, wedge_square, ModTheta};
use crate::multilinear::{ModelId, ThetaTensor};
use crate::poly::MultiPoly;

/// Integer polynomial c_0 + c_1 L + ... evaluated at L = p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountPolynomial(pub Vec<i64>);

impl CountPolynomial {
    pub fn eval(&self, p: u64) -> i128 {
        self.0.iter().rev().fold(0i128, |acc, &c| acc * p as i128 + c as i128)
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }
}

impl fmt::Display for CountPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && k > 0 { String::new() } else { c.to_string() };
            parts.push(match k {
                0 => format!("{c}"),
                1 => format!("{coef}p"),
                _ => format!("{coef}p^{k}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Expected counts: the Betti polynomials, and the explicit counts for the
/// low-dimensional models. None for X3.
pub fn expected_polynomial(model: ModelId) -> Option<CountPolynomial> {
    let c = match model {
        ModelId::X0 => vec![10],
        ModelId::X1 => vec![5, 5],
        ModelId::X2 => vec![1, 5, 1],
        ModelId::X3 => return None,
        ModelId::X4 => vec![1, 6, 17, 6, 1],
        ModelId::X6 => vec![1, 2, 8, 9, 8, 2, 1],
        ModelId::X8 => vec![1, 2, 4, 6, 11, 6, 4, 2, 1],
        ModelId::X8p => vec![1, 2, 5, 11, 13, 11, 5, 2, 1],
    };
    Some(CountPolynomial(c))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountStatus {
    Match,
    Mismatch,
    NoExpectation,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CountResult {
    pub model: ModelId,
    pub prime: u64,
    pub measured: u64,
    pub expected: Option<CountPolynomial>,
    pub expected_value: Option<i128>,
    pub status: CountStatus,
}

impl CountResult {
    fn new(model: ModelId, prime: u64, measured: u64) -> Self {
        let expected = expected_polynomial(model);
        let expected_value = expected.as_ref().map(|e| e.eval(prime));
        let status = match expected_value {
            None => CountStatus::NoExpectation,
            Some(v) if v == measured as i128 => CountStatus::Match,
            Some(_) => CountStatus::Mismatch,
        };
        CountResult { model, prime, measured, expected, expected_value, status }
    }
}

/// Number of k-subspaces of F_p^n, by the Gaussian binomial and by summing
/// echelon cells.
pub fn count_grassmannian(k: usize, n: usize, p: u64) -> Result<u64> {
    if k > n {
        return Err(Error::Dimension(format!("G({k},{n})")));
    }
    fp::check_prime(p)?;
    let g = fp::gaussian_binomial(n as u32, k as u32, p);
    let c = fp::cell_count(k, n, p);
    if g != c {
        return Err(Error::Inconsistent(format!("G({k},{n})(F_{p}): binomial {g}, cells {c}")));
    }
    Ok(g)
}

/// Below this bound sums of five products fit in a u64 and are reduced once.
const LAZY: u64 = 1 << 20;

/// T_a x for each component.
#[inline]
fn apply(mt: &ModTheta, x: &[u64; 5]) -> [[u64; 5]; 4] {
    let p = mt.p;
    let mut out = [[0u64; 5]; 4];
    for a in 0..4 {
        for i in 0..5 {
            let r = &mt.t[a][i];
            out[a][i] = if p < LAZY {
                (r[0] * x[0] + r[1] * x[1] + r[2] * x[2] + r[3] * x[3] + r[4] * x[4]) % p
            } else {
                (0..5).fold(0, |s, j| (s + r[j] * x[j] % p) % p)
            };
        }
    }
    out
}

#[inline]
fn dot(x: &[u64; 5], y: &[u64; 5], p: u64) -> u64 {
    if p < LAZY {
        (x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3] + x[4] * y[4]) % p
    } else {
        (0..5).fold(0, |s, i| (s + x[i] * y[i] % p) % p)
    }
}

/// The 3x4 matrix theta_a(v_i, v_j) over the pairs of a basis of V.
#[inline]
pub fn restriction_matrix(mt: &ModTheta, v: &[[u64; 5]; 3]) -> [[u64; 4]; 3] {
    let p = mt.p;
    let t1 = apply(mt, &v[1]);
    let t2 = apply(mt, &v[2]);
    let mut m = [[0u64; 4]; 3];
    for a in 0..4 {
        m[0][a] = dot(&v[0], &t1[a], p);
        m[1][a] = dot(&v[0], &t2[a], p);
        m[2][a] = dot(&v[1], &t2[a], p);
    }
    m
}

/// The vector theta_a(w1, w2).
#[inline]
pub fn pair_vector(mt: &ModTheta, w: &[[u64; 5]; 2]) -> [u64; 4] {
    let t = apply(mt, &w[1]);
    std::array::from_fn(|a| dot(&w[0], &t[a], mt.p))
}

/// The 5x4 matrix theta_a(w, f_x); its right kernel is {u : theta(u)(w, .) = 0}.
#[inline]
pub fn kernel_map(mt: &ModTheta, w: &[u64; 5]) -> [[u64; 4]; 5] {
    let p = mt.p;
    let mut m = [[0u64; 4]; 5];
    for a in 0..4 {
        for x in 0..5 {
            let col: [u64; 5] = std::array::from_fn(|i| mt.t[a][i][x]);
            m[x][a] = dot(w, &col, p);
        }
    }
    m
}

/// dim K(w) for K(w) = {x : theta_a(w, x) = 0 for all a}.
#[inline]
fn flag_kernel_dim(mt: &ModTheta, w: &[u64; 5]) -> usize {
    let t = apply(mt, w);
    5 - fp::rank(t, mt.p)
}

/// |X2| from lines through each point: every W in X2 is a line of P(K(w))
/// through [w], and each W is seen from its p + 1 points.
pub fn x2_by_incidence(mt: &ModTheta) -> u64 {
    let p = mt.p;
    let h = fp::grassmannian_histogram::<1, 5, _>(p, 6, |w| flag_kernel_dim(mt, &w[0]));
    let through: u64 = (2..6).map(|d| h[d] * fp::projective_count(d as i64 - 2, p)).sum();
    through / (p + 1)
}

fn form_rank(mt: &ModTheta, u: &[u64; 4]) -> usize {
    let f = mt.form(u);
    if wedge_square(&f, mt.p).iter().any(|&x| x != 0) {
        4
    } else if f.iter().flatten().any(|&x| x != 0) {
        2
    } else {
        0
    }
}

/// Rank histograms of the four sweeps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sweeps {
    pub p: u64,
    /// V in G(3,5): rank r of the restriction matrix, r = 0..3
    pub v_ranks: Vec<u64>,
    /// W in G(2,5): rank s of theta(.)(w1, w2), s = 0..1
    pub w_ranks: Vec<u64>,
    /// [w] in P^4: dimension k of the kernel in V4, k = 0..4
    pub kernels: Vec<u64>,
    /// [u] in P^3: rank of theta(u), index 0, 1, 2 for ranks 0, 2, 4
    pub u_ranks: Vec<u64>,
}

pub fn sweep_v(mt: &ModTheta) -> Vec<u64> {
    fp::grassmannian_histogram::<3, 5, _>(mt.p, 4, |v| fp::rank(restriction_matrix(mt, v), mt.p))
}

pub fn sweep_w(mt: &ModTheta) -> Vec<u64> {
    fp::grassmannian_histogram::<2, 5, _>(mt.p, 2, |w| usize::from(pair_vector(mt, w).iter().any(|&x| x != 0)))
}

pub fn sweep_kernels(mt: &ModTheta) -> Vec<u64> {
    fp::grassmannian_histogram::<1, 5, _>(mt.p, 5, |w| 4 - fp::rank(kernel_map(mt, &w[0]), mt.p))
}

pub fn sweep_u(mt: &ModTheta) -> Vec<u64> {
    fp::grassmannian_histogram::<1, 4, _>(mt.p, 3, |u| form_rank(mt, &u[0]) / 2)
}

fn anomaly_v(mt: &ModTheta) -> Error {
    let w = fp::find_subspace::<3, 5>(mt.p, |v| fp::rank(restriction_matrix(mt, v), mt.p) == 0);
    Error::ModelAnomaly(format!("theta vanishes on the 3-space {w:?} over F_{}", mt.p))
}

fn anomaly_w(mt: &ModTheta) -> Error {
    let w = fp::find_subspace::<1, 5>(mt.p, |w| fp::rank(kernel_map(mt, &w[0]), mt.p) <= 1);
    Error::ModelAnomaly(format!("kernel of dimension >= 3 at {w:?} over F_{}", mt.p))
}

fn anomaly_u(mt: &ModTheta) -> Error {
    let u = fp::find_subspace::<1, 4>(mt.p, |u| form_rank(mt, &u[0]) == 0);
    Error::ModelAnomaly(format!("theta(u) = 0 at {u:?} over F_{}", mt.p))
}

impl Sweeps {
    pub fn run(mt: &ModTheta) -> Result<Self> {
        let s = Sweeps { p: mt.p, v_ranks: sweep_v(mt), w_ranks: sweep_w(mt), kernels: sweep_kernels(mt), u_ranks: sweep_u(mt) };
        s.check(mt)?;
        Ok(s)
    }

    fn check(&self, mt: &ModTheta) -> Result<()> {
        if self.v_ranks[0] > 0 {
            return Err(anomaly_v(mt));
        }
        if self.kernels[3] + self.kernels[4] > 0 {
            return Err(anomaly_w(mt));
        }
        if self.u_ranks[0] > 0 {
            return Err(anomaly_u(mt));
        }
        Ok(())
    }

    pub fn model(&self, m: ModelId) -> u64 {
        let p = self.p;
        let g = |n: u32, k: u32| fp::gaussian_binomial(n, k, p);
        let pr = |d: i64| fp::projective_count(d, p);
        match m {
            ModelId::X0 => (0..5).map(|k| self.kernels[k] * g(k as u32, 2)).sum(),
            ModelId::X1 => self.u_ranks[1] * (p + 1) + self.u_ranks[0] * g(5, 4),
            ModelId::X2 => self.w_ranks[0],
            ModelId::X3 => (0..5).map(|k| self.kernels[k] * pr(k as i64 - 1)).sum(),
            ModelId::X4 => (0..4).map(|r| self.v_ranks[r] * g(4 - r as u32, 2)).sum(),
            ModelId::X6 => (0..4).map(|r| self.v_ranks[r] * pr(3 - r as i64)).sum(),
            ModelId::X8 => (0..2).map(|s| self.w_ranks[s] * pr(3 - s as i64)).sum(),
            ModelId::X8p => (0..2).map(|s| self.w_ranks[s] * g(4 - s as u32, 2)).sum(),
        }
    }

    pub fn c3(&self) -> u64 {
        self.kernels[1..].iter().sum()
    }

    pub fn c4(&self) -> u64 {
        self.v_ranks[..3].iter().sum()
    }
}

/// Count one model. Runs only the sweep that model needs.
pub fn count_model(model: ModelId, mt: &ModTheta) -> Result<CountResult> {
    let p = mt.p;
    let mut s = Sweeps { p, v_ranks: vec![0; 4], w_ranks: vec![0; 2], kernels: vec![0; 5], u_ranks: vec![0; 3] };
    match model {
        ModelId::X0 | ModelId::X3 => s.kernels = sweep_kernels(mt),
        ModelId::X1 => s.u_ranks = sweep_u(mt),
        ModelId::X2 | ModelId::X8 | ModelId::X8p => s.w_ranks = sweep_w(mt),
        ModelId::X4 | ModelId::X6 => s.v_ranks = sweep_v(mt),
    }
    s.check(mt)?;
    Ok(CountResult::new(model, p, s.model(model)))
}

/// All eight models from one set of sweeps.
pub fn count_all(mt: &ModTheta) -> Result<(Sweeps, Vec<CountResult>)> {
    let s = Sweeps::run(mt)?;
    let res = ModelId::ALL.iter().map(|&m| CountResult::new(m, mt.p, s.model(m))).collect();
    Ok((s, res))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ImageCounts {
    pub p: u64,
    pub c3: u64,
    pub c4: u64,
    pub x3: u64,
    pub x4: u64,
    /// |X3| = |C3| + 10p
    pub x3_identity: bool,
    /// |X4| = |C4| + 10(p^2 + p)
    pub x4_identity: bool,
}

pub fn images_from(s: &Sweeps) -> ImageCounts {
    let p = s.p;
    let (c3, c4, x3, x4) = (s.c3(), s.c4(), s.model(ModelId::X3), s.model(ModelId::X4));
    ImageCounts { p, c3, c4, x3, x4, x3_identity: x3 == c3 + 10 * p, x4_identity: x4 == c4 + 10 * (p * p + p) }
}

pub fn count_images(mt: &ModTheta) -> Result<ImageCounts> {
    let s = Sweeps { p: mt.p, v_ranks: sweep_v(mt), w_ranks: vec![0; 2], kernels: sweep_kernels(mt), u_ranks: vec![0; 3] };
    s.check(mt)?;
    Ok(images_from(&s))
}

/// |X4(F_p)| by testing every pair (A, V) in G(2,4) x G(3,5).
pub fn x4_double_sweep(mt: &ModTheta) -> u64 {
    let p = mt.p;
    let a_list = fp::all_subspaces::<2, 4>(p);
    fp::grassmannian_sum::<3, 5, _>(p, |v| {
        let m = restriction_matrix(mt, v);
        a_list
            .iter()
            .filter(|a| {
                a.iter().all(|u| {
                    m.iter().all(|row| (0..4).fold(0u64, |acc, k| add(acc, mul(row[k], u[k], p), p)) == 0)
                })
            })
            .count() as u64
    })
}

/// Zeros in P^4(F_p) of a cubic with rational coefficients.
pub fn projective_zeros(f: &MultiPoly, p: u64) -> Result<u64> {
    let g = f.promote(FieldTag::Prime(p))?;
    let mut n = 0;
    let mut err = None;
    fp::for_each_subspace::<1, 5>(p, |w| {
        let x: Vec<Scalar> = w[0].iter().map(|&c| Scalar::fp(c, p)).collect();
        match g.eval(&x) {
            Ok(v) if v.is_zero() => n += 1,
            Ok(_) => {}
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(n),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProbeReport {
    pub p: u64,
    pub reduces: bool,
    pub rank2_points: usize,
    pub distinct_planes: bool,
    pub pairwise_points: bool,
    pub distinct_e: usize,
    pub x2: Option<u64>,
    pub good: bool,
}

/// Conditions for p to be a prime of good reduction for theta.
pub fn probe(theta: &ThetaTensor, p: u64) -> ProbeReport {
    let mut r = ProbeReport { p, reduces: false, rank2_points: 0, distinct_planes: false, pairwise_points: false, distinct_e: 0, x2: None, good: false };
    let Ok(mt) = ModTheta::reduce(theta, p) else { return r };
    r.reduces = true;
    let pts = rank2_points(&mt);
    r.rank2_points = pts.len();
    if pts.len() != 5 || pts.iter().any(|u| form_rank(&mt, u) != 2) {
        return r;
    }
    // annihilator of the kernel plane = row space of theta(u)
    let rows: Vec<Vec<Vec<u64>>> = pts
        .iter()
        .map(|u| {
            let f = mt.form(u);
            fp::rref_span(&f.iter().map(|x| x.to_vec()).collect::<Vec<_>>(), p)
        })
        .collect();
    let mut planes: Vec<Vec<Vec<u64>>> = rows.clone();
    planes.sort();
    planes.dedup();
    r.distinct_planes = planes.len() == 5;
    let mut es = Vec::new();
    r.pairwise_points = true;
    for a in 0..5 {
        for b in a + 1..5 {
            let mut m = rows[a].clone();
            m.extend(rows[b].iter().cloned());
            let k = fp::kernel_dyn(&m, 5, p);
            if k.len() != 1 {
                r.pairwise_points = false;
                continue;
            }
            es.push(fp::normalize(&k[0], p).expect("nonzero"));
        }
    }
    es.sort();
    es.dedup();
    r.distinct_e = es.len();
    let x2 = x2_by_incidence(&mt);
    r.x2 = Some(x2);
    r.good = r.distinct_planes && r.pairwise_points && r.distinct_e == 10 && x2 == 1 + 5 * p + p * p;
    r
}

pub fn good_reduction_probe(theta: &ThetaTensor, p: u64) -> bool {
    probe(theta, p).good
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GrothendieckRow {
    pub p: u64,
    pub x4: u64,
    pub x6: u64,
    pub g35: u64,
    /// [X6] + L^3 [Y0] with [Y0] = 5
    pub lhs: i128,
    /// [G(3,5)] + L [X4]
    pub rhs: i128,
    pub discrepancy: i128,
    /// c with [X6] + c L^3 = [G(3,5)] + L [X4], when integral
    pub coefficient: Option<i128>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GrothendieckAudit {
    pub rows: Vec<GrothendieckRow>,
    pub printed_relation_holds: bool,
    /// the coefficient, if it is the same at every prime
    pub constant_coefficient: Option<i128>,
}

pub fn grothendieck_row(p: u64, x4: u64, x6: u64) -> Result<GrothendieckRow> {
    let g35 = count_grassmannian(3, 5, p)? as i128;
    let l3 = (p as i128).pow(3);
    let lhs = x6 as i128 + 5 * l3;
    let rhs = g35 + p as i128 * x4 as i128;
    let diff = rhs - x6 as i128;
    Ok(GrothendieckRow {
        p,
        x4,
        x6,
        g35: g35 as u64,
        lhs,
        rhs,
        discrepancy: rhs - lhs,
        coefficient: (diff % l3 == 0).then_some(diff / l3),
    })
}

pub fn audit_grothendieck(rows: Vec<GrothendieckRow>) -> GrothendieckAudit {
    let printed_relation_holds = rows.iter().all(|r| r.discrepancy == 0);
    let first = rows.first().and_then(|r| r.coefficient);
    let constant_coefficient = first.filter(|c| rows.iter().all(|r| r.coefficient == Some(*c)));
    GrothendieckAudit { rows, printed_relation_holds, constant_coefficient }
}

/// Run the sweeps at each prime and audit the relation.
pub fn audit_grothendieck_at(theta: &ThetaTensor, primes: &[u64]) -> Result<GrothendieckAudit> {
    let mut rows = Vec::new();
    for &p in primes {
        let mt = ModTheta::reduce(theta, p)?;
        let v = sweep_v(&mt);
        let s = Sweeps { p, v_ranks: v, w_ranks: vec![0; 2], kernels: vec![0; 5], u_ranks: vec![0; 3] };
        s.check(&mt)?;
        rows.push(grothendieck_row(p, s.model(ModelId::X4), s.model(ModelId::X6))?);
    }
    Ok(audit_grothendieck(rows))
}

/// Interpolating polynomial of the given degree through (p, count) samples,
/// with rational coefficients; None if the samples do not determine it or
/// are not consistent with that degree.
pub fn fit_polynomial(samples: &[(u64, u64)], degree: usize) -> Option<Vec<BigRational>> {
    if samples.len() < degree + 1 {
        return None;
    }
    let t = FieldTag::Rational;
    let m = ExactMatrix::from_fn(samples.len(), degree + 1, t, |r, c| {
        Scalar::Rational(BigRational::from_integer((samples[r].0 as i64).into()).pow(c as i32))
    })
    .ok()?;
    let b: Vec<Scalar> = samples.iter().map(|&(_, y)| Scalar::Rational(BigRational::from_integer((y as i64).into()))).collect();
    let x = m.solve(&b).ok()??;
    x.into_iter().map(|s| s.as_rational()).collect()
}

/// Integer coefficients of a fit, if they are all integers.
pub fn integral(coeffs: &[BigRational]) -> Option<Vec<i64>> {
    coeffs.iter().map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grassmannian_counts() {
        assert_eq!(count_grassmannian(2, 4, 2).unwrap(), 35);
        assert_eq!(count_grassmannian(3, 5, 2).unwrap(), 155);
        assert_eq!(count_grassmannian(2, 5, 7).unwrap(), fp::gaussian_binomial(5, 2, 7));
    }

    #[test]
    fn polynomial_display_and_eval() {
        let x4 = expected_polynomial(ModelId::X4).unwrap();
        assert_eq!(x4.eval(7), 5335);
        assert_eq!(x4.to_string(), "1 + 6p + 17p^2 + 6p^3 + p^4");
    }

    #[test]
    fn fit_recovers_cubic() {
        let f = |p: u64| 2 + 3 * p + p * p * p;
        let s: Vec<(u64, u64)> = [2, 3, 5, 7].iter().map(|&p| (p, f(p))).collect();
        assert_eq!(integral(&fit_polynomial(&s, 3).unwrap()).unwrap(), vec![2, 3, 0, 1]);
    }
}
