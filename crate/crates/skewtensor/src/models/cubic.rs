//! The Segre cubic as the closure of the kernels of theta(v), by interpolation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{promote, FieldTag, Scalar};
use crate::matrix::ExactMatrix;
use crate::multilinear::{contract, wedge_square, ThetaTensor};
use crate::poly::{monomials_of_degree, MultiPoly};

use super::RankTwoLocus;

/// Number of sample points used for the interpolation.
pub const SAMPLES: usize = 56;

/// Copy of theta over Q when every entry is rational.
pub fn rational_form(theta: &ThetaTensor) -> Option<ThetaTensor> {
    if theta.tag() == FieldTag::Rational {
        return Some(theta.clone());
    }
    let comps = theta
        .components()
        .iter()
        .map(|c| {
            let m = c.matrix();
            let rows: Option<Vec<Vec<Scalar>>> = (0..5)
                .map(|i| (0..5).map(|j| m.get(i, j).as_rational().map(Scalar::Rational)).collect())
                .collect();
            crate::multilinear::SkewForm::new(ExactMatrix::from_rows(rows?).ok()?).ok()
        })
        .collect::<Option<Vec<_>>>()?;
    ThetaTensor::new(comps).ok()
}

pub(crate) fn random_vector(rng: &mut ChaCha8Rng, tag: FieldTag, n: usize) -> Vec<Scalar> {
    (0..n)
        .map(|_| match tag {
            FieldTag::Prime(p) => Scalar::fp(rng.gen_range(0..p), p),
            _ => Scalar::from_int(rng.gen_range(-9..=9), tag),
        })
        .collect()
}

/// Kernels wedge_square(theta(v)) for random v; rank-two members are skipped.
pub fn kernel_samples(theta: &ThetaTensor, n: usize, seed: u64) -> Vec<Vec<Scalar>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let v = random_vector(&mut rng, theta.tag(), 4);
        let w = wedge_square(&contract(theta, &v).expect("V4 vector"));
        if w.iter().any(|x| !x.is_zero()) {
            out.push(w);
        }
    }
    out
}

/// Interpolation matrix over the 35 cubic monomials.
fn interpolation_matrix(points: &[Vec<Scalar>], tag: FieldTag) -> Result<(ExactMatrix, Vec<Vec<u32>>)> {
    let mons = monomials_of_degree(5, 3);
    let m = ExactMatrix::from_fn(points.len(), mons.len(), tag, |r, c| {
        let mut acc = Scalar::one(tag);
        for (k, &e) in mons[c].iter().enumerate() {
            if e > 0 {
                acc = &acc * &points[r][k].pow(e);
            }
        }
        acc
    })?;
    Ok((m, mons))
}

/// The unique cubic through the sampled kernels, in the field of theta.
pub fn segre_cubic_seeded(theta: &ThetaTensor, seed: u64) -> Result<MultiPoly> {
    let tag = theta.tag();
    let work = rational_form(theta).unwrap_or_else(|| theta.clone());
    let wtag = work.tag();
    let pts = kernel_samples(&work, SAMPLES, seed);
    let (m, mons) = interpolation_matrix(&pts, wtag)?;
    let ker = m.kernel_basis();
    if ker.len() != 1 {
        return Err(Error::DegenerateSample(format!("interpolation corank {}", ker.len())));
    }
    let mut f = MultiPoly::from_terms(5, wtag, mons.into_iter().zip(ker[0].iter().cloned()))?;
    if wtag != tag {
        f = f.promote(tag)?;
    }
    Ok(f)
}

/// Interpolation corank for a given seed (1 for a generic sample).
pub fn interpolation_corank(theta: &ThetaTensor, seed: u64) -> Result<usize> {
    let work = rational_form(theta).unwrap_or_else(|| theta.clone());
    let pts = kernel_samples(&work, SAMPLES, seed);
    let (m, _) = interpolation_matrix(&pts, work.tag())?;
    Ok(m.kernel_basis().len())
}

/// Default seed for the interpolation sample.
pub const DEFAULT_SEED: u64 = 0x5e6e_c0b1;

/// Segre cubic of theta. With a rank-two locus supplied, the cubic must be
/// singular at each of its ten points e_pq.
pub fn segre_cubic(theta: &ThetaTensor, locus: Option<&RankTwoLocus>) -> Result<MultiPoly> {
    let f = segre_cubic_seeded(theta, DEFAULT_SEED)?;
    if let Some(l) = locus {
        for (&(p, q), e) in &l.e {
            if !singular_at(&f, e)? {
                return Err(Error::Inconsistent(format!("cubic is not singular at e_{p}{q}")));
            }
        }
    }
    Ok(f)
}

/// f and its gradient vanish at x.
pub fn singular_at(f: &MultiPoly, x: &[Scalar]) -> Result<bool> {
    if !f.eval(x)?.is_zero() {
        return Ok(false);
    }
    for g in f.gradient() {
        if !g.eval(x)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Promote a rational point to the field of f.
pub fn point_in(f: &MultiPoly, x: &[Scalar]) -> Result<Vec<Scalar>> {
    x.iter().map(|s| promote(s, f.tag())).collect()
}
