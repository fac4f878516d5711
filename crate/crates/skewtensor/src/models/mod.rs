//! Normal forms of theta, the explicit coordinate data attached to them and
//! the hypersurfaces they determine.

pub mod cubic;
pub mod flags;
pub mod igusa;
pub mod locus;
pub mod ozeki;
pub mod quadrics;
pub mod s5;
pub mod tensor_file;

pub use cubic::segre_cubic;
pub use flags::dp5_flags;
pub use igusa::{igusa_quartic, IgusaForm};
pub use locus::{rank2_locus, RankTwoLocus};
pub use ozeki::{cremona_planes_check, ozeki_data, ozeki_theta, pijk_configuration, verify_lifts};
pub use quadrics::{c4_quadrics, QuadricBattery};
pub use s5::s5_theta;

use crate::error::{Error, Result};
use crate::field::{FieldTag, Scalar};
use crate::matrix::{rank_of, ExactMatrix};
use crate::multilinear::{SkewForm, ThetaTensor};

pub(crate) fn ints(v: &[i64], tag: FieldTag) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_int(x, tag)).collect()
}

/// Intersection of two spans inside a common ambient space.
pub fn span_intersection(a: &[Vec<Scalar>], b: &[Vec<Scalar>], tag: FieldTag) -> Vec<Vec<Scalar>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a[0].len();
    // columns a_1..a_r, -b_1..-b_s
    let m = ExactMatrix::from_fn(n, a.len() + b.len(), tag, |i, j| {
        if j < a.len() {
            a[j][i].clone()
        } else {
            -&b[j - a.len()][i]
        }
    })
    .expect("same field");
    let mut out: Vec<Vec<Scalar>> = Vec::new();
    for k in m.kernel_basis() {
        let v: Vec<Scalar> = (0..n)
            .map(|i| (0..a.len()).fold(Scalar::zero(tag), |acc, j| &acc + &(&k[j] * &a[j][i])))
            .collect();
        let mut trial = out.clone();
        trial.push(v.clone());
        if rank_of(&trial, tag) == trial.len() {
            out.push(v);
        }
    }
    out
}

/// Do two nonzero vectors span the same line?
pub fn same_point(u: &[Scalar], v: &[Scalar], tag: FieldTag) -> bool {
    rank_of(&[u.to_vec(), v.to_vec()], tag) == 1
}

/// Scale so that the first nonzero coordinate is 1.
pub fn normalize_point(v: &[Scalar]) -> Option<Vec<Scalar>> {
    let lead = v.iter().find(|x| !x.is_zero())?;
    let inv = lead.inv()?;
    Some(v.iter().map(|x| x * &inv).collect())
}

/// Scale a skew form so that its first nonzero upper-triangular entry is 1.
pub fn normalize_form(w: &SkewForm) -> Option<SkewForm> {
    let m = w.matrix();
    for i in 0..m.rows() {
        for j in i + 1..m.cols() {
            if !m.get(i, j).is_zero() {
                return w.scale(&m.get(i, j).inv()?).ok();
            }
        }
    }
    None
}

/// Coordinates of a skew form in the basis f_ij, i < j.
pub fn plucker(w: &SkewForm) -> Vec<Scalar> {
    let m = w.matrix();
    let n = m.rows();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(m.get(i, j).clone());
        }
    }
    out
}

/// Given rank-two forms spanning the image of theta, rescale them so they sum
/// to zero and solve for the linear forms u_k with theta = sum u_k (x) omega_k.
pub fn five_term_presentation(theta: &ThetaTensor, omegas: &[SkewForm]) -> Result<crate::multilinear::FiveTerm> {
    let tag = theta.tag();
    if omegas.len() != 5 {
        return Err(Error::Dimension("five forms expected".into()));
    }
    let normed: Vec<SkewForm> = omegas
        .iter()
        .map(|w| normalize_form(w).ok_or_else(|| Error::Degenerate("zero form".into())))
        .collect::<Result<_>>()?;
    let cols: Vec<Vec<Scalar>> = normed.iter().map(plucker).collect();
    let m = ExactMatrix::from_fn(10, 5, tag, |i, j| cols[j][i].clone())?;
    let ker = m.kernel_basis();
    if ker.len() != 1 || ker[0].iter().any(|x| x.is_zero()) {
        return Err(Error::NotGeneric("the five rank-two forms do not satisfy a single relation with nonzero coefficients".into()));
    }
    let scaled: Vec<SkewForm> = normed
        .iter()
        .zip(&ker[0])
        .map(|(w, l)| w.scale(l))
        .collect::<Result<_>>()?;
    // u_k[a]: theta_a = sum_k u_k[a] omega_k, sum_k u_k[a] = 0.
    let mut sys: Vec<Vec<Scalar>> = (0..10)
        .map(|r| scaled.iter().map(|w| plucker(w)[r].clone()).collect())
        .collect();
    sys.push(vec![Scalar::one(tag); 5]);
    let sm = ExactMatrix::from_rows(sys)?;
    let mut u = vec![vec![Scalar::zero(tag); 4]; 5];
    for a in 0..4 {
        let mut rhs = plucker(theta.component(a));
        rhs.push(Scalar::zero(tag));
        let sol = sm
            .solve(&rhs)?
            .ok_or_else(|| Error::Inconsistent(format!("component {} not in the span of the omega_k", a + 1)))?;
        for k in 0..5 {
            u[k][a] = sol[k].clone();
        }
    }
    Ok(crate::multilinear::FiveTerm { omegas: scaled, u_duals: u })
}

/// A basis of the span of some vectors (the nonzero rows of the RREF).
pub fn span_basis(vs: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if vs.is_empty() {
        return Vec::new();
    }
    let m = ExactMatrix::from_rows(vs.to_vec()).expect("equal lengths");
    let (r, piv) = m.rref();
    (0..piv.len()).map(|i| r.row(i)).collect()
}
