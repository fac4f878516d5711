//! The S5-symmetric normal form built from quadrics apolar to x1^3+...+x5^3.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{FieldTag, Scalar};
use crate::matrix::ExactMatrix;
use crate::modp::{rank2_points, ModTheta};
use crate::multilinear::{SkewForm, ThetaTensor};

const T: FieldTag = FieldTag::Rational;

/// Index of the monomial x_a x_b (1-based, a != b) among the ten.
pub fn pair_index(a: usize, b: usize) -> usize {
    let (a, b) = (a.min(b), a.max(b));
    let mut k = 0;
    for x in 1..=5 {
        for y in x + 1..=5 {
            if (x, y) == (a, b) {
                return k;
            }
            k += 1;
        }
    }
    unreachable!("pair out of range")
}

/// (x_i - x_j)(x_k - x_l) as coefficients on the ten x_a x_b.
pub fn q_raw(i: usize, j: usize, k: usize, l: usize) -> Vec<Scalar> {
    let mut v = vec![0i64; 10];
    for (a, sa) in [(i, 1), (j, -1)] {
        for (b, sb) in [(k, 1), (l, -1)] {
            v[pair_index(a, b)] += sa * sb;
        }
    }
    super::ints(&v, T)
}

/// The space U5 of apolar quadrics with a fixed basis.
#[derive(Clone, Debug)]
pub struct ApolarSpace {
    /// 10 x 5, columns are the basis quadrics
    pub basis: ExactMatrix,
}

impl ApolarSpace {
    pub fn new() -> Self {
        let c = ExactMatrix::from_fn(5, 10, T, |k, col| {
            let mut idx = 0;
            for a in 1..=5 {
                for b in a + 1..=5 {
                    if idx == col {
                        return Scalar::from_int(i64::from(a == k + 1 || b == k + 1), T);
                    }
                    idx += 1;
                }
            }
            unreachable!()
        })
        .expect("5x10");
        let ker = c.kernel_basis();
        let basis = ExactMatrix::from_fn(10, ker.len(), T, |r, col| ker[col][r].clone()).expect("10x5");
        ApolarSpace { basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates of an apolar quadric in the basis.
    pub fn coords(&self, q: &[Scalar]) -> Result<Vec<Scalar>> {
        self.basis
            .solve(q)?
            .ok_or_else(|| Error::Inconsistent("quadric is not apolar".into()))
    }

    pub fn q(&self, i: usize, j: usize, k: usize, l: usize) -> Vec<Scalar> {
        self.coords(&q_raw(i, j, k, l)).expect("q_{ij,kl} is apolar")
    }

    /// Matrix of the permutation of variables sigma (sigma[a-1] = image of a).
    pub fn action(&self, sigma: &[usize]) -> ExactMatrix {
        let n = self.dim();
        let mut cols = Vec::new();
        for c in 0..n {
            let mut w = vec![Scalar::zero(T); 10];
            let mut idx = 0;
            for a in 1..=5 {
                for b in a + 1..=5 {
                    let t = pair_index(sigma[a - 1], sigma[b - 1]);
                    w[t] = &w[t] + self.basis.get(idx, c);
                    idx += 1;
                }
            }
            cols.push(self.coords(&w).expect("apolarity is symmetric"));
        }
        ExactMatrix::from_fn(n, n, T, |r, c| cols[c][r].clone()).expect("square")
    }

    /// Gram matrix B^T B of the basis, an S5-invariant metric.
    pub fn metric(&self) -> ExactMatrix {
        self.basis.transpose().mul(&self.basis).expect("shapes")
    }
}

impl Default for ApolarSpace {
    fn default() -> Self {
        Self::new()
    }
}

fn wedge(a: &[Scalar], b: &[Scalar]) -> SkewForm {
    SkewForm::wedge(a, b).expect("same length")
}

/// Q_1..Q_5 (index 0..4), with Q_5 = q_{12,34} ^ q_{13,24}.
pub fn q_forms(sp: &ApolarSpace) -> Vec<SkewForm> {
    vec![
        wedge(&sp.q(2, 3, 4, 5), &sp.q(2, 4, 3, 5)),
        wedge(&sp.q(1, 3, 4, 5), &sp.q(1, 4, 5, 3)),
        wedge(&sp.q(1, 2, 4, 5), &sp.q(1, 4, 2, 5)),
        wedge(&sp.q(1, 2, 3, 5), &sp.q(1, 3, 5, 2)),
        wedge(&sp.q(1, 2, 3, 4), &sp.q(1, 3, 2, 4)),
    ]
}

/// Q_{i,j} for 1-based i != j.
pub fn q_pair(sp: &ApolarSpace, i: usize, j: usize) -> SkewForm {
    let c: Vec<usize> = (1..=5).filter(|&x| x != i && x != j).collect();
    let (p, q, r) = (c[0], c[1], c[2]);
    let mut acc = SkewForm::zero(5, T);
    for (a, b, cc) in [(p, q, r), (q, r, p), (r, p, q)] {
        acc = acc.add(&wedge(&sp.q(i, a, b, cc), &sp.q(j, a, b, cc))).expect("same field");
    }
    acc
}

/// All Q_{i,j}, keyed by 1-based ordered pairs.
pub fn q_pairs(sp: &ApolarSpace) -> BTreeMap<(usize, usize), SkewForm> {
    let mut out = BTreeMap::new();
    for i in 1..=5 {
        for j in 1..=5 {
            if i != j {
                out.insert((i, j), q_pair(sp, i, j));
            }
        }
    }
    out
}

/// The printed coefficient of e_5 read literally as Q_1.
pub fn literal_q_forms(sp: &ApolarSpace) -> Vec<SkewForm> {
    let mut q = q_forms(sp);
    q[4] = q[0].clone();
    q
}

fn transposition(a: usize, b: usize) -> Vec<usize> {
    let mut s: Vec<usize> = (1..=5).collect();
    s.swap(a - 1, b - 1);
    s
}

/// sigma(Q_i) = s Q_sigma(i) for each transposition; None where no sign works.
pub fn transposition_signs(sp: &ApolarSpace, q: &[SkewForm]) -> Vec<((usize, usize), Vec<Option<i8>>)> {
    let mut out = Vec::new();
    for a in 1..=5 {
        for b in a + 1..=5 {
            let sigma = transposition(a, b);
            let s = sp.action(&sigma);
            let signs = (0..5)
                .map(|i| {
                    let img = SkewForm::new(s.mul(q[i].matrix()).unwrap().mul(&s.transpose()).unwrap()).ok()?;
                    let target = &q[sigma[i] - 1];
                    if img == *target {
                        Some(1)
                    } else if img == target.scale(&Scalar::from_int(-1, T)).ok()? {
                        Some(-1)
                    } else {
                        None
                    }
                })
                .collect();
            out.push(((a, b), signs));
        }
    }
    out
}

/// Tensor with components sum_k e_k(v) Q_k for e_1..e_4 the dual basis and
/// e_5 = -(e_1 + ... + e_4).
pub fn theta_from_q(q: &[SkewForm]) -> Result<ThetaTensor> {
    let comps = (0..4)
        .map(|a| q[a].add(&q[4].scale(&Scalar::from_int(-1, T))?))
        .collect::<Result<Vec<_>>>()?;
    ThetaTensor::new(comps)
}

/// Primes used to certify that a rational tensor is generic.
pub const GENERICITY_PRIMES: [u64; 3] = [7, 11, 13];

/// The S5-invariant tensor, with its five-term presentation attached.
pub fn s5_theta() -> Result<ThetaTensor> {
    let sp = ApolarSpace::new();
    let q = q_forms(&sp);
    let theta = theta_from_q(&q)?;
    for p in GENERICITY_PRIMES {
        let n = rank2_points(&ModTheta::reduce(&theta, p)?).len();
        if n != 5 {
            return Err(Error::NotGeneric(format!("{n} rank-two points over F_{p}")));
        }
    }
    let ft = super::five_term_presentation(&theta, &q)?;
    theta.with_five_term(ft)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apolar_space_is_five_dimensional() {
        let sp = ApolarSpace::new();
        assert_eq!(sp.dim(), 5);
        // Pluecker-type relation
        for (i, j, k, l) in [(1, 2, 3, 4), (2, 5, 1, 3)] {
            let a = q_raw(i, j, k, l);
            let b = q_raw(i, k, j, l);
            let c = q_raw(i, l, j, k);
            assert!(a.iter().zip(&b).zip(&c).all(|((x, y), z)| (&(x - y) + z).is_zero()));
        }
    }

    #[test]
    fn s5_theta_is_generic() {
        let t = s5_theta().unwrap();
        assert!(t.five_term().is_some());
    }
}
