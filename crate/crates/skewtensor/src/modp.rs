//! theta reduced modulo a word-sized prime.

use crate::error::{Error, Result};
use crate::fp::{self, add, check_prime, mul, sub};
use crate::multilinear::ThetaTensor;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModTheta {
    pub p: u64,
    /// t[a][i][j] = theta_a(f_i, f_j)
    pub t: [[[u64; 5]; 5]; 4],
}

pub type Form = [[u64; 5]; 5];

impl ModTheta {
    pub fn reduce(theta: &ThetaTensor, p: u64) -> Result<Self> {
        check_prime(p)?;
        let mut t = [[[0u64; 5]; 5]; 4];
        for (a, slot) in t.iter_mut().enumerate() {
            let m = theta.component(a).matrix();
            for i in 0..5 {
                for j in 0..5 {
                    slot[i][j] = m.get(i, j).reduce_mod(p).map_err(|e| match e {
                        Error::BadReduction { .. } | Error::BadPrime(..) => Error::BadPrime(p, format!("theta does not reduce: {e}")),
                        other => other,
                    })?;
                }
            }
        }
        Ok(ModTheta { p, t })
    }

    /// theta_a(x, y).
    #[inline]
    pub fn eval(&self, a: usize, x: &[u64; 5], y: &[u64; 5]) -> u64 {
        let p = self.p;
        let mut acc = 0;
        for i in 0..5 {
            if x[i] == 0 {
                continue;
            }
            let mut row = 0;
            for j in 0..5 {
                row += self.t[a][i][j] * y[j] % p;
            }
            acc = add(acc, mul(x[i], row % p, p), p);
        }
        acc
    }

    /// theta(v) as a matrix.
    pub fn form(&self, v: &[u64; 4]) -> Form {
        let p = self.p;
        let mut m = [[0u64; 5]; 5];
        for a in 0..4 {
            if v[a] == 0 {
                continue;
            }
            for i in 0..5 {
                for j in 0..5 {
                    m[i][j] = add(m[i][j], mul(v[a], self.t[a][i][j], p), p);
                }
            }
        }
        m
    }
}

/// The kernel vector of a 5x5 alternating matrix under the fixed volume
/// convention (see [`crate::multilinear::wedge_square`]).
pub fn wedge_square(m: &Form, p: u64) -> [u64; 5] {
    let mut out = [0u64; 5];
    for k in 0..5 {
        let mut idx = [0usize; 4];
        let mut c = 0;
        for x in 0..5 {
            if x != k {
                idx[c] = x;
                c += 1;
            }
        }
        let [a, b, cc, d] = idx;
        let pf = add(sub(mul(m[a][b], m[cc][d], p), mul(m[a][cc], m[b][d], p), p), mul(m[a][d], m[b][cc], p), p);
        let two = mul(2, pf, p);
        out[k] = if k % 2 == 0 { two } else { sub(0, two, p) };
    }
    out
}

/// Points [v] of P^3(F_p) with rank theta(v) <= 2, normalized.
pub fn rank2_points(theta: &ModTheta) -> Vec<[u64; 4]> {
    let p = theta.p;
    let mut out = Vec::new();
    fp::for_each_subspace::<1, 4>(p, |m| {
        let v = m[0];
        if wedge_square(&theta.form(&v), p).iter().all(|&x| x == 0) {
            out.push(v);
        }
    });
    out
}
