//! Flags A1 in A3 in V5 with theta(A1, A3) = 0, over a prime field.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fp::{self, add, mul};
use crate::modp::ModTheta;
use crate::multilinear::ThetaTensor;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DpFlag {
    pub a1: [u64; 5],
    /// RREF basis of A3
    pub a3: Vec<Vec<u64>>,
}

fn unit(i: usize) -> [u64; 5] {
    let mut e = [0; 5];
    e[i] = 1;
    e
}

/// K(w) = {x : theta_a(w, x) = 0 for all a}, a basis of a complement of w in it.
fn kernel_mod_w(t: &ModTheta, w: &[u64; 5]) -> Vec<Vec<u64>> {
    let p = t.p;
    let rows: Vec<Vec<u64>> = (0..4).map(|a| (0..5).map(|x| t.eval(a, w, &unit(x))).collect()).collect();
    let k = fp::kernel_dyn(&rows, 5, p);
    let mut basis = vec![w.to_vec()];
    for v in k {
        let mut trial = basis.clone();
        trial.push(v.clone());
        if fp::rank_dyn(&trial, p) == trial.len() {
            basis.push(v);
        }
    }
    basis.remove(0);
    basis
}

fn combine(coeffs: &[u64], basis: &[Vec<u64>], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; 5];
    for (c, b) in coeffs.iter().zip(basis) {
        for i in 0..5 {
            out[i] = add(out[i], mul(*c, b[i], p), p);
        }
    }
    out
}

fn planes_in<const M: usize>(p: u64, w: &[u64; 5], comp: &[Vec<u64>], out: &mut Vec<DpFlag>) {
    fp::for_each_subspace::<2, M>(p, |m| {
        let mut rows = vec![w.to_vec()];
        rows.extend(m.iter().map(|r| combine(r, comp, p)));
        out.push(DpFlag { a1: *w, a3: fp::rref_span(&rows, p) });
    });
}

/// Every flag over F_p. For theta generic the count is 10.
pub fn dp5_flags(theta: &ThetaTensor, p: u64) -> Result<Vec<DpFlag>> {
    let t = ModTheta::reduce(theta, p)?;
    let mut out = Vec::new();
    let mut failure = None;
    fp::for_each_subspace::<1, 5>(p, |m| {
        let w = m[0];
        let comp = kernel_mod_w(&t, &w);
        match comp.len() {
            0 | 1 => {}
            2 => planes_in::<2>(p, &w, &comp, &mut out),
            3 => planes_in::<3>(p, &w, &comp, &mut out),
            4 => planes_in::<4>(p, &w, &comp, &mut out),
            n => failure = Some(n),
        }
    });
    if let Some(n) = failure {
        return Err(Error::ModelAnomaly(format!("kernel of dimension {} in V5", n + 1)));
    }
    Ok(out)
}

/// Number of flags over F_p, as the fibration count sum over w of |G(2, dim K(w) - 1)|.
pub fn dp5_flag_count(theta: &ThetaTensor, p: u64) -> Result<u64> {
    let t = ModTheta::reduce(theta, p)?;
    let mut total = 0;
    fp::for_each_subspace::<1, 5>(p, |m| {
        let d = kernel_mod_w(&t, &m[0]).len() as u32;
        total += fp::gaussian_binomial(d, 2, p);
    });
    Ok(total)
}

/// The A1 of the flags, normalized and sorted.
pub fn flag_points(flags: &[DpFlag], p: u64) -> Vec<Vec<u64>> {
    let mut pts: Vec<Vec<u64>> = flags.iter().filter_map(|f| fp::normalize(&f.a1, p)).collect();
    pts.sort();
    pts.dedup();
    pts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::s5::s5_theta;

    #[test]
    fn s5_has_ten_flags_mod_seven() {
        let t = s5_theta().unwrap();
        let flags = dp5_flags(&t, 7).unwrap();
        assert_eq!(flags.len(), 10);
        assert_eq!(dp5_flag_count(&t, 7).unwrap(), 10);
        assert_eq!(flag_points(&flags, 7).len(), 10);
    }
}
