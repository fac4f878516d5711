//! The five points of P(V4) where theta drops rank, and the data they carry.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{FieldTag, Scalar};
use crate::matrix::rank_of;
use crate::modp::{rank2_points, ModTheta};
use crate::multilinear::{contract, pfaffian_rank, wedge_square, SkewForm, ThetaTensor};

use super::{normalize_form, same_point, span_intersection};

#[derive(Clone, Debug)]
pub struct RankTwoLocus {
    pub points: Vec<Vec<Scalar>>,
    /// normalized so the first nonzero upper entry is 1
    pub omegas: Vec<SkewForm>,
    /// kernels of the omega_k, 3-dimensional subspaces of V5
    pub planes: Vec<Vec<Vec<Scalar>>>,
    /// e_pq spanning P_p meet P_q, 1-based keys p < q
    pub e: BTreeMap<(usize, usize), Vec<Scalar>>,
    pub l0: Vec<(usize, usize)>,
}

/// Primes used to bound the size of the locus for a tensor over a number field.
fn probe_primes(tag: FieldTag) -> Vec<u64> {
    match tag {
        FieldTag::Cyclotomic12 => vec![13, 37],
        _ => vec![7, 11, 13],
    }
}

fn small_height_candidates(theta: &ThetaTensor, h: i64) -> Vec<Vec<Scalar>> {
    let tag = theta.tag();
    let mut found: Vec<Vec<Scalar>> = Vec::new();
    let range: Vec<i64> = (-h..=h).collect();
    for &a in &range {
        for &b in &range {
            for &c in &range {
                for &d in &range {
                    let v = super::ints(&[a, b, c, d], tag);
                    if v.iter().all(|x| x.is_zero()) {
                        continue;
                    }
                    if found.iter().any(|w| same_point(w, &v, tag)) {
                        continue;
                    }
                    let f = contract(theta, &v).expect("V4 vector");
                    if !f.is_zero() && wedge_square(&f).iter().all(|x| x.is_zero()) {
                        found.push(v);
                    }
                }
            }
        }
    }
    found
}

/// Build the locus. Over a prime field the whole of P^3 is swept; over Q or
/// Q(zeta12) the candidates are verified exactly and the size of the locus is
/// certified by sweeps at auxiliary primes. Without candidates, rational
/// points of small height are searched.
pub fn rank2_locus(theta: &ThetaTensor, candidates: Option<&[Vec<Scalar>]>) -> Result<RankTwoLocus> {
    let tag = theta.tag();
    let points: Vec<Vec<Scalar>> = match tag {
        FieldTag::Prime(p) => {
            let mt = ModTheta::reduce(theta, p)?;
            rank2_points(&mt).into_iter().map(|v| v.iter().map(|&x| Scalar::fp(x, p)).collect()).collect()
        }
        _ => {
            for p in probe_primes(tag) {
                if let Ok(mt) = ModTheta::reduce(theta, p) {
                    let n = rank2_points(&mt).len();
                    if n != 5 {
                        return Err(Error::NotGeneric(format!("{n} rank-two points over F_{p}")));
                    }
                }
            }
            match candidates {
                Some(c) => c.to_vec(),
                None => small_height_candidates(theta, 4),
            }
        }
    };
    if points.len() != 5 {
        return Err(Error::NotGeneric(format!("rank-two locus has {} points", points.len())));
    }
    let mut omegas = Vec::new();
    for v in &points {
        let w = contract(theta, v)?;
        if w.is_zero() || pfaffian_rank(&w) != 2 {
            return Err(Error::NotGeneric("candidate point is not of rank two".into()));
        }
        omegas.push(normalize_form(&w).expect("nonzero"));
    }
    for a in 0..5 {
        for b in a + 1..5 {
            if same_point(&points[a], &points[b], tag) {
                return Err(Error::NotGeneric("repeated rank-two point".into()));
            }
        }
    }
    for skip in 0..5 {
        let four: Vec<Vec<Scalar>> = (0..5).filter(|&k| k != skip).map(|k| points[k].clone()).collect();
        if rank_of(&four, tag) != 4 {
            return Err(Error::NotGeneric("rank-two points not in general position".into()));
        }
    }
    let planes: Vec<Vec<Vec<Scalar>>> = omegas.iter().map(|w| w.matrix().kernel_basis()).collect();
    let mut e = BTreeMap::new();
    let mut l0 = Vec::new();
    for p in 0..5 {
        for q in p + 1..5 {
            let meet = span_intersection(&planes[p], &planes[q], tag);
            if meet.len() != 1 {
                return Err(Error::NotGeneric(format!("P_{} and P_{} meet in dimension {}", p + 1, q + 1, meet.len())));
            }
            e.insert((p + 1, q + 1), meet[0].clone());
            l0.push((p + 1, q + 1));
        }
    }
    Ok(RankTwoLocus { points, omegas, planes, e, l0 })
}
