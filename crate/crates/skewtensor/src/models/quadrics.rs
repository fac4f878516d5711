//! Quadrics apolar to the invariant cubic, the forms Q_i, Q_{i,j}, and the
//! quadrics CQ_i on the Pluecker space of G(3, V5).

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{promote, FieldTag, Scalar};
use crate::matrix::{rank_of, ExactMatrix};
use crate::multilinear::{classify_pencil, isotropic_3space, PencilClass, SkewForm, ThetaTensor};
use crate::poly::{monomials_of_degree, MultiPoly};

use super::cubic::random_vector;
use super::s5::{q_forms, q_pairs, q_raw, theta_from_q, ApolarSpace};

const T: FieldTag = FieldTag::Rational;

#[derive(Clone, Debug)]
pub struct QuadricBattery {
    pub space: ApolarSpace,
    /// q_{ij,kl} on the ten monomials x_a x_b, for every 4-subset and pairing
    pub q: BTreeMap<(usize, usize, usize, usize), Vec<Scalar>>,
    pub big_q: Vec<SkewForm>,
    pub q_pairs: BTreeMap<(usize, usize), SkewForm>,
    /// CQ_1..CQ_5 as quadrics in the ten Pluecker coordinates P_xy, x < y
    pub cq: Vec<MultiPoly>,
}

/// x^T G M G y summed into the linear form sum_{x<y} (G M G)_xy P_xy.
fn linear_form(m: &SkewForm, g: &ExactMatrix) -> Result<MultiPoly> {
    let c = g.mul(m.matrix())?.mul(g)?;
    let mut f = MultiPoly::zero(10, T);
    let mut k = 0;
    for x in 0..5 {
        for y in x + 1..5 {
            f = f.add(&MultiPoly::var(10, k, T).scale(c.get(x, y)))?;
            k += 1;
        }
    }
    Ok(f)
}

fn cq_from(q: &[SkewForm], qp: &BTreeMap<(usize, usize), SkewForm>, g: &ExactMatrix) -> Result<Vec<MultiPoly>> {
    (1..=5)
        .map(|i| {
            let mut acc = MultiPoly::zero(10, T);
            for j in (1..=5).filter(|&j| j != i) {
                acc = acc.add(&linear_form(&qp[&(i, j)], g)?.mul(&linear_form(&q[j - 1], g)?)?)?;
            }
            Ok(acc)
        })
        .collect()
}

pub fn build_battery() -> Result<QuadricBattery> {
    let space = ApolarSpace::new();
    let mut q = BTreeMap::new();
    for i in 1..=5 {
        for j in i + 1..=5 {
            for k in 1..=5 {
                for l in k + 1..=5 {
                    if [i, j].contains(&k) || [i, j].contains(&l) || (k, l) < (i, j) {
                        continue;
                    }
                    q.insert((i, j, k, l), q_raw(i, j, k, l));
                }
            }
        }
    }
    let big_q = q_forms(&space);
    let qp = q_pairs(&space);
    let cq = cq_from(&big_q, &qp, &space.metric())?;
    Ok(QuadricBattery { space, q, big_q, q_pairs: qp, cq })
}

#[derive(Clone, Debug, Serialize)]
pub struct BatteryReport {
    pub plucker_relations: bool,
    pub all_apolar: bool,
    pub cq_span: usize,
    /// s with sigma(CQ_i) = s CQ_sigma(i) for every transposition, if one s works
    pub cq_transposition_sign: Option<i64>,
    pub c4_samples: usize,
    pub c4_vanishing: usize,
    /// dimension of quadrics in the Pluecker coordinates through the C4 sample
    pub c4_ideal_quadrics: usize,
    /// dimension of span(CQ) meet that space
    pub cq_inside_ideal: usize,
}

fn coeff_vector(f: &MultiPoly, mons: &[Vec<u32>]) -> Vec<Scalar> {
    mons.iter().map(|m| f.coeff(m)).collect()
}

/// Random points of C4 over F_p as Pluecker coordinates of the annihilator
/// of isotropic_3space(theta, U).
pub fn c4_sample(theta_q: &ThetaTensor, p: u64, n: usize, seed: u64) -> Result<Vec<Vec<Scalar>>> {
    let tag = FieldTag::Prime(p);
    let comps = theta_q
        .components()
        .iter()
        .map(|c| {
            let m = c.matrix();
            let rows: Result<Vec<Vec<Scalar>>> = (0..5).map(|i| (0..5).map(|j| promote(m.get(i, j), tag)).collect()).collect();
            SkewForm::new(ExactMatrix::from_rows(rows?)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let theta = ThetaTensor::new(comps)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < n {
        tries += 1;
        if tries > 100 * n + 100 {
            return Err(Error::DegenerateSample("too few constant-rank pencils".into()));
        }
        let u = vec![random_vector(&mut rng, tag, 4), random_vector(&mut rng, tag, 4)];
        if rank_of(&u, tag) != 2 || classify_pencil(&theta, &u)? != PencilClass::O7ConstantRank {
            continue;
        }
        let v = isotropic_3space(&theta, &u)?;
        let ann = ExactMatrix::from_rows(v)?.kernel_basis();
        let (a, b) = (&ann[0], &ann[1]);
        let mut pl = Vec::new();
        for x in 0..5 {
            for y in x + 1..5 {
                pl.push(&(&a[x] * &b[y]) - &(&a[y] * &b[x]));
            }
        }
        out.push(pl);
    }
    Ok(out)
}

fn transposition(a: usize, b: usize) -> Vec<usize> {
    let mut s: Vec<usize> = (1..=5).collect();
    s.swap(a - 1, b - 1);
    s
}

pub fn battery_report(b: &QuadricBattery, p: u64, samples: usize, seed: u64) -> Result<BatteryReport> {
    let mut plucker_relations = true;
    for i in 1..=5 {
        for j in 1..=5 {
            for k in 1..=5 {
                for l in 1..=5 {
                    let s = [i, j, k, l];
                    if (0..4).any(|x| (x + 1..4).any(|y| s[x] == s[y])) {
                        continue;
                    }
                    let (x, y, z) = (q_raw(i, j, k, l), q_raw(i, k, j, l), q_raw(i, l, j, k));
                    plucker_relations &= x.iter().zip(&y).zip(&z).all(|((a, bb), c)| (&(a - bb) + c).is_zero());
                }
            }
        }
    }
    let all_apolar = b.q.values().all(|v| b.space.coords(v).is_ok());
    let mons = monomials_of_degree(10, 2);
    let cq_vecs: Vec<Vec<Scalar>> = b.cq.iter().map(|f| coeff_vector(f, &mons)).collect();
    let cq_span = rank_of(&cq_vecs, T);

    let g = b.space.metric();
    let mut plus = true;
    let mut minus = true;
    for x in 1..=5 {
        for y in x + 1..=5 {
            let sigma = transposition(x, y);
            let s = b.space.action(&sigma);
            let act = |w: &SkewForm| SkewForm::new(s.mul(w.matrix()).unwrap().mul(&s.transpose()).unwrap()).unwrap();
            let q2: Vec<SkewForm> = b.big_q.iter().map(act).collect();
            let qp2: BTreeMap<(usize, usize), SkewForm> = b.q_pairs.iter().map(|(k, w)| (*k, act(w))).collect();
            // relabel: sigma(CQ_i) is the formula in the transformed forms at index i
            let moved = cq_from(&q2, &qp2, &g)?;
            for i in 1..=5 {
                let target = &b.cq[sigma[i - 1] - 1];
                plus &= moved[i - 1] == *target;
                minus &= moved[i - 1] == target.scale(&Scalar::from_int(-1, T));
            }
        }
    }

    let cq_transposition_sign = match (plus, minus) {
        (true, _) => Some(1),
        (false, true) => Some(-1),
        _ => None,
    };

    let theta = theta_from_q(&b.big_q)?;
    let pts = c4_sample(&theta, p, samples, seed)?;
    let tag = FieldTag::Prime(p);
    let cq_p: Vec<MultiPoly> = b.cq.iter().map(|f| f.promote(tag)).collect::<Result<_>>()?;
    let c4_vanishing = pts
        .iter()
        .filter(|x| cq_p.iter().all(|f| f.eval(x).map(|v| v.is_zero()).unwrap_or(false)))
        .count();
    // quadrics through a larger sample
    let more = c4_sample(&theta, p, 120, seed ^ 0x9e37)?;
    let rows: Vec<Vec<Scalar>> = more
        .iter()
        .map(|x| {
            mons.iter()
                .map(|m| {
                    let mut acc = Scalar::one(tag);
                    for (k, &e) in m.iter().enumerate() {
                        if e > 0 {
                            acc = &acc * &x[k].pow(e);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let ideal = ExactMatrix::from_rows(rows)?.kernel_basis();
    let cq_vecs_p: Vec<Vec<Scalar>> = cq_p.iter().map(|f| coeff_vector(f, &mons)).collect();
    let rank_cq_p = rank_of(&cq_vecs_p, tag);
    let mut both = ideal.clone();
    both.extend(cq_vecs_p);
    let cq_inside_ideal = ideal.len() + rank_cq_p - rank_of(&both, tag);
    Ok(BatteryReport {
        plucker_relations,
        all_apolar,
        cq_span,
        cq_transposition_sign,
        c4_samples: samples,
        c4_vanishing,
        c4_ideal_quadrics: ideal.len(),
        cq_inside_ideal,
    })
}

/// Default prime and sample size for the C4 vanishing test.
pub const C4_PRIME: u64 = 13;
pub const C4_SAMPLES: usize = 100;
pub const C4_SEED: u64 = 0xc4c4;

/// Build the battery and require the CQ_i to vanish on sampled points of C4.
pub fn c4_quadrics() -> Result<QuadricBattery> {
    let b = build_battery()?;
    let r = battery_report(&b, C4_PRIME, C4_SAMPLES, C4_SEED)?;
    if r.cq_span != 4 {
        return Err(Error::Inconsistent(format!("span of CQ_i has dimension {}", r.cq_span)));
    }
    if r.c4_vanishing != r.c4_samples {
        return Err(Error::Inconsistent(format!(
            "CQ_i vanish at {} of {} sampled points of C4 over F_{}",
            r.c4_vanishing, r.c4_samples, C4_PRIME
        )));
    }
    Ok(b)
}
