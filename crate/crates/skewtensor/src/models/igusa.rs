//! Q_h(v) = h ^ theta(v) ^ theta(v) and its determinant in h.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::field::{FieldTag, Scalar};
use crate::multilinear::{contract, wedge_pairing, wedge_square, ThetaTensor};
use crate::poly::MultiPoly;

use super::cubic::random_vector;

#[derive(Clone, Debug)]
pub struct IgusaForm {
    /// symmetric 4x4 matrix of linear forms in h_1..h_5
    pub gram: Vec<Vec<MultiPoly>>,
    pub det: MultiPoly,
}

fn unit(k: usize, tag: FieldTag) -> Vec<Scalar> {
    (0..5).map(|i| Scalar::from_int(i64::from(i == k), tag)).collect()
}

pub fn det_poly(m: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
    let n = m.len();
    if n == 1 {
        return Ok(m[0][0].clone());
    }
    let mut acc = MultiPoly::zero(m[0][0].nvars(), m[0][0].tag());
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = (1..n)
            .map(|r| (0..n).filter(|&x| x != c).map(|x| m[r][x].clone()).collect())
            .collect();
        let t = m[0][c].mul(&det_poly(&minor)?)?;
        acc = if c % 2 == 0 { acc.add(&t)? } else { acc.sub(&t)? };
    }
    Ok(acc)
}

pub fn igusa_quartic(theta: &ThetaTensor) -> Result<IgusaForm> {
    let tag = theta.tag();
    let mut gram = vec![vec![MultiPoly::zero(5, tag); 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            let mut g = MultiPoly::zero(5, tag);
            for k in 0..5 {
                let c = wedge_pairing(&unit(k, tag), theta.component(a), theta.component(b));
                g = g.add(&MultiPoly::var(5, k, tag).scale(&c))?;
            }
            gram[a][b] = g;
        }
    }
    let det = det_poly(&gram)?;
    Ok(IgusaForm { gram, det })
}

/// Q_h evaluated at a covector h, as a 4x4 scalar matrix.
pub fn gram_at(form: &IgusaForm, h: &[Scalar]) -> Result<Vec<Vec<Scalar>>> {
    form.gram.iter().map(|r| r.iter().map(|g| g.eval(h)).collect()).collect()
}

fn poly(tag: FieldTag, terms: &[(i64, [u32; 5])]) -> MultiPoly {
    MultiPoly::from_terms(5, tag, terms.iter().map(|(c, e)| (e.to_vec(), Scalar::from_int(*c, tag)))).expect("valid terms")
}

/// The printed matrix for Ozeki's representative.
pub fn printed_gram(tag: FieldTag) -> Vec<Vec<MultiPoly>> {
    let h = |k: usize, c: i64| poly(tag, &[(c, std::array::from_fn(|i| u32::from(i == k - 1)))]);
    let z = MultiPoly::zero(5, tag);
    vec![
        vec![h(1, 2), h(2, -1), h(3, -1), h(5, -1)],
        vec![h(2, -1), h(3, 2), h(4, -1), z.clone()],
        vec![h(3, -1), h(4, -1), h(5, 2), h(1, -1)],
        vec![h(5, -1), z, h(1, -1), h(3, 2)],
    ]
}

/// The printed value of -det(Q_h).
pub fn printed_quartic(tag: FieldTag) -> MultiPoly {
    poly(
        tag,
        &[
            (4, [0, 0, 4, 0, 0]),
            (12, [1, 0, 2, 0, 1]),
            (-4, [0, 1, 2, 1, 0]),
            (-4, [3, 0, 1, 0, 0]),
            (-4, [0, 0, 1, 0, 3]),
            (-4, [1, 0, 1, 2, 0]),
            (-4, [0, 2, 1, 0, 1]),
            (1, [2, 2, 0, 0, 0]),
            (-2, [1, 1, 0, 1, 1]),
            (1, [0, 0, 0, 2, 2]),
        ],
    )
}

/// Substitute h_k -> s_k h_k.
pub fn flip_signs(f: &MultiPoly, signs: [i64; 5]) -> Result<MultiPoly> {
    let tag = f.tag();
    let subs: Vec<MultiPoly> = (0..5).map(|k| MultiPoly::var(5, k, tag).scale(&Scalar::from_int(signs[k], tag))).collect();
    f.compose(&subs)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct PrintedComparison {
    pub det_proportional_to_printed: bool,
    pub printed_is_minus_det_of_printed_matrix: bool,
    /// our Q_h equals -(printed matrix) after h4 -> -h4
    pub gram_matches_after_h4_flip: bool,
    /// det(Q_h) proportional to det(printed matrix) after h4 -> -h4
    pub det_matches_printed_matrix_after_flip: bool,
    pub printed_minus_det_printed_matrix: String,
}

pub fn compare_printed(form: &IgusaForm) -> Result<PrintedComparison> {
    let tag = form.det.tag();
    let printed = printed_quartic(tag);
    let pm = printed_gram(tag);
    let det_pm = det_poly(&pm)?;
    let minus_det_pm = det_pm.scale(&Scalar::from_int(-1, tag));
    let flip = [1, 1, 1, -1, 1];
    let mut gram_matches = true;
    for a in 0..4 {
        for b in 0..4 {
            let ours = flip_signs(&form.gram[a][b], flip)?;
            gram_matches &= ours.add(&pm[a][b])?.is_zero();
        }
    }
    let flipped_det = flip_signs(&form.det, flip)?;
    Ok(PrintedComparison {
        det_proportional_to_printed: form.det.proportional(&printed),
        printed_is_minus_det_of_printed_matrix: printed == minus_det_pm,
        gram_matches_after_h4_flip: gram_matches,
        det_matches_printed_matrix_after_flip: flipped_det.proportional(&det_pm),
        printed_minus_det_printed_matrix: printed.sub(&det_pm)?.to_string(),
    })
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct DualityReport {
    pub samples: usize,
    pub on_computed_quartic: usize,
    pub on_printed_quartic: usize,
}

/// Tangent covectors of the cubic at kernel points of theta(v) lie on det(Q_h).
pub fn duality_check(theta: &ThetaTensor, cubic: &MultiPoly, form: &IgusaForm, samples: usize, seed: u64) -> Result<DualityReport> {
    let tag = theta.tag();
    let printed = printed_quartic(cubic.tag());
    let grad = cubic.gradient();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut n, mut on_ours, mut on_printed) = (0, 0, 0);
    while n < samples {
        let v = random_vector(&mut rng, tag, 4);
        let x = wedge_square(&contract(theta, &v)?);
        if x.iter().all(|s| s.is_zero()) {
            continue;
        }
        let h: Vec<Scalar> = grad.iter().map(|g| g.eval(&x)).collect::<Result<_>>()?;
        if h.iter().all(|s| s.is_zero()) {
            continue;
        }
        n += 1;
        if form.det.eval(&h)?.is_zero() {
            on_ours += 1;
        }
        if printed.eval(&h)?.is_zero() {
            on_printed += 1;
        }
    }
    Ok(DualityReport { samples, on_computed_quartic: on_ours, on_printed_quartic: on_printed })
}
