//! Ozeki's representative of the open orbit and its coordinate tables.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{cyclotomic_units, FieldTag, Scalar};
use crate::matrix::{rank_of, ExactMatrix};
use crate::multilinear::{contract, SkewForm, ThetaTensor};
use crate::poly::MultiPoly;

use super::{ints, same_point, span_intersection};

const T: FieldTag = FieldTag::Cyclotomic12;

fn f(a: usize, b: usize) -> SkewForm {
    SkewForm::elementary(5, a - 1, b - 1, T)
}

fn diff(x: SkewForm, y: SkewForm) -> SkewForm {
    x.add(&y.scale(&Scalar::from_int(-1, T)).unwrap()).unwrap()
}

/// theta = e1*(f25 - f34) + e2*(f15 - f24) + e3*(f23 - f14) + e4*(f45 - f12).
pub fn ozeki_theta() -> ThetaTensor {
    ThetaTensor::new(vec![
        diff(f(2, 5), f(3, 4)),
        diff(f(1, 5), f(2, 4)),
        diff(f(2, 3), f(1, 4)),
        diff(f(4, 5), f(1, 2)),
    ])
    .expect("four 5x5 forms")
}

/// The printed tables: rank-two points p_k, the factors of omega_k and the
/// ten vectors e_pq.
#[derive(Clone, Debug)]
pub struct OzekiData {
    pub points: Vec<Vec<Scalar>>,
    pub factors: Vec<(Vec<Scalar>, Vec<Scalar>)>,
    pub e: BTreeMap<(usize, usize), Vec<Scalar>>,
}

impl OzekiData {
    pub fn omega(&self, k: usize) -> SkewForm {
        let (a, b) = &self.factors[k];
        SkewForm::wedge(a, b).expect("same length")
    }

    pub fn omegas(&self) -> Vec<SkewForm> {
        (0..5).map(|k| self.omega(k)).collect()
    }

    /// pi_k: the plane of V5^* spanned by the two factors of omega_k.
    pub fn plane(&self, k: usize) -> Vec<Vec<Scalar>> {
        let (a, b) = &self.factors[k];
        vec![a.clone(), b.clone()]
    }

    /// e_pq for 1-based p != q in either order.
    pub fn e_of(&self, p: usize, q: usize) -> &Vec<Scalar> {
        &self.e[&(p.min(q), p.max(q))]
    }
}

pub fn ozeki_data() -> OzekiData {
    let (i, j) = cyclotomic_units();
    let j2 = &j * &j;
    let n = |x: i64| Scalar::from_int(x, T);
    let o = n(1);
    let z = n(0);
    let mi = -&i;
    let ij = &i * &j;
    let ij2 = &i * &j2;
    let points = vec![
        vec![z.clone(), o.clone(), z.clone(), i.clone()],
        vec![z.clone(), o.clone(), z.clone(), mi.clone()],
        vec![o.clone(), z.clone(), o.clone(), o.clone()],
        vec![o.clone(), z.clone(), j.clone(), j2.clone()],
        vec![o.clone(), z.clone(), j2.clone(), j.clone()],
    ];
    let factors = vec![
        (vec![o.clone(), z.clone(), z.clone(), i.clone(), z.clone()], vec![z.clone(), o.clone(), z.clone(), z.clone(), i.clone()]),
        (vec![o.clone(), z.clone(), z.clone(), mi.clone(), z.clone()], vec![z.clone(), o.clone(), z.clone(), z.clone(), mi.clone()]),
        (ints(&[0, 1, 0, 1, 0], T), ints(&[1, 0, 1, 0, 1], T)),
        (vec![z.clone(), o.clone(), z.clone(), j2.clone(), z.clone()], vec![o.clone(), z.clone(), j2.clone(), z.clone(), j.clone()]),
        (vec![z.clone(), o.clone(), z.clone(), j.clone(), z.clone()], vec![o.clone(), z.clone(), j.clone(), z.clone(), j2.clone()]),
    ];
    let two = n(2);
    let mut e = BTreeMap::new();
    e.insert((1, 2), ints(&[0, 0, 1, 0, 0], T));
    e.insert((1, 3), vec![o.clone(), mi.clone(), n(-2), i.clone(), o.clone()]);
    e.insert((1, 4), vec![mi.clone(), -&j2, &two * &ij, o.clone(), -&ij2]);
    e.insert((1, 5), vec![mi.clone(), -&j, &two * &ij2, o.clone(), -&ij]);
    e.insert((2, 3), vec![o.clone(), i.clone(), n(-2), mi.clone(), o.clone()]);
    e.insert((2, 4), vec![i.clone(), -&j2, -&(&two * &ij), o.clone(), ij2.clone()]);
    e.insert((2, 5), vec![i.clone(), -&j, -&(&two * &ij2), o.clone(), ij.clone()]);
    e.insert((3, 4), vec![o.clone(), z.clone(), j2.clone(), z.clone(), j.clone()]);
    e.insert((3, 5), vec![o.clone(), z.clone(), j.clone(), z.clone(), j2.clone()]);
    e.insert((4, 5), ints(&[1, 0, 1, 0, 1], T));
    OzekiData { points, factors, e }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    /// theta(p_k) = c_k omega_k, as strings; None where not proportional.
    pub factors: Vec<Option<String>>,
    /// (p, q, lies in both kernels, kernels meet in a line)
    pub e_checks: Vec<(usize, usize, bool, bool)>,
    pub general_position: bool,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.factors.iter().all(|x| x.is_some()) && self.e_checks.iter().all(|c| c.2 && c.3) && self.general_position
    }
}

/// Check that theta(p_k) is proportional to omega_k and e_pq spans the
/// intersection of the kernels of omega_p and omega_q.
pub fn check_tables(theta: &ThetaTensor, data: &OzekiData) -> Result<TableReport> {
    let mut factors = Vec::new();
    for k in 0..5 {
        let t = contract(theta, &data.points[k])?;
        factors.push(t.ratio_to(&data.omega(k)).map(|c| c.to_string()));
    }
    let mut e_checks = Vec::new();
    for (&(p, q), e) in &data.e {
        let wp = data.omega(p - 1);
        let wq = data.omega(q - 1);
        let inside = wp.contract_left(e).iter().chain(wq.contract_left(e).iter()).all(|x| x.is_zero());
        let kp = wp.matrix().kernel_basis();
        let kq = wq.matrix().kernel_basis();
        let line = span_intersection(&kp, &kq, T).len() == 1;
        e_checks.push((p, q, inside, line));
    }
    let general_position = (0..5).all(|skip| {
        let four: Vec<Vec<Scalar>> = (0..5).filter(|&k| k != skip).map(|k| data.points[k].clone()).collect();
        rank_of(&four, T) == 4
    });
    Ok(TableReport { factors, e_checks, general_position })
}

/// Which omega_l is the image of each omega_k under C -> A^T C A.
fn induced_permutation(a: &ExactMatrix, omegas: &[SkewForm]) -> Option<Vec<usize>> {
    let mut out = Vec::new();
    for w in omegas {
        let img = w.pull_back(a).ok()?;
        let l = omegas.iter().position(|o| img.ratio_to(o).is_some())?;
        out.push(l);
    }
    let mut seen = out.clone();
    seen.sort();
    seen.dedup();
    (seen.len() == omegas.len()).then_some(out)
}

/// The matrix g4 with A^T theta_a A = sum_b g4[a][b] theta_b, if it exists.
fn v4_factor(theta: &ThetaTensor, a: &ExactMatrix) -> Result<Option<ExactMatrix>> {
    let tag = theta.tag();
    let cols: Vec<Vec<Scalar>> = theta.components().iter().map(super::plucker).collect();
    let m = ExactMatrix::from_fn(10, 4, tag, |r, c| cols[c][r].clone())?;
    let mut rows = Vec::new();
    for comp in theta.components() {
        let img = comp.pull_back(a)?;
        match m.solve(&super::plucker(&img))? {
            Some(x) => rows.push(x),
            None => return Ok(None),
        }
    }
    let g = ExactMatrix::from_rows(rows)?;
    Ok((g.rank() == 4).then_some(g))
}

fn is_scalar_matrix(m: &ExactMatrix) -> bool {
    let c = m.get(0, 0);
    !c.is_zero()
        && (0..m.rows()).all(|i| (0..m.cols()).all(|j| if i == j { m.get(i, j) == c } else { m.get(i, j).is_zero() }))
}

fn cycle_lift(conjugate: bool) -> ExactMatrix {
    let (i, j) = cyclotomic_units();
    let (i, j) = if conjugate { (i.conj(), j.conj()) } else { (i, j) };
    let j2 = &j * &j;
    let r = |n: i64, d: i64| Scalar::Cyclotomic12(crate::field::Cyclo12::from_rational(crate::field::rat(n, d)));
    let z = r(0, 1);
    let ij = &i * &j;
    let ij2 = &i * &j2;
    let rows = vec![
        vec![&j * &r(1, 3), &ij * &r(-2, 1), &j * &r(1, 3), -&ij, &j * &r(4, 3)],
        vec![&i * &r(-2, 3), r(-1, 1), &i * &r(1, 3), z.clone(), &i * &r(1, 3)],
        vec![&j2 * &r(4, 3), &ij2 * &r(4, 1), &j2 * &r(-2, 3), &ij2 * &r(-4, 1), &j2 * &r(4, 3)],
        vec![&ij * &r(-1, 3), z.clone(), &ij * &r(-1, 3), -&j, &ij * &r(2, 3)],
        vec![r(4, 3), i.clone(), r(1, 3), &i * &r(2, 1), r(1, 3)],
    ];
    ExactMatrix::from_rows(rows).expect("5x5")
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftReport {
    /// images of omega_1..omega_5 (1-based) under the sign change
    pub sign_permutation: Option<Vec<usize>>,
    pub sign_preserves_theta: bool,
    /// the printed matrix read with the same i, j as the tables
    pub cycle_permutation_literal: Option<Vec<usize>>,
    pub cycle_literal_preserves_theta: bool,
    pub cycle_literal_order_five: bool,
    /// the printed matrix with i, j replaced by their complex conjugates
    pub cycle_permutation_conjugate: Option<Vec<usize>>,
    pub cycle_conjugate_preserves_theta: bool,
    pub cycle_conjugate_order_five: bool,
}

impl LiftReport {
    /// Sign lift gives (12) and some reading of the 5-cycle lift gives (12345).
    pub fn passed(&self) -> bool {
        let shift: Vec<usize> = vec![2, 3, 4, 5, 1];
        self.sign_permutation.as_deref() == Some(&[2, 1, 3, 4, 5][..])
            && self.sign_preserves_theta
            && self.cycle_permutation_conjugate.as_deref() == Some(&shift[..])
            && self.cycle_conjugate_preserves_theta
            && self.cycle_conjugate_order_five
    }

    pub fn literal_matches(&self) -> bool {
        self.cycle_permutation_literal.as_deref() == Some(&[2, 3, 4, 5, 1][..])
    }
}

pub fn verify_lifts() -> Result<LiftReport> {
    let theta = ozeki_theta();
    let data = ozeki_data();
    let omegas = data.omegas();
    let one_based = |v: Option<Vec<usize>>| v.map(|x| x.into_iter().map(|k| k + 1).collect::<Vec<_>>());
    let eps = ExactMatrix::from_fn(5, 5, T, |a, b| {
        if a != b {
            Scalar::zero(T)
        } else if a % 2 == 0 {
            Scalar::one(T)
        } else {
            Scalar::from_int(-1, T)
        }
    })?;
    let lit = cycle_lift(false);
    let conj = cycle_lift(true);
    let fifth = |m: &ExactMatrix| -> Result<bool> {
        let mut p = m.clone();
        for _ in 0..4 {
            p = p.mul(m)?;
        }
        Ok(is_scalar_matrix(&p))
    };
    Ok(LiftReport {
        sign_permutation: one_based(induced_permutation(&eps, &omegas)),
        sign_preserves_theta: v4_factor(&theta, &eps)?.is_some(),
        cycle_permutation_literal: one_based(induced_permutation(&lit, &omegas)),
        cycle_literal_preserves_theta: v4_factor(&theta, &lit)?.is_some(),
        cycle_literal_order_five: fifth(&lit)?,
        cycle_permutation_conjugate: one_based(induced_permutation(&conj, &omegas)),
        cycle_conjugate_preserves_theta: v4_factor(&theta, &conj)?.is_some(),
        cycle_conjugate_order_five: fifth(&conj)?,
    })
}

/// The conjugate reading of the 5-cycle lift, for equivariance tests.
pub fn cycle_lift_matrix() -> ExactMatrix {
    cycle_lift(true)
}

/// The GL(V4) factor accompanying a V5 transformation that preserves theta.
pub fn v4_compensator(theta: &ThetaTensor, a: &ExactMatrix) -> Result<Option<ExactMatrix>> {
    v4_factor(theta, a)
}

#[derive(Clone, Debug, Serialize)]
pub struct PijkReport {
    pub all_points: bool,
    pub coincidences_hold: bool,
    pub distinct_points: usize,
    /// full incidence point in hyperplane pi_ab
    pub row_sums: Vec<usize>,
    pub column_sums: Vec<usize>,
    /// incidence restricted to p in pi_i, pi_i inside pi_il
    pub restricted_row_sums: Vec<usize>,
    pub restricted_column_sums: Vec<usize>,
    /// pi_ab contains the three p_{a..} and the three p_{b..}
    pub contains_own_points: bool,
    /// pi_ab holds exactly those six and the three p_{c,ab}
    pub full_contents_explained: bool,
}

impl PijkReport {
    pub fn points_ok(&self) -> bool {
        self.all_points && self.coincidences_hold && self.distinct_points == 15 && self.contains_own_points
    }

    /// The (15_4, 10_6) incidence, for the restricted incidence.
    pub fn restricted_is_15_4_10_6(&self) -> bool {
        self.restricted_row_sums.iter().all(|&r| r == 4) && self.restricted_column_sums.iter().all(|&c| c == 6)
    }

    /// The (15_4, 10_6) incidence, for plain containment.
    pub fn full_is_15_4_10_6(&self) -> bool {
        self.row_sums.iter().all(|&r| r == 4) && self.column_sums.iter().all(|&c| c == 6)
    }
}

/// p_ijk = pi_i meet (pi_j + pi_k) and its incidences with the pi_ab.
pub fn pijk_configuration() -> Result<PijkReport> {
    let data = ozeki_data();
    let plane = |k: usize| data.plane(k);
    let sum = |a: usize, b: usize| {
        let mut v = plane(a);
        v.extend(plane(b));
        v
    };
    let mut pts: BTreeMap<(usize, usize, usize), Vec<Scalar>> = BTreeMap::new();
    let mut all_points = true;
    for i in 0..5 {
        for j in 0..5 {
            for k in j + 1..5 {
                if i == j || i == k {
                    continue;
                }
                let meet = span_intersection(&plane(i), &sum(j, k), T);
                if meet.len() != 1 {
                    all_points = false;
                    continue;
                }
                pts.insert((i, j, k), meet[0].clone());
            }
        }
    }
    if !all_points {
        return Err(Error::Degenerate("some p_ijk is not a point".into()));
    }
    let mut coincidences_hold = true;
    for (&(i, j, k), p) in &pts {
        let rest: Vec<usize> = (0..5).filter(|x| ![i, j, k].contains(x)).collect();
        let q = &pts[&(i, rest[0], rest[1])];
        coincidences_hold &= same_point(p, q, T);
    }
    let mut classes: Vec<Vec<Scalar>> = Vec::new();
    let mut class_of: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    for (&key, p) in &pts {
        let c = match classes.iter().position(|q| same_point(p, q, T)) {
            Some(c) => c,
            None => {
                classes.push(p.clone());
                classes.len() - 1
            }
        };
        class_of.insert(key, c);
    }
    let hyper: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    let inc: Vec<Vec<bool>> = classes
        .iter()
        .map(|p| {
            hyper
                .iter()
                .map(|&(a, b)| {
                    let mut v = sum(a, b);
                    v.push(p.clone());
                    rank_of(&v, T) == 4
                })
                .collect()
        })
        .collect();
    let own = |cl: usize, a: usize, b: usize| class_of.iter().any(|(&(i, _, _), &x)| x == cl && (i == a || i == b));
    let split = |cl: usize, a: usize, b: usize| class_of.iter().any(|(&(_, j, k), &x)| x == cl && (j, k) == (a, b));
    let sums = |m: &dyn Fn(usize, usize) -> bool| {
        let rows = (0..classes.len()).map(|r| (0..hyper.len()).filter(|&c| m(r, c)).count()).collect();
        let cols = (0..hyper.len()).map(|c| (0..classes.len()).filter(|&r| m(r, c)).count()).collect();
        (rows, cols)
    };
    let (row_sums, column_sums) = sums(&|r, c| inc[r][c]);
    let (restricted_row_sums, restricted_column_sums) = sums(&|r, c| own(r, hyper[c].0, hyper[c].1));
    let contains_own_points = (0..classes.len()).all(|r| (0..hyper.len()).all(|c| !own(r, hyper[c].0, hyper[c].1) || inc[r][c]));
    let full_contents_explained = (0..classes.len()).all(|r| {
        (0..hyper.len()).all(|c| {
            let (a, b) = hyper[c];
            inc[r][c] == (own(r, a, b) || split(r, a, b))
        })
    });
    Ok(PijkReport {
        all_points,
        coincidences_hold,
        distinct_points: classes.len(),
        row_sums,
        column_sums,
        restricted_row_sums,
        restricted_column_sums,
        contains_own_points,
        full_contents_explained,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PlanesReport {
    pub planes_on_cubic: usize,
    pub pentad_ranks: Vec<usize>,
    pub pairwise_points: bool,
}

impl PlanesReport {
    pub fn passed(&self) -> bool {
        self.planes_on_cubic == 15 && self.pentad_ranks.iter().all(|&r| r == 3) && self.pairwise_points
    }
}

/// Restrict a polynomial on V5 to the span of three vectors.
pub fn restrict_to_span(f: &MultiPoly, span: &[Vec<Scalar>]) -> Result<MultiPoly> {
    let tag = f.tag();
    let k = span.len();
    let subs: Vec<MultiPoly> = (0..f.nvars())
        .map(|c| {
            let mut acc = MultiPoly::zero(k, tag);
            for (s, v) in span.iter().enumerate() {
                acc = acc.add(&MultiPoly::var(k, s, tag).scale(&v[c]))?;
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    f.compose(&subs)
}

/// The 10 planes P_pq and 5 planes P_p built from the e_pq lie on the cubic.
pub fn cremona_planes_check(cubic: &MultiPoly) -> Result<PlanesReport> {
    let data = ozeki_data();
    let mut planes: Vec<Vec<Vec<Scalar>>> = Vec::new();
    for p in 1..=5 {
        for q in p + 1..=5 {
            let c: Vec<usize> = (1..=5).filter(|x| *x != p && *x != q).collect();
            planes.push(vec![data.e_of(c[0], c[1]).clone(), data.e_of(c[1], c[2]).clone(), data.e_of(c[0], c[2]).clone()]);
        }
    }
    let mut pentad = Vec::new();
    let mut pentad_ranks = Vec::new();
    for p in 1..=5 {
        let vs: Vec<Vec<Scalar>> = (1..=5).filter(|&i| i != p).map(|i| data.e_of(i, p).clone()).collect();
        pentad_ranks.push(rank_of(&vs, T));
        pentad.push(vs);
    }
    planes.extend(pentad.iter().cloned());
    let mut planes_on_cubic = 0;
    for pl in &planes {
        let basis = super::span_basis(pl);
        if basis.len() == 3 && restrict_to_span(cubic, &basis)?.is_zero() {
            planes_on_cubic += 1;
        }
    }
    let mut pairwise_points = true;
    for a in 0..5 {
        for b in a + 1..5 {
            pairwise_points &= span_intersection(&pentad[a], &pentad[b], T).len() == 1;
        }
    }
    Ok(PlanesReport { planes_on_cubic, pentad_ranks, pairwise_points })
}
