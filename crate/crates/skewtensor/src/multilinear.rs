//! Skew forms on V5, the tensor theta in V4* (x) Lambda^2 V5*, its
//! contractions and pencils.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldTag, Scalar};
use crate::matrix::{rank_of, ExactMatrix};

/// An alternating matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewForm(ExactMatrix);

impl SkewForm {
    pub fn new(m: ExactMatrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::Dimension("skew form must be square".into()));
        }
        for i in 0..m.rows() {
            if !m.get(i, i).is_zero() {
                return Err(Error::Inconsistent("diagonal of a skew form".into()));
            }
            for j in 0..i {
                if !(m.get(i, j) + m.get(j, i)).is_zero() {
                    return Err(Error::Inconsistent("matrix is not alternating".into()));
                }
            }
        }
        Ok(SkewForm(m))
    }

    pub fn zero(n: usize, tag: FieldTag) -> Self {
        SkewForm(ExactMatrix::zeros(n, n, tag))
    }

    /// f_a^* wedge f_b^* (0-based indices).
    pub fn elementary(n: usize, a: usize, b: usize, tag: FieldTag) -> Self {
        let mut m = ExactMatrix::zeros(n, n, tag);
        m.set(a, b, Scalar::one(tag));
        m.set(b, a, Scalar::from_int(-1, tag));
        SkewForm(m)
    }

    /// l1 wedge l2 for two linear forms given by coordinates.
    pub fn wedge(l1: &[Scalar], l2: &[Scalar]) -> Result<Self> {
        let n = l1.len();
        let tag = l1[0].tag();
        let m = ExactMatrix::from_fn(n, n, tag, |i, j| &(&l1[i] * &l2[j]) - &(&l1[j] * &l2[i]))?;
        Ok(SkewForm(m))
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn tag(&self) -> FieldTag {
        self.0.tag()
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        Ok(SkewForm(self.0.add(&o.0)?))
    }

    pub fn scale(&self, s: &Scalar) -> Result<Self> {
        Ok(SkewForm(self.0.scale(s)?))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// omega(x, y).
    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let my = self.0.mul_vec(y).expect("vector in the form's field");
        x.iter().zip(&my).fold(Scalar::zero(self.tag()), |acc, (a, b)| &acc + &(a * b))
    }

    /// omega(x, .) as a linear form.
    pub fn contract_left(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.0.transpose().mul_vec(x).expect("vector in the form's field")
    }

    /// g^T M g, i.e. the form pulled back along x -> g x.
    pub fn pull_back(&self, g: &ExactMatrix) -> Result<Self> {
        Ok(SkewForm(g.transpose().mul(&self.0)?.mul(g)?))
    }

    /// Is `self` a nonzero multiple of `o`? Returns the factor c with self = c o.
    pub fn ratio_to(&self, o: &Self) -> Option<Scalar> {
        let n = self.dim();
        let mut c: Option<Scalar> = None;
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (self.0.get(i, j), o.0.get(i, j));
                match (a.is_zero(), b.is_zero()) {
                    (true, true) => {}
                    (false, false) => {
                        let r = a / b;
                        match &c {
                            None => c = Some(r),
                            Some(c0) if *c0 == r => {}
                            _ => return None,
                        }
                    }
                    _ => return None,
                }
            }
        }
        c
    }
}

/// Pfaffian of the 4x4 principal minor on indices a < b < c < d.
fn pf4(m: &ExactMatrix, idx: [usize; 4]) -> Scalar {
    let [a, b, c, d] = idx;
    let t1 = m.get(a, b) * m.get(c, d);
    let t2 = m.get(a, c) * m.get(b, d);
    let t3 = m.get(a, d) * m.get(b, c);
    &(&t1 - &t2) + &t3
}

/// The vector w with f_k^* wedge omega wedge omega = w_k vol, for the volume
/// form f_1 ^ ... ^ f_5 -> 1. Zero iff rank <= 2; spans the kernel in rank 4.
pub fn wedge_square(w: &SkewForm) -> Vec<Scalar> {
    assert_eq!(w.dim(), 5, "wedge_square is defined on V5");
    let m = w.matrix();
    let tag = w.tag();
    (0..5)
        .map(|k| {
            let idx: Vec<usize> = (0..5).filter(|&x| x != k).collect();
            let pf = pf4(m, [idx[0], idx[1], idx[2], idx[3]]);
            let sign = if k % 2 == 0 { 2 } else { -2 };
            &pf * &Scalar::from_int(sign, tag)
        })
        .collect()
}

/// h wedge alpha wedge beta / vol for a linear form h and two skew forms,
/// symmetric in alpha and beta. Q_h(v) = pairing(h, theta(v), theta(v)).
pub fn wedge_pairing(h: &[Scalar], a: &SkewForm, b: &SkewForm) -> Scalar {
    // (a wedge b) has coefficients c_{k} on f_{1..k^..5}; the polarization of
    // wedge_square gives them: a^b = (w(a+b) - w(a) - w(b)) / 2 in vector form.
    let tag = a.tag();
    let ab = a.add(b).expect("same field");
    let wab = wedge_square(&ab);
    let wa = wedge_square(a);
    let wb = wedge_square(b);
    let half = Scalar::from_int(2, tag).inv().expect("char != 2");
    let mut acc = Scalar::zero(tag);
    for k in 0..5 {
        let v = &(&(&wab[k] - &wa[k]) - &wb[k]) * &half;
        acc = &acc + &(&h[k] * &v);
    }
    acc
}

/// Rank as an alternating form.
pub fn pfaffian_rank(w: &SkewForm) -> usize {
    let r = w.matrix().rank();
    assert!(r % 2 == 0, "odd rank for an alternating matrix");
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PencilClass {
    O7ConstantRank,
    O6OneRank2,
    O5TwoRank2,
    Deeper,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiveTerm {
    pub omegas: Vec<SkewForm>,
    pub u_duals: Vec<Vec<Scalar>>,
}

/// theta as four skew forms theta_1..theta_4 on V5.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaTensor {
    comps: Vec<SkewForm>,
    five_term: Option<FiveTerm>,
}

impl ThetaTensor {
    pub fn new(comps: Vec<SkewForm>) -> Result<Self> {
        if comps.len() != 4 {
            return Err(Error::Dimension(format!("expected 4 components, got {}", comps.len())));
        }
        let tag = comps[0].tag();
        for c in &comps {
            if c.dim() != 5 {
                return Err(Error::Dimension("components must be 5x5".into()));
            }
            if c.tag() != tag {
                return Err(Error::FieldMismatch(tag, c.tag()));
            }
        }
        Ok(ThetaTensor { comps, five_term: None })
    }

    /// Attach a presentation theta = sum_k u_k^* (x) omega_k with both sums zero.
    pub fn with_five_term(mut self, ft: FiveTerm) -> Result<Self> {
        let tag = self.tag();
        if ft.omegas.len() != 5 || ft.u_duals.len() != 5 {
            return Err(Error::Dimension("five-term presentation needs 5 terms".into()));
        }
        let mut sum = SkewForm::zero(5, tag);
        for w in &ft.omegas {
            sum = sum.add(w)?;
        }
        if !sum.is_zero() {
            return Err(Error::Inconsistent("sum of omega_k is not zero".into()));
        }
        for a in 0..4 {
            let s = ft.u_duals.iter().fold(Scalar::zero(tag), |acc, u| &acc + &u[a]);
            if !s.is_zero() {
                return Err(Error::Inconsistent("sum of u_k^* is not zero".into()));
            }
            let mut comp = SkewForm::zero(5, tag);
            for k in 0..5 {
                comp = comp.add(&ft.omegas[k].scale(&ft.u_duals[k][a])?)?;
            }
            if comp != self.comps[a] {
                return Err(Error::Inconsistent(format!("five-term presentation differs in component {}", a + 1)));
            }
        }
        self.five_term = Some(ft);
        Ok(self)
    }

    pub fn five_term(&self) -> Option<&FiveTerm> {
        self.five_term.as_ref()
    }

    pub fn tag(&self) -> FieldTag {
        self.comps[0].tag()
    }

    pub fn component(&self, a: usize) -> &SkewForm {
        &self.comps[a]
    }

    pub fn components(&self) -> &[SkewForm] {
        &self.comps
    }

    /// Apply (g4, g5): components recombined by g4 (rows index new components)
    /// and each form pulled back by g5.
    pub fn transform(&self, g4: &ExactMatrix, g5: &ExactMatrix) -> Result<Self> {
        let tag = self.tag();
        let mut comps = Vec::new();
        for a in 0..4 {
            let mut c = SkewForm::zero(5, tag);
            for b in 0..4 {
                c = c.add(&self.comps[b].scale(g4.get(a, b))?)?;
            }
            comps.push(c.pull_back(g5)?);
        }
        ThetaTensor::new(comps)
    }

    /// theta_a(x, y) for all a.
    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.comps.iter().map(|c| c.eval(x, y)).collect()
    }
}

/// sum_i v_i theta_i.
pub fn contract(theta: &ThetaTensor, v: &[Scalar]) -> Result<SkewForm> {
    if v.len() != 4 {
        return Err(Error::Dimension("V4 vector has 4 coordinates".into()));
    }
    let mut acc = SkewForm::zero(5, theta.tag());
    for (c, x) in theta.comps.iter().zip(v) {
        if x.tag() != theta.tag() {
            return Err(Error::FieldMismatch(theta.tag(), x.tag()));
        }
        acc = acc.add(&c.scale(x)?)?;
    }
    Ok(acc)
}

// ---- binary forms -------------------------------------------------------

/// Univariate polynomial, low degree first, no trailing zeros.
type UPoly = Vec<Scalar>;

fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(|x| x.is_zero()) {
        p.pop();
    }
    p
}

fn upoly_rem(a: &UPoly, b: &UPoly) -> UPoly {
    let mut r = a.clone();
    let lead_inv = b.last().unwrap().inv().unwrap();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() * &lead_inv;
        for (k, c) in b.iter().enumerate() {
            r[shift + k] = &r[shift + k] - &(&f * c);
        }
        r = trim(r);
    }
    r
}

fn upoly_gcd(a: UPoly, b: UPoly) -> UPoly {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = upoly_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Distinct projective roots of the gcd of binary quadrics a s^2 + b s t + c t^2.
/// None when every quadric vanishes.
fn gcd_roots(quads: &[[Scalar; 3]]) -> Option<usize> {
    let nonzero: Vec<&[Scalar; 3]> = quads.iter().filter(|q| q.iter().any(|x| !x.is_zero())).collect();
    if nonzero.is_empty() {
        return None;
    }
    // t = 1 dehomogenization: a x^2 + b x + c
    let mut g: UPoly = Vec::new();
    let mut inf_mult = 2;
    for q in &nonzero {
        let f = trim(vec![q[2].clone(), q[1].clone(), q[0].clone()]);
        inf_mult = inf_mult.min(2 - (f.len() - 1));
        g = upoly_gcd(g, f);
    }
    let deg = g.len().saturating_sub(1);
    let finite = match deg {
        0 => 0,
        1 => 1,
        _ => {
            let disc = &(&g[1] * &g[1]) - &(&Scalar::from_int(4, g[0].tag()) * &(&g[2] * &g[0]));
            if disc.is_zero() {
                1
            } else {
                2
            }
        }
    };
    Some(finite + usize::from(inf_mult > 0))
}

fn check_plane(u: &[Vec<Scalar>], tag: FieldTag) -> Result<()> {
    if u.len() != 2 || rank_of(u, tag) != 2 {
        return Err(Error::Dimension("U must be a 2-plane".into()));
    }
    Ok(())
}

pub fn classify_pencil(theta: &ThetaTensor, u: &[Vec<Scalar>]) -> Result<PencilClass> {
    check_plane(u, theta.tag())?;
    let t1 = contract(theta, &u[0])?;
    let t2 = contract(theta, &u[1])?;
    let a = wedge_square(&t1);
    let c = wedge_square(&t2);
    let ab = wedge_square(&t1.add(&t2)?);
    let quads: Vec<[Scalar; 3]> = (0..5)
        .map(|k| [a[k].clone(), &(&ab[k] - &a[k]) - &c[k], c[k].clone()])
        .collect();
    Ok(match gcd_roots(&quads) {
        None => PencilClass::Deeper,
        Some(0) => PencilClass::O7ConstantRank,
        Some(1) => PencilClass::O6OneRank2,
        Some(2) => PencilClass::O5TwoRank2,
        Some(_) => PencilClass::Deeper,
    })
}

/// The 3-space spanned by the kernels of the forms in an O7 pencil.
pub fn isotropic_3space(theta: &ThetaTensor, u: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let class = classify_pencil(theta, u)?;
    if class != PencilClass::O7ConstantRank {
        return Err(Error::AmbiguousFiber(format!("pencil of type {class:?}")));
    }
    let sum: Vec<Scalar> = u[0].iter().zip(&u[1]).map(|(a, b)| a + b).collect();
    let vs: Vec<Vec<Scalar>> = [&u[0], &u[1], &sum]
        .iter()
        .map(|x| contract(theta, x).map(|f| wedge_square(&f)))
        .collect::<Result<_>>()?;
    if rank_of(&vs, theta.tag()) != 3 {
        return Err(Error::Degenerate("kernels span less than a 3-space".into()));
    }
    Ok(vs)
}

/// The models X0..X8' as zero loci on a product of Grassmannians.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModelId {
    X0,
    X1,
    X2,
    X3,
    X4,
    X6,
    X8,
    X8p,
}

impl ModelId {
    pub const ALL: [ModelId; 8] = [
        ModelId::X0,
        ModelId::X1,
        ModelId::X2,
        ModelId::X3,
        ModelId::X4,
        ModelId::X6,
        ModelId::X8,
        ModelId::X8p,
    ];

    /// (dim A in V4, dim B in V5).
    pub fn dims(self) -> (usize, usize) {
        match self {
            ModelId::X0 => (2, 1),
            ModelId::X1 => (1, 4),
            ModelId::X2 => (4, 2),
            ModelId::X3 => (1, 1),
            ModelId::X4 => (2, 3),
            ModelId::X6 => (1, 3),
            ModelId::X8 => (1, 2),
            ModelId::X8p => (2, 2),
        }
    }

    /// True for the family theta(A)(B, V5) = 0, false for theta(A)(B, B) = 0.
    pub fn is_kernel_type(self) -> bool {
        matches!(self, ModelId::X0 | ModelId::X3)
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelId::X0 => "X0",
            ModelId::X1 => "X1",
            ModelId::X2 => "X2",
            ModelId::X3 => "X3",
            ModelId::X4 => "X4",
            ModelId::X6 => "X6",
            ModelId::X8 => "X8",
            ModelId::X8p => "X8'",
        }
    }
}

pub fn model_member(model: ModelId, theta: &ThetaTensor, a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Result<bool> {
    let tag = theta.tag();
    let (da, db) = model.dims();
    if a.len() != da || rank_of(a, tag) != da || a.iter().any(|x| x.len() != 4) {
        return Err(Error::Dimension(format!("{} needs a {da}-dimensional subspace of V4", model.name())));
    }
    if b.len() != db || rank_of(b, tag) != db || b.iter().any(|x| x.len() != 5) {
        return Err(Error::Dimension(format!("{} needs a {db}-dimensional subspace of V5", model.name())));
    }
    for x in a {
        let f = contract(theta, x)?;
        if model.is_kernel_type() {
            for y in b {
                if f.contract_left(y).iter().any(|s| !s.is_zero()) {
                    return Ok(false);
                }
            }
        } else {
            for (i, y) in b.iter().enumerate() {
                for z in &b[i + 1..] {
                    if !f.eval(y, z).is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::q(n, 1)
    }

    #[test]
    fn wedge_square_of_standard_forms() {
        let t = FieldTag::Rational;
        let f12 = SkewForm::elementary(5, 0, 1, t);
        assert!(wedge_square(&f12).iter().all(|x| x.is_zero()));
        let w = f12.add(&SkewForm::elementary(5, 2, 3, t)).unwrap();
        let k = wedge_square(&w);
        assert_eq!(k, vec![q(0), q(0), q(0), q(0), q(2)]);
        assert!(w.contract_left(&k).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn degenerate_pencil_is_deeper() {
        let t = FieldTag::Rational;
        let z = SkewForm::zero(5, t);
        let theta = ThetaTensor::new(vec![SkewForm::elementary(5, 0, 1, t), z.clone(), z.clone(), z]).unwrap();
        let u = vec![vec![q(1), q(0), q(0), q(0)], vec![q(0), q(1), q(0), q(0)]];
        assert_eq!(classify_pencil(&theta, &u).unwrap(), PencilClass::Deeper);
    }
}
