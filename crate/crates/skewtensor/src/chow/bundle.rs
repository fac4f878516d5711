//! Tautological bundle expressions and their Chern classes, computed through
//! the Chern character.

use num::{BigRational, One, Zero};
use serde::Serialize;

use super::schubert::{ChowElement, Grassmannian};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BundleExpr {
    /// tautological subbundle of factor i
    Sub(usize),
    /// tautological quotient of factor i
    Quot(usize),
    Trivial(usize),
    /// tensor product of (det Sub(i)^*)^(a_i)
    Line(Vec<i64>),
    Dual(Box<BundleExpr>),
    Sum(Box<BundleExpr>, Box<BundleExpr>),
    Tensor(Box<BundleExpr>, Box<BundleExpr>),
    Wedge(usize, Box<BundleExpr>),
    Sym(usize, Box<BundleExpr>),
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl BundleExpr {
    pub fn sub(f: usize) -> Self {
        BundleExpr::Sub(f)
    }
    pub fn quot(f: usize) -> Self {
        BundleExpr::Quot(f)
    }
    pub fn dual(self) -> Self {
        BundleExpr::Dual(Box::new(self))
    }
    pub fn plus(self, o: Self) -> Self {
        BundleExpr::Sum(Box::new(self), Box::new(o))
    }
    pub fn times(self, o: Self) -> Self {
        BundleExpr::Tensor(Box::new(self), Box::new(o))
    }
    pub fn wedge(self, k: usize) -> Self {
        BundleExpr::Wedge(k, Box::new(self))
    }
    pub fn sym(self, k: usize) -> Self {
        BundleExpr::Sym(k, Box::new(self))
    }

    /// Tangent bundle of factor f: Sub(f)^* (x) Quot(f).
    pub fn tangent(f: usize) -> Self {
        Self::sub(f).dual().times(Self::quot(f))
    }

    pub fn rank(&self, amb: &[Grassmannian]) -> Result<usize> {
        Ok(match self {
            BundleExpr::Sub(f) => factor(amb, *f)?.k,
            BundleExpr::Quot(f) => {
                let g = factor(amb, *f)?;
                g.n - g.k
            }
            BundleExpr::Trivial(r) => *r,
            BundleExpr::Line(_) => 1,
            BundleExpr::Dual(e) => e.rank(amb)?,
            BundleExpr::Sum(a, b) => a.rank(amb)? + b.rank(amb)?,
            BundleExpr::Tensor(a, b) => a.rank(amb)? * b.rank(amb)?,
            BundleExpr::Wedge(k, e) => binom(e.rank(amb)?, *k),
            BundleExpr::Sym(k, e) => {
                let r = e.rank(amb)?;
                if r == 0 {
                    usize::from(*k == 0)
                } else {
                    binom(r + k - 1, *k)
                }
            }
        })
    }

    /// Chern character, truncated at the ambient dimension.
    pub fn ch(&self, amb: &[Grassmannian]) -> Result<ChowElement> {
        match self {
            BundleExpr::Sub(f) | BundleExpr::Quot(f) => {
                let g = factor(amb, *f)?;
                let c = taut_chern(amb, *f, matches!(self, BundleExpr::Sub(_)))?;
                let rank = if matches!(self, BundleExpr::Sub(_)) { g.k } else { g.n - g.k };
                ch_from_chern(&c, rank)
            }
            BundleExpr::Trivial(r) => Ok(ChowElement::constant(amb, q(*r as i64))),
            BundleExpr::Line(a) => {
                if a.len() != amb.len() {
                    return Err(Error::AmbientMismatch(format!("line bundle {a:?} on {} factors", amb.len())));
                }
                let mut c1 = ChowElement::zero(amb);
                for (f, &x) in a.iter().enumerate() {
                    c1 = c1.add(&ChowElement::h(amb, f).scale_int(x))?;
                }
                Ok(exp(&c1))
            }
            BundleExpr::Dual(e) => Ok(adams(&e.ch(amb)?, -1)),
            BundleExpr::Sum(a, b) => a.ch(amb)?.add(&b.ch(amb)?),
            BundleExpr::Tensor(a, b) => a.ch(amb)?.mul(&b.ch(amb)?),
            BundleExpr::Wedge(k, e) => Ok(lambda_powers(&e.ch(amb)?, *k, false)?.pop().expect("k+1 entries")),
            BundleExpr::Sym(k, e) => Ok(lambda_powers(&e.ch(amb)?, *k, true)?.pop().expect("k+1 entries")),
        }
    }

    pub fn chern(&self, amb: &[Grassmannian]) -> Result<ChowElement> {
        chern_from_ch(&self.ch(amb)?)
    }

    pub fn segre(&self, amb: &[Grassmannian]) -> Result<ChowElement> {
        self.chern(amb)?.inverse()
    }

    pub fn chern_class(&self, amb: &[Grassmannian], i: usize) -> Result<ChowElement> {
        Ok(self.chern(amb)?.part(i))
    }
}

fn factor(amb: &[Grassmannian], f: usize) -> Result<Grassmannian> {
    amb.get(f).copied().ok_or_else(|| Error::AmbientMismatch(format!("no factor {f}")))
}

/// c(U) = sum (-1)^i sigma_{1^i}, c(Q) = sum sigma_i.
pub fn taut_chern(amb: &[Grassmannian], f: usize, sub: bool) -> Result<ChowElement> {
    let g = factor(amb, f)?;
    let mut c = ChowElement::one(amb);
    if sub {
        for i in 1..=g.k {
            let s = ChowElement::sigma(amb, f, &vec![1; i])?;
            c = c.add(&s.scale_int(if i % 2 == 0 { 1 } else { -1 }))?;
        }
    } else {
        for i in 1..=g.n - g.k {
            c = c.add(&ChowElement::sigma(amb, f, &[i])?)?;
        }
    }
    Ok(c)
}

fn factorial(n: usize) -> BigRational {
    (1..=n as i64).fold(BigRational::one(), |a, x| a * q(x))
}

/// Power sums p_d from elementary e_d (Newton), then ch_d = p_d / d!.
pub fn ch_from_chern(c: &ChowElement, rank: usize) -> Result<ChowElement> {
    let amb = c.ambient().to_vec();
    let n = c.dim();
    let e: Vec<ChowElement> = (0..=n).map(|d| c.part(d)).collect();
    let mut p: Vec<ChowElement> = vec![ChowElement::constant(&amb, q(rank as i64))];
    for d in 1..=n {
        let mut acc = e[d].scale_int(if d % 2 == 1 { d as i64 } else { -(d as i64) });
        for i in 1..d {
            let t = e[i].mul(&p[d - i])?;
            acc = acc.add(&t.scale_int(if i % 2 == 1 { 1 } else { -1 }))?;
        }
        p.push(acc);
    }
    let mut ch = ChowElement::zero(&amb);
    for (d, pd) in p.iter().enumerate() {
        ch = ch.add(&pd.scale(&(BigRational::one() / factorial(d))))?;
    }
    Ok(ch)
}

pub fn chern_from_ch(ch: &ChowElement) -> Result<ChowElement> {
    let amb = ch.ambient().to_vec();
    let n = ch.dim();
    let p: Vec<ChowElement> = (0..=n).map(|d| ch.part(d).scale(&factorial(d))).collect();
    let mut e = vec![ChowElement::one(&amb)];
    for k in 1..=n {
        let mut acc = ChowElement::zero(&amb);
        for i in 1..=k {
            let t = e[k - i].mul(&p[i])?;
            acc = acc.add(&t.scale_int(if i % 2 == 1 { 1 } else { -1 }))?;
        }
        e.push(acc.scale(&(BigRational::one() / q(k as i64))));
    }
    let mut c = ChowElement::zero(&amb);
    for x in e {
        c = c.add(&x)?;
    }
    Ok(c)
}

/// psi^j on a Chern character: degree d part scaled by j^d.
pub fn adams(ch: &ChowElement, j: i64) -> ChowElement {
    let mut out = ChowElement::zero(ch.ambient());
    for d in 0..=ch.dim() {
        out = out.add(&ch.part(d).scale(&q(j.pow(d as u32)))).expect("same ambient");
    }
    out
}

pub fn exp(x: &ChowElement) -> ChowElement {
    let mut acc = ChowElement::one(x.ambient());
    let mut term = ChowElement::one(x.ambient());
    for d in 1..=x.dim() {
        term = term.mul(x).expect("same ambient").scale(&(BigRational::one() / q(d as i64)));
        acc = acc.add(&term).expect("same ambient");
    }
    acc
}

/// ch of Lambda^0..Lambda^k (or S^0..S^k) by Newton's identities in the Adams operations.
fn lambda_powers(ch: &ChowElement, k: usize, sym: bool) -> Result<Vec<ChowElement>> {
    let amb = ch.ambient().to_vec();
    let psi: Vec<ChowElement> = (0..=k).map(|j| adams(ch, j as i64)).collect();
    let mut out = vec![ChowElement::one(&amb)];
    for m in 1..=k {
        let mut acc = ChowElement::zero(&amb);
        for j in 1..=m {
            let t = psi[j].mul(&out[m - j])?;
            let sign = if sym || j % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&t.scale_int(sign))?;
        }
        out.push(acc.scale(&(BigRational::one() / q(m as i64))));
    }
    Ok(out)
}

/// rank read off from ch_0
pub fn ch_rank(ch: &ChowElement) -> BigRational {
    ch.coeff(&vec![Vec::new(); ch.ambient().len()])
}

pub fn is_zero_class(c: &ChowElement) -> bool {
    c.terms().values().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    const G25: [Grassmannian; 1] = [Grassmannian::new(2, 5)];

    #[test]
    fn quotient_chern_class() {
        let c = BundleExpr::quot(0).chern(&G25).unwrap();
        assert_eq!(c, taut_chern(&G25, 0, false).unwrap());
        assert_eq!(c.to_string(), "1 + s1 + s2 + s3");
        let u = BundleExpr::sub(0).chern(&G25).unwrap();
        assert_eq!(u.to_string(), "1 - s1 + s11");
    }

    #[test]
    fn ranks() {
        let e = BundleExpr::sub(0).dual().sym(2).plus(BundleExpr::quot(0).wedge(2));
        assert_eq!(e.rank(&G25).unwrap(), 6);
        assert_eq!(ch_rank(&e.ch(&G25).unwrap()), q(6));
    }

    #[test]
    fn segre_numbers_on_g25() {
        let s14 = ChowElement::h(&G25, 0).pow(4);
        let s2q = BundleExpr::quot(0).segre(&G25).unwrap().part(2);
        assert_eq!(s2q.mul(&s14).unwrap().integrate(), q(2));
        // W ^ V5 sits in 0 -> Lambda^2 W -> W ^ V5 -> W (x) Q -> 0
        let wv = BundleExpr::sub(0).wedge(2).plus(BundleExpr::sub(0).times(BundleExpr::quot(0)));
        let s2 = wv.segre(&G25).unwrap().part(2);
        assert_eq!(s2.mul(&s14).unwrap().integrate(), q(8));
        let alt = BundleExpr::quot(0).chern(&G25).unwrap().pow(5).mul(&BundleExpr::sub(0).sym(2).chern(&G25).unwrap()).unwrap();
        assert_eq!(alt.part(2), s2);
    }
}
