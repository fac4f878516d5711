//! Sparse multivariate polynomials over a [`Scalar`] field.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{promote, FieldTag, Scalar};

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    tag: FieldTag,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(nvars: usize, tag: FieldTag) -> Self {
        MultiPoly { nvars, tag, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(nvars, c.tag());
        p.add_term(Monomial(vec![0; nvars]), c);
        p
    }

    pub fn var(nvars: usize, k: usize, tag: FieldTag) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        let mut p = Self::zero(nvars, tag);
        p.add_term(Monomial(e), Scalar::one(tag));
        p
    }

    pub fn from_terms(nvars: usize, tag: FieldTag, terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>) -> Result<Self> {
        let mut p = Self::zero(nvars, tag);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::Dimension("exponent length".into()));
            }
            if c.tag() != tag {
                return Err(Error::FieldMismatch(tag, c.tag()));
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u32]) -> Scalar {
        self.terms
            .get(&Monomial(e.to_vec()))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.tag))
    }

    /// Total degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut d = self.terms.keys().map(|m| m.degree());
        match d.next() {
            None => true,
            Some(first) => d.all(|x| x == first),
        }
    }

    fn compatible(&self, o: &Self) -> Result<()> {
        if self.tag != o.tag {
            return Err(Error::FieldMismatch(self.tag, o.tag));
        }
        if self.nvars != o.nvars {
            return Err(Error::Dimension("variable count".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&Scalar::from_int(-1, o.tag)))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut r = Self::zero(self.nvars, self.tag);
        for (m, c) in &self.terms {
            r.add_term(m.clone(), c * s);
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        let mut r = Self::zero(self.nvars, self.tag);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let e = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                r.add_term(Monomial(e), ca * cb);
            }
        }
        Ok(r)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::constant(self.nvars, Scalar::one(self.tag));
        for _ in 0..k {
            r = r.mul(self).expect("same ring");
        }
        r
    }

    pub fn eval(&self, x: &[Scalar]) -> Result<Scalar> {
        if x.len() != self.nvars {
            return Err(Error::Dimension("point length".into()));
        }
        for s in x {
            if s.tag() != self.tag {
                return Err(Error::FieldMismatch(self.tag, s.tag()));
            }
        }
        let mut acc = Scalar::zero(self.tag);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (k, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &x[k].pow(e);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    pub fn derivative(&self, k: usize) -> Self {
        let mut r = Self::zero(self.nvars, self.tag);
        for (m, c) in &self.terms {
            let e = m.0[k];
            if e == 0 {
                continue;
            }
            let mut n = m.0.clone();
            n[k] -= 1;
            r.add_term(Monomial(n), c * &Scalar::from_int(e as i64, self.tag));
        }
        r
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.nvars).map(|k| self.derivative(k)).collect()
    }

    /// Substitute a polynomial for each variable.
    pub fn compose(&self, subs: &[MultiPoly]) -> Result<Self> {
        if subs.len() != self.nvars {
            return Err(Error::Dimension("substitution length".into()));
        }
        let n = subs.first().map_or(0, |p| p.nvars);
        let mut r = Self::zero(n, self.tag);
        for (m, c) in &self.terms {
            let mut t = Self::constant(n, c.clone());
            for (k, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&subs[k].pow(e))?;
                }
            }
            r = r.add(&t)?;
        }
        Ok(r)
    }

    /// Apply the ring map Q -> target coefficientwise.
    pub fn promote(&self, target: FieldTag) -> Result<Self> {
        let mut r = Self::zero(self.nvars, target);
        for (m, c) in &self.terms {
            r.add_term(m.clone(), promote(c, target)?);
        }
        Ok(r)
    }

    /// Is `self` a scalar multiple of `o` (both nonzero)?
    pub fn proportional(&self, o: &Self) -> bool {
        if self.is_zero() || o.is_zero() || self.tag != o.tag {
            return self.is_zero() && o.is_zero();
        }
        let (m, c) = self.terms.iter().next().unwrap();
        let Some(d) = o.terms.get(m) else { return false };
        let ratio = c / d;
        o.scale(&ratio) == *self
    }
}

/// All exponent vectors of total degree d in n variables, graded-lex order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n - 1 {
            cur.push(d);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=d).rev() {
            cur.push(e);
            rec(n, d - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| Monomial(a.clone()).cmp(&Monomial(b.clone())));
    out
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut s = format!("({c})");
            for (k, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => s.push_str(&format!("*x{}", k + 1)),
                    _ => s.push_str(&format!("*x{}^{}", k + 1, e)),
                }
            }
            parts.push(s);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_cancellation() {
        let t = FieldTag::Rational;
        let x = MultiPoly::var(2, 0, t);
        let y = MultiPoly::var(2, 1, t);
        let a = x.add(&y).unwrap().pow(2);
        let b = x.pow(2).add(&y.pow(2)).unwrap();
        let d = a.sub(&b).unwrap();
        assert_eq!(d.num_terms(), 1);
        assert_eq!(d.coeff(&[1, 1]), Scalar::q(2, 1));
        assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn cubic_monomial_count() {
        assert_eq!(monomials_of_degree(5, 3).len(), 35);
        assert_eq!(monomials_of_degree(5, 2).len(), 15);
    }
}
