//! Schubert classes, the Littlewood-Richardson rule, and Chow rings of
//! products of Grassmannians.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num::{BigRational, One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type Partition = Vec<usize>;

pub fn trim(mut l: Partition) -> Partition {
    while l.last() == Some(&0) {
        l.pop();
    }
    l
}

pub fn size(l: &[usize]) -> usize {
    l.iter().sum()
}

pub fn transpose(l: &[usize]) -> Partition {
    let w = l.first().copied().unwrap_or(0);
    (1..=w).map(|c| l.iter().filter(|&&x| x >= c).count()).collect()
}

/// All partitions of d with at most `rows` parts, each at most `cols`.
pub fn partitions_in_box(d: usize, rows: usize, cols: usize) -> Vec<Partition> {
    fn go(d: usize, rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if d == 0 {
            out.push(cur.clone());
            return;
        }
        if rows == 0 {
            return;
        }
        for x in (1..=max.min(d)).rev() {
            cur.push(x);
            go(d - x, rows - 1, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, rows, cols, &mut Vec::new(), &mut out);
    out
}

/// Number of LR tableaux of shape nu/lam and content mu.
pub fn lr_coefficient(lam: &[usize], mu: &[usize], nu: &[usize]) -> u64 {
    if size(nu) != size(lam) + size(mu) || lam.len() > nu.len() || lam.iter().zip(nu).any(|(a, b)| a > b) {
        return 0;
    }
    let lam_at = |r: usize| lam.get(r).copied().unwrap_or(0);
    // cells in reading order: rows top to bottom, right to left
    let mut cells = Vec::new();
    for r in 0..nu.len() {
        for c in (lam_at(r)..nu[r]).rev() {
            cells.push((r, c));
        }
    }
    let width = nu.first().copied().unwrap_or(0);
    let mut t = vec![vec![0usize; width]; nu.len()];
    let mut counts = vec![0usize; mu.len() + 1];

    fn fill(
        i: usize,
        cells: &[(usize, usize)],
        t: &mut Vec<Vec<usize>>,
        counts: &mut Vec<usize>,
        mu: &[usize],
        nu: &[usize],
        lam: &dyn Fn(usize) -> usize,
    ) -> u64 {
        if i == cells.len() {
            return 1;
        }
        let (r, c) = cells[i];
        let mut total = 0;
        for v in 1..=mu.len() {
            if counts[v] >= mu[v - 1] || (v > 1 && counts[v - 1] <= counts[v]) {
                continue;
            }
            if c + 1 < nu[r] && v > t[r][c + 1] {
                continue;
            }
            if r > 0 && c >= lam(r - 1) && c < nu[r - 1] && v <= t[r - 1][c] {
                continue;
            }
            t[r][c] = v;
            counts[v] += 1;
            total += fill(i + 1, cells, t, counts, mu, nu, lam);
            counts[v] -= 1;
            t[r][c] = 0;
        }
        total
    }
    fill(0, &cells, &mut t, &mut counts, mu, nu, &lam_at)
}

type LrKey = (Partition, Partition, usize, usize);

fn lr_cache() -> &'static Mutex<HashMap<LrKey, Vec<(Partition, u64)>>> {
    static CACHE: OnceLock<Mutex<HashMap<LrKey, Vec<(Partition, u64)>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// s_lam * s_mu restricted to partitions with at most `rows` rows and `cols` columns.
pub fn lr_product(lam: &[usize], mu: &[usize], rows: usize, cols: usize) -> Vec<(Partition, u64)> {
    let (a, b) = if lam <= mu { (lam, mu) } else { (mu, lam) };
    let key = (a.to_vec(), b.to_vec(), rows, cols);
    if let Some(v) = lr_cache().lock().expect("cache").get(&key) {
        return v.clone();
    }
    let d = size(a) + size(b);
    let out: Vec<(Partition, u64)> = partitions_in_box(d, rows, cols)
        .into_iter()
        .filter_map(|nu| {
            let c = lr_coefficient(a, b, &nu);
            (c > 0).then_some((nu, c))
        })
        .collect();
    lr_cache().lock().expect("cache").insert(key, out.clone());
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Grassmannian {
    pub k: usize,
    pub n: usize,
}

impl Grassmannian {
    pub const fn new(k: usize, n: usize) -> Self {
        Grassmannian { k, n }
    }

    pub fn dim(&self) -> usize {
        self.k * (self.n - self.k)
    }

    pub fn fits(&self, l: &[usize]) -> bool {
        l.len() <= self.k && l.iter().all(|&x| x <= self.n - self.k)
    }

    pub fn classes(&self, d: usize) -> Vec<Partition> {
        partitions_in_box(d, self.k, self.n - self.k)
    }

    pub fn point_class(&self) -> Partition {
        vec![self.n - self.k; self.k]
    }

    /// Partition of the Poincare dual class.
    pub fn dual(&self, l: &[usize]) -> Partition {
        let c = self.n - self.k;
        trim((0..self.k).rev().map(|i| c - l.get(i).copied().unwrap_or(0)).collect())
    }
}

impl fmt::Display for Grassmannian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{})", self.k, self.n)
    }
}

/// A rational combination of products of Schubert classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowElement {
    ambient: Vec<Grassmannian>,
    terms: BTreeMap<Vec<Partition>, BigRational>,
}

fn r(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl ChowElement {
    pub fn zero(ambient: &[Grassmannian]) -> Self {
        ChowElement { ambient: ambient.to_vec(), terms: BTreeMap::new() }
    }

    pub fn constant(ambient: &[Grassmannian], c: BigRational) -> Self {
        let mut e = Self::zero(ambient);
        if !c.is_zero() {
            e.terms.insert(vec![Vec::new(); ambient.len()], c);
        }
        e
    }

    pub fn one(ambient: &[Grassmannian]) -> Self {
        Self::constant(ambient, BigRational::one())
    }

    /// sigma_lam pulled back from factor `f`.
    pub fn sigma(ambient: &[Grassmannian], f: usize, lam: &[usize]) -> Result<Self> {
        let g = ambient.get(f).ok_or_else(|| Error::AmbientMismatch(format!("no factor {f}")))?;
        let lam = trim(lam.to_vec());
        if !g.fits(&lam) {
            return Err(Error::AmbientMismatch(format!("{lam:?} does not fit {g}")));
        }
        let mut key = vec![Vec::new(); ambient.len()];
        key[f] = lam;
        let mut e = Self::zero(ambient);
        e.terms.insert(key, BigRational::one());
        Ok(e)
    }

    /// The hyperplane class sigma_1 of factor `f`.
    pub fn h(ambient: &[Grassmannian], f: usize) -> Self {
        Self::sigma(ambient, f, &[1]).expect("sigma_1 fits")
    }

    pub fn from_terms(ambient: &[Grassmannian], terms: impl IntoIterator<Item = (Vec<Partition>, BigRational)>) -> Result<Self> {
        let mut e = Self::zero(ambient);
        for (k, c) in terms {
            if k.len() != ambient.len() || k.iter().zip(ambient).any(|(l, g)| !g.fits(l)) {
                return Err(Error::AmbientMismatch(format!("{k:?} on {ambient:?}")));
            }
            let k: Vec<Partition> = k.into_iter().map(trim).collect();
            e.add_term(k, c);
        }
        Ok(e)
    }

    fn add_term(&mut self, k: Vec<Partition>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn ambient(&self) -> &[Grassmannian] {
        &self.ambient
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Partition>, BigRational> {
        &self.terms
    }

    pub fn coeff(&self, k: &[Partition]) -> BigRational {
        self.terms.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.ambient.iter().map(Grassmannian::dim).sum()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.ambient != o.ambient {
            return Err(Error::AmbientMismatch(format!("{:?} vs {:?}", self.ambient, o.ambient)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut e = self.clone();
        for (k, c) in &o.terms {
            e.add_term(k.clone(), c.clone());
        }
        Ok(e)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&r(-1))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        let mut e = Self::zero(&self.ambient);
        if s.is_zero() {
            return e;
        }
        e.terms = self.terms.iter().map(|(k, c)| (k.clone(), c * s)).collect();
        e
    }

    pub fn scale_int(&self, s: i64) -> Self {
        self.scale(&r(s))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut e = Self::zero(&self.ambient);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &o.terms {
                // product over factors of the LR expansions
                let mut partial: Vec<(Vec<Partition>, u64)> = vec![(Vec::new(), 1)];
                for (f, g) in self.ambient.iter().enumerate() {
                    let prod = lr_product(&ka[f], &kb[f], g.k, g.n - g.k);
                    let mut next = Vec::with_capacity(partial.len() * prod.len());
                    for (pk, pc) in &partial {
                        for (nu, c) in &prod {
                            let mut k = pk.clone();
                            k.push(nu.clone());
                            next.push((k, pc * c));
                        }
                    }
                    partial = next;
                    if partial.is_empty() {
                        break;
                    }
                }
                let cab = ca * cb;
                for (k, c) in partial {
                    e.add_term(k, &cab * r(c as i64));
                }
            }
        }
        Ok(e)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ambient);
        for _ in 0..k {
            acc = acc.mul(self).expect("same ambient");
        }
        acc
    }

    pub fn degree_of(k: &[Partition]) -> usize {
        k.iter().map(|l| size(l)).sum()
    }

    pub fn part(&self, d: usize) -> Self {
        let mut e = Self::zero(&self.ambient);
        e.terms = self.terms.iter().filter(|(k, _)| Self::degree_of(k) == d).map(|(k, c)| (k.clone(), c.clone())).collect();
        e
    }

    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.terms.keys().all(|k| Self::degree_of(k) == d)
    }

    /// Degree of the top-dimensional part; lower-degree classes integrate to 0.
    pub fn integrate(&self) -> BigRational {
        let top: Vec<Partition> = self.ambient.iter().map(Grassmannian::point_class).collect();
        self.coeff(&top)
    }

    pub fn integrate_i64(&self) -> Option<i64> {
        let v = self.integrate();
        if v.is_integer() {
            i64::try_from(v.to_integer()).ok()
        } else {
            None
        }
    }

    /// Inverse of a class with constant term 1, as a graded power series.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.part(0).integrate_constant();
        if c0 != BigRational::one() {
            return Err(Error::Inconsistent("inverse needs constant term 1".into()));
        }
        let n = self.dim();
        let parts: Vec<Self> = (0..=n).map(|d| self.part(d)).collect();
        let mut s = vec![Self::one(&self.ambient)];
        for k in 1..=n {
            let mut acc = Self::zero(&self.ambient);
            for i in 1..=k {
                acc = acc.sub(&parts[i].mul(&s[k - i])?)?;
            }
            s.push(acc);
        }
        let mut e = Self::zero(&self.ambient);
        for x in s {
            e = e.add(&x)?;
        }
        Ok(e)
    }

    fn integrate_constant(&self) -> BigRational {
        self.coeff(&vec![Vec::new(); self.ambient.len()])
    }

    /// On a single G(k,n), the same cycle read on G(n-k,n) through V -> V^perp.
    pub fn transpose_grassmannian(&self) -> Result<Self> {
        if self.ambient.len() != 1 {
            return Err(Error::AmbientMismatch("transpose needs a single Grassmannian".into()));
        }
        let g = self.ambient[0];
        let amb = [Grassmannian::new(g.n - g.k, g.n)];
        ChowElement::from_terms(&amb, self.terms.iter().map(|(k, c)| (vec![transpose(&k[0])], c.clone())))
    }
}

fn label(l: &[usize]) -> String {
    if l.is_empty() {
        return "1".into();
    }
    if l.iter().all(|&x| x < 10) {
        format!("s{}", l.iter().map(|x| x.to_string()).collect::<String>())
    } else {
        format!("s{l:?}")
    }
}

impl fmt::Display for ChowElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first, then by label
        let mut keys: Vec<&Vec<Partition>> = self.terms.keys().collect();
        keys.sort_by(|a, b| Self::degree_of(a).cmp(&Self::degree_of(b)).then(a.cmp(b)));
        for (i, k) in keys.iter().enumerate() {
            let c = &self.terms[*k];
            let mono: Vec<String> = k.iter().enumerate().filter(|(_, l)| !l.is_empty()).map(|(j, l)| {
                if self.ambient.len() == 1 { label(l) } else { format!("{}^({})", label(l), j + 1) }
            }).collect();
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{a}{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const G24: Grassmannian = Grassmannian::new(2, 4);
    const G25: Grassmannian = Grassmannian::new(2, 5);

    #[test]
    fn pieri_on_g24() {
        let a = [G24];
        let s1 = ChowElement::h(&a, 0);
        let sq = s1.mul(&s1).unwrap();
        let want = ChowElement::sigma(&a, 0, &[2]).unwrap().add(&ChowElement::sigma(&a, 0, &[1, 1]).unwrap()).unwrap();
        assert_eq!(sq, want);
        assert_eq!(s1.pow(4).integrate(), r(2));
    }

    #[test]
    fn degrees_on_g25() {
        let a = [G25];
        let s14 = ChowElement::h(&a, 0).pow(4);
        let s2 = ChowElement::sigma(&a, 0, &[2]).unwrap();
        let s11 = ChowElement::sigma(&a, 0, &[1, 1]).unwrap();
        assert_eq!(s2.mul(&s14).unwrap().integrate(), r(3));
        assert_eq!(s11.mul(&s14).unwrap().integrate(), r(2));
        assert_eq!(ChowElement::h(&a, 0).pow(6).integrate(), r(5));
    }

    #[test]
    fn lr_known_value() {
        // s21 * s21 contains s321 twice
        assert_eq!(lr_coefficient(&[2, 1], &[2, 1], &[3, 2, 1]), 2);
        assert_eq!(lr_coefficient(&[2, 1], &[2, 1], &[4, 2]), 1);
    }

    #[test]
    fn poincare_duality_is_unimodular() {
        for g in [G24, G25, Grassmannian::new(3, 5)] {
            let a = [g];
            for d in 0..=g.dim() {
                for l in g.classes(d) {
                    for m in g.classes(g.dim() - d) {
                        let v = ChowElement::sigma(&a, 0, &l).unwrap().mul(&ChowElement::sigma(&a, 0, &m).unwrap()).unwrap().integrate();
                        let want = if m == g.dual(&l) { r(1) } else { r(0) };
                        assert_eq!(v, want, "{g} {l:?} {m:?}");
                    }
                }
            }
        }
    }
}
