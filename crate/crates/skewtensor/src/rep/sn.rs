//! Characters of symmetric groups, by Murnaghan-Nakayama.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::chow::schubert::{partitions_in_box, Partition};
use crate::error::{Error, Result};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Partitions of n, largest first: [5], [4,1], [3,2], ...
pub fn partitions(n: usize) -> Vec<Partition> {
    partitions_in_box(n, n, n)
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Order of the centralizer of a permutation of cycle type mu.
pub fn centralizer(mu: &[usize]) -> u64 {
    let mut z = 1u64;
    let mut counts = BTreeMap::new();
    for &m in mu {
        *counts.entry(m).or_insert(0u64) += 1;
        z *= m as u64;
    }
    for c in counts.values() {
        z *= factorial(*c as usize);
    }
    z
}

pub fn class_size(n: usize, mu: &[usize]) -> u64 {
    factorial(n) / centralizer(mu)
}

/// chi^lam at cycle type mu.
pub fn mn_character(lam: &[usize], mu: &[usize]) -> i64 {
    let l = lam.len();
    let beta: Vec<i64> = lam.iter().enumerate().map(|(i, &x)| (x + l - 1 - i) as i64).collect();
    fn go(beta: &mut Vec<i64>, mu: &[usize]) -> i64 {
        let Some((&r, rest)) = mu.split_first() else {
            return 1;
        };
        let r = r as i64;
        let mut total = 0;
        for i in 0..beta.len() {
            let b = beta[i];
            let t = b - r;
            if t < 0 || beta.contains(&t) {
                continue;
            }
            let between = beta.iter().filter(|&&x| x > t && x < b).count();
            let sign = if between % 2 == 0 { 1 } else { -1 };
            beta[i] = t;
            total += sign * go(beta, rest);
            beta[i] = b;
        }
        total
    }
    let mut b = beta;
    go(&mut b, mu)
}

pub fn cycle_type(perm: &[usize]) -> Partition {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// A permutation of {0..n-1} of cycle type mu.
pub fn class_rep(mu: &[usize]) -> Vec<usize> {
    let n: usize = mu.iter().sum();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut start = 0;
    for &m in mu {
        for i in 0..m {
            perm[start + i] = start + (i + 1) % m;
        }
        start += m;
    }
    perm
}

/// Cycle type of g^2 for g of type mu.
pub fn square_class(mu: &[usize]) -> Partition {
    let mut out = Vec::new();
    for &m in mu {
        if m % 2 == 0 {
            out.push(m / 2);
            out.push(m / 2);
        } else {
            out.push(m);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnCharacter {
    pub n: usize,
    /// value on each cycle type
    pub values: BTreeMap<Partition, BigRational>,
}

impl SnCharacter {
    pub fn from_fn(n: usize, f: impl Fn(&[usize]) -> BigRational) -> Self {
        SnCharacter { n, values: partitions(n).into_iter().map(|mu| { let v = f(&mu); (mu, v) }).collect() }
    }

    /// Character of a representation given by the trace of each class representative.
    pub fn from_perm_trace(n: usize, trace: impl Fn(&[usize]) -> BigRational) -> Self {
        Self::from_fn(n, |mu| trace(&class_rep(mu)))
    }

    pub fn irreducible(lam: &[usize]) -> Self {
        let n = lam.iter().sum();
        Self::from_fn(n, |mu| q(mn_character(lam, mu)))
    }

    pub fn trivial(n: usize) -> Self {
        Self::from_fn(n, |_| q(1))
    }

    /// Permutation character on {1..n}.
    pub fn natural(n: usize) -> Self {
        Self::from_fn(n, |mu| q(mu.iter().filter(|&&x| x == 1).count() as i64))
    }

    pub fn at(&self, mu: &[usize]) -> BigRational {
        self.values.get(mu).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn dim(&self) -> BigRational {
        self.at(&vec![1; self.n])
    }

    fn zip(&self, o: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        SnCharacter { n: self.n, values: self.values.iter().map(|(k, v)| (k.clone(), f(v, &o.at(k)))).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a - b)
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a * b)
    }

    pub fn scale(&self, s: i64) -> Self {
        SnCharacter { n: self.n, values: self.values.iter().map(|(k, v)| (k.clone(), v * q(s))).collect() }
    }

    pub fn inner(&self, o: &Self) -> BigRational {
        let mut acc = BigRational::zero();
        for (mu, v) in &self.values {
            acc += v * o.at(mu) * q(class_size(self.n, mu) as i64);
        }
        acc / q(factorial(self.n) as i64)
    }

    /// (S^2, Lambda^2) by chi(g)^2 +- chi(g^2), halved.
    pub fn sym_alt_square(&self) -> (Self, Self) {
        let two = q(2);
        let sym = SnCharacter::from_fn(self.n, |mu| {
            let c = self.at(mu);
            (&c * &c + self.at(&square_class(mu))) / &two
        });
        let alt = SnCharacter::from_fn(self.n, |mu| {
            let c = self.at(mu);
            (&c * &c - self.at(&square_class(mu))) / &two
        });
        (sym, alt)
    }
}

impl Serialize for SnCharacter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.values.len()))?;
        for (k, v) in &self.values {
            m.serialize_entry(&format!("{k:?}").replace(' ', ""), &v.to_string())?;
        }
        m.end()
    }
}

/// S5 irreducibles by dimension name.
pub const S5_LABELS: [(&str, &[usize]); 7] = [
    ("U1", &[5]),
    ("U1-", &[1, 1, 1, 1, 1]),
    ("U4", &[4, 1]),
    ("U4-", &[2, 1, 1, 1]),
    ("U5", &[3, 2]),
    ("U5-", &[2, 2, 1]),
    ("U6", &[3, 1, 1]),
];

pub fn s5_irreducible(label: &str) -> Option<SnCharacter> {
    S5_LABELS.iter().find(|(l, _)| *l == label).map(|(_, p)| SnCharacter::irreducible(p))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepDecomposition {
    pub group: String,
    /// nonzero multiplicities in table order
    pub parts: Vec<(String, u64)>,
    pub dim: u64,
}

impl RepDecomposition {
    pub fn mult(&self, label: &str) -> u64 {
        self.parts.iter().find(|(l, _)| l == label).map(|(_, m)| *m).unwrap_or(0)
    }

}

impl fmt::Display for RepDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.parts.iter().map(|(l, m)| if *m == 1 { l.clone() } else { format!("{m}{l}") }).collect();
        write!(f, "{}", s.join(" + "))
    }
}

fn decompose(ch: &SnCharacter, group: &str, labels: &[(String, Partition)]) -> Result<RepDecomposition> {
    let mut parts = Vec::new();
    let mut dim = 0u64;
    for (l, p) in labels {
        let irr = SnCharacter::irreducible(p);
        let m = ch.inner(&irr);
        if !m.is_integer() || m.is_negative() {
            return Err(Error::NotACharacter(format!("multiplicity {m} of {l}")));
        }
        let m = m.to_integer().to_u64().expect("small multiplicity");
        if m > 0 {
            dim += m * irr.dim().to_integer().to_u64().expect("positive degree");
            parts.push((l.clone(), m));
        }
    }
    if q(dim as i64) != ch.dim() {
        return Err(Error::NotACharacter(format!("degree {} but constituents give {dim}", ch.dim())));
    }
    Ok(RepDecomposition { group: group.into(), parts, dim })
}

pub fn s5_decompose(ch: &SnCharacter) -> Result<RepDecomposition> {
    if ch.n != 5 {
        return Err(Error::NotACharacter(format!("character of S{}", ch.n)));
    }
    let labels: Vec<(String, Partition)> = S5_LABELS.iter().map(|(l, p)| (l.to_string(), p.to_vec())).collect();
    decompose(ch, "S5", &labels)
}

/// S6 constituents are labelled by partitions, e.g. "[4,2]".
pub fn s6_decompose(ch: &SnCharacter) -> Result<RepDecomposition> {
    if ch.n != 6 {
        return Err(Error::NotACharacter(format!("character of S{}", ch.n)));
    }
    let labels: Vec<(String, Partition)> = partitions(6).into_iter().map(|p| (format!("{p:?}").replace(' ', ""), p)).collect();
    decompose(ch, "S6", &labels)
}

/// Row and column orthogonality of the character table of S_n.
pub fn table_is_orthogonal(n: usize) -> bool {
    let parts = partitions(n);
    let chars: Vec<SnCharacter> = parts.iter().map(|p| SnCharacter::irreducible(p)).collect();
    for (i, a) in chars.iter().enumerate() {
        for (j, b) in chars.iter().enumerate() {
            if a.inner(b) != q(i64::from(i == j)) {
                return false;
            }
        }
    }
    for mu in &parts {
        for nu in &parts {
            let s: BigRational = chars.iter().map(|c| c.at(mu) * c.at(nu)).sum();
            let want = if mu == nu { q(centralizer(mu) as i64) } else { BigRational::zero() };
            if s != want {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(ch: &SnCharacter) -> String {
        s5_decompose(ch).unwrap().to_string()
    }

    #[test]
    fn tables() {
        assert_eq!(partitions(5).len(), 7);
        assert_eq!(partitions(6).len(), 11);
        assert!(table_is_orthogonal(5));
        assert!(table_is_orthogonal(6));
    }

    #[test]
    fn plethysms() {
        let u4 = s5_irreducible("U4").unwrap();
        let u5 = s5_irreducible("U5").unwrap();
        let (s2, a2) = u4.sym_alt_square();
        assert_eq!(d(&s2), "U1 + U4 + U5");
        assert_eq!(d(&a2), "U6");
        let (_, a5) = u5.sym_alt_square();
        assert_eq!(d(&a5), "U4- + U6");
        let (s2a5, _) = a5.sym_alt_square();
        assert_eq!(s5_decompose(&s2a5).unwrap().mult("U4-"), 1);
        assert_eq!(d(&SnCharacter::natural(5)), "U1 + U4");
    }

    #[test]
    fn not_a_character() {
        let bad = s5_irreducible("U4").unwrap().sub(&SnCharacter::trivial(5));
        assert!(matches!(s5_decompose(&bad), Err(Error::NotACharacter(_))));
    }
}
