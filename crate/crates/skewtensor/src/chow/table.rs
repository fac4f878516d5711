//! Degree-4 intersection tables on Pic(X4) = <H1, F1..F5>, the K3 lattice
//! and the square map S^2 A^1 -> A^2.

use std::collections::BTreeMap;

use num::{BigRational, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::field::{FieldTag, Scalar};
use crate::matrix::ExactMatrix;
use crate::rep::sn::{class_rep, partitions, s5_decompose, SnCharacter};

/// Generator 0 is H1, generator p in 1..=5 is F_p.
pub const NGEN: usize = 6;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn sorted(mut k: [usize; 4]) -> [usize; 4] {
    k.sort_unstable();
    k
}

/// Number of H1 factors and the multiplicities of the F indices, largest first.
pub fn pattern(k: [usize; 4]) -> (usize, Vec<usize>) {
    let h = k.iter().filter(|&&x| x == 0).count();
    let mut m: BTreeMap<usize, usize> = BTreeMap::new();
    for &x in k.iter().filter(|&&x| x > 0) {
        *m.entry(x).or_insert(0) += 1;
    }
    let mut v: Vec<usize> = m.into_values().collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    (h, v)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct X4DivisorTable {
    pub name: String,
    entries: BTreeMap<[usize; 4], BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableSummary {
    pub name: String,
    /// value on each index pattern, e.g. "F_p^3 F_q"
    pub patterns: BTreeMap<String, String>,
}

pub fn pattern_name(h: usize, f: &[usize]) -> String {
    let letters = ['p', 'q', 'r', 's'];
    let mut parts = Vec::new();
    if h > 0 {
        parts.push(if h == 1 { "H1".to_string() } else { format!("H1^{h}") });
    }
    for (i, &m) in f.iter().enumerate() {
        parts.push(if m == 1 { format!("F_{}", letters[i]) } else { format!("F_{}^{m}", letters[i]) });
    }
    parts.join(" ")
}

impl X4DivisorTable {
    pub fn from_fn(name: &str, f: impl Fn([usize; 4]) -> BigRational) -> Self {
        let mut entries = BTreeMap::new();
        for a in 0..NGEN {
            for b in a..NGEN {
                for c in b..NGEN {
                    for d in c..NGEN {
                        let k = [a, b, c, d];
                        entries.insert(k, f(k));
                    }
                }
            }
        }
        X4DivisorTable { name: name.into(), entries }
    }

    /// A table given by its values on index patterns; unnamed patterns are 0.
    pub fn from_patterns(name: &str, values: &[((usize, &[usize]), i64)]) -> Self {
        Self::from_fn(name, |k| {
            let (h, f) = pattern(k);
            values.iter().find(|((a, b), _)| *a == h && *b == f.as_slice()).map(|(_, v)| q(*v)).unwrap_or_else(BigRational::zero)
        })
    }

    pub fn get(&self, k: [usize; 4]) -> BigRational {
        self.entries[&sorted(k)].clone()
    }

    /// Multilinear extension to divisors written in the basis H1, F1..F5.
    pub fn eval(&self, d: [&[BigRational]; 4]) -> BigRational {
        let mut acc = BigRational::zero();
        for a in 0..NGEN {
            if d[0][a].is_zero() {
                continue;
            }
            for b in 0..NGEN {
                if d[1][b].is_zero() {
                    continue;
                }
                for c in 0..NGEN {
                    if d[2][c].is_zero() {
                        continue;
                    }
                    for e in 0..NGEN {
                        if d[3][e].is_zero() {
                            continue;
                        }
                        acc += &d[0][a] * &d[1][b] * &d[2][c] * &d[3][e] * self.get([a, b, c, e]);
                    }
                }
            }
        }
        acc
    }

    /// Entries depend only on the index pattern.
    pub fn is_s5_invariant(&self) -> bool {
        let mut seen: BTreeMap<(usize, Vec<usize>), BigRational> = BTreeMap::new();
        for (k, v) in &self.entries {
            let p = pattern(*k);
            if let Some(w) = seen.get(&p) {
                if w != v {
                    return false;
                }
            } else {
                seen.insert(p, v.clone());
            }
        }
        true
    }

    pub fn summary(&self) -> TableSummary {
        let mut patterns = BTreeMap::new();
        for (k, v) in &self.entries {
            let (h, f) = pattern(*k);
            patterns.entry(pattern_name(h, &f)).or_insert_with(|| v.to_string());
        }
        TableSummary { name: self.name.clone(), patterns }
    }

    /// H1^4, H1^3 H2, ..., H2^4 with H2 = 3 H1 - sum F_p.
    pub fn h_numbers(&self) -> [BigRational; 5] {
        let h1 = h1();
        let h2 = h2();
        std::array::from_fn(|i| {
            let mut d: Vec<&[BigRational]> = Vec::new();
            for _ in 0..4 - i {
                d.push(&h1);
            }
            for _ in 0..i {
                d.push(&h2);
            }
            self.eval([d[0], d[1], d[2], d[3]])
        })
    }

    /// Value of (sum_p F_p)^4.
    pub fn f_total_fourth(&self) -> BigRational {
        let f = f_total();
        self.eval([&f, &f, &f, &f])
    }
}

pub fn h1() -> Vec<BigRational> {
    (0..NGEN).map(|i| q(i64::from(i == 0))).collect()
}

pub fn f_total() -> Vec<BigRational> {
    (0..NGEN).map(|i| q(i64::from(i > 0))).collect()
}

pub fn h2() -> Vec<BigRational> {
    (0..NGEN).map(|i| if i == 0 { q(3) } else { q(-1) }).collect()
}

fn unit(i: usize) -> Vec<BigRational> {
    (0..NGEN).map(|j| q(i64::from(i == j))).collect()
}

/// The printed table: F_p^4 = 12, F_p^3 F_q = -2, F_p^2 F_q^2 = 1,
/// F_p^3 H1 = -1, F_p^2 H1^2 = -1, H1^4 = 2, everything else 0.
pub fn printed_table() -> X4DivisorTable {
    X4DivisorTable::from_patterns(
        "printed",
        &[
            ((0, &[4]), 12),
            ((0, &[3, 1]), -2),
            ((0, &[2, 2]), 1),
            ((1, &[3]), -1),
            ((2, &[2]), -1),
            ((4, &[]), 2),
        ],
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct K3Numbers {
    pub h1h1: String,
    pub h2h2: String,
    pub h1h2: String,
    pub h1f: String,
    pub h2f: String,
    pub ff_same: String,
    pub ff_distinct: String,
}

impl K3Numbers {
    pub fn matches_printed(&self) -> bool {
        [&self.h1h1, &self.h2h2, &self.h1h2, &self.h1f, &self.h2f, &self.ff_same, &self.ff_distinct]
            .iter()
            .zip(["6", "14", "13", "1", "5", "-2", "0"])
            .all(|(a, b)| a.as_str() == b)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SquareMapReport {
    pub table: String,
    pub k3: K3Numbers,
    pub gram_rank: usize,
    pub kernel_dim: usize,
    pub s2a1_type: String,
    pub kernel_type: String,
    pub image_type: String,
    pub kernel_character: SnCharacter,
    /// u H1 F_p + v F F_p + w F_p^2 is constant in p, for (u, v, w) = (1, -2, 1)
    pub uvw_relation_in_kernel: bool,
}

/// Index pairs i <= j of the 21 monomials of S^2 A^1.
pub fn s2_basis() -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for i in 0..NGEN {
        for j in i..NGEN {
            v.push((i, j));
        }
    }
    v
}

fn act(sigma: &[usize], i: usize) -> usize {
    if i == 0 {
        0
    } else {
        sigma[i - 1] + 1
    }
}

fn rat(x: &BigRational) -> Scalar {
    Scalar::Rational(x.clone())
}

pub fn k3_and_square_map(t: &X4DivisorTable) -> Result<SquareMapReport> {
    let (a1, b2) = (h1(), h2());
    let k3 = |x: &[BigRational], y: &[BigRational]| t.eval([x, y, &a1, &b2]).to_string();
    let k3n = K3Numbers {
        h1h1: k3(&a1, &a1),
        h2h2: k3(&b2, &b2),
        h1h2: k3(&a1, &b2),
        h1f: k3(&a1, &unit(1)),
        h2f: k3(&b2, &unit(1)),
        ff_same: k3(&unit(1), &unit(1)),
        ff_distinct: k3(&unit(1), &unit(2)),
    };

    let basis = s2_basis();
    let idx: BTreeMap<(usize, usize), usize> = basis.iter().enumerate().map(|(n, p)| (*p, n)).collect();
    let tag = FieldTag::Rational;
    let gram = ExactMatrix::from_fn(basis.len(), basis.len(), tag, |r, c| {
        let (a, b) = basis[r];
        let (x, y) = basis[c];
        rat(&t.get([a, b, x, y]))
    })?;
    let gram_rank = gram.rank();
    let kernel = gram.kernel_basis();

    let pair_image = |sigma: &[usize], v: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(tag); basis.len()];
        for (n, (a, b)) in basis.iter().enumerate() {
            let (x, y) = (act(sigma, *a), act(sigma, *b));
            out[idx[&(x.min(y), x.max(y))]] = v[n].clone();
        }
        out
    };
    let kmat = if kernel.is_empty() { None } else { Some(ExactMatrix::from_rows(kernel.clone())?.transpose()) };
    let mut kchar = BTreeMap::new();
    for mu in partitions(5) {
        let sigma = class_rep(&mu);
        let mut tr = BigRational::zero();
        if let Some(m) = &kmat {
            for (i, k) in kernel.iter().enumerate() {
                let image = pair_image(&sigma, k);
                let coords = m.solve(&image)?.ok_or_else(|| crate::error::Error::Inconsistent("kernel is not S5-stable".into()))?;
                tr += coords[i].as_rational().expect("rational");
            }
        }
        kchar.insert(mu, tr);
    }
    let kernel_character = SnCharacter { n: 5, values: kchar };
    let s2_char = SnCharacter::from_perm_trace(5, |sigma| {
        q(basis.iter().filter(|(a, b)| {
            let (x, y) = (act(sigma, *a), act(sigma, *b));
            (x.min(y), x.max(y)) == (*a, *b)
        })
        .count() as i64)
    });
    let image_char = s2_char.sub(&kernel_character);

    // u = w = 1, v = -2, a = e_1 - e_2
    let mut rel = vec![BigRational::zero(); basis.len()];
    let mut add = |i: usize, j: usize, c: i64| {
        rel[idx[&(i.min(j), i.max(j))]] += q(c);
    };
    for (p, s) in [(1usize, 1i64), (2, -1)] {
        add(0, p, s);
        for r in 1..=5 {
            add(r, p, -2 * s);
        }
        add(p, p, s);
    }
    let relv: Vec<Scalar> = rel.iter().map(rat).collect();
    let uvw = gram.mul_vec(&relv)?.iter().all(Scalar::is_zero);

    Ok(SquareMapReport {
        table: t.name.clone(),
        k3: k3n,
        gram_rank,
        kernel_dim: kernel.len(),
        s2a1_type: s5_decompose(&s2_char)?.to_string(),
        kernel_type: s5_decompose(&kernel_character)?.to_string(),
        image_type: s5_decompose(&image_char)?.to_string(),
        kernel_character,
        uvw_relation_in_kernel: uvw,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_table_square_map() {
        let r = k3_and_square_map(&printed_table()).unwrap();
        assert!(r.k3.matches_printed(), "{:?}", r.k3);
        assert_eq!(r.gram_rank, 17);
        assert_eq!(r.kernel_type, "U4");
        assert_eq!(r.image_type, "4U1 + 2U4 + U5");
        assert_eq!(r.s2a1_type, "4U1 + 3U4 + U5");
        assert!(r.uvw_relation_in_kernel);
    }

    #[test]
    fn printed_h2_fourth_is_not_twelve() {
        let h = printed_table().h_numbers();
        assert_eq!(h[..4], [q(2), q(6), q(13), q(14)]);
        assert_eq!(h[4], q(-88));
        assert_eq!(printed_table().f_total_fourth(), q(-40));
    }
}
