//! Borel-Weil-Bott on Grassmannians and their products.
//!
//! On G(k,n) an irreducible homogeneous bundle is S_a U^* (x) S_b Q^* with
//! a, b nonincreasing of lengths k and n-k. The weight (a | b) is shifted by
//! rho = (n, ..., 1); a repeat kills all cohomology, otherwise sorting with
//! l inversions gives H^l = S_{sorted - rho} V^*.

use serde::Serialize;

use crate::chow::schubert::{lr_product, trim};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FactorWeight {
    /// weight of U^*, length k
    pub u: Vec<i64>,
    /// weight of Q^*, length n - k
    pub q: Vec<i64>,
}

impl FactorWeight {
    pub fn new(u: Vec<i64>, q: Vec<i64>) -> Self {
        debug_assert!(is_dominant(&u) && is_dominant(&q), "{u:?} | {q:?}");
        FactorWeight { u, q }
    }

    pub fn zero(k: usize, n: usize) -> Self {
        FactorWeight { u: vec![0; k], q: vec![0; n - k] }
    }

    pub fn k(&self) -> usize {
        self.u.len()
    }

    pub fn n(&self) -> usize {
        self.u.len() + self.q.len()
    }

    pub fn dim(&self) -> usize {
        self.k() * (self.n() - self.k())
    }

    /// rank of the bundle
    pub fn rank(&self) -> u128 {
        weyl_dim(&self.u) * weyl_dim(&self.q)
    }

    pub fn dual(&self) -> Self {
        FactorWeight { u: dual_weight(&self.u), q: dual_weight(&self.q) }
    }

    /// tensor with O(t) = (det U^*)^t
    pub fn twist(&self, t: i64) -> Self {
        FactorWeight { u: self.u.iter().map(|x| x + t).collect(), q: self.q.clone() }
    }

    pub fn is_trivial(&self) -> bool {
        self.u.iter().chain(&self.q).all(|&x| x == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GLWeight {
    pub factors: Vec<FactorWeight>,
}

impl GLWeight {
    pub fn dim(&self) -> usize {
        self.factors.iter().map(FactorWeight::dim).sum()
    }

    pub fn rank(&self) -> u128 {
        self.factors.iter().map(FactorWeight::rank).product()
    }

    pub fn dual(&self) -> Self {
        GLWeight { factors: self.factors.iter().map(FactorWeight::dual).collect() }
    }

    pub fn twist(&self, t: &[i64]) -> Self {
        GLWeight { factors: self.factors.iter().zip(t).map(|(f, &x)| f.twist(x)).collect() }
    }

    /// W^* (x) K, K = O(-n) on each factor
    pub fn serre_dual(&self) -> Self {
        GLWeight { factors: self.factors.iter().map(|f| f.dual().twist(-(f.n() as i64))).collect() }
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.iter().all(FactorWeight::is_trivial)
    }
}

impl std::fmt::Display for GLWeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|w| format!("({:?}|{:?})", w.u, w.q)).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BottResult {
    Zero,
    Cohomology {
        degree: usize,
        dim: u128,
        /// highest weights of the GL(V) modules, one per factor
        weights: Vec<Vec<i64>>,
    },
}

impl BottResult {
    pub fn degree(&self) -> Option<usize> {
        match self {
            BottResult::Zero => None,
            BottResult::Cohomology { degree, .. } => Some(*degree),
        }
    }

    pub fn dim(&self) -> u128 {
        match self {
            BottResult::Zero => 0,
            BottResult::Cohomology { dim, .. } => *dim,
        }
    }

    /// h^i for i = 0..=top
    pub fn table(&self, top: usize) -> Vec<u128> {
        let mut t = vec![0; top + 1];
        if let BottResult::Cohomology { degree, dim, .. } = self {
            t[*degree] += dim;
        }
        t
    }
}

pub fn is_dominant(w: &[i64]) -> bool {
    w.windows(2).all(|p| p[0] >= p[1])
}

pub fn dual_weight(w: &[i64]) -> Vec<i64> {
    w.iter().rev().map(|x| -x).collect()
}

/// dim S_w C^m by the Weyl formula.
pub fn weyl_dim(w: &[i64]) -> u128 {
    let m = w.len();
    let (mut num, mut den) = (1i128, 1i128);
    for i in 0..m {
        for j in i + 1..m {
            num *= (w[i] - w[j]) as i128 + (j - i) as i128;
            den *= (j - i) as i128;
        }
    }
    (num / den) as u128
}

pub fn bott_factor(w: &FactorWeight) -> BottResult {
    let n = w.n();
    let gamma: Vec<i64> = w.u.iter().chain(&w.q).enumerate().map(|(i, x)| x + (n - i) as i64).collect();
    let mut sorted = gamma.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    if sorted.windows(2).any(|p| p[0] == p[1]) {
        return BottResult::Zero;
    }
    let mut inversions = 0;
    for i in 0..n {
        for j in i + 1..n {
            if gamma[i] < gamma[j] {
                inversions += 1;
            }
        }
    }
    let lam: Vec<i64> = sorted.iter().enumerate().map(|(i, x)| x - (n - i) as i64).collect();
    BottResult::Cohomology { degree: inversions, dim: weyl_dim(&lam), weights: vec![lam] }
}

/// Kuenneth over the factors.
pub fn bott(w: &GLWeight) -> BottResult {
    let mut degree = 0;
    let mut dim = 1;
    let mut weights = Vec::new();
    for f in &w.factors {
        match bott_factor(f) {
            BottResult::Zero => return BottResult::Zero,
            BottResult::Cohomology { degree: d, dim: m, weights: ws } => {
                degree += d;
                dim *= m;
                weights.extend(ws);
            }
        }
    }
    BottResult::Cohomology { degree, dim, weights }
}

/// S_a (x) S_b for GL_m weights, possibly negative.
pub fn gl_tensor(a: &[i64], b: &[i64]) -> Vec<(Vec<i64>, u64)> {
    assert_eq!(a.len(), b.len(), "same rank");
    let m = a.len();
    if m == 0 {
        return vec![(Vec::new(), 1)];
    }
    let (sa, sb) = (*a.last().expect("m > 0"), *b.last().expect("m > 0"));
    let pa = trim(a.iter().map(|x| (x - sa) as usize).collect());
    let pb = trim(b.iter().map(|x| (x - sb) as usize).collect());
    let cols = pa.first().copied().unwrap_or(0) + pb.first().copied().unwrap_or(0);
    lr_product(&pa, &pb, m, cols)
        .into_iter()
        .map(|(nu, c)| ((0..m).map(|i| nu.get(i).copied().unwrap_or(0) as i64 + sa + sb).collect(), c))
        .collect()
}

pub fn tensor_factor(a: &FactorWeight, b: &FactorWeight) -> Vec<(FactorWeight, u64)> {
    let mut out = Vec::new();
    for (u, cu) in gl_tensor(&a.u, &b.u) {
        for (q, cq) in gl_tensor(&a.q, &b.q) {
            out.push((FactorWeight { u: u.clone(), q }, cu * cq));
        }
    }
    out
}

pub fn tensor(a: &GLWeight, b: &GLWeight) -> Vec<(GLWeight, u64)> {
    let mut partial: Vec<(Vec<FactorWeight>, u64)> = vec![(Vec::new(), 1)];
    for (fa, fb) in a.factors.iter().zip(&b.factors) {
        let prod = tensor_factor(fa, fb);
        let mut next = Vec::new();
        for (ws, c) in &partial {
            for (w, d) in &prod {
                let mut v = ws.clone();
                v.push(w.clone());
                next.push((v, c * d));
            }
        }
        partial = next;
    }
    partial.into_iter().map(|(factors, c)| (GLWeight { factors }, c)).collect()
}

/// Tensor product of two formal sums of weights.
pub fn tensor_sums(a: &[(GLWeight, u64)], b: &[(GLWeight, u64)]) -> Vec<(GLWeight, u64)> {
    let mut acc = std::collections::BTreeMap::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            for (w, c) in tensor(wa, wb) {
                *acc.entry(w).or_insert(0) += ca * cb * c;
            }
        }
    }
    acc.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g24(u: [i64; 2], q: [i64; 2]) -> GLWeight {
        GLWeight { factors: vec![FactorWeight::new(u.to_vec(), q.to_vec())] }
    }

    #[test]
    fn borel_weil() {
        assert_eq!(bott(&g24([1, 0], [0, 0])).table(4), vec![4, 0, 0, 0, 0]);
        assert_eq!(bott(&g24([1, 1], [0, 0])).table(4), vec![6, 0, 0, 0, 0]);
        assert_eq!(bott(&g24([0, 0], [1, 0])), BottResult::Zero);
        // tangent bundle: sl_4
        assert_eq!(bott(&g24([1, 0], [0, -1])).table(4), vec![15, 0, 0, 0, 0]);
        // canonical bundle O(-4): H^4 = C
        assert_eq!(bott(&g24([-4, -4], [0, 0])).table(4), vec![0, 0, 0, 0, 1]);
    }

    #[test]
    fn tensor_ranks() {
        let a = vec![2, 0, -1];
        let b = vec![1, 1, 0];
        let total: u128 = gl_tensor(&a, &b).iter().map(|(w, c)| weyl_dim(w) * u128::from(*c)).sum();
        assert_eq!(total, weyl_dim(&a) * weyl_dim(&b));
    }
}
