//! Word-sized prime field arithmetic and Grassmannian enumeration for the
//! counting sweeps. Primes are limited to 2^31 so products fit in a u64.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::is_prime;

pub const MAX_FAST_PRIME: u64 = 1 << 31;

pub fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::BadPrime(p, "not prime".into()));
    }
    if p >= MAX_FAST_PRIME {
        return Err(Error::BadPrime(p, "too large for word-sized sweeps".into()));
    }
    Ok(())
}

#[inline]
pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow(a, p - 2, p)
}

pub fn from_i64(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

/// Rank of a small dense matrix, consumed.
pub fn rank<const R: usize, const C: usize>(mut m: [[u64; C]; R], p: u64) -> usize {
    let mut r = 0;
    for c in 0..C {
        let Some(piv) = (r..R).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let lead = m[r][c];
        for i in r + 1..R {
            if m[i][c] != 0 {
                // fraction-free: row_i <- lead * row_i - m[i][c] * row_r
                let f = m[i][c];
                for k in c..C {
                    m[i][k] = sub(mul(lead, m[i][k], p), mul(f, m[r][k], p), p);
                }
            }
        }
        r += 1;
        if r == R {
            break;
        }
    }
    r
}

/// Rank of a matrix given as rows of arbitrary length.
pub fn rank_dyn(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let iv = inv(m[r][c], p);
        for i in r + 1..m.len() {
            if m[i][c] != 0 {
                let f = mul(m[i][c], iv, p);
                for k in c..ncols {
                    m[i][k] = sub(m[i][k], mul(f, m[r][k], p), p);
                }
            }
        }
        r += 1;
    }
    r
}

/// Right kernel basis of a matrix over F_p.
pub fn kernel_dyn(rows: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let iv = inv(m[r][c], p);
        for k in 0..ncols {
            m[r][k] = mul(m[r][k], iv, p);
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for k in 0..ncols {
                    m[i][k] = sub(m[i][k], mul(f, m[r][k], p), p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; ncols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = sub(0, m[i][f], p);
            }
            v
        })
        .collect()
}

/// Number of k-dimensional subspaces of F_q^n.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u64 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    (num / den) as u64
}

/// Number of points of P^d(F_q); zero for d < 0.
pub fn projective_count(d: i64, q: u64) -> u64 {
    if d < 0 {
        0
    } else {
        (0..=d as u32).map(|i| q.pow(i)).sum()
    }
}

/// A Schubert cell of G(k, n): pivot columns and the free (row, col) slots
/// of the reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonCell {
    pub pivots: Vec<usize>,
    pub free: Vec<(usize, usize)>,
}

pub fn echelon_cells(k: usize, n: usize) -> Vec<EchelonCell> {
    fn rec(start: usize, k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            cur.push(c);
            rec(c + 1, k, n, cur, out);
            cur.pop();
        }
    }
    let mut sets = Vec::new();
    rec(0, k, n, &mut Vec::new(), &mut sets);
    sets.into_iter()
        .map(|pivots| {
            let free = (0..k)
                .flat_map(|r| {
                    let pv = pivots.clone();
                    (pivots[r] + 1..n).filter(move |c| !pv.contains(c)).map(move |c| (r, c))
                })
                .collect();
            EchelonCell { pivots, free }
        })
        .collect()
}

/// |G(k,n)(F_p)| as a sum of cell sizes p^{#free}.
pub fn cell_count(k: usize, n: usize, p: u64) -> u64 {
    echelon_cells(k, n).iter().map(|c| p.pow(c.free.len() as u32)).sum()
}

fn fill<const K: usize, const N: usize>(cell: &EchelonCell, mut idx: u64, p: u64) -> [[u64; N]; K] {
    let mut m = [[0u64; N]; K];
    for (r, &c) in cell.pivots.iter().enumerate() {
        m[r][c] = 1;
    }
    for &(r, c) in &cell.free {
        m[r][c] = idx % p;
        idx /= p;
    }
    m
}

/// Sum of f over all K-dimensional subspaces of F_p^N (each given by its
/// RREF basis). Parallel over cell index ranges; integer sum, so the result
/// does not depend on scheduling.
pub fn grassmannian_sum<const K: usize, const N: usize, F>(p: u64, f: F) -> u64
where
    F: Fn(&[[u64; N]; K]) -> u64 + Sync,
{
    echelon_cells(K, N)
        .iter()
        .map(|cell| {
            let size = p.pow(cell.free.len() as u32);
            (0..size).into_par_iter().map(|i| f(&fill::<K, N>(cell, i, p))).sum::<u64>()
        })
        .sum()
}

/// Histogram of a bucket function over all K-subspaces of F_p^N. Buckets at
/// or beyond `buckets` are clamped into the last one.
pub fn grassmannian_histogram<const K: usize, const N: usize, F>(p: u64, buckets: usize, f: F) -> Vec<u64>
where
    F: Fn(&[[u64; N]; K]) -> usize + Sync,
{
    let merge = |mut a: Vec<u64>, b: Vec<u64>| {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        a
    };
    echelon_cells(K, N)
        .iter()
        .map(|cell| {
            let size = p.pow(cell.free.len() as u32);
            (0..size)
                .into_par_iter()
                .fold(
                    || vec![0u64; buckets],
                    |mut h, i| {
                        h[f(&fill::<K, N>(cell, i, p)).min(buckets - 1)] += 1;
                        h
                    },
                )
                .reduce(|| vec![0u64; buckets], merge)
        })
        .fold(vec![0u64; buckets], merge)
}

/// First K-subspace (in enumeration order) satisfying a predicate.
pub fn find_subspace<const K: usize, const N: usize>(p: u64, pred: impl Fn(&[[u64; N]; K]) -> bool) -> Option<[[u64; N]; K]> {
    for cell in echelon_cells(K, N) {
        let size = p.pow(cell.free.len() as u32);
        for i in 0..size {
            let m = fill::<K, N>(&cell, i, p);
            if pred(&m) {
                return Some(m);
            }
        }
    }
    None
}

/// Sequential visit of every K-subspace of F_p^N.
pub fn for_each_subspace<const K: usize, const N: usize>(p: u64, mut f: impl FnMut(&[[u64; N]; K])) {
    for cell in echelon_cells(K, N) {
        let size = p.pow(cell.free.len() as u32);
        for i in 0..size {
            f(&fill::<K, N>(&cell, i, p));
        }
    }
}

/// Collect every K-subspace of F_p^N.
pub fn all_subspaces<const K: usize, const N: usize>(p: u64) -> Vec<[[u64; N]; K]> {
    let mut out = Vec::new();
    for_each_subspace::<K, N>(p, |m| out.push(*m));
    out
}

/// Normalize a projective point so that its first nonzero entry is 1.
pub fn normalize(v: &[u64], p: u64) -> Option<Vec<u64>> {
    let lead = v.iter().find(|&&x| x != 0)?;
    let iv = inv(*lead, p);
    Some(v.iter().map(|&x| mul(x, iv, p)).collect())
}

/// Canonical RREF of the span of some vectors (used to compare subspaces).
pub fn rref_span(rows: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let iv = inv(m[r][c], p);
        for k in 0..ncols {
            m[r][k] = mul(m[r][k], iv, p);
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for k in 0..ncols {
                    m[i][k] = sub(m[i][k], mul(f, m[r][k], p), p);
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grassmannians() {
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(5, 3, 2), 155);
        for p in [2, 3, 7] {
            assert_eq!(cell_count(2, 5, p), gaussian_binomial(5, 2, p));
            assert_eq!(grassmannian_sum::<2, 4, _>(p, |_| 1), gaussian_binomial(4, 2, p));
        }
    }

    #[test]
    fn kernel_has_right_size() {
        let p = 101;
        let rows = vec![vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 0, 1]];
        let k = kernel_dyn(&rows, 4, p);
        assert_eq!(k.len(), 4 - rank_dyn(&rows, p));
        for v in &k {
            for r in &rows {
                let s = r.iter().zip(v).fold(0, |a, (x, y)| add(a, mul(*x, *y, p), p));
                assert_eq!(s, 0);
            }
        }
    }
}
