//! Dense matrices over a single exact field.
//!
//! Row reduction over Q is fraction free (Bareiss) on a common-denominator
//! integer copy of the matrix; the other fields use plain Gauss-Jordan.

use std::fmt;

use num::{BigInt, BigRational, Integer, One, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldTag, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    tag: FieldTag,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize, tag: FieldTag) -> Self {
        ExactMatrix {
            rows,
            cols,
            tag,
            data: vec![Scalar::zero(tag); rows * cols],
        }
    }

    pub fn identity(n: usize, tag: FieldTag) -> Self {
        let mut m = Self::zeros(n, n, tag);
        for k in 0..n {
            m.set(k, k, Scalar::one(tag));
        }
        m
    }

    /// Build from rows. All entries must share one field; an empty matrix
    /// needs an explicit tag, see [`ExactMatrix::zeros`].
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let tag = rows
            .iter()
            .flatten()
            .next()
            .map(|s| s.tag())
            .ok_or_else(|| Error::Dimension("empty matrix needs a field tag".into()))?;
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Dimension("ragged rows".into()));
            }
            for s in row {
                if s.tag() != tag {
                    return Err(Error::FieldMismatch(tag, s.tag()));
                }
                data.push(s);
            }
        }
        Ok(ExactMatrix { rows: r, cols: c, tag, data })
    }

    pub fn from_fn(rows: usize, cols: usize, tag: FieldTag, f: impl Fn(usize, usize) -> Scalar) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let s = f(i, j);
                if s.tag() != tag {
                    return Err(Error::FieldMismatch(tag, s.tag()));
                }
                data.push(s);
            }
        }
        Ok(ExactMatrix { rows, cols, tag, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.tag(), self.tag, "entry from another field");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.tag);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.tag != o.tag {
            return Err(Error::FieldMismatch(self.tag, o.tag));
        }
        if self.cols != o.rows {
            return Err(Error::Dimension(format!("{}x{} * {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut m = Self::zeros(self.rows, o.cols, self.tag);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = m.get(i, j) + &(a * o.get(k, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        check_vec(v, self.tag)?;
        if v.len() != self.cols {
            return Err(Error::Dimension("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(self.tag);
                for j in 0..self.cols {
                    acc = &acc + &(self.get(i, j) * &v[j]);
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.tag != o.tag {
            return Err(Error::FieldMismatch(self.tag, o.tag));
        }
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(Error::Dimension("shape".into()));
        }
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Ok(ExactMatrix { data, ..self.clone() })
    }

    pub fn scale(&self, s: &Scalar) -> Result<Self> {
        if s.tag() != self.tag {
            return Err(Error::FieldMismatch(self.tag, s.tag()));
        }
        let data = self.data.iter().map(|a| a * s).collect();
        Ok(ExactMatrix { data, ..self.clone() })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        match self.tag {
            FieldTag::Rational => self.rref_bareiss(),
            _ => self.rref_plain(),
        }
    }

    fn rref_plain(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn rref_bareiss(&self) -> (ExactMatrix, Vec<usize>) {
        // clear denominators row by row
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row: Vec<BigRational> = (0..self.cols)
                    .map(|j| self.get(i, j).as_rational().expect("rational entry"))
                    .collect();
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect()
            })
            .collect();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            for i in 0..rows {
                if i == r {
                    continue;
                }
                for j in 0..cols {
                    if j == c {
                        continue;
                    }
                    let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                    a[i][j] = v / &prev;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        let mut out = ExactMatrix::zeros(rows, cols, FieldTag::Rational);
        for (i, &pc) in pivots.iter().enumerate() {
            let lead = a[i][pc].clone();
            for j in 0..cols {
                if !a[i][j].is_zero() {
                    out.set(i, j, Scalar::Rational(BigRational::new(a[i][j].clone(), lead.clone())));
                }
            }
        }
        (out, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel. Each vector has a 1 in its free column,
    /// which is also its first nonzero coordinate.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(self.tag); self.cols];
                v[f] = Scalar::one(self.tag);
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(i, f);
                }
                v
            })
            .collect()
    }

    /// Some x with self * x = b, if one exists.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        check_vec(b, self.tag)?;
        if b.len() != self.rows {
            return Err(Error::Dimension("rhs length".into()));
        }
        let aug = ExactMatrix::from_fn(self.rows, self.cols + 1, self.tag, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        })?;
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Scalar::zero(self.tag); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = ExactMatrix::from_fn(n, 2 * n, self.tag, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                Scalar::one(self.tag)
            } else {
                Scalar::zero(self.tag)
            }
        })
        .ok()?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        ExactMatrix::from_fn(n, n, self.tag, |i, j| r.get(i, j + n).clone()).ok()
    }

    /// Determinant by elimination.
    pub fn det(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::Dimension("det of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut d = Scalar::one(self.tag);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Scalar::zero(self.tag));
            };
            if p != c {
                m.swap_rows(p, c);
                d = -d;
            }
            let piv = m.get(c, c).clone();
            d = &d * &piv;
            let inv = piv.inv().expect("nonzero");
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(d)
    }
}

fn check_vec(v: &[Scalar], tag: FieldTag) -> Result<()> {
    for s in v {
        if s.tag() != tag {
            return Err(Error::FieldMismatch(tag, s.tag()));
        }
    }
    Ok(())
}

/// Rank of a list of vectors.
pub fn rank_of(vectors: &[Vec<Scalar>], tag: FieldTag) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    ExactMatrix::from_fn(vectors.len(), vectors[0].len(), tag, |i, j| vectors[i][j].clone())
        .map(|m| m.rank())
        .unwrap_or(0)
}

/// Kernel of a matrix given by rows, checking that every entry lives in one field.
pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vec<Scalar>> {
    m.kernel_basis()
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::q(n, 1)
    }

    #[test]
    fn identity_has_empty_kernel() {
        let m = ExactMatrix::identity(3, FieldTag::Rational);
        assert!(m.kernel_basis().is_empty());
    }

    #[test]
    fn bareiss_matches_plain() {
        let rows = vec![
            vec![q(2), q(4), q(-2), q(1)],
            vec![q(1), q(2), q(0), Scalar::q(1, 3)],
            vec![q(3), q(6), q(-2), Scalar::q(4, 3)],
        ];
        let m = ExactMatrix::from_rows(rows).unwrap();
        let (a, pa) = m.rref_bareiss();
        let (b, pb) = m.rref_plain();
        assert_eq!(pa, pb);
        assert_eq!(a, b);
        assert_eq!(m.kernel_basis().len(), 2);
        for v in m.kernel_basis() {
            assert!(m.mul_vec(&v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn mixed_fields_rejected() {
        let r = ExactMatrix::from_rows(vec![vec![q(1), Scalar::fp(1, 7)]]);
        assert!(matches!(r, Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn determinant_and_inverse() {
        let m = ExactMatrix::from_rows(vec![vec![q(2), q(1)], vec![q(7), q(4)]]).unwrap();
        assert_eq!(m.det().unwrap(), q(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), ExactMatrix::identity(2, FieldTag::Rational));
    }
}
