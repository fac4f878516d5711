//! Exact scalars: rationals, the cyclotomic field Q(z), z a primitive 12th
//! root of unity, and prime fields.
//!
//! Elements of Q(z) are stored in the power basis 1, z, z^2, z^3 and kept
//! reduced modulo z^4 - z^2 + 1. We write i = z^3 and j = z^4, so that
//! i^2 = -1 and j^2 + j + 1 = 0.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Largest modulus accepted for prime fields.
pub const MAX_PRIME: u64 = 1 << 61;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Which field a scalar lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldTag {
    Rational,
    Cyclotomic12,
    Prime(u64),
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rational => write!(f, "Q"),
            FieldTag::Cyclotomic12 => write!(f, "Q(zeta12)"),
            FieldTag::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// An element of Q(z) in the basis 1, z, z^2, z^3.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclo12(pub [Rational; 4]);

impl Cyclo12 {
    pub fn zero() -> Self {
        Cyclo12([int(0), int(0), int(0), int(0)])
    }

    pub fn one() -> Self {
        Self::from_rational(int(1))
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclo12([r, int(0), int(0), int(0)])
    }

    /// z^k for any integer k.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(12) as usize;
        let mut c = vec![int(0); k + 1];
        c[k] = int(1);
        Self::reduce(c)
    }

    /// Reduce an arbitrary coefficient list modulo z^4 = z^2 - 1.
    fn reduce(mut c: Vec<Rational>) -> Self {
        for d in (4..c.len()).rev() {
            let top = std::mem::replace(&mut c[d], int(0));
            if top.is_zero() {
                continue;
            }
            c[d - 2] += &top;
            c[d - 4] -= &top;
        }
        c.resize(4, int(0));
        Cyclo12([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.0[1..].iter().all(|x| x.is_zero()) {
            Some(self.0[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Cyclo12(std::array::from_fn(|k| &self.0[k] + &o.0[k]))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Cyclo12(std::array::from_fn(|k| &self.0[k] - &o.0[k]))
    }

    pub fn neg(&self) -> Self {
        Cyclo12(std::array::from_fn(|k| -&self.0[k]))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut c = vec![int(0); 7];
        for a in 0..4 {
            if self.0[a].is_zero() {
                continue;
            }
            for b in 0..4 {
                c[a + b] += &self.0[a] * &o.0[b];
            }
        }
        Self::reduce(c)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclo12(std::array::from_fn(|k| &self.0[k] * r))
    }

    /// Multiplicative inverse, by solving the 4x4 system given by
    /// multiplication with self.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // columns: self * z^k
        let mut m: Vec<Vec<Rational>> = vec![vec![int(0); 5]; 4];
        for k in 0..4 {
            let col = self.mul(&Self::zeta_pow(k as i64));
            for r in 0..4 {
                m[r][k] = col.0[r].clone();
            }
        }
        m[0][4] = int(1);
        // plain Gauss-Jordan on a 4x5 system
        for c in 0..4 {
            let piv = (c..4).find(|&r| !m[r][c].is_zero())?;
            m.swap(c, piv);
            let pinv = m[c][c].recip();
            for x in m[c].iter_mut() {
                *x *= &pinv;
            }
            for r in 0..4 {
                if r != c && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    for k in 0..5 {
                        let t = &f * &m[c][k];
                        m[r][k] -= t;
                    }
                }
            }
        }
        Some(Cyclo12(std::array::from_fn(|k| m[k][4].clone())))
    }

    /// Complex conjugation z -> z^{-1} = z^11.
    pub fn conj(&self) -> Self {
        let mut acc = Self::zero();
        for k in 0..4 {
            acc = acc.add(&Self::zeta_pow(-(k as i64)).scale(&self.0[k]));
        }
        acc
    }

    /// Image under the ring map sending z to `zeta` in F_p.
    pub fn reduce_mod(&self, p: u64, zeta: u64) -> Result<u64> {
        let mut acc = 0u64;
        let mut zp = 1u64;
        for k in 0..4 {
            let c = reduce_rational(&self.0[k], p)?;
            acc = (acc + mulmod(c, zp, p)) % p;
            zp = mulmod(zp, zeta, p);
        }
        Ok(acc)
    }
}

impl fmt::Display for Cyclo12 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "z", "z^2", "z^3"];
        let mut first = true;
        for k in 0..4 {
            let c = &self.0[k];
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", names[k])?;
            } else {
                write!(f, "({c}){}", names[k])?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn invmod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        None
    } else {
        Some(powmod(a, p - 2, p))
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Residue of a rational number modulo p.
pub fn reduce_rational(r: &Rational, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let num = r.numer().mod_floor_big(&pb);
    let den = r.denom().mod_floor_big(&pb);
    let den = den.to_u64().unwrap_or(0);
    let inv = invmod(den, p).ok_or(Error::BadReduction {
        prime: p,
        value: r.to_string(),
    })?;
    Ok(mulmod(num.to_u64().unwrap_or(0), inv, p))
}

trait ModFloorBig {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt;
}

impl ModFloorBig for BigInt {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

/// The smallest primitive 12th root of unity mod p, for p = 1 mod 12.
pub fn primitive_zeta12(p: u64) -> Result<u64> {
    if p % 12 != 1 || !is_prime(p) {
        return Err(Error::BadPrime(p, "Q(zeta12) needs p = 1 mod 12".into()));
    }
    for z in 2..p {
        if powmod(z, 12, p) == 1 && powmod(z, 6, p) != 1 && powmod(z, 4, p) != 1 {
            return Ok(z);
        }
    }
    unreachable!("p = 1 mod 12 has a primitive 12th root")
}

/// A tagged exact scalar.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Cyclotomic12(Cyclo12),
    PrimeField { value: u64, p: u64 },
}

impl Scalar {
    pub fn tag(&self) -> FieldTag {
        match self {
            Scalar::Rational(_) => FieldTag::Rational,
            Scalar::Cyclotomic12(_) => FieldTag::Cyclotomic12,
            Scalar::PrimeField { p, .. } => FieldTag::Prime(*p),
        }
    }

    pub fn zero(tag: FieldTag) -> Self {
        Self::from_int(0, tag)
    }

    pub fn one(tag: FieldTag) -> Self {
        Self::from_int(1, tag)
    }

    pub fn from_int(n: i64, tag: FieldTag) -> Self {
        match tag {
            FieldTag::Rational => Scalar::Rational(int(n)),
            FieldTag::Cyclotomic12 => Scalar::Cyclotomic12(Cyclo12::from_rational(int(n))),
            FieldTag::Prime(p) => Scalar::PrimeField {
                value: n.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    pub fn q(n: i64, d: i64) -> Self {
        Scalar::Rational(rat(n, d))
    }

    pub fn fp(value: u64, p: u64) -> Self {
        Scalar::PrimeField { value: value % p, p }
    }

    pub fn zero_like(&self) -> Self {
        Self::zero(self.tag())
    }

    pub fn one_like(&self) -> Self {
        Self::one(self.tag())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Cyclotomic12(c) => c.is_zero(),
            Scalar::PrimeField { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.tag() == o.tag() {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.tag(), o.tag()))
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Cyclotomic12(a), Scalar::Cyclotomic12(b)) => Scalar::Cyclotomic12(a.add(b)),
            (Scalar::PrimeField { value: a, p }, Scalar::PrimeField { value: b, .. }) => {
                Scalar::PrimeField { value: (a + b) % p, p: *p }
            }
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.neg_ref())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Cyclotomic12(a), Scalar::Cyclotomic12(b)) => Scalar::Cyclotomic12(a.mul(b)),
            (Scalar::PrimeField { value: a, p }, Scalar::PrimeField { value: b, .. }) => {
                Scalar::PrimeField { value: mulmod(*a, *b, *p), p: *p }
            }
            _ => unreachable!(),
        })
    }

    pub fn try_div(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let inv = o.inv().ok_or(Error::DivisionByZero)?;
        self.try_mul(&inv)
    }

    pub fn neg_ref(&self) -> Self {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Cyclotomic12(a) => Scalar::Cyclotomic12(a.neg()),
            Scalar::PrimeField { value, p } => Scalar::PrimeField {
                value: (p - value) % p,
                p: *p,
            },
        }
    }

    pub fn inv(&self) -> Option<Self> {
        match self {
            Scalar::Rational(a) => (!a.is_zero()).then(|| Scalar::Rational(a.recip())),
            Scalar::Cyclotomic12(a) => a.inv().map(Scalar::Cyclotomic12),
            Scalar::PrimeField { value, p } => {
                invmod(*value, *p).map(|v| Scalar::PrimeField { value: v, p: *p })
            }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = self.one_like();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Scalar::Rational(r) => Some(r.clone()),
            Scalar::Cyclotomic12(c) => c.as_rational(),
            Scalar::PrimeField { .. } => None,
        }
    }

    /// Complex conjugation on Q(z); the identity on the other fields.
    pub fn conj(&self) -> Self {
        match self {
            Scalar::Cyclotomic12(c) => Scalar::Cyclotomic12(c.conj()),
            _ => self.clone(),
        }
    }

    /// Reduce modulo p. Cyclotomic values need p = 1 mod 12 and use the
    /// root returned by [`primitive_zeta12`].
    pub fn reduce_mod(&self, p: u64) -> Result<u64> {
        match self {
            Scalar::Rational(r) => reduce_rational(r, p),
            Scalar::Cyclotomic12(c) => c.reduce_mod(p, primitive_zeta12(p)?),
            Scalar::PrimeField { value, p: q } => {
                if *q == p {
                    Ok(*value)
                } else {
                    Err(Error::FieldMismatch(FieldTag::Prime(*q), FieldTag::Prime(p)))
                }
            }
        }
    }
}

/// The ring map Q -> Q(z) or Q -> F_p.
pub fn promote(x: &Scalar, target: FieldTag) -> Result<Scalar> {
    let r = match x {
        Scalar::Rational(r) => r,
        _ if x.tag() == target => return Ok(x.clone()),
        _ => return Err(Error::FieldMismatch(x.tag(), target)),
    };
    match target {
        FieldTag::Rational => Ok(x.clone()),
        FieldTag::Cyclotomic12 => Ok(Scalar::Cyclotomic12(Cyclo12::from_rational(r.clone()))),
        FieldTag::Prime(p) => {
            if !is_prime(p) || p >= MAX_PRIME {
                return Err(Error::BadPrime(p, "not a prime below 2^61".into()));
            }
            Ok(Scalar::fp(reduce_rational(r, p)?, p))
        }
    }
}

/// i = z^3 and j = z^4 in Q(z).
pub fn cyclotomic_units() -> (Scalar, Scalar) {
    (
        Scalar::Cyclotomic12(Cyclo12::zeta_pow(3)),
        Scalar::Cyclotomic12(Cyclo12::zeta_pow(4)),
    )
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: &'a Scalar) -> Scalar {
                match self.$f(o) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Cyclotomic12(c) => write!(f, "{c}"),
            Scalar::PrimeField { value, .. } => write!(f, "{value}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_mod_seven() {
        let x = promote(&Scalar::q(1, 2), FieldTag::Prime(7)).unwrap();
        assert_eq!(x, Scalar::fp(4, 7));
    }

    #[test]
    fn seventh_mod_seven_is_bad() {
        let e = promote(&Scalar::q(1, 7), FieldTag::Prime(7)).unwrap_err();
        assert!(matches!(e, Error::BadReduction { prime: 7, .. }));
    }

    #[test]
    fn three_into_cyclotomic() {
        let x = promote(&Scalar::q(3, 1), FieldTag::Cyclotomic12).unwrap();
        match x {
            Scalar::Cyclotomic12(c) => assert_eq!(c.0, [int(3), int(0), int(0), int(0)]),
            _ => panic!(),
        }
    }

    #[test]
    fn units() {
        let (i, j) = cyclotomic_units();
        let one = i.one_like();
        assert_eq!(&i * &i, -&one);
        assert!((&(&j * &j) + &j + one.clone()).is_zero());
        assert_eq!((&i * &j).pow(12), one);
        assert_ne!(j, one);
        assert_eq!(j.pow(3), one);
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = Scalar::q(1, 1);
        let b = Scalar::fp(1, 7);
        assert!(matches!(a.try_add(&b), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn cyclotomic_inverse_and_conj() {
        let x = Cyclo12([int(1), int(2), int(-3), rat(1, 2)]);
        assert_eq!(x.mul(&x.inv().unwrap()), Cyclo12::one());
        let (i, _) = cyclotomic_units();
        if let Scalar::Cyclotomic12(i) = i {
            assert_eq!(i.conj(), i.neg());
        }
    }

    #[test]
    fn zeta_reduction_is_a_ring_map() {
        let p = 13;
        let z = primitive_zeta12(p).unwrap();
        let a = Cyclo12([int(1), int(2), int(-3), rat(1, 2)]);
        let b = Cyclo12([rat(2, 3), int(0), int(5), int(-1)]);
        let lhs = a.mul(&b).reduce_mod(p, z).unwrap();
        let rhs = mulmod(a.reduce_mod(p, z).unwrap(), b.reduce_mod(p, z).unwrap(), p);
        assert_eq!(lhs, rhs);
    }
}
