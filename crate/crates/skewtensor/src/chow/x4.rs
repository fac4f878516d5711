//! Classes on G(2,4) x G(3,5): the degeneracy locus C4 and the zero locus X4
//! of a section of U^* (x) Lambda^2 V^*.

use num::BigRational;
use serde::Serialize;

use super::bundle::BundleExpr;
use super::schubert::{ChowElement, Grassmannian};
use crate::error::Result;

pub const G24: Grassmannian = Grassmannian::new(2, 4);
pub const G25: Grassmannian = Grassmannian::new(2, 5);
pub const G35: Grassmannian = Grassmannian::new(3, 5);

fn int(x: &BigRational) -> i64 {
    assert!(x.is_integer(), "{x} is not an integer");
    i64::try_from(x.to_integer()).expect("fits i64")
}

#[derive(Clone, Debug, Serialize)]
pub struct PorteousReport {
    /// class of C4 on G(3,5), sigma_lam in the usual convention for the rank 3 subbundle
    pub class_g35: String,
    /// the same class on G(2,5) through V -> V^perp
    pub class_g25: String,
    pub degree: i64,
    /// codimension and degree of the rank <= 1 locus
    pub rank1_codim: usize,
    pub rank1_points: i64,
    #[serde(skip)]
    pub class: ChowElement,
}

impl PorteousReport {
    /// printed form 3 s11 + 2 s2 on G(2,5)
    pub fn matches_printed(&self) -> bool {
        let amb = [G25];
        let printed = ChowElement::from_terms(
            &amb,
            [(vec![vec![1, 1]], BigRational::from_integer(3.into())), (vec![vec![2]], BigRational::from_integer(2.into()))],
        )
        .expect("fits G(2,5)");
        self.class.transpose_grassmannian().map(|c| c == printed).unwrap_or(false)
    }
}

/// Rank <= 2 locus of Lambda^2 V -> V4^* (x) O on G(3,5), by Porteous:
/// c_2(F - E) = s_2(Lambda^2 V). Rank <= 1 is the 2x2 determinant in c(-E).
pub fn porteous_c4() -> Result<PorteousReport> {
    let amb = [G35];
    let e = BundleExpr::sub(0).wedge(2);
    let s = e.segre(&amb)?;
    let class = s.part(2);
    let degree = int(&class.mul(&ChowElement::h(&amb, 0).pow(4))?.integrate());
    let (s2, s3, s4) = (s.part(2), s.part(3), s.part(4));
    let rank1 = s3.mul(&s3)?.sub(&s2.mul(&s4)?)?;
    let class_g25 = class.transpose_grassmannian()?;
    Ok(PorteousReport {
        class_g35: class.to_string(),
        class_g25: class_g25.to_string(),
        degree,
        rank1_codim: (3 - 1) * (4 - 1),
        rank1_points: int(&rank1.integrate()),
        class,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HNumbers {
    /// H1^4, H1^3 H2, H1^2 H2^2, H1 H2^3, H2^4
    pub h: [i64; 5],
    pub minus_k: String,
    pub minus_k_is_h1_plus_h2: bool,
    pub k4: i64,
    pub k4_binomial: i64,
    pub chi_top: i64,
    /// -K of X8' on G(2,4) x G(2,5)
    pub x8p_minus_k: String,
    pub x8p_index_three: bool,
}

/// E = U^* boxtimes Lambda^2 V^* on G(2,4) x G(3,5).
pub fn x4_bundle() -> BundleExpr {
    BundleExpr::sub(0).dual().times(BundleExpr::sub(1).wedge(2).dual())
}

pub fn x4_fundamental_class() -> Result<ChowElement> {
    x4_bundle().chern_class(&[G24, G35], 6)
}

fn minus_canonical(amb: &[Grassmannian], e: &BundleExpr) -> Result<ChowElement> {
    let t = BundleExpr::tangent(0).plus(BundleExpr::tangent(1));
    t.chern_class(amb, 1)?.sub(&e.chern_class(amb, 1)?)
}

pub fn x4_h_numbers() -> Result<HNumbers> {
    let amb = [G24, G35];
    let e = x4_bundle();
    let ce = e.chern(&amb)?;
    let x = ce.part(6);
    let (h1, h2) = (ChowElement::h(&amb, 0), ChowElement::h(&amb, 1));
    let mut h = [0; 5];
    for (i, slot) in h.iter_mut().enumerate() {
        let mono = h1.pow(4 - i as u32).mul(&h2.pow(i as u32))?;
        *slot = int(&x.mul(&mono)?.integrate());
    }
    let mk = minus_canonical(&amb, &e)?;
    let k4 = int(&x.mul(&mk.pow(4))?.integrate());
    let k4_binomial = h[0] + 4 * h[1] + 6 * h[2] + 4 * h[3] + h[4];
    let t = BundleExpr::tangent(0).plus(BundleExpr::tangent(1));
    let ctx = t.chern(&amb)?.mul(&ce.inverse()?)?.part(4);
    let chi_top = int(&x.mul(&ctx)?.integrate());

    let amb8 = [G24, G25];
    let e8 = BundleExpr::sub(0).dual().times(BundleExpr::sub(1).wedge(2).dual());
    let mk8 = minus_canonical(&amb8, &e8)?;
    let (a, b) = (ChowElement::h(&amb8, 0), ChowElement::h(&amb8, 1));
    let three = a.add(&b)?.scale_int(3);
    Ok(HNumbers {
        h,
        minus_k: mk.to_string(),
        minus_k_is_h1_plus_h2: mk == h1.add(&h2)?,
        k4,
        k4_binomial,
        chi_top,
        x8p_minus_k: mk8.to_string(),
        x8p_index_three: mk8 == three,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c4_class_and_degree() {
        let r = porteous_c4().unwrap();
        assert_eq!(r.degree, 12);
        assert!(r.matches_printed(), "{}", r.class_g25);
        assert_eq!(r.rank1_points, 10);
    }

    #[test]
    fn h_numbers() {
        let r = x4_h_numbers().unwrap();
        assert_eq!(r.h, [2, 6, 13, 14, 12]);
        assert!(r.minus_k_is_h1_plus_h2);
        assert_eq!(r.k4, 172);
        assert_eq!(r.k4_binomial, 172);
        assert_eq!(r.chi_top, 31);
        assert!(r.x8p_index_three);
    }
}
