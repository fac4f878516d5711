//! JSON files holding a tensor theta.
//!
//! ```json
//! { "field": "Q", "components": [[["0", "1/2", ...], ...], ...] }
//! ```
//!
//! `components` is 4 x 5 x 5. Over `Q` each entry is a rational string, over
//! `Q(zeta12)` a list of four rationals in the basis 1, z, z^2, z^3, and over
//! `F_p` (field `"F_p"` with a `"prime"` key) an integer string.

use num::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Cyclo12, FieldTag, Scalar};
use crate::matrix::ExactMatrix;
use crate::multilinear::{SkewForm, ThetaTensor};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Scalar(String),
    Cyclotomic([String; 4]),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TensorFile {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    pub components: Vec<Vec<Vec<Entry>>>,
}

fn parse_rational(s: &str) -> Result<BigRational> {
    s.trim().parse::<BigRational>().map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

fn parse_entry(e: &Entry, tag: FieldTag) -> Result<Scalar> {
    match (e, tag) {
        (Entry::Scalar(s), FieldTag::Rational) => Ok(Scalar::Rational(parse_rational(s)?)),
        (Entry::Scalar(s), FieldTag::Cyclotomic12) => Ok(Scalar::Cyclotomic12(Cyclo12::from_rational(parse_rational(s)?))),
        (Entry::Scalar(s), FieldTag::Prime(p)) => {
            let v: i64 = s.trim().parse().map_err(|_| Error::Parse(format!("{s:?} is not an integer")))?;
            Ok(Scalar::fp(crate::fp::from_i64(v, p), p))
        }
        (Entry::Cyclotomic(c), FieldTag::Cyclotomic12) => {
            let r = [parse_rational(&c[0])?, parse_rational(&c[1])?, parse_rational(&c[2])?, parse_rational(&c[3])?];
            Ok(Scalar::Cyclotomic12(Cyclo12(r)))
        }
        (Entry::Cyclotomic(_), t) => Err(Error::Parse(format!("cyclotomic entry in a tensor over {t}"))),
    }
}

fn field_tag(f: &TensorFile) -> Result<FieldTag> {
    match f.field.as_str() {
        "Q" => Ok(FieldTag::Rational),
        "Q(zeta12)" => Ok(FieldTag::Cyclotomic12),
        "F_p" => {
            let p = f.prime.ok_or_else(|| Error::Parse("field F_p needs a prime".into()))?;
            crate::fp::check_prime(p)?;
            Ok(FieldTag::Prime(p))
        }
        other => Err(Error::Parse(format!("unknown field {other:?}"))),
    }
}

impl TensorFile {
    pub fn to_theta(&self) -> Result<ThetaTensor> {
        let tag = field_tag(self)?;
        if self.components.len() != 4 {
            return Err(Error::Parse(format!("{} components, expected 4", self.components.len())));
        }
        let mut comps = Vec::new();
        for c in &self.components {
            if c.len() != 5 || c.iter().any(|r| r.len() != 5) {
                return Err(Error::Parse("each component must be 5 x 5".into()));
            }
            let rows = c.iter().map(|r| r.iter().map(|e| parse_entry(e, tag)).collect()).collect::<Result<Vec<Vec<Scalar>>>>()?;
            comps.push(SkewForm::new(ExactMatrix::from_rows(rows)?)?);
        }
        ThetaTensor::new(comps)
    }

    pub fn from_theta(theta: &ThetaTensor) -> Self {
        let (field, prime) = match theta.tag() {
            FieldTag::Rational => ("Q", None),
            FieldTag::Cyclotomic12 => ("Q(zeta12)", None),
            FieldTag::Prime(p) => ("F_p", Some(p)),
        };
        let entry = |s: &Scalar| match s {
            Scalar::Rational(r) => Entry::Scalar(r.to_string()),
            Scalar::PrimeField { value, .. } => Entry::Scalar(value.to_string()),
            Scalar::Cyclotomic12(c) => Entry::Cyclotomic(std::array::from_fn(|k| c.0[k].to_string())),
        };
        let components = theta
            .components()
            .iter()
            .map(|c| (0..5).map(|i| (0..5).map(|j| entry(c.matrix().get(i, j))).collect()).collect())
            .collect();
        TensorFile { field: field.into(), prime, components }
    }
}

pub fn read_theta(json: &str) -> Result<ThetaTensor> {
    let f: TensorFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    f.to_theta()
}

pub fn write_theta(theta: &ThetaTensor) -> String {
    serde_json::to_string_pretty(&TensorFile::from_theta(theta)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::ozeki::ozeki_theta;
    use crate::models::s5::s5_theta;

    #[test]
    fn roundtrip() {
        for t in [s5_theta().unwrap(), ozeki_theta()] {
            let back = read_theta(&write_theta(&t)).unwrap();
            assert_eq!(back.components(), t.components());
        }
    }

    #[test]
    fn rejects_bad_shape() {
        let s = r#"{"field":"Q","components":[[["0"]]]}"#;
        assert!(read_theta(s).is_err());
    }
}
