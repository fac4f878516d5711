//! Exact and modular computations for a tensor in V4* (x) Lambda^2 V5* and the
//! varieties it cuts out.

pub mod chow;
pub mod configurations;
pub mod count;
pub mod error;
pub mod field;
pub mod fp;
pub mod matrix;
pub mod modp;
pub mod models;
pub mod multilinear;
pub mod poly;
pub mod rep;
pub mod verify;

pub use error::{Error, Result};
pub use field::{FieldTag, Scalar};
pub use matrix::ExactMatrix;
pub use multilinear::{ModelId, PencilClass, SkewForm, ThetaTensor};
pub use poly::MultiPoly;
