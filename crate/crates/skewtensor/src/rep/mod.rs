//! Representation theory: symmetric group characters, Bott's theorem on
//! Grassmannians, and the Koszul complex of X4.

pub mod bott;
pub mod koszul;
pub mod s6;
pub mod sn;

pub use bott::{bott, BottResult, FactorWeight, GLWeight};
pub use koszul::{koszul_sections_and_rigidity, lambda_k_of_e, KoszulReport};
pub use sn::{s5_decompose, s6_decompose, RepDecomposition, SnCharacter};
pub use s6::{pic_and_chow_types, s6_outer_check, OuterReport, PicChowTypes};
