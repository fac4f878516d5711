//! Intersection theory: Schubert calculus, Chern classes of tautological
//! bundles, and the intersection tables of X4.

pub mod blowup;
pub mod bundle;
pub mod schubert;
pub mod table;
pub mod x4;

pub use blowup::{blowup_ledger_audit, BlowupLedger, LedgerAudit};
pub use bundle::BundleExpr;
pub use schubert::{ChowElement, Grassmannian, Partition};
pub use table::{k3_and_square_map, printed_table, SquareMapReport, X4DivisorTable};
pub use x4::{porteous_c4, x4_h_numbers, HNumbers, PorteousReport};
