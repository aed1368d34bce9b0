//! Verification harness: runs each surface row through the construction,
//! the congruence certificate and the birational maps, and reports every
//! computed value against the expected-value data file.

pub mod expected;
pub mod numeric;
pub mod pipeline;
pub mod properties;
pub mod report;

pub use expected::{ExpectedFile, RowExpect};
pub use fourfold_core::ratmap::{certify_congruence_fiber, CongruenceCertificate};
pub use numeric::{admissible, d_invariant};
pub use pipeline::{run_row, run_rows, Options, RowPlan};
pub use report::{emit_report, Check, RowReport, Status};
