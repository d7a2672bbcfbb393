//! Front end for `ramanujan-core`: the constants ledger, the verification
//! suite and CSV/JSON table output.

pub mod format;
pub mod ledger;
pub mod table;
pub mod verify;

pub use ledger::{constants_ledger, LedgerEntry};
pub use table::{emit_table, render_table, GridSpec, TableFormat, TableKind};
pub use verify::{
    run_criterion, run_verify, Check, ConfigError, Counts, VerifyConfig, VerifyReport,
};
