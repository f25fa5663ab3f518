//! Command-line frontend: parse module/atom descriptions, dispatch functor
//! computations, property checks, corpus constructions, lab experiments, and
//! the verification suite; emit human-readable or JSON reports.

pub mod dispatch;
pub mod request;

pub use dispatch::{dispatch, RunReport};
pub use request::{parse_request, Format, LabParams, Request, UsageError};

/// Exit codes: 0 success, 1 check failure (with witnesses), 2 usage error.
pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
