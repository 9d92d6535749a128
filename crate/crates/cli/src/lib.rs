//! Session-file driven front end for `theta-core`: a JSON session declares
//! a graded hypersurface ring, named modules and primes, and a list of
//! tasks; running it produces a deterministic JSON report and a table.

pub mod report;
pub mod run;
pub mod session;

pub use report::Report;
pub use run::run_session;
pub use session::{SchemaError, Session, SessionFile};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const SCHEMA: i32 = 2;
    pub const MATH: i32 = 3;
}
