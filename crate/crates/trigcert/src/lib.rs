//! Command-line front end for `trigcert-core`: argument handling, reports
//! (schema `trigcert-v1`) and certificate files (schema `trigcert-cert-v1`).

pub mod certfile;
pub mod cli;
pub mod report;

pub use cli::run;
