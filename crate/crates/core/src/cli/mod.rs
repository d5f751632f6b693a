//! Front end plumbing: expressions, model descriptors, suites and reports.

pub mod commands;
pub mod descriptor;
pub mod expr;
pub mod report;
pub mod suites;

pub use descriptor::{Model, ModelDescriptor};
pub use expr::{parse_form, render, Expr};
pub use suites::{run_suite, CheckRecord, Status};
