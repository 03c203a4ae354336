//! Frontend for the symplectic-connection kernel: an expression parser, the
//! chart-spec file format, command pipelines, and machine-readable reports.

pub mod chartspec;
pub mod commands;
pub mod expr;
pub mod report;

pub use chartspec::{load_chart_spec, load_chart_spec_str, LoadedSpec, SpecError};
pub use commands::{
    all_residuals_zero, exit_code, run_deform, run_fedosov, run_selftest, run_validate, CliError,
};
pub use expr::{parse_expression, ExprError};
pub use report::Report;
