//! Input format, reports and command-line front end for `equiab-core`.

pub mod format;
pub mod report;

pub use format::{parse_input, parse_reader, serialize_input, Input, InputError};
pub use report::{from_json, render_text, render_verification, to_json, ReportDoc};
