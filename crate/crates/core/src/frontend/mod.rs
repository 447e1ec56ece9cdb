//! Parser, JSON reports and the command-line interface.

pub mod cli;
pub mod parser;
pub mod report;

pub use cli::{run, Outcome};
pub use parser::{infer_variables, parse_poly, parse_rational, PolySource};
pub use report::{analyze, AnalysisReport, AnalyzeOptions, SCHEMA_VERSION};
