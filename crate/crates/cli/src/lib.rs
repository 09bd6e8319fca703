//! Batch front end: JSON jobs in, tables or JSON result documents out.

mod error;
mod job;
mod run;
mod table;

pub use error::{CliError, ErrorKind};
pub use job::{
    parse_job, BudgetSpec, Command, DegreeRange, JobSpec, OutputFormat, Resolved, BUDGET_ENV,
    DEFAULT_MAX_DEGREE, DEFAULT_MAX_RANK,
};
pub use run::{run, DegreeRow, PhiEntry, ResultDocument, Timing, TOOLKIT_VERSION};
pub use table::print_table;

/// Renders a document in the requested format.
pub fn render(doc: &ResultDocument, format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => print_table(doc),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("document serializes");
            s.push('\n');
            s
        }
    }
}

/// Exit status for a finished job: 0, or 4 when a check failed.
pub fn exit_code(doc: &ResultDocument) -> i32 {
    if doc.verified() {
        0
    } else {
        ErrorKind::Verification.exit_code()
    }
}
