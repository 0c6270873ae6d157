//! Library side of the `logsurf` binary: scenario files, command
//! evaluation and reports.

pub mod report;
pub mod run;
pub mod schema;

pub use report::{BatchReport, Report, Status};
pub use run::{run_batch, run_file, run_scenario, scenario_files, Command, Options};
pub use schema::{InputError, ScenarioFile};
