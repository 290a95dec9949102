//! File formats, reports, parallel simulation and the `cmcsel` command line
//! on top of [`cmcsel_core`].

pub mod cli;
pub mod csv_load;
pub mod report;
pub mod scenario_file;
pub mod simulate;

pub use csv_load::{load_csv, CsvSpec, LoadError};
pub use report::{render_table, ReportDoc};
pub use scenario_file::{builtin_scenarios, parse_scenarios, NamedScenario, ScenarioFileError};
pub use simulate::{run_scenario_parallel, SimulationDoc};
