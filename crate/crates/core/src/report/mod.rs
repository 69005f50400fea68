//! Experiment orchestration: configuration, presets, table rows, diagnostics
//! and CSV/Markdown emission.

mod config;
mod diagnostics;
mod emit;
mod presets;
mod run;

pub use config::{ExperimentConfig, Format, Grid, Mode, OutputConfig};
pub use diagnostics::{copula_ks, copula_tau, run_diagnostics, DiagnosticsReport, ExpansionRow, KsRow, S2Row, TauRow};
pub use emit::{emit, format_sig6, parse_csv, render};
pub use presets::{preset, Preset, PRESET_SEED};
pub use run::{run_experiment, IndicatorColumns, TableRow, Threshold};
