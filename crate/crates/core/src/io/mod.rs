//! Configuration loading and file output.

pub mod config;
pub mod csv;
pub mod svg;

pub use config::{apply_override, config_to_json, parse_config, split_override};
pub use csv::{summary_csv, telemetry_csv, write_summary_csv, write_telemetry_csv};
pub use svg::{render_svg, write_svg};
