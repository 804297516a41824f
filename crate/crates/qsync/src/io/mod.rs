//! Serialization and configuration: the key-value config format, CSV/JSON
//! emitters, and the SVG renderers.

pub mod config;
pub mod csv;
pub mod svg;

pub use config::{load_config, parse_axis, parse_config, Command, OutputFormat, RunConfig};
pub use csv::{
    config_hash, emit_json, emit_profile_csv, emit_qsurface_csv, emit_sweep_csv,
    emit_trajectory_csv,
};
pub use svg::{emit_line_svg, emit_qsurface_svg, emit_sweep_svg, HeatmapOptions};
