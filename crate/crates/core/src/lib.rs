//! Task-centric exploratory data analysis.
//!
//! Load a CSV into a chunked [`DataFrame`], call one of the task functions
//! ([`plot`], [`plot_correlation`], [`plot_missing`], [`create_report`]) and
//! render the result to HTML or JSON with [`render`].
//!
//! Statistical kernels are generic over [`scalar::Scalar`]; the aliases below
//! fix them to `f64`, which is what the task layer uses.

pub mod analytics;
pub mod chart;
pub mod cli;
pub mod config;
pub mod error;
pub mod frame;
pub mod graph;
pub mod insights;
pub mod intermediate;
pub mod render;
pub mod scalar;
pub mod tasks;

pub use chart::ChartKind;
pub use config::{build_config, from_assignments, ConfigTree, ConfigValue};
pub use error::{EdaError, Result};
pub use frame::{read_csv, CsvOptions, DType, DataFrame};
pub use intermediate::Intermediate;
pub use tasks::{create_report, plot, plot_correlation, plot_missing, run_task, Family, Report, TaskResult};

pub type Moments = analytics::moments::Moments<f64>;
pub type StatsPartial = analytics::moments::StatsPartial<f64>;
pub type CoMoments = analytics::correlation::CoMoments<f64>;
pub type BinLayout = analytics::histogram::BinLayout<f64>;
pub type HexLayout = analytics::bivariate::HexLayout<f64>;
