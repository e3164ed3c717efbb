//! Command-line front end: `eda <plot|correlation|missing|report> DATA [COL...] [options]`.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 data error,
//! 3 kernel error. Diagnostics and progress go to stderr; stdout only ever
//! carries JSON requested with `--json -`.

use crate::config::{from_assignments, read_assignments, ConfigTree};
use crate::error::EdaError;
use crate::frame::{read_csv, CsvOptions, DataFrame};
use crate::graph::{ComputeDag, Progress};
use crate::render::{export_report_json, export_task_json, report_html, task_html};
use crate::tasks::{default_workers, plan_report, plan_task, Family};
use clap::{Args, Parser, Subcommand};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "eda", version, about = "Task-centric exploratory data analysis reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Distributions of the whole frame, one column, or a column pair
    Plot(TaskArgs),
    /// Correlation matrices, rankings against one column, or a pair scatter
    Correlation(TaskArgs),
    /// Missing-value structure and the impact of dropping missing rows
    Missing(TaskArgs),
    /// Full report covering every task
    Report(CommonArgs),
}

#[derive(Debug, Args)]
struct TaskArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Zero to two column names
    #[arg(value_name = "COLUMN", num_args = 0..=2)]
    columns: Vec<String>,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// CSV file with a header row
    data: PathBuf,
    /// Configuration assignment KEY=VALUE (repeatable)
    #[arg(long = "config", short = 'c', value_name = "KEY=VALUE")]
    config: Vec<String>,
    /// File of KEY=VALUE lines; --config assignments override it
    #[arg(long, value_name = "FILE")]
    config_file: Option<PathBuf>,
    /// HTML output path (default: <stem>.<task>[.<columns>].html)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Also write the JSON export; `-` writes it to stdout
    #[arg(long, value_name = "FILE")]
    json: Option<String>,
    /// Worker threads for the reduce stage
    #[arg(long, env = "EDA_WORKERS", value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,
    /// Rows per chunk when loading
    #[arg(long, value_name = "N")]
    chunk_rows: Option<usize>,
    /// Write the planned computation graph to FILE
    #[arg(long, value_name = "FILE")]
    dump_graph: Option<PathBuf>,
}

/// Exit code for an error.
pub fn exit_code(e: &EdaError) -> i32 {
    use EdaError::*;
    match e {
        UnknownKey { .. } | TypeMismatch { .. } | InvalidArgument(_) | InvalidChunkSize(_) => 1,
        FileNotFound(_) | ParseError { .. } | EmptyInput | UnknownColumn { .. } | UnsupportedCombination(_) | NoData(_)
        | DegenerateSpread(_) | Io(_) => 2,
        CycleDetected(_) | StageViolation { .. } | KernelError { .. } | UnknownKind(_) => 3,
    }
}

/// Default HTML file name, e.g. `house.plot.price.html`.
pub fn default_output(data: &Path, task: &str, columns: &[String]) -> PathBuf {
    let stem = data.file_stem().map_or_else(|| "data".into(), |s| s.to_string_lossy().into_owned());
    let mut name = format!("{stem}.{task}");
    for c in columns {
        name.push('.');
        name.push_str(c);
    }
    name.push_str(".html");
    PathBuf::from(name)
}

fn load_config(args: &CommonArgs) -> Result<ConfigTree, EdaError> {
    let mut assignments = match &args.config_file {
        Some(path) => read_assignments(path).map_err(|e| EdaError::InvalidArgument(format!("config file: {e}")))?,
        None => Vec::new(),
    };
    assignments.extend(args.config.iter().cloned());
    from_assignments(&assignments)
}

enum Output {
    Task(crate::tasks::TaskResult),
    Report(crate::tasks::Report),
}

struct Run<'a> {
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Run<'_> {
    fn execute(&mut self, command: Command) -> Result<(), EdaError> {
        let (task, family, args, columns) = match command {
            Command::Plot(t) => ("plot", Some(Family::Plot), t.common, t.columns),
            Command::Correlation(t) => ("correlation", Some(Family::PlotCorrelation), t.common, t.columns),
            Command::Missing(t) => ("missing", Some(Family::PlotMissing), t.common, t.columns),
            Command::Report(c) => ("report", None, c, vec![]),
        };
        let cfg = load_config(&args)?;
        let mut options = CsvOptions { numeric_threshold: cfg.float("data.numeric_threshold"), ..CsvOptions::default() };
        if let Some(n) = args.chunk_rows {
            options.chunk_rows = n;
        }
        let df: DataFrame = read_csv(&args.data, &options)?;
        let workers = args.workers.map_or_else(default_workers, |w| w as usize);

        let stderr = &mut *self.stderr;
        let mut progress = |p: Progress| {
            let _ = writeln!(stderr, "{}/{}/{}", p.stage.as_str(), p.completed, p.total);
        };
        let dump = |graph: &ComputeDag| -> Result<(), EdaError> {
            if let Some(path) = &args.dump_graph {
                std::fs::write(path, graph.dump())?;
            }
            Ok(())
        };
        let output = match family {
            Some(f) => {
                let plan = plan_task(&df, f, &columns, &cfg)?;
                dump(plan.graph())?;
                Output::Task(plan.run(&df, &cfg, workers, &mut progress)?)
            }
            None => {
                let plan = plan_report(&df, &cfg)?;
                dump(plan.graph())?;
                Output::Report(plan.run(&df, &cfg, workers, &mut progress)?)
            }
        };

        let (html, json) = match &output {
            Output::Task(r) => (task_html(r, &cfg), args.json.as_ref().map(|_| export_task_json(r))),
            Output::Report(r) => (report_html(r, &cfg), args.json.as_ref().map(|_| export_report_json(r))),
        };
        let out = args.out.clone().unwrap_or_else(|| default_output(&args.data, task, &columns));
        std::fs::write(&out, html)?;
        let _ = writeln!(self.stderr, "wrote {}", out.display());
        if let (Some(target), Some(text)) = (&args.json, json) {
            if target == "-" {
                self.stdout.write_all(text.as_bytes())?;
            } else {
                std::fs::write(target, text)?;
                let _ = writeln!(self.stderr, "wrote {target}");
            }
        }
        Ok(())
    }
}

/// Run with explicit output streams; returns the exit code.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            // help and version are the requested output, so they go to stdout
            let text = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(text.as_bytes());
            } else {
                let _ = stderr.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let mut run = Run { stdout, stderr };
    match run.execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(run.stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_names() {
        let cols = vec!["price".to_owned()];
        assert_eq!(default_output(Path::new("data/house.csv"), "plot", &cols), PathBuf::from("house.plot.price.html"));
        assert_eq!(default_output(Path::new("x.csv"), "report", &[]), PathBuf::from("x.report.html"));
    }

    #[test]
    fn usage_errors_exit_one() {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        assert_eq!(run_with(["eda", "frobnicate"], &mut o, &mut e), 1);
        assert_eq!(run_with(["eda", "plot", "a.csv", "x", "y", "z"], &mut o, &mut e), 1);
        assert!(o.is_empty());
    }
}
