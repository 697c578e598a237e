//! Argument parsing and dispatch for the `gem` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::{self, Family, Measure, Topology};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "gem",
    version,
    about = "Gaussian entanglement measure for pure Gaussian states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one graph state given as a JSON spec file.
    Gem {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = MeasureArg::Gem)]
        measure: MeasureArg,
    },
    /// Two-mode scan over the complex edge weight.
    Scan2 {
        #[arg(long, default_value = "-1:1", allow_hyphen_values = true)]
        re_range: String,
        #[arg(long, default_value = "-1:1", allow_hyphen_values = true)]
        im_range: String,
        #[arg(long, default_value_t = 21)]
        steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Three-mode scans comparing the triangle (G1) with the path (G2).
    Scan3 {
        #[arg(long, value_enum, default_value_t = FamilyArg::Equal)]
        family: FamilyArg,
        #[arg(long, value_enum, default_value_t = TopologyArg::G1)]
        topology: TopologyArg,
        /// Real part of the common weight (equal family).
        #[arg(long, default_value = "0:1", allow_hyphen_values = true)]
        re_range: String,
        /// Imaginary part of the common weight (equal family).
        #[arg(long, default_value = "0:1", allow_hyphen_values = true)]
        im_range: String,
        /// Coupling of edge 1-2 (xy family).
        #[arg(long, default_value = "0:4", allow_hyphen_values = true)]
        x_range: String,
        /// Coupling of edge 2-3 (xy family).
        #[arg(long, default_value = "0:4", allow_hyphen_values = true)]
        y_range: String,
        #[arg(long, default_value_t = 21)]
        steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Lattice scalar field: exact GEM against the large-n expansion.
    Field {
        /// Comma-separated n values (N = 2n + 1 sites).
        #[arg(long, conflicts_with = "modes_list")]
        n_list: Option<String>,
        /// Comma-separated site counts; must be odd.
        #[arg(long)]
        modes_list: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 0)]
        asymptotic_p: u8,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Recompute three rows through the generic pipeline and compare.
    #[arg(long)]
    self_test: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MeasureArg {
    Gem,
    Logneg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    Equal,
    Xy,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TopologyArg {
    G1,
    G2,
}

fn emit(text: &str, output: &OutputArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn dispatch(
    command: Command,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    match command {
        Command::Gem { spec, measure } => {
            let measure = match measure {
                MeasureArg::Gem => Measure::Gem,
                MeasureArg::Logneg => Measure::LogNeg,
            };
            let report = commands::cmd_gem(&spec, measure)?;
            let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
            text.push('\n');
            stdout
                .write_all(text.as_bytes())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
        Command::Scan2 {
            re_range,
            im_range,
            steps,
            output,
        } => {
            let table = commands::cmd_scan2(
                commands::parse_range(&re_range)?,
                commands::parse_range(&im_range)?,
                steps,
                output.self_test,
            )?;
            emit(&table.to_csv(), &output, stdout)
        }
        Command::Scan3 {
            family,
            topology,
            re_range,
            im_range,
            x_range,
            y_range,
            steps,
            output,
        } => {
            let family = match family {
                FamilyArg::Equal => Family::Equal,
                FamilyArg::Xy => Family::Xy,
            };
            let topology = match topology {
                TopologyArg::G1 => Topology::G1,
                TopologyArg::G2 => Topology::G2,
            };
            let (a, b) = match family {
                Family::Equal => (re_range, im_range),
                Family::Xy => (x_range, y_range),
            };
            let table = commands::cmd_scan3(
                family,
                topology,
                commands::parse_range(&a)?,
                commands::parse_range(&b)?,
                steps,
                output.self_test,
            )?;
            emit(&table.to_csv(), &output, stdout)
        }
        Command::Field {
            n_list,
            modes_list,
            mass,
            radius,
            asymptotic_p,
            output,
        } => {
            let ns = match (n_list, modes_list) {
                (Some(list), None) => commands::parse_list(&list)?,
                (None, Some(list)) => commands::modes_to_n(&commands::parse_list(&list)?)?,
                (None, None) => {
                    return Err(CliError::Input(
                        "one of --n-list or --modes-list is required".into(),
                    ))
                }
                (Some(_), Some(_)) => unreachable!("clap rejects both"),
            };
            let run = commands::cmd_field(&ns, mass, radius, asymptotic_p, output.self_test)?;
            emit(&run.table.to_csv(), &output, stdout)?;
            stderr
                .write_all(run.summary().as_bytes())
                .map_err(|source| CliError::Io {
                    path: "<stderr>".into(),
                    source,
                })
        }
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
