use std::io::{IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use toriq::commands::{self, Command, SliceArgs, SliceFan, EXIT_INVALID, EXIT_OK};
use toriq::fixtures;
use toriq::report::{Report, Style};

#[derive(Parser)]
#[command(name = "toriq", version, about = "Quotients of subtorus actions on toric varieties")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FanArg {
    Source,
    Target,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check that the input describes a fan or system of fans.
    Validate { file: String },
    /// Enlarge the acting lattice to the lattice of invariant functions.
    Hhat { file: String },
    /// Compute the invariant separation.
    Separation { file: String },
    /// Compute the toric variety quotient.
    TvQuotient { file: String },
    /// Project the charts without enlargement.
    TpQuotient { file: String },
    /// Orbits hit by the given map, or by the quotient map if none is given.
    Image { file: String },
    /// Report all known obstructions for the quotient.
    Diagnose { file: String },
    /// Draw the section of a three-dimensional fan by a plane as SVG.
    SlicePlot {
        file: String,
        /// Normal vector of the plane, comma-separated.
        #[arg(long, allow_hyphen_values = true, default_value = "1,0,0")]
        normal: String,
        /// Value of the normal on the plane, an integer or fraction.
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        level: String,
        /// Which fan to cut: the input, or the map target.
        #[arg(long, value_enum, default_value = "source")]
        fan: FanArg,
    },
    /// List the bundled examples, or print one.
    Examples { name: Option<String> },
}

fn color_enabled(to_file: bool) -> bool {
    match std::env::var("TORIQ_COLOR").as_deref() {
        Ok("0") => false,
        Ok("1") => true,
        _ => !to_file && std::io::stdout().is_terminal(),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> ExitCode {
    let result = match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("toriq: cannot write output: {e}");
            ExitCode::from(EXIT_INVALID as u8)
        }
    }
}

fn main() -> ExitCode {
    let Cli { command, json, out } = Cli::parse();
    let style = Style { color: color_enabled(out.is_some()) };

    let (file, command) = match command {
        Cmd::Examples { name: None } => {
            let r = commands::examples();
            let text = if json { r.to_json() } else { r.to_text(style) };
            return emit(&out, &text);
        }
        Cmd::Examples { name: Some(name) } => {
            return match fixtures::lookup(&name) {
                Some(f) => emit(&out, f.text),
                None => {
                    eprintln!("toriq: no bundled example named {name:?}");
                    ExitCode::from(EXIT_INVALID as u8)
                }
            };
        }
        Cmd::Validate { file } => (file, Command::Validate),
        Cmd::Hhat { file } => (file, Command::Hhat),
        Cmd::Separation { file } => (file, Command::Separation),
        Cmd::TvQuotient { file } => (file, Command::TvQuotient),
        Cmd::TpQuotient { file } => (file, Command::TpQuotient),
        Cmd::Image { file } => (file, Command::Image),
        Cmd::Diagnose { file } => (file, Command::Diagnose),
        Cmd::SlicePlot { file, normal, level, fan } => {
            let args = commands::parse_normal(&normal).and_then(|normal| {
                Ok(SliceArgs {
                    normal,
                    level: commands::parse_level(&level)?,
                    fan: match fan {
                        FanArg::Source => SliceFan::Source,
                        FanArg::Target => SliceFan::Target,
                    },
                })
            });
            match args {
                Ok(a) => (file, Command::SlicePlot(a)),
                Err(e) => return fail(json, &out, style, Report::Error(e), EXIT_INVALID),
            }
        }
    };

    let text = match commands::load(&file) {
        Ok(t) => t,
        Err(e) => return fail(json, &out, style, Report::Error(e), EXIT_INVALID),
    };
    let outcome = commands::run(&command, &text);
    if outcome.exit != EXIT_OK {
        return fail(json, &out, style, outcome.report, outcome.exit);
    }
    let text = match (&outcome.svg, json) {
        (Some(svg), false) => svg.clone(),
        _ if json => outcome.report.to_json(),
        _ => outcome.report.to_text(style),
    };
    emit(&out, &text)
}

/// Reports a failure: JSON goes to the normal output, text error reports to
/// standard error.
fn fail(json: bool, out: &Option<PathBuf>, style: Style, report: Report, exit: i32) -> ExitCode {
    if json {
        emit(out, &report.to_json());
    } else if matches!(report, Report::Error(_)) {
        eprint!("{}", report.to_text(style));
    } else {
        emit(out, &report.to_text(style));
    }
    ExitCode::from(exit as u8)
}
