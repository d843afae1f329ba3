use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use smelt_core::catalogue::{describe, list_smells};
use smelt_core::config::{load_config, Overrides, ScanConfig};
use smelt_core::exec::Execution;
use smelt_core::ingest::{parse_table_with, read_csv, read_csv_path, IngestError, ParseOptions, RawTable};
use smelt_core::profiler::profile_table_with;
use smelt_core::report::{
    exit_status, render_catalogue_text, render_descriptor_text, render_json_many, render_profile_text,
    render_text, to_canonical_json, FailOn, ProfileReport, ScanReport, EXIT_CLEAN, EXIT_ERROR,
};
use smelt_core::scan_table;

/// Lint CSV datasets for data smells.
#[derive(Debug, Parser)]
#[command(name = "smelt", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Scan CSV files and report data smells.
    Scan(ScanArgs),
    /// Print column statistics without running detectors.
    Profile(ProfileArgs),
    /// List every smell in the catalogue.
    List(OutputArgs),
    /// Describe one smell.
    Explain {
        /// Smell key, for example `red-corr`.
        key: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FailLevel {
    Error,
    Warning,
    Info,
    Never,
}

impl From<FailLevel> for FailOn {
    fn from(l: FailLevel) -> FailOn {
        match l {
            FailLevel::Error => FailOn::Error,
            FailLevel::Warning => FailOn::Warning,
            FailLevel::Info => FailOn::Info,
            FailLevel::Never => FailOn::Never,
        }
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// CSV files to read; `-` reads standard input.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// JSON config file.
    #[arg(long, env = "SMELT_CONFIG")]
    config: Option<PathBuf>,
    /// Read at most this many data rows per file.
    #[arg(long)]
    max_rows: Option<usize>,
    /// Field delimiter: a single character, or `tab`.
    #[arg(long, default_value = ",", value_parser = parse_byte)]
    delimiter: u8,
    /// Quote character.
    #[arg(long, default_value = "\"", value_parser = parse_byte)]
    quote: u8,
    /// Token read as a missing value. Repeat for several; replaces the defaults.
    #[arg(long = "null-token")]
    null_tokens: Vec<String>,
    /// The first row is data, not a header.
    #[arg(long)]
    no_header: bool,
    /// Override a config field, as `field=value`. Repeatable.
    #[arg(long = "set", value_name = "FIELD=VALUE")]
    set: Vec<String>,
    /// Process everything on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    output: OutputArgs,
    /// Turn these smells back on after a config file disabled them (repeatable).
    #[arg(long)]
    enable: Vec<String>,
    /// Skip these smells (repeatable).
    #[arg(long)]
    disable: Vec<String>,
    /// Lowest severity that makes the exit status non-zero.
    #[arg(long, value_enum, default_value_t = FailLevel::Warning)]
    fail_on: FailLevel,
    /// More detail per finding.
    #[arg(short, long, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Debug, Args)]
struct ProfileArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    output: OutputArgs,
}

fn parse_byte(s: &str) -> Result<u8, String> {
    match s {
        "tab" | "\\t" => return Ok(b'\t'),
        _ => {}
    }
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) if c.is_ascii() => Ok(c as u8),
        _ => Err(format!("expected a single ASCII character, got `{s}`")),
    }
}

fn error(msg: impl std::fmt::Display) {
    eprintln!("smelt: error: {msg}");
}

impl InputArgs {
    fn parse_options(&self) -> ParseOptions {
        let mut opts = ParseOptions {
            delimiter: self.delimiter,
            quote: self.quote,
            has_header: !self.no_header,
            max_rows: self.max_rows,
            ..ParseOptions::default()
        };
        if !self.null_tokens.is_empty() {
            opts = opts.with_null_tokens(self.null_tokens.iter().cloned());
        }
        opts
    }

    fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        }
    }

    fn config(&self, enable: &[String], disable: &[String]) -> Option<ScanConfig> {
        let overrides = Overrides {
            set: self.set.clone(),
            enable: enable.to_vec(),
            disable: disable.to_vec(),
        };
        load_config(self.config.as_deref(), &overrides)
            .map_err(|e| error(e))
            .ok()
    }
}

fn read_input(path: &Path, opts: &ParseOptions) -> Result<RawTable, IngestError> {
    if path.as_os_str() == "-" {
        read_csv(io::stdin().lock(), "<stdin>", opts)
    } else {
        read_csv_path(path, opts)
    }
}

fn emit(output: &OutputArgs, text: &str) -> bool {
    let result = match &output.output {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| format!("cannot write to standard output: {e}")),
    };
    result.map_err(error).is_ok()
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

/// Runs `work` on every input and keeps the results in argument order.
fn per_input<T: Send>(
    input: &InputArgs,
    work: impl Fn(RawTable) -> T + Sync,
) -> (Vec<T>, bool) {
    let opts = input.parse_options();
    let results = input.execution().map_slice(&input.inputs, |path| {
        read_input(path, &opts).map(&work).map_err(|e| e.to_string())
    });
    let mut ok = Vec::new();
    let mut failed = false;
    for r in results {
        match r {
            Ok(v) => ok.push(v),
            Err(msg) => {
                error(msg);
                failed = true;
            }
        }
    }
    (ok, failed)
}

fn run_scan(args: &ScanArgs) -> i32 {
    let Some(cfg) = args.input.config(&args.enable, &args.disable) else {
        return EXIT_ERROR;
    };
    let exec = args.input.execution();
    let (reports, failed): (Vec<ScanReport>, bool) = per_input(&args.input, |raw| scan_table(raw, &cfg, exec));

    let text = match args.output.format {
        Format::Json => with_newline(render_json_many(&reports)),
        Format::Text => reports
            .iter()
            .map(|r| render_text(r, args.verbose))
            .collect::<Vec<_>>()
            .join("---\n"),
    };
    if !emit(&args.output, &text) {
        return EXIT_ERROR;
    }
    let fail_on = FailOn::from(args.fail_on);
    let status = reports.iter().map(|r| exit_status(r, fail_on)).max().unwrap_or(EXIT_CLEAN);
    if failed {
        EXIT_ERROR
    } else {
        status
    }
}

fn run_profile(args: &ProfileArgs) -> i32 {
    let Some(cfg) = args.input.config(&[], &[]) else {
        return EXIT_ERROR;
    };
    let exec = args.input.execution();
    let (profiles, failed) = per_input(&args.input, |raw| {
        profile_table_with(&parse_table_with(raw, exec), &cfg, exec)
    });
    let text = match args.output.format {
        Format::Json => {
            let wrapped: Vec<ProfileReport> = profiles.into_iter().map(ProfileReport::new).collect();
            with_newline(to_canonical_json(&wrapped))
        }
        Format::Text => profiles.iter().map(render_profile_text).collect::<Vec<_>>().join("---\n"),
    };
    if !emit(&args.output, &text) || failed {
        EXIT_ERROR
    } else {
        EXIT_CLEAN
    }
}

fn run_list(output: &OutputArgs) -> i32 {
    let text = match output.format {
        Format::Json => with_newline(to_canonical_json(list_smells())),
        Format::Text => render_catalogue_text(),
    };
    if emit(output, &text) {
        EXIT_CLEAN
    } else {
        EXIT_ERROR
    }
}

fn run_explain(key: &str, output: &OutputArgs) -> i32 {
    let d = match describe(key) {
        Ok(d) => d,
        Err(e) => {
            error(e);
            return EXIT_ERROR;
        }
    };
    let text = match output.format {
        Format::Json => with_newline(to_canonical_json(d)),
        Format::Text => render_descriptor_text(d),
    };
    if emit(output, &text) {
        EXIT_CLEAN
    } else {
        EXIT_ERROR
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = match &cli.command {
        Command::Scan(args) => run_scan(args),
        Command::Profile(args) => run_profile(args),
        Command::List(output) => run_list(output),
        Command::Explain { key, output } => run_explain(key, output),
    };
    ExitCode::from(status as u8)
}
