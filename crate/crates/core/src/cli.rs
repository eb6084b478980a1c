//! `scsort` command-line front end.
//!
//! Exit status: 0 on success, 1 when `verify` reports a failing claim, 2 on
//! usage errors (bad flags, malformed permutations, out-of-range sizes).

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::constructions::{construct, construct_preimages, small_witness, ConstructionFamily};
use crate::error::Error;
use crate::fertility::{fertility_with, preimages, spectrum, EnumerationOptions, SpectrumTable};
use crate::machine::sc_trace;
use crate::perm::{Pattern3, Permutation};
use crate::verify::{self, parse_selection};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CLAIM_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "scsort",
    version,
    about = "Consecutive-pattern-avoiding stack-sorting maps and their fertility numbers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply SC_sigma to a permutation.
    Map(MapArgs),
    /// Count (or list) the preimages of a permutation.
    Fertility(FertilityArgs),
    /// List the preimages of a permutation.
    Preimages(EnumArgs),
    /// Print a witness family member, optionally with its preimages.
    Construct(ConstructArgs),
    /// Tabulate the fertility of every permutation of length n.
    Spectrum(SpectrumArgs),
    /// Check the structural and numeric claims exhaustively.
    Verify(VerifyArgs),
    /// Print a permutation whose fertility is exactly --n.
    Witness(WitnessArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write results here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MapArgs {
    #[arg(long)]
    pub sigma: Pattern3,
    #[arg(long)]
    pub perm: Permutation,
    /// Print every push and pop.
    #[arg(long)]
    pub trace: bool,
    /// Append the CRO statistic.
    #[arg(long)]
    pub cro: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EnumArgs {
    #[arg(long)]
    pub sigma: Pattern3,
    #[arg(long)]
    pub perm: Permutation,
    /// Sweep all of S_n instead of only inputs starting with the last entry.
    #[arg(long)]
    pub no_prune: bool,
    /// Allow n above the enumeration limit.
    #[arg(long)]
    pub force: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FertilityArgs {
    #[command(flatten)]
    pub common: EnumArgs,
    /// Print the preimages instead of their count.
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long)]
    pub sigma: Pattern3,
    #[arg(long)]
    pub n: usize,
    /// Also print the explicit preimage list.
    #[arg(long)]
    pub preimages: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub sigma: Pattern3,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub force: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long = "max-n", default_value_t = 7)]
    pub max_n: usize,
    /// Comma-separated claim identifiers, or `all`.
    #[arg(long, default_value = "all")]
    pub claims: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[arg(long)]
    pub sigma: Pattern3,
    /// Requested fertility.
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{rendered}");
            } else {
                let _ = write!(stderr, "{rendered}");
            }
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> Outcome {
    match command {
        Command::Map(a) => map(a, stdout),
        Command::Fertility(a) => {
            let list = a.list;
            enumerate(a.common, list, stdout)
        }
        Command::Preimages(a) => enumerate(a, true, stdout),
        Command::Construct(a) => construct_cmd(a, stdout),
        Command::Spectrum(a) => spectrum_cmd(a, stdout),
        Command::Verify(a) => verify_cmd(a, stdout),
        Command::Witness(a) => witness(a, stdout),
    }
}

/// Runs `body` against the `--out` file if given, otherwise stdout.
fn emit<F>(out: &Option<PathBuf>, stdout: &mut dyn Write, body: F) -> Result<(), Failure>
where
    F: FnOnce(&mut dyn Write) -> Result<(), Failure>,
{
    match out {
        Some(path) => {
            let mut file = io::BufWriter::new(File::create(path)?);
            body(&mut file)?;
            file.flush()?;
            Ok(())
        }
        None => body(stdout),
    }
}

fn json_line(w: &mut dyn Write, value: &impl serde::Serialize) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *w, value).map_err(io::Error::from)?;
    writeln!(w)?;
    Ok(())
}

fn map(a: MapArgs, stdout: &mut dyn Write) -> Outcome {
    let t = sc_trace(a.sigma, &a.perm);
    emit(&a.output.out, stdout, |w| {
        match a.output.format.unwrap_or(Format::Text) {
            Format::Json => {
                let mut v = json!({
                    "sigma": t.sigma,
                    "input": t.input,
                    "output": t.output,
                    "cro": t.cro(),
                });
                if a.trace {
                    v["events"] = serde_json::to_value(&t.events).map_err(io::Error::from)?;
                }
                json_line(w, &v)?;
            }
            Format::Csv => {
                writeln!(w, "sigma,input,output,cro")?;
                writeln!(w, "{},{},{},{}", t.sigma, t.input, t.output, t.cro())?;
            }
            Format::Text => {
                if a.trace {
                    write!(w, "{}", t.to_text())?;
                } else {
                    writeln!(w, "{}", t.output)?;
                    if a.cro {
                        writeln!(w, "CRO {}", t.cro())?;
                    }
                }
            }
        }
        Ok(())
    })?;
    Ok(EXIT_OK)
}

fn enumerate(a: EnumArgs, list: bool, stdout: &mut dyn Write) -> Outcome {
    let opts = EnumerationOptions {
        prune: !a.no_prune,
        force: a.force,
    };
    let format = a.output.format.unwrap_or(Format::Text);
    if !list {
        let count = fertility_with(a.sigma, &a.perm, opts)?;
        emit(&a.output.out, stdout, |w| {
            match format {
                Format::Text => writeln!(w, "{count}")?,
                Format::Csv => {
                    writeln!(w, "sigma,permutation,fertility")?;
                    writeln!(w, "{},{},{count}", a.sigma, a.perm)?;
                }
                Format::Json => json_line(
                    w,
                    &json!({ "sigma": a.sigma, "target": a.perm, "count": count }),
                )?,
            }
            Ok(())
        })?;
        return Ok(EXIT_OK);
    }
    let report = preimages(a.sigma, &a.perm, opts)?;
    let found = report.preimages.as_deref().unwrap_or_default();
    emit(&a.output.out, stdout, |w| {
        match format {
            Format::Text => {
                for p in found {
                    writeln!(w, "{p}")?;
                }
            }
            Format::Csv => {
                writeln!(w, "preimage")?;
                for p in found {
                    writeln!(w, "{p}")?;
                }
            }
            Format::Json => json_line(w, &report)?,
        }
        Ok(())
    })?;
    Ok(EXIT_OK)
}

fn construct_cmd(a: ConstructArgs, stdout: &mut dyn Write) -> Outcome {
    let target = construct(a.sigma, a.n)?;
    let listed = if a.preimages {
        Some(construct_preimages(a.sigma, a.n)?)
    } else {
        None
    };
    let fam = ConstructionFamily::new(a.sigma);
    emit(&a.output.out, stdout, |w| {
        match a.output.format.unwrap_or(Format::Text) {
            Format::Json => {
                let mut v = json!({
                    "sigma": a.sigma,
                    "n": a.n,
                    "target": target,
                    "expected_fertility": fam.expected_fertility(a.n),
                });
                if let Some(l) = &listed {
                    v["preimages"] = json!(l);
                }
                json_line(w, &v)?;
            }
            Format::Text | Format::Csv => {
                writeln!(w, "{target}")?;
                for p in listed.iter().flatten() {
                    writeln!(w, "{p}")?;
                }
            }
        }
        Ok(())
    })?;
    Ok(EXIT_OK)
}

fn format_from_path(path: &Path) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => Format::Csv,
        Some("json") => Format::Json,
        _ => Format::Text,
    }
}

/// `counts.csv` gets its histogram beside it as `counts.histogram.csv`.
pub fn histogram_companion(path: &Path) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "spectrum".into());
    path.with_file_name(format!("{stem}.histogram.csv"))
}

fn write_spectrum_text(w: &mut dyn Write, t: &SpectrumTable) -> io::Result<()> {
    writeln!(w, "sigma {} n {} total {}", t.sigma, t.n, t.total())?;
    writeln!(w, "fertility count")?;
    for (f, c) in t.histogram() {
        writeln!(w, "{f} {c}")?;
    }
    Ok(())
}

fn spectrum_cmd(a: SpectrumArgs, stdout: &mut dyn Write) -> Outcome {
    let table = spectrum(a.sigma, a.n, a.force)?;
    let format = a
        .output
        .format
        .or_else(|| a.output.out.as_deref().map(format_from_path))
        .unwrap_or(Format::Text);
    match (format, &a.output.out) {
        (Format::Csv, Some(path)) => {
            let file = io::BufWriter::new(File::create(path)?);
            table.write_counts_csv(file)?;
            let hist = io::BufWriter::new(File::create(histogram_companion(path))?);
            table.write_histogram_csv(hist)?;
        }
        (Format::Csv, None) => {
            table.write_counts_csv(&mut *stdout)?;
            writeln!(stdout)?;
            table.write_histogram_csv(&mut *stdout)?;
        }
        (Format::Json, out) => emit(out, stdout, |w| json_line(w, &table))?,
        (Format::Text, out) => emit(out, stdout, |w| Ok(write_spectrum_text(w, &table)?))?,
    }
    Ok(EXIT_OK)
}

fn verify_cmd(a: VerifyArgs, stdout: &mut dyn Write) -> Outcome {
    let selection = parse_selection(&a.claims)?;
    let results = verify::run_claims(a.max_n, &selection)?;
    let rendered = match a.output.format.unwrap_or(Format::Text) {
        Format::Json => verify::render_json(&results) + "\n",
        Format::Text => verify::render_text(&results),
        Format::Csv => {
            return Err(Failure::Usage(
                "verify supports --format text or json".into(),
            ))
        }
    };
    emit(&a.output.out, stdout, |w| {
        Ok(w.write_all(rendered.as_bytes())?)
    })?;
    Ok(if results.iter().all(|r| r.passed()) {
        EXIT_OK
    } else {
        EXIT_CLAIM_FAILED
    })
}

fn witness(a: WitnessArgs, stdout: &mut dyn Write) -> Outcome {
    let p = small_witness(a.sigma, a.n)?;
    emit(&a.output.out, stdout, |w| {
        match a.output.format.unwrap_or(Format::Text) {
            Format::Json => json_line(
                w,
                &json!({ "sigma": a.sigma, "fertility": a.n, "permutation": p }),
            )?,
            _ => writeln!(w, "{p}")?,
        }
        Ok(())
    })?;
    Ok(EXIT_OK)
}
