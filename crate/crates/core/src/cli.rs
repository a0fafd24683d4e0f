//! The `sigvar` command-line front end.
//!
//! Exit codes: 0 on success, 1 for domain errors (bad input data, failed
//! checks), 2 for usage errors.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::io::parse_series;
use crate::rational::format_rational;
use crate::signature::{dsign, log_signature, Interpretation, TimeSeries};
use crate::tensor::{CheckReport, Product, Tensor};
use crate::varieties::{
    expected_dimension, export_macaulay2, jacobian_rank_sweep, reachability_residual, reachability_system,
    vanishes_symbolically, verify_vanishing, Convention, LabeledPoly, DEFAULT_MODULUS,
};
use crate::words::{lambda, lyndon_words};

#[derive(Parser, Debug)]
#[command(name = "sigvar", version, about = "Iterated-sum signatures and their varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Signature of a CSV series, as a JSON tensor.
    Sig(SigArgs),
    /// Membership checks on a JSON tensor or the signature of a CSV series.
    Check(CheckArgs),
    /// Lyndon words of height at most the given bound.
    Lyndon(LyndonArgs),
    /// Table of Lyndon word counts by dimension and height.
    LambdaTable(LambdaTableArgs),
    /// Apply a Hoffman map to a JSON tensor.
    Hoffman(HoffmanArgs),
    /// log(Φ*(S)) of a CSV series, as a JSON tensor.
    Logsig(SigArgs),
    /// Reachability residuals of a series for a target.
    Reach(ReachArgs),
    /// Jacobian ranks of the signature map for a range of series lengths.
    DimEstimate(DimArgs),
    /// Macaulay2 script for the ideal of a signature variety.
    ExportM2(ExportArgs),
    /// Check that a polynomial in coordinate names vanishes on a variety.
    VerifyVanishing(VanishingArgs),
}

#[derive(Args, Debug)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SeriesInput {
    /// Dimension of the series (inferred from the CSV when omitted).
    #[arg(long)]
    dim: Option<usize>,
    /// Rows are path positions; increments are their differences.
    #[arg(long, conflicts_with = "increments")]
    path: bool,
    /// Rows are increments (the default).
    #[arg(long)]
    increments: bool,
}

impl SeriesInput {
    fn interpretation(&self) -> Interpretation {
        if self.path {
            Interpretation::Path
        } else {
            Interpretation::Increments
        }
    }
}

#[derive(Args, Debug)]
struct SigArgs {
    #[arg(long)]
    height: usize,
    #[command(flatten)]
    series: SeriesInput,
    #[command(flatten)]
    output: Output,
    /// CSV file, or `-` for stdin.
    input: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckKind {
    /// Quasi-shuffle group-likeness.
    Qshuffle,
    /// Shuffle group-likeness (of Φ*(S) for series input).
    Grouplike,
    /// Shuffle Lie element (of log(Φ*(S)) for series input).
    Lie,
}

#[derive(Args, Debug)]
struct CheckArgs {
    kind: CheckKind,
    /// Truncation height for series input.
    #[arg(long)]
    height: Option<usize>,
    #[command(flatten)]
    series: SeriesInput,
    #[command(flatten)]
    output: Output,
    /// JSON tensor or CSV series, or `-` for stdin.
    input: String,
}

#[derive(Args, Debug)]
struct LyndonArgs {
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    height: usize,
    /// Print the number of words of each height instead of the words.
    #[arg(long)]
    count_only: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum TableFormat {
    #[default]
    Text,
    Csv,
}

#[derive(Args, Debug)]
struct LambdaTableArgs {
    /// Range such as `1..7` or a single value.
    #[arg(long, default_value = "1..7")]
    dim: String,
    #[arg(long, default_value = "1..9")]
    height: String,
    #[arg(long, value_enum, default_value_t)]
    format: TableFormat,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum HoffmanMap {
    Phi,
    Psi,
    PhiStar,
    PsiStar,
}

#[derive(Args, Debug)]
struct HoffmanArgs {
    #[arg(long, value_enum)]
    map: HoffmanMap,
    #[command(flatten)]
    output: Output,
    /// JSON tensor, or `-` for stdin.
    input: String,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum ConventionArg {
    #[default]
    Phi,
    PhiStar,
}

#[derive(Args, Debug)]
struct ReachArgs {
    /// JSON tensor supported on single letters.
    #[arg(long)]
    target: String,
    /// CSV series.
    #[arg(long)]
    series: String,
    /// Height of the system (defaults to the target's bound).
    #[arg(long)]
    height: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    convention: ConventionArg,
    #[arg(long)]
    path: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct DimArgs {
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    height: usize,
    /// Series lengths to try, e.g. `1..12`.
    #[arg(long, default_value = "1..8")]
    series_len: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_MODULUS)]
    modulus: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct ExportArgs {
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    height: usize,
    #[arg(long)]
    series_len: usize,
    /// Include coordinates of every height up to the bound.
    #[arg(long)]
    all_heights: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct VanishingArgs {
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    height: usize,
    #[arg(long)]
    series_len: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also expand the composition with the parametrization.
    #[arg(long)]
    symbolic: bool,
    #[command(flatten)]
    output: Output,
    /// The polynomial, or `@file` to read it from a file.
    poly: String,
}

/// Runs the command line with real stdio and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the command line, writing to the given streams.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(outcome) => {
            if let Some(path) = outcome.file {
                if let Err(e) = std::fs::write(&path, &outcome.text) {
                    let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                    return 1;
                }
            } else {
                let _ = write!(stdout, "{}", outcome.text);
            }
            if outcome.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

struct Outcome {
    text: String,
    file: Option<PathBuf>,
    /// False when a check ran but failed.
    ok: bool,
}

impl Outcome {
    fn new(text: String, output: Output) -> Self {
        Outcome {
            text,
            file: output.out,
            ok: true,
        }
    }
}

fn positive(name: &str, v: usize) -> Result<usize> {
    if v == 0 {
        return Err(Error::invalid(format!("--{name} must be at least 1")));
    }
    Ok(v)
}

fn read_input(path: &str) -> Result<String> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Error::invalid(format!("cannot read stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Error::invalid(format!("cannot read {path}: {e}")))?;
    }
    Ok(text)
}

fn read_series(path: &str, input: &SeriesInput) -> Result<TimeSeries> {
    if let Some(d) = input.dim {
        positive("dim", d)?;
    }
    let text = read_input(path)?;
    parse_series(&text, input.dim, input.interpretation()).map_err(|e| in_file(path, e))
}

fn read_tensor(path: &str) -> Result<Tensor> {
    Tensor::from_json(&read_input(path)?).map_err(|e| in_file(path, e))
}

fn in_file(path: &str, e: Error) -> Error {
    match e {
        Error::Parse { line, column, message } => Error::Parse {
            line,
            column,
            message: format!("{path}: {message}"),
        },
        other => other,
    }
}

/// `"a..b"`, `"a..=b"` or `"a"`.
fn parse_range(name: &str, s: &str) -> Result<std::ops::RangeInclusive<usize>> {
    let bad = || Error::invalid(format!("--{name}: expected a range like 1..7, got {s:?}"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

fn report_text(report: &CheckReport) -> (String, bool) {
    (format!("{report}\n"), report.passed())
}

fn dispatch(command: Command) -> Result<Outcome> {
    match command {
        Command::Sig(a) => {
            let h = positive("height", a.height)?;
            let y = read_series(&a.input, &a.series)?;
            Ok(Outcome::new(dsign(&y, h).to_json() + "\n", a.output))
        }
        Command::Logsig(a) => {
            let h = positive("height", a.height)?;
            let y = read_series(&a.input, &a.series)?;
            Ok(Outcome::new(log_signature(&y, h).to_json() + "\n", a.output))
        }
        Command::Check(a) => {
            let text = read_input(&a.input)?;
            let tensor = if text.trim_start().starts_with('{') {
                Tensor::from_json(&text).map_err(|e| in_file(&a.input, e))?
            } else {
                let h = a
                    .height
                    .ok_or_else(|| Error::invalid("--height is required for series input"))?;
                positive("height", h)?;
                if let Some(d) = a.series.dim {
                    positive("dim", d)?;
                }
                let y =
                    parse_series(&text, a.series.dim, a.series.interpretation()).map_err(|e| in_file(&a.input, e))?;
                let s = dsign(&y, h);
                match a.kind {
                    CheckKind::Qshuffle => s,
                    CheckKind::Grouplike => s.hoffman_phi_star(),
                    CheckKind::Lie => log_signature(&y, h),
                }
            };
            let report = match a.kind {
                CheckKind::Qshuffle => tensor.check_grouplike(Product::QuasiShuffle),
                CheckKind::Grouplike => tensor.check_grouplike(Product::Shuffle),
                CheckKind::Lie => tensor.check_lie_shuffle(),
            };
            let (text, ok) = report_text(&report);
            Ok(Outcome {
                ok,
                ..Outcome::new(text, a.output)
            })
        }
        Command::Lyndon(a) => {
            let (d, h) = (positive("dim", a.dim)?, positive("height", a.height)?);
            let words = lyndon_words(d, h);
            let mut s = String::new();
            if a.count_only {
                for k in 1..=h {
                    let n = words.iter().filter(|w| w.height() == k).count();
                    let _ = writeln!(s, "{k} {n}");
                }
                let _ = writeln!(s, "total {}", words.len());
            } else {
                for w in &words {
                    let _ = writeln!(s, "{w}");
                }
            }
            Ok(Outcome::new(s, a.output))
        }
        Command::LambdaTable(a) => {
            let dims = parse_range("dim", &a.dim)?;
            let heights: Vec<usize> = parse_range("height", &a.height)?.collect();
            let mut rows: Vec<Vec<String>> = Vec::new();
            let mut header = vec!["d\\h".to_string()];
            header.extend(heights.iter().map(|h| h.to_string()));
            rows.push(header);
            for d in dims {
                let mut row = vec![d.to_string()];
                for &h in &heights {
                    row.push(lambda(d, h)?.to_string());
                }
                rows.push(row);
            }
            let s = match a.format {
                TableFormat::Csv => {
                    rows[0][0] = "d".into();
                    rows.iter().map(|r| r.join(",") + "\n").collect()
                }
                TableFormat::Text => {
                    let cols = rows[0].len();
                    let widths: Vec<usize> = (0..cols)
                        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap())
                        .collect();
                    let mut s = String::new();
                    for r in &rows {
                        let cells: Vec<String> = r.iter().zip(&widths).map(|(v, w)| format!("{v:>w$}")).collect();
                        let _ = writeln!(s, "{}", cells.join("  "));
                    }
                    s
                }
            };
            Ok(Outcome::new(s, a.output))
        }
        Command::Hoffman(a) => {
            let t = read_tensor(&a.input)?;
            let out = match a.map {
                HoffmanMap::Phi => t.hoffman_phi(),
                HoffmanMap::Psi => t.hoffman_psi(),
                HoffmanMap::PhiStar => t.hoffman_phi_star(),
                HoffmanMap::PsiStar => t.hoffman_psi_star(),
            };
            Ok(Outcome::new(out.to_json() + "\n", a.output))
        }
        Command::Reach(a) => {
            let target = read_tensor(&a.target)?;
            let h = positive("height", a.height.unwrap_or(target.height_bound()))?;
            let input = SeriesInput {
                dim: Some(target.dim()),
                path: a.path,
                increments: !a.path,
            };
            let y = read_series(&a.series, &input)?;
            let convention = match a.convention {
                ConventionArg::Phi => Convention::Phi,
                ConventionArg::PhiStar => Convention::PhiStar,
            };
            let sys = reachability_system(&target, target.dim(), h, convention)?;
            let residuals = reachability_residual(&sys, &y)?;
            let mut s = String::new();
            let mut nonzero = 0;
            for (c, r) in sys.constraints.iter().zip(&residuals) {
                if !num_traits::Zero::is_zero(r) {
                    nonzero += 1;
                }
                let _ = writeln!(s, "{} {} {}", c.level, c.word, format_rational(r));
            }
            let _ = writeln!(
                s,
                "{} ({} constraints, {} nonzero residuals)",
                if nonzero == 0 { "REACHED" } else { "NOT REACHED" },
                residuals.len(),
                nonzero
            );
            Ok(Outcome::new(s, a.output))
        }
        Command::DimEstimate(a) => {
            let (d, h) = (positive("dim", a.dim)?, positive("height", a.height)?);
            let lengths = parse_range("series-len", &a.series_len)?;
            let sweep = jacobian_rank_sweep(d, h, lengths, a.seed, a.modulus)?;
            let expected = expected_dimension(d, h)?;
            let mut s = String::new();
            let _ = writeln!(s, "N rank");
            for (n, r) in &sweep {
                let _ = writeln!(s, "{n} {r}");
            }
            let _ = writeln!(s, "conjectured dimension {expected}");
            Ok(Outcome::new(s, a.output))
        }
        Command::ExportM2(a) => {
            let (d, h) = (positive("dim", a.dim)?, positive("height", a.height)?);
            let n = positive("series-len", a.series_len)?;
            Ok(Outcome::new(export_macaulay2(d, h, n, a.all_heights)?, a.output))
        }
        Command::VerifyVanishing(a) => {
            let (d, h) = (positive("dim", a.dim)?, positive("height", a.height)?);
            let n = positive("series-len", a.series_len)?;
            let text = match a.poly.strip_prefix('@') {
                Some(path) => read_input(path)?,
                None => a.poly.clone(),
            };
            let poly = LabeledPoly::parse(&text, d)?;
            let report = verify_vanishing(&poly, h, n, a.trials, a.seed)?;
            let mut s = format!("numeric: {report}\n");
            let mut ok = report.vanishes();
            if a.symbolic {
                let sym = vanishes_symbolically(&poly, n);
                ok &= sym;
                let _ = writeln!(s, "symbolic: {}", if sym { "PASS" } else { "FAIL" });
            }
            Ok(Outcome {
                ok,
                ..Outcome::new(s, a.output)
            })
        }
    }
}
