//! `fuss-forest`: numbers, tree enumeration, the binary/ternary bijection and
//! verification sweeps from the command line.
//!
//! Exit codes: 0 success, 1 verification failure or I/O error, 2 usage
//! error, 3 enumeration cap exceeded, 4 parse error, 5 family mismatch.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fuss_forest::trees::{
    enumerate_binary, enumerate_colored_ternary, enumerate_colored_ternary_all, enumerate_forests,
    parse_raw, validate, Forest, ParseError, PlaneTree, SizeCap, SizeError, Violation,
    DEFAULT_MAX_N,
};
use fuss_forest::verify::{self, Bounds, Suite};
use fuss_forest::{forest_catalan, k_catalan, phi, phi_inverse, BinaryTree, ColoredTernaryTree};

const CAP_ENV: &str = "FUSS_FOREST_MAX_N";

#[derive(Parser)]
#[command(
    name = "fuss-forest",
    version,
    about = "Fuss-Catalan numbers and the binary/colored-ternary tree bijection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the k-Catalan number C(n,k), or the m-forest count when --m is given.
    Number {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        k: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: Option<u64>,
    },
    /// List every tree (or m-component forest) of weight n in canonical order.
    Enumerate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: u64,
        /// Internal vertex count (colored-ternary only).
        #[arg(long)]
        p: Option<u64>,
        /// Number of forest components.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Sexp)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Raise the enumeration cap (default 12, or $FUSS_FOREST_MAX_N).
        #[arg(long)]
        max_n: Option<u64>,
    },
    /// Apply the bijection line by line: t2b maps colored ternary trees to
    /// binary trees, b2t the reverse.
    Map {
        #[arg(long, value_enum)]
        direction: Direction,
        /// Input file (stdin when omitted).
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Sexp)]
        format: Format,
    },
    /// Run verification sweeps; defaults are the acceptance bounds.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long)]
        n_max: Option<u64>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m_max: Option<u64>,
        #[arg(long)]
        order: Option<usize>,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
        /// Include wall-clock times (makes output nondeterministic).
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        max_n: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Binary,
    ColoredTernary,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Sexp,
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    T2b,
    B2t,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Identities,
    Bijection,
    Series,
    Counts,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::Bijection => Suite::Bijection,
            SuiteArg::Series => Suite::Series,
            SuiteArg::Counts => Suite::Counts,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Verify(String),
    Io(String),
    Usage(String),
    Cap(SizeError),
    Parse {
        line: usize,
        line_offset: usize,
        error: ParseError,
    },
    Family {
        line: usize,
        violation: Violation,
    },
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Verify(_) | Failure::Io(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Cap(_) => 3,
            Failure::Parse { .. } => 4,
            Failure::Family { .. } => 5,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Verify(m) | Failure::Io(m) | Failure::Usage(m) => m.clone(),
            Failure::Cap(e) => format!("{e}; pass --max-n or set {CAP_ENV} to raise it"),
            Failure::Parse {
                line,
                line_offset,
                error,
            } => format!(
                "line {line}: {error} (byte offset {} in input)",
                line_offset + error.offset
            ),
            Failure::Family { line, violation } => format!("line {line}: {violation}"),
        }
    }
}

impl From<SizeError> for Failure {
    fn from(e: SizeError) -> Self {
        Failure::Cap(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn cap_from(flag: Option<u64>) -> Result<SizeCap, Failure> {
    if let Some(n) = flag {
        return Ok(SizeCap(n));
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => {
            v.trim().parse().map(SizeCap).map_err(|_| {
                Failure::Usage(format!("{CAP_ENV}={v:?} is not a nonnegative integer"))
            })
        }
        Err(_) => Ok(SizeCap(DEFAULT_MAX_N)),
    }
}

fn write_output(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json_string_array(items: &[String]) -> String {
    let mut s = serde_json::to_string_pretty(items).expect("strings serialize");
    s.push('\n');
    s
}

/// Renders a list of trees, or forests when `forests` is set.
fn render<T: PlaneTree>(items: Vec<Vec<T>>, format: Format, forests: bool) -> String {
    let mut out = String::new();
    match format {
        Format::Sexp => {
            for (i, f) in items.iter().enumerate() {
                if forests && i > 0 {
                    out.push('\n');
                }
                for t in f {
                    let _ = writeln!(out, "{t}");
                }
            }
        }
        Format::Dot => {
            let mut idx = 0;
            for f in &items {
                for t in f {
                    out.push_str(&t.to_dot(&format!("tree{idx}")));
                    idx += 1;
                }
            }
        }
        Format::Json => {
            if forests {
                let nested: Vec<Vec<String>> = items
                    .iter()
                    .map(|f| f.iter().map(ToString::to_string).collect())
                    .collect();
                out = serde_json::to_string_pretty(&nested).expect("strings serialize");
                out.push('\n');
            } else {
                let flat: Vec<String> = items.iter().flatten().map(ToString::to_string).collect();
                out = json_string_array(&flat);
            }
        }
    }
    out
}

fn enumerate_items<T: PlaneTree>(trees: impl Iterator<Item = T>) -> Vec<Vec<T>> {
    trees.map(|t| vec![t]).collect()
}

fn forest_items<T: PlaneTree>(n: u64, m: u64, cap: SizeCap) -> Result<Vec<Vec<T>>, Failure> {
    Ok(enumerate_forests::<T>(n, m as usize, cap)?
        .map(Forest::into_components)
        .collect())
}

#[allow(clippy::too_many_arguments)]
fn cmd_enumerate(
    family: FamilyArg,
    n: u64,
    p: Option<u64>,
    m: Option<u64>,
    format: Format,
    out: Option<PathBuf>,
    max_n: Option<u64>,
) -> Result<(), Failure> {
    let cap = cap_from(max_n)?;
    let (text, count) = match (family, p, m) {
        (FamilyArg::Binary, Some(_), _) => {
            return Err(Failure::Usage(
                "--p applies to the colored-ternary family only".into(),
            ))
        }
        (_, Some(_), Some(_)) => {
            return Err(Failure::Usage("--p and --m cannot be combined".into()))
        }
        (FamilyArg::Binary, None, None) => {
            let items = enumerate_items(enumerate_binary(n, cap)?);
            (render(items.clone(), format, false), items.len())
        }
        (FamilyArg::Binary, None, Some(m)) => {
            let items = forest_items::<BinaryTree>(n, m, cap)?;
            (render(items.clone(), format, true), items.len())
        }
        (FamilyArg::ColoredTernary, Some(p), None) => {
            let items = enumerate_items(enumerate_colored_ternary(n, p, cap)?);
            (render(items.clone(), format, false), items.len())
        }
        (FamilyArg::ColoredTernary, None, None) => {
            let items = enumerate_items(enumerate_colored_ternary_all(n, cap)?);
            (render(items.clone(), format, false), items.len())
        }
        (FamilyArg::ColoredTernary, None, Some(m)) => {
            let items = forest_items::<ColoredTernaryTree>(n, m, cap)?;
            (render(items.clone(), format, true), items.len())
        }
    };
    write_output(out.as_ref(), &text)?;
    eprintln!("count: {count}");
    Ok(())
}

fn parse_line<T: PlaneTree>(line: &str, number: usize, line_offset: usize) -> Result<T, Failure> {
    let raw = parse_raw(line).map_err(|error| Failure::Parse {
        line: number,
        line_offset,
        error,
    })?;
    let report = validate(&raw, T::FAMILY);
    if let Some(violation) = report.violation {
        return Err(Failure::Family {
            line: number,
            violation,
        });
    }
    T::from_raw(&raw, &mut Vec::new()).map_err(|violation| Failure::Family {
        line: number,
        violation,
    })
}

/// Maps every nonblank line; blank lines are kept as `None`.
fn map_lines<S: PlaneTree, D: PlaneTree, E: std::fmt::Display>(
    input: &str,
    f: impl Fn(&S) -> Result<D, E>,
) -> Result<Vec<Option<D>>, Failure> {
    let mut out = Vec::new();
    let mut offset = 0;
    for (i, line) in input.split_inclusive('\n').enumerate() {
        let body = line.trim_end_matches(['\n', '\r']);
        if body.trim().is_empty() {
            out.push(None);
        } else {
            let src: S = parse_line(body, i + 1, offset)?;
            let dst = f(&src).map_err(|e| Failure::Io(format!("line {}: {e}", i + 1)))?;
            out.push(Some(dst));
        }
        offset += line.len();
    }
    Ok(out)
}

fn render_mapped<T: PlaneTree>(lines: Vec<Option<T>>, format: Format) -> String {
    match format {
        Format::Sexp => {
            let mut out = String::new();
            for l in lines {
                if let Some(t) = l {
                    let _ = write!(out, "{t}");
                }
                out.push('\n');
            }
            out
        }
        Format::Dot => {
            let mut out = String::new();
            for (i, t) in lines.iter().enumerate() {
                if let Some(t) = t {
                    out.push_str(&t.to_dot(&format!("line{}", i + 1)));
                }
            }
            out
        }
        Format::Json => json_string_array(
            &lines
                .into_iter()
                .flatten()
                .map(|t| t.to_string())
                .collect::<Vec<_>>(),
        ),
    }
}

fn cmd_map(
    direction: Direction,
    input: Option<PathBuf>,
    out: Option<PathBuf>,
    format: Format,
) -> Result<(), Failure> {
    let text = match &input {
        Some(path) => fs::read_to_string(path)?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    let mut rendered = match direction {
        Direction::T2b => render_mapped(
            map_lines::<ColoredTernaryTree, BinaryTree, _>(&text, phi)?,
            format,
        ),
        Direction::B2t => render_mapped(
            map_lines::<BinaryTree, ColoredTernaryTree, _>(&text, phi_inverse)?,
            format,
        ),
    };
    // keep the line count when the input has no trailing newline
    if format == Format::Sexp && !text.is_empty() && !text.ends_with('\n') {
        rendered.pop();
    }
    write_output(out.as_ref(), &rendered)
}

fn cmd_verify(
    suite: SuiteArg,
    n_max: Option<u64>,
    m_max: Option<u64>,
    order: Option<usize>,
    json: bool,
    timings: bool,
    max_n: Option<u64>,
) -> Result<(), Failure> {
    let bounds = Bounds {
        n_max,
        m_max,
        order,
        cap: cap_from(max_n)?,
    };
    let mut report = verify::run(suite.into(), &bounds)?;
    if timings {
        report.include_timings();
    }
    let text = if json {
        let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
        s.push('\n');
        s
    } else {
        report.to_string()
    };
    write_output(None, &text)?;
    match report.first_failure() {
        None => Ok(()),
        Some((check, f)) => Err(Failure::Verify(format!(
            "check {} failed at {}: {} != {}",
            check.name, f.inputs, f.left, f.right
        ))),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Number { k, n, m } => {
            let value = match m {
                Some(m) => forest_catalan(n, k, m),
                None => k_catalan(n, k),
            };
            write_output(None, &format!("{value}\n"))
        }
        Command::Enumerate {
            family,
            n,
            p,
            m,
            format,
            out,
            max_n,
        } => cmd_enumerate(family, n, p, m, format, out, max_n),
        Command::Map {
            direction,
            input,
            out,
            format,
        } => cmd_map(direction, input, out, format),
        Command::Verify {
            suite,
            n_max,
            m_max,
            order,
            json,
            timings,
            max_n,
        } => cmd_verify(suite, n_max, m_max, order, json, timings, max_n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("fuss-forest: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
