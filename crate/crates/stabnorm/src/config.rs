//! Command-line and config-file parsing into a validated [`RunConfig`].
//!
//! A config file holds `key = value` lines using the long flag names
//! (`cutoffs = 1e3,1e4`); `#` starts a comment. Flags given on the command
//! line win over the file.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use stabnorm_core::forms::EigenformSpec;
use stabnorm_core::Complex64;

use crate::error::{CliError, CliResult};

/// Environment variable naming the directory for output files when
/// `--output` is not given.
pub const OUTPUT_DIR_ENV: &str = "STABNORM_OUTPUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Fourier coefficients a_n
    Coeffs,
    /// Satake parameters at good primes
    Satake,
    /// Norm ratios, local periods and the limit table
    Stabilize,
    /// Partial Euler products of the conductor 32 curve
    Euler,
    /// Partial products of the symmetric square of Δ
    Sym2,
    /// Petersson norms by quadrature
    Petersson,
    /// L(κ, Sym² Δ) from the Petersson norm
    Hida,
    /// The three values of the conductor 32 example
    AppendixExample,
    /// The Petersson norm rebuilt from local periods
    Factorize,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Coeffs => "coeffs",
            Command::Satake => "satake",
            Command::Stabilize => "stabilize",
            Command::Euler => "euler",
            Command::Sym2 => "sym2",
            Command::Petersson => "petersson",
            Command::Hida => "hida",
            Command::AppendixExample => "appendix-example",
            Command::Factorize => "factorize",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Which grouping of the conductor 32 product `euler` evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Rational,
    Gaussian,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub form: EigenformSpec,
    /// In the classical variable of the command's L-function.
    pub s: Option<Complex64>,
    pub cutoffs: Option<Vec<u64>>,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub deterministic: bool,
    pub threads: usize,
    pub prime: Option<u64>,
    pub limit: Option<u64>,
    pub max_n: Option<usize>,
    pub field: Field,
    pub reference: Option<f64>,
    pub level: Option<u64>,
}

impl RunConfig {
    /// `--output`, else `$STABNORM_OUTPUT_DIR/<command>.<ext>`, else the
    /// working directory.
    pub fn output_path(&self) -> PathBuf {
        if let Some(path) = &self.output {
            return path.clone();
        }
        let dir = std::env::var_os(OUTPUT_DIR_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from("."));
        dir.join(format!(
            "{}.{}",
            self.command.name(),
            self.format.extension()
        ))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "stabnorm",
    version,
    about = "Norms of p-stabilized newforms, local periods, and Euler products on the edge",
    arg_required_else_help = true
)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// key = value file; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
    /// delta | cm32
    #[arg(long)]
    form: Option<String>,
    /// complex point such as 1.5 or 12+0.5i
    #[arg(long = "s", allow_hyphen_values = true)]
    s: Option<String>,
    /// ascending comma-separated cutoffs, e.g. 1e3,1e4
    #[arg(long)]
    cutoffs: Option<String>,
    #[arg(long)]
    output: Option<String>,
    /// csv | json
    #[arg(long)]
    format: Option<String>,
    /// true | false
    #[arg(long)]
    deterministic: Option<String>,
    #[arg(long)]
    threads: Option<String>,
    /// single prime
    #[arg(short = 'p', long)]
    prime: Option<String>,
    /// prime range upper bound
    #[arg(long)]
    limit: Option<String>,
    /// number of coefficients
    #[arg(long = "max-n")]
    max_n: Option<String>,
    /// rational | gaussian
    #[arg(long)]
    field: Option<String>,
    /// reference value for the error column
    #[arg(long, allow_hyphen_values = true)]
    reference: Option<String>,
    /// level 1, 2 or 3 for petersson
    #[arg(long)]
    level: Option<String>,
}

const KEYS: [&str; 13] = [
    "form",
    "s",
    "cutoffs",
    "output",
    "format",
    "deterministic",
    "threads",
    "prime",
    "limit",
    "max-n",
    "field",
    "reference",
    "level",
];

/// Outcome of argument parsing: either a configuration or text that was
/// requested (help, version) and should be printed with status 0.
#[derive(Debug)]
pub enum Parsed {
    Run(RunConfig),
    Info(String),
}

pub fn parse_config<I, T>(argv: I) -> CliResult<Parsed>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Ok(Parsed::Info(e.to_string()))
                }
                _ => Err(CliError::Usage(e.render().to_string())),
            };
        }
    };
    let mut values = match &cli.config {
        Some(path) => read_config_file(path)?,
        None => BTreeMap::new(),
    };
    let flags = [
        ("form", &cli.form),
        ("s", &cli.s),
        ("cutoffs", &cli.cutoffs),
        ("output", &cli.output),
        ("format", &cli.format),
        ("deterministic", &cli.deterministic),
        ("threads", &cli.threads),
        ("prime", &cli.prime),
        ("limit", &cli.limit),
        ("max-n", &cli.max_n),
        ("field", &cli.field),
        ("reference", &cli.reference),
        ("level", &cli.level),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            values.insert(key.to_string(), v.clone());
        }
    }
    build(cli.command, &values).map(Parsed::Run)
}

pub fn read_config_file(path: &Path) -> CliResult<BTreeMap<String, String>> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        what: format!("cannot read config file {}", path.display()),
        source,
    })?;
    parse_config_text(&text)
}

pub fn parse_config_text(text: &str) -> CliResult<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::usage(format!(
                "config line {}: expected key = value, got '{line}'",
                lineno + 1
            ))
        })?;
        let key = key.trim().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::usage(format!(
                "config line {}: unknown key '{key}'",
                lineno + 1
            )));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

fn build(command: Command, values: &BTreeMap<String, String>) -> CliResult<RunConfig> {
    let get = |key: &str| values.get(key).map(String::as_str);
    let form = match get("form") {
        None => match command {
            Command::Euler | Command::AppendixExample => EigenformSpec::cm32(),
            _ => EigenformSpec::delta(),
        },
        Some("delta") => EigenformSpec::delta(),
        Some("cm32") => EigenformSpec::cm32(),
        Some(other) => return Err(bad("form", other, "expected delta or cm32")),
    };
    let format = match get("format") {
        None | Some("csv") => Format::Csv,
        Some("json") => Format::Json,
        Some(other) => return Err(bad("format", other, "expected csv or json")),
    };
    let deterministic = match get("deterministic") {
        None | Some("true") => true,
        Some("false") => false,
        Some(other) => return Err(bad("deterministic", other, "expected true or false")),
    };
    let threads = match get("threads") {
        None => 1,
        Some(t) => match t.parse::<usize>() {
            Ok(n) if n >= 1 => n,
            _ => return Err(bad("threads", t, "expected a positive integer")),
        },
    };
    let field = match get("field") {
        None | Some("rational") => Field::Rational,
        Some("gaussian") => Field::Gaussian,
        Some(other) => return Err(bad("field", other, "expected rational or gaussian")),
    };
    let cutoffs = get("cutoffs").map(parse_cutoffs).transpose()?;
    Ok(RunConfig {
        command,
        form,
        s: get("s")
            .map(|t| parse_complex(t).ok_or_else(|| bad("s", t, "expected a complex number")))
            .transpose()?,
        cutoffs,
        output: get("output").map(PathBuf::from),
        format,
        deterministic,
        threads,
        prime: get("prime").map(|t| parse_count("prime", t)).transpose()?,
        limit: get("limit").map(|t| parse_count("limit", t)).transpose()?,
        max_n: get("max-n")
            .map(|t| parse_count("max-n", t).map(|n| n as usize))
            .transpose()?,
        field,
        reference: get("reference")
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|_| bad("reference", t, "expected a number"))
            })
            .transpose()?,
        level: get("level").map(|t| parse_count("level", t)).transpose()?,
    })
}

fn bad(key: &str, token: &str, expected: &str) -> CliError {
    CliError::usage(format!("invalid value '{token}' for --{key}: {expected}"))
}

/// Positive integer, also accepting exact float notation such as `1e5`.
fn parse_count(key: &str, token: &str) -> CliResult<u64> {
    if let Ok(n) = token.parse::<u64>() {
        if n > 0 {
            return Ok(n);
        }
    }
    match token.parse::<f64>() {
        Ok(x) if x >= 1.0 && x.fract() == 0.0 && x < 1.8e19 => Ok(x as u64),
        _ => Err(bad(key, token, "expected a positive integer")),
    }
}

fn parse_cutoffs(text: &str) -> CliResult<Vec<u64>> {
    let cutoffs = text
        .split(',')
        .map(|t| parse_count("cutoffs", t.trim()))
        .collect::<CliResult<Vec<u64>>>()?;
    if cutoffs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(bad("cutoffs", text, "cutoffs must be strictly ascending"));
    }
    Ok(cutoffs)
}

/// `a`, `a+bi`, `a-bi`, `bi`.
pub fn parse_complex(text: &str) -> Option<Complex64> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return None;
    }
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().ok().map(|re| Complex64::new(re, 0.0));
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (body[..i].parse::<f64>().ok()?, parse_imaginary(&body[i..])?),
        None => (0.0, parse_imaginary(body)?),
    };
    Some(Complex64::new(re, im))
}

fn parse_imaginary(text: &str) -> Option<f64> {
    match text {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        _ => text.parse::<f64>().ok(),
    }
}
