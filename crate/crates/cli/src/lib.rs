//! Command-line front end: counts, tables, polynomials, generating
//! functions, verification suites and b-file comparison.
//!
//! Exit codes: 0 success, 1 verification failure or mismatch, 2 usage or
//! input error, 3 enumeration budget exceeded.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rootlattice::closed_form::{count, fit_quasipolynomial, Kind, Variable};
use rootlattice::genfunc::{gf_expand, gf_for, GfRecord};
use rootlattice::oracle::{count_bulk_alphaspace, count_bulk_pspace, count_surface, Mode, OracleConfig, DEFAULT_BUDGET};
use rootlattice::verify::{
    verify_conjectures, verify_d_recurrences, verify_e_reductions, verify_gamma_form,
    verify_generating_functions, verify_oracle_equivalence, verify_parity_recurrence,
    verify_polynomial_recurrence, verify_tables, VerificationReport,
};
use rootlattice::{BigCount, Family, LatticeSpec};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] rootlattice::Error),
    #[error("{0}")]
    Mismatch(String),
    #[error("{0}")]
    Failed(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Mismatch(_) | CliError::Failed(_) => 1,
            CliError::Library(e) => match e {
                rootlattice::Error::InvalidSpec { .. } | rootlattice::Error::InvalidInput(_) => 2,
                rootlattice::Error::BudgetExceeded { .. } => 3,
                rootlattice::Error::Internal(_) => 1,
            },
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "rootlattice", version, about = "Exact point counts of root lattices in hypercubes |p_i| <= n")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Lattice {
    /// A, D, Dstar, E or Z
    #[arg(long)]
    family: Family,
    #[arg(long)]
    rank: u32,
    /// Count points with infinity norm exactly n instead of at most n
    #[arg(long)]
    surface: bool,
}

impl Lattice {
    fn spec(&self) -> Result<LatticeSpec> {
        Ok(LatticeSpec::new(self.family, self.rank)?)
    }

    fn kind(&self) -> Kind {
        kind(self.surface)
    }
}

fn kind(surface: bool) -> Kind {
    if surface {
        Kind::Surface
    } else {
        Kind::Bulk
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Closed,
    Oracle,
    Gf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Tables,
    Oracle,
    Recurrences,
    Conjectures,
    Gf,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariableArg {
    #[value(name = "n")]
    N,
    /// Edge length 2n+1
    #[value(name = "L", alias = "l")]
    L,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count lattice points for one radius
    Count {
        #[command(flatten)]
        lattice: Lattice,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        /// With --method oracle: also count half-integer lattice points
        #[arg(long)]
        full_lattice: bool,
        /// Candidate cap for --method oracle
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Grid of counts, one row per rank and one column per radius
    Table {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        rank_max: u32,
        #[arg(long)]
        n_max: u64,
        #[arg(long)]
        surface: bool,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Exact (quasi-)polynomial in n or in L = 2n+1
    Poly {
        #[command(flatten)]
        lattice: Lattice,
        #[arg(long, value_enum, default_value_t = VariableArg::N)]
        variable: VariableArg,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Rational generating function
    Gf {
        #[command(flatten)]
        lattice: Lattice,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Run verification suites
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Largest radius for the enumeration suite
        #[arg(long, default_value_t = 3)]
        n_max: u64,
        /// Largest rank for the column recurrences (default: 40/30/25 for
        /// bulk columns 1/2/3, 30 for surface columns)
        #[arg(long)]
        k_max: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Compare a sequence against a b-file (`index value` per line)
    BfileCheck {
        #[command(flatten)]
        lattice: Lattice,
        #[arg(long)]
        file: PathBuf,
        /// Index of the n = 0 term in the file
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        offset: i64,
    },
}

/// One count, as emitted with `--format json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub family: String,
    pub rank: u32,
    pub n: u64,
    pub kind: Kind,
    pub method: Method,
    /// Exact decimal rendering.
    pub count: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct PolyRecord {
    family: String,
    rank: u32,
    kind: Kind,
    variable: String,
    /// One coefficient list per residue of n mod the period, constant first.
    components: Vec<Vec<String>>,
    /// Values listed separately before the components apply.
    leading: Vec<String>,
}

/// Parsed b-file: `(index, value)` pairs with strictly increasing indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    pub entries: Vec<(i64, BigInt)>,
}

impl BFile {
    pub fn parse(text: &str) -> Result<BFile> {
        let mut entries: Vec<(i64, BigInt)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = || CliError::Usage(format!("b-file line {}: expected `index value`, got {raw:?}", i + 1));
            let mut fields = line.split_whitespace();
            let (Some(idx), Some(val), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(bad());
            };
            let idx: i64 = idx.parse().map_err(|_| bad())?;
            let val: BigInt = val.parse().map_err(|_| bad())?;
            if let Some((prev, _)) = entries.last() {
                if idx <= *prev {
                    return Err(CliError::Usage(format!(
                        "b-file line {}: index {idx} does not increase (previous {prev})",
                        i + 1
                    )));
                }
            }
            entries.push((idx, val));
        }
        if entries.is_empty() {
            return Err(CliError::Usage("b-file has no terms".into()));
        }
        Ok(BFile { entries })
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

fn oracle(spec: LatticeSpec, kind: Kind, n: u64, budget: u64, full: bool) -> Result<BigCount> {
    let mut config = OracleConfig::new(spec, n).with_budget(budget);
    if full {
        if kind == Kind::Surface {
            return Err(CliError::Usage("--full-lattice counts bulk points only".into()));
        }
        config = config.with_mode(Mode::FullLattice);
        return Ok(count_bulk_alphaspace(&config)?);
    }
    Ok(match kind {
        Kind::Bulk => count_bulk_pspace(&config)?,
        Kind::Surface => count_surface(&config)?,
    })
}

fn gf_count(spec: LatticeSpec, kind: Kind, n: u64) -> Result<BigCount> {
    let len = usize::try_from(n + 1).map_err(|_| CliError::Usage("n too large".into()))?;
    let mut series = gf_expand(&gf_for(spec, kind), len)?;
    Ok(series.pop().expect("nonempty"))
}

fn cmd_count(lattice: &Lattice, n: u64, method: Method, full: bool, budget: u64, format: Format) -> Result<String> {
    let spec = lattice.spec()?;
    let kind = lattice.kind();
    if full && method != Method::Oracle {
        return Err(CliError::Usage("--full-lattice requires --method oracle".into()));
    }
    let value = match method {
        Method::Closed => count(spec, kind, n),
        Method::Oracle => oracle(spec, kind, n, budget, full)?,
        Method::Gf => gf_count(spec, kind, n)?,
    };
    Ok(match format {
        Format::Plain => format!("{value}\n"),
        Format::Json => {
            let record = OutputRecord {
                family: spec.family().to_string(),
                rank: spec.rank(),
                n,
                kind,
                method,
                count: value.to_string(),
            };
            format!("{}\n", json(&record))
        }
    })
}

fn cmd_table(family: Family, rank_max: u32, n_max: u64, surface: bool, format: TableFormat) -> Result<String> {
    let kind = kind(surface);
    let specs: Vec<LatticeSpec> = (family.min_rank()..=rank_max)
        .filter_map(|k| LatticeSpec::new(family, k).ok())
        .collect();
    if specs.is_empty() {
        return Err(CliError::Usage(format!(
            "no {family} lattice has rank between {} and {rank_max}",
            family.min_rank()
        )));
    }
    match format {
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["k/n".to_string()];
            header.extend((0..=n_max).map(|n| n.to_string()));
            let csv_err = |e: csv::Error| CliError::Failed(format!("CSV output: {e}"));
            w.write_record(&header).map_err(csv_err)?;
            for s in &specs {
                let mut row = vec![s.rank().to_string()];
                row.extend((0..=n_max).map(|n| count(*s, kind, n).to_string()));
                w.write_record(&row).map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Failed(format!("CSV output: {e}")))?;
            Ok(String::from_utf8(bytes).expect("CSV of ASCII digits"))
        }
        TableFormat::Json => {
            let records: Vec<OutputRecord> = specs
                .iter()
                .flat_map(|s| {
                    (0..=n_max).map(move |n| OutputRecord {
                        family: family.to_string(),
                        rank: s.rank(),
                        n,
                        kind,
                        method: Method::Closed,
                        count: count(*s, kind, n).to_string(),
                    })
                })
                .collect();
            Ok(format!("{}\n", json(&records)))
        }
    }
}

fn cmd_poly(lattice: &Lattice, variable: VariableArg, format: Format) -> Result<String> {
    let spec = lattice.spec()?;
    let variable = match variable {
        VariableArg::N => Variable::N,
        VariableArg::L => Variable::L,
    };
    let q = fit_quasipolynomial(spec, lattice.kind(), variable)?;
    Ok(match format {
        Format::Plain => format!("{q}\n"),
        Format::Json => {
            let record = PolyRecord {
                family: spec.family().to_string(),
                rank: spec.rank(),
                kind: lattice.kind(),
                variable: variable.symbol().to_string(),
                components: q
                    .components
                    .iter()
                    .map(|c| c.coeffs().iter().map(|x| x.to_string()).collect())
                    .collect(),
                leading: q.leading.iter().map(|v| v.to_string()).collect(),
            };
            format!("{}\n", json(&record))
        }
    })
}

fn cmd_gf(lattice: &Lattice, format: Format) -> Result<String> {
    let spec = lattice.spec()?;
    let gf = gf_for(spec, lattice.kind());
    let record = GfRecord::from(&gf);
    Ok(match format {
        Format::Plain => format!(
            "{gf}\nnumerator: {}\ndenominator: (1-x)^{} (1+x)^{}\n",
            record.numerator.join(" "),
            record.pow_one_minus_x,
            record.pow_one_plus_x
        ),
        Format::Json => format!("{}\n", json(&record)),
    })
}

fn run_suite(suite: Suite, n_max: u64, k_max: Option<u32>) -> Result<Vec<VerificationReport>> {
    if let Some(k) = k_max {
        if k < 8 {
            return Err(CliError::Usage(format!("--k-max must be at least 8, got {k}")));
        }
    }
    let mut reports = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Tables {
        reports.push(verify_tables()?);
    }
    if all || suite == Suite::Gf {
        reports.push(verify_generating_functions(30)?);
    }
    if all || suite == Suite::Recurrences {
        reports.push(VerificationReport::combine(
            "recurrences",
            vec![
                verify_polynomial_recurrence(8, 40),
                verify_gamma_form(8, 4),
                verify_parity_recurrence(16, 50),
                verify_d_recurrences(50)?,
            ],
        ));
    }
    if all || suite == Suite::Oracle {
        reports.push(VerificationReport::combine(
            "oracle",
            vec![verify_oracle_equivalence(n_max)?, verify_e_reductions(20, n_max)?],
        ));
    }
    if all || suite == Suite::Conjectures {
        let (bulk, surface) = match k_max {
            Some(k) => ([k; 3], k),
            None => ([40, 30, 25], 30),
        };
        reports.push(verify_conjectures(bulk, surface)?);
    }
    Ok(reports)
}

fn cmd_verify(suite: Suite, n_max: u64, k_max: Option<u32>, format: Format) -> Result<(String, bool)> {
    let reports = run_suite(suite, n_max, k_max)?;
    let passed = reports.iter().all(|r| r.passed);
    let text = match format {
        Format::Plain => reports.iter().map(|r| r.to_string()).collect::<String>(),
        Format::Json => format!("{}\n", json(&reports)),
    };
    Ok((text, passed))
}

fn cmd_bfile_check(lattice: &Lattice, file: &PathBuf, offset: i64) -> Result<String> {
    let spec = lattice.spec()?;
    let kind = lattice.kind();
    let text = std::fs::read_to_string(file).map_err(|source| CliError::Io {
        path: file.display().to_string(),
        source,
    })?;
    let bfile = BFile::parse(&text)?;
    for (index, value) in &bfile.entries {
        let n = index - offset;
        if n < 0 {
            return Err(CliError::Usage(format!(
                "index {index} lies before the first term (offset {offset})"
            )));
        }
        let computed = BigInt::from(count(spec, kind, n as u64));
        if &computed != value {
            return Err(CliError::Mismatch(format!(
                "mismatch at index {index}: file has {value}, {kind} count of {spec} at n={n} is {computed}"
            )));
        }
    }
    let (first, _) = bfile.entries.first().expect("nonempty");
    let (last, _) = bfile.entries.last().expect("nonempty");
    let mut out = String::new();
    writeln!(
        out,
        "match: {} terms, indices {first}..={last}, {kind} counts of {spec}",
        bfile.entries.len()
    )
    .expect("write to String");
    Ok(out)
}

fn dispatch(cli: Cli) -> (Result<String>, bool) {
    match cli.command {
        Command::Count {
            lattice,
            n,
            method,
            full_lattice,
            budget,
            format,
        } => (cmd_count(&lattice, n, method, full_lattice, budget, format), true),
        Command::Table {
            family,
            rank_max,
            n_max,
            surface,
            format,
        } => (cmd_table(family, rank_max, n_max, surface, format), true),
        Command::Poly {
            lattice,
            variable,
            format,
        } => (cmd_poly(&lattice, variable, format), true),
        Command::Gf { lattice, format } => (cmd_gf(&lattice, format), true),
        Command::Verify {
            suite,
            n_max,
            k_max,
            format,
        } => match cmd_verify(suite, n_max, k_max, format) {
            Ok((text, passed)) => (Ok(text), passed),
            Err(e) => (Err(e), false),
        },
        Command::BfileCheck {
            lattice,
            file,
            offset,
        } => (cmd_bfile_check(&lattice, &file, offset), true),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Output is written in one piece once the command has finished.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = target.write_all(rendered.as_bytes());
            return code;
        }
    };
    match dispatch(cli) {
        (Ok(text), passed) => {
            let _ = out.write_all(text.as_bytes());
            if passed {
                0
            } else {
                1
            }
        }
        (Err(e), _) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
