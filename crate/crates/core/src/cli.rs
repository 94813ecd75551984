//! Command-line front end. [`run`] parses arguments, writes results to `out`,
//! diagnostics to `err`, and returns the process exit code.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use steenrod::ext::{ChartFormat, ExtChart, Resolver};
use steenrod::hom::{find_ses, iso_test};
use steenrod::margolis::margolis_homology;
use steenrod::{a2, build_standard, MargolisOp, SteenrodModule};

use crate::brown_gitler::BgTable;
use crate::decomposition::{decompose_bo, decompose_power, dualize_report, tmfbar_series, DecompositionReport, Locality};
use crate::glocal::{census_bbt, census_generators, census_window, BigradedSeries, DEFAULT_CENSUS_BUDGET, DEFAULT_Q1_SHIFT};
use crate::ring::{RingElement, RingId};
use crate::tables::TABLE2;
use crate::verify::{Budgets, Check, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("error {code}: {0}", code = .0.code())]
    Domain(#[from] crate::Error),
    #[error("{0}")]
    Failed(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl From<steenrod::SteenrodError> for CliError {
    fn from(e: steenrod::SteenrodError) -> Self {
        CliError::Domain(e.into())
    }
}

type CliResult = std::result::Result<String, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Parser)]
#[command(name = "tmfres", version, about = "Brown-Gitler polynomials, tmf-resolution decompositions and Ext over A(2)")]
struct Cli {
    /// Output format; not every subcommand supports every format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normal form of a polynomial expression.
    Reduce {
        expr: String,
        #[arg(long, default_value = "R")]
        ring: RingId,
    },
    /// Brown-Gitler polynomial f_J, or the table f_1..f_16 when J is omitted.
    Bgpoly {
        j: Option<u64>,
        /// Use the y-free recursion f'_j.
        #[arg(long)]
        glocal: bool,
        /// Print every f_i with i <= J.
        #[arg(long)]
        upto: bool,
    },
    /// Normal forms of x^3 .. x^KMAX.
    Powers { kmax: u32 },
    /// Summand decomposition of bo_J or of bo1^K.
    #[command(group(ArgGroup::new("source").required(true).args(["bo", "power"])))]
    Decompose {
        #[arg(long)]
        bo: Option<u64>,
        #[arg(long)]
        power: Option<u32>,
        #[arg(long, default_value = "v2")]
        locality: Locality,
    },
    /// Weight-graded decomposition of tmfbar^N up to weight 8 JMAX.
    Tmfbar {
        n: u32,
        #[arg(long)]
        jmax: u64,
        #[arg(long, default_value = "v2")]
        locality: Locality,
    },
    /// Duality on decompositions and on ring elements.
    Dual {
        #[command(subcommand)]
        what: DualCommand,
    },
    /// A(2)-module utilities. FILES are Bruner-format paths or standard names (BO(1), A2modA1, M1, ...),
    /// optionally suspended as NAME[k].
    Module {
        #[command(subcommand)]
        action: ModuleCommand,
    },
    /// Ext over A(2) of a module.
    Ext {
        file: String,
        #[arg(long)]
        smax: u32,
        #[arg(long)]
        tmax: i32,
        /// Write the chart here instead of standard output.
        #[arg(long)]
        chart: Option<PathBuf>,
        /// SVG cell size in pixels.
        #[arg(long, default_value_t = 24)]
        cell: u32,
    },
    /// Census of the (J, J') basis of tmfbar^N.
    Census {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        weight_max: u64,
        #[arg(long, default_value_t = DEFAULT_Q1_SHIFT, allow_hyphen_values = true)]
        q1_shift: i64,
    },
    /// Reproduction checks; exits nonzero iff one fails.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
enum DualCommand {
    /// Dual of a summand list such as "2 Σ^{16,1} bo1 + Σ^{24} TMF".
    Report {
        text: String,
        #[arg(long, default_value = "v2")]
        locality: Locality,
    },
    /// Dual of a ring element.
    Element {
        expr: String,
        #[arg(long, default_value = "R")]
        ring: RingId,
    },
}

#[derive(Debug, Subcommand)]
enum ModuleCommand {
    /// Parse and re-emit in canonical form.
    Parse { file: String },
    /// Degree, relation and listing checks.
    Validate { file: String },
    /// Tensor product of two modules.
    Tensor { a: String, b: String },
    /// Margolis homology.
    Margolis {
        file: String,
        #[arg(long, default_value = "Q0")]
        op: MargolisOp,
    },
    /// Search for a short exact sequence 0 -> A -> B -> C -> 0.
    Ses { a: String, b: String, c: String },
    /// Isomorphism test.
    Iso { a: String, b: String },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Golden tables of x^k and f_j.
    #[arg(long)]
    tables: bool,
    /// Decompositions of bo1^k for k = 3..6.
    #[arg(long)]
    remark54: bool,
    /// Series h^n against composition sums.
    #[arg(long)]
    series: bool,
    /// Parity of f'_j and agreement mod y.
    #[arg(long)]
    parity: bool,
    /// Duality on random elements and on reports.
    #[arg(long)]
    duality: bool,
    /// Fixture modules, idempotents, extensions.
    #[arg(long)]
    appendix: bool,
    /// Minimal resolution against the bar complex.
    #[arg(long)]
    oracle: bool,
    /// Towers of v0 against monomial counts.
    #[arg(long)]
    towers: bool,
    /// Census of g-local generators against the f'_j series.
    #[arg(long)]
    census: bool,
    /// Every check (the default).
    #[arg(long)]
    all: bool,
}

impl VerifyArgs {
    fn suites(&self) -> Vec<Suite> {
        let picked: Vec<Suite> = [
            (self.tables, Suite::Tables),
            (self.remark54, Suite::Decompositions),
            (self.series, Suite::Series),
            (self.parity, Suite::Structure),
            (self.duality, Suite::Duality),
            (self.appendix, Suite::Modules),
            (self.oracle, Suite::Oracle),
            (self.towers, Suite::Towers),
            (self.census, Suite::Census),
        ]
        .into_iter()
        .filter_map(|(on, s)| on.then_some(s))
        .collect();
        if self.all || picked.is_empty() {
            Suite::ALL.to_vec()
        } else {
            picked
        }
    }
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let (result, failed) = match cli.command {
        Command::Verify(ref v) => match verify(v, cli.format) {
            Ok((text, ok)) => (Ok(text), !ok),
            Err(e) => (Err(e), false),
        },
        ref c => (dispatch(c, cli.format), false),
    };
    match result {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            if failed {
                EXIT_DOMAIN
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "tmfres: {e}");
            match e {
                CliError::Usage(_) => EXIT_USAGE,
                _ => EXIT_DOMAIN,
            }
        }
    }
}

fn unsupported(format: Format, command: &str) -> CliError {
    CliError::Usage(format!("--format {format:?} is not supported by `{command}`").to_lowercase())
}

fn json_line(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("serializable value");
    s.push('\n');
    s
}

fn dispatch(command: &Command, format: Format) -> CliResult {
    match command {
        Command::Reduce { expr, ring } => {
            let e = RingElement::parse(expr, *ring)?;
            element_output(&e, format, "reduce")
        }
        Command::Bgpoly { j, glocal, upto } => bgpoly(*j, *glocal, *upto, format),
        Command::Powers { kmax } => powers(*kmax, format),
        Command::Decompose { bo, power, locality } => {
            let r = match (bo, power) {
                (Some(j), None) => decompose_bo(*j, *locality)?,
                (None, Some(k)) => decompose_power(*k, *locality)?,
                _ => return Err(CliError::Usage("exactly one of --bo, --power".into())),
            };
            report_output(&r, format, "decompose")
        }
        Command::Tmfbar { n, jmax, locality } => {
            if *n == 0 {
                return Err(CliError::Usage("N must be positive".into()));
            }
            let series = tmfbar_series(*n, *jmax, *locality)?;
            match format {
                Format::Text => Ok(series
                    .iter()
                    .fold(String::new(), |mut s, (j, r)| {
                        let _ = writeln!(s, "w^{j}: {r}");
                        s
                    })),
                Format::Json => Ok(json_line(json!(series.values().map(DecompositionReport::to_json).collect::<Vec<_>>()))),
                f => Err(unsupported(f, "tmfbar")),
            }
        }
        Command::Dual { what } => match what {
            DualCommand::Report { text, locality } => {
                let r = dualize_report(&DecompositionReport::parse(text, *locality)?)?;
                report_output(&r, format, "dual report")
            }
            DualCommand::Element { expr, ring } => {
                let e = RingElement::parse(expr, *ring)?.dualize();
                element_output(&e, format, "dual element")
            }
        },
        Command::Module { action } => module(action, format),
        Command::Ext { file, smax, tmax, chart, cell } => ext(file, *smax, *tmax, chart.as_deref(), *cell, format),
        Command::Census { n, weight_max, q1_shift } => census(*n, *weight_max, *q1_shift, format),
        Command::Verify(_) => unreachable!("handled by run"),
    }
}

fn element_output(e: &RingElement, format: Format, command: &str) -> CliResult {
    match format {
        Format::Text => Ok(format!("{e}\n")),
        Format::Json => Ok(json_line(e.to_json())),
        f => Err(unsupported(f, command)),
    }
}

fn report_output(r: &DecompositionReport, format: Format, command: &str) -> CliResult {
    match format {
        Format::Text => Ok(format!("{r}\n")),
        Format::Json => Ok(json_line(r.to_json())),
        f => Err(unsupported(f, command)),
    }
}

fn indexed_output(label: &str, rows: Vec<(u64, RingElement)>, format: Format, command: &str) -> CliResult {
    match format {
        Format::Text => Ok(rows.iter().fold(String::new(), |mut s, (i, e)| {
            let _ = writeln!(s, "{label}{i} = {e}");
            s
        })),
        Format::Json => Ok(json_line(json!(rows
            .iter()
            .map(|(i, e)| json!({"index": i, "element": e.to_json()}))
            .collect::<Vec<_>>()))),
        f => Err(unsupported(f, command)),
    }
}

fn bgpoly(j: Option<u64>, glocal: bool, upto: bool, format: Format) -> CliResult {
    let ring = if glocal { RingId::RPrime } else { RingId::R };
    let mut table = BgTable::new(ring);
    let label = if glocal { "f'_" } else { "f_" };
    match j {
        Some(j) if !upto => element_output(&table.get(j), format, "bgpoly"),
        _ => {
            let last = j.unwrap_or(TABLE2.lines().filter(|l| !l.trim().is_empty()).count() as u64);
            indexed_output(label, (1..=last).map(|i| (i, table.get(i))).collect(), format, "bgpoly")
        }
    }
}

fn powers(kmax: u32, format: Format) -> CliResult {
    let x = RingElement::x(RingId::R);
    let rows = (3..=kmax as u64).map(|k| (k, x.pow(k as u32))).collect();
    indexed_output("x^", rows, format, "powers")
}

/// A module argument: a Bruner-format file or a standard name, optionally
/// suspended with a `[k]` suffix, as in `DUAL_BO1[17]`.
fn load_module(arg: &str) -> std::result::Result<SteenrodModule, CliError> {
    if let Some((name, rest)) = arg.strip_suffix(']').and_then(|a| a.rsplit_once('[')) {
        let k: i32 = rest
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad suspension in `{arg}`")))?;
        return Ok(load_module(name)?.suspend(k));
    }
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(SteenrodModule::parse_bruner(&text)?)
    } else {
        Ok(build_standard(arg)?)
    }
}

fn module(action: &ModuleCommand, format: Format) -> CliResult {
    let text_only = |name: &str| match format {
        Format::Text => Ok(()),
        f => Err(unsupported(f, name)),
    };
    match action {
        ModuleCommand::Parse { file } => {
            text_only("module parse")?;
            Ok(load_module(file)?.emit_bruner())
        }
        ModuleCommand::Validate { file } => {
            let report = load_module(file)?.validate();
            let body = match format {
                Format::Text => format!("{}\n", report.to_string().trim_end()),
                Format::Json => json_line(json!({
                    "valid": report.is_valid(),
                    "degree_errors": report.degree_errors.len(),
                    "relation_violations": report.relation_violations.len(),
                    "listing_mismatches": report.listing_mismatches.len(),
                })),
                f => return Err(unsupported(f, "module validate")),
            };
            if report.is_valid() {
                Ok(body)
            } else {
                Err(CliError::Failed(body.trim_end().to_string()))
            }
        }
        ModuleCommand::Tensor { a, b } => {
            text_only("module tensor")?;
            Ok(SteenrodModule::tensor(&load_module(a)?, &load_module(b)?).emit_bruner())
        }
        ModuleCommand::Margolis { file, op } => {
            let h = margolis_homology(&load_module(file)?, *op)?;
            match format {
                Format::Text => Ok(if h.is_empty() {
                    "0\n".to_string()
                } else {
                    h.iter().fold(String::new(), |mut s, (d, n)| {
                        let _ = writeln!(s, "degree {d}: {n}");
                        s
                    })
                }),
                Format::Json => Ok(json_line(json!({
                    "op": format!("{op:?}"),
                    "dims": h.iter().map(|(d, n)| json!({"degree": d, "dim": n})).collect::<Vec<_>>(),
                }))),
                f => Err(unsupported(f, "module margolis")),
            }
        }
        ModuleCommand::Ses { a, b, c } => {
            text_only("module ses")?;
            Ok(find_ses(&load_module(a)?, &load_module(b)?, &load_module(c)?).to_string())
        }
        ModuleCommand::Iso { a, b } => {
            text_only("module iso")?;
            Ok(match iso_test(&load_module(a)?, &load_module(b)?) {
                Some(_) => "isomorphic\n".to_string(),
                None => "not isomorphic\n".to_string(),
            })
        }
    }
}

fn ext(file: &str, smax: u32, tmax: i32, chart_path: Option<&Path>, cell: u32, format: Format) -> CliResult {
    let chart_format = match format {
        Format::Text => ChartFormat::Text,
        Format::Csv => ChartFormat::Csv,
        Format::Svg => ChartFormat::Svg,
        Format::Json => return Err(unsupported(format, "ext")),
    };
    let m = load_module(file)?;
    let res = Resolver::new(a2(), m, smax, tmax)
        .budget(Budgets::from_env().cells)
        .run()
        .map_err(|p| CliError::from(p.error))?;
    let rendered = ExtChart::from_resolution(&res).render(chart_format, cell);
    match chart_path {
        Some(path) => {
            std::fs::write(path, rendered).map_err(|source| CliError::Io {
                path: path.to_path_buf(),
                source,
            })?;
            Ok(String::new())
        }
        None => Ok(rendered),
    }
}

fn census(n: u32, weight_max: u64, q1_shift: i64, format: Format) -> CliResult {
    let terms = census_bbt(n, weight_max, q1_shift, DEFAULT_CENSUS_BUDGET)?;
    match format {
        Format::Text => {
            let mut s = String::new();
            for t in &terms {
                let g = &t.generator;
                let _ = writeln!(
                    s,
                    "J={:?} J'={:?} count={} at (n={}, s={}, weight={}) v1 {:?}",
                    t.j, t.j_prime, t.count, g.n, g.s, g.weight, g.v1
                );
            }
            let total: u64 = terms.iter().map(|t| t.count).sum();
            let _ = writeln!(s, "{} index pairs, {total} generators", terms.len());
            Ok(s)
        }
        Format::Json => Ok(json_line(json!({
            "n": n,
            "weight_max": weight_max,
            "q1_shift": q1_shift,
            "terms": terms,
        }))),
        Format::Csv => {
            let window = census_window(weight_max);
            Ok(BigradedSeries::from_generators(&census_generators(&terms), window).to_csv())
        }
        f => Err(unsupported(f, "census")),
    }
}

fn verify(args: &VerifyArgs, format: Format) -> std::result::Result<(String, bool), CliError> {
    let budgets = Budgets::from_env();
    let mut checks: Vec<Check> = args.suites().into_iter().flat_map(|s| s.run(budgets)).collect();
    checks.sort_by_key(|c| c.id);
    let ok = checks.iter().all(|c| c.passed);
    let text = match format {
        Format::Text => checks.iter().fold(String::new(), |mut s, c| {
            let _ = writeln!(s, "{c}");
            s
        }),
        Format::Json => json_line(json!({"passed": ok, "checks": checks})),
        f => return Err(unsupported(f, "verify")),
    };
    Ok((text, ok))
}
