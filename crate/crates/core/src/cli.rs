//! Command-line front end and knot-table ingestion.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::factor_over_z_seeded;
use crate::hartley::{
    construct_witness_with_profile, hartley_knot_check, hartley_profile, hartley_set, is_n_hartley,
    normalize_alexander, BoundMode, EValue, HartleySet, KnotCheckReport, WitnessCertificate,
};
use crate::lspace::{survey_with_config, FilterConfig, SurveyConfig, SurveyReport};
use crate::murasugi::{murasugi_screen, murasugi_screen_all, screened_prime_powers, MurasugiHit};
use crate::poly::{parse_poly, FactoredPoly, IntPoly};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest genus surveyed without `--full`.
pub const CI_MAX_GENUS: u32 = 10;
pub const FULL_MAX_GENUS: u32 = 16;

#[derive(Debug, Parser)]
#[command(name = "freeperiod", version, about = "Free-period and periodicity obstructions from Alexander polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Exponent bound mode.
    #[arg(long, global = true, env = "FPL_MODE", default_value = "heuristic")]
    pub mode: BoundMode,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads for batch input (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Seed for the randomized parts of factorization.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct PolyInput {
    /// A polynomial in `t`, or an ascending coefficient list such as "1,-1,1".
    #[arg(long)]
    pub poly: Option<String>,

    /// CSV file with header `name,alexander`.
    #[arg(long)]
    pub poly_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factor over the integers.
    Factor(PolyInput),
    /// E for each irreducible factor and the resulting rule for n.
    Evalue(PolyInput),
    /// Every n >= 2 for which the polynomial is n-Hartley.
    HartleySet(PolyInput),
    /// Normalize an Alexander polynomial and decide the n-Hartley condition.
    HartleyCheck {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long)]
        n: u64,
    },
    /// Construct and verify a witness factorization.
    Witness {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long)]
        n: u64,
    },
    /// Murasugi's periodicity congruence.
    Murasugi {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        q: Option<u64>,
        /// Every prime power up to deg + 1.
        #[arg(long)]
        all: bool,
    },
    /// Survey candidate L-space Alexander polynomials.
    Survey {
        #[arg(long)]
        max_genus: Option<u32>,
        /// Allow genus above 10 (default 16).
        #[arg(long)]
        full: bool,
        /// Comma-separated: top-gap-1.
        #[arg(long, default_value = "none")]
        filters: String,
        /// Emit CSV (one row per candidate).
        #[arg(long, conflicts_with = "json")]
        csv: bool,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Validate and normalize a knot table.
    Ingest {
        #[arg(long)]
        poly_file: PathBuf,
        /// Abort on the first bad row.
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotRecord {
    pub name: String,
    /// Normalized: no power of `t`, positive constant term.
    pub alexander: IntPoly,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectedRow {
    /// Line number in the file (the header is line 1).
    pub line: u64,
    pub name: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ingested {
    pub records: Vec<KnotRecord>,
    pub rejected: Vec<RejectedRow>,
}

struct RawRow {
    line: u64,
    name: String,
    text: String,
}

fn read_rows(path: &Path) -> Result<Vec<RawRow>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path)?;
    let headers = rdr.headers()?.clone();
    if headers.len() < 2 || &headers[0] != "name" || &headers[1] != "alexander" {
        return Err(Error::Input(format!("{}: expected header `name,alexander`", path.display())));
    }
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() < 2 {
            return Err(Error::Input(format!("{}:{line}: expected two fields", path.display())));
        }
        rows.push(RawRow { line, name: rec[0].to_string(), text: rec[1].to_string() });
    }
    Ok(rows)
}

/// Reads a `name,alexander` table, normalizing each polynomial. Bad rows are
/// collected in `rejected`, or abort the read when `strict`.
pub fn ingest_csv(path: &Path, strict: bool) -> Result<Ingested> {
    let mut out = Ingested::default();
    for row in read_rows(path)? {
        let parsed = parse_poly(&row.text).map_err(Error::from).and_then(|p| normalize_alexander(&p));
        match parsed {
            Ok(alexander) => out.records.push(KnotRecord {
                name: row.name,
                alexander,
                source: format!("{}:{}", path.display(), row.line),
            }),
            Err(e) if strict => return Err(Error::Input(format!("{}:{}: {}: {e}", path.display(), row.line, row.name))),
            Err(e) => out.rejected.push(RejectedRow { line: row.line, name: row.name, reason: e.to_string() }),
        }
    }
    Ok(out)
}

/// Every JSON report: the command, the bound mode and whether results are rigorous.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report<T> {
    pub command: String,
    pub mode: BoundMode,
    pub rigorous: bool,
    pub results: Vec<T>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRow {
    pub name: String,
    pub poly: IntPoly,
    pub factorization: FactoredPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorE {
    pub factor: IntPoly,
    pub multiplicity: u32,
    pub e: EValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalueRow {
    pub name: String,
    pub poly: IntPoly,
    pub factors: Vec<FactorE>,
    /// `None` for products of cyclotomic polynomials.
    pub e: Option<u64>,
    pub rule: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HartleySetRow {
    pub name: String,
    pub poly: IntPoly,
    pub set: HartleySet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    pub name: String,
    pub check: KnotCheckReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRow {
    pub name: String,
    pub poly: IntPoly,
    pub n: u64,
    pub n_hartley: bool,
    pub certificate: Option<WitnessCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MurasugiRow {
    pub name: String,
    pub poly: IntPoly,
    pub screened: Vec<u64>,
    pub hits: Vec<MurasugiHit>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

enum CliError {
    Usage(String),
    Run(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Run(e)
    }
}

fn load_inputs(input: &PolyInput) -> std::result::Result<Vec<(String, Result<IntPoly>)>, CliError> {
    match (&input.poly, &input.poly_file) {
        (Some(text), None) => Ok(vec![(text.clone(), parse_poly(text).map_err(Error::from))]),
        (None, Some(path)) => Ok(read_rows(path)?
            .into_iter()
            .map(|r| (r.name, parse_poly(&r.text).map_err(Error::from)))
            .collect()),
        (Some(_), Some(_)) => Err(usage("give only one of --poly and --poly-file")),
        (None, None) => Err(usage("one of --poly or --poly-file is required")),
    }
}

fn evalue_row(name: String, poly: IntPoly, mode: BoundMode) -> Result<EvalueRow> {
    let profile = hartley_profile(&poly, mode)?;
    let set = hartley_set(&profile, 0);
    let factors = profile
        .factor_data
        .iter()
        .map(|fd| FactorE { factor: fd.factor.clone(), multiplicity: fd.multiplicity, e: fd.e })
        .collect();
    Ok(EvalueRow { name, poly, factors, e: profile.e_delta, rule: set.rule })
}

fn witness_row(name: String, poly: IntPoly, n: u64, mode: BoundMode) -> Result<WitnessRow> {
    let profile = hartley_profile(&poly, mode)?;
    let n_hartley = is_n_hartley(&profile, n)?;
    let certificate = if n_hartley { Some(construct_witness_with_profile(&poly, &profile, n)?) } else { None };
    Ok(WitnessRow { name, poly, n, n_hartley, certificate })
}

fn murasugi_row(name: String, poly: IntPoly, q: Option<u64>) -> Result<MurasugiRow> {
    let (screened, hits) = match q {
        Some(q) => (vec![q], murasugi_screen(&poly, q)?),
        None => (screened_prime_powers(&poly), murasugi_screen_all(&poly)?),
    };
    Ok(MurasugiRow { name, poly, screened, hits })
}

fn hit_text(h: &MurasugiHit) -> String {
    let mut s = format!("q={} lambda={} D={} shift={} sign={}", h.q, h.lambda, h.quotient, h.shift, h.sign);
    match &h.divisor {
        Some(w) => s.push_str(&format!(" divides (W={w})")),
        None => s.push_str(" no-divisor"),
    }
    s
}

fn mode_note(mode: BoundMode) -> &'static str {
    if mode.is_rigorous() {
        "[rigorous]"
    } else {
        "[heuristic bound: non-rigorous]"
    }
}

/// Runs one batch command: each input is processed independently (possibly in
/// parallel) and the results are printed in input order.
fn batch<T, F, G>(
    cli: &Cli,
    pool: &rayon::ThreadPool,
    name: &str,
    input: &PolyInput,
    out: &mut dyn Write,
    err: &mut dyn Write,
    work: F,
    text: G,
) -> std::result::Result<i32, CliError>
where
    T: Serialize + Send,
    F: Fn(String, IntPoly) -> Result<T> + Sync,
    G: Fn(&T) -> String,
{
    let inputs = load_inputs(input)?;
    let results: Vec<(String, Result<T>)> = pool.install(|| {
        inputs
            .into_par_iter()
            .map(|(n, p)| {
                let r = p.and_then(|p| work(n.clone(), p));
                (n, r)
            })
            .collect()
    });
    let mut ok = Vec::new();
    let mut failed = false;
    for (n, r) in results {
        match r {
            Ok(v) => ok.push(v),
            Err(e) => {
                failed = true;
                let _ = writeln!(err, "{n}: {e}");
            }
        }
    }
    if cli.json {
        let report = Report { command: name.to_string(), mode: cli.mode, rigorous: cli.mode.is_rigorous(), results: ok };
        writeln!(out, "{}", serde_json::to_string_pretty(&report).map_err(Error::from)?).map_err(Error::from)?;
    } else {
        for v in &ok {
            writeln!(out, "{}", text(v)).map_err(Error::from)?;
        }
    }
    Ok(if failed { EXIT_INPUT } else { EXIT_OK })
}

fn survey_cmd(
    cli: &Cli,
    pool: &rayon::ThreadPool,
    max_genus: Option<u32>,
    full: bool,
    filters: &str,
    csv: bool,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> std::result::Result<i32, CliError> {
    let g_max = max_genus.unwrap_or(if full { FULL_MAX_GENUS } else { CI_MAX_GENUS });
    if g_max == 0 {
        return Err(usage("--max-genus must be at least 1"));
    }
    if g_max > CI_MAX_GENUS && !full {
        return Err(usage(format!("--max-genus {g_max} exceeds {CI_MAX_GENUS}; pass --full")));
    }
    if g_max > 31 {
        return Err(usage("--max-genus is at most 31"));
    }
    let filters = FilterConfig::parse(filters).map_err(|e| usage(e.to_string()))?;
    let report = pool.install(|| survey_with_config(SurveyConfig::new(g_max, cli.mode, filters)))?;
    let body = if cli.json {
        report.to_json()? + "\n"
    } else if csv {
        report.to_csv()?
    } else {
        survey_summary(&report)
    };
    match output {
        Some(path) => std::fs::write(path, body).map_err(Error::from)?,
        None => out.write_all(body.as_bytes()).map_err(Error::from)?,
    }
    Ok(EXIT_OK)
}

pub fn survey_summary(r: &SurveyReport) -> String {
    let a = &r.aggregates;
    let mut s = format!(
        "survey g_max={} filters={} mode={} {}\n",
        r.config.g_max,
        r.config.filters,
        r.config.mode,
        mode_note(r.config.mode)
    );
    s += &format!(
        "candidates: {} ({} cyclotomic products, {} not)\n",
        a.candidates, a.cyclotomic_products, a.non_cyclotomic_products
    );
    s += &format!(
        "n-Hartley for some n >= 2: {} overall, {} non-cyclotomic\n",
        a.hartley_any,
        a.hartley_exceptions.len()
    );
    for k in &a.hartley_exceptions {
        s += &format!("  hartley exception: {k}\n");
    }
    for (q, c) in &a.murasugi_by_q {
        s += &format!(
            "murasugi q={q}: congruence {} ({} non-cyclotomic), divides {} ({} non-cyclotomic)\n",
            c.congruence, c.congruence_non_cyclotomic, c.divides, c.divides_non_cyclotomic
        );
    }
    for (q, keys) in &a.murasugi_exceptions {
        s += &format!("murasugi exceptions at q={q}: {}\n", keys.len());
        for k in keys {
            let poly = r.records.iter().find(|rec| rec.key() == *k).map(|rec| rec.poly.to_string()).unwrap_or_default();
            s += &format!("  [{k}] {poly}\n");
        }
    }
    s
}

fn dispatch(cli: &Cli, pool: &rayon::ThreadPool, out: &mut dyn Write, err: &mut dyn Write) -> std::result::Result<i32, CliError> {
    let mode = cli.mode;
    match &cli.command {
        Command::Factor(input) => batch(
            cli,
            pool,
            "factor",
            input,
            out,
            err,
            |name, poly| {
                let factorization = factor_over_z_seeded(&poly, cli.seed)?;
                Ok(FactorRow { name, poly, factorization })
            },
            |r: &FactorRow| {
                let parts: Vec<String> = r
                    .factorization
                    .factors
                    .iter()
                    .map(|(f, m)| if *m == 1 { format!("({f})") } else { format!("({f})^{m}") })
                    .collect();
                let mut unit = r.factorization.content.clone();
                if r.factorization.sign < 0 {
                    unit = -unit;
                }
                format!("{}: {} * {}", r.name, unit, parts.join(" * "))
            },
        ),
        Command::Evalue(input) => batch(
            cli,
            pool,
            "evalue",
            input,
            out,
            err,
            |name, poly| evalue_row(name, poly, mode),
            |r: &EvalueRow| {
                let e = r.e.map_or("none (cyclotomic product)".to_string(), |e| e.to_string());
                format!("{}: E={} rule: {} {}", r.name, e, r.rule, mode_note(mode))
            },
        ),
        Command::HartleySet(input) => batch(
            cli,
            pool,
            "hartley-set",
            input,
            out,
            err,
            |name, poly| {
                let set = hartley_set(&hartley_profile(&poly, mode)?, 30);
                Ok(HartleySetRow { name, poly, set })
            },
            |r: &HartleySetRow| {
                if cli.poly_is_single(input) {
                    r.set.to_string()
                } else {
                    format!("{}: {}", r.name, r.set)
                }
            },
        ),
        Command::HartleyCheck { input, n } => batch(
            cli,
            pool,
            "hartley-check",
            input,
            out,
            err,
            |name, poly| Ok(CheckRow { name, check: hartley_knot_check(&poly, *n, mode)? }),
            |r: &CheckRow| {
                let c = &r.check;
                let mut s = format!("{}: {} is {}{}-Hartley", r.name, c.normalized, if c.n_hartley { "" } else { "not " }, c.n);
                if let Some(w) = &c.witness {
                    s += &format!("; witness g = {} (sign {:+})", w.witness, w.sign);
                }
                if let Some(d) = &c.diagnostics {
                    s += &format!("; g(1)=+-1: {}, palindromic: {}", d.unit_at_one, d.palindromic);
                }
                s + " " + mode_note(c.mode)
            },
        ),
        Command::Witness { input, n } => batch(
            cli,
            pool,
            "witness",
            input,
            out,
            err,
            |name, poly| witness_row(name, poly, *n, mode),
            |r: &WitnessRow| match &r.certificate {
                Some(c) => format!(
                    "{}: n={} g = {} sign {:+} verified={} {}",
                    r.name,
                    r.n,
                    c.witness,
                    c.sign,
                    c.verified,
                    mode_note(mode)
                ),
                None => format!("{}: not {}-Hartley {}", r.name, r.n, mode_note(mode)),
            },
        ),
        Command::Murasugi { input, q, all } => {
            let q = if *all { None } else { *q };
            batch(
                cli,
                pool,
                "murasugi",
                input,
                out,
                err,
                |name, poly| murasugi_row(name, poly, q),
                |r: &MurasugiRow| {
                    if r.hits.is_empty() {
                        format!("{}: no solutions for q in {:?}", r.name, r.screened)
                    } else {
                        let lines: Vec<String> = r.hits.iter().map(|h| format!("  {}", hit_text(h))).collect();
                        format!("{}:\n{}", r.name, lines.join("\n"))
                    }
                },
            )
        }
        Command::Survey { max_genus, full, filters, csv, output } => {
            survey_cmd(cli, pool, *max_genus, *full, filters, *csv, output.as_deref(), out)
        }
        Command::Ingest { poly_file, strict } => {
            let ingested = ingest_csv(poly_file, *strict)?;
            for r in &ingested.rejected {
                let _ = writeln!(err, "{}:{}: {}: {}", poly_file.display(), r.line, r.name, r.reason);
            }
            if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&ingested).map_err(Error::from)?).map_err(Error::from)?;
            } else {
                for r in &ingested.records {
                    writeln!(out, "{}: {}", r.name, r.alexander).map_err(Error::from)?;
                }
            }
            Ok(if ingested.rejected.is_empty() { EXIT_OK } else { EXIT_INPUT })
        }
    }
}

impl Cli {
    fn poly_is_single(&self, input: &PolyInput) -> bool {
        !self.json && input.poly.is_some()
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    match dispatch(&cli, &pool, out, err) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Run(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(std::iter::once("freeperiod").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn hartley_set_text() {
        let (code, out, _) = call(&["hartley-set", "--poly", "t^2-3t+1"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "{2}");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["hartley-set", "--poly", "t^^2"]).0, EXIT_INPUT);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["hartley-set"]).0, EXIT_USAGE);
        assert_eq!(call(&["survey", "--max-genus", "12"]).0, EXIT_USAGE);
        assert_eq!(call(&["murasugi", "--poly", "1,-1,1"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn ingest_rows() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("knots.csv");
        std::fs::write(&path, "name,alexander\nK14n26330,\"4,-17,38,-51,38,-17,4\"\ntrefoil,\"1,-1,1\"\nbad,\"1,2\"\n").unwrap();
        let got = ingest_csv(&path, false).unwrap();
        assert_eq!(got.records.len(), 2);
        assert_eq!(got.records[0].alexander, IntPoly::from_i64s(&[4, -17, 38, -51, 38, -17, 4]));
        assert_eq!(got.rejected.len(), 1);
        assert_eq!((got.rejected[0].line, got.rejected[0].name.as_str()), (4, "bad"));
        assert!(ingest_csv(&path, true).is_err());
    }
}
