use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use noncollinear::arith;
use noncollinear::cache::{CacheError, ResultCache};
use noncollinear::census::{census_by_enumeration, count_exact_degree, count_generic, CensusError, CensusOptions, Space};
use noncollinear::enumerate::{count_twisted, EnumError, EnumOptions, Method, TwistedCountResult, DEFAULT_BUDGET};
use noncollinear::errata::{errata_report, render_text, ErrataError, ErrataOptions};
use noncollinear::formulas::{build_count_formula, write_csv};
use noncollinear::partition::{CycleType, Partition};
use noncollinear::poly::interpolate_ints;
use noncollinear::solver::{assemble_tables, formula_counts, published_counts, solve_characters, untwisted_consistency};
use noncollinear::verify::{verify_tables, Allowlist, CellStatus, Checks, VerifyError, VerifyOptions};

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const MAX_Q: u64 = 32;

#[derive(Parser)]
#[command(name = "noncollinear", version, about = "Twisted point counts of noncollinear planar configurations")]
struct Cli {
    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Brute,
    Formula,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpaceArg {
    P1,
    P2,
    Dual,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Source {
    Derived,
    Printed,
}

#[derive(clap::Args, Clone)]
struct EnumArgs {
    /// Largest a-priori candidate estimate to enumerate.
    #[arg(long, default_value_t = DEFAULT_BUDGET as u64)]
    budget: u64,
    /// JSON-lines result cache.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Include wall-clock times (output is then not reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Exact-degree and generic point counts: closed forms against enumeration.
    Census {
        /// Ambient degree L; points of P^2(F_(q^L)) are classified.
        #[arg(long, default_value_t = 6)]
        n: u32,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        q: Vec<u64>,
        #[arg(long, value_enum, default_value_t = SpaceArg::P2)]
        space: SpaceArg,
        #[arg(long, default_value_t = 400_000_000)]
        budget: u64,
    },
    /// Twisted counts p_{n,C}(q).
    Count {
        #[arg(long)]
        n: u32,
        /// Cycle type as parts ("3,2"), cycle notation ("(123)(45)") or "e"; all classes when omitted.
        #[arg(long)]
        class: Option<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        #[arg(long, value_enum, default_value_t = MethodArg::Brute)]
        method: MethodArg,
        #[command(flatten)]
        run: EnumArgs,
    },
    /// Compare enumeration, derived formulas and printed rows for every class.
    VerifyTables {
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        /// JSON file of known misprints; the built-in list is used otherwise.
        #[arg(long)]
        allowlist: Option<PathBuf>,
        #[command(flatten)]
        run: EnumArgs,
    },
    /// Solve for the cohomology of X_n, F_n and B_n.
    Cohomology {
        #[arg(long)]
        n: u32,
        /// Count polynomials to feed the solver.
        #[arg(long, value_enum, default_value_t = Source::Derived)]
        source: Source,
    },
    /// Rebuild p_{n,C} from enumerated values by Lagrange interpolation.
    Interpolate {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "e")]
        class: String,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        #[command(flatten)]
        run: EnumArgs,
    },
    /// Discrepancies between printed and recomputed results.
    Errata,
}

enum Failure {
    Usage(String),
    Budget(String),
    Mismatch(String),
    Other(String),
}

impl From<EnumError> for Failure {
    fn from(e: EnumError) -> Self {
        match e {
            EnumError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            EnumError::NotPrimePower(_) | EnumError::ClassMismatch { .. } | EnumError::UnsupportedSize(_) | EnumError::FrameNeedsIdentity => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Other(other.to_string()),
        }
    }
}

impl From<CacheError> for Failure {
    fn from(e: CacheError) -> Self {
        match e {
            CacheError::Enum(inner) => inner.into(),
            other => Failure::Other(other.to_string()),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Enum(inner) => inner.into(),
            VerifyError::Cache(inner) => inner.into(),
            VerifyError::Allowlist(_) | VerifyError::AllowlistClass(_) => Failure::Usage(e.to_string()),
            other => Failure::Other(other.to_string()),
        }
    }
}

impl From<CensusError> for Failure {
    fn from(e: CensusError) -> Self {
        match e {
            CensusError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<ErrataError> for Failure {
    fn from(e: ErrataError) -> Self {
        Failure::Other(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn check_qs(qs: &[u64]) -> Outcome {
    for &q in qs {
        if q > MAX_Q || arith::prime_power(q).is_none() {
            return Err(Failure::Usage(format!("--q entries must be prime powers up to {MAX_Q}, got {q}")));
        }
    }
    Ok(())
}

fn check_n(n: u32) -> Outcome {
    if matches!(n, 5 | 6) {
        Ok(())
    } else {
        Err(Failure::Usage(format!("--n must be 5 or 6, got {n}")))
    }
}

fn enum_options(run: &EnumArgs) -> Result<EnumOptions, Failure> {
    if run.budget == 0 {
        return Err(Failure::Usage("--budget must be positive".into()));
    }
    Ok(EnumOptions { budget: run.budget as u128, timing: run.timing, method: Method::Auto, ..Default::default() })
}

fn open_cache(run: &EnumArgs) -> Result<Option<ResultCache>, Failure> {
    run.cache.as_ref().map(ResultCache::open).transpose().map_err(Failure::from)
}

fn classes(n: u32, class: Option<&str>) -> Result<Vec<CycleType>, Failure> {
    match class {
        Some(text) => Ok(vec![Partition::parse(text, n).map_err(|e| Failure::Usage(e.to_string()))?]),
        None => Ok(Partition::all(n)),
    }
}

fn emit(out: &mut impl Write, lines: &[String]) -> io::Result<()> {
    for l in lines {
        writeln!(out, "{l}")?;
    }
    Ok(())
}

fn run_census(format: Format, n: u32, qs: &[u64], space: SpaceArg, budget: u64) -> Outcome {
    let space = match space {
        SpaceArg::P1 => Space::P1,
        SpaceArg::P2 => Space::P2,
        SpaceArg::Dual => Space::P2Dual,
    };
    if n == 0 || n > 12 {
        return Err(Failure::Usage(format!("ambient degree must be between 1 and 12, got {n}")));
    }
    let mut qs = qs.to_vec();
    qs.sort_unstable();
    let mut out = io::stdout().lock();
    if format == Format::Csv {
        writeln!(out, "q,degree,enumerated,formula,generic_enumerated,generic_formula,status")?;
    }
    let mut bad = 0;
    for q in qs {
        let opts = CensusOptions { budget: budget as u128, ..Default::default() };
        let table = census_by_enumeration(space, q, n, &opts)?;
        for (k, row) in &table.rows {
            let formula = count_exact_degree(space, *k).evaluate_int(q as i64).to_integer();
            let gen_formula = row.generic.map(|_| count_generic(*k).expect("3..=6").evaluate_int(q as i64).to_integer());
            let ok = formula.to_string() == row.total.to_string()
                && row.generic.map(|g| g.to_string()) == gen_formula.as_ref().map(|g| g.to_string());
            bad += usize::from(!ok);
            let status = if ok { "match" } else { "mismatch" };
            let g = |v: Option<String>| v.unwrap_or_default();
            let line = match format {
                Format::Json => json!({
                    "q": q, "degree": k, "enumerated": row.total, "formula": formula.to_string(),
                    "generic_enumerated": row.generic, "generic_formula": gen_formula.as_ref().map(|v| v.to_string()),
                    "status": status,
                })
                .to_string(),
                Format::Csv => format!(
                    "{q},{k},{},{formula},{},{},{status}",
                    row.total,
                    g(row.generic.map(|v| v.to_string())),
                    g(gen_formula.as_ref().map(|v| v.to_string()))
                ),
                Format::Text => {
                    let generic = match (row.generic, &gen_formula) {
                        (Some(e), Some(f)) => format!("  generic {e} (formula {f})"),
                        _ => String::new(),
                    };
                    format!("q={q} degree {k}: {} points (formula {formula}){generic}  {status}", row.total)
                }
            };
            writeln!(out, "{line}")?;
        }
    }
    if bad > 0 {
        return Err(Failure::Mismatch(format!("{bad} census rows disagree")));
    }
    Ok(())
}

fn result_json(r: &TwistedCountResult, formula: Option<&str>) -> String {
    let mut v = serde_json::to_value(r).expect("plain data");
    if let Some(f) = formula {
        v["formula"] = json!(f);
    }
    v.to_string()
}

fn run_count(format: Format, n: u32, class: Option<&str>, qs: &[u64], method: MethodArg, run: &EnumArgs) -> Outcome {
    check_n(n)?;
    check_qs(qs)?;
    let mut qs = qs.to_vec();
    qs.sort_unstable();
    let opts = enum_options(run)?;
    let mut cache = open_cache(run)?;
    let classes = classes(n, class)?;
    let mut lines = Vec::new();
    if format == Format::Csv {
        lines.push("n,q,class,raw,count,method,formula".to_string());
    }
    let mut mismatches = 0;
    for &q in &qs {
        for c in &classes {
            let formula = (method != MethodArg::Brute).then(|| {
                let f = build_count_formula(n, c).map_err(|e| Failure::Usage(e.to_string()))?;
                Ok::<_, Failure>(f.expand().evaluate_int(q as i64).to_string())
            });
            let formula = formula.transpose()?;
            let brute = if method == MethodArg::Formula {
                None
            } else {
                Some(match cache.as_mut() {
                    Some(cache) => cache.count(n, c, q, &opts)?.0,
                    None => count_twisted(n, c, q, &opts)?,
                })
            };
            if let (Some(b), Some(f)) = (&brute, &formula) {
                mismatches += usize::from(b.count.to_string() != *f);
            }
            lines.push(match (format, &brute) {
                (Format::Json, Some(r)) => result_json(r, formula.as_deref()),
                (Format::Json, None) => json!({
                    "n": n, "q": q, "cycle_type": c.parts(), "count": formula, "method": "formula",
                })
                .to_string(),
                (Format::Csv, Some(r)) => format!(
                    "{n},{q},{},{},{},{},{}",
                    c.cycle_notation(),
                    r.raw_tuple_count,
                    r.count,
                    serde_json::to_value(r.method).expect("enum").as_str().unwrap_or(""),
                    formula.clone().unwrap_or_default()
                ),
                (Format::Csv, None) => format!("{n},{q},{},,{},formula,{}", c.cycle_notation(), formula.clone().unwrap_or_default(), formula.clone().unwrap_or_default()),
                (Format::Text, Some(r)) => {
                    let mut s = format!(
                        "n={n} q={q} class={} count={} raw={} method={}",
                        c.cycle_notation(),
                        r.count,
                        r.raw_tuple_count,
                        serde_json::to_value(r.method).expect("enum").as_str().unwrap_or("")
                    );
                    if let Some(f) = &formula {
                        s.push_str(&format!(" formula={f}"));
                    }
                    if let Some(ms) = r.elapsed_ms {
                        s.push_str(&format!(" elapsed_ms={ms}"));
                    }
                    s
                }
                (Format::Text, None) => format!("n={n} q={q} class={} formula={}", c.cycle_notation(), formula.clone().unwrap_or_default()),
            });
        }
    }
    emit(&mut io::stdout().lock(), &lines)?;
    if mismatches > 0 {
        return Err(Failure::Mismatch(format!("{mismatches} enumerated counts disagree with the closed forms")));
    }
    Ok(())
}

fn run_verify(format: Format, n: u32, qs: &[u64], method: MethodArg, allowlist: Option<&PathBuf>, run: &EnumArgs) -> Outcome {
    check_n(n)?;
    check_qs(qs)?;
    let allowlist = match allowlist {
        Some(path) => Allowlist::from_json(&std::fs::read_to_string(path)?)?,
        None => Allowlist::builtin(),
    };
    let mut cache = open_cache(run)?;
    let mut opts = VerifyOptions {
        checks: match method {
            MethodArg::Brute => Checks::Brute,
            MethodArg::Formula => Checks::Formula,
            MethodArg::Both => Checks::Both,
        },
        enum_options: enum_options(run)?,
        allowlist,
        cache: cache.as_mut(),
    };
    let report = verify_tables(n, qs, &mut opts)?;
    let mut lines = Vec::new();
    let status_name = |s: CellStatus| serde_json::to_value(s).expect("enum").as_str().unwrap_or("").to_string();
    match format {
        Format::Json => {
            lines.extend(report.symbolic.iter().map(|r| json!({"kind": "symbolic", "row": r}).to_string()));
            lines.extend(report.cells.iter().map(|c| json!({"kind": "cell", "cell": c}).to_string()));
        }
        Format::Csv => {
            lines.push("n,q,class,brute,formula,printed,status".into());
            lines.extend(report.cells.iter().map(|c| {
                format!("{},{},{},{},{},{},{}", c.n, c.q, c.class, c.brute.clone().unwrap_or_default(), c.formula, c.printed, status_name(c.status))
            }));
        }
        Format::Text => {
            for r in &report.symbolic {
                let state = match (r.equal, r.allowed) {
                    (true, _) => "match",
                    (false, true) => "expected_erratum",
                    (false, false) => "mismatch",
                };
                lines.push(format!("n={} class={} derived vs printed polynomial: {state}", r.n, r.class));
            }
            for c in &report.cells {
                let mut s = format!(
                    "n={} q={} class={} brute={} formula={} printed={} {}",
                    c.n,
                    c.q,
                    c.class,
                    c.brute.clone().unwrap_or_else(|| "-".into()),
                    c.formula,
                    c.printed,
                    status_name(c.status)
                );
                if let Some(note) = &c.note {
                    s.push_str(&format!(" ({note})"));
                }
                lines.push(s);
            }
            lines.push(format!("{} mismatches", report.mismatches()));
        }
    }
    emit(&mut io::stdout().lock(), &lines)?;
    if !report.ok() {
        return Err(Failure::Mismatch(format!("{} mismatches", report.mismatches())));
    }
    Ok(())
}

fn run_cohomology(format: Format, n: u32, source: Source) -> Outcome {
    check_n(n)?;
    let err = |e: noncollinear::solver::SolverError| Failure::Other(e.to_string());
    let counts = match source {
        Source::Derived => formula_counts(n).map_err(err)?,
        Source::Printed => published_counts(n).map_err(err)?,
    };
    let outcome = solve_characters(n, &counts).map_err(err)?;
    let violations = outcome.violations().to_vec();
    let Some(dec) = outcome.solved() else {
        let mut out = io::stdout().lock();
        for v in &violations {
            let line = match format {
                Format::Json => json!({
                    "violation": format!("{:?}", v.kind), "label": v.label.to_string(), "degree": v.degree, "value": v.value.to_string(),
                })
                .to_string(),
                _ => format!("{:?} for {} at degree {}: {}", v.kind, v.label, v.degree, v.value),
            };
            writeln!(out, "{line}")?;
        }
        return Err(Failure::Mismatch(format!("{} solver conditions violated", violations.len())));
    };
    let tables = assemble_tables(&dec);
    let report = untwisted_consistency(&dec, &counts).map_err(err)?;
    let mut out = io::stdout().lock();
    match format {
        Format::Json => {
            for t in &tables {
                writeln!(out, "{}", t.to_json())?;
            }
            writeln!(out, "{}", json!({"untwisted_sum": report.sum_matches(), "frame_identity": report.frame_matches()}))?;
        }
        Format::Csv => {
            writeln!(out, "space,degree,betti")?;
            for t in &tables {
                for (k, b) in t.betti.iter().enumerate() {
                    writeln!(out, "{},{k},{b}", t.label())?;
                }
            }
        }
        Format::Text => {
            for t in &tables {
                writeln!(out, "{} Betti numbers: {:?}", t.label(), t.betti)?;
                write!(out, "{}", t.render())?;
            }
            writeln!(out, "sum over classes matches B_{n} table: {}", report.sum_matches())?;
            writeln!(out, "n! p_(n,e) = |PGL_3| |X_{n}|: {}", report.frame_matches())?;
        }
    }
    if !report.ok() {
        return Err(Failure::Mismatch("untwisted consistency failed".into()));
    }
    Ok(())
}

fn run_interpolate(format: Format, n: u32, class: &str, qs: &[u64], run: &EnumArgs) -> Outcome {
    check_n(n)?;
    check_qs(qs)?;
    let class = Partition::parse(class, n).map_err(|e| Failure::Usage(e.to_string()))?;
    let opts = enum_options(run)?;
    let mut cache = open_cache(run)?;
    let mut samples = Vec::new();
    for &q in qs {
        let r = match cache.as_mut() {
            Some(c) => c.count(n, &class, q, &opts)?.0,
            None => count_twisted(n, &class, q, &opts)?,
        };
        samples.push((q as i64, num_bigint::BigInt::from(r.count)));
    }
    let poly = interpolate_ints(&samples).map_err(|e| Failure::Usage(e.to_string()))?;
    let formula = build_count_formula(n, &class).map_err(|e| Failure::Usage(e.to_string()))?.expand();
    let determined = samples.len() > 2 * n as usize;
    let agrees = poly == formula;
    let mut out = io::stdout().lock();
    match format {
        Format::Csv => write_csv(&[(n, class.clone(), poly.clone())], &mut out).map_err(|e| Failure::Other(e.to_string()))?,
        Format::Json => writeln!(
            out,
            "{}",
            json!({
                "n": n, "cycle_type": class.parts(), "samples": samples.len(),
                "polynomial": poly.to_string(), "determined": determined, "matches_formula": agrees,
            })
        )?,
        Format::Text => {
            writeln!(out, "p_({n},{}) from {} samples: {poly}", class.cycle_notation(), samples.len())?;
            writeln!(out, "matches closed form: {agrees}")?;
            if !determined {
                writeln!(out, "note: {} samples are needed to pin down degree {}", 2 * n + 1, 2 * n)?;
            }
        }
    }
    if determined && !agrees {
        return Err(Failure::Mismatch("interpolated polynomial differs from the closed form".into()));
    }
    Ok(())
}

fn run_errata(format: Format) -> Outcome {
    let report = errata_report(&ErrataOptions::default())?;
    let mut out = io::stdout().lock();
    match format {
        Format::Text => write!(out, "{}", render_text(&report))?,
        Format::Json | Format::Csv => {
            for e in &report {
                let v: Value = serde_json::to_value(e).expect("plain data");
                writeln!(out, "{v}")?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(EXIT_USAGE);
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().expect("pool is configured once");
    }
    let result = match &cli.command {
        Command::Census { n, q, space, budget } => run_census(cli.format, *n, q, *space, *budget),
        Command::Count { n, class, q, method, run } => run_count(cli.format, *n, class.as_deref(), q, *method, run),
        Command::VerifyTables { n, q, method, allowlist, run } => run_verify(cli.format, *n, q, *method, allowlist.as_ref(), run),
        Command::Cohomology { n, source } => run_cohomology(cli.format, *n, *source),
        Command::Interpolate { n, class, q, run } => run_interpolate(cli.format, *n, class, q, run),
        Command::Errata => run_errata(cli.format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_BUDGET)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            ExitCode::from(EXIT_MISMATCH)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_MISMATCH)
        }
    }
}
