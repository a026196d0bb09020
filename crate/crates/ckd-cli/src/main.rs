use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use ckd_core::algebra::{check_table, commutation_table, full_check, AlgebraReport, Monomial};
use ckd_core::contraction::{contract, CanonicalInput, Parameter, MIN_ORDER};
use ckd_core::laws::{evaluate, evaluate_triangle, LawInput, LAWS, LAW_TOL};
use ckd_core::triangle::{sample_corpus, solve, solve_sas, SampleMode};
use ckd_core::{CkdError, SpaceLabels, TriangleRecord, DEFAULT_TOL};

const EXIT_OTHER: u8 = 1;
const EXIT_DEGENERATE: u8 = 2;
const EXIT_NO_REAL: u8 = 3;
const EXIT_LAW_FAILURE: u8 = 4;

/// Extrapolated error allowed by `contract` before a row is flagged.
const CONTRACT_MAX_ERROR: f64 = 1e-6;

#[derive(Parser)]
#[command(
    name = "ckd",
    version,
    about = "Trigonometry of the complex Hermitian CKD spaces"
)]
struct Cli {
    /// Tolerance override; the default depends on the command.
    #[arg(long, global = true, env = "CKD_TOL")]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a triangle from two sides, the included angle and its phase.
    Solve(SolveArgs),
    /// Evaluate the full law suite on a triangle record (JSON, `-` for stdin).
    Verify(VerifyArgs),
    /// Sample random triangles in each geometry and tabulate law residuals.
    Sweep(SweepArgs),
    /// Watch the solved invariants as one label goes to zero.
    Contract(ContractArgs),
    /// Check the commutation table, Casimir, duality and involutions.
    AlgebraCheck(AlgebraArgs),
    /// List the law registry.
    Laws(FormatArgs),
}

#[derive(Args)]
struct LabelArgs {
    /// Labels as eta,kappa1,kappa2.
    #[arg(long, value_parser = parse_labels, allow_hyphen_values = true)]
    labels: Option<SpaceLabels>,

    /// Replace each label by its sign.
    #[arg(long)]
    normalize: bool,
}

impl LabelArgs {
    fn resolve(&self) -> Option<SpaceLabels> {
        self.labels
            .map(|l| if self.normalize { l.normalize() } else { l })
    }

    fn resolve_or_all(&self) -> Vec<SpaceLabels> {
        self.resolve()
            .map(|l| vec![l])
            .unwrap_or_else(SpaceLabels::all_normalized)
    }
}

#[derive(Args)]
struct FormatArgs {
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    labels: LabelArgs,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    a: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    b: f64,
    /// Included angle at the vertex opposite side c.
    #[arg(long = "C", default_value_t = 0.0, allow_hyphen_values = true)]
    angle_c: f64,
    #[arg(long = "psi-c", default_value_t = 0.0, allow_hyphen_values = true)]
    psi_c: f64,
    /// Lateral phase of side a; give both or neither of the lateral phases.
    #[arg(long = "phi-a", allow_hyphen_values = true, requires = "phi_b")]
    phi_a: Option<f64>,
    #[arg(long = "phi-b", allow_hyphen_values = true, requires = "phi_a")]
    phi_b: Option<f64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Generic,
    PurelyReal,
    Collinear,
}

impl From<Mode> for SampleMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Generic => SampleMode::Generic,
            Mode::PurelyReal => SampleMode::PurelyReal,
            Mode::Collinear => SampleMode::Collinear,
        }
    }
}

#[derive(Args)]
struct SweepArgs {
    /// A single geometry; all 27 when omitted.
    #[command(flatten)]
    labels: LabelArgs,
    /// Triangles per geometry.
    #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
    count: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Mode::Generic)]
    mode: Mode,
    #[command(flatten)]
    format: FormatArgs,
}

#[derive(Args)]
struct ContractArgs {
    #[command(flatten)]
    labels: LabelArgs,
    /// eta, kappa1 or kappa2.
    #[arg(long)]
    param: Parameter,
    #[arg(long, value_delimiter = ',', default_value = "1e-3,1e-4,1e-5")]
    eps: Vec<f64>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    #[arg(long = "C", allow_hyphen_values = true)]
    angle_c: Option<f64>,
    #[arg(long = "psi-c", allow_hyphen_values = true)]
    psi_c: Option<f64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AlgebraArgs {
    #[command(flatten)]
    labels: LabelArgs,
    /// Negative control: bump the structure constant of the n-th nonzero bracket.
    #[arg(long, value_name = "N")]
    corrupt: Option<usize>,
    #[arg(long)]
    json: bool,
}

fn parse_labels(s: &str) -> Result<SpaceLabels, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [eta, k1, k2] => SpaceLabels::new(eta, k1, k2).map_err(|e| e.to_string()),
        _ => Err(format!("expected three comma-separated reals, got {s:?}")),
    }
}

/// Failure carrying the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn other(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_OTHER,
            message: message.into(),
        }
    }
}

impl From<CkdError> for Failure {
    fn from(e: CkdError) -> Self {
        let code = match e {
            CkdError::DegenerateTriangle(_) => EXIT_DEGENERATE,
            CkdError::NoRealArgument { .. } | CkdError::NoRealTriangle(_) => EXIT_NO_REAL,
            _ => EXIT_OTHER,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            // downstream reader closed early, as with `| head`
            return Self {
                code: 0,
                message: String::new(),
            };
        }
        Self::other(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Self::other(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        if e.is_io_error() {
            if let csv::ErrorKind::Io(io) = e.into_kind() {
                return io.into();
            }
            return Self::other("csv output failed");
        }
        Self::other(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_OTHER } else { 0 });
        }
    };
    if let Some(t) = cli.tol {
        if !(t > 0.0 && t.is_finite()) {
            eprintln!("error: tolerance must be a positive real, got {t}");
            return ExitCode::from(EXIT_OTHER);
        }
    }
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a, cli.tol.unwrap_or(DEFAULT_TOL)),
        Command::Verify(a) => cmd_verify(a, cli.tol.unwrap_or(LAW_TOL)),
        Command::Sweep(a) => cmd_sweep(a, cli.tol.unwrap_or(LAW_TOL)),
        Command::Contract(a) => cmd_contract(a, cli.tol.unwrap_or(DEFAULT_TOL)),
        Command::AlgebraCheck(a) => cmd_algebra(a),
        Command::Laws(a) => cmd_laws(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn record_fields(r: &TriangleRecord) -> Vec<(String, f64)> {
    match serde_json::to_value(r) {
        Ok(serde_json::Value::Object(m)) => m
            .into_iter()
            .filter_map(|(k, v)| v.as_f64().map(|x| (k, x)))
            .collect(),
        _ => Vec::new(),
    }
}

fn cmd_solve(args: &SolveArgs, tol: f64) -> Outcome {
    let labels = args
        .labels
        .resolve()
        .ok_or_else(|| Failure::other("--labels is required"))?;
    let t = match (args.phi_a, args.phi_b) {
        (Some(pa), Some(pb)) => solve(
            args.a,
            pa,
            args.b,
            pb,
            args.angle_c,
            args.psi_c,
            labels,
            tol,
        )?,
        _ => solve_sas(args.a, args.b, args.angle_c, args.psi_c, labels, tol)?,
    };
    let record = TriangleRecord::new(&t);
    if args.json {
        print_json(&record)?;
    } else {
        let mut out = io::stdout().lock();
        writeln!(out, "labels  {}", labels)?;
        // serde_json's map is sorted; keep the declared field order instead.
        let fields = record_fields(&record);
        for key in RECORD_ORDER {
            if let Some((k, v)) = fields.iter().find(|(k, _)| k == key) {
                writeln!(out, "{k:<8}{v:>24.15e}")?;
            }
        }
    }
    Ok(0)
}

const RECORD_ORDER: [&str; 22] = [
    "eta", "kappa1", "kappa2", "a", "b", "c", "phi_a", "phi_b", "phi_c", "A", "B", "C", "psi_A",
    "psi_B", "psi_C", "omega", "Omega", "S", "s", "gamma", "Gamma", "residual",
];

fn cmd_verify(args: &VerifyArgs, tol: f64) -> Outcome {
    let mut text = String::new();
    if args.file.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(&args.file)
            .map_err(|e| Failure::other(format!("{}: {e}", args.file.display())))?;
    }
    let record: TriangleRecord = serde_json::from_str(&text)
        .map_err(|e| Failure::other(format!("cannot parse record: {e}")))?;
    let report = evaluate(&LawInput::from_record(&record), tol);
    if args.json {
        print_json(&report)?;
    } else {
        let mut out = io::stdout().lock();
        for (id, e) in report.entries.iter().filter(|(_, e)| e.applicable) {
            let status = if e.pass { "pass" } else { "FAIL" };
            writeln!(out, "{id:<22}{:>12.3e}  {status}", e.residual)?;
        }
        writeln!(
            out,
            "max residual {:.3e}, {} failing",
            report.max_residual(),
            report.failures().len()
        )?;
    }
    if report.all_pass() {
        Ok(0)
    } else {
        eprintln!("failing laws: {}", report.failures().join(", "));
        Ok(EXIT_LAW_FAILURE)
    }
}

#[derive(Debug, Clone, Serialize)]
struct LawSummary {
    law_id: &'static str,
    max_residual: f64,
    pass_count: usize,
    fail_count: usize,
}

#[derive(Debug, Clone, Serialize)]
struct SweepRow {
    labels: SpaceLabels,
    seed: u64,
    requested: u64,
    solved: usize,
    laws: Vec<LawSummary>,
}

impl SweepRow {
    fn failures(&self) -> usize {
        self.laws.iter().map(|l| l.fail_count).sum()
    }
}

/// Independent stream for the i-th geometry of a sweep.
fn task_seed(master: u64, index: usize) -> u64 {
    // splitmix64 finalizer
    let mut z = master.wrapping_add((index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn sweep_one(labels: SpaceLabels, seed: u64, count: u64, mode: SampleMode, tol: f64) -> SweepRow {
    let corpus = sample_corpus(labels, count as usize, seed, mode, DEFAULT_TOL);
    let mut laws: Vec<LawSummary> = LAWS
        .iter()
        .map(|l| LawSummary {
            law_id: l.id,
            max_residual: 0.0,
            pass_count: 0,
            fail_count: 0,
        })
        .collect();
    for t in &corpus {
        let report = evaluate_triangle(t, tol);
        for s in &mut laws {
            if let Some(e) = report.entries.get(s.law_id).filter(|e| e.applicable) {
                s.max_residual = s.max_residual.max(e.residual);
                if e.pass {
                    s.pass_count += 1;
                } else {
                    s.fail_count += 1;
                }
            }
        }
    }
    laws.retain(|s| s.pass_count + s.fail_count > 0);
    SweepRow {
        labels,
        seed,
        requested: count,
        solved: corpus.len(),
        laws,
    }
}

fn cmd_sweep(args: &SweepArgs, tol: f64) -> Outcome {
    let triples = args.labels.resolve_or_all();
    let mode = SampleMode::from(args.mode);
    // Indexed parallel collect keeps the task order.
    let rows: Vec<SweepRow> = triples
        .par_iter()
        .enumerate()
        .map(|(i, &l)| sweep_one(l, task_seed(args.seed, i), args.count, mode, tol))
        .collect();

    if args.format.json {
        print_json(&rows)?;
    } else if args.format.csv {
        let mut w = csv::Writer::from_writer(io::stdout().lock());
        w.write_record([
            "labels",
            "law-id",
            "max-residual",
            "pass-count",
            "fail-count",
        ])?;
        for r in &rows {
            let labels = format!("{},{},{}", r.labels.eta, r.labels.kappa1, r.labels.kappa2);
            for s in &r.laws {
                w.write_record([
                    labels.clone(),
                    s.law_id.to_string(),
                    format!("{:e}", s.max_residual),
                    s.pass_count.to_string(),
                    s.fail_count.to_string(),
                ])?;
            }
        }
        w.flush()?;
    } else {
        let mut out = io::stdout().lock();
        writeln!(
            out,
            "{:<16}{:>8}{:>8}{:>14}  {:<16}{:>8}",
            "labels", "solved", "laws", "max-residual", "worst", "fails"
        )?;
        for r in &rows {
            let worst = r
                .laws
                .iter()
                .max_by(|x, y| x.max_residual.total_cmp(&y.max_residual));
            writeln!(
                out,
                "{:<16}{:>8}{:>8}{:>14.3e}  {:<16}{:>8}",
                r.labels.to_string(),
                r.solved,
                r.laws.len(),
                worst.map_or(0.0, |w| w.max_residual),
                worst.map_or("-", |w| w.law_id),
                r.failures()
            )?;
        }
    }

    for r in rows.iter().filter(|r| (r.solved as u64) < r.requested) {
        eprintln!(
            "warning: {}: only {} of {} draws closed into triangles",
            r.labels, r.solved, r.requested
        );
    }
    let failures: usize = rows.iter().map(SweepRow::failures).sum();
    if failures > 0 {
        eprintln!("{failures} law evaluations failed");
        Ok(EXIT_LAW_FAILURE)
    } else {
        Ok(0)
    }
}

fn cmd_contract(args: &ContractArgs, tol: f64) -> Outcome {
    let base = args
        .labels
        .resolve()
        .ok_or_else(|| Failure::other("--labels is required"))?;
    if args.param.get(&base) == 0.0 {
        return Err(Failure::other(format!(
            "{} is already zero in {base}",
            args.param
        )));
    }
    if args.eps.is_empty() || args.eps.iter().any(|e| !(*e > 0.0)) {
        return Err(Failure::other("--eps must be positive reals"));
    }
    let d = CanonicalInput::default();
    let input = CanonicalInput {
        a: args.a.unwrap_or(d.a),
        b: args.b.unwrap_or(d.b),
        angle_c: args.angle_c.unwrap_or(d.angle_c),
        psi_c: args.psi_c.unwrap_or(d.psi_c),
    };
    let table = contract(base, args.param, &args.eps, input, tol)?;
    if args.json {
        print_json(&table)?;
        return Ok(0);
    }
    let mut out = io::stdout().lock();
    writeln!(out, "base {}  {} -> 0", table.base, table.parameter)?;
    write!(out, "{:<24}{:>14}", "invariant", "limit")?;
    for e in &table.epsilons {
        write!(out, "{:>14}", format!("dev@{e:e}"))?;
    }
    writeln!(out, "{:>10}{:>14}  converges", "order", "extrap-err")?;
    for r in table.rows.iter().chain(&table.phase_ratio) {
        write!(out, "{:<24}{:>14.6e}", r.name, r.limit)?;
        for d in &r.deviations {
            write!(out, "{d:>14.3e}")?;
        }
        let order = r.min_order().map_or("-".to_string(), |p| format!("{p:.3}"));
        writeln!(
            out,
            "{order:>10}{:>14.3e}  {}",
            r.extrapolation_error,
            r.converges(MIN_ORDER, CONTRACT_MAX_ERROR)
        )?;
    }
    Ok(0)
}

/// Copy of the commutation table with one structure constant altered.
fn corrupted_table(n: usize) -> Result<Vec<ckd_core::algebra::BracketRule>, Failure> {
    let mut table = commutation_table();
    let nonzero: Vec<usize> = (0..table.len())
        .filter(|&i| table[i].rhs.is_some())
        .collect();
    let &i = nonzero.get(n).ok_or_else(|| {
        Failure::other(format!(
            "--corrupt {n}: only {} nonzero brackets",
            nonzero.len()
        ))
    })?;
    if let Some((m, g)) = table[i].rhs {
        table[i].rhs = Some((
            Monomial {
                coeff: m.coeff + 1,
                ..m
            },
            g,
        ));
        eprintln!("corrupted rule: {}", table[i]);
    }
    Ok(table)
}

#[derive(Serialize)]
struct AlgebraOutput {
    labels: SpaceLabels,
    reports: Vec<(String, AlgebraReport)>,
}

fn cmd_algebra(args: &AlgebraArgs) -> Outcome {
    let table = args.corrupt.map(corrupted_table).transpose()?;
    let outputs: Vec<AlgebraOutput> = args
        .labels
        .resolve_or_all()
        .into_iter()
        .map(|labels| {
            let mut reports = full_check(&labels);
            if let Some(t) = &table {
                reports[0] = ("commutators".to_string(), check_table(&labels, t));
            }
            AlgebraOutput { labels, reports }
        })
        .collect();

    if args.json {
        print_json(&outputs)?;
    } else {
        let mut out = io::stdout().lock();
        for o in &outputs {
            for (name, r) in &o.reports {
                let fails = r.failures();
                writeln!(
                    out,
                    "{:<16}{:<26}{:>5} checks  {:<8}{}",
                    o.labels.to_string(),
                    name,
                    r.checks.len(),
                    if r.exact { "exact" } else { "float" },
                    if fails.is_empty() { "pass" } else { "FAIL" }
                )?;
                for f in fails {
                    writeln!(out, "    {}  deviation {:e}", f.rule, f.deviation)?;
                }
            }
        }
    }
    let ok = outputs
        .iter()
        .all(|o| o.reports.iter().all(|(_, r)| r.all_pass()));
    Ok(if ok { 0 } else { EXIT_LAW_FAILURE })
}

#[derive(Serialize)]
struct LawListing {
    id: &'static str,
    family: &'static str,
    description: &'static str,
}

fn cmd_laws(args: &FormatArgs) -> Outcome {
    let rows: Vec<LawListing> = LAWS
        .iter()
        .map(|l| LawListing {
            id: l.id,
            family: l.family.name(),
            description: l.description,
        })
        .collect();
    if args.json {
        print_json(&rows)?;
    } else if args.csv {
        let mut w = csv::Writer::from_writer(io::stdout().lock());
        for r in &rows {
            w.serialize(r)?;
        }
        w.flush()?;
    } else {
        let mut out = io::stdout().lock();
        for r in &rows {
            writeln!(out, "{:<22}{:<12}{}", r.id, r.family, r.description)?;
        }
    }
    Ok(0)
}
