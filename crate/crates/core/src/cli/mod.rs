//! The `gpoly` command line.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or domain error,
//! 3 I/O error.

mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;
use serde::Serialize;

pub use output::{plot_file, render, text_table, Envelope, Format, Outcome};

use crate::asymptotics::{self, Schedule, StatsRecord};
use crate::gpoly::{closed_form, via_recurrence, RecurrenceScheme};
use crate::json::rational_str;
use crate::polycore::{dyadic_at_most, ExactRational, IsolatingInterval, RootOracle};
use crate::recurrence::{self, RecurrenceError};
use crate::rootline::{liu_wang_check, verify_sturm_family, Family, Recursion};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Environment variable that overrides `--threads`.
pub const THREADS_ENV: &str = "GPOLY_THREADS";

#[derive(Parser, Debug)]
#[command(name = "gpoly", version, about = "Exact workbench for g-polynomials of uniform matroids")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Omit the timestamp from the output.
    #[arg(long, global = true)]
    pub no_meta: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the rendered output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Also write `n clt_distance` columns here (stats, normality, conjecture).
    #[arg(long, global = true)]
    pub plot_data: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coefficients of g(n, d) and its values f(1), f'(1), f''(1).
    Compute {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Build from a recurrence (e.g. 2.1, 2.9+2.10) instead of the closed form.
        #[arg(long)]
        via: Option<String>,
    },
    /// Check recurrence identities exactly on every (n, d) with n <= n-max.
    Verify {
        /// Comma-separated ids, or `all`.
        #[arg(long, default_value = "all")]
        ids: String,
        #[arg(long, default_value_t = 40)]
        n_max: usize,
    },
    /// Isolating intervals for the real roots of g(n, d).
    Roots {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Refine every open interval to at most this width.
        #[arg(long, default_value_t = 1e-6)]
        width: f64,
    },
    /// Interlacing of consecutive members of a family.
    Interlace {
        /// fixed-d, fixed-n, diag-2d, diag-2d+1 or diag-half.
        #[arg(long)]
        family: String,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Bound on n (on d for fixed-n).
        #[arg(long, alias = "limit", default_value_t = 40)]
        n_max: usize,
    },
    /// Liu-Wang hypotheses for the recursions behind the interlacing results.
    LiuWang {
        /// fixed-d, fixed-n, even-diagonal, odd-diagonal, half-odd, half-even or all.
        #[arg(long, default_value = "all")]
        recursion: String,
        #[arg(long, default_value_t = 25)]
        n_max: usize,
        /// Flip the sign of psi before checking (mutation run).
        #[arg(long)]
        negate_psi: bool,
    },
    /// Exact mean, variance and r_n(1) of g(n, floor(n/2)).
    Stats {
        #[arg(long, default_value_t = 4)]
        n_min: usize,
        #[arg(long, default_value_t = 50)]
        n_max: usize,
    },
    /// Exact sweeps of the ratio and variance inequalities.
    Lemmas {
        #[arg(long, default_value_t = 100)]
        m_max: usize,
    },
    /// CLT and LLT distances of g(n, floor(n/2)) for selected n.
    Normality {
        #[arg(long = "n", value_delimiter = ',', default_value = "50,100,200,400")]
        ns: Vec<usize>,
        #[arg(long, default_value_t = 1001)]
        grid: usize,
    },
    /// Moments and distances of g(n, d(n)) along a schedule d(n).
    Conjecture {
        /// constant-C, floor-sqrt, floor-log, floor-alpha-n:P/Q or floor-half.
        #[arg(long)]
        schedule: String,
        #[arg(long, default_value_t = 200)]
        n_max: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Compute { .. } => "compute",
            Command::Verify { .. } => "verify",
            Command::Roots { .. } => "roots",
            Command::Interlace { .. } => "interlace",
            Command::LiuWang { .. } => "liu-wang",
            Command::Stats { .. } => "stats",
            Command::Lemmas { .. } => "lemmas",
            Command::Normality { .. } => "normality",
            Command::Conjecture { .. } => "conjecture",
        }
    }
}

/// Failure that maps to a non-zero exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) => m,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn frac_str(x: &ExactRational) -> String {
    x.to_string()
}

/// Exact when short, otherwise a decimal approximation.
fn brief(x: &ExactRational) -> String {
    let s = x.to_string();
    if s.len() <= 16 {
        s
    } else {
        format!("{:.10}", x.to_f64().unwrap_or(f64::NAN))
    }
}

#[derive(Serialize)]
struct ComputePayload<'a> {
    n: usize,
    d: usize,
    coefficients: &'a crate::polycore::UniPoly,
    #[serde(serialize_with = "rational_str")]
    f_at_1: ExactRational,
    #[serde(serialize_with = "rational_str")]
    df_at_1: ExactRational,
    #[serde(serialize_with = "rational_str")]
    d2f_at_1: ExactRational,
    route: String,
}

fn cmd_compute(n: usize, d: usize, via: Option<&str>) -> Result<Outcome, CliError> {
    let (rec, route) = match via {
        None => (closed_form(n, d).map_err(usage)?, "closed-form".to_string()),
        Some(s) => {
            let scheme: RecurrenceScheme = s.parse().map_err(usage)?;
            (via_recurrence(n, d, scheme).map_err(usage)?, format!("recurrence {scheme}"))
        }
    };
    let (f, df, d2f) = rec.values_at_one();
    let coeffs: Vec<String> = rec.poly.coeffs().iter().map(frac_str).collect();
    let table = format!(
        "g({n},{d}) = {}\ncoefficients: [{}]\nf(1) = {f}, f'(1) = {df}, f''(1) = {d2f}\n",
        rec.poly,
        coeffs.join(", ")
    );
    let rows = coeffs.iter().enumerate().map(|(i, c)| vec![i.to_string(), c.clone()]).collect();
    let payload = ComputePayload {
        n,
        d,
        coefficients: &rec.poly,
        f_at_1: f,
        df_at_1: df,
        d2f_at_1: d2f,
        route,
    };
    Ok(Outcome::new(&payload).csv(["i", "coefficient"], rows).table(table))
}

fn cmd_verify(ids: &str, n_max: usize) -> Result<Outcome, CliError> {
    let specs = if ids.trim() == "all" {
        recurrence::registry()
    } else {
        ids.split(',')
            .map(|id| recurrence::lookup(id.trim()))
            .collect::<Result<Vec<_>, RecurrenceError>>()
            .map_err(usage)?
    };
    for spec in &specs {
        if ids.trim() != "all" && recurrence::grid(spec, n_max).is_empty() {
            return Err(usage(RecurrenceError::NothingToCheck {
                id: spec.id.to_string(),
                n_max,
            }));
        }
    }
    let reports = recurrence::verify_specs(&specs, n_max);
    let pass = recurrence::all_pass(&reports);
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.id.clone(),
                r.checked.to_string(),
                r.skipped.len().to_string(),
                r.failures.len().to_string(),
                if r.pass { "PASS" } else { "FAIL" }.to_string(),
            ]
        })
        .collect();
    let header = ["id", "checked", "skipped", "failures", "status"];
    let mut table = text_table(&header, &rows);
    for r in &reports {
        for s in &r.skipped {
            table.push_str(&format!("{} skipped ({}, {}): {}\n", r.id, s.n, s.d, s.reason));
        }
        if let Some(f) = r.failures.first() {
            table.push_str(&format!("{} first failure at ({}, {}): {} != {}\n", r.id, f.n, f.d, f.lhs, f.rhs));
        }
    }
    #[derive(Serialize)]
    struct Payload<'a> {
        n_max: usize,
        pass: bool,
        reports: &'a [recurrence::VerificationReport],
    }
    let payload = Payload {
        n_max,
        pass,
        reports: &reports,
    };
    Ok(Outcome::new(&payload).csv(header, rows).table(table).pass(pass))
}

#[derive(Serialize)]
struct RootRow {
    index: usize,
    interval: IsolatingInterval,
    approx: f64,
}

fn cmd_roots(n: usize, d: usize, width: f64) -> Result<Outcome, CliError> {
    if width.is_nan() || width <= 0.0 {
        return Err(usage("--width must be positive"));
    }
    let rec = closed_form(n, d).map_err(usage)?;
    if rec.poly.is_zero() {
        return Err(usage(format!("g({n},{d}) is the zero polynomial")));
    }
    let oracle = RootOracle::new(&rec.poly).map_err(usage)?;
    let w = dyadic_at_most(width);
    let roots: Vec<RootRow> = oracle
        .isolate(true)
        .iter()
        .enumerate()
        .map(|(index, iv)| {
            let interval = oracle.refine(iv, &w)?;
            Ok(RootRow {
                index,
                approx: interval.approx(),
                interval,
            })
        })
        .collect::<Result<_, crate::polycore::PolyError>>()
        .map_err(usage)?;
    let rows: Vec<Vec<String>> = roots
        .iter()
        .map(|r| {
            let iv = &r.interval;
            vec![
                r.index.to_string(),
                serde_json::to_value(iv.kind).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
                iv.lo.numer().to_string(),
                iv.lo.denom().to_string(),
                iv.hi.numer().to_string(),
                iv.hi.denom().to_string(),
                format!("{:.12}", r.approx),
            ]
        })
        .collect();
    let header = ["index", "kind", "lo_num", "lo_den", "hi_num", "hi_den", "approx"];
    let table_rows: Vec<Vec<String>> = roots
        .iter()
        .map(|r| {
            let iv = &r.interval;
            let span = if iv.is_exact() { format!("{}", iv.lo) } else { format!("({}, {})", iv.lo, iv.hi) };
            vec![r.index.to_string(), span, format!("{:.12}", r.approx)]
        })
        .collect();
    let table = format!("g({n},{d}) = {}\n{}", rec.poly, text_table(&["index", "root", "approx"], &table_rows));
    #[derive(Serialize)]
    struct Payload<'a> {
        n: usize,
        d: usize,
        roots: &'a [RootRow],
    }
    Ok(Outcome::new(&Payload { n, d, roots: &roots }).csv(header, rows).table(table))
}

fn cmd_interlace(family: &str, d: Option<usize>, n: Option<usize>, limit: usize) -> Result<Outcome, CliError> {
    let param = match family {
        "fixed-d" => d,
        "fixed-n" => n,
        _ => None,
    };
    let fam = Family::parse(family, param).map_err(usage)?;
    let report = verify_sturm_family(fam, limit).map_err(usage)?;
    let rows: Vec<Vec<String>> = report
        .pairs
        .iter()
        .map(|p| {
            vec![
                p.index.to_string(),
                format!("g({},{})", p.lower.n, p.lower.d),
                format!("g({},{})", p.upper.n, p.upper.d),
                serde_json::to_value(p.verdict).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
                p.shared_roots.len().to_string(),
                p.nonzero_roots_strict.to_string(),
            ]
        })
        .collect();
    let header = ["index", "lower", "upper", "verdict", "shared_roots", "nonzero_roots_strict"];
    let mut table = text_table(&header, &rows);
    table.push_str(&format!(
        "{}: {} pairs, {}\n",
        report.family,
        report.pairs.len(),
        if report.pass { "PASS" } else { "FAIL" }
    ));
    let pass = report.pass;
    Ok(Outcome::new(&report).csv(header, rows).table(table).pass(pass))
}

fn cmd_liu_wang(which: &str, n_max: usize, negate: bool) -> Result<Outcome, CliError> {
    let recursions: Vec<Recursion> = if which == "all" {
        Recursion::ALL.to_vec()
    } else {
        vec![which.parse().map_err(usage)?]
    };
    let mut outcomes = Vec::new();
    for r in recursions {
        for inst in r.instances(n_max).map_err(usage)? {
            let inst = if negate { inst.with_negated_psi(0).map_err(usage)? } else { inst };
            outcomes.push(liu_wang_check(&inst).map_err(usage)?);
        }
    }
    let pass = outcomes.iter().all(|o| o.satisfied);
    let rows: Vec<Vec<String>> = outcomes
        .iter()
        .map(|o| {
            let why: Vec<&str> = o.violations.iter().map(|v| v.reason.as_str()).collect();
            vec![o.label.clone(), o.satisfied.to_string(), why.join("; ")]
        })
        .collect();
    let header = ["instance", "satisfied", "violations"];
    let failed: Vec<Vec<String>> = rows.iter().filter(|r| r[1] == "false").cloned().collect();
    let mut table = format!(
        "{} instances, {} satisfied\n",
        outcomes.len(),
        outcomes.len() - failed.len()
    );
    if !failed.is_empty() {
        table.push_str(&text_table(&header, &failed));
    }
    #[derive(Serialize)]
    struct Payload<'a> {
        n_max: usize,
        negate_psi: bool,
        pass: bool,
        outcomes: &'a [crate::rootline::LiuWangOutcome],
    }
    let payload = Payload {
        n_max,
        negate_psi: negate,
        pass,
        outcomes: &outcomes,
    };
    Ok(Outcome::new(&payload).csv(header, rows).table(table).pass(pass))
}

fn stats_outcome(records: &[StatsRecord]) -> Outcome {
    let rows: Vec<Vec<String>> = records.iter().map(StatsRecord::csv_fields).collect();
    let dist = |x: Option<f64>| x.map_or_else(|| "-".to_string(), |v| format!("{v:.6}"));
    let table_rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.d.to_string(),
                brief(&r.mu),
                brief(&r.sigma2),
                brief(&r.r),
                dist(r.clt_distance),
                dist(r.llt_distance),
            ]
        })
        .collect();
    let table = text_table(&["n", "d", "mu", "sigma2", "r", "clt", "llt"], &table_rows);
    let plot = records.iter().filter_map(|r| r.clt_distance.map(|c| (r.n, c))).collect();
    Outcome::new(&records).csv(StatsRecord::CSV_HEADER, rows).table(table).plot(plot)
}

fn cmd_stats(n_min: usize, n_max: usize) -> Result<Outcome, CliError> {
    if n_min < 3 || n_min > n_max {
        return Err(usage(format!("need 3 <= n-min <= n-max, got {n_min}..{n_max}")));
    }
    Ok(stats_outcome(&asymptotics::stats_range(n_min, n_max).map_err(usage)?))
}

fn cmd_normality(ns: &[usize], grid: usize) -> Result<Outcome, CliError> {
    Ok(stats_outcome(&asymptotics::normality_report(ns, grid).map_err(usage)?))
}

fn cmd_lemmas(m_max: usize) -> Result<Outcome, CliError> {
    let l44 = asymptotics::check_lemma44(m_max).map_err(usage)?;
    let l45 = asymptotics::check_lemma45(m_max).map_err(usage)?;
    let var = asymptotics::check_variance_bounds(m_max).map_err(usage)?;
    let pass = l44.pass && l45.pass && var.pass;
    let mut rows = Vec::new();
    for r in &l44.rows {
        rows.push(vec!["even-ratio".into(), r.m.to_string(), r.r_below_limit.to_string()]);
        rows.push(vec!["even-quadratic".into(), r.m.to_string(), r.x_exceeds.to_string()]);
    }
    for r in &l45.rows {
        rows.push(vec!["odd-quadratic".into(), r.m.to_string(), r.y_positive.to_string()]);
        rows.push(vec!["odd-ratio".into(), r.m.to_string(), r.upper_bound_holds.to_string()]);
        rows.push(vec!["auxiliary".into(), r.m.to_string(), r.vry_bits.is_some().to_string()]);
    }
    for r in &var.rows {
        if let Some(b) = r.even_bound {
            rows.push(vec!["variance-even".into(), r.m.to_string(), b.to_string()]);
        }
        if let Some(b) = r.odd_bound {
            rows.push(vec!["variance-odd".into(), r.m.to_string(), b.to_string()]);
        }
    }
    let status = |b: bool| if b { "PASS" } else { "FAIL" };
    let table = format!(
        "r_2m < sqrt2 - 1 and m - (2m-1)r - (m-1)r^2 > 2 - sqrt2, 2 <= m <= {m_max}: {}\n\
         m + 1 - 2m r - m r^2 > 0 with certified induction step, 3 <= m <= {m_max}: {}\n\
         variance lower bounds, m <= {m_max}: {}\n",
        status(l44.pass),
        status(l45.pass),
        status(var.pass)
    );
    #[derive(Serialize)]
    struct Payload<'a> {
        pass: bool,
        even: &'a asymptotics::Lemma44Report,
        odd: &'a asymptotics::Lemma45Report,
        variance: &'a asymptotics::VarianceBoundReport,
    }
    let payload = Payload {
        pass,
        even: &l44,
        odd: &l45,
        variance: &var,
    };
    Ok(Outcome::new(&payload).csv(["check", "m", "holds"], rows).table(table).pass(pass))
}

fn cmd_conjecture(schedule: &str, n_max: usize) -> Result<Outcome, CliError> {
    let sched: Schedule = schedule.parse().map_err(usage)?;
    let probe = asymptotics::conjecture_probe(sched, n_max).map_err(usage)?;
    let dist = |x: Option<f64>| x.map_or_else(String::new, |v| format!("{v:.17e}"));
    let rows: Vec<Vec<String>> = probe
        .rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.d.to_string(),
                r.mu.numer().to_string(),
                r.mu.denom().to_string(),
                r.sigma2.numer().to_string(),
                r.sigma2.denom().to_string(),
                dist(r.clt_distance),
                dist(r.llt_distance),
            ]
        })
        .collect();
    let header = ["n", "d", "mu_num", "mu_den", "sigma2_num", "sigma2_den", "clt_distance", "llt_distance"];
    let approx = |x: &ExactRational| format!("{:.6}", x.to_f64().unwrap_or(f64::NAN));
    let short = |x: Option<f64>| x.map_or_else(|| "-".to_string(), |v| format!("{v:.6}"));
    let table_rows: Vec<Vec<String>> = probe
        .rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.d.to_string(),
                approx(&r.sigma2),
                short(r.clt_distance),
                short(r.llt_distance),
            ]
        })
        .collect();
    let table = format!(
        "schedule {}\n{}",
        probe.schedule,
        text_table(&["n", "d", "sigma2", "clt", "llt"], &table_rows)
    );
    let plot = probe.rows.iter().filter_map(|r| r.clt_distance.map(|c| (r.n, c))).collect();
    Ok(Outcome::new(&probe).csv(header, rows).table(table).plot(plot))
}

fn dispatch(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Compute { n, d, via } => cmd_compute(*n, *d, via.as_deref()),
        Command::Verify { ids, n_max } => cmd_verify(ids, *n_max),
        Command::Roots { n, d, width } => cmd_roots(*n, *d, *width),
        Command::Interlace { family, d, n, n_max } => cmd_interlace(family, *d, *n, *n_max),
        Command::LiuWang {
            recursion,
            n_max,
            negate_psi,
        } => cmd_liu_wang(recursion, *n_max, *negate_psi),
        Command::Stats { n_min, n_max } => cmd_stats(*n_min, *n_max),
        Command::Lemmas { m_max } => cmd_lemmas(*m_max),
        Command::Normality { ns, grid } => cmd_normality(ns, *grid),
        Command::Conjecture { schedule, n_max } => cmd_conjecture(schedule, *n_max),
    }
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        _ => Ok(flag),
    }
}

fn execute(cli: &Cli, echo: &str, out: &mut dyn Write) -> Result<bool, CliError> {
    let g = &cli.global;
    let plots = matches!(
        cli.command,
        Command::Stats { .. } | Command::Normality { .. } | Command::Conjecture { .. }
    );
    if g.plot_data.is_some() && !plots {
        return Err(usage("--plot-data applies to stats, normality and conjecture"));
    }
    let threads = thread_count(g.threads)?;
    if threads == Some(0) {
        return Err(usage("thread count must be positive"));
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| usage(e.to_string()))?;
    let outcome = pool.install(|| dispatch(&cli.command))?;

    let bytes = render(&outcome, echo, g.format, !g.no_meta).map_err(CliError::Io)?;
    match &g.out {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => out.write_all(&bytes).map_err(|e| CliError::Io(e.to_string()))?,
    }
    if let Some(path) = &g.plot_data {
        let points = outcome.plot.as_deref().unwrap_or(&[]);
        std::fs::write(path, plot_file(points)).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(outcome.pass)
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(&cli, cli.command.name(), out) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAIL,
        Err(e) => {
            let _ = writeln!(err, "gpoly {}: {}", cli.command.name(), e.message());
            e.code()
        }
    }
}
