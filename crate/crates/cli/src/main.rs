//! `pcf`: evaluate parabolic cylinder functions from the command line.

mod format;
mod grid;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pcf_core::fixtures::{paper_fixtures, parse_oracle, table_fixtures, ReferenceFixture};
use pcf_core::selftest::{self, SelftestReport};
use pcf_core::{dispatch, EvalResult, Function, PcfError, Regime};
use serde::Serialize;
use serde_json::value::RawValue;

use format::{like_printed, short, significant, HUMAN_DIGITS, JSON_DIGITS};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;

#[derive(Parser)]
#[command(
    name = "pcf",
    version,
    about = "Weber parabolic cylinder functions U(a,x), V(a,x), W(a,x)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function at a point (or at every point of a grid).
    Eval(PointArgs),
    /// Tabulate a function over an (a, x) grid, or print the reference tables.
    Table(TableArgs),
    /// Replay the reference tables and closed forms and report the errors.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    Auto,
    Series,
    Asymptotic,
    Closed,
}

impl RegimeArg {
    fn forced(self) -> Option<Regime> {
        match self {
            RegimeArg::Auto => None,
            RegimeArg::Series => Some(Regime::ModerateSeries),
            RegimeArg::Asymptotic => Some(Regime::LargeArgAsymptotic),
            RegimeArg::Closed => Some(Regime::ClosedForm),
        }
    }
}

#[derive(Args)]
struct PointArgs {
    /// U, V or W.
    #[arg(long = "func", value_parser = parse_function)]
    function: Function,
    /// Parameter: a number, start:step:stop, or a comma list.
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    /// Argument: a number, start:step:stop, or a comma list.
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CommonArgs {
    /// Report the x-derivative as the primary quantity.
    #[arg(long)]
    deriv: bool,
    #[arg(long, value_enum, default_value = "auto")]
    regime: RegimeArg,
    /// JSON output with 17 significant digits.
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long = "func", value_parser = parse_function, required_unless_present = "paper_tables")]
    function: Option<Function>,
    #[arg(
        long,
        allow_hyphen_values = true,
        required_unless_present = "paper_tables"
    )]
    a: Option<String>,
    #[arg(
        long,
        allow_hyphen_values = true,
        required_unless_present = "paper_tables"
    )]
    x: Option<String>,
    /// Emit the printed reference grids with the computed values alongside.
    #[arg(long, conflicts_with_all = ["function", "a", "x"])]
    paper_tables: bool,
    /// Restrict --paper-tables to one table.
    #[arg(long, requires = "paper_tables", value_parser = clap::value_parser!(u8).range(4..=9))]
    table: Option<u8>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct SelftestArgs {
    /// JSON array of high-precision reference values to check as well.
    #[arg(long)]
    oracle_file: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

fn parse_function(s: &str) -> Result<Function, String> {
    s.parse().map_err(|e: PcfError| e.to_string())
}

enum Failure {
    Usage(String),
    Eval(PcfError),
    Io(io::Error),
}

impl From<PcfError> for Failure {
    fn from(e: PcfError) -> Self {
        Failure::Eval(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Eval(args) => eval_command(&args, &mut out),
        Command::Table(args) => table_command(&args, &mut out),
        Command::Selftest(args) => selftest_command(&args, &mut out),
    };
    let flushed = out.flush();
    match result.and_then(|code| flushed.map(|_| code).map_err(Failure::Io)) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Eval(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn axis(name: &str, s: &str) -> Result<Vec<f64>, Failure> {
    grid::parse_axis(s).map_err(|e| Failure::Usage(format!("--{name}: {e}")))
}

fn json_number(v: f64) -> Box<RawValue> {
    RawValue::from_string(significant(v, JSON_DIGITS)).expect("formatted number is valid JSON")
}

#[derive(Serialize)]
struct PointJson {
    function: Function,
    a: f64,
    x: f64,
    value: Box<RawValue>,
    derivative: Box<RawValue>,
    accuracy_estimate: Box<RawValue>,
    derivative_accuracy: Box<RawValue>,
    regime: Regime,
    method: pcf_core::Method,
}

impl PointJson {
    fn new(f: Function, a: f64, x: f64, r: &EvalResult) -> Self {
        Self {
            function: f,
            a,
            x: x + 0.0,
            value: json_number(r.value),
            derivative: json_number(r.derivative),
            accuracy_estimate: json_number(r.accuracy_estimate),
            derivative_accuracy: json_number(r.derivative_accuracy),
            regime: r.regime,
            method: r.method,
        }
    }
}

fn evaluate_grid(
    f: Function,
    a_axis: &[f64],
    x_axis: &[f64],
    forced: Option<Regime>,
) -> Result<Vec<(f64, f64, EvalResult)>, Failure> {
    let mut rows = Vec::with_capacity(a_axis.len() * x_axis.len());
    for &a in a_axis {
        for &x in x_axis {
            let r = dispatch(f, a, x, forced).map_err(|e| annotate(e, f, a, x))?;
            rows.push((a, x, r));
        }
    }
    Ok(rows)
}

fn annotate(e: PcfError, f: Function, a: f64, x: f64) -> Failure {
    let at = format!("{f}({a}, {x})");
    Failure::Eval(match e {
        PcfError::Domain(m) => PcfError::Domain(format!("{at}: {m}")),
        PcfError::Range(m) => PcfError::Range(format!("{at}: {m}")),
        PcfError::Regime(m) => PcfError::Regime(format!("{at}: {m}")),
        other => other,
    })
}

fn primary(r: &EvalResult, deriv: bool) -> (f64, f64) {
    if deriv {
        (r.derivative, r.derivative_accuracy)
    } else {
        (r.value, r.accuracy_estimate)
    }
}

fn write_csv(
    out: &mut impl Write,
    f: Function,
    rows: &[(f64, f64, EvalResult)],
    deriv: bool,
) -> io::Result<()> {
    let name = if deriv { "derivative" } else { "value" };
    writeln!(out, "function,a,x,{name},accuracy_estimate,regime")?;
    for (a, x, r) in rows {
        let (v, err) = primary(r, deriv);
        writeln!(
            out,
            "{f},{a},{x},{},{},{}",
            significant(v, HUMAN_DIGITS),
            short(err),
            r.regime
        )?;
    }
    Ok(())
}

fn write_json(out: &mut impl Write, value: &impl Serialize) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| Failure::Io(e.into()))?;
    writeln!(out)?;
    Ok(())
}

fn eval_command(args: &PointArgs, out: &mut impl Write) -> Result<u8, Failure> {
    let a_axis = axis("a", &args.a)?;
    let x_axis = axis("x", &args.x)?;
    let f = args.function;
    let rows = evaluate_grid(f, &a_axis, &x_axis, args.common.regime.forced())?;
    if args.common.json {
        let items: Vec<PointJson> = rows
            .iter()
            .map(|(a, x, r)| PointJson::new(f, *a, *x, r))
            .collect();
        match items.as_slice() {
            [one] => write_json(out, one)?,
            _ => write_json(out, &items)?,
        }
    } else if args.common.csv {
        write_csv(out, f, &rows, args.common.deriv)?;
    } else {
        for (a, x, r) in &rows {
            let (head, other) = if args.common.deriv {
                ("'", "")
            } else {
                ("", "'")
            };
            let (v, err) = primary(r, args.common.deriv);
            let (w, werr) = primary(r, !args.common.deriv);
            writeln!(
                out,
                "{f}{head}({a}, {x}) = {}",
                significant(v, HUMAN_DIGITS)
            )?;
            writeln!(
                out,
                "  {f}{other}({a}, {x}) = {}",
                significant(w, HUMAN_DIGITS)
            )?;
            writeln!(out, "  accuracy estimate: {} / {}", short(err), short(werr))?;
            writeln!(out, "  regime: {} ({})", r.regime, method_name(r.method))?;
        }
    }
    Ok(0)
}

fn method_name(m: pcf_core::Method) -> String {
    serde_json::to_value(m)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

#[derive(Serialize)]
struct TableCellJson {
    table: u8,
    function: Function,
    a: f64,
    x: f64,
    printed: String,
    computed: Box<RawValue>,
    rel_error: f64,
    within_tolerance: bool,
}

fn table_command(args: &TableArgs, out: &mut impl Write) -> Result<u8, Failure> {
    if args.paper_tables {
        let cells = match args.table {
            Some(n) => table_fixtures(n).unwrap_or_default(),
            None => paper_fixtures(),
        };
        return paper_tables(&cells, args.common.json, out);
    }
    let (Some(f), Some(a), Some(x)) = (args.function, &args.a, &args.x) else {
        return Err(Failure::Usage("--func, --a and --x are required".into()));
    };
    let rows = evaluate_grid(
        f,
        &axis("a", a)?,
        &axis("x", x)?,
        args.common.regime.forced(),
    )?;
    if args.common.json {
        let items: Vec<PointJson> = rows
            .iter()
            .map(|(a, x, r)| PointJson::new(f, *a, *x, r))
            .collect();
        write_json(out, &items)?;
    } else {
        write_csv(out, f, &rows, args.common.deriv)?;
    }
    Ok(0)
}

fn paper_tables(
    cells: &[ReferenceFixture],
    json: bool,
    out: &mut impl Write,
) -> Result<u8, Failure> {
    let mut computed = Vec::with_capacity(cells.len());
    for c in cells {
        let r =
            dispatch(c.function, c.a, c.x, None).map_err(|e| annotate(e, c.function, c.a, c.x))?;
        computed.push(r.value);
    }
    if json {
        let items: Vec<TableCellJson> = cells
            .iter()
            .zip(&computed)
            .map(|(c, &v)| TableCellJson {
                table: c.table,
                function: c.function,
                a: c.a,
                x: c.x + 0.0,
                printed: c.text.clone(),
                computed: json_number(v),
                rel_error: rel_error(v, c.expected),
                within_tolerance: c.accepts(v),
            })
            .collect();
        write_json(out, &items)?;
    } else {
        writeln!(
            out,
            "table,function,a,x,printed,computed,rel_error,within_tolerance"
        )?;
        for (c, &v) in cells.iter().zip(&computed) {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                c.table,
                c.function,
                c.a,
                c.x + 0.0,
                c.text,
                like_printed(v, &c.text),
                short(rel_error(v, c.expected)),
                c.accepts(v)
            )?;
        }
    }
    Ok(0)
}

fn rel_error(v: f64, expected: f64) -> f64 {
    let d = (v - expected).abs();
    if expected == 0.0 {
        d
    } else {
        d / expected.abs()
    }
}

fn selftest_command(args: &SelftestArgs, out: &mut impl Write) -> Result<u8, Failure> {
    let oracle = match &args.oracle_file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            let records = parse_oracle(&text)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Some(records)
        }
        None => None,
    };
    let report = selftest::run(oracle.as_deref());
    if args.json {
        write_json(out, &report)?;
    } else {
        write_report(out, &report)?;
    }
    Ok(if report.passed() {
        0
    } else {
        EXIT_CHECK_FAILED
    })
}

fn write_report(out: &mut impl Write, report: &SelftestReport) -> io::Result<()> {
    let width = report
        .suites
        .iter()
        .map(|s| s.name.len())
        .max()
        .unwrap_or(0);
    for s in &report.suites {
        writeln!(
            out,
            "{:<width$}  {:>4}/{:<4} passed  max rel error {}  {}",
            s.name,
            s.passed,
            s.checks,
            short(s.max_rel_error),
            if s.ok() { "ok" } else { "FAIL" }
        )?;
    }
    for s in report.suites.iter().filter(|s| !s.ok()) {
        writeln!(out)?;
        writeln!(out, "{} failures:", s.name)?;
        for c in &s.failures {
            writeln!(
                out,
                "  {:<20} computed {}  expected {}  rel error {}",
                c.label,
                significant(c.computed, HUMAN_DIGITS),
                significant(c.expected, HUMAN_DIGITS),
                short(c.rel_error)
            )?;
        }
    }
    writeln!(out)?;
    writeln!(
        out,
        "{} checks, {} failed, {:.3} s",
        report.checks(),
        report.failures(),
        report.elapsed_seconds
    )
}
