//! Command-line frontend: file ingestion, order checks, lattice operations,
//! metrics, ψ builders, flow operations and plot-ready table emission.
//!
//! Exit codes: 0 on success (a failed order check is a result, not an error),
//! 1 on domain errors (a construction or operation legitimately failed on
//! valid inputs), 2 on parse and contract errors (bad flags, malformed files,
//! violated constructor contracts).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::flows::{ess_extremum_flow, leq_flow, AtomicMeasureSpace, Flow};
use crate::integrability::{
    build_psi_dlvp, build_psi_strict, build_psi_tight, MeasureFamily, PsiFunction, TailOracle,
};
use crate::measure::{DiscreteDistribution, PiecewiseLinearFunction, StepFunction};
use crate::metrics::{kolmogorov, levy_with_tolerance, wasserstein1};
use crate::order_first::{inf_st, leq_st, sup_st, OrderWitness};
use crate::order_second::{extremum_family, leq_order};
use crate::{Direction, Order};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OrderArg {
    St,
    Icv,
    Icx,
    Cx,
}

impl From<OrderArg> for Order {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::St => Order::St,
            OrderArg::Icv => Order::Icv,
            OrderArg::Icx => Order::Icx,
            OrderArg::Cx => Order::Cx,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PsiMode {
    Tight,
    Strict,
    Dlvp,
}

#[derive(Debug, Parser)]
#[command(name = "sdlat", about = "Stochastic dominance lattice toolkit", disable_help_subcommand = true)]
struct Cli {
    /// Stochastic order for checks and lattice operations.
    #[arg(long, global = true, value_enum)]
    order: Option<OrderArg>,
    /// Numeric tolerance where a subcommand consults one (Lévy bisection).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write the primary output (JSON result, or the ψ table for `psi`) to a
    /// file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check whether the first distribution precedes the second.
    Check { a: PathBuf, b: PathBuf },
    /// Least upper bound of two distributions.
    Join { a: PathBuf, b: PathBuf },
    /// Greatest lower bound of two distributions.
    Meet { a: PathBuf, b: PathBuf },
    /// Supremum of a family of distributions.
    Sup {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Infimum of a family of distributions.
    Inf {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Wasserstein-1 distance.
    W1 { a: PathBuf, b: PathBuf },
    /// Lévy distance.
    Levy { a: PathBuf, b: PathBuf },
    /// Kolmogorov distance.
    Kolmogorov { a: PathBuf, b: PathBuf },
    /// Build a ψ function from a tabulated tail oracle.
    Psi {
        #[arg(long, value_enum)]
        mode: PsiMode,
        /// Exponent for the dlvp mode, strictly between 0 and 1.
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        /// Number of threshold levels.
        #[arg(long, default_value_t = 8)]
        levels: usize,
        /// Horizon M for the strict mode.
        #[arg(long, default_value_t = 1.0)]
        m: f64,
        /// CSV with columns s,T[,U].
        #[arg(long)]
        tail: PathBuf,
    },
    /// Check whether the first flow precedes the second at almost every atom.
    FlowCheck { a: PathBuf, b: PathBuf },
    /// Atomwise supremum of a family of flows.
    FlowSup {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

/// Run the command line given a full argv (program name first). Returns the
/// process exit code; results are printed as JSON on standard output.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders --help/--version through the same path
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::EmptyInput(_)
        | Error::InvalidDistribution(_)
        | Error::InvalidFunction(_)
        | Error::InvalidParameter(_)
        | Error::Json(_)
        | Error::Csv(_) => 2,
        Error::MismatchedSpaces
        | Error::NotDirected
        | Error::OracleViolation(_)
        | Error::MissingMomentTail
        | Error::NotTight { .. }
        | Error::NotUniformlyIntegrable
        | Error::Unbounded
        | Error::Io(_) => 1,
    }
}

fn execute(cli: Cli) -> Result<()> {
    let order = cli.order.map(Order::from);
    let out = cli.out.as_deref();
    match cli.command {
        Command::Check { a, b } => {
            let (a, b) = (read_distribution(&a)?, read_distribution(&b)?);
            let w = match required_order(order)? {
                Order::St => leq_st(&a, &b),
                o => leq_order(&a, &b, o),
            };
            emit(out, &witness_json(&w))
        }
        Command::Join { a, b } => {
            let (a, b) = (read_distribution(&a)?, read_distribution(&b)?);
            let joined = pairwise(&a, &b, required_order(order)?, Direction::Sup)?;
            emit(out, &distribution_json(&joined))
        }
        Command::Meet { a, b } => {
            let (a, b) = (read_distribution(&a)?, read_distribution(&b)?);
            let met = pairwise(&a, &b, required_order(order)?, Direction::Inf)?;
            emit(out, &distribution_json(&met))
        }
        Command::Sup { files } => {
            let family = read_family(&files)?;
            let sup = family_extremum(&family, required_order(order)?, Direction::Sup)?;
            emit(out, &distribution_json(&sup))
        }
        Command::Inf { files } => {
            let family = read_family(&files)?;
            let inf = family_extremum(&family, required_order(order)?, Direction::Inf)?;
            emit(out, &distribution_json(&inf))
        }
        Command::W1 { a, b } => {
            let (a, b) = (read_distribution(&a)?, read_distribution(&b)?);
            emit(out, &json!({ "w1": wasserstein1(&a, &b) }))
        }
        Command::Levy { a, b } => {
            let (a, b) = (read_distribution(&a)?, read_distribution(&b)?);
            let tol = cli.tol.unwrap_or(1e-10);
            emit(out, &json!({ "levy": levy_with_tolerance(&a, &b, tol) }))
        }
        Command::Kolmogorov { a, b } => {
            let (a, b) = (read_distribution(&a)?, read_distribution(&b)?);
            emit(out, &json!({ "kolmogorov": kolmogorov(&a, &b) }))
        }
        Command::Psi {
            mode,
            alpha,
            levels,
            m,
            tail,
        } => {
            let family = MeasureFamily::Oracle(read_tail_oracle(&tail)?);
            let (summary, function) = match mode {
                PsiMode::Tight => {
                    let tp = build_psi_tight(&family, levels, true)?;
                    let summary = json!({
                        "mode": "tight",
                        "levels": levels,
                        "thresholds": tp.thresholds,
                        "certificate": tp.certificate,
                    });
                    (summary, tp.psi)
                }
                PsiMode::Strict => {
                    let sp = build_psi_strict(&family, m, levels)?;
                    let summary = json!({
                        "mode": "strict",
                        "m": m,
                        "levels": levels,
                        "coefficients": sp.coefficients,
                        "certificate": sp.certificate,
                    });
                    (summary, PsiFunction::Continuous(sp.psi))
                }
                PsiMode::Dlvp => {
                    let dp = build_psi_dlvp(&family, alpha)?;
                    let summary = json!({
                        "mode": "dlvp",
                        "alpha": alpha,
                        "eta_certificate": dp.eta_moment_bound,
                        "psi_integral_bound": dp.psi_integral_bound,
                    });
                    (summary, PsiFunction::Continuous(dp.psi))
                }
            };
            if let Some(path) = out {
                match &function {
                    PsiFunction::Continuous(f) => export_piecewise_linear(f, path, 3)?,
                    PsiFunction::Step(f) => export_step_function(f, path, 3)?,
                }
            }
            println!("{}", serde_json::to_string(&summary)?);
            Ok(())
        }
        Command::FlowCheck { a, b } => {
            let (a, b) = (read_flow(&a)?, read_flow(&b)?);
            let w = leq_flow(&a, &b, required_order(order)?)?;
            let mut value = json!({ "holds": w.holds });
            if let Some(atom) = w.witness_atom {
                value["witness_atom"] = json!(atom);
            }
            emit(out, &value)
        }
        Command::FlowSup { files } => {
            let flows: Vec<Flow> = files.iter().map(|p| read_flow(p)).collect::<Result<_>>()?;
            let sup = ess_extremum_flow(&flows, required_order(order)?, Direction::Sup)?;
            emit(out, &flow_json(&sup))
        }
    }
}

fn required_order(order: Option<Order>) -> Result<Order> {
    order.ok_or_else(|| Error::InvalidParameter("--order is required for this subcommand".into()))
}

fn pairwise(
    a: &DiscreteDistribution,
    b: &DiscreteDistribution,
    order: Order,
    direction: Direction,
) -> Result<DiscreteDistribution> {
    match (order, direction) {
        (Order::St, Direction::Sup) => Ok(crate::order_first::join_st(a, b)),
        (Order::St, Direction::Inf) => Ok(crate::order_first::meet_st(a, b)),
        (Order::Cx, _) => Err(Error::InvalidParameter(
            "joins and meets are defined for st, icv and icx".into(),
        )),
        (o, d) => extremum_family(&[a.clone(), b.clone()], o, d),
    }
}

fn family_extremum(
    family: &[DiscreteDistribution],
    order: Order,
    direction: Direction,
) -> Result<DiscreteDistribution> {
    match (order, direction) {
        (Order::St, Direction::Sup) => sup_st(family),
        (Order::St, Direction::Inf) => inf_st(family),
        (Order::Cx, _) => Err(Error::InvalidParameter(
            "family extrema are defined for st, icv and icx".into(),
        )),
        (o, d) => extremum_family(family, o, d),
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct PointRecord {
    x: f64,
    p: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct DistributionFile {
    points: Vec<PointRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
struct AtomRecord {
    label: String,
    pi: f64,
    points: Vec<PointRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
struct FlowFile {
    atoms: Vec<AtomRecord>,
}

/// Unreadable inputs count as contract errors (exit 2), like malformed files.
fn read_input(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))
}

/// Parse a distribution document through the make_discrete contract.
pub fn read_distribution(path: &Path) -> Result<DiscreteDistribution> {
    let text = read_input(path)?;
    let file: DistributionFile = serde_json::from_str(&text)?;
    DiscreteDistribution::from_pairs(file.points.iter().map(|p| (p.x, p.p)))
}

/// Parse a flow document (atom labels, weights and per-atom distributions).
pub fn read_flow(path: &Path) -> Result<Flow> {
    let text = read_input(path)?;
    let file: FlowFile = serde_json::from_str(&text)?;
    let labels = file.atoms.iter().map(|a| a.label.clone()).collect();
    let weights = file.atoms.iter().map(|a| a.pi).collect();
    let space = AtomicMeasureSpace::new(labels, weights)?;
    let assignment = file
        .atoms
        .iter()
        .map(|a| DiscreteDistribution::from_pairs(a.points.iter().map(|p| (p.x, p.p))))
        .collect::<Result<_>>()?;
    Flow::new(space, assignment)
}

fn read_family(files: &[PathBuf]) -> Result<Vec<DiscreteDistribution>> {
    files.iter().map(|p| read_distribution(p)).collect()
}

/// Load a tail oracle from a CSV table with header `s,T` or `s,T,U`.
pub fn read_tail_oracle(path: &Path) -> Result<TailOracle> {
    let raw = read_input(path)?;
    let mut reader = csv::Reader::from_reader(raw.as_bytes());
    let headers = reader.headers()?.clone();
    let has_moment = match headers.len() {
        2 => false,
        3 => true,
        _ => {
            return Err(Error::InvalidParameter(
                "tail table needs columns s,T with optional U".into(),
            ))
        }
    };
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let parse = |i: usize| -> Result<f64> {
            record
                .get(i)
                .and_then(|v| v.trim().parse::<f64>().ok())
                .ok_or_else(|| {
                    Error::InvalidParameter(format!("bad numeric field in tail table: {record:?}"))
                })
        };
        let s = parse(0)?;
        let t = parse(1)?;
        let u = if has_moment { Some(parse(2)?) } else { None };
        rows.push((s, t, u));
    }
    TailOracle::from_table(&rows)
}

fn witness_json(w: &OrderWitness) -> serde_json::Value {
    let mut value = json!({ "holds": w.holds });
    if let Some(s) = w.witness {
        value["witness"] = json!(s);
    }
    value
}

fn distribution_json(d: &DiscreteDistribution) -> serde_json::Value {
    let points: Vec<_> = d.points().map(|(x, p)| json!({ "x": x, "p": p })).collect();
    json!({ "points": points })
}

fn flow_json(f: &Flow) -> serde_json::Value {
    let atoms: Vec<_> = f
        .space()
        .labels()
        .iter()
        .zip(f.space().weights())
        .zip(f.assignment())
        .map(|((label, pi), d)| {
            json!({
                "label": label,
                "pi": pi,
                "points": distribution_json(d)["points"],
            })
        })
        .collect();
    json!({ "atoms": atoms })
}

fn emit(out: Option<&Path>, value: &serde_json::Value) -> Result<()> {
    let text = serde_json::to_string(value)?;
    match out {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

/// Write a plot-ready `s,value` table: one row per breakpoint plus `pad`
/// points on each unbounded ray, rendered with 17 significant digits.
pub fn export_piecewise_linear(
    f: &PiecewiseLinearFunction,
    target: &Path,
    pad: usize,
) -> Result<()> {
    let xs = f.breakpoints();
    let rows = padded_rows(xs, pad, |s| f.value(s));
    write_table(target, &rows)
}

/// Step-function variant of [`export_piecewise_linear`]; rows carry the
/// right-continuous values.
pub fn export_step_function(f: &StepFunction, target: &Path, pad: usize) -> Result<()> {
    let rows = padded_rows(f.jumps(), pad, |s| f.value(s));
    write_table(target, &rows)
}

fn padded_rows(xs: &[f64], pad: usize, value: impl Fn(f64) -> f64) -> Vec<(f64, f64)> {
    let lo = xs[0];
    let hi = xs[xs.len() - 1];
    let step = ((hi - lo) / 4.0).max(1.0);
    let mut rows = Vec::with_capacity(xs.len() + 2 * pad);
    for k in (1..=pad).rev() {
        let s = lo - k as f64 * step;
        rows.push((s, value(s)));
    }
    rows.extend(xs.iter().map(|&s| (s, value(s))));
    for k in 1..=pad {
        let s = hi + k as f64 * step;
        rows.push((s, value(s)));
    }
    rows
}

fn write_table(target: &Path, rows: &[(f64, f64)]) -> Result<()> {
    let mut out = std::fs::File::create(target)?;
    writeln!(out, "s,value")?;
    for &(s, v) in rows {
        writeln!(out, "{s:.16e},{v:.16e}")?;
    }
    Ok(())
}
