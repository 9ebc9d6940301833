use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fskit::decide::{rank, Strategy};
use fskit::expr::{MapExpr, OpsExpr, OpsValue};
use fskit::extension::{compare_with_oracle, ext_apply};
use fskit::io::{self, SetFamily};
use fskit::laws::{self, Law, SuiteOptions};
use fskit::normed::{
    fixpoint_solve, Affine, ContractionSpec, FSNorm, FSVectorPoint, FixpointResult, FixpointStatus, PNorm, SoftNorm,
    VectorPoint,
};
use fskit::real::{AlphaGrid, ArithOp, FuzzyReal};
use fskit::report::{Format, InputDigest, RunReport, Table};
use fskit::soft::{FuzzySoftPoint, FuzzySoftSet, ParameterSet};
use fskit::topology::{fst_check, ft_check, lift_alpha_cuts, FsTopology};
use fskit::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "fskit", version, about = "Fuzzy soft sets, reals, norms and fixed points")]
struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, env = "FSKIT_SEED", default_value_t = 0)]
    seed: u64,
    /// Number of alpha levels (levels are j/m, j = 1..m).
    #[arg(long, global = true, default_value_t = 101)]
    grid: usize,
    /// Stopping tolerance for iterative commands.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, global = true, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a set expression over loaded documents.
    Ops(OpsArgs),
    /// Run a seeded property suite.
    Check(CheckArgs),
    /// Picard iteration of a contraction on R^d.
    Fixpoint(FixpointArgs),
    #[command(subcommand)]
    Topology(TopologyCommand),
    /// Rank objects by aggregated grades.
    Decide(DecideArgs),
    /// Fuzzy real arithmetic on the alpha grid.
    Real(RealArgs),
}

#[derive(Debug, Args)]
struct OpsArgs {
    /// `NAME=PATH`, or a path named after its file stem.
    #[arg(long = "set", required = true)]
    sets: Vec<String>,
    /// Write a set result here as a canonical document.
    #[arg(long)]
    out: Option<PathBuf>,
    expr: String,
}

#[derive(Debug, Args)]
struct CheckArgs {
    law: String,
    #[arg(long, default_value_t = 100)]
    count: usize,
    /// Perturb one side of every check; the run must then fail.
    #[arg(long)]
    inject_fault: bool,
}

#[derive(Debug, Args)]
struct FixpointArgs {
    /// Map expression, e.g. `x/2+1` or `0.2*x1+0.1*x2+1; 0.3*x2+1`.
    #[arg(long, conflicts_with_all = ["matrix", "offset"], allow_hyphen_values = true)]
    map: Option<String>,
    /// Affine map matrix, rows separated by `;`.
    #[arg(long, requires = "offset", allow_hyphen_values = true)]
    matrix: Option<String>,
    #[arg(long, requires = "matrix", allow_hyphen_values = true)]
    offset: Option<String>,
    /// Contraction constant; defaults to the operator norm for affine maps.
    #[arg(long)]
    k: Option<f64>,
    /// Starting support, comma separated. Defaults to the origin.
    #[arg(long, allow_hyphen_values = true)]
    start: Option<String>,
    /// Grades of the starting point, one per parameter.
    #[arg(long, default_value = "1")]
    grades: String,
    #[arg(long, default_value = "inf")]
    norm: PNorm,
    #[arg(long, default_value_t = 1000)]
    max_iter: usize,
}

#[derive(Debug, Subcommand)]
enum TopologyCommand {
    /// Check the topology axioms on a family of sets.
    Check { family: PathBuf },
    /// Check that every parameter slice is a fuzzy topology.
    Slice {
        family: PathBuf,
        #[arg(long)]
        param: Option<String>,
    },
    /// Lift the alpha cuts of one row of a set to a family over re-indexed levels.
    Lift {
        set: PathBuf,
        #[arg(long)]
        param: String,
        #[arg(long, default_value_t = 4)]
        levels: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Separation axioms over pairs of points.
    Separation {
        family: PathBuf,
        /// `OBJECT` or `OBJECT:g1,g2,..`; defaults to every crisp point.
        #[arg(long = "point")]
        points: Vec<String>,
        /// Report a violation unless this axiom holds.
        #[arg(long)]
        require: Option<Axiom>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Axiom {
    T0,
    T1,
    T2,
}

#[derive(Debug, Args)]
struct DecideArgs {
    set: PathBuf,
    #[arg(long, default_value = "max-min")]
    strategy: String,
    /// Comma-separated weights for `weighted-sum`, one per parameter.
    #[arg(long)]
    weights: Option<String>,
}

#[derive(Debug, Args)]
struct RealArgs {
    #[arg(value_enum)]
    op: RealOp,
    /// `a,b,c` for a triangle or a single number for a crisp value.
    #[arg(allow_hyphen_values = true)]
    a: String,
    #[arg(allow_hyphen_values = true)]
    b: Option<String>,
    /// Compare with the sup-min oracle sampled at this step.
    #[arg(long)]
    oracle: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RealOp {
    Add,
    Sub,
    Mul,
    Div,
    Abs,
}

fn numbers(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| {
            s.trim().parse::<f64>().map_err(|_| Error::Expression {
                offset: 0,
                message: format!("`{s}` is not a number"),
            })
        })
        .collect()
}

// shortest round-trip digits, in exponent form outside [1e-5, 1e16)
fn cell(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || !a.is_finite() || (1e-5..1e16).contains(&a) {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

fn vector_cell(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|&x| cell(x)).collect();
    if parts.len() == 1 {
        parts[0].clone()
    } else {
        format!("({})", parts.join(", "))
    }
}

struct Ctx {
    seed: u64,
    grid: AlphaGrid<f64>,
    tol: f64,
    digest: InputDigest,
}

impl Ctx {
    fn read(&mut self, role: &str, path: &Path) -> Result<String> {
        let text = io::read_text(path)?;
        self.digest.add(role, text.as_bytes());
        Ok(text)
    }

    fn load_set(&mut self, role: &str, path: &Path) -> Result<FuzzySoftSet<f64>> {
        let text = self.read(role, path)?;
        if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
            io::parse_fss_csv(&text)
        } else {
            io::parse_fss(&text)
        }
    }

    fn load_family(&mut self, path: &Path) -> Result<SetFamily<f64>> {
        let text = self.read("family", path)?;
        io::parse_family(&text)
    }
}

fn set_table(f: &FuzzySoftSet<f64>) -> Table {
    let mut t = Table::new(std::iter::once("parameter".to_string()).chain(f.universe().labels().iter().cloned()));
    for (e, row) in f.rows().enumerate() {
        let mut r = vec![f.params().label(e).to_string()];
        r.extend(row.iter().map(|g| g.to_string()));
        t.push(r);
    }
    t
}

fn ops(ctx: &mut Ctx, args: &OpsArgs, report: &mut RunReport) -> Result<()> {
    let mut env = BTreeMap::new();
    let mut first = None;
    for spec in &args.sets {
        let (name, path) = match spec.split_once('=') {
            Some((n, p)) => (n.to_string(), PathBuf::from(p)),
            None => {
                let p = PathBuf::from(spec);
                let stem = p
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                (stem, p)
            }
        };
        let set = ctx.load_set(&name, &path)?;
        first.get_or_insert_with(|| set.clone());
        env.insert(name, set);
    }
    let reference = first.expect("clap requires one set");
    report.summary.push("expr", &args.expr);
    match OpsExpr::parse(&args.expr)?.eval(&env, &reference)? {
        OpsValue::Bool(b) => report.summary.push("result", b),
        OpsValue::Set(f) => {
            report.summary.push("result", "set");
            if let Some(out) = &args.out {
                io::save_fss(&f, out)?;
                report.summary.push("written", out.display());
            }
            report.table = Some(set_table(&f));
        }
    }
    Ok(())
}

fn check(ctx: &Ctx, args: &CheckArgs, report: &mut RunReport) -> Result<()> {
    let law: Law = args.law.parse()?;
    let opts = SuiteOptions {
        seed: ctx.seed,
        count: args.count,
        grid: ctx.grid.clone(),
        fault: args.inject_fault,
    };
    let r = laws::run(law, &opts)?;
    report.summary.push("law", law);
    report.summary.push("fault_injected", args.inject_fault);
    report.summary.push("cases", r.cases);
    report.summary.push("checks", r.checks);
    report.summary.push("violations", r.violations);
    report.summary.push("inapplicable", r.inapplicable);
    let mut t = Table::new(["item", "checks", "violations", "inapplicable"]);
    for (item, c) in &r.items {
        t.push(vec![
            item.clone(),
            c.checks.to_string(),
            c.violations.to_string(),
            c.inapplicable.to_string(),
        ]);
    }
    report.table = Some(t);
    if let Some(w) = r.first_witness {
        report.violation(w);
    }
    Ok(())
}

fn fixpoint(ctx: &Ctx, args: &FixpointArgs, report: &mut RunReport) -> Result<()> {
    let spec = match (&args.map, &args.matrix, &args.offset) {
        (Some(m), _, _) => {
            let k = args
                .k
                .ok_or_else(|| Error::InvalidContraction("--k is required with --map".into()))?;
            ContractionSpec::new(Arc::new(MapExpr::parse(m)?), k)?
        }
        (None, Some(a), Some(b)) => {
            let a = a.split(';').map(numbers).collect::<Result<Vec<_>>>()?;
            let affine = Affine::new(a, numbers(b)?)?;
            let k = args.k.unwrap_or_else(|| affine.operator_norm(args.norm));
            ContractionSpec::affine(affine, k, args.norm)?
        }
        _ => return Err(Error::InvalidContraction("give --map or --matrix with --offset".into())),
    };
    let k = spec.k();
    let d = spec.map().dim();
    let lambda = numbers(&args.grades)?;
    let params = ParameterSet::new(laws::labels("e", lambda.len()))?;
    let start = match &args.start {
        Some(s) => VectorPoint::new(numbers(s)?)?,
        None => VectorPoint::zero(d),
    };
    if start.dim() != d {
        return Err(Error::DimensionMismatch(format!(
            "start has {} coordinates, map has {d}",
            start.dim()
        )));
    }
    let start = FSVectorPoint::new(start, params.clone(), &lambda)?;
    let norm = FSNorm::uniform(params, ctx.grid.clone(), args.norm);
    let result = fixpoint_solve(&norm, &spec, &start, ctx.tol, args.max_iter)?;
    fixpoint_report(&norm, &result, k, report);
    Ok(())
}

fn fixpoint_report(norm: &FSNorm<f64>, r: &FixpointResult<f64>, k: f64, report: &mut RunReport) {
    let last = r.fixed_point.vector();
    report.summary.push("k", k);
    report.summary.push("norm", norm.p().name());
    report.summary.push("outcome", r.status);
    report.summary.push("iterations", r.iterations());
    report.summary.push("fixed_point", vector_cell(last.coords()));
    report.summary.push(
        "grades",
        vector_cell(
            r.fixed_point
                .lambda()
                .iter()
                .map(|g| g.value())
                .collect::<Vec<_>>()
                .as_slice(),
        ),
    );
    let mut t = Table::new(["n", "x_n", "delta", "error", "apriori", "aposteriori"]);
    let mut bad = None;
    for (step, x) in r.steps.iter().zip(r.iterates.points().iter().skip(1)) {
        // distance to the last iterate, which both bounds dominate
        let err = norm.magnitude(&x.vector().sub(last).expect("same dimension"));
        let slack = 64.0 * f64::EPSILON * (norm.magnitude(x.vector()) + norm.magnitude(last));
        if bad.is_none() && (err > step.apriori + slack || err > step.aposteriori + slack) {
            bad = Some(format!("step {}: error {err} exceeds a bound", step.n));
        }
        t.push(vec![
            step.n.to_string(),
            vector_cell(x.coords()),
            cell(step.delta),
            cell(err),
            cell(step.apriori),
            cell(step.aposteriori),
        ]);
    }
    report.table = Some(t);
    if let Some(w) = bad {
        report.violation(w);
    } else if r.status == FixpointStatus::MaxIterExceeded {
        report.violation(format!("no convergence within {} iterations", r.iterations()));
    }
}

fn topology(ctx: &mut Ctx, cmd: &TopologyCommand, report: &mut RunReport) -> Result<()> {
    match cmd {
        TopologyCommand::Check { family } => {
            let fam = ctx.load_family(family)?;
            let verdict = fst_check(&fam.params, &fam.universe, &fam.sets);
            report.summary.push("sets", fam.sets.len());
            report.summary.push("verdict", verdict);
            if !verdict.is_ok() {
                report.violation(verdict.to_string());
            }
        }
        TopologyCommand::Slice { family, param } => {
            let fam = ctx.load_family(family)?;
            let t = FsTopology::new(fam.params.clone(), fam.universe.clone(), fam.sets)?;
            let labels: Vec<String> = match param {
                Some(p) if !fam.params.contains(p) => return Err(Error::UnknownParameter(p.clone())),
                Some(p) => vec![p.clone()],
                None => fam.params.labels().to_vec(),
            };
            let mut table = Table::new(["parameter", "opens", "verdict"]);
            for label in labels {
                let e = fam.params.index_of(&label).expect("checked above");
                let rows: Vec<_> = t.opens().iter().map(|o| o.row_set(e)).collect();
                let verdict = ft_check(&fam.universe, &rows);
                if !verdict.is_ok() {
                    report.violation(format!("slice {label}: {verdict}"));
                }
                table.push(vec![label, rows.len().to_string(), verdict.to_string()]);
            }
            report.table = Some(table);
        }
        TopologyCommand::Lift {
            set,
            param,
            levels,
            out,
        } => {
            let f = ctx.load_set("set", set)?;
            let e = f
                .params()
                .index_of(param)
                .ok_or_else(|| Error::UnknownParameter(param.clone()))?;
            let lifted_params = ParameterSet::new(laws::labels("a", *levels))?.with_auto_reindex();
            let (sets, verdict) = lift_alpha_cuts(&f.row_set(e), &lifted_params)?;
            report.summary.push("levels", levels);
            report.summary.push("sets", sets.len());
            report.summary.push("verdict", verdict);
            if !verdict.is_ok() {
                report.violation(verdict.to_string());
            }
            let fam = SetFamily {
                params: lifted_params,
                universe: f.universe().clone(),
                sets,
            };
            if let Some(out) = out {
                io::write_text(out, &io::family_to_json(&fam))?;
                report.summary.push("written", out.display());
            }
        }
        TopologyCommand::Separation {
            family,
            points,
            require,
        } => {
            let fam = ctx.load_family(family)?;
            let t = FsTopology::new(fam.params.clone(), fam.universe.clone(), fam.sets)?;
            let pts = if points.is_empty() {
                (0..fam.universe.len())
                    .map(|x| FuzzySoftPoint::crisp(fam.params.clone(), fam.universe.clone(), x))
                    .collect()
            } else {
                points
                    .iter()
                    .map(|p| {
                        let (obj, grades) = match p.split_once(':') {
                            Some((o, g)) => (o, numbers(g)?),
                            None => (p.as_str(), vec![1.0; fam.params.len()]),
                        };
                        FuzzySoftPoint::new(fam.params.clone(), fam.universe.clone(), obj, &grades)
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            let mut pairs = Vec::new();
            for (i, x) in pts.iter().enumerate() {
                for y in &pts[i + 1..] {
                    if x.is_distinct(y) {
                        pairs.push((x.clone(), y.clone()));
                    }
                }
            }
            let sep = t.separation(&pairs)?;
            let name = |i: usize| {
                let (x, y) = &pairs[i];
                format!(
                    "({}, {})",
                    fam.universe.label(x.support()),
                    fam.universe.label(y.support())
                )
            };
            report.summary.push("pairs", pairs.len());
            let mut held = [true; 3];
            for (slot, (axiom, ce)) in [
                ("t0", sep.t0_counterexample),
                ("t1", sep.t1_counterexample),
                ("t2", sep.t2_counterexample),
            ]
            .into_iter()
            .enumerate()
            {
                held[slot] = ce.is_none();
                match ce {
                    None => report.summary.push(axiom, "holds"),
                    Some(i) => report
                        .summary
                        .push(axiom, format!("not {} at pair {}", axiom.to_uppercase(), name(i))),
                }
            }
            let mut table = Table::new(["pair", "t0", "t1", "t2"]);
            for p in &sep.pairs {
                let w = |o: Option<(usize, usize)>| o.map_or("-".to_string(), |(a, b)| format!("{a}/{b}"));
                table.push(vec![
                    name(p.index),
                    p.t0.map_or("-".to_string(), |(_, i)| i.to_string()),
                    w(p.t1),
                    w(p.t2),
                ]);
            }
            report.table = Some(table);
            if let Some(req) = require {
                let slot = match req {
                    Axiom::T0 => 0,
                    Axiom::T1 => 1,
                    Axiom::T2 => 2,
                };
                if !held[slot] {
                    let ce = [sep.t0_counterexample, sep.t1_counterexample, sep.t2_counterexample][slot];
                    report.violation(format!(
                        "not {req:?} at pair {}",
                        name(ce.expect("failed axiom has a pair"))
                    ));
                }
            }
        }
    }
    Ok(())
}

fn decide(ctx: &mut Ctx, args: &DecideArgs, report: &mut RunReport) -> Result<()> {
    let f = ctx.load_set("set", &args.set)?;
    let mut strategy: Strategy<f64> = args.strategy.parse()?;
    if let Some(w) = &args.weights {
        match &mut strategy {
            Strategy::WeightedSum(slot) => *slot = Some(numbers(w)?),
            Strategy::MaxMin => {
                return Err(Error::InvalidWeight("weights only apply to weighted-sum".into()));
            }
        }
    }
    let ranking = rank(&f, &strategy)?;
    report.summary.push("strategy", strategy.name());
    report.summary.push("best", &ranking[0].object);
    let mut t = Table::new(["rank", "object", "score"]);
    for r in &ranking {
        t.push(vec![r.rank.to_string(), r.object.clone(), cell(r.score)]);
    }
    report.table = Some(t);
    Ok(())
}

fn fuzzy_real(text: &str, grid: &AlphaGrid<f64>) -> Result<FuzzyReal<f64>> {
    match numbers(text)?.as_slice() {
        [r] => Ok(FuzzyReal::crisp(*r, grid.clone())),
        [a, b, c] => FuzzyReal::triangular(*a, *b, *c, grid.clone()),
        other => Err(Error::InvalidFuzzyReal(format!(
            "expected 1 or 3 numbers, got {}",
            other.len()
        ))),
    }
}

fn real(ctx: &Ctx, args: &RealArgs, report: &mut RunReport) -> Result<()> {
    let a = fuzzy_real(&args.a, &ctx.grid)?;
    let op = match args.op {
        RealOp::Add => Some(ArithOp::Add),
        RealOp::Sub => Some(ArithOp::Sub),
        RealOp::Mul => Some(ArithOp::Mul),
        RealOp::Div => Some(ArithOp::Div),
        RealOp::Abs => None,
    };
    let (value, oracle) = match op {
        Some(op) => {
            let b = args
                .b
                .as_deref()
                .ok_or_else(|| Error::InvalidFuzzyReal("binary operation needs two operands".into()))?;
            let b = fuzzy_real(b, &ctx.grid)?;
            let n = a.apply(op, &b)?;
            report.summary.push("normalization_delta", n.delta);
            let oracle = match args.oracle {
                Some(step) => Some(ext_apply(op, &a, &b, step)?),
                None => None,
            };
            (n.value, oracle)
        }
        None => (a.abs().into_inner(), None),
    };
    let support = value.support();
    report
        .summary
        .push("support", format!("[{}, {}]", support.lower, support.upper));
    let top = value.cut(ctx.grid.len() - 1);
    report.summary.push("core", format!("[{}, {}]", top.lower, top.upper));
    let cmp = oracle.as_ref().map(|o| compare_with_oracle(&value, o));
    let mut t = if cmp.is_some() {
        Table::new(["alpha", "lower", "upper", "oracle_dlower", "oracle_dupper"])
    } else {
        Table::new(["alpha", "lower", "upper"])
    };
    for (j, &alpha) in ctx.grid.levels().iter().enumerate() {
        let c = value.cut(j);
        let mut row = vec![cell(alpha), cell(c.lower), cell(c.upper)];
        if let Some(cmp) = &cmp {
            row.push(cell(cmp.levels[j].1));
            row.push(cell(cmp.levels[j].2));
        }
        t.push(row);
    }
    if let Some(cmp) = cmp {
        report.summary.push("oracle_max_deviation", cmp.max_deviation);
    }
    report.table = Some(t);
    Ok(())
}

fn run(cli: &Cli) -> RunReport {
    let started = Instant::now();
    let mut digest = InputDigest::new();
    digest.add(
        "args",
        format!("{:?} grid={} tol={}", cli.command, cli.grid, cli.tol).as_bytes(),
    );
    let name = match &cli.command {
        Command::Ops(_) => "ops",
        Command::Check(_) => "check",
        Command::Fixpoint(_) => "fixpoint",
        Command::Topology(TopologyCommand::Check { .. }) => "topology check",
        Command::Topology(TopologyCommand::Slice { .. }) => "topology slice",
        Command::Topology(TopologyCommand::Lift { .. }) => "topology lift",
        Command::Topology(TopologyCommand::Separation { .. }) => "topology separation",
        Command::Decide(_) => "decide",
        Command::Real(_) => "real",
    };
    let mut report = RunReport::new(name, Some(cli.seed), String::new());
    let outcome = AlphaGrid::uniform(cli.grid).and_then(|grid| {
        let mut ctx = Ctx {
            seed: cli.seed,
            grid,
            tol: cli.tol,
            digest,
        };
        let r = match &cli.command {
            Command::Ops(a) => ops(&mut ctx, a, &mut report),
            Command::Check(a) => check(&ctx, a, &mut report),
            Command::Fixpoint(a) => fixpoint(&ctx, a, &mut report),
            Command::Topology(c) => topology(&mut ctx, c, &mut report),
            Command::Decide(a) => decide(&mut ctx, a, &mut report),
            Command::Real(a) => real(&ctx, a, &mut report),
        };
        report.inputs_digest = ctx.digest.hex();
        r
    });
    if let Err(e) = outcome {
        report.fail(e);
    }
    report.timing_ms = u64::try_from(started.elapsed().as_millis()).unwrap_or(u64::MAX);
    report
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run(&cli);
    print!("{}", report.render(cli.format));
    if let Some(e) = &report.error {
        eprintln!("error: {e}");
    }
    ExitCode::from(report.status.exit_code() as u8)
}
