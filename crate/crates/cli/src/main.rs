//! `c2kit`: c₂ invariants from the command line.

mod output;
mod presets;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use c2kit::algebra::AlgebraError;
use c2kit::c2::{
    c2_coeff_route, c2_denom, c2_direct, c2_dodgson, denom_reduce, C2Error, C2Result, CountConfig,
    ReduceLimits, DEFAULT_POINT_BUDGET,
};
use c2kit::graph::load_graph;
use c2kit::graph_polys::{dodgson, forest_poly, kirchhoff, DodgsonSpec, PolyError};
use c2kit::recurrences::{
    build_transfer, c2_sequence, fit_recurrence, transfer_sequence, FamilyKind, FamilySpec,
    RecurrenceError, RecurrenceSystem, Route,
};
use c2kit::{Graph, GraphError, Prime, SetPartition};

use output::{emit, Format, Meta, SequenceRow, Tabular};
use presets::Preset;

#[derive(Parser, Debug)]
#[command(name = "c2kit", version, about = "c₂ invariants of decompleted circulant graphs")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Drop metadata and timings so identical runs give identical output.
    #[arg(long, global = true)]
    no_meta: bool,
    /// Worker threads for point counting (default: available parallelism).
    #[arg(long, global = true, env = "C2KIT_WORKERS")]
    workers: Option<usize>,
    /// Largest number of points an exhaustive count may visit.
    #[arg(long, global = true, env = "C2KIT_POINT_BUDGET")]
    budget: Option<u128>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// c₂ of one graph by one or all routes.
    C2(C2Args),
    /// c₂ along a circulant family.
    Family(FamilyArgs),
    /// Denominator reduction trace.
    Reduce(ReduceArgs),
    /// Print a graph polynomial.
    #[command(subcommand)]
    Poly(PolyCommand),
    /// Build or run transfer systems.
    #[command(subcommand)]
    Transfer(TransferCommand),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GraphRoute {
    Direct,
    Dodgson1,
    Dodgson2,
    Five,
    Coeff,
    Denom,
    All,
}

#[derive(Args, Debug)]
struct C2Args {
    /// `circulant:n:j,k`, `circulant-decompleted:n:j,k`, or a JSON graph file.
    #[arg(long)]
    graph: String,
    #[arg(short, long, default_value_t = 2)]
    p: u32,
    #[arg(long, value_enum, default_value_t = GraphRoute::Direct)]
    route: GraphRoute,
    /// Edge ids: the special edges, then the reduction order for denom.
    #[arg(long, value_delimiter = ',')]
    edges: Option<Vec<usize>>,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// zigzag (or 1,2), 1,3 .. 1,6, 2,3, 2,4, 2,5, 3,4, 2k2.
    #[arg(long, required_unless_present = "preset")]
    kind: Option<FamilyKind>,
    #[arg(short, long, default_value_t = 2)]
    p: u32,
    /// Inclusive index range `a:b` (n, or k for 2k2).
    #[arg(long, required_unless_present = "preset")]
    range: Option<IndexRange>,
    #[arg(long, default_value_t = Route::Direct)]
    route: Route,
    /// Further routes to run on the same range and check against.
    #[arg(long, value_delimiter = ',')]
    compare: Vec<Route>,
    /// Check the family's known closed form.
    #[arg(long)]
    verify_paper: bool,
    /// Append the fitted minimal recurrence on each index parity.
    #[arg(long)]
    fit: bool,
    #[arg(long, value_enum, conflicts_with_all = ["kind", "range", "compare"])]
    preset: Option<Preset>,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    #[arg(long)]
    graph: String,
    #[arg(short, long, default_value_t = 2)]
    p: u32,
    /// Edge order; unlisted edges follow in increasing id.
    #[arg(long, value_delimiter = ',')]
    order: Option<Vec<usize>>,
}

#[derive(Subcommand, Debug)]
enum PolyCommand {
    /// Kirchhoff polynomial Ψ_G.
    Kirchhoff {
        #[arg(long)]
        graph: String,
    },
    /// Dodgson polynomial Ψ^{I,J}_K.
    Dodgson {
        #[arg(long)]
        graph: String,
        #[arg(long, value_delimiter = ',', default_value = "")]
        rows: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "")]
        cols: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "")]
        zeroed: Vec<String>,
    },
    /// Spanning forest polynomial Φ^P_G.
    Forest {
        #[arg(long)]
        graph: String,
        /// Partition such as `{0,3}{1}`.
        #[arg(long)]
        partition: SetPartition,
    },
}

#[derive(Subcommand, Debug)]
enum TransferCommand {
    /// Build the system for a family and write it as JSON.
    Build {
        #[arg(long)]
        kind: FamilyKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// c₂ mod 2 from a system, built or loaded.
    Run {
        #[arg(long)]
        kind: FamilyKind,
        #[arg(long)]
        range: IndexRange,
        /// A system written by `transfer build`.
        #[arg(long)]
        system: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct IndexRange {
    start: usize,
    end: usize,
}

impl std::str::FromStr for IndexRange {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, got {s:?}"))?;
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
        let (start, end) = (parse(a)?, parse(b)?);
        if start > end {
            return Err(format!("empty range {s:?}"));
        }
        Ok(IndexRange { start, end })
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Disagreement(String),
    #[error("{0}")]
    Failed(String),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Disagreement(_) => 4,
            CliError::Failed(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<C2Error> for CliError {
    fn from(e: C2Error) -> Self {
        let msg = e.to_string();
        match e {
            C2Error::BudgetExceeded { .. } => CliError::Budget(msg),
            C2Error::TooSmall
            | C2Error::Hypothesis { .. }
            | C2Error::BadEdges { .. }
            | C2Error::Algebra(AlgebraError::NotPrime(_))
            | C2Error::Poly(PolyError::BadEdges(_) | PolyError::BadSpec(_) | PolyError::Graph(_)) => {
                CliError::Usage(msg)
            }
            _ => CliError::Failed(msg),
        }
    }
}

impl From<RecurrenceError> for CliError {
    fn from(e: RecurrenceError) -> Self {
        match e {
            RecurrenceError::C2(inner) => inner.into(),
            RecurrenceError::Graph(g) => g.into(),
            RecurrenceError::Unsupported { .. } | RecurrenceError::OutOfRange { .. } => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::BadEdges(_) | PolyError::BadSpec(_) | PolyError::Graph(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Failed(e.to_string()),
        }
    }
}

struct Context {
    format: Format,
    meta: Option<Meta>,
    cfg: CountConfig,
}

impl Context {
    fn new(g: &Global) -> Self {
        let mut cfg = CountConfig::default();
        if let Some(w) = g.workers {
            cfg = cfg.with_workers(w);
        }
        cfg.budget = g.budget.unwrap_or(DEFAULT_POINT_BUDGET);
        Context {
            format: g.format,
            meta: (!g.no_meta).then(|| Meta::now(cfg.workers, cfg.budget)),
            cfg,
        }
    }

    fn elapsed(&self, ms: f64) -> f64 {
        if self.meta.is_some() {
            ms
        } else {
            0.0
        }
    }

    fn emit<R: Serialize + Tabular, X: Serialize>(&self, records: &[R], extra: Option<&X>) -> Result<(), CliError> {
        Ok(emit(self.format, self.meta.as_ref(), records, extra)?)
    }
}

fn prime(p: u32) -> Result<Prime, CliError> {
    Prime::new(p).map_err(|e| CliError::Usage(e.to_string()))
}

fn graph(descriptor: &str) -> Result<Graph, CliError> {
    Ok(load_graph(descriptor)?)
}

/// `edges` first, then the remaining edge ids in increasing order.
fn full_order(g: &Graph, edges: &[usize]) -> Result<Vec<usize>, CliError> {
    let mut seen = vec![false; g.edge_count()];
    for &e in edges {
        if e >= g.edge_count() || std::mem::replace(&mut seen[e], true) {
            return Err(CliError::Usage(format!(
                "edge list {edges:?} must hold distinct ids below {}",
                g.edge_count()
            )));
        }
    }
    let mut order = edges.to_vec();
    order.extend((0..g.edge_count()).filter(|&e| !seen[e]));
    Ok(order)
}

fn cmd_c2(ctx: &Context, args: &C2Args) -> Result<(), CliError> {
    let p = prime(args.p)?;
    let g = graph(&args.graph)?;
    let order = full_order(&g, args.edges.as_deref().unwrap_or(&[]))?;
    let run = |route: GraphRoute| -> Result<C2Result, C2Error> {
        match route {
            GraphRoute::Direct => c2_direct(&g, p, &ctx.cfg),
            GraphRoute::Dodgson1 => c2_dodgson(&g, p, 1, order.get(..3).unwrap_or(&order)),
            GraphRoute::Dodgson2 => c2_dodgson(&g, p, 2, order.get(..4).unwrap_or(&order)),
            GraphRoute::Five => c2_dodgson(&g, p, 3, order.get(..5).unwrap_or(&order)),
            GraphRoute::Coeff => {
                if p != Prime::TWO {
                    return Err(C2Error::Algebra(AlgebraError::Shape(format!(
                        "route coeff needs p = 2, got p = {p}"
                    ))));
                }
                let n = match &args.edges {
                    Some(e) if e.len() == 4 => 4,
                    _ => 3,
                };
                c2_coeff_route(&g, order.get(..n).unwrap_or(&order))
            }
            GraphRoute::Denom => c2_denom(&g, p, &order),
            GraphRoute::All => unreachable!(),
        }
    };
    let mut records = Vec::new();
    if args.route == GraphRoute::All {
        for route in [
            GraphRoute::Direct,
            GraphRoute::Dodgson1,
            GraphRoute::Dodgson2,
            GraphRoute::Five,
            GraphRoute::Coeff,
            GraphRoute::Denom,
        ] {
            if route == GraphRoute::Coeff && p != Prime::TWO {
                continue;
            }
            match run(route) {
                Ok(r) => records.push(r),
                Err(C2Error::DegreeCondition { .. }) if route == GraphRoute::Coeff => {}
                Err(C2Error::BadEdges { .. }) if g.edge_count() < 5 => {}
                Err(e) => return Err(e.into()),
            }
        }
    } else {
        records.push(run(args.route)?);
    }
    for r in &mut records {
        r.graph = args.graph.clone();
        r.elapsed_ms = ctx.elapsed(r.elapsed_ms);
    }
    ctx.emit(&records, None::<&()>)?;
    if let Some(first) = records.first() {
        let odd: Vec<String> = records
            .iter()
            .filter(|r| r.value != first.value)
            .map(|r| format!("{} = {}", r.method.name(), r.value))
            .collect();
        if !odd.is_empty() {
            return Err(CliError::Disagreement(format!(
                "routes disagree on {}: {} = {} but {}",
                args.graph,
                first.method.name(),
                first.value,
                odd.join(", ")
            )));
        }
    }
    Ok(())
}

/// One route over one index range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Leg {
    pub route: Route,
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct FamilyPlan {
    pub kind: FamilyKind,
    pub p: u32,
    pub legs: Vec<Leg>,
    pub verify_paper: bool,
    pub fit: bool,
}

#[derive(Serialize)]
struct FamilyExtra {
    #[serde(skip_serializing_if = "Option::is_none")]
    verify_paper: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fit: Option<Vec<FitRecord>>,
}

#[derive(Serialize)]
struct FitRecord {
    parity: usize,
    terms: usize,
    recurrence: String,
    characteristic: Vec<u32>,
}

fn family_plan(args: &FamilyArgs) -> FamilyPlan {
    if let Some(preset) = args.preset {
        return preset.plan();
    }
    let range = args.range.expect("required without a preset");
    let mut routes = vec![args.route];
    for &r in &args.compare {
        if !routes.contains(&r) {
            routes.push(r);
        }
    }
    FamilyPlan {
        kind: args.kind.expect("required without a preset"),
        p: args.p,
        legs: routes
            .into_iter()
            .map(|route| Leg {
                route,
                start: range.start,
                end: range.end,
            })
            .collect(),
        verify_paper: args.verify_paper,
        fit: args.fit,
    }
}

fn run_leg(ctx: &Context, kind: FamilyKind, p: Prime, leg: Leg) -> Result<Vec<SequenceRow>, CliError> {
    let row = |n: usize, c2: u32, ms: f64| SequenceRow {
        family: kind.name().to_string(),
        n,
        p: p.get(),
        route: leg.route.name().to_string(),
        c2,
        elapsed_ms: ctx.elapsed(ms),
    };
    match leg.route {
        // Whole-range routes: the elapsed time is shared out over the rows.
        Route::Transfer | Route::Table => {
            let t = Instant::now();
            let spec = FamilySpec {
                kind,
                start: leg.start,
                end: leg.end,
                p,
            };
            let values = c2_sequence(&spec, leg.route, &ctx.cfg)?;
            let ms = t.elapsed().as_secs_f64() * 1e3 / values.len().max(1) as f64;
            Ok(values.into_iter().map(|(n, v)| row(n, v, ms)).collect())
        }
        _ => (leg.start..=leg.end)
            .map(|n| {
                let t = Instant::now();
                let spec = FamilySpec {
                    kind,
                    start: n,
                    end: n,
                    p,
                };
                let v = c2_sequence(&spec, leg.route, &ctx.cfg)?[0].1;
                Ok(row(n, v, t.elapsed().as_secs_f64() * 1e3))
            })
            .collect(),
    }
}

fn cmd_family(ctx: &Context, args: &FamilyArgs) -> Result<(), CliError> {
    let plan = family_plan(args);
    let p = prime(plan.p)?;
    let kind = plan.kind;
    for leg in &plan.legs {
        if !leg.route.supports(kind, p) {
            return Err(CliError::Usage(format!(
                "route {} is not available for family {} at p = {}",
                leg.route,
                kind,
                p
            )));
        }
        if leg.start < kind.min_index() {
            return Err(CliError::Usage(format!(
                "family {kind} starts at {} = {}, range starts at {}",
                kind.index_name(),
                kind.min_index(),
                leg.start
            )));
        }
    }
    if plan.verify_paper && kind.closed_form(p, kind.min_index()).is_none() {
        return Err(CliError::Usage(format!(
            "no closed form to verify for family {kind} at p = {p}"
        )));
    }

    let mut rows = Vec::new();
    for &leg in &plan.legs {
        rows.extend(run_leg(ctx, kind, p, leg)?);
    }
    rows.sort_by(|a, b| (a.n, &a.route).cmp(&(b.n, &b.route)));

    let mut by_index: BTreeMap<usize, Vec<&SequenceRow>> = BTreeMap::new();
    for r in &rows {
        by_index.entry(r.n).or_default().push(r);
    }
    let mut problems = Vec::new();
    for (n, group) in &by_index {
        if group.iter().any(|r| r.c2 != group[0].c2) {
            let vals: Vec<String> = group.iter().map(|r| format!("{} = {}", r.route, r.c2)).collect();
            problems.push(CliError::Disagreement(format!("routes disagree at n = {n}: {}", vals.join(", "))));
        }
    }

    let mut extra = FamilyExtra {
        verify_paper: None,
        fit: None,
    };
    if plan.verify_paper {
        let wrong: Vec<String> = rows
            .iter()
            .filter_map(|r| {
                let want = kind.closed_form(p, r.n)?;
                (want != r.c2).then(|| format!("{} at n = {}: got {}, expected {want}", r.route, r.n, r.c2))
            })
            .collect();
        extra.verify_paper = Some(if wrong.is_empty() { "PASS" } else { "FAIL" }.to_string());
        if !wrong.is_empty() {
            problems.push(CliError::Disagreement(format!("closed form fails: {}", wrong.join("; "))));
        }
    }
    if plan.fit {
        let merged: Vec<(usize, u32)> = by_index.iter().map(|(&n, g)| (n, g[0].c2)).collect();
        let fits = fit_recurrence(&merged, p)?;
        extra.fit = Some(
            fits.into_iter()
                .map(|f| FitRecord {
                    parity: f.parity,
                    terms: f.terms,
                    recurrence: f.recurrence.to_string(),
                    characteristic: f.recurrence.characteristic(),
                })
                .collect(),
        );
    }
    let has_extra = extra.verify_paper.is_some() || extra.fit.is_some();
    ctx.emit(&rows, has_extra.then_some(&extra))?;
    match problems.into_iter().next() {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct TraceRow {
    step: usize,
    terms: usize,
    kind: String,
}

impl Tabular for TraceRow {
    fn header() -> Vec<&'static str> {
        vec!["step", "terms", "kind"]
    }
    fn cells(&self) -> Vec<String> {
        vec![self.step.to_string(), self.terms.to_string(), self.kind.clone()]
    }
}

#[derive(Serialize)]
struct ReduceSummary {
    graph: String,
    p: u32,
    order: Vec<usize>,
    stop: &'static str,
    stop_step: usize,
    c2: Option<u32>,
}

fn cmd_reduce(ctx: &Context, args: &ReduceArgs) -> Result<(), CliError> {
    let p = prime(args.p)?;
    let g = graph(&args.graph)?;
    if g.edge_count() < 5 {
        return Err(CliError::Usage(format!(
            "denominator reduction needs at least 5 edges, graph has {}",
            g.edge_count()
        )));
    }
    let order = full_order(&g, args.order.as_deref().unwrap_or(&[]))?;
    let out = denom_reduce(&g, &order, p, &ReduceLimits::default())?;
    let trace: Vec<TraceRow> = out
        .trace
        .iter()
        .map(|&(step, terms, kind)| TraceRow {
            step,
            terms,
            kind: kind.map_or("start".into(), |k| format!("{k:?}").to_lowercase()),
        })
        .collect();
    let summary = ReduceSummary {
        graph: args.graph.clone(),
        p: p.get(),
        order,
        stop: out.stop.describe(),
        stop_step: out.last.step,
        c2: out.c2,
    };
    ctx.emit(&trace, Some(&summary))
}

#[derive(Serialize)]
struct PolyRecord {
    graph: String,
    kind: &'static str,
    terms: usize,
    poly: String,
}

impl Tabular for PolyRecord {
    fn header() -> Vec<&'static str> {
        vec!["graph", "kind", "terms", "poly"]
    }
    fn cells(&self) -> Vec<String> {
        vec![self.graph.clone(), self.kind.into(), self.terms.to_string(), self.poly.clone()]
    }
}

fn edge_ids(list: &[String]) -> Result<Vec<usize>, CliError> {
    list.iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|e| CliError::Usage(format!("edge id {s:?}: {e}")))
        })
        .collect()
}

fn cmd_poly(ctx: &Context, cmd: &PolyCommand) -> Result<(), CliError> {
    let record = match cmd {
        PolyCommand::Kirchhoff { graph: d } => {
            let f = kirchhoff(&graph(d)?)?;
            PolyRecord {
                graph: d.clone(),
                kind: "kirchhoff",
                terms: f.len(),
                poly: f.to_string(),
            }
        }
        PolyCommand::Dodgson {
            graph: d,
            rows,
            cols,
            zeroed,
        } => {
            let spec = DodgsonSpec::new(&edge_ids(rows)?, &edge_ids(cols)?, &edge_ids(zeroed)?);
            let f = dodgson(&graph(d)?, &spec)?.raw();
            PolyRecord {
                graph: d.clone(),
                kind: "dodgson",
                terms: f.len(),
                poly: f.to_string(),
            }
        }
        PolyCommand::Forest { graph: d, partition } => {
            let g = graph(d)?;
            if let Some(&v) = partition.vertices().iter().find(|&&v| v >= g.vertex_count()) {
                return Err(CliError::Usage(format!(
                    "partition vertex {v} is outside 0..{}",
                    g.vertex_count()
                )));
            }
            let f = forest_poly(&g, partition);
            PolyRecord {
                graph: d.clone(),
                kind: "forest",
                terms: f.len(),
                poly: f.to_string(),
            }
        }
    };
    ctx.emit(&[record], None::<&()>)
}

#[derive(Serialize)]
struct SystemSummary {
    family: String,
    states: usize,
    seed: usize,
    strip_offset: usize,
    step: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    out: Option<String>,
}

impl Tabular for SystemSummary {
    fn header() -> Vec<&'static str> {
        vec!["family", "states", "seed", "strip_offset", "step", "out"]
    }
    fn cells(&self) -> Vec<String> {
        vec![
            self.family.clone(),
            self.states.to_string(),
            self.seed.to_string(),
            self.strip_offset.to_string(),
            self.step.to_string(),
            self.out.clone().unwrap_or_default(),
        ]
    }
}

fn cmd_transfer(ctx: &Context, cmd: &TransferCommand) -> Result<(), CliError> {
    match cmd {
        TransferCommand::Build { kind, out } => {
            let sys = build_transfer(*kind)?;
            let json = serde_json::to_string(&sys).map_err(|e| CliError::Failed(e.to_string()))?;
            let summary = SystemSummary {
                family: kind.name().into(),
                states: sys.states.len(),
                seed: sys.seed.len(),
                strip_offset: sys.strip_offset,
                step: sys.step,
                out: out.as_ref().map(|p| p.display().to_string()),
            };
            match out {
                Some(path) => {
                    std::fs::write(path, json + "\n")?;
                    ctx.emit(&[summary], None::<&()>)
                }
                None => {
                    println!("{json}");
                    Ok(())
                }
            }
        }
        TransferCommand::Run { kind, range, system } => {
            let t = Instant::now();
            let sys: RecurrenceSystem = match system {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                    serde_json::from_str(&text)
                        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
                }
                None => build_transfer(*kind)?,
            };
            if sys.family != *kind {
                return Err(CliError::Usage(format!(
                    "system is for family {}, not {kind}",
                    sys.family
                )));
            }
            if range.start < kind.min_index() {
                return Err(CliError::Usage(format!(
                    "family {kind} starts at {}",
                    kind.min_index()
                )));
            }
            let values = transfer_sequence(&sys, range.start, range.end)?;
            let ms = t.elapsed().as_secs_f64() * 1e3 / values.len().max(1) as f64;
            let rows: Vec<SequenceRow> = values
                .into_iter()
                .map(|(n, c2)| SequenceRow {
                    family: kind.name().into(),
                    n,
                    p: 2,
                    route: Route::Transfer.name().into(),
                    c2,
                    elapsed_ms: ctx.elapsed(ms),
                })
                .collect();
            ctx.emit(&rows, None::<&()>)
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let ctx = Context::new(&cli.global);
    match &cli.command {
        Command::C2(a) => cmd_c2(&ctx, a),
        Command::Family(a) => cmd_family(&ctx, a),
        Command::Reduce(a) => cmd_reduce(&ctx, a),
        Command::Poly(c) => cmd_poly(&ctx, c),
        Command::Transfer(c) => cmd_transfer(&ctx, c),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("c2kit: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
