//! Subcommand arguments and the builders behind them.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::Args;
use serde::{Deserialize, Serialize};

use hopspan::derived::{
    directed_level_hopset, directed_preserver_pipeline, emulator_from_hopset, reachability_preserver_pipeline,
    slack_spanner_with, sourcewise_spanner, sourcewise_spanner_partitioned, spanner_from_emulator,
    undirected_hierarchy, undirected_preserver_pipeline, undirected_schedule_for, weighted_near_additive_pipeline,
    derive_seed, with_retries,
};
use hopspan::graph::{generate_graph, load_graph, write_edge_list, GeneratorKind, GeneratorSpec, GraphFormat};
use hopspan::hopset::{base_tcw, folklore_exact_hopset, schedule_directed, shortcut_folklore, ScheduleLevel};
use hopspan::{
    hopsets_to_missing_spanner, ApproxMode, BaseAlgorithm, BetaSchedule, Graph, Hopset, PairSet, Rational, TcwBase, Vertex,
};

use crate::config::merge;
use crate::structure::Structure;
use crate::CliError;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn required<T: Clone>(v: &Option<T>, flag: &str) -> Result<T, CliError> {
    v.clone().ok_or_else(|| usage(format!("missing --{flag}")))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("writing {}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| usage(format!("writing stdout: {e}"))),
    }
}

#[derive(Args, Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct GraphInput {
    /// Input graph file
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// edge-list (default) or dimacs-gr
    #[arg(long)]
    pub format: Option<String>,
    /// Read the graph as directed (edge-list headers saying directed=true also do)
    #[arg(long)]
    pub directed: bool,
}

impl GraphInput {
    pub fn load(&self) -> Result<Graph, CliError> {
        let path = required(&self.graph, "graph")?;
        let format: GraphFormat = self.format.as_deref().unwrap_or("edge-list").parse()?;
        let mut directed = self.directed;
        if format == GraphFormat::EdgeList {
            let text = fs::read_to_string(&path).map_err(|e| usage(format!("reading {}: {e}", path.display())))?;
            directed |= text
                .lines()
                .next()
                .is_some_and(|l| l.starts_with("# graph") && l.contains("directed=true"));
        }
        Ok(load_graph(&path, format, directed)?)
    }
}

/// Flags shared by every structure-building subcommand.
#[derive(Args, Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct OutputArgs {
    /// Where to write the structure (stdout if absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Check the structure against its claim; exit 1 if it fails
    #[arg(long)]
    pub verify: bool,
    /// Write the verification report as JSON here
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Writes the structure, prints a summary, and verifies when asked.
fn finish(g: &Graph, s: &Structure, out: &OutputArgs) -> Result<(), CliError> {
    write_out(out.out.as_deref(), &s.to_text(g)?)?;
    eprintln!("{}", s.describe());
    if out.verify || out.report.is_some() {
        let report = s.verify(g);
        eprintln!("{report}");
        if let Some(p) = &out.report {
            fs::write(p, report.to_json()).map_err(|e| usage(format!("writing {}: {e}", p.display())))?;
        }
        if out.verify && !report.pass {
            return Err(CliError::Verification(report.property.clone()));
        }
    }
    Ok(())
}

fn parse_pairs(text: &str, n: usize) -> Result<PairSet, CliError> {
    let mut pairs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        let parsed = match f.as_slice() {
            [u, v] => u.parse::<Vertex>().ok().zip(v.parse::<Vertex>().ok()),
            _ => None,
        };
        pairs.push(parsed.ok_or_else(|| usage(format!("pairs line {}: expected 'u v'", i + 1)))?);
    }
    Ok(PairSet::new(n, pairs)?)
}

#[derive(Args, Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct PairInput {
    /// File of demand pairs, one `u v` per line
    #[arg(long)]
    pub pairs: Option<PathBuf>,
    /// Draw this many reachable demand pairs instead
    #[arg(long)]
    pub random_pairs: Option<usize>,
}

impl PairInput {
    fn load(&self, g: &Graph, seed: u64) -> Result<PairSet, CliError> {
        match (&self.pairs, self.random_pairs) {
            (Some(path), None) => {
                let text = fs::read_to_string(path).map_err(|e| usage(format!("reading {}: {e}", path.display())))?;
                parse_pairs(&text, g.n())
            }
            (None, Some(count)) => Ok(PairSet::random_reachable(g, count, seed)?),
            _ => Err(usage("give exactly one of --pairs and --random-pairs")),
        }
    }
}

fn rational(v: &Option<Rational>, default: Rational) -> Rational {
    v.clone().unwrap_or(default)
}

// ---- gen ----

#[derive(Args, Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct GenArgs {
    /// gnp, dag, path, cycle, grid or layered
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Edge probability (gnp, dag, layered)
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    #[arg(long)]
    pub layers: Option<usize>,
    #[arg(long)]
    pub width: Option<usize>,
    #[arg(long)]
    pub directed: bool,
    /// Weights drawn uniformly from 1..=max-weight
    #[arg(long)]
    pub max_weight: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

pub fn gen(args: GenArgs) -> Result<(), CliError> {
    let config = args.config.clone();
    let a = merge(args, config.as_deref())?;
    let kind = match a.kind.as_deref().unwrap_or("gnp") {
        "gnp" => GeneratorKind::Gnp { n: required(&a.n, "n")?, p: required(&a.p, "p")? },
        "dag" => GeneratorKind::RandomDag { n: required(&a.n, "n")?, p: required(&a.p, "p")? },
        "path" => GeneratorKind::Path { n: required(&a.n, "n")? },
        "cycle" => GeneratorKind::Cycle { n: required(&a.n, "n")? },
        "grid" => GeneratorKind::Grid { rows: required(&a.rows, "rows")?, cols: required(&a.cols, "cols")? },
        "layered" => GeneratorKind::Layered {
            layers: required(&a.layers, "layers")?,
            width: required(&a.width, "width")?,
            p: required(&a.p, "p")?,
        },
        other => return Err(usage(format!("unknown graph kind '{other}'"))),
    };
    let directed = a.directed || matches!(kind, GeneratorKind::RandomDag { .. });
    let spec = GeneratorSpec::new(kind)
        .directed(directed)
        .weights(a.max_weight.unwrap_or(1))
        .seed(a.seed.unwrap_or(0));
    let g = generate_graph(&spec)?;
    eprintln!("graph: n={} m={} directed={}", g.n(), g.m(), g.is_directed());
    write_out(a.out.as_deref(), &write_edge_list(&g))
}

// ---- hopset / shortcut ----

#[derive(Args, Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct HopsetArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub input: GraphInput,
    /// Requested hopbound
    #[arg(long)]
    pub beta: Option<usize>,
    /// level (claim <= beta, default), folklore (claim 2·beta+1) or closure (claim 1)
    #[arg(long)]
    pub method: Option<String>,
    /// exact (default) or mult:<eps>
    #[arg(long)]
    pub mode: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

pub fn build_hopset(g: &Graph, method: &str, beta: usize, mode: &ApproxMode, seed: u64) -> Result<Structure, CliError> {
    let h = match method {
        "level" => with_retries(seed, |s| directed_level_hopset(g, &TcwBase, beta, mode, s))?.0,
        "folklore" => {
            if *mode != ApproxMode::Exact {
                return Err(usage("the folklore hopset is exact only"));
            }
            with_retries(seed, |s| folklore_exact_hopset(g, beta, s))?.0
        }
        "closure" => {
            let mut h = base_tcw(g);
            h.mode = mode.clone();
            h
        }
        other => return Err(usage(format!("unknown hopset method '{other}'"))),
    };
    Ok(Structure::Hopset(h))
}

pub fn hopset(args: HopsetArgs) -> Result<(), CliError> {
    let config = args.config.clone();
    let a = merge(args, config.as_deref())?;
    let g = a.input.load()?;
    let mode: ApproxMode = a.mode.as_deref().unwrap_or("exact").parse()?;
    if mode.is_reachability() {
        return Err(usage("use the shortcut subcommand for reachability"));
    }
    let s = build_hopset(&g, a.method.as_deref().unwrap_or("level"), required(&a.beta, "beta")?, &mode, a.output.seed.unwrap_or(0))?;
    finish(&g, &s, &a.output)
}

#[derive(Args, Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct ShortcutArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub input: GraphInput,
    /// Sampling scale; the claimed hop diameter is 3d
    #[arg(long)]
    pub d: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

pub fn build_shortcut(g: &Graph, d: usize, seed: u64) -> Result<Structure, CliError> {
    Ok(Structure::Hopset(with_retries(seed, |s| shortcut_folklore(g, d, s))?.0))
}

pub fn shortcut(args: ShortcutArgs) -> Result<(), CliError> {
    let config = args.config.clone();
    let a = merge(args, config.as_deref())?;
    let g = a.input.load()?;
    let s = build_shortcut(&g, required(&a.d, "d")?, a.output.seed.unwrap_or(0))?;
    finish(&g, &s, &a.output)
}

// ---- missing spanner ----

#[derive(Args, Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct MissingArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub input: GraphInput,
    /// Explicit hopbounds β_1,…,β_ℓ; otherwise the schedule follows the graph
    #[arg(long, value_delimiter = ',')]
    pub betas: Vec<usize>,
    /// Number of demand pairs the directed schedule is tuned for
    #[arg(long)]
    pub p: Option<usize>,
    /// Undirected schedule parameter (default 1)
    #[arg(long)]
    pub k: Option<usize>,
    /// Total stretch budget (default 0 directed, 1/4 undirected)
    #[arg(long)]
    pub eps: Option<Rational>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

pub fn build_missing(
    g: &Graph,
    betas: &[usize],
    p: Option<usize>,
    k: usize,
    eps: Option<Rational>,
    seed: u64,
) -> Result<Structure, CliError> {
    let directed_hierarchy = |schedule: &BetaSchedule, s: u64| -> hopspan::Result<Vec<Hopset>> {
        (1..=schedule.len())
            .map(|i| {
                let mode = ApproxMode::from_epsilon(&schedule.eps(i))?;
                directed_level_hopset(g, &TcwBase, schedule.beta(i), &mode, derive_seed(s, 1, i as u64))
            })
            .collect()
    };
    let (schedule, undirected) = if !betas.is_empty() {
        let eps = eps.unwrap_or_else(Rational::zero);
        let levels = betas.iter().map(|&beta| ScheduleLevel { beta, eps: eps.clone() }).collect();
        (BetaSchedule::custom(g.n(), levels)?, false)
    } else if g.is_directed() {
        let p = p.ok_or_else(|| usage("directed schedules need --p or --betas"))?;
        let eps = eps.unwrap_or_else(Rational::zero);
        (schedule_directed(g.n(), p, TcwBase.tradeoff(), &eps)?, false)
    } else {
        let eps = eps.unwrap_or_else(|| Rational::new(1, 4));
        (undirected_schedule_for(g.n(), k, &eps)?, true)
    };
    let (ms, _) = with_retries(seed, |s| {
        let hierarchy = if undirected {
            undirected_hierarchy(g, &TcwBase, &schedule, s)?
        } else {
            directed_hierarchy(&schedule, s)?
        };
        hopsets_to_missing_spanner(g, &hierarchy, &schedule)
    })?;
    Ok(Structure::Missing(ms))
}

pub fn missing_spanner(args: MissingArgs) -> Result<(), CliError> {
    let config = args.config.clone();
    let a = merge(args, config.as_deref())?;
    let g = a.input.load()?;
    let s = build_missing(&g, &a.betas, a.p, a.k.unwrap_or(1), a.eps.clone(), a.output.seed.unwrap_or(0))?;
    finish(&g, &s, &a.output)
}

// ---- preservers ----

#[derive(Args, Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct PreserverArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub input: GraphInput,
    #[command(flatten)]
    #[serde(flatten)]
    pub pair_input: PairInput,
    /// Stretch budget: 0 (default) is exact; undirected graphs need eps > 0
    #[arg(long)]
    pub eps: Option<Rational>,
    /// Undirected schedule parameter (default 1)
    #[arg(long)]
    pub k: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

pub fn build_preserver(g: &Graph, pairs: &PairSet, eps: &Rational, k: usize, seed: u64) -> Result<Structure, CliError> {
    let res = if g.is_directed() {
        directed_preserver_pipeline(g, pairs, &TcwBase, eps, seed)?
    } else {
        undirected_preserver_pipeline(g, pairs, k, eps, seed)?
    };
    Ok(Structure::Subgraph(res))
}

pub fn preserver(args: PreserverArgs) -> Result<(), CliError> {
    let config = args.config.clone();
    let a = merge(args, config.as_deref())?;
    let g = a.input.load()?;
    let seed = a.output.seed.unwrap_or(0);
    let pairs = a.pair_input.load(&g, seed)?;
    let default_eps = if g.is_directed() { Rational::zero() } else { Rational::new(1, 4) };
    let s = build_preserver(&g, &pairs, &rational(&a.eps, default_eps), a.k.unwrap_or(1), seed)?;
    finish(&g, &s, &a.output)
}

#[derive(Args, Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct ReachArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub input: GraphInput,
    #[command(flatten)]
    #[serde(flatten)]
    pub pair_input: PairInput,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

pub fn reach_preserver(args: ReachArgs) -> Result<(), CliError> {
    let config = args.config.clone();
    let a = merge(args, config.as_deref())?;
    let mut input = a.input.clone();
    input.directed = true;
    let g = input.load()?;
    let seed = a.output.seed.unwrap_or(0);
    let pairs = a.pair_input.load(&g, seed)?;
    let s = Structure::Subgraph(reachability_preserver_pipeline(&g, &pairs, seed)?);
    finish(&g, &s, &a.output)
}

// ---- spanners ----

#[derive(Args, Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct SpannerArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub input: GraphInput,
    /// near-additive (default, unweighted), emulator (unweighted) or weighted
    #[arg(long)]
    pub variant: Option<String>,
    /// Spanner parameter (default 2 unweighted, 1 weighted)
    #[arg(long)]
    pub k: Option<usize>,
    /// Multiplicative slack (default 1/4)
    #[arg(long)]
    pub eps: Option<Rational>,
    /// Parameter of the exact hopset used by the unweighted variants (default 3)
    #[arg(long)]
    pub beta: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

pub fn build_spanner(
    g: &Graph,
    variant: &str,
    k: Option<usize>,
    eps: &Rational,
    beta: usize,
    seed: u64,
) -> Result<Structure, CliError> {
    let res = match variant {
        "emulator" | "near-additive" => {
            let beta = beta.min(g.n());
            let (h, _) = with_retries(seed, |s| folklore_exact_hopset(g, beta, s))?;
            if variant == "emulator" {
                emulator_from_hopset(g, &h, k.unwrap_or(2))?
            } else {
                spanner_from_emulator(g, &h, k.unwrap_or(2), eps)?
            }
        }
        "weighted" => weighted_near_additive_pipeline(g, k.unwrap_or(1), eps, seed)?,
        other => return Err(usage(format!("unknown spanner variant '{other}'"))),
    };
    Ok(Structure::Subgraph(res))
}

pub fn spanner(args: SpannerArgs) -> Result<(), CliError> {
    let config = args.config.clone();
    let a = merge(args, config.as_deref())?;
    let g = a.input.load()?;
    let s = build_spanner(
        &g,
        a.variant.as_deref().unwrap_or("near-additive"),
        a.k,
        &rational(&a.eps, Rational::new(1, 4)),
        a.beta.unwrap_or(3),
        a.output.seed.unwrap_or(0),
    )?;
    finish(&g, &s, &a.output)
}

#[derive(Args, Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct SourcewiseArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub input: GraphInput,
    /// Source vertices
    #[arg(long, value_delimiter = ',')]
    pub sources: Vec<Vertex>,
    /// Use this many seeded random sources instead
    #[arg(long)]
    pub random_sources: Option<usize>,
    /// Spanner parameter (default 2)
    #[arg(long)]
    pub k: Option<usize>,
    /// Preserver slack (default 1/4)
    #[arg(long)]
    pub eps: Option<Rational>,
    /// Partition the sources and run at k-1 per part
    #[arg(long)]
    pub partitioned: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

/// The first `count` vertices of a seeded shuffle.
pub fn random_sources(n: usize, count: usize, seed: u64) -> Result<Vec<Vertex>, CliError> {
    if count == 0 || count > n {
        return Err(usage(format!("cannot pick {count} sources from n={n}")));
    }
    let mut order: Vec<Vertex> = (0..n).collect();
    let mut state = seed;
    for i in (1..n).rev() {
        state = derive_seed(state, i as u64, 7);
        order.swap(i, (state % (i as u64 + 1)) as usize);
    }
    order.truncate(count);
    order.sort_unstable();
    Ok(order)
}

pub fn build_sourcewise(
    g: &Graph,
    sources: &[Vertex],
    k: usize,
    eps: &Rational,
    partitioned: bool,
    seed: u64,
) -> Result<Structure, CliError> {
    let res = if partitioned {
        sourcewise_spanner_partitioned(g, sources, k, eps, seed)?
    } else {
        sourcewise_spanner(g, sources, k, eps, seed)?
    };
    Ok(Structure::Subgraph(res))
}

pub fn sourcewise(args: SourcewiseArgs) -> Result<(), CliError> {
    let config = args.config.clone();
    let a = merge(args, config.as_deref())?;
    let g = a.input.load()?;
    let seed = a.output.seed.unwrap_or(0);
    let sources = match (a.sources.is_empty(), a.random_sources) {
        (false, None) => a.sources.clone(),
        (true, Some(c)) => random_sources(g.n(), c, seed)?,
        _ => return Err(usage("give exactly one of --sources and --random-sources")),
    };
    let s = build_sourcewise(&g, &sources, a.k.unwrap_or(2), &rational(&a.eps, Rational::new(1, 4)), a.partitioned, seed)?;
    finish(&g, &s, &a.output)
}

#[derive(Args, Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct SlackArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub input: GraphInput,
    /// Fraction of nearby vertices exempt from the claim (default 1/8)
    #[arg(long)]
    pub eps: Option<Rational>,
    /// Spanner parameter on the net (default 2)
    #[arg(long)]
    pub k: Option<usize>,
    /// Slack of the internal preserver (default 1/4)
    #[arg(long)]
    pub eps_pres: Option<Rational>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

pub fn build_slack(g: &Graph, eps: &Rational, k: usize, eps_pres: &Rational, seed: u64) -> Result<Structure, CliError> {
    Ok(Structure::Subgraph(slack_spanner_with(g, eps, k, eps_pres, seed)?))
}

pub fn slack(args: SlackArgs) -> Result<(), CliError> {
    let config = args.config.clone();
    let a = merge(args, config.as_deref())?;
    let g = a.input.load()?;
    let s = build_slack(
        &g,
        &rational(&a.eps, Rational::new(1, 8)),
        a.k.unwrap_or(2),
        &rational(&a.eps_pres, Rational::new(1, 4)),
        a.output.seed.unwrap_or(0),
    )?;
    finish(&g, &s, &a.output)
}

// ---- verify ----

#[derive(Args, Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct VerifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub input: GraphInput,
    /// Structure file written by one of the build subcommands
    #[arg(long)]
    pub structure: Option<PathBuf>,
    /// Check a hopset or shortcut set against this hopbound instead of its own
    #[arg(long)]
    pub beta: Option<usize>,
    /// Print the report as JSON
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

pub fn verify(args: VerifyArgs) -> Result<(), CliError> {
    let config = args.config.clone();
    let a = merge(args, config.as_deref())?;
    let g = a.input.load()?;
    let path = required(&a.structure, "structure")?;
    let text = fs::read_to_string(&path).map_err(|e| usage(format!("reading {}: {e}", path.display())))?;
    let mut s = Structure::parse(&g, &text)?;
    if let (Some(beta), Structure::Hopset(h)) = (a.beta, &mut s) {
        h.beta = beta;
    }
    let report = s.verify(&g);
    if a.json {
        println!("{}", report.to_json());
    } else {
        println!("{report}");
    }
    if report.pass {
        Ok(())
    } else {
        Err(CliError::Verification(report.property))
    }
}
