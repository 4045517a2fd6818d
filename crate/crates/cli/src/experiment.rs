//! Parameter sweeps: one CSV row per cell, plus two-column plot data.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use hopspan::derived::derive_seed;
use hopspan::graph::{generate_graph, GeneratorSpec};
use hopspan::{ApproxMode, Graph, PairSet, Rational};

use crate::commands::{
    build_hopset, build_missing, build_preserver, build_shortcut, build_slack, build_sourcewise, build_spanner,
    random_sources,
};
use crate::config::merge;
use crate::structure::Structure;
use crate::CliError;

pub const CSV_HEADER: [&str; 9] = ["kind", "n", "p", "params", "seed", "size", "claimed_stretch", "verified", "ms"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Hopset,
    Shortcut,
    MissingSpanner,
    DirectedPreserver,
    ReachPreserver,
    UndirectedPreserver,
    Emulator,
    NearAdditive,
    WeightedSpanner,
    Sourcewise,
    Slack,
}

impl ExperimentKind {
    fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }

    fn directed(self) -> bool {
        matches!(
            self,
            ExperimentKind::Hopset
                | ExperimentKind::Shortcut
                | ExperimentKind::MissingSpanner
                | ExperimentKind::DirectedPreserver
                | ExperimentKind::ReachPreserver
        )
    }

    fn unweighted(self) -> bool {
        matches!(self, ExperimentKind::Emulator | ExperimentKind::NearAdditive | ExperimentKind::ReachPreserver)
    }

    fn uses_p(self) -> bool {
        matches!(
            self,
            ExperimentKind::MissingSpanner
                | ExperimentKind::DirectedPreserver
                | ExperimentKind::ReachPreserver
                | ExperimentKind::UndirectedPreserver
                | ExperimentKind::Sourcewise
        )
    }

    fn uses_beta(self) -> bool {
        matches!(
            self,
            ExperimentKind::Hopset | ExperimentKind::Shortcut | ExperimentKind::Emulator | ExperimentKind::NearAdditive
        )
    }

    fn uses_k(self) -> bool {
        matches!(
            self,
            ExperimentKind::UndirectedPreserver
                | ExperimentKind::Emulator
                | ExperimentKind::NearAdditive
                | ExperimentKind::WeightedSpanner
                | ExperimentKind::Sourcewise
                | ExperimentKind::Slack
        )
    }

    fn uses_eps(self) -> bool {
        !matches!(
            self,
            ExperimentKind::Hopset | ExperimentKind::Shortcut | ExperimentKind::ReachPreserver | ExperimentKind::Emulator
        )
    }

    fn default_k(self) -> usize {
        match self {
            ExperimentKind::UndirectedPreserver | ExperimentKind::WeightedSpanner => 1,
            _ => 2,
        }
    }

    fn default_eps(self) -> Rational {
        match self {
            ExperimentKind::MissingSpanner | ExperimentKind::DirectedPreserver => Rational::zero(),
            ExperimentKind::Slack => Rational::new(1, 8),
            _ => Rational::new(1, 4),
        }
    }

    fn default_beta(self) -> usize {
        match self {
            ExperimentKind::Emulator | ExperimentKind::NearAdditive => 3,
            _ => 8,
        }
    }
}

/// Flags double as the experiment definition; a JSON config with the same keys
/// can hold the whole grid.
#[derive(Args, Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct ExperimentArgs {
    #[arg(long, value_enum)]
    pub kind: Option<ExperimentKind>,
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Demand pairs (or sources for sourcewise)
    #[arg(long, value_delimiter = ',')]
    pub p: Vec<usize>,
    /// Hopbounds (hopset), shortcut scales, or hopset parameters (emulators)
    #[arg(long, value_delimiter = ',')]
    pub beta: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    pub eps: Vec<Rational>,
    /// Base tradeoff exponents; only the closure base (a=2, b=0) is available
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    /// Seeds per cell (default 1)
    #[arg(long)]
    pub seeds: Option<usize>,
    /// First seed (default 0)
    #[arg(long)]
    pub seed: Option<u64>,
    /// Expected degree of generated graphs (default 4)
    #[arg(long)]
    pub degree: Option<f64>,
    /// Weights drawn from 1..=max-weight (default 8; unweighted kinds use 1)
    #[arg(long)]
    pub max_weight: Option<u64>,
    /// CSV output (stdout if absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Directory for two-column .dat plot files
    #[arg(long)]
    pub plot_dir: Option<PathBuf>,
    /// Write 0 in the ms column so output is byte-reproducible
    #[arg(long)]
    pub no_timing: bool,
    /// Worker threads (default: all cores)
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

#[derive(Clone, Debug)]
struct Cell {
    n: usize,
    p: Option<usize>,
    beta: Option<usize>,
    k: Option<usize>,
    eps: Option<Rational>,
    seed: u64,
}

impl Cell {
    fn params(&self) -> String {
        let mut parts = Vec::new();
        if let Some(b) = self.beta {
            parts.push(format!("beta={b}"));
        }
        if let Some(k) = self.k {
            parts.push(format!("k={k}"));
        }
        if let Some(e) = &self.eps {
            parts.push(format!("eps={e}"));
        }
        parts.join(";")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub kind: String,
    pub n: usize,
    pub p: Option<usize>,
    pub params: String,
    pub seed: u64,
    pub size: usize,
    pub claim: String,
    pub verified: bool,
    pub ms: u128,
}

fn list<T: Clone>(values: &[T], used: bool, default: T) -> Vec<Option<T>> {
    if !used {
        vec![None]
    } else if values.is_empty() {
        vec![Some(default)]
    } else {
        values.iter().cloned().map(Some).collect()
    }
}

fn cells(a: &ExperimentArgs, kind: ExperimentKind) -> Result<Vec<Cell>, CliError> {
    if a.n.is_empty() {
        return Err(CliError::Usage("empty grid: give at least one --n".into()));
    }
    if kind.uses_p() && a.p.is_empty() {
        return Err(CliError::Usage(format!("empty grid: {} needs --p", kind.name())));
    }
    let seeds = a.seeds.unwrap_or(1);
    if seeds == 0 {
        return Err(CliError::Usage("empty grid: --seeds 0".into()));
    }
    let first = a.seed.unwrap_or(0);
    let mut out = Vec::new();
    for &n in &a.n {
        for p in list(&a.p, kind.uses_p(), 0) {
            for beta in list(&a.beta, kind.uses_beta(), kind.default_beta()) {
                for k in list(&a.k, kind.uses_k(), kind.default_k()) {
                    for eps in list(&a.eps, kind.uses_eps(), kind.default_eps()) {
                        for j in 0..seeds as u64 {
                            out.push(Cell { n, p, beta, k, eps: eps.clone(), seed: first + j });
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn cell_graph(a: &ExperimentArgs, kind: ExperimentKind, cell: &Cell) -> Result<Graph, CliError> {
    let n = cell.n;
    let degree = a.degree.unwrap_or(4.0);
    let prob = if n > 1 { (degree / (n - 1) as f64).min(1.0) } else { 0.0 };
    let spec = if kind == ExperimentKind::Hopset {
        GeneratorSpec::gnp(n, prob).directed(true)
    } else if kind.directed() {
        // forward edges only, so double the probability to keep the degree
        GeneratorSpec::random_dag(n, (2.0 * prob).min(1.0))
    } else {
        GeneratorSpec::gnp(n, prob)
    };
    let weight = if kind.unweighted() { 1 } else { a.max_weight.unwrap_or(8) };
    // the graph depends on (n, seed) only, so cells differing in p share it
    Ok(generate_graph(&spec.weights(weight).seed(derive_seed(cell.seed, n as u64, 0)))?)
}

fn build(kind: ExperimentKind, g: &Graph, cell: &Cell) -> Result<Structure, CliError> {
    let seed = derive_seed(cell.seed, 1, 0);
    let eps = || cell.eps.clone().expect("kind uses eps");
    let pairs = |p: usize| -> Result<PairSet, CliError> { Ok(PairSet::random_reachable(g, p, derive_seed(cell.seed, 2, 0))?) };
    match kind {
        ExperimentKind::Hopset => build_hopset(g, "level", cell.beta.unwrap(), &ApproxMode::Exact, seed),
        ExperimentKind::Shortcut => build_shortcut(g, cell.beta.unwrap(), seed),
        ExperimentKind::MissingSpanner => build_missing(g, &[], cell.p, 1, cell.eps.clone(), seed),
        ExperimentKind::DirectedPreserver | ExperimentKind::UndirectedPreserver => {
            build_preserver(g, &pairs(cell.p.unwrap())?, &eps(), cell.k.unwrap_or(1), seed)
        }
        ExperimentKind::ReachPreserver => Ok(Structure::Subgraph(hopspan::derived::reachability_preserver_pipeline(
            g,
            &pairs(cell.p.unwrap())?,
            seed,
        )?)),
        ExperimentKind::Emulator => build_spanner(g, "emulator", cell.k, &Rational::new(1, 4), cell.beta.unwrap(), seed),
        ExperimentKind::NearAdditive => build_spanner(g, "near-additive", cell.k, &eps(), cell.beta.unwrap(), seed),
        ExperimentKind::WeightedSpanner => build_spanner(g, "weighted", cell.k, &eps(), 0, seed),
        ExperimentKind::Sourcewise => {
            let sources = random_sources(g.n(), cell.p.unwrap(), derive_seed(cell.seed, 3, 0))?;
            build_sourcewise(g, &sources, cell.k.unwrap(), &eps(), false, seed)
        }
        ExperimentKind::Slack => build_slack(g, &eps(), cell.k.unwrap(), &Rational::new(1, 4), seed),
    }
}

fn run_cell(a: &ExperimentArgs, kind: ExperimentKind, cell: &Cell) -> Result<Row, CliError> {
    let start = Instant::now();
    let g = cell_graph(a, kind, cell)?;
    let mut row = Row {
        kind: kind.name(),
        n: cell.n,
        p: cell.p,
        params: cell.params(),
        seed: cell.seed,
        size: 0,
        claim: String::new(),
        verified: false,
        ms: 0,
    };
    match build(kind, &g, cell) {
        Ok(s) => {
            row.size = s.size();
            row.claim = s.claim();
            row.verified = s.verify(&g).pass;
        }
        Err(CliError::Construction(msg)) => {
            eprintln!("cell n={} p={:?} {} seed={}: {msg}", cell.n, cell.p, row.params, cell.seed);
        }
        Err(e) => {
            return Err(CliError::Usage(format!(
                "cell n={} p={:?} {} seed={}: {e}",
                cell.n, cell.p, row.params, cell.seed
            )))
        }
    }
    if !a.no_timing {
        row.ms = start.elapsed().as_millis();
    }
    Ok(row)
}

/// Runs every cell on a bounded pool; rows come back in cell order.
pub fn run_experiment(a: &ExperimentArgs) -> Result<Vec<Row>, CliError> {
    let kind = a.kind.ok_or_else(|| CliError::Usage("missing --kind".into()))?;
    if a.a.unwrap_or(2.0) != 2.0 || a.b.unwrap_or(0.0) != 0.0 {
        return Err(CliError::Usage("only the closure base with a=2, b=0 is available".into()));
    }
    let grid = cells(a, kind)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = a.threads {
        pool = pool.num_threads(t);
    }
    let pool = pool.build().map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    pool.install(|| grid.par_iter().map(|c| run_cell(a, kind, c)).collect())
}

pub fn to_csv(rows: &[Row]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in rows {
        w.write_record([
            r.kind.clone(),
            r.n.to_string(),
            r.p.map_or_else(String::new, |p| p.to_string()),
            r.params.clone(),
            r.seed.to_string(),
            r.size.to_string(),
            r.claim.clone(),
            if r.verified { "PASS" } else { "FAIL" }.to_string(),
            r.ms.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

/// Mean size per curve. The x axis is `p` when several values were swept,
/// otherwise `n`; every other parameter identifies the curve.
pub fn plot_data(rows: &[Row]) -> BTreeMap<String, String> {
    let distinct_p = rows.iter().filter_map(|r| r.p).collect::<std::collections::BTreeSet<_>>().len();
    let by_p = distinct_p > 1;
    let mut curves: BTreeMap<String, BTreeMap<usize, (f64, usize)>> = BTreeMap::new();
    for r in rows {
        let (x, label) = if by_p {
            (r.p.unwrap_or(0), format!("n={};{}", r.n, r.params))
        } else {
            (r.n, format!("p={};{}", r.p.map_or_else(|| "-".into(), |p| p.to_string()), r.params))
        };
        let entry = curves.entry(label).or_default().entry(x).or_insert((0.0, 0));
        entry.0 += r.size as f64;
        entry.1 += 1;
    }
    let kind = rows.first().map_or_else(String::new, |r| r.kind.clone());
    curves
        .into_iter()
        .map(|(label, points)| {
            let mut text = format!("# {kind} {label}\n# {} mean_size\n", if by_p { "p" } else { "n" });
            for (x, (sum, count)) in points {
                let _ = writeln!(text, "{x} {}", sum / count as f64);
            }
            let file: String = format!("{kind}_{label}")
                .chars()
                .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' || c == '=' { c } else { '_' })
                .collect();
            (format!("{file}.dat"), text)
        })
        .collect()
}

pub fn experiment(args: ExperimentArgs) -> Result<(), CliError> {
    let config = args.config.clone();
    let a = merge(args, config.as_deref())?;
    let rows = run_experiment(&a)?;
    let csv = to_csv(&rows);
    match &a.out {
        Some(p) => fs::write(p, &csv).map_err(|e| CliError::Usage(format!("writing {}: {e}", p.display())))?,
        None => print!("{csv}"),
    }
    if let Some(dir) = &a.plot_dir {
        fs::create_dir_all(dir).map_err(|e| CliError::Usage(format!("creating {}: {e}", dir.display())))?;
        for (name, text) in plot_data(&rows) {
            let path = dir.join(name);
            fs::write(&path, text).map_err(|e| CliError::Usage(format!("writing {}: {e}", path.display())))?;
        }
    }
    let failed = rows.iter().filter(|r| !r.verified).count();
    eprintln!("{} cells, {failed} failed", rows.len());
    if failed > 0 {
        return Err(CliError::Verification(format!("{failed} experiment cells")));
    }
    Ok(())
}
