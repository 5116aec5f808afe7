use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use log::{info, warn};
use treebias::graphgen::{giant_component, read_edge_list, write_edge_list};
use treebias::harness::{
    generate_power_law_graph, load_source, run_table1_experiment, ExperimentConfig, FitConfig,
    FitSet, ValidationReport,
};
use treebias::sampler::{bfs_tree, tree_degree_histogram};
use treebias::stats::ccdf;
use treebias::FitMethod;

/// Exit status of `validate` when a bound sweep finds a violation.
const EXIT_BOUNDS_FAILED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "treebias",
    version,
    about = "Measure the exponent bias of BFS-sampled power-law graphs"
)]
struct Cli {
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a configuration-model power-law graph as an edge list.
    Generate {
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        n: usize,
        /// Largest degree; defaults to n - 1.
        #[arg(long)]
        k_max: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Keep self-loops and parallel edges.
        #[arg(long)]
        multigraph: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// BFS-sample one tree; writes its edge list and degree histogram.
    Sample {
        #[arg(long)]
        graph: PathBuf,
        /// Root vertex id as it appears in the edge list.
        #[arg(long)]
        root: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Print power-law fits as JSON.
    Fit {
        #[command(flatten)]
        input: FitInput,
        #[arg(long, default_value_t = 10)]
        k_min: u64,
        /// Restrict to one estimator.
        #[arg(long, value_parser = parse_method)]
        method: Option<FitMethod>,
    },
    /// Run the degree-group experiment from a JSON config.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the validators on a config's graph; exits nonzero if a bound sweep fails.
    Validate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct FitInput {
    /// Fit the degree sequence of an edge-list graph.
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Fit a `degree,count` CSV.
    #[arg(long)]
    histogram: Option<PathBuf>,
}

fn parse_method(s: &str) -> Result<FitMethod, String> {
    match s {
        "loglog_regression_ccdf" | "regression" => Ok(FitMethod::LoglogRegressionCcdf),
        "mle_hill" | "mle" => Ok(FitMethod::MleHill),
        _ => Err(format!("unknown method '{s}' (expected regression or mle)")),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global()
        .context("building thread pool")?;
    match cli.command {
        Command::Generate {
            gamma,
            n,
            k_max,
            seed,
            multigraph,
            out,
        } => {
            let g = generate_power_law_graph(gamma, n, k_max, seed, !multigraph)?;
            write_edge_list(&g, &out)?;
            info!(
                "wrote {} vertices, {} edges to {}",
                g.vertex_count(),
                g.edge_count(),
                out.display()
            );
        }
        Command::Sample {
            graph,
            root,
            seed,
            out,
        } => sample(&graph, root, seed, &out)?,
        Command::Fit {
            input,
            k_min,
            method,
        } => {
            let degrees = match (input.edges, input.histogram) {
                (Some(path), _) => read_edge_list(&path)?.graph.degrees(),
                (_, Some(path)) => read_histogram(&path)?
                    .into_iter()
                    .flat_map(|(k, c)| std::iter::repeat_n(k, c as usize))
                    .collect(),
                _ => unreachable!("clap requires one input"),
            };
            let mut hist = BTreeMap::new();
            for &d in &degrees {
                *hist.entry(d).or_insert(0) += 1;
            }
            let fit = FitConfig {
                k_min,
                methods: method.map_or_else(|| FitConfig::default().methods, |m| vec![m]),
            };
            let fits = FitSet::compute(&ccdf(&hist)?, &degrees, &fit);
            println!("{}", serde_json::to_string_pretty(&fits)?);
            if fits.regression.is_none() && fits.mle.is_none() {
                bail!("no fit succeeded: {}", fits.errors.join("; "));
            }
        }
        Command::Experiment { config, seed, out } => {
            let cfg = load_config(&config, seed)?;
            let report = run_table1_experiment(&cfg)?;
            report.write_to_dir(&out)?;
            for g in &report.groups {
                let gamma = g
                    .fits
                    .primary()
                    .map_or("-".to_string(), |f| format!("{:.3}", f.gamma_hat));
                info!(
                    "{} {}: {} trees, gamma {}",
                    g.label,
                    g.band,
                    g.trees.len(),
                    gamma
                );
            }
        }
        Command::Validate { config, seed, out } => {
            let cfg = load_config(&config, seed)?;
            let loaded = load_source(&cfg)?;
            let giant = giant_component(&loaded.graph)?;
            let report =
                ValidationReport::run(&giant.graph, cfg.replicates, cfg.seed, &cfg.validation)?;
            fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            let path = out.join("validation.json");
            fs::write(&path, serde_json::to_string_pretty(&report)? + "\n")
                .with_context(|| format!("writing {}", path.display()))?;
            if !report.bounds.passed {
                warn!("{} bound violation(s)", report.bounds.violations.len());
                return Ok(ExitCode::from(EXIT_BOUNDS_FAILED));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn load_config(path: &Path, seed: Option<u64>) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::from_path(path).context("loading config")?;
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

fn sample(graph: &Path, root: u64, seed: u64, out: &Path) -> Result<()> {
    let el = read_edge_list(graph)?;
    let internal = el
        .id_map
        .binary_search(&root)
        .map_err(|_| anyhow::anyhow!("root {root} does not appear in {}", graph.display()))?;
    let tree = bfs_tree(&el.graph, internal, seed)?;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let create = |name: &str| {
        let path = out.join(name);
        File::create(&path)
            .map(BufWriter::new)
            .with_context(|| format!("creating {}", path.display()))
    };

    let mut edges = create("tree.txt")?;
    for (u, v) in tree.tree_edges() {
        writeln!(edges, "{} {}", el.id_map[u], el.id_map[v])?;
    }
    edges.flush()?;

    let mut hist = create("histogram.csv")?;
    writeln!(hist, "degree,count")?;
    for (k, c) in tree_degree_histogram(&tree) {
        writeln!(hist, "{k},{c}")?;
    }
    hist.flush()?;
    info!(
        "tree from {root} covers {} of {} vertices",
        tree.covered,
        el.graph.vertex_count()
    );
    Ok(())
}

/// Reads `degree,count` rows; a non-numeric first line is taken as a header.
fn read_histogram(path: &Path) -> Result<BTreeMap<u64, u64>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut hist = BTreeMap::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parsed = line.split_once(',').and_then(|(k, c)| {
            Some((k.trim().parse::<u64>().ok()?, c.trim().parse::<u64>().ok()?))
        });
        match parsed {
            Some((k, c)) => *hist.entry(k).or_insert(0) += c,
            None if i == 0 => continue,
            None => bail!(
                "{}:{}: expected 'degree,count', got '{line}'",
                path.display(),
                i + 1
            ),
        }
    }
    Ok(hist)
}
