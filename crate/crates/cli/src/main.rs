use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use rainbow_core::auxiliary::{
    build_dg, build_dprime, build_dstar, build_gstar, classify_extremal, dominant_analysis,
    AuxDigraph, DEFAULT_BETA, DEFAULT_GAMMA,
};
use rainbow_core::experiment::{
    analyze, run_experiment, AnalysisOptions, EngineKind, ExperimentConfig,
};
use rainbow_core::generators::{Family, InstanceSpec};
use rainbow_core::search::{
    color_coding_trials, exhaustive_k_connect, find_proper_path, find_rainbow_path_cc,
    is_rainbow_connected, proper_connectivity_witness, rainbow_k_connect,
};
use rainbow_core::spanning_tree::{criterion_oracle, find_rainbow_spanning_tree};
use rainbow_core::{
    parse_graph, reduce, write_graph, Color, EdgeColoredGraph, RainbowQuery, ReductionMode,
    Threshold, DEFAULT_MAX_LEN,
};

#[derive(Parser)]
#[command(name = "rainbow", version, about = "Edge-colored graph toolkit")]
struct Cli {
    /// Worker threads for parallel phases (defaults to all cores)
    #[arg(long, global = true, env = "RAINBOW_WORKERS")]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Structural,
    Minimal,
}

impl From<Mode> for ReductionMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Structural => ReductionMode::Structural,
            Mode::Minimal => ReductionMode::Minimal,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Exact,
    Cc,
    Auto,
}

impl From<EngineArg> for EngineKind {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Exact => EngineKind::Exact,
            EngineArg::Cc => EngineKind::ColorCoding,
            EngineArg::Auto => EngineKind::Auto,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Dg,
    Dstar,
    Gstar,
    Dprime,
    Dominant,
    Extremal,
}

#[derive(clap::Args)]
struct SearchArgs {
    #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
    max_len: usize,
    #[arg(long, value_enum, default_value = "auto")]
    engine: EngineArg,
    /// Color-coding trials (default: ceil(e^max_len * ln 100))
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Node-expansion cap before the auto engine falls back to color coding
    #[arg(long, default_value_t = 200_000)]
    node_cap: u64,
}

impl SearchArgs {
    fn options(&self) -> AnalysisOptions {
        AnalysisOptions {
            max_len: self.max_len,
            engine: self.engine.into(),
            trials: self.trials,
            seed: self.seed,
            node_cap: self.node_cap,
            ..AnalysisOptions::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Matchings plus one (two-clique family)
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        palette: Option<usize>,
        /// Color-degree target such as 10 or 21/2 (random family; default n/2)
        #[arg(long)]
        target: Option<Threshold>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Delete edges while keeping every color degree at or above a threshold
    Reduce {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "minimal")]
        mode: Mode,
        /// Defaults to the input's minimum color degree
        #[arg(long)]
        threshold: Option<Threshold>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build an auxiliary digraph or diagnostic table
    Aux {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "dg")]
        emit: Emit,
        #[arg(long, default_value_t = DEFAULT_BETA)]
        beta: f64,
        #[arg(long, default_value_t = DEFAULT_GAMMA)]
        gamma: f64,
    },
    /// Find a rainbow path between two vertices
    Path {
        input: PathBuf,
        u: usize,
        v: usize,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_delimiter = ',')]
        forbid_colors: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        forbid_vertices: Vec<usize>,
    },
    /// Find a properly colored path between two vertices
    Proper {
        input: PathBuf,
        u: usize,
        v: usize,
        /// Defaults to n - 1
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Check rainbow (or proper) connectivity over all pairs
    Connect {
        input: PathBuf,
        #[arg(long)]
        proper: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Find k internally disjoint paths with rainbow union
    Kconnect {
        input: PathBuf,
        u: usize,
        v: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
        /// Exhaustive search instead of the iterative procedure
        #[arg(long)]
        exhaustive: bool,
    },
    /// Find a rainbow spanning tree
    Rst {
        input: PathBuf,
        /// Also evaluate the color-removal criterion exhaustively
        #[arg(long)]
        oracle: bool,
    },
    /// Run a generate/reduce/measure sweep and print the CSV report
    Experiment {
        #[arg(long, default_value = "random_colored")]
        family: Family,
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',')]
        k_list: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        k_pairs: usize,
        /// Two-clique family parameter
        #[arg(long, default_value_t = 2)]
        family_k: usize,
        /// Random family target is n/2 plus this
        #[arg(long, default_value_t = 0)]
        target_offset: u64,
        #[arg(long)]
        palette: Option<usize>,
        #[arg(long, value_enum, default_value = "minimal")]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
        #[arg(long, value_enum, default_value = "auto")]
        engine: EngineArg,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 200_000)]
        node_cap: u64,
        /// Directory for report.csv, timings.csv and instances/
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run every invariant on one instance; exits with status 1 on a breach
    Validate {
        input: PathBuf,
        #[arg(long)]
        threshold: Option<Threshold>,
        #[arg(long, value_enum, default_value = "minimal")]
        mode: Mode,
        #[command(flatten)]
        search: SearchArgs,
    },
}

fn read_input(path: &PathBuf) -> Result<EdgeColoredGraph> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => Ok(io::stdout().write_all(text.as_bytes())?),
    }
}

fn digraph_text(d: &AuxDigraph) -> String {
    let mut out = format!("{} {}\n", d.n(), d.arcs().len());
    for a in d.arcs() {
        out.push_str(&format!("{} {} {}\n", a.from, a.to, a.color));
    }
    out
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen {
            family,
            n,
            k,
            seed,
            palette,
            target,
            output,
        } => {
            let spec = InstanceSpec {
                family,
                n,
                k,
                seed,
                palette,
                target,
            };
            emit(&output, &write_graph(&spec.generate()?))?;
        }
        Command::Reduce {
            input,
            mode,
            threshold,
            output,
        } => {
            let g = read_input(&input)?;
            let t = match threshold {
                Some(t) => t,
                None => Threshold::integer(g.min_color_degree()? as u64),
            };
            let (h, report) = reduce(&g, t, mode.into())?;
            emit(&output, &write_graph(&h))?;
            let removed: String = report
                .removed_edges
                .iter()
                .map(|e| format!("REMOVED {} {} {}\n", e.u, e.v, e.color))
                .collect();
            if output.is_some() {
                print!("{removed}");
            } else {
                eprint!("{removed}");
            }
        }
        Command::Aux {
            input,
            emit: what,
            beta,
            gamma,
        } => {
            let g = read_input(&input)?;
            let dg = build_dg(&g);
            let text = match what {
                Emit::Dg => digraph_text(&dg),
                Emit::Dstar => digraph_text(&build_dstar(&dg)?),
                Emit::Gstar => {
                    let gs = build_gstar(&dg)?;
                    let mut out = format!("{} {}\n", gs.n, gs.m());
                    for (u, v, c) in &gs.edges {
                        out.push_str(&format!("{u} {v} {c}\n"));
                    }
                    out
                }
                Emit::Dprime => {
                    let table = dominant_analysis(&g, &dg, beta, gamma)?;
                    digraph_text(&build_dprime(&g, &table.u_set)?)
                }
                Emit::Dominant => dominant_analysis(&g, &dg, beta, gamma)?.to_text(),
                Emit::Extremal => classify_extremal(&g, &dg, beta)?.to_text(),
            };
            emit(&None, &text)?;
        }
        Command::Path {
            input,
            u,
            v,
            search,
            forbid_colors,
            forbid_vertices,
        } => {
            let g = read_input(&input)?;
            let found = match search.engine {
                EngineArg::Cc => {
                    if !forbid_colors.is_empty() || !forbid_vertices.is_empty() {
                        bail!("forbidden sets need the exact engine");
                    }
                    let trials = search
                        .trials
                        .unwrap_or_else(|| color_coding_trials(search.max_len.min(20)));
                    find_rainbow_path_cc(&g, u, v, search.max_len, trials, search.seed)?
                }
                _ => RainbowQuery::new(u, v, search.max_len)
                    .forbid_colors(forbid_colors.into_iter().map(Color))
                    .forbid_vertices(forbid_vertices)
                    .run(&g)?
                    .found(),
            };
            match found {
                Some(p) => println!("{p}"),
                None => println!("NONE"),
            }
        }
        Command::Proper {
            input,
            u,
            v,
            max_len,
        } => {
            let g = read_input(&input)?;
            let max_len = max_len.unwrap_or(g.n().saturating_sub(1).max(1));
            match find_proper_path(&g, u, v, max_len)? {
                Some(p) => println!("{p}"),
                None => println!("NONE"),
            }
        }
        Command::Connect {
            input,
            proper,
            search,
        } => {
            let g = read_input(&input)?;
            if proper {
                match proper_connectivity_witness(&g)? {
                    None => println!("properly_connected true"),
                    Some((u, v)) => {
                        println!("properly_connected false");
                        println!("missing_pair {u}-{v}");
                    }
                }
            } else {
                let r = is_rainbow_connected(&g, search.max_len, search.options().engine())?;
                println!("rainbow_connected {}", r.connected);
                if let Some((u, v)) = r.worst_pair {
                    println!("worst_pair {u}-{v}");
                }
                if let Some(l) = r.worst_len {
                    println!("worst_len {l}");
                }
                println!("fallbacks {}", r.fallbacks);
            }
        }
        Command::Kconnect {
            input,
            u,
            v,
            k,
            max_len,
            exhaustive,
        } => {
            let g = read_input(&input)?;
            let cert = if exhaustive {
                exhaustive_k_connect(&g, u, v, k, max_len)?
            } else {
                rainbow_k_connect(&g, u, v, k, max_len)?
            };
            match cert {
                Some(c) => {
                    for p in &c.paths {
                        println!("{p}");
                    }
                }
                None => println!("NONE"),
            }
        }
        Command::Rst { input, oracle } => {
            let g = read_input(&input)?;
            match find_rainbow_spanning_tree(&g) {
                Some(t) => print!("{t}"),
                None => println!("NONE"),
            }
            if oracle {
                let verdict = criterion_oracle(&g)?;
                match verdict.witness {
                    None => println!("criterion holds"),
                    Some(colors) => {
                        let list: Vec<String> = colors.iter().map(|c| c.to_string()).collect();
                        println!("criterion fails: removing colors {}", list.join(","));
                    }
                }
            }
        }
        Command::Experiment {
            family,
            n_list,
            samples,
            seed,
            k_list,
            k_pairs,
            family_k,
            target_offset,
            palette,
            mode,
            max_len,
            engine,
            trials,
            node_cap,
            out,
        } => {
            let config = ExperimentConfig {
                family,
                family_k,
                n_list,
                samples,
                seed,
                target_offset,
                palette,
                k_list,
                k_pairs,
                analysis: AnalysisOptions {
                    mode: mode.into(),
                    max_len,
                    engine: engine.into(),
                    trials,
                    node_cap,
                    ..AnalysisOptions::default()
                },
                out_dir: out,
            };
            let report = run_experiment(&config)?;
            print!("{}", report.to_csv()?);
        }
        Command::Validate {
            input,
            threshold,
            mode,
            search,
        } => {
            let g = read_input(&input)?;
            let opts = AnalysisOptions {
                threshold,
                mode: mode.into(),
                ..search.options()
            };
            let analysis = analyze(&g, &opts)?;
            print!("{}", analysis.to_text());
            if !analysis.is_clean() {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
