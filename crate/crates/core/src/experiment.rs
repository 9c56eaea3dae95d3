//! Experiment sweeps over generated instances, and the per-instance invariant
//! checks they share with single-file validation.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::auxiliary::{
    build_dg, build_dprime, build_dstar, build_gstar, dominant_analysis, DEFAULT_BETA,
    DEFAULT_GAMMA,
};
use crate::error::{Error, Result};
use crate::format::{read_graph_file, write_graph};
use crate::generators::{Family, InstanceSpec};
use crate::graph::{EdgeColoredGraph, Threshold};
use crate::reduction::{reduce, reduce_structural, ReductionMode};
use crate::search::{
    color_coding_trials, is_rainbow_connected, proper_connectivity_witness, rainbow_k_connect,
    Engine, RainbowConnectivity, DEFAULT_MAX_LEN,
};

/// First line of every report; bump when columns change.
pub const REPORT_SCHEMA: &str = "# rainbow-experiment-report v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineKind {
    Exact,
    ColorCoding,
    Auto,
}

impl FromStr for EngineKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(EngineKind::Exact),
            "cc" | "color-coding" => Ok(EngineKind::ColorCoding),
            "auto" => Ok(EngineKind::Auto),
            _ => Err(Error::InvalidParameter(format!("unknown engine {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisOptions {
    /// Reduction threshold; defaults to the input's minimum color degree.
    pub threshold: Option<Threshold>,
    pub mode: ReductionMode,
    pub max_len: usize,
    pub engine: EngineKind,
    /// Node-expansion cap for the exact search under [`EngineKind::Auto`].
    pub node_cap: u64,
    /// Color-coding trials; defaults to `color_coding_trials(max_len)`.
    pub trials: Option<usize>,
    pub seed: u64,
    /// Proper connectivity is only checked up to this order.
    pub proper_limit: usize,
    pub beta: f64,
    pub gamma: f64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            threshold: None,
            mode: ReductionMode::Minimal,
            max_len: DEFAULT_MAX_LEN,
            engine: EngineKind::Auto,
            node_cap: 200_000,
            trials: None,
            seed: 0,
            proper_limit: 12,
            beta: DEFAULT_BETA,
            gamma: DEFAULT_GAMMA,
        }
    }
}

impl AnalysisOptions {
    pub fn engine(&self) -> Engine {
        let trials = self
            .trials
            .unwrap_or_else(|| color_coding_trials(self.max_len.min(20)));
        match self.engine {
            EngineKind::Exact => Engine::Exact,
            EngineKind::ColorCoding => Engine::ColorCoding {
                trials,
                seed: self.seed,
            },
            EngineKind::Auto => Engine::Auto {
                node_cap: self.node_cap,
                trials,
                seed: self.seed,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check {
        name,
        passed,
        detail,
    }
}

/// Everything measured on one instance. All invariants are evaluated on the
/// reduced graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub n: usize,
    pub m: usize,
    pub delta_c: usize,
    pub threshold: Threshold,
    pub reduced: EdgeColoredGraph,
    pub reduced_delta_c: usize,
    pub dg_min_out: usize,
    /// `δ⁺(D_G) - (n/2 - √n)`
    pub out_degree_margin: f64,
    pub dprime_min_out: usize,
    pub gstar_m: usize,
    /// `None` for graphs with fewer than two vertices.
    pub rainbow: Option<RainbowConnectivity>,
    /// `None` when `n` is outside `3..=proper_limit`.
    pub proper_connected: Option<bool>,
    pub checks: Vec<Check>,
}

impl Analysis {
    pub fn breaches(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn is_clean(&self) -> bool {
        self.breaches().next().is_none()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
        let _ = writeln!(out, "n {}", self.n);
        let _ = writeln!(out, "m {}", self.m);
        let _ = writeln!(out, "delta_c {}", self.delta_c);
        let _ = writeln!(out, "threshold {}", self.threshold);
        let _ = writeln!(out, "reduced_m {}", self.reduced.m());
        let _ = writeln!(out, "reduced_delta_c {}", self.reduced_delta_c);
        let _ = writeln!(out, "dg_min_out {}", self.dg_min_out);
        let _ = writeln!(out, "out_degree_margin {:.4}", self.out_degree_margin);
        let _ = writeln!(out, "dprime_min_out {}", self.dprime_min_out);
        let _ = writeln!(out, "gstar_m {}", self.gstar_m);
        let rainbow = self.rainbow.as_ref();
        let _ = writeln!(
            out,
            "rainbow_connected {}",
            opt(rainbow.map(|r| r.connected.to_string()))
        );
        let _ = writeln!(
            out,
            "worst_pair {}",
            opt(rainbow
                .and_then(|r| r.worst_pair)
                .map(|(u, v)| format!("{u}-{v}")))
        );
        let _ = writeln!(
            out,
            "worst_len {}",
            opt(rainbow.and_then(|r| r.worst_len).map(|l| l.to_string()))
        );
        let _ = writeln!(
            out,
            "proper_connected {}",
            opt(self.proper_connected.map(|p| p.to_string()))
        );
        for c in &self.checks {
            if c.passed {
                let _ = writeln!(out, "OK {}", c.name);
            } else {
                let _ = writeln!(out, "BREACH {}: {}", c.name, c.detail);
            }
        }
        out
    }
}

/// `d > n/2 - √n`, decided in integers: `n - 2d < 2√n` iff `n - 2d < 0` or
/// `(n - 2d)² < 4n`.
pub fn exceeds_half_minus_root(d: usize, n: usize) -> bool {
    let gap = n as i128 - 2 * d as i128;
    gap < 0 || gap * gap < 4 * n as i128
}

/// First edge (by index) whose deletion keeps every color degree at least
/// `t`; rebuilds the graph for each candidate.
pub fn first_deletable_edge(g: &EdgeColoredGraph, t: Threshold) -> Option<usize> {
    (0..g.m()).find(|&i| {
        g.retain_edges(|j, _| j != i)
            .color_degrees()
            .iter()
            .all(|&d| t.admits(d))
    })
}

/// Reduces `g` and evaluates every structural invariant on the result.
pub fn analyze(g: &EdgeColoredGraph, opts: &AnalysisOptions) -> Result<Analysis> {
    let n = g.n();
    let delta_c = g.min_color_degree()?;
    let t = opts.threshold.unwrap_or(Threshold::integer(delta_c as u64));
    let (h, _) = reduce(g, t, opts.mode)?;
    let hd = h.min_color_degree()?;
    let mut checks = Vec::new();

    checks.push(check(
        "threshold_preserved",
        h.color_degrees().iter().all(|&d| t.admits(d)),
        format!("minimum color degree {hd} below {t}"),
    ));
    let not_stars: Vec<String> = h
        .color_classes()
        .iter()
        .filter(|c| !c.is_star_forest())
        .map(|c| c.color.to_string())
        .collect();
    checks.push(check(
        "star_forests",
        not_stars.is_empty(),
        format!("color classes {} are not star forests", not_stars.join(" ")),
    ));
    match opts.mode {
        ReductionMode::Minimal => {
            let deletable = first_deletable_edge(&h, t);
            checks.push(check(
                "edge_minimal",
                deletable.is_none(),
                deletable
                    .map(|i| format!("edge {}-{} is deletable", h.edge(i).u, h.edge(i).v))
                    .unwrap_or_default(),
            ));
        }
        ReductionMode::Structural => {
            let (_, again) = reduce_structural(&h, t)?;
            checks.push(check(
                "structural_fixpoint",
                again.removed_edges.is_empty(),
                format!("{} more edges removable", again.removed_edges.len()),
            ));
        }
    }

    let dg = build_dg(&h);
    let dstar = build_dstar(&dg)?;
    let gstar = build_gstar(&dg)?;
    checks.push(check(
        "dg_out_colors_distinct",
        dg.out_colors_distinct(),
        "some vertex has two out-arcs of one color".into(),
    ));
    checks.push(check(
        "arc_partition",
        dg.arcs().len() == dstar.arcs().len() + 2 * gstar.m(),
        format!(
            "{} arcs vs {} one-way + 2 x {} mutual",
            dg.arcs().len(),
            dstar.arcs().len(),
            gstar.m()
        ),
    ));
    let half = 2 * hd >= n;
    let dg_min_out = dg.min_out_degree();
    if half {
        checks.push(check(
            "out_degree_bound",
            exceeds_half_minus_root(dg_min_out, n),
            format!("min out-degree {dg_min_out} is at most n/2 - sqrt(n)"),
        ));
    }
    let table = dominant_analysis(&h, &dg, opts.beta, opts.gamma)?;
    let dprime = build_dprime(&h, &table.u_set)?;
    let dprime_ok = (0..n).all(|v| dprime.out_degree(v) == h.color_degrees()[v])
        && dprime.out_colors_distinct();
    checks.push(check(
        "dprime_out_degree",
        dprime_ok,
        "out-degrees in D' differ from color degrees".into(),
    ));
    checks.push(check(
        "gstar_proper",
        gstar.is_properly_colored(),
        "mutual graph is not properly colored".into(),
    ));

    let rainbow = if n >= 2 {
        Some(is_rainbow_connected(&h, opts.max_len, opts.engine())?)
    } else {
        None
    };
    if let Some(r) = rainbow
        .as_ref()
        .filter(|_| half && opts.max_len >= DEFAULT_MAX_LEN)
    {
        let ok = r.connected && r.worst_len.is_some_and(|l| l <= DEFAULT_MAX_LEN);
        let (u, v) = r.worst_pair.unwrap_or_default();
        checks.push(check(
            "rainbow_length",
            ok,
            format!("no rainbow path of length at most {DEFAULT_MAX_LEN} between {u} and {v}"),
        ));
    }
    let proper_connected = if (3..=opts.proper_limit).contains(&n) {
        let witness = proper_connectivity_witness(&h)?;
        if half {
            let (u, v) = witness.unwrap_or_default();
            checks.push(check(
                "properly_connected",
                witness.is_none(),
                format!("no properly colored path between {u} and {v}"),
            ));
        }
        Some(witness.is_none())
    } else {
        None
    };

    Ok(Analysis {
        n,
        m: g.m(),
        delta_c,
        threshold: t,
        reduced_delta_c: hd,
        dg_min_out,
        out_degree_margin: dg_min_out as f64 - (n as f64 / 2.0 - (n as f64).sqrt()),
        dprime_min_out: dprime.min_out_degree(),
        gstar_m: gstar.m(),
        rainbow,
        proper_connected,
        checks,
        reduced: h,
    })
}

pub fn validate_file(path: impl AsRef<Path>, opts: &AnalysisOptions) -> Result<Analysis> {
    analyze(&read_graph_file(path)?, opts)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub family: Family,
    /// `k` parameter of the two-clique family.
    pub family_k: usize,
    pub n_list: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    /// Random family: color-degree target `n/2 + target_offset`.
    pub target_offset: u64,
    pub palette: Option<usize>,
    pub k_list: Vec<usize>,
    /// Vertex pairs sampled per instance for each `k`.
    pub k_pairs: usize,
    pub analysis: AnalysisOptions,
    pub out_dir: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            family: Family::RandomColored,
            family_k: 2,
            n_list: vec![20],
            samples: 1,
            seed: 0,
            target_offset: 0,
            palette: None,
            k_list: Vec::new(),
            k_pairs: 10,
            analysis: AnalysisOptions::default(),
            out_dir: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KTally {
    pub k: usize,
    pub successes: usize,
    pub attempts: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RowMeasures {
    pub analysis: Analysis,
    pub kconnect: Vec<KTally>,
    /// Certificates that failed re-validation.
    pub invalid_certificates: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Timings {
    pub generate_ms: f64,
    pub analyze_ms: f64,
    pub kconnect_ms: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    Ok,
    Counterexample,
    GenerationFailed,
}

impl RowStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            RowStatus::Ok => "OK",
            RowStatus::Counterexample => "COUNTEREXAMPLE",
            RowStatus::GenerationFailed => "GEN_FAILED",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub spec: InstanceSpec,
    pub sample: usize,
    /// Generation or analysis failure message on `Err`.
    pub result: std::result::Result<RowMeasures, String>,
    pub timings: Timings,
}

impl ExperimentRow {
    pub fn status(&self) -> RowStatus {
        match &self.result {
            Err(_) => RowStatus::GenerationFailed,
            Ok(m) if m.analysis.is_clean() && m.invalid_certificates.is_empty() => RowStatus::Ok,
            Ok(_) => RowStatus::Counterexample,
        }
    }

    /// File name of the persisted instance, relative to the output directory.
    pub fn instance_name(&self) -> String {
        format!(
            "instances/{}_n{}_s{}.txt",
            self.spec.family, self.spec.n, self.sample
        )
    }

    pub fn reduced_instance_name(&self) -> String {
        format!(
            "instances/{}_n{}_s{}_reduced.txt",
            self.spec.family, self.spec.n, self.sample
        )
    }

    fn detail(&self) -> String {
        match &self.result {
            Err(e) => e.clone(),
            Ok(m) => m
                .analysis
                .breaches()
                .map(|c| format!("{}: {}", c.name, c.detail))
                .chain(m.invalid_certificates.iter().cloned())
                .collect::<Vec<_>>()
                .join("; "),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub k_list: Vec<usize>,
    pub rows: Vec<ExperimentRow>,
}

impl ExperimentReport {
    pub fn counterexamples(&self) -> impl Iterator<Item = &ExperimentRow> {
        self.rows
            .iter()
            .filter(|r| r.status() == RowStatus::Counterexample)
    }

    /// The report: schema line, column header, one record per row. Contains
    /// no timings, so identical configs give identical bytes.
    pub fn to_csv(&self) -> Result<String> {
        let mut header: Vec<String> = [
            "family",
            "n",
            "sample",
            "seed",
            "instance",
            "m",
            "delta_c",
            "threshold",
            "reduced_m",
            "dg_min_out",
            "out_degree_margin",
            "dprime_min_out",
            "gstar_m",
            "rainbow_connected",
            "worst_pair",
            "worst_len",
            "fallbacks",
            "proper_connected",
        ]
        .map(String::from)
        .to_vec();
        header.extend(self.k_list.iter().map(|k| format!("k{k}_connected")));
        header.extend(["status", "detail"].map(String::from));

        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&header).map_err(csv_error)?;
        for row in &self.rows {
            let mut rec = vec![
                row.spec.family.to_string(),
                row.spec.n.to_string(),
                row.sample.to_string(),
                row.spec.seed.to_string(),
                row.instance_name(),
            ];
            match &row.result {
                Ok(m) => {
                    let a = &m.analysis;
                    let r = a.rainbow.as_ref();
                    rec.extend([
                        a.m.to_string(),
                        a.delta_c.to_string(),
                        a.threshold.to_string(),
                        a.reduced.m().to_string(),
                        a.dg_min_out.to_string(),
                        format!("{:.4}", a.out_degree_margin),
                        a.dprime_min_out.to_string(),
                        a.gstar_m.to_string(),
                        r.map(|r| r.connected.to_string()).unwrap_or_default(),
                        r.and_then(|r| r.worst_pair)
                            .map(|(u, v)| format!("{u}-{v}"))
                            .unwrap_or_default(),
                        r.and_then(|r| r.worst_len)
                            .map(|l| l.to_string())
                            .unwrap_or_default(),
                        r.map(|r| r.fallbacks.to_string()).unwrap_or_default(),
                        a.proper_connected
                            .map(|p| p.to_string())
                            .unwrap_or_default(),
                    ]);
                    rec.extend(
                        m.kconnect
                            .iter()
                            .map(|t| format!("{}/{}", t.successes, t.attempts)),
                    );
                }
                Err(_) => rec.extend(std::iter::repeat_n(String::new(), header.len() - 7)),
            }
            rec.push(row.status().as_str().into());
            rec.push(row.detail());
            w.write_record(&rec).map_err(csv_error)?;
        }
        let body = String::from_utf8(w.into_inner().map_err(|e| csv_error(e.into_error()))?)
            .expect("csv output is utf-8");
        Ok(format!("{REPORT_SCHEMA}\n{body}"))
    }

    pub fn timings_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "family",
            "n",
            "sample",
            "generate_ms",
            "analyze_ms",
            "kconnect_ms",
        ])
        .map_err(csv_error)?;
        for row in &self.rows {
            let t = row.timings;
            w.write_record([
                row.spec.family.to_string(),
                row.spec.n.to_string(),
                row.sample.to_string(),
                format!("{:.3}", t.generate_ms),
                format!("{:.3}", t.analyze_ms),
                format!("{:.3}", t.kconnect_ms),
            ])
            .map_err(csv_error)?;
        }
        let body = w.into_inner().map_err(|e| csv_error(e.into_error()))?;
        Ok(String::from_utf8(body).expect("csv output is utf-8"))
    }
}

fn csv_error(e: impl std::fmt::Display) -> Error {
    Error::Io(format!("csv: {e}"))
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}

/// Per-sample seed: SplitMix64 over the config seed, `n` and the sample index.
pub fn sample_seed(seed: u64, n: usize, sample: usize) -> u64 {
    let mut z = seed
        ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
        ^ (sample as u64).wrapping_mul(0xc2b2_ae3d_27d4_eb4f);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

/// Runs every (n, sample) job on the rayon pool and returns rows ordered by
/// (position in `n_list`, sample). With `out_dir` set, writes `report.csv`,
/// `timings.csv` and every generated and reduced instance.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    if config.n_list.is_empty() || config.samples == 0 {
        return Err(Error::InvalidParameter(
            "need at least one n and one sample".into(),
        ));
    }
    if config.k_list.contains(&0) {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if let Some(dir) = &config.out_dir {
        let inst = dir.join("instances");
        fs::create_dir_all(&inst).map_err(|e| io_error(&inst, e))?;
    }
    let jobs: Vec<(usize, usize)> = config
        .n_list
        .iter()
        .flat_map(|&n| (0..config.samples).map(move |s| (n, s)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(n, s)| run_sample(config, n, s))
        .collect::<Result<Vec<_>>>()?;
    let report = ExperimentReport {
        k_list: config.k_list.clone(),
        rows,
    };
    if let Some(dir) = &config.out_dir {
        for (name, text) in [
            ("report.csv", report.to_csv()?),
            ("timings.csv", report.timings_csv()?),
        ] {
            let path = dir.join(name);
            fs::write(&path, text).map_err(|e| io_error(&path, e))?;
        }
    }
    Ok(report)
}

fn run_sample(config: &ExperimentConfig, n: usize, sample: usize) -> Result<ExperimentRow> {
    let seed = sample_seed(config.seed, n, sample);
    let spec = InstanceSpec {
        family: config.family,
        n,
        k: config.family_k,
        seed,
        palette: config.palette,
        target: Some(Threshold::half(n).plus(config.target_offset)),
    };
    let mut row = ExperimentRow {
        spec: spec.clone(),
        sample,
        result: Err(String::new()),
        timings: Timings::default(),
    };

    let start = Instant::now();
    let generated = spec.generate();
    row.timings.generate_ms = ms(start);
    let g = match generated {
        Ok(g) => g,
        Err(e) => {
            row.result = Err(e.to_string());
            return Ok(row);
        }
    };
    let persist = |name: String, graph: &EdgeColoredGraph| -> Result<()> {
        if let Some(dir) = &config.out_dir {
            let path = dir.join(name);
            fs::write(&path, write_graph(graph)).map_err(|e| io_error(&path, e))?;
        }
        Ok(())
    };
    persist(row.instance_name(), &g)?;

    let start = Instant::now();
    let opts = AnalysisOptions {
        seed,
        ..config.analysis.clone()
    };
    let analysis = match analyze(&g, &opts) {
        Ok(a) => a,
        Err(e) => {
            row.result = Err(e.to_string());
            return Ok(row);
        }
    };
    row.timings.analyze_ms = ms(start);
    persist(row.reduced_instance_name(), &analysis.reduced)?;

    let start = Instant::now();
    let h = &analysis.reduced;
    let mut kconnect = Vec::new();
    let mut invalid = Vec::new();
    for &k in &config.k_list {
        let mut tally = KTally {
            k,
            successes: 0,
            attempts: 0,
        };
        for (u, v) in sample_pairs(n, config.k_pairs, seed ^ k as u64) {
            tally.attempts += 1;
            if let Some(cert) = rainbow_k_connect(h, u, v, k, opts.max_len)? {
                match cert.validate(h) {
                    Ok(()) => tally.successes += 1,
                    Err(e) => invalid.push(format!("k={k} certificate for {u}-{v}: {e}")),
                }
            }
        }
        kconnect.push(tally);
    }
    row.timings.kconnect_ms = ms(start);
    row.result = Ok(RowMeasures {
        analysis,
        kconnect,
        invalid_certificates: invalid,
    });
    Ok(row)
}

/// Up to `count` distinct pairs `u < v`, sorted.
pub fn sample_pairs(n: usize, count: usize, seed: u64) -> Vec<(usize, usize)> {
    let all: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<(usize, usize)> = all
        .choose_multiple(&mut rng, count.min(all.len()))
        .copied()
        .collect();
    picked.sort_unstable();
    picked
}
