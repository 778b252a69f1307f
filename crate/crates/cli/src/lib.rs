//! Command-line runner: builds a [`RunManifest`] from flags, sweeps it over
//! seeds and writes one `seed-<n>/` directory per seed plus a sweep summary.

pub mod ns2;

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand};
use psc_core::geometry::{Bounds, Rect};
use psc_core::radio::{LinkModelParams, RadioError};
use psc_core::scenario::{
    gen_chemical_plant, gen_demo, gen_mva, gen_school_shooting, ChemConfig, DemoConfig, DemoWorld, MvaConfig,
    ScenarioDocument, ScenarioError, ScenarioSpec, SchoolConfig,
};
use psc_core::sim::{self, SimError, DEFAULT_WINDOW};
use psc_core::trace::{write_trace_csv, TraceRecord};
use thiserror::Error;

pub use ns2::{export_ns2_trace, Ns2Error};

pub const OUT_ENV: &str = "PSC_SIM_OUT";
pub const SUMMARY_FILE: &str = "summary.csv";
pub const SUMMARY_HEADER: [&str; 4] = ["metric", "mean", "sample_std", "n_seeds"];
pub const OBSTACLES_HEADER: [&str; 4] = ["x_min", "y_min", "x_max", "y_max"];
pub const NODES_HEADER: [&str; 2] = ["node_id", "master_id"];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Radio(#[from] RadioError),
    #[error(transparent)]
    Ns2(#[from] Ns2Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("seed {seed}: {source}")]
    Seed { seed: u64, source: Box<CliError> },
}

impl CliError {
    /// Process exit status: 2 for bad invocations, 1 for failed runs.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Parses a bit rate with an optional `k`, `M` or `G` suffix.
pub fn parse_rate(text: &str) -> Result<f64, String> {
    let text = text.trim();
    let (digits, scale) = match text.char_indices().last() {
        Some((i, 'k' | 'K')) => (&text[..i], 1e3),
        Some((i, 'M')) => (&text[..i], 1e6),
        Some((i, 'G')) => (&text[..i], 1e9),
        _ => (text, 1.0),
    };
    let value: f64 = digits.parse().map_err(|_| format!("invalid rate `{text}`"))?;
    let rate = value * scale;
    if rate > 0.0 && rate.is_finite() {
        Ok(rate)
    } else {
        Err(format!("rate `{text}` must be positive"))
    }
}

/// Parses `a..b` (inclusive), a single seed, or a comma-separated list.
pub fn parse_seeds(text: &str) -> Result<Vec<u64>, String> {
    let seed = |s: &str| -> Result<u64, String> {
        let v: u64 = s.trim().parse().map_err(|_| format!("invalid seed `{s}`"))?;
        if v > i64::MAX as u64 {
            return Err(format!("seed {v} exceeds {}", i64::MAX));
        }
        Ok(v)
    };
    let seeds: Vec<u64> = match text.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (seed(a)?, seed(b)?);
            if b < a {
                return Err(format!("empty seed range `{text}`"));
            }
            (a..=b).collect()
        }
        None => text.split(',').map(seed).collect::<Result<_, _>>()?,
    };
    let mut sorted = seeds.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != seeds.len() {
        return Err(format!("duplicate seeds in `{text}`"));
    }
    Ok(seeds)
}

/// Seeds parsed from one `--seeds` value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedList(pub Vec<u64>);

fn parse_seed_list(text: &str) -> Result<SeedList, String> {
    parse_seeds(text).map(SeedList)
}

/// Parses `x_min,y_min,x_max,y_max`.
pub fn parse_bounds(text: &str) -> Result<Bounds, String> {
    let v: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| format!("invalid bounds `{text}`"))?;
    let [x_min, y_min, x_max, y_max] = v[..] else {
        return Err(format!("bounds need four values, got `{text}`"));
    };
    Bounds::new(x_min, x_max, y_min, y_max).map_err(|e| e.to_string())
}

fn parse_positive(text: &str) -> Result<f64, String> {
    match text.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("`{text}` is not a positive number")),
    }
}

#[derive(Debug, Parser)]
#[command(name = "psc-sim", version, about = "Public-safety network scenario simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multi-vehicle accident on a street with roadside mmWave units.
    Mva(MvaArgs),
    /// Chemical plant with a remotely controlled robot.
    Chemical(ChemicalArgs),
    /// Police teams sweeping a school building.
    School(SchoolArgs),
    /// Free building-aware walkers among random obstacles; traces only.
    WalkDemo(DemoArgs),
    /// Master/slave groups among random obstacles; traces only.
    GroupDemo(GroupDemoArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Seeds to run: `a..b` (inclusive), `n`, or `a,b,c`.
    #[arg(long, default_value = "1", value_parser = parse_seed_list)]
    pub seeds: SeedList,
    /// Simulated duration in seconds.
    #[arg(long, value_parser = parse_positive)]
    pub horizon: Option<f64>,
    /// Evaluation window (trace sampling step for demos) in seconds.
    #[arg(long, default_value_t = DEFAULT_WINDOW, value_parser = parse_positive)]
    pub window: f64,
    /// Output root directory.
    #[arg(long, env = OUT_ENV, default_value = "psc-out")]
    pub out: PathBuf,
    /// Worker threads for the seed sweep; defaults to the available cores.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct LinkArgs {
    /// TOML file overriding link model parameters.
    #[arg(long)]
    pub link_config: Option<PathBuf>,
    #[arg(long)]
    pub antenna_bs: Option<u32>,
    #[arg(long)]
    pub antenna_ue: Option<u32>,
}

#[derive(Debug, Args)]
pub struct MvaArgs {
    #[arg(long)]
    pub responders: Option<usize>,
    #[arg(long)]
    pub ar_fraction: Option<f64>,
    #[arg(long, value_parser = parse_rate)]
    pub video_rate: Option<f64>,
    /// Deploy the roadside mmWave units.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub with_mmwave: Option<bool>,
    #[command(flatten)]
    pub link: LinkArgs,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct ChemicalArgs {
    #[arg(long)]
    pub responders: Option<usize>,
    /// Video rate of responders and robot.
    #[arg(long, value_parser = parse_rate)]
    pub video_rate: Option<f64>,
    #[arg(long, value_parser = parse_rate)]
    pub control_rate: Option<f64>,
    /// Deploy the dedicated LTE station for robot control.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub with_lte: Option<bool>,
    #[command(flatten)]
    pub link: LinkArgs,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct SchoolArgs {
    /// Number of teams, one per building corner.
    #[arg(long)]
    pub teams: Option<usize>,
    #[arg(long)]
    pub team_size: Option<usize>,
    #[arg(long, value_parser = parse_rate)]
    pub video_rate: Option<f64>,
    /// Deploy the team-following mmWave relays.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub with_iab: Option<bool>,
    #[command(flatten)]
    pub link: LinkArgs,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    #[arg(long, default_value_t = 5)]
    pub boxes: usize,
    /// `x_min,y_min,x_max,y_max` in metres.
    #[arg(long, default_value = "-10,-10,100,90", allow_hyphen_values = true, value_parser = parse_bounds)]
    pub bounds: Bounds,
    #[arg(long, default_value_t = 1)]
    pub walkers: usize,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct GroupDemoArgs {
    #[arg(long, default_value_t = 0)]
    pub boxes: usize,
    /// `x_min,y_min,x_max,y_max` in metres.
    #[arg(long, default_value = "-10,-10,100,90", allow_hyphen_values = true, value_parser = parse_bounds)]
    pub bounds: Bounds,
    #[arg(long, default_value_t = 2)]
    pub masters: usize,
    /// Slaves per master.
    #[arg(long, default_value_t = 2)]
    pub slaves: usize,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ScenarioConfig {
    Mva(MvaConfig),
    Chemical(ChemConfig),
    School(SchoolConfig),
    Demo(DemoConfig),
}

impl ScenarioConfig {
    fn generate(&self, seed: u64) -> Result<ScenarioSpec, ScenarioError> {
        match self {
            ScenarioConfig::Mva(c) => gen_mva(c, seed),
            ScenarioConfig::Chemical(c) => gen_chemical_plant(c, seed),
            ScenarioConfig::School(c) => gen_school_shooting(c, seed),
            ScenarioConfig::Demo(_) => unreachable!("demo worlds are not network scenarios"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunManifest {
    pub scenario: ScenarioConfig,
    pub link: LinkModelParams,
    pub seeds: Vec<u64>,
    pub window: f64,
    pub out: PathBuf,
    pub jobs: usize,
}

fn load_link(args: &LinkArgs) -> Result<LinkModelParams, CliError> {
    match &args.link_config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(io_err(path))?;
            Ok(LinkModelParams::from_toml(&text)?)
        }
        None => Ok(LinkModelParams::default()),
    }
}

impl Cli {
    pub fn into_manifest(self) -> Result<RunManifest, CliError> {
        let (scenario, link, run) = match self.command {
            Command::Mva(a) => {
                let d = MvaConfig::default();
                let c = MvaConfig {
                    n_responders: a.responders.unwrap_or(d.n_responders),
                    ar_fraction: a.ar_fraction.unwrap_or(d.ar_fraction),
                    video_rate: a.video_rate.unwrap_or(d.video_rate),
                    with_mmwave: a.with_mmwave.unwrap_or(d.with_mmwave),
                    antennas_bs: a.link.antenna_bs.unwrap_or(d.antennas_bs),
                    antennas_ue: a.link.antenna_ue.unwrap_or(d.antennas_ue),
                    horizon: a.run.horizon.unwrap_or(d.horizon),
                    ..d
                };
                (ScenarioConfig::Mva(c), load_link(&a.link)?, a.run)
            }
            Command::Chemical(a) => {
                let d = ChemConfig::default();
                let video = a.video_rate.unwrap_or(d.video_rate);
                let c = ChemConfig {
                    n_responders: a.responders.unwrap_or(d.n_responders),
                    control_rate: a.control_rate.unwrap_or(d.control_rate),
                    with_lte: a.with_lte.unwrap_or(d.with_lte),
                    antennas_bs: a.link.antenna_bs.unwrap_or(d.antennas_bs),
                    antennas_ue: a.link.antenna_ue.unwrap_or(d.antennas_ue),
                    horizon: a.run.horizon.unwrap_or(d.horizon),
                    ..d
                }
                .with_video_rate(video);
                (ScenarioConfig::Chemical(c), load_link(&a.link)?, a.run)
            }
            Command::School(a) => {
                let d = SchoolConfig::default();
                let c = SchoolConfig {
                    n_teams: a.teams.unwrap_or(d.n_teams),
                    team_size: a.team_size.unwrap_or(d.team_size),
                    video_rate: a.video_rate.unwrap_or(d.video_rate),
                    with_iab: a.with_iab.unwrap_or(d.with_iab),
                    antennas_bs: a.link.antenna_bs.unwrap_or(d.antennas_bs),
                    antennas_ue: a.link.antenna_ue.unwrap_or(d.antennas_ue),
                    horizon: a.run.horizon.or(d.horizon),
                    ..d
                };
                (ScenarioConfig::School(c), load_link(&a.link)?, a.run)
            }
            Command::WalkDemo(a) => {
                let mut c = DemoConfig::walk(a.bounds, a.boxes);
                c.n_walkers = a.walkers;
                c.horizon = a.run.horizon.unwrap_or(c.horizon);
                (ScenarioConfig::Demo(c), LinkModelParams::default(), a.run)
            }
            Command::GroupDemo(a) => {
                let mut c = DemoConfig::group(a.bounds, a.boxes, a.masters, a.slaves);
                c.horizon = a.run.horizon.unwrap_or(c.horizon);
                (ScenarioConfig::Demo(c), LinkModelParams::default(), a.run)
            }
        };
        let jobs = match run.jobs {
            Some(0) => return Err(CliError::Usage("--jobs must be at least 1".into())),
            Some(j) => j,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        Ok(RunManifest {
            scenario,
            link,
            seeds: run.seeds.0,
            window: run.window,
            out: run.out,
            jobs,
        })
    }
}

/// Outcome of one seed of a network scenario.
#[derive(Clone, Debug, PartialEq)]
pub struct SeedResult {
    pub seed: u64,
    pub aggregate_uplink_bps: f64,
    pub p_rx_ctrl: Option<f64>,
}

/// Mean and sample standard deviation of one metric across seeds.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub metric: &'static str,
    pub mean: f64,
    /// `None` with fewer than two seeds.
    pub sample_std: Option<f64>,
    pub n_seeds: usize,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct RunSummary {
    pub seeds: Vec<SeedResult>,
    pub rows: Vec<SummaryRow>,
}

pub fn seed_dir(out: &Path, seed: u64) -> PathBuf {
    out.join(format!("seed-{seed}"))
}

/// Runs every seed of the manifest, writing artifacts under `manifest.out`.
pub fn run_cli(manifest: &RunManifest) -> Result<RunSummary, CliError> {
    if manifest.seeds.is_empty() {
        return Err(CliError::Usage("at least one seed is required".into()));
    }
    fs::create_dir_all(&manifest.out).map_err(io_err(&manifest.out))?;
    let results = sweep(manifest)?;
    if matches!(manifest.scenario, ScenarioConfig::Demo(_)) {
        return Ok(RunSummary::default());
    }
    let seeds: Vec<SeedResult> = results.into_iter().flatten().collect();
    let rows = summarize(&seeds);
    let path = manifest.out.join(SUMMARY_FILE);
    write_summary_csv(&rows, File::create(&path).map_err(io_err(&path))?)?;
    Ok(RunSummary { seeds, rows })
}

/// Runs seeds on a bounded pool; results come back in manifest order and the
/// first failing seed (in that order) is reported.
fn sweep(manifest: &RunManifest) -> Result<Vec<Option<SeedResult>>, CliError> {
    type Slot = Mutex<Option<Result<Option<SeedResult>, CliError>>>;
    let n = manifest.seeds.len();
    let slots: Vec<Slot> = (0..n).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..manifest.jobs.clamp(1, n) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n {
                    break;
                }
                let seed = manifest.seeds[i];
                let result = run_seed(manifest, seed).map_err(|e| CliError::Seed {
                    seed,
                    source: Box::new(e),
                });
                *slots[i].lock().unwrap() = Some(result);
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| slot.into_inner().unwrap().expect("every seed is claimed"))
        .collect()
}

fn run_seed(manifest: &RunManifest, seed: u64) -> Result<Option<SeedResult>, CliError> {
    let dir = seed_dir(&manifest.out, seed);
    fs::create_dir_all(&dir).map_err(io_err(&dir))?;
    if let ScenarioConfig::Demo(config) = &manifest.scenario {
        let world = gen_demo(config, seed)?;
        let trace = sim::record_mobility(world.layout.clone(), &world.nodes, config.horizon, manifest.window, seed)?;
        write_traces(&dir, &trace)?;
        write_demo_world(&dir, &world)?;
        return Ok(None);
    }

    let spec = manifest.scenario.generate(seed)?;
    let doc = ScenarioDocument {
        scenario: spec,
        link: manifest.link.clone(),
    };
    doc.write(&dir.join("scenario.toml"))?;
    let output = sim::simulate(&doc.scenario, &doc.link, manifest.window, seed)?;
    write_traces(&dir, &output.trace)?;
    let report = &output.report;
    let path = dir.join("metrics.csv");
    report.write_metrics_csv(File::create(&path).map_err(io_err(&path))?)?;
    let path = dir.join("timeseries.csv");
    report.write_timeseries_csv(File::create(&path).map_err(io_err(&path))?)?;
    Ok(Some(SeedResult {
        seed,
        aggregate_uplink_bps: report.aggregate_uplink_bps,
        p_rx_ctrl: report.p_rx_ctrl,
    }))
}

fn write_traces(dir: &Path, trace: &[TraceRecord]) -> Result<(), CliError> {
    let path = dir.join("trace.csv");
    write_trace_csv(trace, BufWriter::new(File::create(&path).map_err(io_err(&path))?))?;
    ns2::write_ns2_file(trace, &dir.join("trace.ns2"))?;
    Ok(())
}

fn write_demo_world(dir: &Path, world: &DemoWorld) -> Result<(), CliError> {
    let path = dir.join("obstacles.csv");
    let mut w = csv::Writer::from_writer(File::create(&path).map_err(io_err(&path))?);
    w.write_record(OBSTACLES_HEADER)?;
    for b in &world.layout.boxes {
        w.serialize((b.x_min(), b.y_min(), b.x_max(), b.y_max()))?;
    }
    w.flush().map_err(io_err(&path))?;

    let path = dir.join("nodes.csv");
    let mut w = csv::Writer::from_writer(File::create(&path).map_err(io_err(&path))?);
    w.write_record(NODES_HEADER)?;
    for (id, master) in world.masters.iter().enumerate() {
        w.serialize((id as u32, master))?;
    }
    w.flush().map_err(io_err(&path))?;
    Ok(())
}

pub fn summarize(seeds: &[SeedResult]) -> Vec<SummaryRow> {
    let aggregate: Vec<f64> = seeds.iter().map(|s| s.aggregate_uplink_bps).collect();
    let p: Vec<f64> = seeds.iter().filter_map(|s| s.p_rx_ctrl).collect();
    [("aggregate_uplink_bps", aggregate), ("p_rx_ctrl", p)]
        .into_iter()
        .filter(|(_, v)| !v.is_empty())
        .map(|(metric, v)| {
            let n = v.len() as f64;
            let mean = v.iter().sum::<f64>() / n;
            let sample_std = (v.len() > 1)
                .then(|| (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt());
            SummaryRow {
                metric,
                mean,
                sample_std,
                n_seeds: v.len(),
            }
        })
        .collect()
}

pub fn write_summary_csv<W: Write>(rows: &[SummaryRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SUMMARY_HEADER)?;
    for r in rows {
        w.serialize((r.metric, r.mean, r.sample_std, r.n_seeds))?;
    }
    w.flush()?;
    Ok(())
}

/// Reads an obstacles file written by the demo subcommands.
pub fn read_obstacles_csv<R: std::io::Read>(input: R) -> Result<Vec<Rect>, CliError> {
    let mut rows = Vec::new();
    for row in csv::Reader::from_reader(input).deserialize() {
        let (x_min, y_min, x_max, y_max): (f64, f64, f64, f64) = row?;
        rows.push(Rect::new(x_min, x_max, y_min, y_max).map_err(ScenarioError::from)?);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rates_accept_suffixes() {
        assert_eq!(parse_rate("100M"), Ok(100e6));
        assert_eq!(parse_rate("500k"), Ok(500e3));
        assert_eq!(parse_rate("1.5G"), Ok(1.5e9));
        assert_eq!(parse_rate("2500"), Ok(2500.0));
        assert!(parse_rate("0M").is_err());
        assert!(parse_rate("M").is_err());
        assert!(parse_rate("10x").is_err());
    }

    #[test]
    fn seeds_accept_ranges_and_lists() {
        assert_eq!(parse_seeds("1..10"), Ok((1..=10).collect()));
        assert_eq!(parse_seeds("7"), Ok(vec![7]));
        assert_eq!(parse_seeds("3,1,2"), Ok(vec![3, 1, 2]));
        assert!(parse_seeds("5..1").is_err());
        assert!(parse_seeds("1,1").is_err());
        assert!(parse_seeds("a..3").is_err());
        assert!(parse_seeds("9223372036854775808").is_err());
    }

    #[test]
    fn bounds_are_min_min_max_max() {
        let b = parse_bounds("-10,-10,100,90").unwrap();
        assert_eq!(b, Bounds::new(-10.0, 100.0, -10.0, 90.0).unwrap());
        assert!(parse_bounds("1,2,3").is_err());
        assert!(parse_bounds("10,0,0,10").is_err());
    }

    #[test]
    fn summary_uses_sample_std() {
        let seeds = [1.0, 2.0, 3.0, 4.0].map(|a| SeedResult {
            seed: 0,
            aggregate_uplink_bps: a,
            p_rx_ctrl: None,
        });
        let rows = summarize(&seeds);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].mean, 2.5);
        // Sum of squared deviations 5 over n - 1 = 3.
        assert!((rows[0].sample_std.unwrap() - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(summarize(&seeds[..1])[0].sample_std, None);
    }

    #[test]
    fn flags_override_config_defaults() {
        let cli = Cli::try_parse_from([
            "psc-sim", "chemical", "--video-rate", "100M", "--with-lte", "false", "--seeds", "1..3", "--out", "x",
        ])
        .unwrap();
        let m = cli.into_manifest().unwrap();
        let ScenarioConfig::Chemical(c) = &m.scenario else { panic!() };
        assert_eq!((c.video_rate, c.robot_video_rate, c.with_lte), (100e6, 100e6, false));
        assert_eq!(m.seeds, vec![1, 2, 3]);

        let cli = Cli::try_parse_from(["psc-sim", "school", "--with-iab", "--antenna-bs", "16", "--antenna-ue", "4"]).unwrap();
        let ScenarioConfig::School(c) = cli.into_manifest().unwrap().scenario else { panic!() };
        assert!(c.with_iab);
        assert_eq!((c.antennas_bs, c.antennas_ue), (16, 4));
    }

    #[test]
    fn bad_flags_are_usage_errors() {
        assert!(Cli::try_parse_from(["psc-sim", "mva", "--video-rate", "fast"]).is_err());
        assert!(Cli::try_parse_from(["psc-sim", "mva", "--seeds", "3..1"]).is_err());
        assert!(Cli::try_parse_from(["psc-sim", "mva", "--window", "0"]).is_err());
        let cli = Cli::try_parse_from(["psc-sim", "mva", "--jobs", "0"]).unwrap();
        assert!(matches!(cli.into_manifest(), Err(CliError::Usage(_))));
    }
}
