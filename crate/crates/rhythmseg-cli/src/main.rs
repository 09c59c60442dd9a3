//! Command-line front end: synthetic data generation, measurement,
//! clustering, plotting, and the full analysis pipeline.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error. Diagnostics go to
//! stderr; requested output goes to stdout or the named files.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use rhythmseg::io::{self, Corpus, OnsetColumns};
use rhythmseg::kde::Bandwidth;
use rhythmseg::viz::{self, PlotSpec};
use rhythmseg::{cluster, network, quantal, synth};

#[derive(Parser)]
#[command(
    name = "rhythmseg",
    version,
    about = "Rhythmic segment analysis: segments, patterns, anisochrony, quantality, clustering, transition networks, and SVG plots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic dataset and write it as interval CSV
    Synth(SynthArgs),
    /// Print nPVI, mean anisochrony, and quantality for a dataset
    Measure(MeasureArgs),
    /// Cluster segments; write labels CSV and network JSON
    Cluster(ClusterArgs),
    /// Render one plot as SVG
    Plot(PlotArgs),
    /// Full pipeline into an output directory
    Analyze(AnalyzeArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Input CSV path
    #[arg(long)]
    input: PathBuf,
    /// Treat the input as an onset CSV instead of an interval CSV
    #[arg(long)]
    onsets: bool,
    /// Onset column name (onset CSV)
    #[arg(long, default_value = "onset_s")]
    onset_col: String,
    /// Song column name (onset CSV)
    #[arg(long, default_value = "song")]
    song_col: String,
    /// Instrument column name (onset CSV)
    #[arg(long, default_value = "instrument")]
    instrument_col: String,
    /// Tolerated fraction of unparsable onset rows
    #[arg(long, default_value_t = 0.0)]
    max_bad_rows: f64,
}

#[derive(Args)]
struct QuantumArgs {
    /// Known quantum in seconds
    #[arg(long)]
    quantum: Option<f64>,
    /// Metrical-cycle CSV (song,cycle_onset_s) to derive the quantum from
    #[arg(long)]
    cycles: Option<PathBuf>,
    /// Quanta per metrical cycle
    #[arg(long, default_value_t = quantal::DEFAULT_SUBDIVISIONS)]
    subdivisions: u32,
    /// Near-multiple threshold as a fraction of the quantum
    #[arg(long, default_value_t = quantal::DEFAULT_THETA)]
    theta: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum SynthKind {
    Uniform,
    QuantalGeometric,
    QuantalUniform,
    Repeated,
    Grid,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long, value_enum)]
    kind: SynthKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output interval CSV path
    #[arg(long)]
    out: PathBuf,
    /// Number of intervals (uniform, quantal, grid kinds)
    #[arg(long, default_value_t = 1000)]
    count: usize,
    /// Lower interval bound (uniform)
    #[arg(long, default_value_t = 0.2)]
    lo: f64,
    /// Upper interval bound (uniform)
    #[arg(long, default_value_t = 2.0)]
    hi: f64,
    /// Quantum in seconds (quantal and repeated kinds; default 0.2, or
    /// 0.5 for repeated)
    #[arg(long)]
    quantum: Option<f64>,
    /// Geometric success probability (quantal-geometric)
    #[arg(long, default_value_t = 0.5)]
    success_p: f64,
    /// Largest multiple (quantal-uniform)
    #[arg(long, default_value_t = 11)]
    max_multiple: u32,
    /// Gaussian noise sigma in seconds; defaults to quantum/20
    #[arg(long)]
    sigma: Option<f64>,
    /// Repeated-rhythm template as comma-separated multiples
    #[arg(long, default_value = "3,3,2,4,1")]
    template: String,
    /// Template repetitions (repeated)
    #[arg(long, default_value_t = 200)]
    repeats: u32,
    /// Grid size in seconds (grid)
    #[arg(long, default_value_t = 0.2)]
    grid: f64,
    /// Grid jitter sigma in seconds; defaults to grid/20
    #[arg(long)]
    jitter: Option<f64>,
    /// Grid slot occupancy probability
    #[arg(long, default_value_t = synth::DEFAULT_OCCUPANCY)]
    occupancy: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Table,
}

#[derive(Args)]
struct MeasureArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    quantum: QuantumArgs,
    /// Segment lengths for mean anisochrony, comma separated
    #[arg(long, default_value = "2", value_delimiter = ',')]
    n: Vec<usize>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Args)]
struct ClusterArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    quantum: QuantumArgs,
    /// Segment length
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = cluster::DEFAULT_MIN_CLUSTER_SIZE)]
    min_cluster_size: usize,
    #[arg(long, default_value_t = network::DEFAULT_PRUNE_THRESHOLD)]
    prune_threshold: usize,
    #[arg(long, default_value = "labels.csv")]
    labels_out: PathBuf,
    #[arg(long, default_value = "network.json")]
    network_out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum PlotKind {
    Raster,
    Phase,
    PatternDuration,
    Ratio,
    Triangle,
}

#[derive(Args)]
struct PlotArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    quantum: QuantumArgs,
    #[arg(long, value_enum)]
    kind: PlotKind,
    /// Output SVG path
    #[arg(long)]
    out: PathBuf,
    /// Segment length; defaults to 3 for triangle plots, 2 otherwise
    #[arg(long)]
    n: Option<usize>,
    /// Integer-ratio annotations cover pairs up to this multiple
    #[arg(long, default_value_t = 6)]
    annotation_max: u64,
    /// Fixed KDE bandwidth; Silverman's rule when omitted
    #[arg(long)]
    bandwidth: Option<f64>,
    /// Duration boundaries from interval bounds: "lo,hi" or "auto"
    #[arg(long)]
    bounds: Option<String>,
    /// Color points by HDBSCAN cluster
    #[arg(long)]
    clusters: bool,
    #[arg(long, default_value_t = cluster::DEFAULT_MIN_CLUSTER_SIZE)]
    min_cluster_size: usize,
    /// Overlay the cluster transition network (implies --clusters)
    #[arg(long)]
    network: bool,
    #[arg(long, default_value_t = network::DEFAULT_PRUNE_THRESHOLD)]
    prune_threshold: usize,
    /// Join successive segments with lines (phase plots)
    #[arg(long)]
    trajectories: bool,
    #[arg(long, default_value_t = 640.0)]
    width: f64,
    #[arg(long, default_value_t = 480.0)]
    height: f64,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    quantum: QuantumArgs,
    /// Output directory
    #[arg(long)]
    outdir: PathBuf,
    /// Segment length for clustering and the network
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = cluster::DEFAULT_MIN_CLUSTER_SIZE)]
    min_cluster_size: usize,
    #[arg(long, default_value_t = network::DEFAULT_PRUNE_THRESHOLD)]
    prune_threshold: usize,
    #[arg(long, default_value_t = 6)]
    annotation_max: u64,
}

enum Failure {
    Usage(String),
    Data(String),
}

impl From<rhythmseg::Error> for Failure {
    fn from(e: rhythmseg::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Rejected parameters are usage errors when every input came from flags.
fn flag_error(e: rhythmseg::Error) -> Failure {
    match e {
        rhythmseg::Error::InvalidArgument(msg) => Failure::Usage(msg),
        other => other.into(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Synth(args) => run_synth(args),
        Command::Measure(args) => run_measure(args),
        Command::Cluster(args) => run_cluster(args),
        Command::Plot(args) => run_plot(args),
        Command::Analyze(args) => run_analyze(args),
    }
}

fn load_corpus(input: &InputArgs) -> Result<Corpus, Failure> {
    if input.onsets {
        let columns = OnsetColumns {
            onset: input.onset_col.clone(),
            song: Some(input.song_col.clone()),
            instrument: Some(input.instrument_col.clone()),
            max_bad_fraction: input.max_bad_rows,
        };
        let (corpus, stats) = io::load_onsets(&input.input, &columns)?;
        if stats.dropped_nonpositive > 0 {
            eprintln!(
                "warning: dropped {} zero or negative intervals while differencing onsets",
                stats.dropped_nonpositive
            );
        }
        if stats.skipped_rows > 0 {
            eprintln!("warning: skipped {} unparsable rows", stats.skipped_rows);
        }
        Ok(corpus)
    } else {
        Ok(io::load_intervals(&input.input)?)
    }
}

/// A single quantum for the analysis: the explicit flag wins, otherwise
/// per-song quanta derived from cycle annotations (pooled by median).
fn resolve_quantum(corpus: &mut Corpus, args: &QuantumArgs) -> Result<Option<f64>, Failure> {
    if !(args.theta > 0.0 && args.theta <= 0.5) {
        return Err(usage(format!(
            "--theta must lie in (0, 0.5], got {}",
            args.theta
        )));
    }
    if let Some(q) = args.quantum {
        if !(q > 0.0) || !q.is_finite() {
            return Err(usage(format!("--quantum must be > 0, got {q}")));
        }
        return Ok(Some(q));
    }
    let Some(path) = &args.cycles else {
        return Ok(None);
    };
    let cycles = io::load_cycles(path)?;
    for (song, onsets) in &cycles {
        match quantal::quantum_from_cycles(onsets, args.subdivisions) {
            Ok(q) => corpus.set_quantum(song.clone(), q)?,
            Err(e) => eprintln!("warning: song '{song}': {e}; quanta axis disabled for it"),
        }
    }
    let pooled = corpus.pooled_quantum();
    if pooled.is_none() {
        eprintln!("warning: no usable cycle annotations; quanta features disabled");
    }
    Ok(pooled)
}

fn parse_template(text: &str) -> Result<Vec<u32>, Failure> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| usage(format!("bad template entry '{t}'")))
        })
        .collect()
}

fn run_synth(args: SynthArgs) -> Result<(), Failure> {
    let (seq, params) = match args.kind {
        SynthKind::Uniform => {
            let seq =
                synth::gen_uniform(args.count, args.lo, args.hi, args.seed).map_err(flag_error)?;
            let params =
                json!({"kind": "uniform", "count": args.count, "lo": args.lo, "hi": args.hi});
            (seq, params)
        }
        SynthKind::QuantalGeometric => {
            let quantum = args.quantum.unwrap_or(0.2);
            let sigma = args.sigma.unwrap_or(quantum / 20.0);
            let seq =
                synth::gen_quantal_geometric(args.count, quantum, args.success_p, sigma, args.seed)
                    .map_err(flag_error)?;
            let params = json!({
                "kind": "quantal-geometric", "count": args.count, "quantum": quantum,
                "success_p": args.success_p, "sigma": sigma,
            });
            (seq, params)
        }
        SynthKind::QuantalUniform => {
            let quantum = args.quantum.unwrap_or(0.2);
            let sigma = args.sigma.unwrap_or(quantum / 20.0);
            let seq = synth::gen_quantal_uniform(
                args.count,
                quantum,
                args.max_multiple,
                sigma,
                args.seed,
            )
            .map_err(flag_error)?;
            let params = json!({
                "kind": "quantal-uniform", "count": args.count, "quantum": quantum,
                "max_multiple": args.max_multiple, "sigma": sigma,
            });
            (seq, params)
        }
        SynthKind::Repeated => {
            let quantum = args.quantum.unwrap_or(0.5);
            let sigma = args.sigma.unwrap_or(quantum / 20.0);
            let multiples = parse_template(&args.template)?;
            let template =
                synth::RepeatTemplate::new(multiples.clone(), quantum, sigma, args.repeats)
                    .map_err(flag_error)?;
            let seq = synth::gen_repeated(&template, args.seed).map_err(flag_error)?;
            let params = json!({
                "kind": "repeated", "template": multiples, "quantum": quantum,
                "sigma": sigma, "repeats": args.repeats,
            });
            (seq, params)
        }
        SynthKind::Grid => {
            let jitter = args.jitter.unwrap_or(args.grid / 20.0);
            let seq =
                synth::gen_grid_events(args.count, args.grid, jitter, args.occupancy, args.seed)
                    .map_err(flag_error)?;
            let params = json!({
                "kind": "grid", "count": args.count, "grid": args.grid,
                "jitter": jitter, "occupancy": args.occupancy,
            });
            (seq, params)
        }
    };
    let corpus = Corpus::from_sequence(seq);
    io::write_intervals_csv(&args.out, &corpus)?;
    write_manifest(&args.out, "synth", args.seed, params)?;
    eprintln!(
        "wrote {} intervals to {}",
        corpus.sequences()[0].len(),
        args.out.display()
    );
    Ok(())
}

/// Manifest sidecar recording the parameters that produced an output file.
fn write_manifest(
    out: &Path,
    command: &str,
    seed: u64,
    params: serde_json::Value,
) -> Result<(), Failure> {
    let manifest = json!({
        "tool": "rhythmseg",
        "command": command,
        "seed": seed,
        "parameters": params,
        "output": out.display().to_string(),
    });
    let mut path = out.as_os_str().to_owned();
    path.push(".manifest.json");
    io::write_json(PathBuf::from(path), &manifest)?;
    Ok(())
}

fn run_measure(args: MeasureArgs) -> Result<(), Failure> {
    for &n in &args.n {
        if n < 2 {
            return Err(usage(format!("--n entries must be at least 2, got {n}")));
        }
    }
    let mut corpus = load_corpus(&args.input)?;
    let quantum = resolve_quantum(&mut corpus, &args.quantum)?;
    let report = io::compute_measures(&corpus, &args.n, quantum, args.quantum.theta)?;
    match args.format {
        OutputFormat::Json => println!("{}", io::measures_to_json(&report)?),
        OutputFormat::Table => {
            match report.npvi {
                Some(v) => println!("{:<24}{v:.6}", "npvi"),
                None => println!("{:<24}-", "npvi"),
            }
            for (n, v) in &report.mean_anisochrony {
                println!("{:<24}{v:.6}", format!("mean anisochrony n={n}"));
            }
            match report.quantality {
                Some(q) => println!(
                    "{:<24}{:.6} (quantum {}, theta {})",
                    "quantality score", q.score, q.quantum, q.theta
                ),
                None => println!("{:<24}- (no quantum)", "quantality score"),
            }
        }
    }
    Ok(())
}

fn check_cluster_flags(min_cluster_size: usize, prune_threshold: usize) -> Result<(), Failure> {
    if min_cluster_size < 2 {
        return Err(usage(format!(
            "--min-cluster-size must be at least 2, got {min_cluster_size}"
        )));
    }
    if prune_threshold < 1 {
        return Err(usage(format!(
            "--prune-threshold must be at least 1, got {prune_threshold}"
        )));
    }
    Ok(())
}

fn run_cluster(args: ClusterArgs) -> Result<(), Failure> {
    if args.n < 2 {
        return Err(usage(format!("--n must be at least 2, got {}", args.n)));
    }
    check_cluster_flags(args.min_cluster_size, args.prune_threshold)?;
    let mut corpus = load_corpus(&args.input)?;
    let quantum = resolve_quantum(&mut corpus, &args.quantum)?;
    let segments = corpus.segments(args.n)?;
    let labeling = cluster::cluster_segments(&segments, args.min_cluster_size)?;
    let net = network::build_network(&labeling, &segments, quantum, args.prune_threshold)?;
    io::write_labels_csv(&args.labels_out, &segments, &labeling)?;
    io::write_network_json(&args.network_out, &net)?;
    write_manifest(
        &args.labels_out,
        "cluster",
        0,
        json!({
            "input": args.input.input.display().to_string(),
            "n": args.n,
            "min_cluster_size": args.min_cluster_size,
            "prune_threshold": args.prune_threshold,
            "quantum": quantum,
            "network_out": args.network_out.display().to_string(),
        }),
    )?;
    eprintln!(
        "{} segments, {} clusters, {} noise; network: {} nodes, {} edges",
        segments.len(),
        labeling.clusters.len(),
        labeling.noise_count(),
        net.nodes.len(),
        net.edges.len()
    );
    Ok(())
}

fn parse_bounds(text: &str, corpus: &Corpus) -> Result<(f64, f64), Failure> {
    if text == "auto" {
        let intervals = corpus.pooled_intervals();
        if intervals.is_empty() {
            return Err(Failure::Data(
                "cannot derive bounds from an empty corpus".into(),
            ));
        }
        let lo = intervals.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = intervals.iter().copied().fold(0.0_f64, f64::max);
        return Ok((lo, hi));
    }
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(usage(format!(
            "--bounds expects 'lo,hi' or 'auto', got '{text}'"
        )));
    }
    let lo: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| usage(format!("bad bound '{}'", parts[0])))?;
    let hi: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| usage(format!("bad bound '{}'", parts[1])))?;
    if !(lo > 0.0 && hi > lo) {
        return Err(usage(format!("--bounds needs 0 < lo < hi, got {lo},{hi}")));
    }
    Ok((lo, hi))
}

fn run_plot(args: PlotArgs) -> Result<(), Failure> {
    let n = args.n.unwrap_or(match args.kind {
        PlotKind::Triangle => 3,
        _ => 2,
    });
    match args.kind {
        PlotKind::Triangle => {
            if n != 3 {
                return Err(usage("triangle plots need --n 3".to_string()));
            }
        }
        _ => {
            if n != 2 {
                return Err(usage(
                    "raster, phase, pattern-duration and ratio plots need --n 2".to_string(),
                ));
            }
        }
    }
    check_cluster_flags(args.min_cluster_size, args.prune_threshold)?;
    let mut corpus = load_corpus(&args.input)?;
    let quantum = resolve_quantum(&mut corpus, &args.quantum)?;
    let segments = corpus.segments(n)?;
    let bandwidth = match args.bandwidth {
        Some(h) if h > 0.0 && h.is_finite() => Bandwidth::Fixed(h),
        Some(h) => return Err(usage(format!("--bandwidth must be > 0, got {h}"))),
        None => Bandwidth::Auto,
    };
    let interval_bounds = match &args.bounds {
        Some(text) => Some(parse_bounds(text, &corpus)?),
        None => None,
    };
    let spec = PlotSpec {
        width: args.width,
        height: args.height,
        quantum,
        annotation_max: args.annotation_max,
        bandwidth,
        interval_bounds,
        ..PlotSpec::default()
    };
    let want_clusters = args.clusters || args.network;
    let labeling = if want_clusters {
        Some(cluster::cluster_segments(&segments, args.min_cluster_size)?)
    } else {
        None
    };
    let net = if args.network {
        let labeling = labeling.as_ref().expect("clusters implied");
        Some(network::build_network(
            labeling,
            &segments,
            quantum,
            args.prune_threshold,
        )?)
    } else {
        None
    };
    let svg = match args.kind {
        PlotKind::Raster => viz::raster_plot(&segments, &spec)?,
        PlotKind::Phase => viz::phase_plot(&segments, &spec, args.trajectories)?,
        PlotKind::Ratio => viz::ratio_plot(&segments, &spec)?,
        PlotKind::PatternDuration => {
            viz::pattern_duration_plot(&segments, labeling.as_ref(), net.as_ref(), &spec)?
        }
        PlotKind::Triangle => {
            viz::triangle_plot(&segments, labeling.as_ref(), net.as_ref(), &spec)?
        }
    };
    io::write_text(&args.out, &svg)?;
    write_manifest(
        &args.out,
        "plot",
        0,
        json!({
            "input": args.input.input.display().to_string(),
            "kind": plot_kind_name(args.kind),
            "n": n,
            "quantum": quantum,
            "annotation_max": args.annotation_max,
            "clusters": want_clusters,
            "network": args.network,
        }),
    )?;
    eprintln!("wrote {}", args.out.display());
    Ok(())
}

fn plot_kind_name(kind: PlotKind) -> &'static str {
    match kind {
        PlotKind::Raster => "raster",
        PlotKind::Phase => "phase",
        PlotKind::PatternDuration => "pattern-duration",
        PlotKind::Ratio => "ratio",
        PlotKind::Triangle => "triangle",
    }
}

fn run_analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    if args.n < 2 {
        return Err(usage(format!("--n must be at least 2, got {}", args.n)));
    }
    check_cluster_flags(args.min_cluster_size, args.prune_threshold)?;
    std::fs::create_dir_all(&args.outdir).map_err(|e| Failure::Data(e.to_string()))?;
    let mut corpus = load_corpus(&args.input)?;
    let quantum = resolve_quantum(&mut corpus, &args.quantum)?;

    // Measures over pairs, triplets, and the clustering length.
    let mut lengths = vec![2usize, 3];
    if !lengths.contains(&args.n) {
        lengths.push(args.n);
    }
    let report = io::compute_measures(&corpus, &lengths, quantum, args.quantum.theta)?;
    io::write_measures_json(args.outdir.join("measures.json"), &report)?;

    // Clustering and the transition network at the requested length.
    let segments = corpus.segments(args.n)?;
    let labeling = cluster::cluster_segments(&segments, args.min_cluster_size)?;
    let net = network::build_network(&labeling, &segments, quantum, args.prune_threshold)?;
    io::write_labels_csv(args.outdir.join("labels.csv"), &segments, &labeling)?;
    io::write_network_json(args.outdir.join("network.json"), &net)?;

    // Plots: the length-2 suite plus the length-3 triangle.
    let pairs = if args.n == 2 {
        segments.clone()
    } else {
        corpus.segments(2)?
    };
    let bounds = {
        let intervals = corpus.pooled_intervals();
        if intervals.is_empty() {
            None
        } else {
            let lo = intervals.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = intervals.iter().copied().fold(0.0_f64, f64::max);
            Some((lo, hi))
        }
    };
    let spec = PlotSpec {
        quantum,
        annotation_max: args.annotation_max,
        interval_bounds: bounds,
        ..PlotSpec::default()
    };
    io::write_text(
        args.outdir.join("raster.svg"),
        &viz::raster_plot(&pairs, &spec)?,
    )?;
    io::write_text(
        args.outdir.join("phase.svg"),
        &viz::phase_plot(&pairs, &spec, true)?,
    )?;
    io::write_text(
        args.outdir.join("ratio.svg"),
        &viz::ratio_plot(&pairs, &spec)?,
    )?;
    let (pair_labeling, pair_network) = if args.n == 2 {
        (Some(&labeling), Some(&net))
    } else {
        (None, None)
    };
    io::write_text(
        args.outdir.join("pattern_duration.svg"),
        &viz::pattern_duration_plot(&pairs, pair_labeling, pair_network, &spec)?,
    )?;
    let triplets = if args.n == 3 {
        segments.clone()
    } else {
        corpus.segments(3)?
    };
    let (tri_labeling, tri_network) = if args.n == 3 {
        (Some(&labeling), Some(&net))
    } else {
        (None, None)
    };
    io::write_text(
        args.outdir.join("triangle.svg"),
        &viz::triangle_plot(&triplets, tri_labeling, tri_network, &spec)?,
    )?;

    let manifest = json!({
        "tool": "rhythmseg",
        "command": "analyze",
        "parameters": {
            "input": args.input.input.display().to_string(),
            "onsets": args.input.onsets,
            "n": args.n,
            "min_cluster_size": args.min_cluster_size,
            "prune_threshold": args.prune_threshold,
            "quantum": quantum,
            "theta": args.quantum.theta,
            "annotation_max": args.annotation_max,
        },
        "outputs": [
            "measures.json", "labels.csv", "network.json",
            "raster.svg", "phase.svg", "ratio.svg", "pattern_duration.svg", "triangle.svg",
        ],
    });
    io::write_json(args.outdir.join("manifest.json"), &manifest)?;
    eprintln!(
        "analysis written to {} ({} segments, {} clusters, {} network edges)",
        args.outdir.display(),
        segments.len(),
        labeling.clusters.len(),
        net.edges.len()
    );
    Ok(())
}
