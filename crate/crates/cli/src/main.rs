use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use amoeba_core::algorithms::{documented_input, REGISTRY};
use amoeba_core::engine::EngineError;
use amoeba_core::io::{
    load_config, read_trace, verify_trace, RunConfig, TraceHeader, TraceRecord, TraceWriter,
};
use amoeba_core::render::{render_ascii, render_svg};
use amoeba_core::{
    Action, ConflictPolicy, DisconnectPolicy, RandomnessSource, RoundReport, Simulation,
    SystemConfig,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

const SEED_ENV: &str = "AMOEBA_SIM_SEED";

const EXIT_USAGE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_DISCONNECTED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "amoeba-sim",
    version,
    about = "Run and render amoeba particle systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an algorithm on a configuration file or on its documented input.
    Run(RunArgs),
    /// Check a configuration file without running it.
    Validate {
        /// Configuration file (JSON).
        config: PathBuf,
    },
    /// List the built-in algorithms.
    Algorithms,
    /// Re-render the rounds recorded in a trace file.
    Replay(ReplayArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Configuration file (JSON).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Number of rounds; overrides the configuration.
    #[arg(long)]
    rounds: Option<u64>,
    /// Seed; overrides the configuration and AMOEBA_SIM_SEED.
    #[arg(long)]
    seed: Option<u64>,
    /// Algorithm; overrides the configuration. Without --config the
    /// algorithm's documented input is used.
    #[arg(long)]
    algorithm: Option<String>,
    /// Write a line-delimited JSON trace here.
    #[arg(long)]
    trace_out: Option<PathBuf>,
    #[command(flatten)]
    render: RenderArgs,
    #[arg(long, value_enum)]
    on_disconnect: Option<OnDisconnect>,
    #[arg(long, value_enum)]
    conflict: Option<Conflict>,
    /// Require contracted particles in the start state.
    #[arg(long)]
    strict_init: bool,
}

#[derive(Args)]
struct ReplayArgs {
    /// Trace file written by `run --trace-out`.
    trace: PathBuf,
    #[command(flatten)]
    render: RenderArgs,
}

#[derive(Args, Clone)]
struct RenderArgs {
    #[arg(long, value_enum, default_value_t = RenderKind::None)]
    render: RenderKind,
    /// Render round 0, every K-th round and the last round.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    render_every: u64,
    /// Write frames as files here instead of printing ASCII to stdout.
    #[arg(long)]
    render_dir: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum RenderKind {
    None,
    Ascii,
    Svg,
}

#[derive(Copy, Clone, ValueEnum)]
enum OnDisconnect {
    Halt,
    Warn,
}

#[derive(Copy, Clone, ValueEnum)]
enum Conflict {
    LowestId,
    Seeded,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    fn io(what: &str, path: &Path, e: io::Error) -> Self {
        Self::new(EXIT_USAGE, format!("{what} {}: {e}", path.display()))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::Validate { config } => validate(&config),
        Command::Algorithms => {
            for (name, description) in REGISTRY {
                println!("{name:<16} {description}");
            }
            Ok(())
        }
        Command::Replay(args) => replay(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("amoeba-sim: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::new(EXIT_INVALID, e.to_string())
}

fn validate(path: &Path) -> Result<(), Failure> {
    let cfg = load_config(path).map_err(invalid)?;
    let (sys, _) = cfg.validate().map_err(invalid)?;
    println!("ok: {} particles, algorithm {}", sys.len(), cfg.algorithm);
    Ok(())
}

fn env_seed() -> Result<Option<u64>, Failure> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::new(EXIT_USAGE, format!("{SEED_ENV}={v:?} is not a u64"))),
        Err(_) => Ok(None),
    }
}

fn build_config(args: &RunArgs) -> Result<RunConfig, Failure> {
    let mut cfg = match (&args.config, &args.algorithm) {
        (Some(path), _) => load_config(path).map_err(invalid)?,
        (None, Some(name)) => {
            let sys = documented_input(name).map_err(invalid)?;
            RunConfig::from_system(name, &sys)
        }
        (None, None) => {
            return Err(Failure::new(
                EXIT_USAGE,
                "run needs --config or --algorithm",
            ))
        }
    };
    if let Some(name) = &args.algorithm {
        cfg.algorithm.clone_from(name);
    }
    if let Some(rounds) = args.rounds {
        cfg.rounds = rounds;
    }
    cfg.seed = match (args.seed, cfg.seed) {
        (Some(s), _) | (None, Some(s)) => Some(s),
        (None, None) => env_seed()?,
    };
    if let Some(d) = args.on_disconnect {
        cfg.policy.on_disconnect = match d {
            OnDisconnect::Halt => DisconnectPolicy::Halt,
            OnDisconnect::Warn => DisconnectPolicy::Warn,
        };
    }
    if let Some(c) = args.conflict {
        cfg.policy.conflict = match c {
            Conflict::LowestId => ConflictPolicy::LowestId,
            Conflict::Seeded => ConflictPolicy::Seeded,
        };
    }
    cfg.policy.strict_init |= args.strict_init;
    Ok(cfg)
}

/// Emits frames for rounds `0, K, 2K, ...` and for the last round.
struct Renderer {
    args: RenderArgs,
    last: Option<u64>,
}

impl Renderer {
    fn new(args: RenderArgs) -> Result<Self, Failure> {
        if args.render == RenderKind::Svg && args.render_dir.is_none() {
            return Err(Failure::new(EXIT_USAGE, "--render svg needs --render-dir"));
        }
        if let (Some(dir), true) = (&args.render_dir, args.render != RenderKind::None) {
            fs::create_dir_all(dir).map_err(|e| Failure::io("cannot create", dir, e))?;
        }
        Ok(Self { args, last: None })
    }

    fn frame(&mut self, round: u64, sys: &SystemConfig) -> Result<(), Failure> {
        if round.is_multiple_of(self.args.render_every) {
            self.emit(round, sys)?;
        }
        Ok(())
    }

    fn finish(&mut self, round: u64, sys: &SystemConfig) -> Result<(), Failure> {
        if self.last != Some(round) {
            self.emit(round, sys)?;
        }
        Ok(())
    }

    fn emit(&mut self, round: u64, sys: &SystemConfig) -> Result<(), Failure> {
        let (text, ext) = match self.args.render {
            RenderKind::None => return Ok(()),
            RenderKind::Ascii => (render_ascii(sys), "txt"),
            RenderKind::Svg => (render_svg(sys), "svg"),
        };
        self.last = Some(round);
        match &self.args.render_dir {
            Some(dir) => {
                let path = dir.join(format!("round_{round:06}.{ext}"));
                fs::write(&path, text).map_err(|e| Failure::io("cannot write", &path, e))
            }
            None => {
                println!("round {round}");
                print!("{text}");
                Ok(())
            }
        }
    }
}

#[derive(Default)]
struct Summary {
    rounds: u64,
    applied: [u64; 6],
    created: u64,
    removed: u64,
}

impl Summary {
    fn add(&mut self, report: &RoundReport) {
        self.rounds = report.round;
        for (slot, action) in self.applied.iter_mut().zip(Action::ALL) {
            *slot += report.applied(action) as u64;
        }
        self.created += report.created.len() as u64;
        self.removed += report.removed.len() as u64;
    }

    fn print(&self, sys: &SystemConfig) {
        let counts: Vec<String> = Action::ALL
            .iter()
            .zip(self.applied)
            .map(|(a, n)| format!("{}={n}", a.letter()))
            .collect();
        eprintln!(
            "rounds={} particles={} created={} removed={} connected={} applied: {}",
            self.rounds,
            sys.len(),
            self.created,
            self.removed,
            sys.is_connected(),
            counts.join(" ")
        );
    }
}

fn run(args: RunArgs) -> Result<(), Failure> {
    let cfg = build_config(&args)?;
    let seed = cfg.seed.unwrap_or(0);
    let (initial, alg) = cfg.validate().map_err(invalid)?;
    let alg_name = cfg.algorithm.clone();

    let mut trace = match &args.trace_out {
        Some(path) => {
            let file = File::create(path).map_err(|e| Failure::io("cannot create", path, e))?;
            let header = TraceHeader::new(&alg_name, seed, cfg.policy);
            let writer = TraceWriter::new(BufWriter::new(file), &header)
                .map_err(|e| Failure::io("cannot write", path, e))?;
            Some((writer, path.clone()))
        }
        None => None,
    };
    let mut record = |r: &TraceRecord| -> Result<(), Failure> {
        if let Some((w, path)) = trace.as_mut() {
            w.record(r)
                .map_err(|e| Failure::io("cannot write", path, e))?;
        }
        Ok(())
    };

    let mut renderer = Renderer::new(args.render.clone())?;
    let mut sim =
        Simulation::new(initial, &alg, RandomnessSource::new(seed), cfg.policy).map_err(invalid)?;
    record(&TraceRecord::initial(sim.config()))?;
    renderer.frame(0, sim.config())?;

    let mut summary = Summary::default();
    while sim.round() < cfg.rounds && !sim.config().is_empty() {
        match sim.step() {
            Ok(report) => {
                if !report.connected_after {
                    eprintln!(
                        "warning: configuration disconnected in round {}",
                        report.round
                    );
                }
                record(&TraceRecord::after(sim.config(), &report))?;
                renderer.frame(report.round, sim.config())?;
                summary.add(&report);
            }
            Err(EngineError::Disconnected { report, config }) => {
                record(&TraceRecord::after(&config, &report))?;
                renderer.frame(report.round, &config)?;
                renderer.finish(report.round, &config)?;
                summary.add(&report);
                summary.print(&config);
                return Err(Failure::new(
                    EXIT_DISCONNECTED,
                    format!(
                        "configuration disconnected in round {}; halting",
                        report.round
                    ),
                ));
            }
            Err(e) => return Err(Failure::new(EXIT_INVALID, e.to_string())),
        }
    }
    renderer.finish(sim.round(), sim.config())?;
    summary.print(sim.config());
    Ok(())
}

fn replay(args: ReplayArgs) -> Result<(), Failure> {
    let file = File::open(&args.trace).map_err(|e| Failure::io("cannot open", &args.trace, e))?;
    let trace = read_trace(BufReader::new(file)).map_err(invalid)?;
    verify_trace(&trace).map_err(invalid)?;
    let mut renderer = Renderer::new(args.render)?;
    let mut last = None;
    for record in &trace.records {
        let sys = record.system().map_err(invalid)?;
        renderer.frame(record.round, &sys)?;
        last = Some((record.round, sys));
    }
    if let Some((round, sys)) = last {
        renderer.finish(round, &sys)?;
    }
    io::stdout()
        .flush()
        .map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    eprintln!(
        "replayed {} records of {} (seed {})",
        trace.records.len(),
        trace.header.algorithm,
        trace.header.seed
    );
    Ok(())
}
