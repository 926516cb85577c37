use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use evograph::engine::{SchedulerMode, SchedulerPolicy};
use evograph::harness::{
    cmd_gen_batches, cmd_ingest, cmd_query, cmd_schedule, cmd_verify, parse_algorithms, EngineKind,
    ExperimentConfig, GenConfig, HarnessError,
};
use evograph::store::Interval;
use evograph::trigrid::ScheduleKind;

#[derive(Parser)]
#[command(name = "evograph", version, about = "Multi-snapshot graph queries through a shared common graph")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Turn an edge list (`src dst [weight]` per line) into a one-snapshot store.
    Ingest {
        /// Edge-list file.
        input: PathBuf,
        #[arg(long)]
        store: PathBuf,
    },
    /// Append random transitions to a store.
    GenBatches {
        #[arg(long)]
        store: PathBuf,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 1000)]
        batch_size: usize,
        #[arg(long, default_value_t = 0.5)]
        add_fraction: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        max_weight: u32,
    },
    /// Solve the evaluation schedule of a window and report its cost.
    Schedule {
        #[arg(long)]
        store: PathBuf,
        #[arg(long)]
        window: Option<Interval>,
        #[arg(long, default_value = "work-sharing")]
        engine: ScheduleKind,
        /// Write the schedule document here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include every batch edge in the document.
        #[arg(long)]
        edges: bool,
        /// Weight of one deletion in the streaming cost.
        #[arg(long, default_value_t = 1.0)]
        deletion_cost: f64,
    },
    /// Run queries and write result files and timing CSVs.
    Query {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare engines (or stored results) against from-scratch evaluation.
    Verify {
        #[command(flatten)]
        run: RunArgs,
        /// Check the result files of a previous query instead of rerunning engines.
        #[arg(long)]
        results: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    store: PathBuf,
    #[arg(long)]
    window: Option<Interval>,
    /// bfs, sssp, sswp, ssnp, viterbi, a comma-separated list, or all.
    #[arg(long, default_value = "all")]
    algo: String,
    #[arg(long, default_value_t = 0)]
    source: u32,
    /// baseline, direct-hop, work-sharing, a comma-separated list, or all.
    #[arg(long, default_value = "all")]
    engine: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Force one scheduler mode instead of choosing by batch size.
    #[arg(long, value_parser = parse_mode)]
    mode: Option<SchedulerMode>,
}

fn parse_mode(s: &str) -> Result<SchedulerMode, String> {
    match s {
        "sync" => Ok(SchedulerMode::Synchronous),
        "async" => Ok(SchedulerMode::Asynchronous),
        _ => Err(format!("unknown mode `{s}` (expected sync or async)")),
    }
}

impl RunArgs {
    fn config(&self) -> Result<ExperimentConfig, HarnessError> {
        let mut cfg = ExperimentConfig::new(&self.store);
        cfg.window = self.window;
        cfg.algorithms = parse_algorithms(&self.algo).map_err(HarnessError::Usage)?;
        cfg.engines = if self.engine == "all" {
            EngineKind::ALL.to_vec()
        } else {
            self.engine.split(',').map(str::parse).collect::<Result<_, _>>().map_err(HarnessError::Usage)?
        };
        cfg.source = self.source;
        cfg.seed = self.seed;
        cfg.threads = self.threads;
        cfg.policy = SchedulerPolicy { force: self.mode, ..SchedulerPolicy::default() };
        cfg.with_env_threshold()
    }
}

fn run(command: Command) -> Result<ExitCode, HarnessError> {
    match command {
        Command::Ingest { input, store } => {
            let s = cmd_ingest(&input, &store)?;
            println!("ingested {} edges over {} vertices", s.base_edges().len(), s.vertex_count());
        }
        Command::GenBatches { store, count, batch_size, add_fraction, seed, max_weight } => {
            let cfg = GenConfig { count, batch_size, add_fraction, seed, max_weight };
            let created = cmd_gen_batches(&store, &cfg)?;
            println!("appended {} transitions", created.len());
        }
        Command::Schedule { store, window, engine, out, edges, deletion_cost } => {
            let report = cmd_schedule(&store, window, engine, out.as_deref(), edges, deletion_cost)?;
            println!("{report}");
        }
        Command::Query { run, out } => {
            let runs = cmd_query(&run.config()?, &out)?;
            let files: usize = runs.iter().map(|r| r.results.len()).sum();
            println!("wrote {files} result files under {}", out.display());
        }
        Command::Verify { run, results } => {
            let report = cmd_verify(&run.config()?, results.as_deref())?;
            println!("{report}");
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
