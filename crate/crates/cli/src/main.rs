//! `fsdem` — run feature-selection evaluation sweeps, stability studies and
//! benchmarks against the HTTP service. Without `--server` an in-process
//! instance is started on a loopback port, so every command also works
//! standalone.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 partial benchmark
//! failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fsdem_client::{Client, ClientError};
use fsdem_core::harness::{
    BenchmarkConfig, DatasetSource, StabilitySpec, SweepSpec, emit_report, ReportFormat,
};
use fsdem_core::metrics::FitnessWeights;
use fsdem_core::selectors::{SelectorConfig, SelectorId};
use fsdem_core::evaluators::{EvaluatorConfig, MeasureId};

#[derive(Parser)]
#[command(name = "fsdem", version, about = "Feature-selection evaluation toolkit")]
struct Cli {
    /// Base URL of a running service (e.g. http://127.0.0.1:7878).
    /// When absent, an in-process instance handles the command.
    #[arg(long, global = true)]
    server: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one selector across subset sizes and report the curve
    /// metrics.
    Sweep {
        /// Dataset: a CSV path, or `wealth` for the generated dummy.
        #[arg(long)]
        data: String,
        /// Selector: random, info_gain, chi2, forest or sfs.
        #[arg(long)]
        selector: String,
        /// Measure: accuracy or clacc.
        #[arg(long, default_value = "accuracy")]
        measure: String,
        /// Lower bound of the integration range (default 1).
        #[arg(long)]
        a: Option<u32>,
        /// Upper bound of the integration range (default: all features).
        #[arg(long)]
        b: Option<u32>,
        /// Evaluate every stride-th subset size.
        #[arg(long, default_value_t = 1)]
        stride: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for the report JSON and plot CSVs; stdout gets the
        /// report either way.
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Overlap-stability indices of a selector under noisy repetition.
    Stability {
        #[arg(long)]
        data: String,
        #[arg(long)]
        selector: String,
        /// Number of noisy repetitions.
        #[arg(long, default_value_t = 10)]
        repeats: usize,
        /// Noise level as a fraction of each feature's standard deviation.
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        /// Subset size to compare (default: half the features).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },

    /// Run a full benchmark from a JSON config file.
    Benchmark {
        /// Path to a BenchmarkConfig JSON document.
        #[arg(long)]
        config: PathBuf,
        /// Worker-pool size (default: available parallelism). Results never
        /// depend on it.
        #[arg(long)]
        workers: Option<usize>,
    },

    /// Generate the wealth dummy dataset as CSV.
    Dummy {
        #[arg(long, default_value_t = 500)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },

    /// Run the HTTP service in the foreground.
    Serve {
        #[arg(long, default_value = "127.0.0.1")]
        address: String,
        #[arg(long, default_value_t = 7878)]
        port: u16,
    },
}

enum CliError {
    Usage(String),
    Data(String),
}

impl From<ClientError> for CliError {
    fn from(e: ClientError) -> Self {
        match &e {
            ClientError::Api { status: 400, .. } => CliError::Usage(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

fn parse_dataset(data: &str) -> DatasetSource {
    if data == "wealth" {
        DatasetSource::wealth(500)
    } else {
        DatasetSource::from_path(data)
    }
}

fn parse_selector(selector: &str, seed: u64) -> Result<SelectorConfig, CliError> {
    let id: SelectorId = selector
        .parse()
        .map_err(|e: fsdem_core::Error| CliError::Usage(e.to_string()))?;
    Ok(SelectorConfig::new(id).with_seed(seed))
}

async fn connect(server: &Option<String>) -> Result<Client, CliError> {
    let base = match server {
        Some(url) => url.clone(),
        None => {
            let (url, _handle) = fsdem_server::spawn_local()
                .await
                .map_err(|e| CliError::Data(format!("failed to start local service: {e}")))?;
            url
        }
    };
    let client = Client::new(base);
    client.health().await?;
    Ok(client)
}

async fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Sweep {
            data,
            selector,
            measure,
            a,
            b,
            stride,
            seed,
            out,
        } => {
            let measure_id: MeasureId = measure
                .parse()
                .map_err(|e: fsdem_core::Error| CliError::Usage(e.to_string()))?;
            let spec = SweepSpec {
                dataset: parse_dataset(&data),
                selector: parse_selector(&selector, seed)?,
                evaluator: EvaluatorConfig::new(measure_id).with_seed(seed),
                a,
                b,
                stride,
                seed,
                weights: FitnessWeights::default(),
            };
            let client = connect(&cli.server).await?;
            let report = client.sweep(&spec).await?;
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            if let Some(dir) = out {
                let written = emit_report(std::slice::from_ref(&report), ReportFormat::Json, &dir)
                    .map_err(|e| CliError::Data(e.to_string()))?;
                for path in written {
                    eprintln!("wrote {}", path.display());
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Stability {
            data,
            selector,
            repeats,
            noise,
            k,
            seed,
        } => {
            let spec = StabilitySpec {
                dataset: parse_dataset(&data),
                selector: parse_selector(&selector, seed)?,
                repeats,
                noise,
                k,
                seed,
            };
            let client = connect(&cli.server).await?;
            let report = client.stability(&spec).await?;
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            Ok(ExitCode::SUCCESS)
        }

        Command::Benchmark { config, workers } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| CliError::Data(format!("cannot read {}: {e}", config.display())))?;
            let config: BenchmarkConfig = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("invalid benchmark config: {e}")))?;
            let client = connect(&cli.server).await?;
            let outcome = client.benchmark(&config, workers).await?;
            let doc = serde_json::json!({
                "summary": outcome.summary,
                "failures": outcome.failures,
                "output_dir": config.output_dir,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("summary serializes"));
            if outcome.failures.is_empty() {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!(
                    "{} of {} runs failed",
                    outcome.summary.failed_runs, outcome.summary.total_runs
                );
                Ok(ExitCode::from(3))
            }
        }

        Command::Dummy { n, seed, out } => {
            let client = connect(&cli.server).await?;
            let csv = client.dummy(n, seed).await?;
            std::fs::write(&out, csv)
                .map_err(|e| CliError::Data(format!("cannot write {}: {e}", out.display())))?;
            eprintln!("wrote {}", out.display());
            Ok(ExitCode::SUCCESS)
        }

        Command::Serve { address, port } => {
            let bind = format!("{address}:{port}");
            let listener = tokio::net::TcpListener::bind(&bind)
                .await
                .map_err(|e| CliError::Data(format!("failed to bind {bind}: {e}")))?;
            eprintln!("fsdem service listening on http://{bind}");
            axum_serve(listener).await.map_err(CliError::Data)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

async fn axum_serve(listener: tokio::net::TcpListener) -> Result<(), String> {
    fsdem_server::serve(listener).await.map_err(|e| e.to_string())
}

#[tokio::main]
async fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders --help/--version through the same error path.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli).await {
        Ok(code) => code,
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Data(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
