use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gsamp::config::ExperimentConfig;
use gsamp::experiment::{self, build_setup, describe};
use gsamp::io::{design_to_json, read_payload, save_graph, spectrum_to_json, write_edge_list, write_filter, write_payload};
use gsamp::registry::{self, FILTER_IDS};
use gsamp::report::{emit_report, summarize, Format, Report};
use gsamp::{Error, Result};
use gsamp_core::bipartite::PAIRING_TOLERANCE;
use gsamp_core::graph::{gen_circular, gen_random_bipartite_with, gen_random_sensor_with, SensorParams};
use gsamp_core::graph::{DEFAULT_BIPARTITE_EDGE_PROB, DEFAULT_SENSOR_NEIGHBORS};

#[derive(Parser)]
#[command(name = "gsamp", version, about = "Graph signal sampling and recovery in the graph frequency domain")]
struct Cli {
    /// Overrides the config's rng_seed (and the graph seed of gen-graph).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Overrides the config's trial count.
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Writes a generated graph as an edge list.
    GenGraph(GenGraph),
    /// Tabulates spectral filters over a graph's frequencies.
    Filters {
        #[command(subcommand)]
        command: FiltersCommand,
    },
    /// Runs the single method selected by a config.
    Recover(Recover),
    /// Runs an experiment grid.
    Exp {
        #[command(subcommand)]
        command: ExpCommand,
    },
    /// Rebuilds a signal from a one-branch payload.
    Decode(Decode),
    /// Numerical checks on bipartite graphs.
    Verify {
        #[command(subcommand)]
        command: VerifyCommand,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Sensor,
    Circular,
    Bipartite,
}

#[derive(Args)]
struct GenGraph {
    #[arg(value_enum)]
    kind: Kind,
    /// Vertex count; total over both parts for bipartite graphs.
    #[arg(short, long)]
    n: usize,
    #[arg(long, default_value_t = DEFAULT_SENSOR_NEIGHBORS)]
    neighbors: usize,
    #[arg(long, default_value_t = DEFAULT_BIPARTITE_EDGE_PROB)]
    edge_prob: f64,
}

#[derive(Subcommand)]
enum FiltersCommand {
    /// One column per filter, one row per graph frequency.
    Dump {
        #[arg(long)]
        config: PathBuf,
        /// Filter ids; all built-in filters when empty.
        #[arg(long, value_delimiter = ',')]
        ids: Vec<String>,
        /// Two-column text that `file:` filter ids read back; one id only.
        #[arg(long)]
        text: bool,
    },
}

#[derive(Args)]
struct Recover {
    #[arg(long)]
    config: PathBuf,
    /// Writes the correction design as JSON.
    #[arg(long)]
    design_out: Option<PathBuf>,
    /// Writes the sampled spectrum of trial 0 as JSON.
    #[arg(long)]
    spectrum_out: Option<PathBuf>,
    /// Emits one mean row per method instead of per-trial rows.
    #[arg(long)]
    summary: bool,
}

#[derive(Subcommand)]
enum ExpCommand {
    /// Five methods under two sampling filters plus the bandlimited reference,
    /// for two generators and two noise levels.
    Table2 {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        summary: bool,
    },
    /// Exact and Chebyshev one-branch compression on a bipartite graph.
    Bipartite {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        summary: bool,
        /// Writes the encoding of trial 0.
        #[arg(long)]
        payload: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Decode {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    payload: PathBuf,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Residuals of the vertex/frequency sampling equivalence.
    Theorem1 {
        #[arg(long)]
        config: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn output(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load(cli: &Cli, path: &Path) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::load(path)?;
    if let Some(s) = cli.seed {
        cfg.rng_seed = s;
    }
    if let Some(t) = cli.trials {
        cfg.trials = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit(cli: &Cli, mut report: Report, summary: bool) -> Result<()> {
    if summary {
        report.rows = summarize(&report.rows);
    }
    let mut w = output(cli.out.as_deref())?;
    emit_report(&report, cli.format, &mut w)?;
    w.flush()?;
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::GenGraph(a) => gen_graph(cli, a),
        Command::Filters { command: FiltersCommand::Dump { config, ids, text } } => dump_filters(cli, config, ids, *text),
        Command::Recover(a) => {
            let cfg = load(cli, &a.config)?;
            if a.design_out.is_some() || a.spectrum_out.is_some() {
                let setup = build_setup(&cfg)?;
                if let Some(p) = &a.design_out {
                    std::fs::write(p, design_to_json(&experiment::configured_design(&setup, &cfg)?) + "\n")?;
                }
                if let Some(p) = &a.spectrum_out {
                    std::fs::write(p, spectrum_to_json(&experiment::first_spectrum(&setup, &cfg)?) + "\n")?;
                }
            }
            emit(cli, experiment::run_recovery_experiment(&cfg)?, a.summary)
        }
        Command::Exp { command: ExpCommand::Table2 { config, summary } } => {
            let cfg = load(cli, config)?;
            emit(cli, experiment::run_table2(&cfg)?, *summary)
        }
        Command::Exp { command: ExpCommand::Bipartite { config, summary, payload } } => {
            let cfg = load(cli, config)?;
            if let Some(p) = payload {
                let mut w = BufWriter::new(File::create(p)?);
                write_payload(&experiment::encode_payload(&cfg)?, &mut w)?;
                w.flush()?;
            }
            emit(cli, experiment::run_bipartite_experiment(&cfg)?, *summary)
        }
        Command::Decode(a) => {
            let cfg = load(cli, &a.config)?;
            let sys = experiment::build_bipartite(&cfg)?;
            let payload = read_payload(BufReader::new(File::open(&a.payload)?))?;
            let x = experiment::decode_payload(&sys, &payload)?;
            let mut w = output(cli.out.as_deref())?;
            for v in x.iter() {
                writeln!(w, "{v}")?;
            }
            w.flush()?;
            Ok(())
        }
        Command::Verify { command: VerifyCommand::Theorem1 { config } } => {
            let cfg = load(cli, config)?;
            let (t1, c1) = experiment::verify_theorem1(&cfg)?;
            let mut w = output(cli.out.as_deref())?;
            writeln!(w, "sampling_identity_residual {t1:e}")?;
            writeln!(w, "pipeline_relative_residual {c1:e}")?;
            w.flush()?;
            if !(t1 <= PAIRING_TOLERANCE && c1 <= PAIRING_TOLERANCE) {
                return Err(gsamp_core::Error::PairingFailure { residual: t1.max(c1) }.into());
            }
            Ok(())
        }
    }
}

fn gen_graph(cli: &Cli, a: &GenGraph) -> Result<()> {
    let seed = cli.seed.unwrap_or(0);
    let g = match a.kind {
        Kind::Sensor => gen_random_sensor_with(a.n, seed, SensorParams { neighbors: a.neighbors })?,
        Kind::Circular => gen_circular(a.n)?,
        Kind::Bipartite => {
            if a.n % 2 != 0 {
                return Err(Error::Config(format!("bipartite n must be even, got {}", a.n)));
            }
            gen_random_bipartite_with(a.n / 2, seed, a.edge_prob)?
        }
    };
    match &cli.out {
        Some(p) => save_graph(&g, p),
        None => {
            let mut w = output(None)?;
            write_edge_list(&g, &mut w)?;
            w.flush()?;
            Ok(())
        }
    }
}

fn dump_filters(cli: &Cli, config: &Path, ids: &[String], text: bool) -> Result<()> {
    let cfg = load(cli, config)?;
    let setup = build_setup(&cfg)?;
    let ctx = setup.filter_context(cfg.eps);
    let ids: Vec<String> = if ids.is_empty() { FILTER_IDS.iter().map(|s| s.to_string()).collect() } else { ids.to_vec() };
    let filters = ids
        .iter()
        .map(|id| {
            if !registry::is_known(id) {
                return Err(Error::Config(format!("unknown filter id {id:?}")));
            }
            registry::build(id, ctx)
        })
        .collect::<Result<Vec<_>>>()?;
    let lambdas = setup.basis.lambdas();
    let mut w = output(cli.out.as_deref())?;
    if text {
        let [f] = filters.as_slice() else {
            return Err(Error::Config("--text writes exactly one filter".into()));
        };
        write_filter(lambdas, f, Some(&format!("{} {}", ids[0], describe(f.response()))), &mut w)?;
        w.flush()?;
        return Ok(());
    }
    match cli.format {
        Format::Csv => {
            let mut wr = csv::Writer::from_writer(&mut w);
            wr.write_record(std::iter::once("lambda").chain(ids.iter().map(String::as_str)))?;
            for (i, l) in lambdas.iter().enumerate() {
                let row = std::iter::once(l.to_string()).chain(filters.iter().map(|f| f.values()[i].to_string()));
                wr.write_record(row)?;
            }
            wr.flush()?;
        }
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("lambda".into(), serde_json::to_value(lambdas)?);
            for (id, f) in ids.iter().zip(&filters) {
                obj.insert(
                    id.clone(),
                    serde_json::json!({ "response": describe(f.response()), "values": f.values() }),
                );
            }
            serde_json::to_writer_pretty(&mut w, &obj)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}
