//! `isotensor`: batch spectral operations over JSON-lines tensor records.

mod commands;
mod record;

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use isotensor::batch::{map_records, BatchConfig};
use isotensor::plasticity::vonmises_demo_map;
use isotensor::sampling::{log_uniform, random_symmetric, rng, with_eigenvalues};
use isotensor::Tolerances;

use commands::{evaluate, with_id, Command, VerifySummary};
use record::{parse_line, Payload, Record, RecordError};

#[derive(Parser, Debug)]
#[command(name = "isotensor", version, about)]
struct Cli {
    /// Read records from this file instead of stdin.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Write results to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Relative spread below which all eigenvalues count as equal.
    #[arg(long, global = true, value_parser = positive)]
    tol_triple: Option<f64>,

    /// Relative gap below which two eigenvalues count as equal.
    #[arg(long, global = true, value_parser = positive)]
    tol_gap: Option<f64>,

    /// Worker threads; output stays in input order.
    #[arg(long, global = true, default_value_t = 1)]
    parallel: usize,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// I1, I2, I3, J2, J3 and the Lode angle.
    Invariants,
    /// Eigenvalues and multiplicity.
    Eigen,
    /// Eigenvalues and eigenbases.
    Basis,
    /// Eigenbasis spins (distinct eigenvalues only).
    Spin,
    /// Logarithmic strain of F and its tangent with respect to B.
    Logstrain,
    /// Stress and consistent tangent of the von Mises demo map.
    Stress {
        #[arg(long)]
        k: f64,
        #[arg(long)]
        g: f64,
        #[arg(long)]
        qy: f64,
    },
    /// Compare closed-form results with the Jacobi and FD oracles.
    Verify {
        /// Seed of the generated corpus (ignored with --input).
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Size of the generated corpus.
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

fn read_records(input: &Option<PathBuf>) -> io::Result<Vec<Result<Record, RecordError>>> {
    let reader: Box<dyn Read> = match input {
        Some(path) => Box::new(File::open(path)?),
        None => Box::new(io::stdin().lock()),
    };
    let mut out = Vec::new();
    for (n, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(parse_line(n + 1, &line));
    }
    Ok(out)
}

/// Seeded mixed-scale corpus: mostly generic tensors, with every tenth a
/// repeated pair and every 25th a multiple of the identity.
fn generate_corpus(seed: u64, count: usize) -> Vec<Result<Record, RecordError>> {
    let mut rng = rng(seed);
    (0..count)
        .map(|n| {
            let scale = log_uniform(&mut rng, 1e-3, 1e3);
            let t = if n % 25 == 24 {
                with_eigenvalues(&mut rng, [scale; 3])
            } else if n % 10 == 9 {
                with_eigenvalues(&mut rng, [scale, -0.5 * scale, -0.5 * scale])
            } else {
                random_symmetric(&mut rng, scale)
            };
            Ok(Record {
                line: n + 1,
                id: Some(format!("r{n:05}")),
                payload: Payload::Tensor(t.0),
            })
        })
        .collect()
}

fn run(cli: Cli) -> io::Result<bool> {
    let mut tol = Tolerances::DEFAULT;
    if let Some(t) = cli.tol_triple {
        tol.rel_triple = t;
    }
    if let Some(g) = cli.tol_gap {
        tol.gap = g;
    }
    let (command, records) = match cli.command {
        Cmd::Invariants => (Command::Invariants, None),
        Cmd::Eigen => (Command::Eigen, None),
        Cmd::Basis => (Command::Basis, None),
        Cmd::Spin => (Command::Spin, None),
        Cmd::Logstrain => (Command::LogStrain, None),
        Cmd::Stress { k, g, qy } => {
            let map = vonmises_demo_map(k, g, qy)
                .map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e.to_string()))?;
            (Command::Stress(map), None)
        }
        Cmd::Verify { seed, count } => (
            Command::Verify,
            cli.input.is_none().then(|| generate_corpus(seed, count)),
        ),
    };
    let records = match records {
        Some(r) => r,
        None => read_records(&cli.input)?,
    };

    let outputs: Vec<Result<Value, RecordError>> =
        map_records(&records, BatchConfig::with_threads(cli.parallel), |r| {
            let record = r.as_ref().map_err(Clone::clone)?;
            evaluate(command, record, &tol)
                .map(|v| with_id(&record.id, v))
                .map_err(|message| RecordError {
                    line: record.line,
                    id: record.id.clone(),
                    message,
                })
        });

    let writer: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut writer = BufWriter::new(writer);
    let mut summary = VerifySummary::default();
    let mut all_ok = true;
    for out in &outputs {
        let value = match out {
            Ok(v) => {
                summary.add(Some(v));
                v.clone()
            }
            Err(e) => {
                all_ok = false;
                summary.add(None);
                e.to_json()
            }
        };
        serde_json::to_writer(&mut writer, &value)?;
        writer.write_all(b"\n")?;
    }
    if matches!(command, Command::Verify) {
        serde_json::to_writer(&mut writer, &summary.to_json())?;
        writer.write_all(b"\n")?;
    }
    writer.flush()?;
    Ok(all_ok)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("isotensor: {e}");
            ExitCode::from(1)
        }
    }
}
