use std::path::{Path, PathBuf};
use std::process::ExitCode;

use abcmod::generators::{generate, Family, GenSpec};
use abcmod::optimize::{solve_inequality, solve_standard, Instance};
use abcmod::oracle::{
    budget_from_env, det_set_bruteforce, ip_bruteforce, ip_bruteforce_standard, Box, BoxIpOutcome,
    DEFAULT_DSET_BUDGET, DEFAULT_IP_BUDGET,
};
use abcmod::recognition::{decompose_ab0, int_json, recognize, DecomposeOutcome, DetSet};
use abcmod::tu::test_tu;
use abcmod::IntMatrix;
use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

/// Recognition, decomposition and exact integer programming for matrices
/// with few distinct subdeterminants. Indices in JSON output are 1-based.
#[derive(Parser)]
#[command(name = "abcmod", version)]
struct Cli {
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify D(A) of a matrix file.
    Recognize { matrix: PathBuf },
    /// Bring an {a,b,0}-modular matrix into block form, or refute it.
    Decompose {
        matrix: PathBuf,
        #[arg(long)]
        a: BigInt,
        #[arg(long)]
        b: BigInt,
    },
    /// Solve an instance file exactly.
    Solve { instance: PathBuf },
    /// Enumerate every maximal minor.
    OracleDset {
        matrix: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Enumerate every lattice point of a box.
    OracleIp {
        instance: PathBuf,
        /// `LO:HI` for every coordinate, or a generator sidecar JSON file.
        #[arg(long = "box")]
        bx: String,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Emit a seeded instance of one of the structured families.
    Generate {
        /// network_flow, d_matching or vertex_cover
        #[arg(long)]
        family: Family,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        left: usize,
        #[arg(long, default_value_t = 2)]
        right: usize,
        /// Write `<PREFIX>.txt` and `<PREFIX>.json` instead of printing both.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test total unimodularity.
    Tu { matrix: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli.command).and_then(|value| {
        let text = serde_json::to_string(&value).expect("JSON values serialize");
        match &cli.output {
            Some(path) => write(path, &(text + "\n")),
            None => {
                println!("{text}");
                Ok(())
            }
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("{}", json!({ "error": message }));
            ExitCode::from(2)
        }
    }
}

type CliResult<T> = Result<T, String>;

fn fail(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn matrix(path: &Path) -> CliResult<IntMatrix> {
    IntMatrix::parse(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn instance(path: &Path) -> CliResult<Instance> {
    Instance::parse(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

fn dset_json(d: &DetSet) -> Value {
    let values = d.value_set();
    let witnesses: serde_json::Map<String, Value> = values
        .iter()
        .map(|v| {
            let rows: Vec<usize> = d.witness(v).unwrap_or_default().iter().map(|r| r + 1).collect();
            (v.to_string(), json!(rows))
        })
        .collect();
    json!({ "values": values.iter().map(int_json).collect::<Vec<_>>(), "witnesses": witnesses })
}

fn parse_box(spec: &str, dim: usize) -> CliResult<Box> {
    if let Some((lo, hi)) = spec.split_once(':') {
        let parse = |s: &str| s.trim().parse::<i64>().map_err(|e| format!("box bound `{s}`: {e}"));
        return Box::uniform(dim, parse(lo)?, parse(hi)?).map_err(fail);
    }
    let side: Value = serde_json::from_str(&read(Path::new(spec))?).map_err(|e| format!("{spec}: {e}"))?;
    let bound = |key: &str| -> CliResult<Vec<BigInt>> {
        side["box"][key]
            .as_array()
            .ok_or_else(|| format!("{spec}: missing box.{key}"))?
            .iter()
            .map(|x| match x {
                Value::Number(n) => n.to_string().parse().map_err(fail),
                Value::String(s) => s.parse().map_err(fail),
                _ => Err(format!("{spec}: box.{key} entries must be integers")),
            })
            .collect()
    };
    let bx = Box::new(bound("lower")?, bound("upper")?).map_err(fail)?;
    if bx.dim() != dim {
        return Err(format!("box has {} coordinates, instance has {dim}", bx.dim()));
    }
    Ok(bx)
}

fn run(command: Command) -> CliResult<Value> {
    match command {
        Command::Recognize { matrix: path } => Ok(recognize(&matrix(&path)?).map_err(fail)?.to_json()),
        Command::Decompose { matrix: path, a, b } => {
            Ok(match decompose_ab0(&matrix(&path)?, &a, &b).map_err(fail)? {
                DecomposeOutcome::Decomposition(d) => json!({ "outcome": "decomposition", "decomposition": d.to_json() }),
                DecomposeOutcome::Certificate(c) => json!({ "outcome": "certificate", "certificate": c.to_json() }),
            })
        }
        Command::Solve { instance: path } => {
            let report = match instance(&path)? {
                Instance::Standard(ip) => solve_standard(&ip),
                Instance::Inequality(p) => solve_inequality(&p.c_mat, &p.g, &p.h),
            };
            Ok(report.map_err(fail)?.to_json())
        }
        Command::OracleDset { matrix: path, budget } => {
            let budget = budget.or_else(budget_from_env).unwrap_or(DEFAULT_DSET_BUDGET);
            Ok(dset_json(&det_set_bruteforce(&matrix(&path)?, budget).map_err(fail)?))
        }
        Command::OracleIp { instance: path, bx, budget } => {
            let budget = budget.or_else(budget_from_env).unwrap_or(DEFAULT_IP_BUDGET);
            let outcome = match instance(&path)? {
                Instance::Standard(ip) => {
                    let bx = parse_box(&bx, ip.b_mat.cols())?;
                    ip_bruteforce_standard(&ip.b_mat, &ip.b, &ip.c, &bx, budget)
                }
                Instance::Inequality(p) => {
                    let bx = parse_box(&bx, p.c_mat.cols())?;
                    ip_bruteforce(&p.c_mat, &p.g, &p.h, &bx, budget)
                }
            };
            Ok(match outcome.map_err(fail)? {
                BoxIpOutcome::Optimal { point, value } => {
                    json!({ "status": "optimal", "x": ints(&point), "value": value.to_string() })
                }
                BoxIpOutcome::InfeasibleInBox => json!({ "status": "infeasible_in_box" }),
            })
        }
        Command::Generate {
            family,
            a,
            b,
            seed,
            left,
            right,
            out,
        } => {
            let spec = GenSpec {
                family,
                a,
                b,
                left,
                right,
                seed,
            };
            let gen = generate(&spec).map_err(fail)?;
            let text = gen.instance.to_text();
            let side = gen.sidecar_json();
            match out {
                Some(prefix) => {
                    let (inst, sidecar) = (prefix.with_extension("txt"), prefix.with_extension("json"));
                    write(&inst, &text)?;
                    write(&sidecar, &(serde_json::to_string_pretty(&side).map_err(fail)? + "\n"))?;
                    Ok(json!({ "instance": inst.display().to_string(), "sidecar": sidecar.display().to_string() }))
                }
                None => Ok(json!({ "instance": text, "sidecar": side })),
            }
        }
        Command::Tu { matrix: path } => {
            let verdict = test_tu(&matrix(&path)?);
            Ok(match verdict.certificate {
                None => json!({ "is_tu": verdict.is_tu }),
                Some(c) => json!({
                    "is_tu": verdict.is_tu,
                    "certificate": {
                        "rows": c.rows.iter().map(|r| r + 1).collect::<Vec<_>>(),
                        "cols": c.cols.iter().map(|r| r + 1).collect::<Vec<_>>(),
                        "det": int_json(&c.det),
                    },
                }),
            })
        }
    }
}
