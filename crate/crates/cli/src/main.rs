use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use fcc_cli::bench::{bench, instance_files, to_csv, BenchConfig};
use fcc_cli::format::{
    parse_forest, parse_instance, parse_td, write_forest, write_instance, write_td,
};
use fcc_cli::generate::{generate, Family};
use fcc_cli::report::{verify_report, SolutionReport};
use fcc_cli::solve::{
    solve, tree_decomposition_for, Algo, SolveOptions, EXACT_DECOMPOSITION_LIMIT,
};
use fcc_cli::{exit, CliError};
use fcc_core::decomp::{min_vertex_cover, treedepth_forest, TreeDecompositionMode, TreedepthMode};
use fcc_core::oracle::OracleConfig;

#[derive(Parser)]
#[command(
    name = "fcc",
    version,
    about = "Exact solvers for fair correlation clustering"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance, or decide it against --budget.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::TwXp)]
        algo: Algo,
        #[arg(long)]
        budget: Option<u64>,
        /// PACE-style tree decomposition for tw-xp and tw-fpt2.
        #[arg(long)]
        td_file: Option<PathBuf>,
        /// Treedepth forest (`<vertex> <parent-or-0>` lines) for td.
        #[arg(long)]
        forest_file: Option<PathBuf>,
        /// Cluster-size cap override for td.
        #[arg(long)]
        gamma: Option<usize>,
        #[arg(long, default_value_t = OracleConfig::DEFAULT_CAP)]
        oracle_cap: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Seconds before giving up.
        #[arg(long)]
        timeout: Option<f64>,
        /// Print the report as JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Also write the JSON report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Compute a decomposition of the instance graph.
    Decompose {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Tree)]
        kind: Kind,
        /// Use the heuristic even on small graphs.
        #[arg(long)]
        heuristic: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Generate a random instance.
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        /// Edge probability for gnp.
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        /// Clique size parameter for ktree.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Number of centers for star-forest.
        #[arg(long, default_value_t = 2)]
        stars: usize,
        /// Comma-separated fairlet vector, e.g. `2,1`.
        #[arg(long, value_delimiter = ',', default_value = "1,1")]
        fairlet: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run solvers on every `.fcc` file of a directory and print a CSV table.
    Bench {
        dir: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = Algo::ALL)]
        algos: Vec<Algo>,
        /// Seconds per cell.
        #[arg(long, default_value_t = 10.0)]
        timeout: f64,
        /// Concurrent cells; defaults to the number of CPUs.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        oracle_cap: Option<usize>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Check a JSON report against its instance.
    Verify {
        instance: PathBuf,
        report: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Tree,
    Treedepth,
    Cover,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Gnp,
    Tree,
    Ktree,
    StarForest,
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn timeout_duration(secs: f64) -> Result<Duration, CliError> {
    Duration::try_from_secs_f64(secs)
        .map_err(|_| CliError::Usage(format!("invalid timeout {secs}")))
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Solve {
            instance,
            algo,
            budget,
            td_file,
            forest_file,
            gamma,
            oracle_cap,
            seed,
            timeout,
            json,
            report,
        } => {
            let inst = parse_instance(&instance)?;
            let mut options = SolveOptions::new(algo);
            options.budget = budget;
            options.gamma = gamma;
            options.oracle_cap = oracle_cap;
            options.seed = seed;
            if let Some(p) = td_file {
                options.tree_decomposition = Some(parse_td(&p, inst.n())?);
            }
            if let Some(p) = forest_file {
                options.forest = Some(parse_forest(&p, inst.n())?);
            }
            let result = match timeout {
                None => solve(&inst, &options),
                Some(secs) => {
                    let limit = timeout_duration(secs)?;
                    let (tx, rx) = mpsc::channel();
                    std::thread::spawn(move || {
                        let _ = tx.send(solve(&inst, &options));
                    });
                    match rx.recv_timeout(limit) {
                        Ok(r) => r,
                        Err(_) => {
                            eprintln!("timeout after {secs} s");
                            return Ok(exit::TIMEOUT);
                        }
                    }
                }
            };
            let r = result?;
            let doc = serde_json::to_string_pretty(&r).expect("report serializes");
            if json {
                println!("{doc}");
            } else {
                println!("{r}");
            }
            if let Some(p) = report {
                write_out(Some(&p), &(doc + "\n"))?;
            }
            Ok(match r.decision {
                Some(false) => exit::BUDGET_EXCEEDED,
                _ => exit::OK,
            })
        }
        Command::Decompose {
            instance,
            kind,
            heuristic,
            output,
        } => {
            let inst = parse_instance(&instance)?;
            let g = inst.graph();
            let exact = !heuristic && inst.n() <= EXACT_DECOMPOSITION_LIMIT;
            let text = match kind {
                Kind::Tree => {
                    let td = if exact {
                        tree_decomposition_for(&inst, None)?
                    } else {
                        fcc_core::decomp::tree_decomposition(g, TreeDecompositionMode::Heuristic)?
                    };
                    format!("c width {}\n{}", td.width(), write_td(&td, inst.n()))
                }
                Kind::Treedepth => {
                    let mode = if exact {
                        TreedepthMode::exact()
                    } else {
                        TreedepthMode::Heuristic
                    };
                    let f = treedepth_forest(g, mode)?;
                    format!("c height {}\n{}", f.height(), write_forest(&f))
                }
                Kind::Cover => {
                    let vc = min_vertex_cover(g);
                    let ids: Vec<String> = vc.cover.iter().map(|v| (v + 1).to_string()).collect();
                    format!("c size {}\n{}\n", vc.k, ids.join(" "))
                }
            };
            write_out(output.as_deref(), &text)?;
            Ok(exit::OK)
        }
        Command::Gen {
            family,
            n,
            p,
            k,
            stars,
            fairlet,
            seed,
            output,
        } => {
            let family = match family {
                FamilyArg::Gnp => Family::Gnp { p },
                FamilyArg::Tree => Family::Tree,
                FamilyArg::Ktree => Family::Ktree { k },
                FamilyArg::StarForest => Family::StarForest { stars },
            };
            let inst = generate(family, n, &fairlet, seed)?;
            write_out(output.as_deref(), &write_instance(&inst))?;
            Ok(exit::OK)
        }
        Command::Bench {
            dir,
            algos,
            timeout,
            jobs,
            oracle_cap,
            output,
        } => {
            let executable = std::env::current_exe().map_err(|source| CliError::Io {
                path: PathBuf::from("fcc"),
                source,
            })?;
            let jobs =
                jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let cfg = BenchConfig {
                executable,
                algos,
                timeout: timeout_duration(timeout)?,
                jobs,
                oracle_cap,
            };
            let rows = bench(&instance_files(&dir)?, &cfg);
            write_out(output.as_deref(), &to_csv(&rows))?;
            Ok(exit::OK)
        }
        Command::Verify {
            instance,
            report,
            budget,
        } => {
            let inst = parse_instance(&instance)?;
            let text = std::fs::read_to_string(&report).map_err(|source| CliError::Io {
                path: report.clone(),
                source,
            })?;
            let r: SolutionReport = serde_json::from_str(&text)
                .map_err(|e| CliError::Verify(format!("{}: {e}", report.display())))?;
            let cost = verify_report(&inst, &r, budget)?;
            println!("ok: fair clustering of cost {cost}");
            Ok(exit::OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = run(cli).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        e.exit_code()
    });
    ExitCode::from(code as u8)
}
