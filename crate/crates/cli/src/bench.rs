//! Benchmark table over a directory of instances. Every (instance, solver)
//! cell runs as a separate `fcc solve` process so that timeouts can kill it.

use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use crate::report::SolutionReport;
use crate::solve::Algo;
use crate::{exit, CliError};

#[derive(Debug, Clone)]
pub struct BenchConfig {
    /// The `fcc` executable.
    pub executable: PathBuf,
    pub algos: Vec<Algo>,
    pub timeout: Duration,
    pub jobs: usize,
    /// Passed on as `--oracle-cap` when set.
    pub oracle_cap: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Timeout,
    Precondition,
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Timeout => "timeout",
            Status::Precondition => "precondition",
            Status::Error => "error",
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub instance: String,
    pub algo: Algo,
    pub status: Status,
    pub cost: Option<u64>,
    pub wall_ms: f64,
    /// Whether all finished solvers on this instance report the same cost.
    pub agreement: bool,
}

/// `*.fcc` files of `dir`, sorted by name.
pub fn instance_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let io = |source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io)? {
        let path = entry.map_err(io)?.path();
        if path.extension().is_some_and(|e| e == "fcc") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn run_cell(cfg: &BenchConfig, file: &Path, algo: Algo) -> (Status, Option<u64>, f64) {
    let start = Instant::now();
    let mut cmd = Command::new(&cfg.executable);
    cmd.arg("solve")
        .arg(file)
        .args(["--algo", algo.name(), "--json"]);
    if let Some(cap) = cfg.oracle_cap {
        cmd.arg("--oracle-cap").arg(cap.to_string());
    }
    let child = cmd
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn();
    let Ok(mut child) = child else {
        return (Status::Error, None, 0.0);
    };
    let mut stdout = child.stdout.take().expect("piped stdout");
    let reader = std::thread::spawn(move || {
        let mut s = String::new();
        stdout.read_to_string(&mut s).map(|_| s)
    });
    let deadline = start + cfg.timeout;
    let status = loop {
        match child.try_wait() {
            Ok(Some(status)) => break Some(status),
            Ok(None) if Instant::now() >= deadline => {
                let _ = child.kill();
                let _ = child.wait();
                break None;
            }
            Ok(None) => std::thread::sleep(Duration::from_millis(2)),
            Err(_) => break None,
        }
    };
    let wall = start.elapsed().as_secs_f64() * 1e3;
    let out = reader.join().ok().and_then(Result::ok);
    let Some(status) = status else {
        return (Status::Timeout, None, wall);
    };
    match status.code() {
        Some(exit::OK) => {
            let cost = out
                .as_deref()
                .and_then(|s| serde_json::from_str::<SolutionReport>(s).ok())
                .and_then(|r| r.cost);
            match cost {
                Some(c) => (Status::Ok, Some(c), wall),
                None => (Status::Error, None, wall),
            }
        }
        Some(exit::PRECONDITION) => (Status::Precondition, None, wall),
        _ => (Status::Error, None, wall),
    }
}

pub fn bench(files: &[PathBuf], cfg: &BenchConfig) -> Vec<BenchRow> {
    let cells: Vec<(usize, Algo)> = (0..files.len())
        .flat_map(|f| cfg.algos.iter().map(move |&a| (f, a)))
        .collect();
    let results = Mutex::new(vec![None; cells.len()]);
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..cfg.jobs.max(1) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(f, algo)) = cells.get(i) else {
                    break;
                };
                let r = run_cell(cfg, &files[f], algo);
                results.lock().unwrap()[i] = Some(r);
            });
        }
    });
    let results: Vec<(Status, Option<u64>, f64)> = results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every cell ran"))
        .collect();
    let mut agree = vec![true; files.len()];
    let mut first = vec![None; files.len()];
    for (&(f, _), &(_, cost, _)) in cells.iter().zip(&results) {
        if let Some(c) = cost {
            match first[f] {
                None => first[f] = Some(c),
                Some(x) if x != c => agree[f] = false,
                _ => {}
            }
        }
    }
    cells
        .iter()
        .zip(results)
        .map(|(&(f, algo), (status, cost, wall_ms))| BenchRow {
            instance: files[f].file_name().map_or_else(
                || files[f].display().to_string(),
                |n| n.to_string_lossy().into(),
            ),
            algo,
            status,
            cost,
            wall_ms,
            agreement: agree[f],
        })
        .collect()
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("instance,algo,status,cost,wall_ms,agreement\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{:.3},{}",
            r.instance,
            r.algo.name(),
            r.status.name(),
            r.cost.map_or(String::new(), |c| c.to_string()),
            r.wall_ms,
            r.agreement
        )
        .unwrap();
    }
    out
}
