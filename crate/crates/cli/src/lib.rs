//! Command implementations behind the `modalt` binary.

pub mod args;
mod enumerate;
mod gamma;
mod matrix;
mod oracles;
mod output;
mod poly;
mod table;
mod verify;

use std::fmt;

use args::{Cli, Command, GridArgs};
use modalt_core::{Error, FamilySpec};

/// How a successful run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    /// A comparison or certification failed.
    Failed,
    /// Some cases were skipped for exceeding a budget.
    Skipped,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::Failed => 1,
            Status::Skipped => 3,
        }
    }

    /// Failure outranks skipping, which outranks success.
    fn worst(self, other: Status) -> Status {
        match (self, other) {
            (Status::Failed, _) | (_, Status::Failed) => Status::Failed,
            (Status::Skipped, _) | (_, Status::Skipped) => Status::Skipped,
            _ => Status::Success,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Budget(String),
    Io(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Budget(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeLimit { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn run(cli: &Cli) -> CliResult<Status> {
    match &cli.command {
        Command::Enumerate(a) => enumerate::run(a),
        Command::Poly(a) => poly::run(a),
        Command::Matrix(a) => matrix::run(a),
        Command::Gamma(a) => gamma::run(a),
        Command::Verify(a) => verify::run(a),
        Command::Table(a) => table::run(a),
    }
}

fn require_k(k: Option<usize>, what: &str) -> CliResult<usize> {
    k.ok_or_else(|| CliError::Usage(format!("--k is required for {what}")))
}

/// Grid points in (n, k, r) order. With a fixed `r`, values of `k` below it
/// are left out.
fn grid_points(grid: &GridArgs) -> CliResult<Vec<FamilySpec>> {
    if *grid.n.0.start() == 0 || *grid.k.0.start() == 0 {
        return Err(CliError::Usage("n and k must be positive".into()));
    }
    let mut points = Vec::new();
    for n in grid.n.0.clone() {
        for k in grid.k.0.clone() {
            let rs = match grid.r {
                Some(r) if r > k => continue,
                Some(r) => r..=r,
                None => 1..=k,
            };
            for r in rs {
                points.push(FamilySpec::new(n, k, r)?);
            }
        }
    }
    if points.is_empty() {
        return Err(CliError::Usage("the grid has no valid (n, k, r)".into()));
    }
    Ok(points)
}

fn thread_pool(jobs: usize) -> CliResult<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {jobs} workers: {e}")))
}
