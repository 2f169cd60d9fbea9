//! Subcommand implementations for the `lrc` binary. Every command returns
//! its standard output and an exit status instead of printing, so tests can
//! drive them directly.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use lrc::bounds::{BoundParams, BoundReport};
use lrc::code::{analyze, DistanceStrategy, LinearCode, Optimality, SearchOptions};
use lrc::construct::{
    construct_greedy, construct_vandermonde, CandidateOrder, CheckMode, ConstructionConfig, GreedyStatus,
};
use lrc::format::{read_matrix, write_matrix};
use lrc::recovery::{greedy_cover, repair};
use lrc::search::Budget;
use lrc::{make_field, FieldElement};
use thiserror::Error;

/// Process exit status contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Optimal = 0,
    Suboptimal = 1,
    InputError = 2,
    BudgetExceeded = 3,
}

impl Status {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] lrc::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Core(lrc::Error::BudgetExceeded(_)) => Status::BudgetExceeded,
            _ => Status::InputError,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// What a command wants printed, and how the process should exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { status: Status::Optimal, stdout, stderr: String::new() }
    }
}

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load_code(path: &Path) -> CliResult<LinearCode> {
    Ok(LinearCode::new(read_matrix(&read_file(path)?)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Vandermonde,
    Greedy,
}

#[derive(Debug, Clone)]
pub struct ConstructArgs {
    pub method: Method,
    pub q: u64,
    pub n: usize,
    pub d: usize,
    pub r: usize,
    /// Switches the greedy scan to a seeded random candidate order.
    pub seed: Option<u64>,
    pub check_mode: CheckMode,
    pub output: Option<PathBuf>,
    /// Print the greedy trace on standard error.
    pub trace: bool,
}

pub fn cmd_construct(args: &ConstructArgs) -> CliResult<Outcome> {
    let field = make_field(args.q)?;
    let (code, trace) = match args.method {
        Method::Vandermonde => (construct_vandermonde(&field, args.n, args.d, args.r)?, None),
        Method::Greedy => {
            let cfg = ConstructionConfig {
                order: args.seed.map_or(CandidateOrder::Lexicographic, CandidateOrder::SeededRandom),
                check_mode: args.check_mode,
                ..ConstructionConfig::new(&field, args.n, args.d, args.r)
            };
            let (code, trace) = construct_greedy(&cfg)?;
            (code, Some(trace))
        }
    };
    let mut stderr = String::new();
    if let Some(trace) = &trace {
        if args.trace {
            stderr.push_str(&trace.to_string());
        }
        if let GreedyStatus::Stuck { block, slot } = trace.status {
            let _ = writeln!(
                stderr,
                "stuck: no feasible column at block {block}, slot {slot} after {} of {} columns",
                trace.records.len(),
                args.n
            );
            return Ok(Outcome { status: Status::Suboptimal, stdout: String::new(), stderr });
        }
    }
    let text = write_matrix(code.parity_check());
    let stdout = match &args.output {
        Some(path) => {
            fs::write(path, &text).map_err(|source| CliError::Io { path: path.clone(), source })?;
            format!("wrote {}x{} parity-check matrix to {}\n", code.parity_check().rows(), code.n(), path.display())
        }
        None => text,
    };
    Ok(Outcome { status: Status::Optimal, stdout, stderr })
}

pub fn cmd_verify(path: &Path, expected_r: Option<usize>, opts: &SearchOptions) -> CliResult<Outcome> {
    let code = load_code(path)?;
    let analysis = analyze(&code, opts)?;
    let p = analysis.profile;
    if let Some(r) = expected_r {
        if r != p.r {
            return Err(lrc::Error::LocalityMismatch { expected: r, actual: p.r }.into());
        }
    }
    let mut out = String::new();
    let _ = writeln!(out, "n = {}", p.n);
    let _ = writeln!(out, "k = {}", p.k);
    let _ = writeln!(out, "d = {} ({})", p.d, analysis.distance.oracle);
    let _ = writeln!(out, "locality = {}", p.r);
    let _ = writeln!(out, "optimality = {}, defect {}", p.optimality, p.defect);
    let _ = writeln!(out, "justification = {:?}", p.justification);
    let report = BoundReport::evaluate(BoundParams {
        q: code.field().order() as u64,
        d: p.d as u64,
        r: p.r as u64,
        n: Some(p.n as u64),
        k: Some(p.k as u64),
    })?;
    out.push_str(&report.to_string());
    let status = match p.optimality {
        Optimality::Suboptimal => Status::Suboptimal,
        _ => Status::Optimal,
    };
    Ok(Outcome { status, stdout: out, stderr: String::new() })
}

pub fn cmd_bounds(params: BoundParams) -> CliResult<Outcome> {
    Ok(Outcome::ok(BoundReport::evaluate(params)?.to_string()))
}

pub const SWEEP_HEADER: &str = "q,d,r,n_attempted,status,k,d_verified,r_verified,optimality,wall_time";

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub q: u64,
    pub d: usize,
    pub r: usize,
    pub n_attempted: usize,
    /// `ok`, `stuck`, `trivial` (dimension 0) or `error` (verification failed).
    pub status: String,
    pub k: Option<usize>,
    pub d_verified: Option<usize>,
    pub r_verified: Option<usize>,
    pub optimality: Option<String>,
    pub wall_time: f64,
}

impl SweepRecord {
    pub fn csv(&self) -> String {
        let opt = |x: Option<usize>| x.map_or(String::new(), |v| v.to_string());
        format!(
            "{},{},{},{},{},{},{},{},{},{:.6}",
            self.q,
            self.d,
            self.r,
            self.n_attempted,
            self.status,
            opt(self.k),
            opt(self.d_verified),
            opt(self.r_verified),
            self.optimality.as_deref().unwrap_or(""),
            self.wall_time
        )
    }
}

#[derive(Debug, Clone)]
pub struct SweepArgs {
    pub qs: Vec<u64>,
    pub d: usize,
    pub r: usize,
    /// Length increment; a multiple of r+1.
    pub n_step: usize,
    /// Maximum number of lengths attempted per field.
    pub budget: usize,
    /// Verify distance, locality and optimality of each successful code.
    pub verify: bool,
    pub opts: SearchOptions,
}

fn sweep_cell(q: u64, n: usize, args: &SweepArgs) -> CliResult<SweepRecord> {
    let start = Instant::now();
    let field = make_field(q)?;
    let (code, trace) = construct_greedy(&ConstructionConfig::new(&field, n, args.d, args.r))?;
    let mut rec = SweepRecord {
        q,
        d: args.d,
        r: args.r,
        n_attempted: n,
        status: "ok".into(),
        k: None,
        d_verified: None,
        r_verified: None,
        optimality: None,
        wall_time: 0.0,
    };
    if !trace.is_complete() {
        rec.status = "stuck".into();
    } else {
        rec.k = Some(code.k());
        if code.k() == 0 {
            rec.status = "trivial".into();
        } else if args.verify {
            match analyze(&code, &args.opts) {
                Ok(a) => {
                    rec.d_verified = Some(a.profile.d);
                    rec.r_verified = Some(a.profile.r);
                    rec.optimality = Some(a.profile.optimality.to_string());
                }
                Err(_) => rec.status = "error".into(),
            }
        }
    }
    rec.wall_time = start.elapsed().as_secs_f64();
    Ok(rec)
}

/// Greedy constructions at increasing lengths per field until the search
/// gets stuck or the attempt budget runs out.
pub fn sweep(args: &SweepArgs) -> CliResult<Vec<SweepRecord>> {
    if args.r < 1 || args.d < 2 || args.d > args.r + 2 {
        return Err(CliError::Usage(format!("sweep needs r >= 1 and 2 <= d <= r+2 (d = {}, r = {})", args.d, args.r)));
    }
    if args.n_step == 0 || !args.n_step.is_multiple_of(args.r + 1) {
        return Err(CliError::Usage(format!("n-step must be a positive multiple of r+1 = {}", args.r + 1)));
    }
    let mut records = Vec::new();
    for &q in &args.qs {
        for attempt in 1..=args.budget {
            let rec = sweep_cell(q, attempt * args.n_step, args)?;
            let stop = rec.status == "stuck";
            records.push(rec);
            if stop {
                break;
            }
        }
    }
    records.sort_by_key(|r| (r.q, r.n_attempted));
    Ok(records)
}

/// Largest length per field with a completed construction.
pub fn frontier(records: &[SweepRecord], q: u64) -> usize {
    records.iter().filter(|r| r.q == q && r.status != "stuck").map(|r| r.n_attempted).max().unwrap_or(0)
}

pub fn cmd_sweep(args: &SweepArgs) -> CliResult<Outcome> {
    let records = sweep(args)?;
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for rec in &records {
        out.push_str(&rec.csv());
        out.push('\n');
    }
    Ok(Outcome::ok(out))
}

/// Parses a word such as `1 ? 1`; `?` marks an erasure.
pub fn parse_word(text: &str, q: u32) -> CliResult<Vec<Option<FieldElement>>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| match t {
            "?" => Ok(None),
            _ => match t.parse::<u32>() {
                Ok(v) if v < q => Ok(Some(v)),
                _ => Err(CliError::Usage(format!("{t:?} is neither \"?\" nor an element of GF({q})"))),
            },
        })
        .collect()
}

pub fn cmd_repair(path: &Path, word: &str, opts: &SearchOptions) -> CliResult<Outcome> {
    let code = load_code(path)?;
    let f = code.field().clone();
    let word = parse_word(word, f.order())?;
    if word.len() != code.n() {
        return Err(CliError::Usage(format!("word has {} symbols, code length is {}", word.len(), code.n())));
    }
    let erased: Vec<usize> = word.iter().enumerate().filter(|(_, s)| s.is_none()).map(|(j, _)| j).collect();
    let [i] = erased[..] else {
        return Err(CliError::Usage(format!("exactly one erasure supported, found {}", erased.len())));
    };
    // Some codeword must agree with the word off coordinate i: the syndrome of
    // the word with 0 at i has to be a multiple of column i.
    let filled: Vec<FieldElement> = word.iter().map(|s| s.unwrap_or(0)).collect();
    let syndrome = code.syndrome(&filled)?;
    let column = code.parity_check().column(i);
    let consistent = match column.iter().position(|&h| h != 0) {
        None => syndrome.iter().all(|&s| s == 0),
        Some(p) => {
            let x = f.div(f.neg(syndrome[p]), column[p])?;
            syndrome.iter().zip(&column).all(|(&s, &h)| f.add(s, f.mul(x, h)) == 0)
        }
    };
    if !consistent {
        return Err(lrc::Error::Repair("inconsistent codeword: nonzero syndrome off the erasure".into()).into());
    }
    let mut budget = Budget::new(opts.subset_budget);
    let r = code.locality(&mut budget)?.r;
    let plan = greedy_cover(&code, r, &mut budget)?;
    let set = plan.set_for(i).ok_or(lrc::Error::LocalityUndefined(i))?;
    let fixed = repair(&code, &word, i, &set.witness)?;
    let support: Vec<String> = set.support.iter().map(|j| j.to_string()).collect();
    Ok(Outcome::ok(format!(
        "symbol = {}\nsymbols_read = {}\nrecovery_set = {}\n",
        fixed.value,
        fixed.reads,
        support.join(" ")
    )))
}

pub fn parse_strategy(s: &str) -> CliResult<DistanceStrategy> {
    match s {
        "auto" => Ok(DistanceStrategy::Auto),
        "codeword-enum" => Ok(DistanceStrategy::CodewordEnum),
        "column-subsets" => Ok(DistanceStrategy::ColumnSubsets),
        "verify" => Ok(DistanceStrategy::Verify),
        _ => Err(CliError::Usage(format!("unknown distance strategy {s:?}"))),
    }
}
