//! Code constructions: the block Vandermonde code for d in {3,4}, the greedy
//! column search for d <= r+2, shortening, and the length guaranteed by the
//! greedy counting argument.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Pow;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::LinearCode;
use crate::error::{precondition, Result};
use crate::field::{Field, FieldElement, FieldRef};
use crate::linalg::{axpy, in_span, Matrix};

fn check_blocks(n: usize, r: usize) -> Result<usize> {
    if r < 1 {
        return Err(precondition("r >= 1 required"));
    }
    if n == 0 || !n.is_multiple_of(r + 1) {
        return Err(precondition(format!("(r+1) | n required (n = {n}, r+1 = {})", r + 1)));
    }
    Ok(n / (r + 1))
}

/// Block code with `n/(r+1)` all-one local rows and `d-2` shared rows: in
/// every block, column `j` carries the powers `x_j, x_j^2, ..., x_j^(d-2)`
/// of the evaluation point `x_j = j` (canonical encoding).
pub fn construct_vandermonde(field: &FieldRef, n: usize, d: usize, r: usize) -> Result<LinearCode> {
    if !(3..=4).contains(&d) {
        return Err(precondition(format!("d in {{3, 4}} required (d = {d})")));
    }
    if d - 2 > r {
        return Err(precondition(format!("d-2 <= r required (d = {d}, r = {r})")));
    }
    let blocks = check_blocks(n, r)?;
    if (field.order() as usize) < r + 1 {
        return Err(precondition(format!("q >= r+1 required (q = {}, r = {r})", field.order())));
    }
    let width = r + 1;
    let mut h = Matrix::zeros(field, blocks + d - 2, n);
    for col in 0..n {
        let point = (col % width) as FieldElement;
        h.set(col / width, col, 1);
        for e in 1..=(d - 2) {
            h.set(blocks + e - 1, col, field.pow(point, e as u64));
        }
    }
    Ok(LinearCode::new(h))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateOrder {
    /// Increasing canonical encoding, first coordinate most significant.
    Lexicographic,
    /// A fresh seeded permutation of the candidates for every column.
    SeededRandom(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    /// Enumerates only combinations the block structure allows.
    Structured,
    /// Tests every subset of at most `d-2` earlier columns with a rank check.
    Naive,
}

#[derive(Debug, Clone)]
pub struct ConstructionConfig {
    pub field: FieldRef,
    pub n: usize,
    pub d: usize,
    pub r: usize,
    pub order: CandidateOrder,
    pub check_mode: CheckMode,
}

impl ConstructionConfig {
    pub fn new(field: &FieldRef, n: usize, d: usize, r: usize) -> Self {
        ConstructionConfig {
            field: field.clone(),
            n,
            d,
            r,
            order: CandidateOrder::Lexicographic,
            check_mode: CheckMode::Structured,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRecord {
    pub block: usize,
    pub slot: usize,
    /// Infeasible candidates scanned before the chosen one.
    pub rejected: u64,
    pub chosen: Vec<FieldElement>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GreedyStatus {
    Complete,
    Stuck { block: usize, slot: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyTrace {
    pub records: Vec<TraceRecord>,
    pub status: GreedyStatus,
}

impl GreedyTrace {
    pub fn is_complete(&self) -> bool {
        self.status == GreedyStatus::Complete
    }
}

/// `i j rejected v` per column (0-based, `v` comma-separated or `-` when
/// empty), then `complete` or `stuck i j`.
impl fmt::Display for GreedyTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rec in &self.records {
            let v = if rec.chosen.is_empty() {
                "-".to_string()
            } else {
                rec.chosen.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            };
            writeln!(f, "{} {} {} {}", rec.block, rec.slot, rec.rejected, v)?;
        }
        match self.status {
            GreedyStatus::Complete => writeln!(f, "complete"),
            GreedyStatus::Stuck { block, slot } => writeln!(f, "stuck {block} {slot}"),
        }
    }
}

/// Largest candidate space the greedy search will scan.
pub const MAX_CANDIDATES: u64 = 1 << 26;

/// Incremental state of the greedy column search. Column `(i, j)` is the
/// indicator of block `i` stacked on a lower part `v` in `F_q^(d-2)`, and
/// must lie outside the span of every `d-2` earlier columns.
pub struct GreedyState {
    field: FieldRef,
    blocks: usize,
    lower: usize,
    candidates: u64,
    /// Lower parts per block, in column order.
    columns: Vec<Vec<Vec<FieldElement>>>,
    /// Sums reachable from zero-sum groups of >= 2 columns in each finished
    /// block, keyed by vector with the minimal number of columns used.
    other_sums: HashMap<Vec<FieldElement>, usize>,
    merged_blocks: usize,
}

impl GreedyState {
    pub fn new(field: &FieldRef, blocks: usize, d: usize) -> Result<GreedyState> {
        if d < 2 {
            return Err(precondition("d >= 2 required"));
        }
        let lower = d - 2;
        let candidates = (field.order() as u64)
            .checked_pow(lower as u32)
            .filter(|&c| c <= MAX_CANDIDATES)
            .ok_or_else(|| precondition(format!("candidate space q^(d-2) exceeds {MAX_CANDIDATES}")))?;
        let mut other_sums = HashMap::new();
        other_sums.insert(vec![0; lower], 0);
        Ok(GreedyState {
            field: field.clone(),
            blocks,
            lower,
            candidates,
            columns: vec![Vec::new(); blocks],
            other_sums,
            merged_blocks: 0,
        })
    }

    pub fn candidate_count(&self) -> u64 {
        self.candidates
    }

    /// Candidate number `idx`, first coordinate most significant.
    pub fn candidate(&self, mut idx: u64) -> Vec<FieldElement> {
        let q = self.field.order() as u64;
        let mut v = vec![0; self.lower];
        for slot in v.iter_mut().rev() {
            *slot = (idx % q) as FieldElement;
            idx /= q;
        }
        v
    }

    pub fn index_of(&self, v: &[FieldElement]) -> u64 {
        let q = self.field.order() as u64;
        v.iter().fold(0, |acc, &x| acc * q + x as u64)
    }

    pub fn push(&mut self, block: usize, v: Vec<FieldElement>) {
        self.columns[block].push(v);
    }

    /// Full column vector of block indicator plus lower part.
    pub fn full_column(&self, block: usize, v: &[FieldElement]) -> Vec<FieldElement> {
        let mut col = vec![0; self.blocks + self.lower];
        col[block] = 1;
        col[self.blocks..].copy_from_slice(v);
        col
    }

    /// All earlier columns as full vectors, in column order.
    pub fn full_columns(&self) -> Vec<Vec<FieldElement>> {
        (0..self.blocks)
            .flat_map(|b| self.columns[b].iter().map(move |v| (b, v)))
            .map(|(b, v)| self.full_column(b, v))
            .collect()
    }

    /// Folds zero-sum groups of every finished block before `block` into the
    /// cached sum table.
    fn merge_finished_blocks(&mut self, block: usize) {
        let budget = self.lower.saturating_sub(1);
        while self.merged_blocks < block {
            let groups = zero_sum_groups(&self.field, &self.columns[self.merged_blocks], budget);
            let mut next = self.other_sums.clone();
            for (u, &su) in &self.other_sums {
                for (w, &sw) in &groups {
                    if su + sw > budget {
                        continue;
                    }
                    let mut sum = u.clone();
                    axpy(&self.field, &mut sum, 1, w);
                    let e = next.entry(sum).or_insert(usize::MAX);
                    *e = (*e).min(su + sw);
                }
            }
            self.other_sums = next;
            self.merged_blocks += 1;
        }
    }

    /// Marks every lower part that would put the next column of `block` in
    /// the span of at most `d-2` earlier columns. With nonzero coefficients,
    /// such a combination uses a nonempty group from `block` summing to 1
    /// and, from each other block, either nothing or >= 2 columns summing to 0.
    pub fn infeasible_structured(&mut self, block: usize) -> Vec<bool> {
        self.merge_finished_blocks(block);
        let mut bad = vec![false; self.candidates as usize];
        let own = sum_groups(&self.field, &self.columns[block], self.lower, 1);
        for (u, su) in own {
            for (w, &sw) in &self.other_sums {
                if su + sw <= self.lower {
                    let mut v = u.clone();
                    axpy(&self.field, &mut v, 1, w);
                    bad[self.index_of(&v) as usize] = true;
                }
            }
        }
        bad
    }

    /// Direct check: the candidate column is outside the span of every
    /// subset of at most `d-2` earlier columns.
    pub fn is_feasible_naive(&self, block: usize, v: &[FieldElement]) -> Result<bool> {
        let target = self.full_column(block, v);
        let prior = self.full_columns();
        let mut subset: Vec<usize> = Vec::new();
        naive_dfs(&self.field, &target, &prior, self.lower, 0, &mut subset)
    }
}

fn naive_dfs(
    field: &FieldRef,
    target: &[FieldElement],
    prior: &[Vec<FieldElement>],
    max: usize,
    start: usize,
    subset: &mut Vec<usize>,
) -> Result<bool> {
    let vectors: Vec<Vec<FieldElement>> = subset.iter().map(|&s| prior[s].clone()).collect();
    if in_span(field, target, &vectors)? {
        return Ok(false);
    }
    if subset.len() == max {
        return Ok(true);
    }
    for s in start..prior.len() {
        subset.push(s);
        let ok = naive_dfs(field, target, prior, max, s + 1, subset)?;
        subset.pop();
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sums `sum c_s v_s` over nonempty subsets of size <= `max_size` with all
/// coefficients nonzero and `sum c_s = total`, with the subset size.
fn sum_groups(
    field: &Field,
    vs: &[Vec<FieldElement>],
    max_size: usize,
    total: FieldElement,
) -> Vec<(Vec<FieldElement>, usize)> {
    let len = vs.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut acc = vec![0; len];
    groups_dfs(field, vs, max_size, total, 0, 0, 0, &mut acc, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn groups_dfs(
    field: &Field,
    vs: &[Vec<FieldElement>],
    max_size: usize,
    total: FieldElement,
    start: usize,
    size: usize,
    coeff_sum: FieldElement,
    acc: &mut Vec<FieldElement>,
    out: &mut Vec<(Vec<FieldElement>, usize)>,
) {
    if size > 0 && coeff_sum == total {
        out.push((acc.clone(), size));
    }
    if size == max_size {
        return;
    }
    for s in start..vs.len() {
        for c in 1..field.order() {
            axpy(field, acc, c, &vs[s]);
            groups_dfs(field, vs, max_size, total, s + 1, size + 1, field.add(coeff_sum, c), acc, out);
            axpy(field, acc, field.neg(c), &vs[s]);
        }
    }
}

/// Zero-sum groups of >= 2 columns, keyed by their vector sum.
fn zero_sum_groups(field: &Field, vs: &[Vec<FieldElement>], max_size: usize) -> HashMap<Vec<FieldElement>, usize> {
    let mut map = HashMap::new();
    for (v, s) in sum_groups(field, vs, max_size, 0) {
        if s >= 2 {
            let e = map.entry(v).or_insert(usize::MAX);
            *e = (*e).min(s);
        }
    }
    map
}

/// Scans candidate indices in the configured order.
enum Scan {
    Lex { next: u64, end: u64 },
    Random { rng: Box<ChaCha8Rng>, swapped: HashMap<u64, u64>, pos: u64, end: u64 },
}

impl Scan {
    fn next(&mut self) -> Option<u64> {
        match self {
            Scan::Lex { next, end } => (*next < *end).then(|| {
                *next += 1;
                *next - 1
            }),
            Scan::Random { rng, swapped, pos, end } => {
                if *pos >= *end {
                    return None;
                }
                let j = rng.gen_range(*pos..*end);
                let at_j = *swapped.get(&j).unwrap_or(&j);
                let at_pos = *swapped.get(pos).unwrap_or(pos);
                swapped.insert(j, at_pos);
                *pos += 1;
                Some(at_j)
            }
        }
    }
}

/// Greedy column search without the `d <= r+2` requirement; stops at the
/// first column with no feasible candidate and returns the code on the
/// columns chosen so far.
pub fn greedy_columns(cfg: &ConstructionConfig) -> Result<(LinearCode, GreedyTrace)> {
    let blocks = check_blocks(cfg.n, cfg.r)?;
    let mut state = GreedyState::new(&cfg.field, blocks, cfg.d)?;
    let mut rng = match cfg.order {
        CandidateOrder::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        CandidateOrder::Lexicographic => None,
    };
    let mut records = Vec::with_capacity(cfg.n);
    let mut status = GreedyStatus::Complete;
    'columns: for block in 0..blocks {
        for slot in 0..=cfg.r {
            let bad = match cfg.check_mode {
                CheckMode::Structured => Some(state.infeasible_structured(block)),
                CheckMode::Naive => None,
            };
            let end = state.candidate_count();
            let mut scan = match rng.as_mut() {
                None => Scan::Lex { next: 0, end },
                Some(r) => Scan::Random {
                    rng: Box::new(ChaCha8Rng::seed_from_u64(r.gen())),
                    swapped: HashMap::new(),
                    pos: 0,
                    end,
                },
            };
            let mut rejected = 0;
            let mut chosen = None;
            while let Some(idx) = scan.next() {
                let feasible = match &bad {
                    Some(bad) => !bad[idx as usize],
                    None => state.is_feasible_naive(block, &state.candidate(idx))?,
                };
                if feasible {
                    chosen = Some(state.candidate(idx));
                    break;
                }
                rejected += 1;
            }
            match chosen {
                Some(v) => {
                    state.push(block, v.clone());
                    records.push(TraceRecord { block, slot, rejected, chosen: v });
                }
                None => {
                    status = GreedyStatus::Stuck { block, slot };
                    break 'columns;
                }
            }
        }
    }
    let columns = state.full_columns();
    let h = Matrix::from_columns(&cfg.field, blocks + cfg.d - 2, &columns)?;
    Ok((LinearCode::new(h), GreedyTrace { records, status }))
}

/// Greedy construction for `d <= r+2`: any `d-1` columns of the emitted
/// parity-check matrix are independent and each block is a local group.
pub fn construct_greedy(cfg: &ConstructionConfig) -> Result<(LinearCode, GreedyTrace)> {
    if cfg.d < 2 {
        return Err(precondition(format!("d >= 2 required (d = {})", cfg.d)));
    }
    if cfg.d > cfg.r + 2 {
        return Err(precondition(format!("d <= r+2 required (d = {}, r = {})", cfg.d, cfg.r)));
    }
    greedy_columns(cfg)
}

/// Drops the last `t` coordinates (columns of the parity-check matrix).
pub fn shorten(code: &LinearCode, t: usize, r: usize) -> Result<LinearCode> {
    let n = code.n();
    if t == 0 || t >= n {
        return Err(precondition(format!("1 <= t < n required (t = {t}, n = {n})")));
    }
    if t > r {
        return Err(precondition(format!("t < r+1 required (t = {t}, r = {r})")));
    }
    let keep: Vec<usize> = (0..n - t).collect();
    Ok(LinearCode::new(code.parity_check().select_columns(&keep)))
}

/// Number of lower parts ruled out by the counting argument when `m` blocks
/// exist: `sum_{t=1}^{floor((d-1)/2)} (t(r+1))^(d-2) m^(t-1) q^(d-1-t)`.
pub fn bad_candidate_count(q: u64, d: u64, r: u64, m: u64) -> BigUint {
    let qb = BigUint::from(q);
    (1..=(d - 1) / 2)
        .map(|t| {
            BigUint::from(t * (r + 1)).pow((d - 2) as u32)
                * BigUint::from(m).pow((t - 1) as u32)
                * qb.clone().pow((d - 1 - t) as u32)
        })
        .sum()
}

/// Largest `n = m(r+1)` for which the counting argument guarantees the
/// greedy search never gets stuck, i.e. the bad count stays below
/// `q^(d-1) - q^(d-2)`. `None` if not even `m = 1` is guaranteed.
pub fn eta_guarantee(q: u64, d: u64, r: u64) -> Result<Option<u64>> {
    if d < 5 || d > r + 2 {
        return Err(precondition(format!("5 <= d <= r+2 required (d = {d}, r = {r})")));
    }
    let qb = BigUint::from(q);
    let space = qb.clone().pow((d - 1) as u32) - qb.pow((d - 2) as u32);
    let ok = |m: u64| bad_candidate_count(q, d, r, m) < space;
    if !ok(1) {
        return Ok(None);
    }
    let mut lo = 1u64;
    let mut hi = 2u64;
    while ok(hi) {
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(lo * (r + 1)))
}
