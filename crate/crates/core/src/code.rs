//! Linear codes given by a parity-check matrix: dimension, exact minimum
//! distance, recovery sets, locality and optimality classification.

use std::collections::HashMap;
use std::fmt;

use crate::bounds::singleton_type_bound;
use crate::error::{precondition, Error, Result};
use crate::field::{FieldElement, FieldRef};
use crate::linalg::{axpy, dot, solve_combination, Matrix};
use crate::recovery::greedy_cover;
use crate::search::{first_circuit_through, smallest_dependent_subset, Budget};

/// A linear code `C = ker(H)`. The parity-check matrix may carry redundant
/// rows; the dimension is always `n - rank(H)`.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearCode {
    h: Matrix,
    g: Matrix,
    rank: usize,
    g_columns: Vec<Vec<FieldElement>>,
}

impl LinearCode {
    pub fn new(parity_check: Matrix) -> LinearCode {
        let rank = parity_check.rank();
        let kernel = parity_check.right_kernel();
        let g = Matrix::from_rows(parity_check.field(), parity_check.cols(), &kernel)
            .expect("kernel vectors have length n");
        let g_columns = g.column_vectors();
        LinearCode { h: parity_check, g, rank, g_columns }
    }

    /// The whole space `F_q^n` (empty parity-check matrix).
    pub fn full_space(field: &FieldRef, n: usize) -> LinearCode {
        LinearCode::new(Matrix::zeros(field, 0, n))
    }

    pub fn field(&self) -> &FieldRef {
        self.h.field()
    }

    pub fn n(&self) -> usize {
        self.h.cols()
    }

    pub fn k(&self) -> usize {
        self.n() - self.rank
    }

    pub fn parity_check(&self) -> &Matrix {
        &self.h
    }

    /// Generator matrix with `k` rows spanning the code.
    pub fn generator(&self) -> &Matrix {
        &self.g
    }

    pub fn parity_rank(&self) -> usize {
        self.rank
    }

    fn check_len(&self, v: &[FieldElement]) -> Result<()> {
        if v.len() != self.n() {
            return Err(Error::DimensionMismatch(format!("word has length {}, code length is {}", v.len(), self.n())));
        }
        Ok(())
    }

    pub fn syndrome(&self, word: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.check_len(word)?;
        self.h.mul_vec(word)
    }

    pub fn is_codeword(&self, word: &[FieldElement]) -> Result<bool> {
        Ok(self.syndrome(word)?.iter().all(|&s| s == 0))
    }

    /// Whether `w` lies in the dual code, i.e. is orthogonal to every generator row.
    pub fn is_dual_codeword(&self, w: &[FieldElement]) -> Result<bool> {
        self.check_len(w)?;
        let f = self.field();
        Ok((0..self.g.rows()).all(|row| dot(f, self.g.row(row), w) == 0))
    }

    /// `message * G`.
    pub fn encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if message.len() != self.k() {
            return Err(Error::DimensionMismatch(format!("message has length {}, k = {}", message.len(), self.k())));
        }
        let f = self.field();
        let mut c = vec![0; self.n()];
        for (row, &m) in message.iter().enumerate() {
            if m != 0 {
                axpy(f, &mut c, m, self.g.row(row));
            }
        }
        Ok(c)
    }

    /// Visits every codeword (including zero) in message-counter order.
    pub fn for_each_codeword(&self, limit: u64, mut visit: impl FnMut(&[FieldElement])) -> Result<()> {
        let q = self.field().order() as u64;
        let total = checked_pow(q, self.k()).filter(|&t| t <= limit);
        if total.is_none() {
            return Err(Error::BudgetExceeded(format!("codebook of size {q}^{} exceeds {limit}", self.k())));
        }
        let f = self.field();
        let k = self.k();
        let mut digits = vec![0u32; k];
        let mut c = vec![0; self.n()];
        loop {
            visit(&c);
            let mut pos = k;
            loop {
                if pos == 0 {
                    return Ok(());
                }
                pos -= 1;
                let old = digits[pos];
                let new = if old + 1 == f.order() { 0 } else { old + 1 };
                digits[pos] = new;
                axpy(f, &mut c, f.sub(new, old), self.g.row(pos));
                if new != 0 {
                    break;
                }
            }
        }
    }

    /// Exact minimum distance.
    pub fn min_distance(&self, opts: &SearchOptions) -> Result<Distance> {
        if self.k() == 0 {
            return Err(Error::UndefinedDistance);
        }
        match opts.strategy {
            DistanceStrategy::CodewordEnum => {
                Ok(Distance { value: self.distance_by_codewords(opts)?, oracle: Oracle::CodewordEnum })
            }
            DistanceStrategy::ColumnSubsets => {
                Ok(Distance { value: self.distance_by_columns(opts)?, oracle: Oracle::ColumnSubsets })
            }
            DistanceStrategy::Auto => {
                if self.codewords_cheaper(opts) {
                    Ok(Distance { value: self.distance_by_codewords(opts)?, oracle: Oracle::CodewordEnum })
                } else {
                    Ok(Distance { value: self.distance_by_columns(opts)?, oracle: Oracle::ColumnSubsets })
                }
            }
            DistanceStrategy::Verify => {
                let codewords = self.distance_by_codewords(opts)?;
                let columns = self.distance_by_columns(opts)?;
                if codewords != columns {
                    return Err(Error::OracleMismatch { codewords, columns });
                }
                Ok(Distance { value: codewords, oracle: Oracle::Both })
            }
        }
    }

    fn codewords_cheaper(&self, opts: &SearchOptions) -> bool {
        let q = self.field().order() as u64;
        let Some(words) = checked_pow(q, self.k()).filter(|&w| w <= opts.codeword_limit) else {
            return false;
        };
        let n = self.n() as u64;
        let mut subsets: u64 = 0;
        let mut binom: u64 = 1;
        for s in 1..=(self.rank as u64 + 1).min(n) {
            binom = binom.saturating_mul(n - s + 1) / s;
            subsets = subsets.saturating_add(binom);
        }
        words / (q - 1) <= subsets
    }

    /// Minimum weight over projective representatives of nonzero messages
    /// (first nonzero symbol equal to 1).
    fn distance_by_codewords(&self, opts: &SearchOptions) -> Result<usize> {
        let f = self.field();
        let q = f.order() as u64;
        let k = self.k();
        if checked_pow(q, k).filter(|&w| w <= opts.codeword_limit).is_none() {
            return Err(Error::BudgetExceeded(format!(
                "{q}^{k} codewords exceed the enumeration limit {}",
                opts.codeword_limit
            )));
        }
        let weight = |c: &[FieldElement]| c.iter().filter(|&&x| x != 0).count();
        let mut best = self.n();
        for lead in 0..k {
            let mut c = self.g.row(lead).to_vec();
            let mut digits = vec![0u32; k];
            loop {
                best = best.min(weight(&c));
                let mut pos = k;
                let mut done = true;
                while pos > lead + 1 {
                    pos -= 1;
                    let old = digits[pos];
                    let new = if old + 1 == f.order() { 0 } else { old + 1 };
                    digits[pos] = new;
                    axpy(f, &mut c, f.sub(new, old), self.g.row(pos));
                    if new != 0 {
                        done = false;
                        break;
                    }
                }
                if done {
                    break;
                }
            }
        }
        Ok(best)
    }

    /// Smallest number of linearly dependent parity-check columns.
    fn distance_by_columns(&self, opts: &SearchOptions) -> Result<usize> {
        let columns = self.h.column_vectors();
        let mut budget = Budget::new(opts.subset_budget);
        smallest_dependent_subset(self.field(), &columns, self.rank + 1, &mut budget)?
            .map(|set| set.len())
            .ok_or_else(|| precondition("no dependent column subset found; k must be 0"))
    }

    /// Definition-level check: `R` repairs `i` iff the projections onto
    /// `R \ {i}` of codewords with different values at `i` never coincide.
    pub fn is_recovery_set_direct(&self, i: usize, support: &[usize], limit: u64) -> Result<bool> {
        self.check_support(i, support)?;
        let rest: Vec<usize> = support.iter().copied().filter(|&j| j != i).collect();
        let mut seen: HashMap<Vec<FieldElement>, FieldElement> = HashMap::new();
        let mut ok = true;
        self.for_each_codeword(limit, |c| {
            if !ok {
                return;
            }
            let key: Vec<FieldElement> = rest.iter().map(|&j| c[j]).collect();
            let v = *seen.entry(key).or_insert(c[i]);
            if v != c[i] {
                ok = false;
            }
        })?;
        Ok(ok)
    }

    fn check_support(&self, i: usize, support: &[usize]) -> Result<()> {
        if let Some(&j) = support.iter().find(|&&j| j >= self.n()) {
            return Err(precondition(format!("coordinate {j} out of range for length {}", self.n())));
        }
        if !support.contains(&i) {
            return Err(precondition(format!("coordinate {i} is not in the candidate set {support:?}")));
        }
        Ok(())
    }

    /// Dual-codeword criterion: `R` repairs `i` iff column `i` of the
    /// generator lies in the span of the columns in `R \ {i}`. Returns the
    /// dual codeword witnessing it, normalized to 1 at `i`.
    pub fn recovery_set(&self, i: usize, support: &[usize]) -> Result<Option<RecoverySet>> {
        self.check_support(i, support)?;
        let mut rest: Vec<usize> = support.iter().copied().filter(|&j| j != i).collect();
        rest.sort_unstable();
        rest.dedup();
        let vectors: Vec<Vec<FieldElement>> = rest.iter().map(|&j| self.g_columns[j].clone()).collect();
        let Some(x) = solve_combination(self.field(), &vectors, &self.g_columns[i])? else {
            return Ok(None);
        };
        let f = self.field();
        let mut witness = vec![0; self.n()];
        witness[i] = 1;
        for (&j, &c) in rest.iter().zip(&x) {
            witness[j] = f.neg(c);
        }
        let mut sorted = rest;
        sorted.push(i);
        sorted.sort_unstable();
        Ok(Some(RecoverySet { coordinate: i, support: sorted, witness }))
    }

    pub fn is_recovery_set(&self, i: usize, support: &[usize]) -> Result<bool> {
        Ok(self.recovery_set(i, support)?.is_some())
    }

    /// Lexicographically first recovery set of exactly `size` elements whose
    /// other members satisfy `allowed`; such a set is minimal when no smaller
    /// one exists.
    pub fn recovery_set_of_size(
        &self,
        i: usize,
        size: usize,
        allowed: &dyn Fn(usize) -> bool,
        budget: &mut Budget,
    ) -> Result<Option<RecoverySet>> {
        let Some(circuit) = first_circuit_through(self.field(), &self.g_columns, i, size, allowed, budget)? else {
            return Ok(None);
        };
        let f = self.field();
        let mut witness = vec![0; self.n()];
        witness[i] = 1;
        for (&j, &c) in circuit.others.iter().zip(&circuit.coeffs) {
            witness[j] = f.neg(c);
        }
        Ok(Some(RecoverySet { coordinate: i, support: circuit.support(i), witness }))
    }

    /// Smallest recovery set for `i` of size at most `max_size`, ties broken
    /// lexicographically.
    pub fn minimal_recovery_set(&self, i: usize, max_size: usize, budget: &mut Budget) -> Result<Option<RecoverySet>> {
        let all = |_: usize| true;
        for s in 1..=max_size.min(self.k() + 1) {
            if let Some(set) = self.recovery_set_of_size(i, s, &all, budget)? {
                return Ok(Some(set));
            }
        }
        Ok(None)
    }

    /// First coordinate that no dual codeword covers.
    pub fn uncovered_coordinate(&self) -> Option<usize> {
        (0..self.n()).find(|&j| (0..self.h.rows()).all(|row| self.h.get(row, j) == 0))
    }

    /// Locality with the lexicographically first minimal recovery set of
    /// every coordinate.
    pub fn locality(&self, budget: &mut Budget) -> Result<Locality> {
        if let Some(i) = self.uncovered_coordinate() {
            return Err(Error::LocalityUndefined(i));
        }
        let mut sets = Vec::with_capacity(self.n());
        for i in 0..self.n() {
            let set = self.minimal_recovery_set(i, self.k() + 1, budget)?.ok_or(Error::LocalityUndefined(i))?;
            sets.push(set);
        }
        let r = sets.iter().map(|s| s.support.len() - 1).max().unwrap_or(0);
        Ok(Locality { r, sets })
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearCode[n={}, k={}] H = {:?}", self.n(), self.k(), self.h)
    }
}

fn checked_pow(base: u64, exp: usize) -> Option<u64> {
    u32::try_from(exp).ok().and_then(|e| base.checked_pow(e))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceStrategy {
    CodewordEnum,
    ColumnSubsets,
    /// Picks whichever oracle has the smaller worst-case work estimate.
    Auto,
    /// Runs both oracles and fails if they disagree.
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub strategy: DistanceStrategy,
    /// Largest codebook `q^k` the codeword oracle may enumerate.
    pub codeword_limit: u64,
    /// Vector reductions allowed per subset search.
    pub subset_budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { strategy: DistanceStrategy::Auto, codeword_limit: 1 << 24, subset_budget: 500_000_000 }
    }
}

impl SearchOptions {
    pub fn with_strategy(strategy: DistanceStrategy) -> Self {
        SearchOptions { strategy, ..Default::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Oracle {
    CodewordEnum,
    ColumnSubsets,
    Both,
}

impl fmt::Display for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Oracle::CodewordEnum => "codeword-enum",
            Oracle::ColumnSubsets => "column-subsets",
            Oracle::Both => "codeword-enum+column-subsets",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Distance {
    pub value: usize,
    pub oracle: Oracle,
}

/// A coordinate, a set containing it, and a dual codeword supported inside
/// the set that is 1 at the coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoverySet {
    pub coordinate: usize,
    /// Sorted; includes `coordinate`.
    pub support: Vec<usize>,
    pub witness: Vec<FieldElement>,
}

impl RecoverySet {
    /// Symbols read to repair the coordinate.
    pub fn reads(&self) -> usize {
        self.witness.iter().enumerate().filter(|&(j, &w)| j != self.coordinate && w != 0).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Locality {
    pub r: usize,
    /// One minimal recovery set per coordinate.
    pub sets: Vec<RecoverySet>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Optimality {
    OptimalEq1,
    OptimalDefect1,
    Suboptimal,
}

impl fmt::Display for Optimality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Optimality::OptimalEq1 => "OPTIMAL_EQ1",
            Optimality::OptimalDefect1 => "OPTIMAL_DEFECT1",
            Optimality::Suboptimal => "SUBOPTIMAL",
        })
    }
}

/// Why a classification was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Justification {
    /// Singleton-type bound met with equality.
    MeetsBound,
    /// Defect 1 with `d = r + 2` and `(r+1) | n`: the bound is unattainable.
    DistanceIsLocalityPlusTwo,
    /// Defect 1 with `n mod (r+1) = a` outside {0,1}, a matching residue of
    /// `k`, and `ceil(n/(r+1))` disjoint recovery sets.
    NonDivisibleLength { a: u64 },
    /// No certificate of optimality.
    Uncertified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeProfile {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub r: usize,
    pub optimality: Optimality,
    /// `(n - k - ceil(k/r) + 2) - d`.
    pub defect: i64,
    pub justification: Justification,
}

impl fmt::Display for CodeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}] r={} {}, defect {}", self.n, self.k, self.d, self.r, self.optimality, self.defect)
    }
}

/// Classifies parameters against the Singleton-type bound. `has_disjoint_cover`
/// is consulted only for the non-divisible defect-1 case and must report
/// whether the code has `ceil(n/(r+1))` pairwise disjoint recovery sets.
pub fn classify(
    n: usize,
    k: usize,
    d: usize,
    r: usize,
    has_disjoint_cover: impl FnOnce() -> Result<bool>,
) -> Result<CodeProfile> {
    let rhs = singleton_type_bound(n as u64, k as u64, r as u64)?;
    let defect = rhs - d as i64;
    let (optimality, justification) = match defect {
        x if x < 0 => return Err(Error::SingletonViolation(x)),
        0 => (Optimality::OptimalEq1, Justification::MeetsBound),
        1 => {
            let group = r + 1;
            let a = n % group;
            if d == r + 2 && a == 0 {
                (Optimality::OptimalDefect1, Justification::DistanceIsLocalityPlusTwo)
            } else if a > 1 && (k % r >= a || k.is_multiple_of(r)) && has_disjoint_cover()? {
                (Optimality::OptimalDefect1, Justification::NonDivisibleLength { a: a as u64 })
            } else {
                (Optimality::Suboptimal, Justification::Uncertified)
            }
        }
        _ => (Optimality::Suboptimal, Justification::Uncertified),
    };
    Ok(CodeProfile { n, k, d, r, optimality, defect, justification })
}

/// Classification of a code whose locality is claimed to be `r`; the claim
/// is checked against the computed locality.
pub fn classify_optimality(code: &LinearCode, r: usize, opts: &SearchOptions) -> Result<CodeProfile> {
    let mut budget = Budget::new(opts.subset_budget);
    let locality = code.locality(&mut budget)?;
    if locality.r != r {
        return Err(Error::LocalityMismatch { expected: r, actual: locality.r });
    }
    let d = code.min_distance(opts)?;
    classify_with(code, d.value, r, opts)
}

/// Classification with distance and locality already known.
pub fn classify_with(code: &LinearCode, d: usize, r: usize, opts: &SearchOptions) -> Result<CodeProfile> {
    let n = code.n();
    classify(n, code.k(), d, r, || {
        let mut budget = Budget::new(opts.subset_budget);
        let plan = greedy_cover(code, r, &mut budget)?;
        Ok(plan.disjoint && plan.covering && plan.sets.len() == n.div_ceil(r + 1))
    })
}

/// Distance, locality and classification in one pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub profile: CodeProfile,
    pub distance: Distance,
    pub locality: Locality,
}

pub fn analyze(code: &LinearCode, opts: &SearchOptions) -> Result<Analysis> {
    let mut budget = Budget::new(opts.subset_budget);
    let locality = code.locality(&mut budget)?;
    let distance = code.min_distance(opts)?;
    let profile = classify_with(code, distance.value, locality.r, opts)?;
    Ok(Analysis { profile, distance, locality })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn code(q: u64, rows: &[&[u32]]) -> LinearCode {
        let f = make_field(q).unwrap();
        let rows: Vec<Vec<u32>> = rows.iter().map(|r| r.to_vec()).collect();
        LinearCode::new(Matrix::from_rows(&f, rows[0].len(), &rows).unwrap())
    }

    fn repetition() -> LinearCode {
        code(2, &[&[1, 1, 0], &[1, 0, 1]])
    }

    fn single_parity(q: u64, len: usize) -> LinearCode {
        code(q, &[&vec![1; len]])
    }

    fn all_strategies() -> [DistanceStrategy; 4] {
        [
            DistanceStrategy::CodewordEnum,
            DistanceStrategy::ColumnSubsets,
            DistanceStrategy::Auto,
            DistanceStrategy::Verify,
        ]
    }

    #[test]
    fn dimensions_and_generator() {
        let c = repetition();
        assert_eq!((c.n(), c.k()), (3, 1));
        assert!(c.is_codeword(&[1, 1, 1]).unwrap());
        assert!(!c.is_codeword(&[1, 1, 0]).unwrap());
        let redundant = code(3, &[&[1, 1, 1, 1], &[2, 2, 2, 2]]);
        assert_eq!(redundant.k(), 3);
        let f = redundant.field().clone();
        let g = redundant.generator();
        let prod = g.mul(&redundant.parity_check().transpose()).unwrap();
        assert_eq!(prod, Matrix::zeros(&f, 3, 2));
    }

    #[test]
    fn distance_examples() {
        for s in all_strategies() {
            let o = SearchOptions::with_strategy(s);
            assert_eq!(repetition().min_distance(&o).unwrap().value, 3);
            assert_eq!(single_parity(3, 4).min_distance(&o).unwrap().value, 2);
        }
    }

    #[test]
    fn distance_undefined_for_zero_dimension() {
        let c = code(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(c.min_distance(&SearchOptions::default()), Err(Error::UndefinedDistance));
    }

    #[test]
    fn distance_matches_brute_force_weight() {
        // [7,4,3] Hamming code
        let c = code(2, &[&[1, 0, 1, 0, 1, 0, 1], &[0, 1, 1, 0, 0, 1, 1], &[0, 0, 0, 1, 1, 1, 1]]);
        let mut min = usize::MAX;
        c.for_each_codeword(1 << 10, |w| {
            let wt = w.iter().filter(|&&x| x != 0).count();
            if wt > 0 {
                min = min.min(wt);
            }
        })
        .unwrap();
        assert_eq!(min, 3);
        assert_eq!(c.min_distance(&SearchOptions::with_strategy(DistanceStrategy::Verify)).unwrap().value, 3);
    }

    #[test]
    fn recovery_set_examples() {
        let sp = single_parity(5, 4);
        let set = sp.recovery_set(1, &[0, 1, 2, 3]).unwrap().unwrap();
        assert_eq!(set.witness, vec![1, 1, 1, 1]);
        assert!(sp.is_recovery_set_direct(1, &[0, 1, 2, 3], 1 << 16).unwrap());

        let rep = repetition();
        assert!(rep.is_recovery_set(0, &[0, 1]).unwrap());
        assert!(rep.is_recovery_set_direct(0, &[0, 1], 1 << 16).unwrap());
        assert!(!rep.is_recovery_set(0, &[0]).unwrap());
        assert!(!rep.is_recovery_set_direct(0, &[0], 1 << 16).unwrap());

        let full = LinearCode::full_space(&make_field(3).unwrap(), 4);
        assert!(!full.is_recovery_set(2, &[0, 1, 2]).unwrap());
        assert!(!full.is_recovery_set_direct(2, &[0, 1, 2], 1 << 16).unwrap());

        let sp2 = single_parity(2, 3);
        assert!(sp2.is_recovery_set_direct(0, &[0, 1, 2], 1 << 16).unwrap());
        assert!(sp.recovery_set(7, &[7]).is_err());
        assert!(sp.recovery_set(0, &[1, 2]).is_err());
    }

    #[test]
    fn witnesses_are_dual_codewords() {
        let c = code(3, &[&[1, 1, 1, 0, 0, 0], &[0, 0, 0, 1, 1, 1], &[0, 1, 2, 0, 1, 2]]);
        let loc = c.locality(&mut Budget::new(1 << 20)).unwrap();
        for s in &loc.sets {
            assert!(c.is_dual_codeword(&s.witness).unwrap());
            assert_eq!(s.witness[s.coordinate], 1);
            for (j, &w) in s.witness.iter().enumerate() {
                assert!(w == 0 || s.support.contains(&j));
            }
        }
    }

    #[test]
    fn locality_examples() {
        for r in 1..6 {
            let sp = single_parity(3, r + 1);
            assert_eq!(sp.locality(&mut Budget::new(1 << 20)).unwrap().r, r);
        }
        let blocks = code(4, &[&[1, 1, 1, 0, 0, 0], &[0, 0, 0, 1, 1, 1]]);
        let loc = blocks.locality(&mut Budget::new(1 << 20)).unwrap();
        assert_eq!(loc.r, 2);
        assert_eq!(loc.sets[4].support, vec![3, 4, 5]);
        // [5,2] MDS code over GF(5): any 3 generator columns dependent
        let f = make_field(5).unwrap();
        let rows: Vec<Vec<u32>> = (0..3).map(|e| (0..5).map(|x| f.pow(x, e)).collect()).collect();
        let mds = LinearCode::new(Matrix::from_rows(&f, 5, &rows).unwrap());
        assert_eq!(mds.k(), 2);
        assert_eq!(mds.locality(&mut Budget::new(1 << 20)).unwrap().r, 2);
    }

    #[test]
    fn locality_undefined_for_uncovered_coordinate() {
        let full = LinearCode::full_space(&make_field(2).unwrap(), 3);
        assert_eq!(full.locality(&mut Budget::new(100)), Err(Error::LocalityUndefined(0)));
        let c = code(3, &[&[1, 1, 0]]);
        assert_eq!(c.locality(&mut Budget::new(100)), Err(Error::LocalityUndefined(2)));
    }

    #[test]
    fn classification_examples() {
        let o = SearchOptions::default();
        for r in 1..5 {
            let p = classify_optimality(&single_parity(5, r + 1), r, &o).unwrap();
            assert_eq!(p.optimality, Optimality::OptimalEq1);
            assert_eq!(p.defect, 0);
        }
        assert!(matches!(
            classify_optimality(&single_parity(5, 4), 2, &o),
            Err(Error::LocalityMismatch { expected: 2, actual: 3 })
        ));
        assert_eq!(classify(6, 3, 5, 2, || Ok(true)), Err(Error::SingletonViolation(-2)));
        let p = classify(8, 3, 5, 3, || Ok(false)).unwrap();
        assert_eq!((p.optimality, p.defect), (Optimality::OptimalDefect1, 1));
        let p = classify(8, 3, 3, 3, || Ok(false)).unwrap();
        assert_eq!(p.optimality, Optimality::Suboptimal);
    }
}
