//! Families of recovery sets covering a code, pruning to a disjoint
//! subfamily, and single-symbol local repair.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::extra_redundancy;
use crate::code::{LinearCode, RecoverySet};
use crate::error::{precondition, Error, Result};
use crate::field::FieldElement;
use crate::search::Budget;

/// A list of recovery sets together with their disjointness and coverage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveryPlan {
    pub n: usize,
    pub sets: Vec<RecoverySet>,
    pub disjoint: bool,
    pub covering: bool,
}

impl RecoveryPlan {
    pub fn new(n: usize, sets: Vec<RecoverySet>) -> RecoveryPlan {
        let counts = coverage_counts(n, &sets);
        RecoveryPlan { n, disjoint: counts.iter().all(|&c| c <= 1), covering: counts.iter().all(|&c| c >= 1), sets }
    }

    /// The first set whose witness can repair coordinate `i`.
    pub fn set_for(&self, i: usize) -> Option<&RecoverySet> {
        self.sets.iter().find(|s| s.witness.get(i).is_some_and(|&w| w != 0))
    }
}

fn coverage_counts(n: usize, sets: &[RecoverySet]) -> Vec<usize> {
    let mut counts = vec![0; n];
    for s in sets {
        for &j in &s.support {
            counts[j] += 1;
        }
    }
    counts
}

/// One line per set: `i | support | witness`, coordinates 0-based.
impl fmt::Display for RecoveryPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &mut dyn Iterator<Item = String>| v.collect::<Vec<_>>().join(" ");
        for s in &self.sets {
            writeln!(
                f,
                "{} | {} | {}",
                s.coordinate,
                join(&mut s.support.iter().map(|x| x.to_string())),
                join(&mut s.witness.iter().map(|x| x.to_string()))
            )?;
        }
        Ok(())
    }
}

/// Covers `[n]` by repeatedly taking the smallest uncovered coordinate and a
/// minimum-size recovery set for it (size at most `r + 1`). Among sets of
/// that size, one made of uncovered coordinates is preferred; ties are then
/// broken lexicographically.
pub fn greedy_cover(code: &LinearCode, r: usize, budget: &mut Budget) -> Result<RecoveryPlan> {
    let n = code.n();
    let mut covered = vec![false; n];
    let mut sets = Vec::new();
    while let Some(i) = covered.iter().position(|&c| !c) {
        let mut found = None;
        for size in 1..=(r + 1) {
            let fresh = |j: usize| !covered[j];
            found = code.recovery_set_of_size(i, size, &fresh, budget)?;
            if found.is_none() {
                found = code.recovery_set_of_size(i, size, &|_| true, budget)?;
            }
            if found.is_some() {
                break;
            }
        }
        let set = found.ok_or(Error::LocalityViolation { coordinate: i, max_size: r + 1 })?;
        for &j in &set.support {
            covered[j] = true;
        }
        sets.push(set);
    }
    Ok(RecoveryPlan::new(n, sets))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disjointified {
    pub plan: RecoveryPlan,
    pub removed: usize,
}

/// Drops every set containing a coordinate covered more than once. The
/// survivors are pairwise disjoint and meet no other set of the input.
pub fn disjointify(plan: &RecoveryPlan) -> Result<Disjointified> {
    if !plan.covering {
        return Err(precondition("disjointify needs a covering plan"));
    }
    if plan.disjoint {
        return Ok(Disjointified { plan: plan.clone(), removed: 0 });
    }
    let counts = coverage_counts(plan.n, &plan.sets);
    let survivors: Vec<RecoverySet> =
        plan.sets.iter().filter(|s| s.support.iter().all(|&j| counts[j] == 1)).cloned().collect();
    let removed = plan.sets.len() - survivors.len();
    Ok(Disjointified { plan: RecoveryPlan::new(plan.n, survivors), removed })
}

/// Guaranteed number of survivors of [`disjointify`] on a minimal cover of
/// an optimal code: `n/(r+1) - h(3r+2)` with `h = d-2-floor((d-2)/(r+1))`.
/// `None` unless `(r+1) | n`.
pub fn survivor_lower_bound(n: u64, d: u64, r: u64) -> Option<i64> {
    if d < 2 || r < 1 || !n.is_multiple_of(r + 1) {
        return None;
    }
    Some((n / (r + 1)) as i64 - (extra_redundancy(d, r) * (3 * r + 2)) as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Repaired {
    pub value: FieldElement,
    /// Symbols read, `|supp(w)| - 1`.
    pub reads: usize,
}

/// Recovers erased coordinate `i` as `-(1/w_i) * sum_{j != i} w_j c_j`.
/// Other erasures are allowed only outside the witness support.
pub fn repair(
    code: &LinearCode,
    word: &[Option<FieldElement>],
    i: usize,
    witness: &[FieldElement],
) -> Result<Repaired> {
    let n = code.n();
    if word.len() != n || witness.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "word length {} and witness length {} must equal n = {n}",
            word.len(),
            witness.len()
        )));
    }
    if i >= n {
        return Err(Error::Repair(format!("coordinate {i} out of range")));
    }
    let f = code.field();
    if witness[i] == 0 {
        return Err(Error::Repair(format!("witness is zero at coordinate {i}")));
    }
    let mut acc = 0;
    let mut reads = 0;
    for (j, (&w, &c)) in witness.iter().zip(word).enumerate() {
        if j == i || w == 0 {
            continue;
        }
        let c = c.ok_or_else(|| Error::Repair(format!("witness support includes erased coordinate {j}")))?;
        acc = f.add(acc, f.mul(w, c));
        reads += 1;
    }
    let value = f.neg(f.div(acc, witness[i])?);
    Ok(Repaired { value, reads })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimReport {
    pub trials: usize,
    pub successes: usize,
    pub total_reads: usize,
    pub max_reads: usize,
}

impl SimReport {
    /// `None` when no trials ran.
    pub fn success_rate(&self) -> Option<f64> {
        (self.trials > 0).then(|| self.successes as f64 / self.trials as f64)
    }

    pub fn mean_reads(&self) -> Option<f64> {
        (self.trials > 0).then(|| self.total_reads as f64 / self.trials as f64)
    }
}

/// Erases a random coordinate of a random codeword `trials` times and
/// repairs it through the plan.
pub fn erasure_sim(code: &LinearCode, plan: &RecoveryPlan, trials: usize, seed: u64) -> Result<SimReport> {
    if !plan.covering {
        return Err(precondition("erasure simulation needs a covering plan"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = code.field().order();
    let mut report = SimReport { trials, successes: 0, total_reads: 0, max_reads: 0 };
    for _ in 0..trials {
        let message: Vec<FieldElement> = (0..code.k()).map(|_| rng.gen_range(0..q)).collect();
        let c = code.encode(&message)?;
        let i = rng.gen_range(0..code.n());
        let set = plan.set_for(i).ok_or_else(|| precondition(format!("no set in the plan repairs coordinate {i}")))?;
        let mut word: Vec<Option<FieldElement>> = c.iter().copied().map(Some).collect();
        word[i] = None;
        let fixed = repair(code, &word, i, &set.witness)?;
        if fixed.value == c[i] {
            report.successes += 1;
        }
        report.total_reads += fixed.reads;
        report.max_reads = report.max_reads.max(fixed.reads);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::linalg::Matrix;

    fn code(q: u64, rows: &[&[u32]]) -> LinearCode {
        let f = make_field(q).unwrap();
        let rows: Vec<Vec<u32>> = rows.iter().map(|r| r.to_vec()).collect();
        LinearCode::new(Matrix::from_rows(&f, rows[0].len(), &rows).unwrap())
    }

    fn set(coordinate: usize, support: &[usize], n: usize) -> RecoverySet {
        let mut witness = vec![0; n];
        for &j in support {
            witness[j] = 1;
        }
        RecoverySet { coordinate, support: support.to_vec(), witness }
    }

    #[test]
    fn single_parity_cover() {
        let c = code(5, &[&[1, 1, 1, 1]]);
        let plan = greedy_cover(&c, 3, &mut Budget::new(1 << 20)).unwrap();
        assert_eq!(plan.sets.len(), 1);
        assert_eq!(plan.sets[0].support, vec![0, 1, 2, 3]);
        assert!(plan.disjoint && plan.covering);
        assert_eq!(plan.to_string(), "0 | 0 1 2 3 | 1 1 1 1\n");
    }

    #[test]
    fn cover_fails_when_locality_too_large() {
        let c = code(5, &[&[1, 1, 1, 1]]);
        assert_eq!(
            greedy_cover(&c, 2, &mut Budget::new(1 << 20)),
            Err(Error::LocalityViolation { coordinate: 0, max_size: 3 })
        );
    }

    #[test]
    fn disjointify_examples() {
        let plan = RecoveryPlan::new(4, vec![set(0, &[0, 1], 4), set(2, &[2, 3], 4)]);
        let out = disjointify(&plan).unwrap();
        assert_eq!(out.removed, 0);
        assert_eq!(out.plan, plan);

        let plan = RecoveryPlan::new(6, vec![set(0, &[0, 1, 2], 6), set(3, &[2, 3], 6), set(4, &[4, 5], 6)]);
        let out = disjointify(&plan).unwrap();
        assert_eq!(out.removed, 2);
        assert_eq!(out.plan.sets.len(), 1);
        assert_eq!(out.plan.sets[0].support, vec![4, 5]);

        let partial = RecoveryPlan::new(3, vec![set(0, &[0, 1], 3)]);
        assert!(disjointify(&partial).is_err());
    }

    #[test]
    fn repair_examples() {
        let rep = code(2, &[&[1, 1, 0], &[1, 0, 1]]);
        let out = repair(&rep, &[None, Some(1), Some(1)], 0, &[1, 1, 0]).unwrap();
        assert_eq!(out, Repaired { value: 1, reads: 1 });

        let sp = code(5, &[&[1, 1, 1, 1]]);
        let out = repair(&sp, &[Some(1), Some(2), None, Some(4)], 2, &[1, 1, 1, 1]).unwrap();
        assert_eq!(out, Repaired { value: 3, reads: 3 });
        assert!(repair(&sp, &[Some(1), None, None, Some(4)], 2, &[1, 1, 1, 1]).is_err());
        assert!(repair(&sp, &[Some(1), Some(2), None, Some(4)], 2, &[1, 1, 0, 1]).is_err());
    }

    #[test]
    fn simulation_is_exact() {
        let c = code(3, &[&[1, 1, 1, 0, 0, 0], &[0, 0, 0, 1, 1, 1], &[0, 1, 2, 0, 1, 2]]);
        let plan = greedy_cover(&c, 2, &mut Budget::new(1 << 20)).unwrap();
        let rep = erasure_sim(&c, &plan, 500, 7).unwrap();
        assert_eq!(rep.success_rate(), Some(1.0));
        assert_eq!(rep.max_reads, 2);
        let empty = erasure_sim(&c, &plan, 0, 7).unwrap();
        assert_eq!(empty.success_rate(), None);
        assert_eq!(empty.mean_reads(), None);
    }

    #[test]
    fn survivor_bound_formula() {
        assert_eq!(survivor_lower_bound(136, 5, 3), Some(34 - 3 * 11));
        assert_eq!(survivor_lower_bound(10, 5, 3), None);
    }
}
