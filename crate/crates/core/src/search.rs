//! Exhaustive subset searches over a list of vectors: smallest dependent
//! subset (minimum distance from parity-check columns) and smallest circuit
//! through a given vector (minimal recovery sets from generator columns).
//!
//! Both walk subsets in lexicographic order depth-first, extending only
//! linearly independent prefixes; a prefix that is already dependent cannot
//! be part of a smaller-is-better answer at the current level.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::{EchelonBasis, Reduction};

/// Caps the number of vector reductions a search may perform. Exceeding it
/// is an error, never a truncated answer.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    #[inline]
    pub fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExceeded(format!("more than {} subset evaluations", self.limit)))
        } else {
            Ok(())
        }
    }
}

/// Lexicographically first subset of size `size` whose vectors are linearly
/// dependent, assuming no smaller dependent subset exists (callers search
/// levels in increasing order).
pub fn first_dependent_subset(
    field: &Field,
    vectors: &[Vec<FieldElement>],
    size: usize,
    budget: &mut Budget,
) -> Result<Option<Vec<usize>>> {
    if size == 0 || size > vectors.len() {
        return Ok(None);
    }
    let len = vectors[0].len();
    let mut basis = EchelonBasis::new(field, len);
    let mut chosen = Vec::with_capacity(size);
    dependent_dfs(vectors, size, 0, &mut basis, &mut chosen, budget)
}

fn dependent_dfs(
    vectors: &[Vec<FieldElement>],
    size: usize,
    start: usize,
    basis: &mut EchelonBasis<'_>,
    chosen: &mut Vec<usize>,
    budget: &mut Budget,
) -> Result<Option<Vec<usize>>> {
    let n = vectors.len();
    let remaining = size - chosen.len();
    if remaining == 1 {
        let mut buf = Vec::new();
        for (j, v) in vectors.iter().enumerate().skip(start) {
            budget.tick()?;
            basis.residual_into(v, &mut buf);
            if buf.iter().all(|&x| x == 0) {
                let mut set = chosen.clone();
                set.push(j);
                return Ok(Some(set));
            }
        }
        return Ok(None);
    }
    for j in start..=(n - remaining) {
        budget.tick()?;
        if let Reduction::Independent { pivot, vector, combo } = basis.reduce(&vectors[j]) {
            basis.push_reduced(pivot, vector, combo);
            chosen.push(j);
            let found = dependent_dfs(vectors, size, j + 1, basis, chosen, budget)?;
            chosen.pop();
            basis.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
    }
    Ok(None)
}

/// Smallest number of linearly dependent vectors, searching sizes
/// `1..=max_size`; returns the lexicographically first such subset.
pub fn smallest_dependent_subset(
    field: &Field,
    vectors: &[Vec<FieldElement>],
    max_size: usize,
    budget: &mut Budget,
) -> Result<Option<Vec<usize>>> {
    for s in 1..=max_size.min(vectors.len()) {
        if let Some(set) = first_dependent_subset(field, vectors, s, budget)? {
            return Ok(Some(set));
        }
    }
    Ok(None)
}

/// A circuit through `target`: `vectors[target] = sum coeffs[t] * vectors[others[t]]`
/// with every coefficient nonzero and `others` independent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    pub others: Vec<usize>,
    pub coeffs: Vec<FieldElement>,
}

impl Circuit {
    /// The circuit's support including `target`, sorted.
    pub fn support(&self, target: usize) -> Vec<usize> {
        let mut s = self.others.clone();
        s.push(target);
        s.sort_unstable();
        s
    }
}

/// Lexicographically first circuit of exactly `size` elements that contains
/// `target`, with all other elements drawn from indices where `allowed`
/// holds. Lexicographic order on the other elements coincides with
/// lexicographic order on the full sorted support.
pub fn first_circuit_through(
    field: &Field,
    vectors: &[Vec<FieldElement>],
    target: usize,
    size: usize,
    allowed: &dyn Fn(usize) -> bool,
    budget: &mut Budget,
) -> Result<Option<Circuit>> {
    if size == 0 {
        return Ok(None);
    }
    let candidates: Vec<usize> = (0..vectors.len()).filter(|&j| j != target && allowed(j)).collect();
    if size - 1 > candidates.len() {
        return Ok(None);
    }
    let len = vectors[target].len();
    let mut basis = EchelonBasis::new(field, len);
    let mut chosen = Vec::with_capacity(size);
    circuit_dfs(field, vectors, target, &candidates, size - 1, 0, &mut basis, &mut chosen, budget)
}

/// Completes a circuit with one more candidate. With `t` the residual of the
/// target against the chosen prefix, candidate `j` works exactly when its
/// residual is a nonzero multiple of `t`; only then are coefficients solved.
#[allow(clippy::too_many_arguments)]
fn last_circuit_member(
    field: &Field,
    vectors: &[Vec<FieldElement>],
    target: usize,
    candidates: &[usize],
    start: usize,
    basis: &mut EchelonBasis<'_>,
    chosen: &[usize],
    budget: &mut Budget,
) -> Result<Option<Circuit>> {
    let mut t_res = Vec::new();
    basis.residual_into(&vectors[target], &mut t_res);
    let Some(p) = t_res.iter().position(|&x| x != 0) else {
        return Ok(None);
    };
    let inv_tp = field.inv_nonzero(t_res[p]);
    let mut buf = Vec::new();
    for &j in &candidates[start..] {
        budget.tick()?;
        basis.residual_into(&vectors[j], &mut buf);
        let ratio = field.mul(buf[p], inv_tp);
        if ratio == 0 || buf.iter().zip(&t_res).any(|(&b, &t)| b != field.mul(ratio, t)) {
            continue;
        }
        let Reduction::Independent { pivot, vector, combo } = basis.reduce(&vectors[j]) else {
            continue;
        };
        basis.push_reduced(pivot, vector, combo);
        let reduced = basis.reduce(&vectors[target]);
        basis.pop();
        if let Reduction::Dependent { coeffs } = reduced {
            if coeffs.iter().all(|&c| c != 0) {
                let mut others = chosen.to_vec();
                others.push(j);
                return Ok(Some(Circuit { others, coeffs }));
            }
        }
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn circuit_dfs(
    field: &Field,
    vectors: &[Vec<FieldElement>],
    target: usize,
    candidates: &[usize],
    want: usize,
    start: usize,
    basis: &mut EchelonBasis<'_>,
    chosen: &mut Vec<usize>,
    budget: &mut Budget,
) -> Result<Option<Circuit>> {
    if chosen.len() == want {
        budget.tick()?;
        if let Reduction::Dependent { coeffs } = basis.reduce(&vectors[target]) {
            if coeffs.iter().all(|&c| c != 0) {
                return Ok(Some(Circuit { others: chosen.clone(), coeffs }));
            }
        }
        return Ok(None);
    }
    let remaining = want - chosen.len();
    if remaining == 1 {
        return last_circuit_member(field, vectors, target, candidates, start, basis, chosen, budget);
    }
    for t in start..=(candidates.len() - remaining) {
        budget.tick()?;
        let j = candidates[t];
        if let Reduction::Independent { pivot, vector, combo } = basis.reduce(&vectors[j]) {
            basis.push_reduced(pivot, vector, combo);
            chosen.push(j);
            let found = circuit_dfs(field, vectors, target, candidates, want, t + 1, basis, chosen, budget)?;
            chosen.pop();
            basis.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::linalg::Matrix;

    fn rank_of(field: &crate::field::FieldRef, vs: &[Vec<u32>]) -> usize {
        Matrix::from_rows(field, vs[0].len(), vs).unwrap().rank()
    }

    #[test]
    fn smallest_dependent_matches_rank_enumeration() {
        let f = make_field(3).unwrap();
        // columns of [[1,0,1,1],[0,1,1,2]]: any two independent, three dependent
        let cols = vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]];
        let mut b = Budget::new(1000);
        let set = smallest_dependent_subset(&f, &cols, 4, &mut b).unwrap().unwrap();
        assert_eq!(set, vec![0, 1, 2]);
        let sub: Vec<_> = set.iter().map(|&i| cols[i].clone()).collect();
        assert_eq!(rank_of(&f, &sub), 2);
    }

    #[test]
    fn zero_vector_is_dependent_alone() {
        let f = make_field(2).unwrap();
        let cols = vec![vec![1, 0], vec![0, 0]];
        let mut b = Budget::new(100);
        assert_eq!(smallest_dependent_subset(&f, &cols, 2, &mut b).unwrap(), Some(vec![1]));
    }

    #[test]
    fn circuit_requires_full_support() {
        let f = make_field(5).unwrap();
        // v0 = v1, v2 unrelated: {0,1,2} is dependent for target 0 but not a circuit
        let vs = vec![vec![1, 2, 0], vec![1, 2, 0], vec![0, 0, 1]];
        let mut b = Budget::new(100);
        let all = |_: usize| true;
        let c2 = first_circuit_through(&f, &vs, 0, 2, &all, &mut b).unwrap().unwrap();
        assert_eq!(c2.others, vec![1]);
        assert_eq!(c2.coeffs, vec![1]);
        assert!(first_circuit_through(&f, &vs, 0, 3, &all, &mut b).unwrap().is_none());
        assert!(first_circuit_through(&f, &vs, 2, 2, &all, &mut b).unwrap().is_none());
    }

    #[test]
    fn budget_is_enforced() {
        let f = make_field(7).unwrap();
        let cols: Vec<Vec<u32>> = (0..7).map(|x| vec![1, x, f.mul(x, x)]).collect();
        let mut b = Budget::new(10);
        assert!(matches!(smallest_dependent_subset(&f, &cols, 4, &mut b), Err(Error::BudgetExceeded(_))));
    }
}
