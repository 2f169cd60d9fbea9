//! Dense linear algebra over GF(q).

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, FieldRef};

/// Dense row-major matrix over a finite field.
#[derive(Clone)]
pub struct Matrix {
    field: FieldRef,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(field: &FieldRef, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &FieldRef, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows, validating shape and entries.
    pub fn from_rows(field: &FieldRef, cols: usize, rows: &[Vec<FieldElement>]) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            for &v in row {
                data.push(field.element(v as u64)?);
            }
        }
        Ok(Matrix { field: field.clone(), rows: rows.len(), cols, data })
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(field: &FieldRef, rows: usize, columns: &[Vec<FieldElement>]) -> Result<Matrix> {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch(format!("column {j} has {} entries, expected {rows}", c.len())));
            }
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, field.element(v as u64)?);
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        debug_assert!(v < self.field.order());
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn column_vectors(&self) -> Vec<Vec<FieldElement>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|i| dot(&self.field, self.row(i), v)).collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, other.get(t, j))));
                }
            }
        }
        Ok(out)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!("cannot stack {} columns on {}", other.cols, self.cols)));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m.set(i, jj, self.get(i, j));
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        Matrix { field: self.field.clone(), rows: rows.len(), cols: self.cols, data }
    }

    /// Reduced row echelon form and its pivot columns. Pivots are chosen as
    /// the first nonzero entry scanning down each column.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &*self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv_nonzero(m.get(r, c));
            m.scale_row(r, inv);
            for i in 0..self.rows {
                if i != r {
                    let factor = m.get(i, c);
                    if factor != 0 {
                        m.axpy_row(i, r, f.neg(factor));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : Mx = 0}`, one vector per free column in ascending order.
    pub fn right_kernel(&self) -> Vec<Vec<FieldElement>> {
        let f = &*self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = vec![0; self.cols];
                x[free] = 1;
                for (row, &p) in pivots.iter().enumerate() {
                    x[p] = f.neg(r.get(row, free));
                }
                x
            })
            .collect()
    }

    /// Nonzero rows of the reduced row echelon form.
    pub fn row_space_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        r.select_rows(&(0..pivots.len()).collect::<Vec<_>>())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, i: usize, s: FieldElement) {
        let f = self.field.clone();
        for v in &mut self.data[i * self.cols..(i + 1) * self.cols] {
            *v = f.mul(*v, s);
        }
    }

    /// row[dst] += s * row[src]
    fn axpy_row(&mut self, dst: usize, src: usize, s: FieldElement) {
        let f = self.field.clone();
        for j in 0..self.cols {
            let v = f.add(self.get(dst, j), f.mul(s, self.get(src, j)));
            self.set(dst, j, v);
        }
    }
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for Matrix {}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over GF({})", self.rows, self.cols, self.field.order())?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

pub fn dot(f: &Field, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// `acc += s * v`
#[inline]
pub fn axpy(f: &Field, acc: &mut [FieldElement], s: FieldElement, v: &[FieldElement]) {
    if s == 0 {
        return;
    }
    for (a, &x) in acc.iter_mut().zip(v) {
        *a = f.add(*a, f.mul(s, x));
    }
}

fn check_lengths(len: usize, vectors: &[Vec<FieldElement>]) -> Result<()> {
    match vectors.iter().position(|v| v.len() != len) {
        Some(i) => Err(Error::DimensionMismatch(format!("vector {i} has length {}, expected {len}", vectors[i].len()))),
        None => Ok(()),
    }
}

/// Whether `v` lies in the span of `vectors`, decided by comparing ranks.
pub fn in_span(field: &FieldRef, v: &[FieldElement], vectors: &[Vec<FieldElement>]) -> Result<bool> {
    check_lengths(v.len(), vectors)?;
    let base = Matrix::from_rows(field, v.len(), vectors)?;
    let mut with_v = vectors.to_vec();
    with_v.push(v.to_vec());
    let extended = Matrix::from_rows(field, v.len(), &with_v)?;
    Ok(base.rank() == extended.rank())
}

/// Coefficients `x` with `sum_j x_j * vectors[j] = target`, free coefficients
/// set to zero; `None` when `target` is outside the span.
pub fn solve_combination(
    field: &FieldRef,
    vectors: &[Vec<FieldElement>],
    target: &[FieldElement],
) -> Result<Option<Vec<FieldElement>>> {
    check_lengths(target.len(), vectors)?;
    let len = target.len();
    let mut cols = vectors.to_vec();
    cols.push(target.to_vec());
    let aug = Matrix::from_columns(field, len, &cols)?;
    let (r, pivots) = aug.rref();
    let k = vectors.len();
    if pivots.last() == Some(&k) {
        return Ok(None);
    }
    let mut x = vec![0; k];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r.get(row, k);
    }
    Ok(Some(x))
}

/// A growable echelon basis that remembers how each basis vector is written
/// in terms of the generators pushed so far. Supports stack-like push/pop for
/// depth-first subset searches.
pub struct EchelonBasis<'f> {
    field: &'f Field,
    len: usize,
    vectors: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
    /// combos[b][s]: coefficient of generator s in basis vector b
    combos: Vec<Vec<FieldElement>>,
}

/// Outcome of reducing a vector against an [`EchelonBasis`].
pub enum Reduction {
    /// Independent; holds the residual's pivot and the normalized residual
    /// together with its generator combination.
    Independent { pivot: usize, vector: Vec<FieldElement>, combo: Vec<FieldElement> },
    /// `v = sum_s coeffs[s] * generator_s`.
    Dependent { coeffs: Vec<FieldElement> },
}

impl<'f> EchelonBasis<'f> {
    pub fn new(field: &'f Field, len: usize) -> Self {
        EchelonBasis { field, len, vectors: Vec::new(), pivots: Vec::new(), combos: Vec::new() }
    }

    pub fn size(&self) -> usize {
        self.vectors.len()
    }

    pub fn reduce(&self, v: &[FieldElement]) -> Reduction {
        debug_assert_eq!(v.len(), self.len);
        let f = self.field;
        let t = self.vectors.len();
        let mut residual = v.to_vec();
        // residual = v - sum_b c_b basis_b; track sum_b c_b combo_b
        let mut used = vec![0; t];
        for b in 0..t {
            let c = residual[self.pivots[b]];
            if c != 0 {
                axpy(f, &mut residual, f.neg(c), &self.vectors[b]);
                axpy(f, &mut used, c, &self.combos[b]);
            }
        }
        match residual.iter().position(|&x| x != 0) {
            None => Reduction::Dependent { coeffs: used },
            Some(pivot) => {
                let s = f.inv_nonzero(residual[pivot]);
                for x in &mut residual {
                    *x = f.mul(*x, s);
                }
                // combo = s * (e_t - used)
                let mut combo: Vec<FieldElement> = used.iter().map(|&u| f.mul(s, f.neg(u))).collect();
                combo.push(s);
                Reduction::Independent { pivot, vector: residual, combo }
            }
        }
    }

    /// Writes `v` reduced against the basis into `out`, without tracking
    /// combinations.
    pub fn residual_into(&self, v: &[FieldElement], out: &mut Vec<FieldElement>) {
        out.clear();
        out.extend_from_slice(v);
        for (b, basis) in self.vectors.iter().enumerate() {
            let c = out[self.pivots[b]];
            if c != 0 {
                axpy(self.field, out, self.field.neg(c), basis);
            }
        }
    }

    /// Pushes a reduction result obtained from [`reduce`](Self::reduce) on the
    /// current state.
    pub fn push_reduced(&mut self, pivot: usize, vector: Vec<FieldElement>, mut combo: Vec<FieldElement>) {
        for c in &mut self.combos {
            c.push(0);
        }
        combo.resize(self.vectors.len() + 1, 0);
        self.vectors.push(vector);
        self.pivots.push(pivot);
        self.combos.push(combo);
    }

    /// Pushes `v` as a new generator if it is independent of the current span.
    pub fn try_push(&mut self, v: &[FieldElement]) -> bool {
        match self.reduce(v) {
            Reduction::Independent { pivot, vector, combo } => {
                self.push_reduced(pivot, vector, combo);
                true
            }
            Reduction::Dependent { .. } => false,
        }
    }

    pub fn pop(&mut self) {
        self.vectors.pop();
        self.pivots.pop();
        self.combos.pop();
        for c in &mut self.combos {
            c.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn m(q: u64, rows: &[&[u32]]) -> Matrix {
        let f = make_field(q).unwrap();
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(&f, cols, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f = make_field(5).unwrap();
        let id = Matrix::identity(&f, 3);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1, 2]));
        let z = Matrix::zeros(&f, 2, 4);
        assert_eq!(z.rref(), (z.clone(), vec![]));
        let a = m(5, &[&[1, 2], &[2, 4]]);
        assert_eq!(a.rref(), (m(5, &[&[1, 2], &[0, 0]]), vec![0]));
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn empty_matrices() {
        let f = make_field(3).unwrap();
        let e = Matrix::zeros(&f, 0, 5);
        assert_eq!(e.rank(), 0);
        assert_eq!(e.right_kernel().len(), 5);
        assert_eq!(Matrix::zeros(&f, 3, 0).rank(), 0);
    }

    #[test]
    fn in_span_examples() {
        let f2 = make_field(2).unwrap();
        assert!(in_span(&f2, &[0, 0], &[]).unwrap());
        assert!(!in_span(&f2, &[1, 0], &[vec![0, 1]]).unwrap());
        let f7 = make_field(7).unwrap();
        assert!(in_span(&f7, &[3, 6], &[vec![1, 2]]).unwrap());
        assert!(matches!(in_span(&f7, &[3, 6], &[vec![1, 2, 3]]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn kernel_examples() {
        let f = make_field(5).unwrap();
        assert!(Matrix::identity(&f, 4).right_kernel().is_empty());
        assert_eq!(m(2, &[&[0, 0, 0]]).right_kernel().len(), 3);
        let a = m(3, &[&[1, 1, 1]]);
        let ker = a.right_kernel();
        assert_eq!(ker.len(), 2);
        let f3 = make_field(3).unwrap();
        for x in &ker {
            assert_eq!(x.iter().fold(0, |s, &v| f3.add(s, v)), 0);
        }
        assert_eq!(ker, vec![vec![2, 1, 0], vec![2, 0, 1]]);
    }

    #[test]
    fn solve_combination_finds_coefficients() {
        let f = make_field(7).unwrap();
        let vs = vec![vec![1, 0, 1], vec![0, 1, 1]];
        let x = solve_combination(&f, &vs, &[3, 2, 5]).unwrap().unwrap();
        assert_eq!(x, vec![3, 2]);
        assert!(solve_combination(&f, &vs, &[1, 1, 0]).unwrap().is_none());
    }

    #[test]
    fn echelon_basis_tracks_combinations() {
        let f = make_field(5).unwrap();
        let gens = [vec![1, 2, 0], vec![0, 1, 3], vec![2, 0, 4]];
        let mut b = EchelonBasis::new(&f, 3);
        assert!(b.try_push(&gens[0]));
        assert!(b.try_push(&gens[1]));
        // 2*g0 + 3*g1 = (2, 4+3, 9) = (2, 2, 4)
        let target = [2, 2, 4];
        match b.reduce(&target) {
            Reduction::Dependent { coeffs } => assert_eq!(coeffs, vec![2, 3]),
            _ => panic!("expected dependency"),
        }
        assert!(b.try_push(&gens[2]));
        b.pop();
        assert_eq!(b.size(), 2);
        assert!(matches!(b.reduce(&target), Reduction::Dependent { .. }));
    }
}
