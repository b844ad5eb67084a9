//! Minimal compressed-sparse-row matrices with a triplet accumulator.
//!
//! Assembly pushes unordered, possibly duplicated `(row, col, value)`
//! triplets; [`Triplets::into_csr`] sorts them and sums duplicates, so the
//! build is deterministic regardless of element order. The matrix itself is
//! immutable after construction.

use crate::scalar::Real;

/// Unordered coordinate-format accumulator for sparse assembly.
#[derive(Clone, Debug)]
pub struct Triplets<T> {
    nrows: usize,
    ncols: usize,
    entries: Vec<(usize, usize, T)>,
}

impl<T: Real> Triplets<T> {
    /// Creates an empty accumulator for an `nrows × ncols` matrix.
    pub fn new(nrows: usize, ncols: usize) -> Self {
        Self { nrows, ncols, entries: Vec::new() }
    }

    /// Adds `value` at `(row, col)`; duplicates are summed on build.
    #[inline]
    pub fn push(&mut self, row: usize, col: usize, value: T) {
        debug_assert!(row < self.nrows && col < self.ncols, "triplet out of bounds");
        self.entries.push((row, col, value));
    }

    /// Sorts, deduplicates, and compresses into row-major storage.
    pub fn into_csr(mut self) -> CsrMatrix<T> {
        self.entries.sort_unstable_by_key(|e| (e.0, e.1));
        let mut row_ptr = Vec::with_capacity(self.nrows + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        let mut current_row = 0;
        for (i, j, v) in self.entries {
            while current_row < i {
                row_ptr.push(col_idx.len());
                current_row += 1;
            }
            if col_idx.len() > *row_ptr.last().unwrap() && *col_idx.last().unwrap() == j {
                let last = values.len() - 1;
                values[last] += v;
            } else {
                col_idx.push(j);
                values.push(v);
            }
        }
        while current_row < self.nrows {
            row_ptr.push(col_idx.len());
            current_row += 1;
        }
        CsrMatrix { nrows: self.nrows, ncols: self.ncols, row_ptr, col_idx, values }
    }
}

/// Immutable sparse matrix in compressed-sparse-row form.
#[derive(Clone, Debug, PartialEq)]
pub struct CsrMatrix<T> {
    nrows: usize,
    ncols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<T>,
}

impl<T: Real> CsrMatrix<T> {
    /// Number of rows.
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    /// Number of columns.
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Number of stored entries (including explicit zeros).
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Column indices and values of row `i`.
    #[inline]
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, T)> + '_ {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[range.clone()].iter().copied().zip(self.values[range].iter().copied())
    }

    /// All stored entries as `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        (0..self.nrows).flat_map(move |i| self.row(i).map(move |(j, v)| (i, j, v)))
    }

    /// Stored value at `(i, j)`, or zero.
    pub fn get(&self, i: usize, j: usize) -> T {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.col_idx[range.clone()].binary_search(&j) {
            Ok(k) => self.values[range.start + k],
            Err(_) => T::zero(),
        }
    }

    /// `y = A·x`.
    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.ncols, "matvec dimension mismatch");
        let mut y = vec![T::zero(); self.nrows];
        for (i, yi) in y.iter_mut().enumerate() {
            let mut acc = T::zero();
            for (j, v) in self.row(i) {
                acc += v * x[j];
            }
            *yi = acc;
        }
        y
    }

    /// `y += c·Aᵀx`, used for the rectangular coupling blocks.
    pub fn matvec_transpose_add(&self, x: &[T], c: T, y: &mut [T]) {
        assert_eq!(x.len(), self.nrows, "transpose matvec dimension mismatch");
        assert_eq!(y.len(), self.ncols, "transpose matvec output mismatch");
        for (i, &xi) in x.iter().enumerate() {
            for (j, v) in self.row(i) {
                y[j] += c * v * xi;
            }
        }
    }

    /// Largest absolute stored value (zero for empty matrices).
    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, &v| m.max(v.abs()))
    }

    /// Largest absolute deviation from symmetry, `max |a_ij − a_ji|`.
    ///
    /// Requires a square matrix; used by invariants on stiffness,
    /// stabilization, and gradient-form Jacobians.
    pub fn symmetry_defect(&self) -> T {
        assert_eq!(self.nrows, self.ncols, "symmetry defect needs a square matrix");
        let mut defect = T::zero();
        for (i, j, v) in self.entries() {
            defect = defect.max((v - self.get(j, i)).abs());
        }
        defect
    }

    /// Dense row-major copy, for small oracle comparisons only.
    pub fn to_dense(&self) -> Vec<T> {
        let mut dense = vec![T::zero(); self.nrows * self.ncols];
        for (i, j, v) in self.entries() {
            dense[i * self.ncols + j] += v;
        }
        dense
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> CsrMatrix<f64> {
        // [[2, 0, 1], [0, 0, 0], [3, 4, 0]] with a duplicated (0,0) entry.
        let mut t = Triplets::new(3, 3);
        t.push(2, 1, 4.0);
        t.push(0, 0, 1.5);
        t.push(0, 2, 1.0);
        t.push(2, 0, 3.0);
        t.push(0, 0, 0.5);
        t.into_csr()
    }

    #[test]
    fn builds_sorted_deduplicated_rows() {
        let a = sample();
        assert_eq!(a.nnz(), 4);
        assert_eq!(a.get(0, 0), 2.0);
        assert_eq!(a.get(0, 2), 1.0);
        assert_eq!(a.get(1, 1), 0.0);
        assert_eq!(a.row(2).collect::<Vec<_>>(), vec![(0, 3.0), (1, 4.0)]);
    }

    #[test]
    fn empty_rows_are_preserved() {
        let a = sample();
        assert_eq!(a.row(1).count(), 0);
        assert_eq!(a.matvec(&[1.0, 1.0, 1.0]), vec![3.0, 0.0, 7.0]);
    }

    #[test]
    fn transpose_matvec_accumulates() {
        let a = sample();
        let mut y = vec![0.0; 3];
        a.matvec_transpose_add(&[1.0, 0.0, 1.0], 2.0, &mut y);
        // Aᵀ·[1,0,1] = [5, 4, 1], scaled by 2.
        assert_eq!(y, vec![10.0, 8.0, 2.0]);
    }

    #[test]
    fn symmetry_defect_detects_asymmetry() {
        let a = sample();
        // Worst mismatch: a_21 = 4 vs a_12 = 0.
        assert_eq!(a.symmetry_defect(), 4.0);

        let mut t = Triplets::new(2, 2);
        t.push(0, 1, 7.0);
        t.push(1, 0, 7.0);
        t.push(0, 0, 1.0);
        assert_eq!(t.into_csr().symmetry_defect(), 0.0);
    }

    #[test]
    fn deterministic_for_any_insertion_order() {
        let mut fwd = Triplets::new(2, 2);
        let mut rev = Triplets::new(2, 2);
        let entries = [(0usize, 1usize, 0.125), (1, 1, 2.0), (0, 0, 3.0), (0, 1, 0.25)];
        for &(i, j, v) in &entries {
            fwd.push(i, j, v);
        }
        for &(i, j, v) in entries.iter().rev() {
            rev.push(i, j, v);
        }
        assert_eq!(fwd.into_csr(), rev.into_csr());
    }
}
