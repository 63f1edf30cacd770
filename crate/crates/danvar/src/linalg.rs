//! Exact dense linear algebra over the rationals: reduced row echelon form,
//! nullspace bases and particular solutions. Pivoting is deterministic
//! (first nonzero entry in column order), so downstream artifacts are
//! byte-reproducible.

use num_rational::BigRational;
use num_traits::Zero;

/// Dense row-major rational matrix.
#[derive(Clone, Debug)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigRational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    /// In-place reduced row echelon form; returns the pivot column of each
    /// pivot row.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.get(row, col).clone();
            for c in col..self.cols {
                let v = self.get(row, c) / &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r != row && !self.get(r, col).is_zero() {
                    let factor = self.get(r, col).clone();
                    for c in col..self.cols {
                        let v = self.get(r, c) - &factor * self.get(row, c);
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of `{ v : A v = 0 }`, one vector per free column, echelonized.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_set.contains(c)) {
            let mut v = vec![BigRational::zero(); self.cols];
            v[free] = BigRational::from_integer(1.into());
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -m.get(prow, free).clone();
            }
            basis.push(v);
        }
        basis
    }
}

/// Solves `A x = b` exactly. Returns one solution with all free variables
/// set to zero, or `None` when the system is inconsistent. The second
/// component of the `Some` payload is the rank of `A`.
pub fn solve(a: &QMatrix, b: &[BigRational]) -> Option<(Vec<BigRational>, usize)> {
    assert_eq!(a.rows, b.len());
    let mut aug = QMatrix::zeros(a.rows, a.cols + 1);
    for (r, rhs) in b.iter().enumerate() {
        for c in 0..a.cols {
            aug.set(r, c, a.get(r, c).clone());
        }
        aug.set(r, a.cols, rhs.clone());
    }
    let pivots = aug.rref();
    // A pivot in the augmented column marks inconsistency.
    if pivots.contains(&a.cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); a.cols];
    for (prow, &pcol) in pivots.iter().enumerate() {
        x[pcol] = aug.get(prow, a.cols).clone();
    }
    Some((x, pivots.len()))
}
