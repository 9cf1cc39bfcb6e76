//! Row-compressed sparse integer matrices and a unit-pivot elimination that
//! computes invariant factors without ever densifying the whole matrix.

use std::collections::BTreeMap;

use crate::linalg::{smith_normal_form, Matrix};
use crate::scalar::IntScalar;

/// Sparse matrix stored as sorted `(column, value)` lists per row. Zero
/// entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<T> {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, T)>>,
}

impl<T: IntScalar> SparseMatrix<T> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    /// Duplicate positions are summed.
    pub fn from_triplets(nrows: usize, ncols: usize, triplets: impl IntoIterator<Item = (usize, usize, T)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); nrows];
        for (i, j, v) in triplets {
            assert!(i < nrows && j < ncols, "triplet ({i}, {j}) outside {nrows}x{ncols}");
            if v.is_zero() {
                continue;
            }
            let e = acc[i].entry(j).or_insert_with(T::zero);
            *e = e.clone() + v;
        }
        let rows = acc.into_iter().map(|r| r.into_iter().filter(|(_, v)| !v.is_zero()).collect()).collect();
        SparseMatrix { nrows, ncols, rows }
    }

    pub fn from_dense(m: &Matrix<T>) -> Self {
        let rows = m
            .rows_iter()
            .map(|r| r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j, v.clone())).collect())
            .collect();
        SparseMatrix { nrows: m.nrows(), ncols: m.ncols(), rows }
    }

    pub fn to_dense(&self) -> Matrix<T> {
        let mut m = Matrix::zeros(self.nrows, self.ncols);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                m[(i, *j)] = v.clone();
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[(usize, T)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        match self.rows[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.rows[i][k].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.ncols, self.nrows, self.triplets().map(|(i, j, v)| (j, i, v.clone())))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in sparse product");
        let mut triplets = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, T> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &other.rows[*k] {
                    let e = acc.entry(*j).or_insert_with(T::zero);
                    *e = e.clone() + a.clone() * b.clone();
                }
            }
            triplets.extend(acc.into_iter().map(|(j, v)| (i, j, v)));
        }
        Self::from_triplets(self.nrows, other.ncols, triplets)
    }

    pub fn map<U: IntScalar>(&self, f: impl Fn(&T) -> U) -> SparseMatrix<U> {
        SparseMatrix::from_triplets(self.nrows, self.ncols, self.triplets().map(|(i, j, v)| (i, j, f(v))))
    }
}

/// Rank and invariant factors of a matrix. `nontrivial` holds only the
/// factors greater than one; the remaining `rank - nontrivial.len()` are 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFactors<T> {
    pub rank: usize,
    pub nontrivial: Vec<T>,
}

struct Eliminator<T> {
    rows: Vec<Vec<(usize, T)>>,
    col_rows: Vec<Vec<usize>>,
    row_alive: Vec<bool>,
    col_alive: Vec<bool>,
}

impl<T: IntScalar> Eliminator<T> {
    fn new(m: &SparseMatrix<T>) -> Self {
        let mut col_rows = vec![Vec::new(); m.ncols];
        for (i, row) in m.rows.iter().enumerate() {
            for (j, _) in row {
                col_rows[*j].push(i);
            }
        }
        Eliminator { rows: m.rows.clone(), col_rows, row_alive: vec![true; m.nrows], col_alive: vec![true; m.ncols] }
    }

    fn entry(&self, i: usize, j: usize) -> Option<&T> {
        self.rows[i].binary_search_by_key(&j, |(c, _)| *c).ok().map(|k| &self.rows[i][k].1)
    }

    /// row[dst] -= q * row[src]
    fn subtract(&mut self, dst: usize, src: usize, q: &T) {
        let a = std::mem::take(&mut self.rows[dst]);
        let b = &self.rows[src];
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut ia, mut ib) = (0, 0);
        while ia < a.len() || ib < b.len() {
            let ca = a.get(ia).map_or(usize::MAX, |e| e.0);
            let cb = b.get(ib).map_or(usize::MAX, |e| e.0);
            if ca < cb {
                out.push(a[ia].clone());
                ia += 1;
            } else if cb < ca {
                if self.col_alive[cb] {
                    out.push((cb, -(b[ib].1.clone() * q.clone())));
                    self.col_rows[cb].push(dst);
                }
                ib += 1;
            } else {
                let v = a[ia].1.clone() - b[ib].1.clone() * q.clone();
                if !v.is_zero() {
                    out.push((ca, v));
                }
                ia += 1;
                ib += 1;
            }
        }
        self.rows[dst] = out;
    }

    /// Eliminates every column that has a unit entry in a live row. Returns
    /// the number of pivots taken.
    fn unit_pass(&mut self) -> usize {
        let ncols = self.col_alive.len();
        let mut order: Vec<usize> = (0..ncols).filter(|&j| self.col_alive[j]).collect();
        order.sort_by_key(|&j| self.col_rows[j].len());
        let mut pivots = 0;
        for c in order {
            let mut live: Vec<usize> = std::mem::take(&mut self.col_rows[c]);
            live.sort_unstable();
            live.dedup();
            live.retain(|&i| self.row_alive[i] && self.entry(i, c).is_some());
            let pivot = live
                .iter()
                .copied()
                .filter(|&i| self.entry(i, c).is_some_and(IntScalar::is_unit))
                .min_by_key(|&i| self.rows[i].len());
            let Some(p) = pivot else {
                self.col_rows[c] = live;
                continue;
            };
            // p is a unit so its inverse is itself
            let pv = self.entry(p, c).unwrap().clone();
            for &i in &live {
                if i == p {
                    continue;
                }
                let q = self.entry(i, c).unwrap().clone() * pv.clone();
                self.subtract(i, p, &q);
            }
            self.row_alive[p] = false;
            self.col_alive[c] = false;
            self.rows[p].clear();
            pivots += 1;
        }
        pivots
    }

    fn remainder(&self) -> Matrix<T> {
        let live_rows: Vec<usize> = (0..self.rows.len()).filter(|&i| self.row_alive[i] && !self.rows[i].is_empty()).collect();
        let mut col_pos = vec![usize::MAX; self.col_alive.len()];
        let mut ncols = 0;
        for &i in &live_rows {
            for (j, _) in &self.rows[i] {
                if self.col_alive[*j] && col_pos[*j] == usize::MAX {
                    col_pos[*j] = ncols;
                    ncols += 1;
                }
            }
        }
        let mut m = Matrix::zeros(live_rows.len(), ncols);
        for (r, &i) in live_rows.iter().enumerate() {
            for (j, v) in &self.rows[i] {
                if self.col_alive[*j] {
                    m[(r, col_pos[*j])] = v.clone();
                }
            }
        }
        m
    }
}

/// Invariant factors of a sparse matrix: unit pivots are eliminated in
/// place (each contributes a factor 1), the small non-unit remainder goes
/// through dense Smith normal form.
pub fn sparse_invariant_factors<T: IntScalar>(m: &SparseMatrix<T>) -> InvariantFactors<T> {
    let mut el = Eliminator::new(m);
    let mut unit_rank = 0;
    loop {
        let taken = el.unit_pass();
        unit_rank += taken;
        if taken == 0 {
            break;
        }
    }
    let rest = el.remainder();
    let snf = smith_normal_form(&rest, false);
    InvariantFactors { rank: unit_rank + snf.rank(), nontrivial: snf.nontrivial_factors() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::invariant_factors;
    use num_bigint::BigInt;

    #[test]
    fn matches_dense_on_small_examples() {
        let cases: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![2, 4], vec![6, 8]],
            vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]],
            vec![vec![0, 0], vec![0, 0]],
            vec![vec![3, 0, 0], vec![0, 1, 0], vec![0, 0, 6], vec![1, 1, 1]],
        ];
        for rows in cases {
            let d = Matrix::<BigInt>::from_i64_rows(&rows);
            let dense = invariant_factors(&d);
            let sparse = sparse_invariant_factors(&SparseMatrix::from_dense(&d));
            assert_eq!(sparse.rank, dense.len());
            let nontrivial: Vec<BigInt> = dense.into_iter().filter(|f| f != &BigInt::from(1)).collect();
            assert_eq!(sparse.nontrivial, nontrivial);
        }
    }

    #[test]
    fn triplets_sum_and_drop_zeros() {
        let m = SparseMatrix::<i64>::from_triplets(2, 2, [(0, 0, 1), (0, 0, -1), (1, 1, 2), (1, 1, 3)]);
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 1), 5);
    }

    #[test]
    fn product_agrees_with_dense() {
        let a = Matrix::<i64>::from_i64_rows(&[vec![1, 0, 2], vec![0, -1, 3]]);
        let b = Matrix::<i64>::from_i64_rows(&[vec![1, 1], vec![2, 0], vec![0, 5]]);
        let sp = SparseMatrix::from_dense(&a).mul(&SparseMatrix::from_dense(&b));
        assert_eq!(sp.to_dense(), a.mul(&b));
    }
}
